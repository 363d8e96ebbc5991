use thiserror::Error;

use crate::aim::AimTrace;
use crate::solution::TransformId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown symbol `{name}` at position {position}")]
    UnknownSymbol { name: String, position: usize },

    #[error("unsupported form: {0}")]
    UnsupportedForm(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at x = {x}")]
    Pole { x: f64 },

    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),

    #[error("non-finite value at x = {x}")]
    NonFinite { x: f64 },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("no termination within n_max = {}", trace.n_max())]
    NoTermination { trace: Box<AimTrace> },

    #[error("degenerate solution: {0}")]
    Degenerate(String),

    #[error("transform {transform} is inapplicable: {reason}")]
    TransformInapplicable {
        transform: TransformId,
        reason: String,
    },

    #[error("every transform failed")]
    AllTransformsFailed { attempts: Vec<(TransformId, Error)> },

    #[error("invalid equation: {0}")]
    InvalidEquation(String),

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("solution could not be certified: {0}")]
    Uncertified(String),

    #[error("no numerator parameter is a nonpositive integer")]
    NoTruncatingParameter,

    #[error("inadmissible denominator parameter {0}")]
    InadmissibleDenominator(String),

    #[error("divergent series: {0}")]
    Divergent(String),

    #[error("series did not converge within {terms} terms")]
    NonConvergent { terms: usize },

    #[error("quadrature did not converge on [{a}, {b}]")]
    Quadrature { a: f64, b: f64 },

    #[error("integration escaped to infinity near x = {x}")]
    IntegrationEscaped { x: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
