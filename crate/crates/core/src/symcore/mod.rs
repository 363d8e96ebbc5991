//! Expression engine: parsing, printing, differentiation, canonical
//! normalization, exact zero tests and constraint extraction.

pub mod constraint;
pub mod diff;
pub mod eval;
pub mod expr;
pub mod expsum;
pub mod factor;
pub mod gcd;
pub mod integrate;
mod modp;
pub mod normal;
pub mod parse;
pub mod poly;
pub mod ratfun;
pub mod upoly;

pub use constraint::{eliminate, reduce, vanishes_under, Constraint, Elimination};
pub use diff::differentiate;
pub use eval::{evaluate_guarded, evaluate_normal, evaluate_numeric, Bindings};
pub use expr::Expr;
pub use expsum::{normalize_exp_sum, ExpSum, Generator};
pub use factor::{factor, zero_constraints};
pub use gcd::gcd;
pub use integrate::{antiderivative, exp_of_integral, Antiderivative, LogTerm};
pub use normal::{is_zero, normalize, NormalForm};
pub use parse::{parse, parse_expr};
pub use poly::{Monomial, Polynomial, Rational, Var};
pub use ratfun::RatFun;
