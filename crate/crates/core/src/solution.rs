use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::aim::AimTrace;
use crate::symcore::{Constraint, Elimination, Expr, NormalForm};

/// Linearizing transformation of the generalized equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TransformId {
    T3,
    T4,
    T5,
    T6,
}

impl TransformId {
    pub const ALL: [TransformId; 4] = [
        TransformId::T3,
        TransformId::T4,
        TransformId::T5,
        TransformId::T6,
    ];

    pub fn parse(s: &str) -> Option<TransformId> {
        match s.to_ascii_lowercase().as_str() {
            "t3" => Some(TransformId::T3),
            "t4" => Some(TransformId::T4),
            "t5" => Some(TransformId::T5),
            "t6" => Some(TransformId::T6),
            _ => None,
        }
    }
}

impl fmt::Display for TransformId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TransformId::T3 => "T3",
            TransformId::T4 => "T4",
            TransformId::T5 => "T5",
            TransformId::T6 => "T6",
        };
        f.write_str(s)
    }
}

/// How a solution was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    /// `y' - l0 y + y^2 = s0`, `y = -s/l`.
    T1,
    /// `y' - l0 y - y^2 = -s0`, `y = s/l`.
    T2,
    Transform(TransformId),
    /// `y = 1/(x Q)` when `Q'/Q - P + x Q R = 0`.
    Quick,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::T1 => f.write_str("T1"),
            Method::T2 => f.write_str("T2"),
            Method::Transform(t) => write!(f, "{t}"),
            Method::Quick => f.write_str("quick"),
        }
    }
}

impl From<TransformId> for Method {
    fn from(t: TransformId) -> Self {
        Method::Transform(t)
    }
}

/// A closed-form particular solution with its provenance.
#[derive(Clone, Debug)]
pub struct Solution {
    pub expression: Expr,
    /// Canonical form of `expression`, absent when it carries a formal
    /// integral.
    pub normal: Option<NormalForm>,
    pub method: Method,
    /// Terminating AIM index; the quick criterion corresponds to `n = 1`.
    pub n: usize,
    /// Parameter conditions under which the solution holds.
    pub constraints: Vec<Constraint>,
    /// How the constraints were solved before substitution.
    pub eliminations: Vec<Elimination>,
    /// True when the symbolic residual was checked to vanish.
    pub certified: bool,
    pub notes: Vec<String>,
    pub trace: Option<Arc<AimTrace>>,
}

impl Solution {
    pub fn from_normal(nf: NormalForm, method: Method, n: usize) -> Self {
        Solution {
            expression: nf.to_expr(),
            normal: Some(nf),
            method,
            n,
            constraints: Vec::new(),
            eliminations: Vec::new(),
            certified: false,
            notes: Vec::new(),
            trace: None,
        }
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y = {}  [{} n={}]", self.expression, self.method, self.n)?;
        for c in &self.constraints {
            write!(f, " if {c} = 0")?;
        }
        Ok(())
    }
}
