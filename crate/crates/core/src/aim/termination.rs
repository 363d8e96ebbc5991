use std::fmt;

use super::trace::AimTrace;
use crate::error::Result;
use crate::symcore::{zero_constraints, Constraint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Termination {
    /// `delta_n` vanishes identically.
    Exact {
        n: usize,
    },
    /// `delta_n` vanishes when any one of `constraints` holds.
    Conditional {
        n: usize,
        constraints: Vec<Constraint>,
    },
    None,
}

impl Termination {
    pub fn n(&self) -> Option<usize> {
        match self {
            Termination::Exact { n } | Termination::Conditional { n, .. } => Some(*n),
            Termination::None => None,
        }
    }

    pub fn constraints(&self) -> &[Constraint] {
        match self {
            Termination::Conditional { constraints, .. } => constraints,
            _ => &[],
        }
    }
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Termination::Exact { n } => write!(f, "terminates at n = {n}"),
            Termination::Conditional { n, constraints } => {
                write!(f, "terminates at n = {n} if ")?;
                for (i, c) in constraints.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" or ")?;
                    }
                    write!(f, "{c} = 0")?;
                }
                Ok(())
            }
            Termination::None => f.write_str("no termination"),
        }
    }
}

/// Smallest exact zero of the discriminant; failing that, the smallest
/// index whose discriminant has parameter factors.
pub fn find_termination(trace: &AimTrace) -> Result<Termination> {
    if let Some(n) = first_exact_zero(trace)? {
        return Ok(Termination::Exact { n });
    }
    for n in 1..=trace.len() {
        let cs = zero_constraints(trace.delta(n)?);
        if !cs.is_empty() {
            return Ok(Termination::Conditional { n, constraints: cs });
        }
    }
    Ok(Termination::None)
}

pub(crate) fn first_exact_zero(trace: &AimTrace) -> Result<Option<usize>> {
    for n in 1..=trace.len() {
        if trace.delta_certainly_nonzero(n) {
            continue;
        }
        if trace.delta(n)?.is_zero() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// A parameter branch: `constraint` first divides `delta_n` at this `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub n: usize,
    pub constraint: Constraint,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n = {}: {} = 0", self.n, self.constraint)
    }
}

/// Every constraint of the trace, tagged with the first index at which it
/// appears.
pub fn branches(trace: &AimTrace) -> Result<Vec<Branch>> {
    let mut out: Vec<Branch> = Vec::new();
    for n in 1..=trace.len() {
        for c in zero_constraints(trace.delta(n)?) {
            if !out.iter().any(|b| b.constraint == c) {
                out.push(Branch { n, constraint: c });
            }
        }
    }
    Ok(out)
}
