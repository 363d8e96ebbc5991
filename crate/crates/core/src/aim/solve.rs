use std::collections::BTreeSet;
use std::sync::Arc;

use num::BigInt;

use super::termination::{first_exact_zero, Branch, Termination};
use super::trace::{AimOptions, AimTrace};
use crate::error::{Error, Result};
use crate::solution::{Method, Solution};
use crate::symcore::{
    eliminate, normalize, reduce, zero_constraints, Constraint, Elimination, Expr, NormalForm,
    Rational, Var,
};

/// Which simple Riccati form is being solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimpleForm {
    /// `y' - l0 y + y^2 = s0`
    First,
    /// `y' - l0 y - y^2 = -s0`
    Second,
}

impl SimpleForm {
    fn method(self) -> Method {
        match self {
            SimpleForm::First => Method::T1,
            SimpleForm::Second => Method::T2,
        }
    }

    /// Sign `k` in `y = k s/l`.
    fn sign(self) -> i64 {
        match self {
            SimpleForm::First => -1,
            SimpleForm::Second => 1,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub aim: AimOptions,
    /// Parameter to solve constraints for, when linear in it.
    pub eliminate: Option<Var>,
    /// Parameters never eliminated unless forced.
    pub avoid: BTreeSet<Var>,
}

impl SolveOptions {
    pub fn with_n_max(n_max: usize) -> Self {
        SolveOptions {
            aim: AimOptions::with_n_max(n_max),
            ..Default::default()
        }
    }
}

/// Iterates until the first identically vanishing discriminant, or up to
/// `n_max` followed by a scan for conditional termination.
pub fn run(
    lambda0: NormalForm,
    s0: NormalForm,
    opts: &AimOptions,
) -> Result<(AimTrace, Termination)> {
    if opts.n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let mut trace = AimTrace::start(lambda0, s0, opts.n_max);
    while trace.len() < opts.n_max {
        trace.step(opts.degree_bound)?;
        let n = trace.len();
        if !trace.delta_certainly_nonzero(n) && trace.delta(n)?.is_zero() {
            return Ok((trace, Termination::Exact { n }));
        }
    }
    debug_assert!(first_exact_zero(&trace)?.is_none());
    for n in 1..=trace.len() {
        let cs = zero_constraints(trace.delta(n)?);
        if !cs.is_empty() {
            return Ok((trace, Termination::Conditional { n, constraints: cs }));
        }
    }
    Ok((trace, Termination::None))
}

/// `s_{n-1}` and `lambda_{n-1}` after substituting the solved constraints.
#[derive(Clone, Debug)]
pub struct Terminal {
    pub n: usize,
    pub s: NormalForm,
    pub lambda: NormalForm,
    pub constraints: Vec<Constraint>,
    pub eliminations: Vec<Elimination>,
}

impl Terminal {
    /// `s_{n-1} / lambda_{n-1}`, with `0` when `s_{n-1}` vanishes.
    pub fn ratio(&self) -> Result<NormalForm> {
        if self.s.is_zero() {
            return Ok(NormalForm::zero());
        }
        if self.lambda.is_zero() {
            return Err(Error::Degenerate(format!(
                "lambda_{} vanishes identically",
                self.n - 1
            )));
        }
        self.s.div(&self.lambda)
    }

    /// Applies the eliminations to another quantity of the same problem.
    pub fn reduce(&self, nf: &NormalForm) -> Result<NormalForm> {
        reduce(nf, &self.eliminations)
    }
}

pub fn terminal(
    trace: &AimTrace,
    n: usize,
    constraints: &[Constraint],
    avoid: &BTreeSet<Var>,
    forced: Option<&Var>,
) -> Result<Terminal> {
    let eliminations = eliminate(constraints, avoid, forced)?;
    let k = n as isize - 1;
    Ok(Terminal {
        n,
        s: reduce(trace.s(k), &eliminations)?,
        lambda: reduce(trace.lambda(k), &eliminations)?,
        constraints: constraints.to_vec(),
        eliminations,
    })
}

/// Parameters that occur in exponents of `x`; eliminating them would leave
/// the normal-form class.
pub fn exponent_parameters<'a, I: IntoIterator<Item = &'a NormalForm>>(forms: I) -> BTreeSet<Var> {
    forms.into_iter().flat_map(|f| f.x_power().vars()).collect()
}

/// `y' - l0 y + k y^2 - k s0` with `k = +1` (first form) or `-1` (second).
pub fn simple_residual(
    form: SimpleForm,
    y: &NormalForm,
    lambda0: &NormalForm,
    s0: &NormalForm,
) -> Result<NormalForm> {
    let y2 = y.mul(y);
    let base = y.derivative().sub(&lambda0.mul(y))?;
    match form {
        SimpleForm::First => base.add(&y2)?.sub(s0),
        SimpleForm::Second => base.sub(&y2)?.add(s0),
    }
}

fn solution_from_terminal(form: SimpleForm, trace: AimTrace, t: Terminal) -> Result<Solution> {
    let lambda0 = t.reduce(trace.lambda0())?;
    let s0 = t.reduce(trace.s0())?;
    let ratio = t.ratio()?;
    let y = ratio.scale(&Rational::from_integer(BigInt::from(form.sign())));
    let mut notes = Vec::new();
    let (y, certified) = if simple_residual(form, &y, &lambda0, &s0)?.is_zero() {
        (y, true)
    } else {
        let flipped = y.neg();
        if simple_residual(form, &flipped, &lambda0, &s0)?.is_zero() {
            notes.push("sign of the back-map flipped to satisfy the equation".to_string());
            (flipped, true)
        } else {
            return Err(Error::Uncertified(format!(
                "residual of {y} does not vanish"
            )));
        }
    };
    let mut sol = Solution::from_normal(y, form.method(), t.n);
    sol.constraints = t.constraints;
    sol.eliminations = t.eliminations;
    sol.certified = certified;
    sol.notes = notes;
    sol.trace = Some(Arc::new(trace));
    Ok(sol)
}

/// Solves `y' - l0 y + y^2 = s0` (first form) or `y' - l0 y - y^2 = -s0`
/// (second form) by AIM.
pub fn solve_simple(
    form: SimpleForm,
    lambda0: &Expr,
    s0: &Expr,
    opts: &SolveOptions,
) -> Result<Solution> {
    let l0 = normalize(lambda0)?;
    let s = normalize(s0)?;
    let mut avoid = opts.avoid.clone();
    avoid.extend(exponent_parameters([&l0, &s]));
    let (trace, term) = run(l0, s, &opts.aim)?;
    let (n, constraints) = match term {
        Termination::Exact { n } => (n, Vec::new()),
        Termination::Conditional { n, constraints } => (n, vec![constraints[0].clone()]),
        Termination::None => {
            return Err(Error::NoTermination {
                trace: Box::new(trace),
            })
        }
    };
    let t = terminal(&trace, n, &constraints, &avoid, opts.eliminate.as_ref())?;
    solution_from_terminal(form, trace, t)
}

/// Solution on one constraint branch of an existing trace.
pub fn solve_branch(
    form: SimpleForm,
    trace: &AimTrace,
    branch: &Branch,
    opts: &SolveOptions,
) -> Result<Solution> {
    let mut avoid = opts.avoid.clone();
    avoid.extend(exponent_parameters([trace.lambda0(), trace.s0()]));
    let t = terminal(
        trace,
        branch.n,
        std::slice::from_ref(&branch.constraint),
        &avoid,
        opts.eliminate.as_ref(),
    )?;
    solution_from_terminal(form, trace.clone(), t)
}

/// `y' - l0 y + y^2 = s0`, solution `y = -s_{n-1}/lambda_{n-1}`.
pub fn solve_theorem1(lambda0: &Expr, s0: &Expr, n_max: usize) -> Result<Solution> {
    solve_simple(
        SimpleForm::First,
        lambda0,
        s0,
        &SolveOptions::with_n_max(n_max),
    )
}

/// `y' - l0 y - y^2 = -s0`, solution `y = s_{n-1}/lambda_{n-1}`.
pub fn solve_theorem2(lambda0: &Expr, s0: &Expr, n_max: usize) -> Result<Solution> {
    solve_simple(
        SimpleForm::Second,
        lambda0,
        s0,
        &SolveOptions::with_n_max(n_max),
    )
}
