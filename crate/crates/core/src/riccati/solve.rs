use std::sync::Arc;

use super::equation::RiccatiEquation;
use crate::aim::{
    branches, exponent_parameters, run, terminal, AimTrace, Branch, SolveOptions, Terminal,
    Termination,
};
use crate::error::{Error, Result};
use crate::solution::{Method, Solution, TransformId};
use crate::symcore::{ExpSum, Expr, NormalForm, Polynomial};

/// Which transforms `solve` may use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Quick criterion, then T3, T4, T5, T6; the first success wins.
    #[default]
    Auto,
    Only(TransformId),
}

impl Strategy {
    pub fn parse(s: &str) -> Option<Strategy> {
        if s.eq_ignore_ascii_case("auto") {
            Some(Strategy::Auto)
        } else {
            TransformId::parse(s).map(Strategy::Only)
        }
    }
}

fn require_nonzero_r(eq: &RiccatiEquation, t: TransformId) -> Result<()> {
    if eq.r_form().is_zero() {
        return Err(Error::TransformInapplicable {
            transform: t,
            reason: "R vanishes identically".into(),
        });
    }
    Ok(())
}

/// `(l0, s0)` of the linear equation `u'' = l0 u' + s0 u` for transform `t`.
pub fn to_linear(eq: &RiccatiEquation, t: TransformId) -> Result<(NormalForm, NormalForm)> {
    let (p, q, r) = (eq.p_form(), eq.q_form(), eq.r_form());
    let (l0, s0) = match t {
        TransformId::T3 => (q.derivative()?.div(q)?.sub(p)?, q.mul(r)?),
        TransformId::T4 => {
            require_nonzero_r(eq, t)?;
            (r.derivative()?.div(r)?.add(p)?, q.mul(r)?)
        }
        TransformId::T5 => {
            require_nonzero_r(eq, t)?;
            let pr = p.div(r)?.derivative()?;
            (r.derivative()?.div(r)?.sub(p)?, r.mul(&q.sub(&pr)?)?)
        }
        TransformId::T6 => {
            let pq = p.div(q)?.derivative()?;
            (p.add(&q.derivative()?.div(q)?)?, q.mul(&pq.add(r)?)?)
        }
    };
    Ok((
        RiccatiEquation::normal(&l0, "lambda0")?,
        RiccatiEquation::normal(&s0, "s0")?,
    ))
}

/// Expression form of [`to_linear`].
pub fn to_linear_exprs(eq: &RiccatiEquation, t: TransformId) -> Result<(Expr, Expr)> {
    let (l0, s0) = to_linear(eq, t)?;
    Ok((l0.to_expr(), s0.to_expr()))
}

/// Riccati solution from `s = s_{n-1}` and `lambda = lambda_{n-1}`.
pub fn back_map(
    t: TransformId,
    eq: &RiccatiEquation,
    s: &NormalForm,
    lambda: &NormalForm,
) -> Result<ExpSum> {
    let (p, q, r) = (eq.p_form(), eq.q_form(), eq.r_form());
    let s = ExpSum::from_normal(s.clone());
    let l = ExpSum::from_normal(lambda.clone());
    let degenerate = |what: &str| Error::Degenerate(format!("{what} vanishes identically"));
    match t {
        TransformId::T3 | TransformId::T6 if l.is_zero() => Err(degenerate("lambda_{n-1}")),
        TransformId::T3 => s.neg().div(&q.mul(&l)?),
        TransformId::T4 => {
            if s.is_zero() {
                return Err(degenerate("s_{n-1}"));
            }
            r.mul(&l)?.neg().div(&s)
        }
        TransformId::T5 => {
            let den = p.mul(&l)?.sub(&s)?;
            if den.is_zero() {
                return Err(degenerate("P lambda_{n-1} - s_{n-1}"));
            }
            r.mul(&l)?.div(&den)
        }
        TransformId::T6 => s.neg().sub(&p.mul(&l)?)?.div(&q.mul(&l)?),
    }
}

fn certified_solution(
    eq: &RiccatiEquation,
    y: ExpSum,
    method: Method,
    n: usize,
) -> Result<Solution> {
    if !eq.residual_form(&y)?.is_zero() {
        return Err(Error::Uncertified(format!(
            "residual of {y} does not vanish"
        )));
    }
    Ok(Solution {
        expression: y.to_expr(),
        normal: y.as_normal(),
        method,
        n,
        constraints: Vec::new(),
        eliminations: Vec::new(),
        certified: true,
        notes: Vec::new(),
        trace: None,
    })
}

fn finish(
    eq: &RiccatiEquation,
    t: TransformId,
    trace: &AimTrace,
    term: Terminal,
) -> Result<Solution> {
    let reduced = eq.reduce(&term.eliminations)?;
    let y = back_map(t, &reduced, &term.s, &term.lambda)?;
    let mut sol = certified_solution(&reduced, y, t.into(), term.n)?;
    sol.constraints = term.constraints;
    sol.eliminations = term.eliminations;
    sol.trace = Some(Arc::new(trace.clone()));
    Ok(sol)
}

fn avoid_set(
    eq: &RiccatiEquation,
    l0: &NormalForm,
    s0: &NormalForm,
    opts: &SolveOptions,
) -> std::collections::BTreeSet<crate::symcore::Var> {
    let mut avoid = opts.avoid.clone();
    avoid.extend(eq.exponent_parameters());
    avoid.extend(exponent_parameters([l0, s0]));
    avoid
}

/// Solves by one transform, taking the first constraint on conditional
/// termination.
pub fn solve_transform(
    eq: &RiccatiEquation,
    t: TransformId,
    opts: &SolveOptions,
) -> Result<Solution> {
    let (l0, s0) = to_linear(eq, t)?;
    let avoid = avoid_set(eq, &l0, &s0, opts);
    let (trace, term) = run(l0, s0, &opts.aim)?;
    let (n, constraints) = match term {
        Termination::Exact { n } => (n, Vec::new()),
        Termination::Conditional { n, constraints } => (n, vec![constraints[0].clone()]),
        Termination::None => {
            return Err(Error::NoTermination {
                trace: Box::new(trace),
            })
        }
    };
    let t_ = terminal(&trace, n, &constraints, &avoid, opts.eliminate.as_ref())?;
    finish(eq, t, &trace, t_)
}

/// Every constraint branch of transform `t`, each with its own solution.
/// An exact termination yields a single unconditional entry.
pub fn solve_branches(
    eq: &RiccatiEquation,
    t: TransformId,
    opts: &SolveOptions,
) -> Result<Vec<(Option<Branch>, Result<Solution>)>> {
    let (l0, s0) = to_linear(eq, t)?;
    let avoid = avoid_set(eq, &l0, &s0, opts);
    let (trace, term) = run(l0, s0, &opts.aim)?;
    if let Termination::Exact { n } = term {
        let sol = terminal(&trace, n, &[], &avoid, None).and_then(|tm| finish(eq, t, &trace, tm));
        return Ok(vec![(None, sol)]);
    }
    let mut out = Vec::new();
    for b in branches(&trace)? {
        let sol = terminal(
            &trace,
            b.n,
            std::slice::from_ref(&b.constraint),
            &avoid,
            opts.eliminate.as_ref(),
        )
        .and_then(|tm| finish(eq, t, &trace, tm));
        out.push((Some(b), sol));
    }
    if out.is_empty() {
        return Err(Error::NoTermination {
            trace: Box::new(trace),
        });
    }
    Ok(out)
}

/// `y = 1/(x Q)` when `Q'/Q - P + x Q R` vanishes identically.
pub fn quick_particular(eq: &RiccatiEquation) -> Result<Option<Expr>> {
    let (p, q, r) = (eq.p_form(), eq.q_form(), eq.r_form());
    let x = ExpSum::from_normal(NormalForm::from_poly(Polynomial::x()));
    let cond = q.derivative()?.div(q)?.sub(p)?.add(&x.mul(q)?.mul(r)?)?;
    if !cond.is_zero() {
        return Ok(None);
    }
    Ok(Some(x.mul(q)?.recip()?.to_expr()))
}

fn quick_solution(eq: &RiccatiEquation) -> Result<Option<Solution>> {
    let Some(y) = quick_particular(eq)? else {
        return Ok(None);
    };
    let y = crate::symcore::normalize_exp_sum(&y)?;
    certified_solution(eq, y, Method::Quick, 1).map(Some)
}

/// Solves `y' + P y + Q y^2 = R`.
pub fn solve(eq: &RiccatiEquation, strategy: Strategy, opts: &SolveOptions) -> Result<Solution> {
    match strategy {
        Strategy::Only(t) => solve_transform(eq, t, opts),
        Strategy::Auto => {
            if let Ok(Some(sol)) = quick_solution(eq) {
                return Ok(sol);
            }
            let mut attempts = Vec::new();
            for t in TransformId::ALL {
                match solve_transform(eq, t, opts) {
                    Ok(sol) => return Ok(sol),
                    Err(e) => attempts.push((t, e)),
                }
            }
            Err(Error::AllTransformsFailed { attempts })
        }
    }
}
