//! Solutions of the linear equation `u'' = l0 u' + s0 u` at termination.

use super::solve::{run, terminal, Terminal};
use super::termination::Termination;
use super::trace::AimOptions;
use crate::error::{Error, Result};
use crate::numeric;
use crate::symcore::{
    antiderivative, evaluate_normal, normalize, Antiderivative, Bindings, Expr, NormalForm,
    Rational, Var,
};

/// `alpha = s_{n-1}/lambda_{n-1}` and, when available, a closed form for
/// `u = exp(-int alpha)`.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub n: usize,
    pub alpha: NormalForm,
    pub antiderivative: Option<Antiderivative>,
    /// `exp(-int alpha)`; carries a formal integral when no closed form
    /// exists.
    pub u: Expr,
    pub needs_quadrature: bool,
}

impl LinearSolution {
    pub fn from_terminal(t: &Terminal) -> Result<Self> {
        let alpha = t.ratio()?;
        let anti = alpha.as_ratfun().and_then(antiderivative);
        let closed = anti.as_ref().and_then(|a| a.exp(-1));
        let (u, needs_quadrature) = match closed {
            Some(nf) => (nf.to_expr(), false),
            None => (
                Expr::exp(Expr::neg(Expr::integral(
                    alpha.to_expr(),
                    Rational::from_integer(0.into()),
                ))),
                true,
            ),
        };
        Ok(LinearSolution {
            n: t.n,
            alpha,
            antiderivative: anti,
            u,
            needs_quadrature,
        })
    }
}

/// Particular solution of the linear equation from the terminating index
/// `n`, which must be an exact termination.
pub fn linear_solution(lambda0: &Expr, s0: &Expr, n: usize) -> Result<LinearSolution> {
    let (trace, term) = run(
        normalize(lambda0)?,
        normalize(s0)?,
        &AimOptions::with_n_max(n),
    )?;
    match term {
        Termination::Exact { n: m } if m == n => {}
        _ => {
            return Err(Error::InvalidInput(format!(
                "the discriminant does not vanish identically at n = {n}"
            )))
        }
    }
    let t = terminal(&trace, n, &[], &Default::default(), None)?;
    LinearSolution::from_terminal(&t)
}

/// One sample of the general solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneralSample {
    pub x: f64,
    pub u: f64,
    /// `u'/u`.
    pub y: f64,
}

/// Evaluates
/// `u = exp(-int alpha) [C2 + C1 int exp(int (l0 + 2 alpha))]`
/// on `grid`, with all integrals based at the first grid point.
pub fn general_solution_numeric(
    lambda0: &Expr,
    s0: &Expr,
    n: usize,
    c1: f64,
    c2: f64,
    grid: &[f64],
    bindings: &Bindings,
) -> Result<Vec<GeneralSample>> {
    let l0 = normalize(lambda0)?;
    let (trace, term) = run(l0.clone(), normalize(s0)?, &AimOptions::with_n_max(n))?;
    if term != (Termination::Exact { n }) {
        return Err(Error::InvalidInput(format!(
            "the discriminant does not vanish identically at n = {n}"
        )));
    }
    let t = terminal(&trace, n, &[], &Default::default(), None)?;
    let alpha = t.ratio()?;
    let Some(&x0) = grid.first() else {
        return Ok(Vec::new());
    };
    const MIN_DEN: f64 = 1e-6;
    let params = |v: &Var| bindings.get(v.name()).copied();
    let exponent = l0.add(&alpha.scale(&Rational::from_integer(2.into())))?;

    // int_{x0}^{x} f, symbolic when possible
    let primitive = |f: &NormalForm| -> Box<dyn Fn(f64) -> Result<f64> + '_> {
        let anti = f.as_ratfun().and_then(antiderivative);
        match anti {
            Some(a) => {
                let base = a.eval_f64(x0, params);
                Box::new(move |x| {
                    let hi = a.eval_f64(x, params).ok_or(Error::NonFinite { x })?;
                    let lo = base.ok_or(Error::NonFinite { x: x0 })?;
                    Ok(hi - lo)
                })
            }
            None => {
                let f = f.clone();
                Box::new(move |x| {
                    numeric::integrate(
                        |t| evaluate_normal(&f, t, bindings, MIN_DEN),
                        x0,
                        x,
                        1e-12,
                        1e-11,
                    )
                })
            }
        }
    };
    let a_int = primitive(&alpha);
    let g_int = primitive(&exponent);
    let mut out = Vec::with_capacity(grid.len());
    for &x in grid {
        let alpha_x = evaluate_normal(&alpha, x, bindings, MIN_DEN)?;
        let a = a_int(x)?;
        let b = if c1 == 0.0 {
            0.0
        } else {
            numeric::integrate(|t| Ok(g_int(t)?.exp()), x0, x, 1e-12, 1e-11)?
        };
        let e = (-a).exp();
        let u = e * (c2 + c1 * b);
        let du = -alpha_x * u + c1 * e * g_int(x)?.exp();
        if !u.is_finite() || !du.is_finite() {
            return Err(Error::NonFinite { x });
        }
        out.push(GeneralSample { x, u, y: du / u });
    }
    Ok(out)
}
