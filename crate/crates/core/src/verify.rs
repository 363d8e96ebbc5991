//! Symbolic and numeric checks of closed-form solutions.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::rk4;
use crate::riccati::RiccatiEquation;
use crate::solution::Solution;
use crate::symcore::{
    differentiate, eliminate, evaluate_guarded, Bindings, Elimination, ExpSum, Expr, RatFun,
    Rational, Var,
};

/// Denominators at most this large in magnitude count as poles.
pub const POLE_THRESHOLD: f64 = 1e-6;
pub const GRID_POINTS: usize = 41;
pub const RK_STEPS: usize = 1000;

/// `y' + P y + Q y^2 - R` in canonical form.
pub fn symbolic_residual(eq: &RiccatiEquation, y: &Expr) -> Result<ExpSum> {
    eq.residual(y)
}

fn rhs(eq: &RiccatiEquation, x: f64, y: f64, b: &Bindings) -> Result<f64> {
    let p = evaluate_guarded(&eq.p, x, b, POLE_THRESHOLD)?;
    let q = evaluate_guarded(&eq.q, x, b, POLE_THRESHOLD)?;
    let r = evaluate_guarded(&eq.r, x, b, POLE_THRESHOLD)?;
    Ok(r - p * y - q * y * y)
}

/// Largest `|y' + P y + Q y^2 - R|` over `grid`, with `y'` differentiated
/// symbolically.
pub fn numeric_residual_grid(
    eq: &RiccatiEquation,
    y: &Expr,
    grid: &[f64],
    bindings: &Bindings,
) -> Result<f64> {
    let dy = differentiate(y);
    let mut worst = 0.0f64;
    for &x in grid {
        let yv = evaluate_guarded(y, x, bindings, POLE_THRESHOLD)?;
        let dv = evaluate_guarded(&dy, x, bindings, POLE_THRESHOLD)?;
        worst = worst.max((dv - rhs(eq, x, yv, bindings)?).abs());
    }
    Ok(worst)
}

/// Integrates the equation from `y(x0)` with fixed-step RK4 and returns
/// the largest deviation from the closed form on the mesh.
pub fn rk_crosscheck(
    eq: &RiccatiEquation,
    y: &Expr,
    x0: f64,
    x1: f64,
    steps: usize,
    bindings: &Bindings,
) -> Result<f64> {
    let y0 = evaluate_guarded(y, x0, bindings, POLE_THRESHOLD)?;
    let mesh = rk4(|x, v| rhs(eq, x, v, bindings), x0, y0, x1, steps)?;
    let mut worst = 0.0f64;
    for (x, v) in mesh {
        let exact = evaluate_guarded(y, x, bindings, POLE_THRESHOLD)?;
        worst = worst.max((v - exact).abs());
    }
    Ok(worst)
}

/// `n` equispaced points on `[lo, hi]`, both ends included.
pub fn equispaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// The default grid on `[lo, hi]` with points near poles of `y`, `P`, `Q`
/// or `R` removed.
pub fn default_grid(
    eq: &RiccatiEquation,
    y: &Expr,
    lo: f64,
    hi: f64,
    bindings: &Bindings,
) -> Vec<f64> {
    let dy = differentiate(y);
    equispaced(lo, hi, GRID_POINTS)
        .into_iter()
        .filter(|&x| {
            [y, &dy, &eq.p, &eq.q, &eq.r]
                .iter()
                .all(|e| evaluate_guarded(e, x, bindings, POLE_THRESHOLD).is_ok())
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub symbolic_residual_zero: bool,
    pub max_numeric_residual: f64,
    pub grid: Vec<f64>,
    /// Absent when the integration escaped or the grid was empty.
    pub rk_max_deviation: Option<f64>,
    pub rk_note: Option<String>,
    pub constraint_bindings: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn passes(&self, residual_tol: f64, rk_tol: f64) -> bool {
        self.symbolic_residual_zero
            && !self.grid.is_empty()
            && self.max_numeric_residual < residual_tol
            && self.rk_max_deviation.is_some_and(|d| d < rk_tol)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub interval: (f64, f64),
    pub seed: u64,
    pub rk_steps: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            interval: (0.1, 0.4),
            seed: 7,
            rk_steps: RK_STEPS,
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let d: i64 = rng.gen_range(1..=7);
    let n: i64 = rng.gen_range(d..=5 * d);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational values in `[1, 5]` with denominators at most 7 for the free
/// parameters, with eliminated parameters computed from the rest. Draws
/// are repeated while `admissible` rejects them.
pub fn random_bindings<F: Fn(&BTreeMap<Var, Rational>) -> bool>(
    params: &BTreeSet<Var>,
    eliminations: &[Elimination],
    seed: u64,
    admissible: F,
) -> Result<BTreeMap<Var, Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let solved: BTreeSet<&Var> = eliminations.iter().map(|e| &e.var).collect();
    'draw: for _ in 0..64 {
        let mut vals: BTreeMap<Var, Rational> = params
            .iter()
            .filter(|v| !solved.contains(v))
            .map(|v| (v.clone(), random_rational(&mut rng)))
            .collect();
        for e in eliminations {
            let mut value = e.value.clone();
            for (v, q) in &vals {
                match value.substitute(v, &RatFun::constant(q.clone())) {
                    Ok(r) => value = r,
                    Err(_) => continue 'draw,
                }
            }
            match value.constant_value() {
                Some(q) => vals.insert(e.var.clone(), q),
                None => continue 'draw,
            };
        }
        if admissible(&vals) {
            return Ok(vals);
        }
    }
    Err(Error::InvalidInput(
        "no admissible parameter binding found".into(),
    ))
}

fn substitute_all(e: &Expr, vals: &BTreeMap<Var, Rational>) -> Expr {
    vals.iter().fold(e.clone(), |acc, (v, q)| {
        acc.substitute(v, &Expr::num(q.clone()))
    })
}

fn to_f64(vals: &BTreeMap<Var, Rational>) -> Bindings {
    vals.iter()
        .map(|(v, q)| (v.name().to_string(), q.to_f64().unwrap_or(f64::NAN)))
        .collect()
}

/// Checks `sol` against `eq` symbolically, on the default grid over
/// `opts.interval`, and against RK4 over the widest pole-free run of the
/// grid.
pub fn verify_solution(
    eq: &RiccatiEquation,
    sol: &Solution,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let mut params: BTreeSet<Var> = [&eq.p, &eq.q, &eq.r, &sol.expression]
        .iter()
        .flat_map(|e| e.symbols())
        .filter(|v| !v.is_x())
        .collect();
    let elims = if sol.eliminations.is_empty() && !sol.constraints.is_empty() {
        eliminate(&sol.constraints, &eq.exponent_parameters(), None)?
    } else {
        sol.eliminations.clone()
    };
    params.extend(elims.iter().map(|e| e.var.clone()));
    let symbolic_residual_zero = match eq.reduce(&elims) {
        Ok(reduced) => reduced.residual(&sol.expression)?.is_zero(),
        Err(_) => false,
    };
    let (lo, hi) = opts.interval;
    let admissible = |vals: &BTreeMap<Var, Rational>| {
        let bound = RiccatiEquation::new(
            substitute_all(&eq.p, vals),
            substitute_all(&eq.q, vals),
            substitute_all(&eq.r, vals),
            Vec::new(),
        );
        let y = substitute_all(&sol.expression, vals);
        match bound {
            Ok(b) => b.residual(&y).is_ok(),
            Err(_) => false,
        }
    };
    let vals = random_bindings(&params, &elims, opts.seed, admissible)?;
    let bindings = to_f64(&vals);
    let grid = default_grid(eq, &sol.expression, lo, hi, &bindings);
    let max_numeric_residual = if grid.is_empty() {
        f64::INFINITY
    } else {
        numeric_residual_grid(eq, &sol.expression, &grid, &bindings)?
    };
    let (rk_max_deviation, rk_note) = match widest_run(&grid, lo, hi) {
        Some((a, b)) => match rk_crosscheck(eq, &sol.expression, a, b, opts.rk_steps, &bindings) {
            Ok(d) => (Some(d), None),
            Err(e) => (None, Some(e.to_string())),
        },
        None => (None, Some("no pole-free grid points".into())),
    };
    Ok(VerificationReport {
        symbolic_residual_zero,
        max_numeric_residual,
        grid,
        rk_max_deviation,
        rk_note,
        constraint_bindings: vals
            .iter()
            .map(|(v, q)| (v.name().to_string(), q.to_string()))
            .collect(),
    })
}

/// Endpoints of the longest run of consecutive surviving grid points.
fn widest_run(grid: &[f64], lo: f64, hi: f64) -> Option<(f64, f64)> {
    let full = equispaced(lo, hi, GRID_POINTS);
    let kept: Vec<bool> = full.iter().map(|x| grid.contains(x)).collect();
    let mut best: Option<(usize, usize)> = None;
    let mut start = None;
    for (i, &k) in kept.iter().chain([false].iter()).enumerate() {
        match (k, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                if best.is_none_or(|(a, b)| i - 1 - s > b - a) {
                    best = Some((s, i - 1));
                }
                start = None;
            }
            _ => {}
        }
    }
    best.filter(|(a, b)| b > a).map(|(a, b)| (full[a], full[b]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::parse;

    fn eq(p: &str, q: &str, r: &str) -> RiccatiEquation {
        RiccatiEquation::parse(p, q, r, &[]).unwrap()
    }

    #[test]
    fn residual_grid_separates_right_from_wrong() {
        let e = eq("-2*x", "1", "-4");
        let good = parse("-4*x/(1 - 2*x^2)", &[]).unwrap();
        let grid = default_grid(&e, &good, -0.5, 0.5, &Bindings::new());
        assert_eq!(grid.len(), GRID_POINTS);
        assert!(numeric_residual_grid(&e, &good, &grid, &Bindings::new()).unwrap() < 1e-10);
        let bad = parse("x", &[]).unwrap();
        assert!(numeric_residual_grid(&e, &bad, &grid, &Bindings::new()).unwrap() > 0.1);
        let twin = eq("-2*x", "-1", "4");
        let y = parse("4*x/(1 - 2*x^2)", &[]).unwrap();
        assert!(numeric_residual_grid(&twin, &y, &grid, &Bindings::new()).unwrap() < 1e-10);
    }

    #[test]
    fn rk_matches_closed_form() {
        let e = eq("-2*x", "1", "-4");
        let y = parse("-4*x/(1 - 2*x^2)", &[]).unwrap();
        assert!(rk_crosscheck(&e, &y, 0.0, 0.4, 1000, &Bindings::new()).unwrap() < 1e-9);
        let trivial = eq("0", "1", "0");
        let zero = parse("0", &[]).unwrap();
        assert_eq!(
            rk_crosscheck(&trivial, &zero, 0.0, 1.0, 10, &Bindings::new()).unwrap(),
            0.0
        );
        let cubic = eq("1", "exp((3/4)*x^4 + x)", "-27*x^2*exp(-(3/4)*x^4 - x)");
        let y = parse(
            "(9*x^8 - 30*x^4 + 5)/(x*exp((3/4)*x^4 + x)*(x^8 - 6*x^4 + 5))",
            &[],
        )
        .unwrap();
        assert!(rk_crosscheck(&cubic, &y, 1.55, 1.95, 2000, &Bindings::new()).unwrap() < 1e-7);
    }

    #[test]
    fn zero_solution_of_unit_equation_fails() {
        let e = eq("0", "1", "1");
        let res = symbolic_residual(&e, &Expr::zero()).unwrap();
        assert!(!res.is_zero());
    }

    #[test]
    fn runs_and_bindings() {
        let g = equispaced(0.0, 1.0, GRID_POINTS);
        let mut kept = g.clone();
        kept.remove(10);
        assert_eq!(widest_run(&kept, 0.0, 1.0), Some((g[11], g[40])));
        let params: BTreeSet<Var> = [Var::new("a"), Var::new("b")].into();
        let v = random_bindings(&params, &[], 3, |_| true).unwrap();
        for q in v.values() {
            assert!(
                *q >= Rational::from_integer(1.into()) && *q <= Rational::from_integer(5.into())
            );
            assert!(*q.denom() <= BigInt::from(7));
        }
    }
}
