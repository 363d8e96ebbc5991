//! Randomized identity checks shared by the property suite and the
//! acceptance harness. Each check draws its instance from `seed`.

#![allow(dead_code)]

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use riccati_core::aim::{aim_iterate, find_termination, Termination};
use riccati_core::fixtures::{default_parameters, SEEDS};
use riccati_core::hyper::{pochhammer, pochhammer_rational, HyperSpec};
use riccati_core::riccati::RiccatiEquation;
use riccati_core::symcore::{
    differentiate, evaluate_normal, normalize, parse, Bindings, Expr, NormalForm, Rational, Var,
};
use riccati_core::verify::rk_crosscheck;

pub type Check = Result<(), String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(r: &mut ChaCha8Rng) -> i64 {
    r.gen_range(-4..=4)
}

fn rational(r: &mut ChaCha8Rng) -> Rational {
    Rational::new(
        BigInt::from(r.gen_range(-9..=9)),
        BigInt::from(r.gen_range(1..=5)),
    )
}

fn poly(r: &mut ChaCha8Rng, deg: u32, param: bool) -> String {
    let mut terms = Vec::new();
    for k in 0..=deg {
        let c = small(r);
        if c == 0 {
            continue;
        }
        let p = if param && r.gen_bool(0.3) { "*a" } else { "" };
        terms.push(format!("({c}){p}*x^{k}"));
    }
    if terms.is_empty() {
        "1".into()
    } else {
        terms.join(" + ")
    }
}

/// A random rational function of `x` (and sometimes `a`) with nonzero
/// denominator.
pub fn random_ratfun(r: &mut ChaCha8Rng) -> String {
    let (dn, dd) = (r.gen_range(0..=3), r.gen_range(0..=2));
    let num = poly(r, dn, true);
    let den = poly(r, dd, false);
    let den = format!("{den} + {}", r.gen_range(5..=7));
    format!("({num})/({den})")
}

fn nf(s: &str) -> Result<NormalForm, String> {
    parse(s, &["a"])
        .and_then(|e| normalize(&e))
        .map_err(|e| format!("{s}: {e}"))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn aim_recurrence(seed: u64) -> Check {
    let r = &mut rng(seed);
    let (l0s, s0s) = (random_ratfun(r), random_ratfun(r));
    let tr = aim_iterate(
        &parse(&l0s, &["a"]).map_err(err)?,
        &parse(&s0s, &["a"]).map_err(err)?,
        3,
    )
    .map_err(err)?;
    let (l0, s0) = (nf(&l0s)?, nf(&s0s)?);
    let (mut l, mut s) = (l0.clone(), s0.clone());
    for n in 1..=3isize {
        let ln = l
            .derivative()
            .add(&s)
            .map_err(err)?
            .add(&l0.mul(&l))
            .map_err(err)?;
        let sn = s.derivative().add(&s0.mul(&l)).map_err(err)?;
        if &ln != tr.lambda(n) || &sn != tr.s(n) {
            return Err(format!(
                "sequences differ at n = {n} for l0 = {l0s}, s0 = {s0s}"
            ));
        }
        l = ln;
        s = sn;
    }
    Ok(())
}

fn table_seed(r: &mut ChaCha8Rng) -> Result<(Expr, Expr, String), String> {
    let row = SEEDS[r.gen_range(0..SEEDS.len())];
    let n = r.gen_range(1..=3i64);
    let mut vals = default_parameters();
    vals.insert("n", Rational::from_integer(n.into()));
    let sub = |s: &str| -> Result<Expr, String> {
        let e = parse(s, &["n", "a", "b", "c", "k"]).map_err(err)?;
        Ok(vals.iter().fold(e, |acc, (v, q)| {
            acc.substitute(&Var::new(v), &Expr::num(q.clone()))
        }))
    };
    Ok((
        sub(row.lambda0)?,
        sub(row.s0)?,
        format!("row {} n {n}", row.row),
    ))
}

pub fn ratio_at_termination(seed: u64) -> Check {
    let r = &mut rng(seed);
    let (l0, s0, what) = if r.gen_bool(0.5) {
        let l0 = random_ratfun(r);
        let c = r.gen_range(1..=5);
        let s0 = format!("-({l0})/(x + {c})");
        (
            parse(&l0, &["a"]).map_err(err)?,
            parse(&s0, &["a"]).map_err(err)?,
            format!("l0 = {l0}, s0 = {s0}"),
        )
    } else {
        table_seed(r)?
    };
    let tr = aim_iterate(&l0, &s0, 8).map_err(err)?;
    let n = match find_termination(&tr).map_err(err)? {
        Termination::Exact { n } => n as isize,
        t => return Err(format!("{what}: expected exact termination, got {t}")),
    };
    if tr.lambda(n).is_zero() || tr.lambda(n - 1).is_zero() {
        return Ok(());
    }
    let now = tr.s(n).div(tr.lambda(n)).map_err(err)?;
    let before = tr.s(n - 1).div(tr.lambda(n - 1)).map_err(err)?;
    if now != before {
        return Err(format!("{what}: ratios differ at n = {n}"));
    }
    Ok(())
}

pub fn normalize_homomorphism(seed: u64) -> Check {
    let r = &mut rng(seed);
    let (p, q) = (random_ratfun(r), random_ratfun(r));
    let e = if r.gen_bool(0.5) {
        format!("exp({})", poly(r, 2, false))
    } else {
        "1".into()
    };
    let (np, nq, ne) = (nf(&p)?, nf(&q)?, nf(&e)?);
    let sum = nf(&format!("({p}) + ({q})"))?;
    if sum != np.add(&nq).map_err(err)? {
        return Err(format!("sum of {p} and {q}"));
    }
    let prod = nf(&format!("({p})*({q})*{e}"))?;
    if prod != np.mul(&nq).mul(&ne) {
        return Err(format!("product of {p}, {q}, {e}"));
    }
    let diff = nf(&format!("({p}) - ({q})"))?;
    if diff != np.sub(&nq).map_err(err)? {
        return Err(format!("difference of {p} and {q}"));
    }
    Ok(())
}

pub fn product_rule(seed: u64) -> Check {
    let r = &mut rng(seed);
    let p = parse(&random_ratfun(r), &["a"]).map_err(err)?;
    let q = parse(
        &format!("({})*exp({})", random_ratfun(r), poly(r, 2, true)),
        &["a"],
    )
    .map_err(err)?;
    let lhs = normalize(&differentiate(&Expr::mul(p.clone(), q.clone()))).map_err(err)?;
    let rhs = normalize(&Expr::add(
        Expr::mul(differentiate(&p), q.clone()),
        Expr::mul(p.clone(), differentiate(&q)),
    ))
    .map_err(err)?;
    if lhs != rhs {
        return Err(format!("(pq)' for p = {p}, q = {q}"));
    }
    if normalize(&differentiate(&p)).map_err(err)? != normalize(&p).map_err(err)?.derivative() {
        return Err(format!(
            "structural and canonical derivatives of {p} differ"
        ));
    }
    Ok(())
}

pub fn pochhammer_recurrence(seed: u64) -> Check {
    let r = &mut rng(seed);
    let alpha = rational(r);
    let k = r.gen_range(0..12u32);
    let kq = Rational::from_integer(k.into());
    if pochhammer_rational(&alpha, k + 1) != pochhammer_rational(&alpha, k) * (alpha.clone() + kq) {
        return Err(format!("({alpha})_{k}"));
    }
    let a = Expr::sym("a");
    let lhs = normalize(&pochhammer(&a, k + 1)).map_err(err)?;
    let rhs = normalize(&Expr::mul(
        pochhammer(&a, k),
        Expr::add(a.clone(), Expr::int(k as i64)),
    ))
    .map_err(err)?;
    if lhs != rhs {
        return Err(format!("(a)_{k} symbolic"));
    }
    Ok(())
}

pub fn truncation_matches_evaluation(seed: u64) -> Check {
    let r = &mut rng(seed);
    let n = r.gen_range(0..=6i64);
    let c = Rational::new(BigInt::from(2 * r.gen_range(0..=6) + 1), BigInt::from(2));
    let mut num = vec![Expr::int(-n)];
    if r.gen_bool(0.5) {
        num.push(Expr::num(rational(r)));
    }
    let x: f64 = r.gen_range(-0.9..0.9);
    let h = HyperSpec::new(num, vec![Expr::num(c)], Expr::x()).map_err(err)?;
    let exact =
        evaluate_normal(&h.expand_normal().map_err(err)?, x, &Bindings::new(), 0.0).map_err(err)?;
    let series = h.evaluate(x, &Bindings::new(), 200, 1e-16).map_err(err)?;
    if (exact - series).abs() > 1e-12 * exact.abs().max(1.0) {
        return Err(format!("{h} at {x}: {exact} vs {series}"));
    }
    Ok(())
}

/// Ratio of RK4 deviations at `2N` and `N` steps on a pole-free interval.
pub fn rk_order_ratio(seed: u64) -> Result<f64, String> {
    let r = &mut rng(seed);
    let c: f64 = r.gen_range(1.0..3.0);
    let len: f64 = r.gen_range(0.5..1.5);
    let cq = Rational::new(BigInt::from((c * 100.0) as i64), BigInt::from(100));
    let (eq, y, x0, x1) = if r.gen_bool(0.5) {
        let eq = RiccatiEquation::parse("0", "1", "0", &[]).map_err(err)?;
        (eq, format!("1/(x + {cq})"), 0.0, len)
    } else {
        let eq = RiccatiEquation::parse("-2*x", "1", "-4", &[]).map_err(err)?;
        (eq, "-4*x/(1 - 2*x^2)".to_string(), 0.0, 0.2 + 0.2 * len)
    };
    let y = parse(&y, &[]).map_err(err)?;
    let b = Bindings::new();
    let coarse = rk_crosscheck(&eq, &y, x0, x1, 40, &b).map_err(err)?;
    let fine = rk_crosscheck(&eq, &y, x0, x1, 80, &b).map_err(err)?;
    Ok(fine / coarse)
}

pub fn rk_order(seed: u64) -> Check {
    let ratio = rk_order_ratio(seed)?;
    if ratio > 1.0 / 12.0 {
        return Err(format!("deviation ratio {ratio}"));
    }
    Ok(())
}

pub type Property = fn(u64) -> Check;

pub const SUITES: [(&str, Property); 7] = [
    ("AIM recurrence re-derivation", aim_recurrence),
    ("ratio equality at termination", ratio_at_termination),
    ("normalize homomorphism", normalize_homomorphism),
    ("product rule", product_rule),
    ("Pochhammer recurrence", pochhammer_recurrence),
    ("truncation vs evaluation", truncation_matches_evaluation),
    ("RK4 convergence order", rk_order),
];
