//! Antiderivatives of rational functions in `x`.
//!
//! Two cases are handled exactly: Laurent polynomials in `x` whose
//! coefficients may involve parameters, and parameter-free rational
//! functions (Hermite reduction for the rational part, Rothstein–Trager for
//! the logarithmic part, provided every log coefficient is rational).
//! Anything else is left to quadrature.

use std::fmt;

use num::{BigInt, One, Zero};

use super::expr::Expr;
use super::gcd::resultant;
use super::normal::{poly_to_expr, NormalForm};
use super::poly::{Monomial, Polynomial, Rational, Var};
use super::ratfun::RatFun;
use super::upoly::UPoly;

/// `coeff * ln|arg|`, with `coeff` free of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogTerm {
    pub coeff: RatFun,
    pub arg: Polynomial,
}

/// `rational + sum of log terms`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antiderivative {
    pub rational: RatFun,
    pub logs: Vec<LogTerm>,
}

impl Antiderivative {
    /// d/dx, for checking.
    pub fn derivative(&self) -> RatFun {
        let x = Var::x();
        let mut out = self.rational.derivative(&x);
        for l in &self.logs {
            let d = RatFun::new(l.arg.derivative(&x), l.arg.clone()).expect("nonzero argument");
            out = out.add(&d.mul(&l.coeff));
        }
        out
    }

    pub fn eval_f64<F: Fn(&Var) -> Option<f64> + Copy>(&self, x: f64, params: F) -> Option<f64> {
        let value = |v: &Var| if v.is_x() { Some(x) } else { params(v) };
        let mut acc = self.rational.eval_f64(value)?;
        for l in &self.logs {
            acc += l.coeff.eval_f64(value)? * l.arg.eval_f64(value)?.abs().ln();
        }
        Some(acc)
    }

    /// `exp(sign * self)` as a normal form, when representable: the rational
    /// part must be a polynomial, logs of `x` may carry any parameter
    /// polynomial coefficient and other logs need integer coefficients.
    pub fn exp(&self, sign: i64) -> Option<NormalForm> {
        let s = Rational::from_integer(BigInt::from(sign));
        let arg = self.rational.as_polynomial()?.scale(&s);
        let mut out = NormalForm::exp_of(arg);
        for l in &self.logs {
            let c = l.coeff.scale(&s);
            let factor = if l.arg == Polynomial::x() {
                NormalForm::x_pow(c.as_polynomial()?.clone()).ok()?
            } else {
                let k = c.constant_value()?;
                if !k.is_integer() {
                    return None;
                }
                let k = num::ToPrimitive::to_i64(&k.to_integer())?;
                NormalForm::from_poly(l.arg.clone()).powi(k).ok()?
            };
            out = out.mul(&factor);
        }
        Some(out)
    }
}

impl fmt::Display for Antiderivative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.rational.is_zero() || self.logs.is_empty() {
            write!(f, "{}", NormalForm::from_ratfun(self.rational.clone()))?;
            first = false;
        }
        for l in &self.logs {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let c = NormalForm::from_ratfun(l.coeff.clone()).to_expr();
            let ln = format!("ln({})", poly_to_expr(&l.arg));
            if c.is_one() {
                f.write_str(&ln)?;
            } else {
                write!(f, "({c})*{ln}")?;
            }
        }
        Ok(())
    }
}

/// Symbolic antiderivative of `f` with respect to `x`, or `None` when `f`
/// falls outside the supported classes.
pub fn antiderivative(f: &RatFun) -> Option<Antiderivative> {
    if f.is_zero() {
        return Some(Antiderivative {
            rational: RatFun::zero(),
            logs: Vec::new(),
        });
    }
    laurent(f).or_else(|| numeric_rational(f))
}

/// `f = N / (d0 x^k)` with `d0` free of `x`.
fn laurent(f: &RatFun) -> Option<Antiderivative> {
    let x = Var::x();
    let den = f.denominator();
    let content = den.monomial_content();
    let k = content.degree_in(&x);
    let xk = Monomial::var(x.clone(), k);
    let d0 = den.div_exact(&Polynomial::term(xk, Rational::one()))?;
    if d0.contains_x() {
        return None;
    }
    let inv_d0 = RatFun::new(Polynomial::one(), d0).ok()?;
    let mut rational = RatFun::zero();
    let mut log_coeff = Polynomial::zero();
    for (m, c) in f.numerator().terms() {
        let j = m.degree_in(&x) as i64;
        let rest = Polynomial::term(m.without(&x), c.clone());
        let p = j - k as i64;
        if p == -1 {
            log_coeff = &log_coeff + &rest;
        } else {
            let scale = Rational::new(BigInt::one(), BigInt::from(p + 1));
            let t = RatFun::from_poly(rest.scale(&scale)).mul_x_pow(p + 1);
            rational = rational.add(&t);
        }
    }
    let rational = rational.mul(&inv_d0);
    let mut logs = Vec::new();
    if !log_coeff.is_zero() {
        logs.push(LogTerm {
            coeff: RatFun::from_poly(log_coeff).mul(&inv_d0),
            arg: Polynomial::x(),
        });
    }
    Some(Antiderivative { rational, logs })
}

fn numeric_rational(f: &RatFun) -> Option<Antiderivative> {
    let x = Var::x();
    let n = UPoly::from_polynomial(f.numerator(), &x)?;
    let d = UPoly::from_polynomial(f.denominator(), &x)?;
    let (q, r) = n.div_rem(&d);
    let poly_part = integrate_upoly(&q);
    let (g, a, ds) = hermite(&r, &d);
    let mut rational = RatFun::from_poly(poly_part.to_polynomial(&x)).add(&g);
    let mut logs = Vec::new();
    if !a.is_zero() {
        let (extra, a) = a.div_rem(&ds);
        rational = rational.add(&RatFun::from_poly(
            integrate_upoly(&extra).to_polynomial(&x),
        ));
        if !a.is_zero() {
            logs = rothstein_trager(&a, &ds)?;
        }
    }
    Some(Antiderivative { rational, logs })
}

fn integrate_upoly(p: &UPoly) -> UPoly {
    let mut c = vec![Rational::zero()];
    for (i, a) in p.coeffs().iter().enumerate() {
        c.push(a / Rational::from_integer(BigInt::from(i + 1)));
    }
    UPoly::from_coeffs(c)
}

/// Hermite reduction of a proper `a/d`: returns `(g, h_num, h_den)` with
/// `a/d = g' + h_num/h_den` and `h_den` squarefree.
fn hermite(a: &UPoly, d: &UPoly) -> (RatFun, UPoly, UPoly) {
    let x = Var::x();
    let mut g = RatFun::zero();
    let mut a = a.clone();
    let mut dm = d.gcd(&d.derivative());
    let ds = d.div_rem(&dm).0;
    while dm.degree() > 0 {
        let dm2 = dm.gcd(&dm.derivative());
        let dms = dm.div_rem(&dm2).0;
        let lhs = ds
            .mul(&dm.derivative())
            .div_rem(&dm)
            .0
            .scale(&-Rational::one());
        let (b, c) = UPoly::diophantine(&lhs, &dms, &a).expect("coprime by construction");
        a = c.sub(&b.derivative().mul(&ds).div_rem(&dms).0);
        let term = RatFun::new(b.to_polynomial(&x), dm.to_polynomial(&x)).expect("nonzero");
        g = g.add(&term);
        dm = dm2;
    }
    (g, a, ds)
}

fn rothstein_trager(a: &UPoly, d: &UPoly) -> Option<Vec<LogTerm>> {
    let x = Var::x();
    let z = Var::new("_z");
    let dp = d.to_polynomial(&x);
    let zp = Polynomial::var(z.clone());
    let rhs = &a.to_polynomial(&x) - &(&zp * &d.derivative().to_polynomial(&x));
    let res = resultant(&dp, &rhs, &x);
    let res = UPoly::from_polynomial(&res, &z)?;
    let roots = res.rational_roots()?;
    let found: u32 = roots.iter().map(|r| r.1).sum();
    if found as isize != res.degree() {
        return None;
    }
    let mut logs = Vec::new();
    for (c, _) in roots {
        let v = d.gcd(&a.sub(&d.derivative().scale(&c)));
        if v.degree() <= 0 {
            continue;
        }
        logs.push(LogTerm {
            coeff: RatFun::constant(c),
            arg: v.to_polynomial(&x).primitive(),
        });
    }
    Some(logs)
}

/// `exp(sign * int f dx)`: closed form when available, otherwise an
/// expression carrying a formal integral from `base`.
pub fn exp_of_integral(integrand: &Expr, sign: i64, base: &Rational) -> Expr {
    if let Some(nf) = super::normal::normalize(integrand)
        .ok()
        .and_then(|n| n.as_ratfun().cloned())
        .and_then(|r| antiderivative(&r))
        .and_then(|a| a.exp(sign))
    {
        return nf.to_expr();
    }
    let i = Expr::integral(integrand.clone(), base.clone());
    Expr::exp(if sign < 0 { Expr::neg(i) } else { i })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::normal::normalize;
    use crate::symcore::parse::parse;

    fn rf(s: &str, params: &[&str]) -> RatFun {
        normalize(&parse(s, params).unwrap())
            .unwrap()
            .as_ratfun()
            .unwrap()
            .clone()
    }

    fn round_trip(s: &str, params: &[&str]) -> Antiderivative {
        let f = rf(s, params);
        let a = antiderivative(&f).unwrap_or_else(|| panic!("no antiderivative for {s}"));
        assert_eq!(a.derivative(), f, "d/dx of {a} differs from {s}");
        a
    }

    #[test]
    fn polynomials_and_laurent_terms() {
        let a = round_trip("2*x + 3*x^2 - 5/x^3", &[]);
        assert!(a.logs.is_empty());
        let b = round_trip("(n + b)/x + a*x", &["a", "b", "n"]);
        assert_eq!(b.logs.len(), 1);
        assert_eq!(b.logs[0].arg, Polynomial::x());
    }

    #[test]
    fn logarithmic_parts() {
        let a = round_trip("4*x/(1 - 2*x^2)", &[]);
        assert_eq!(a.logs.len(), 1);
        round_trip("3*x/(1 - x^2)", &[]);
        round_trip("1/(x^2 - 1) + 1/x", &[]);
    }

    #[test]
    fn hermite_rational_part() {
        let a = round_trip("1/(x - 1)^2 + 2/(x + 1)^3 + x", &[]);
        assert!(a.logs.is_empty());
        round_trip("(x^2 + 1)/((x - 1)^2*(x + 2))", &[]);
    }

    #[test]
    fn irrational_log_coefficients_are_rejected() {
        assert!(antiderivative(&rf("1/(x^2 - 2)", &[])).is_none());
        assert!(antiderivative(&rf("1/(x^2 + 1)", &[])).is_none());
    }

    #[test]
    fn exponentials_of_antiderivatives() {
        let e = antiderivative(&rf("2*x + 1", &[]))
            .unwrap()
            .exp(-1)
            .unwrap();
        assert_eq!(e, normalize(&parse("exp(-x^2 - x)", &[]).unwrap()).unwrap());
        let p = antiderivative(&rf("(n + b)/x", &["b", "n"]))
            .unwrap()
            .exp(1)
            .unwrap();
        assert_eq!(
            p,
            normalize(&parse("x^(n + b)", &["b", "n"]).unwrap()).unwrap()
        );
        let q = antiderivative(&rf("4*x/(2*x^2 - 1)", &[]))
            .unwrap()
            .exp(1)
            .unwrap();
        assert_eq!(q, normalize(&parse("2*x^2 - 1", &[]).unwrap()).unwrap());
        let half = antiderivative(&rf("3*x/(1 - x^2)", &[])).unwrap();
        assert!(half.exp(1).is_none());
    }

    #[test]
    fn formal_fallback() {
        let f = parse("3*x/(1 - x^2)", &[]).unwrap();
        let e = exp_of_integral(&f, -1, &Rational::zero());
        assert!(e.contains_integral());
        let g = parse("2*x", &[]).unwrap();
        assert!(!exp_of_integral(&g, 1, &Rational::zero()).contains_integral());
    }
}
