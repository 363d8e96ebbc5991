//! Canonical form `(num/den) * x^e * exp(E)`.
//!
//! `num/den` is a reduced [`RatFun`], `e` is a polynomial in the parameters
//! whose constant term lies in `[0, 1)` (integer powers of `x` live in the
//! rational part) and `E` is a polynomial in `x` and the parameters. Two
//! normal forms denote the same function iff they are structurally equal.

use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};

use super::expr::Expr;
use super::poly::{Monomial, Polynomial, Rational, Var};
use super::ratfun::RatFun;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    rat: RatFun,
    x_power: Polynomial,
    exp_arg: Polynomial,
}

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm {
            rat: RatFun::zero(),
            x_power: Polynomial::zero(),
            exp_arg: Polynomial::zero(),
        }
    }

    pub fn one() -> Self {
        NormalForm::from_ratfun(RatFun::one())
    }

    pub fn from_ratfun(rat: RatFun) -> Self {
        NormalForm {
            rat,
            x_power: Polynomial::zero(),
            exp_arg: Polynomial::zero(),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        NormalForm::from_ratfun(RatFun::from_poly(p))
    }

    pub fn constant(c: Rational) -> Self {
        NormalForm::from_poly(Polynomial::constant(c))
    }

    pub fn x() -> Self {
        NormalForm::from_poly(Polynomial::x())
    }

    /// `exp(arg)` for a polynomial argument.
    pub fn exp_of(arg: Polynomial) -> Self {
        NormalForm {
            rat: RatFun::one(),
            x_power: Polynomial::zero(),
            exp_arg: arg,
        }
    }

    /// `x^e` for an `x`-free polynomial exponent.
    pub fn x_pow(e: Polynomial) -> Result<Self> {
        if e.contains_x() {
            return Err(Error::UnsupportedForm("x-dependent exponent".into()));
        }
        NormalForm {
            rat: RatFun::one(),
            x_power: e,
            exp_arg: Polynomial::zero(),
        }
        .canonical()
    }

    pub fn from_parts(rat: RatFun, x_power: Polynomial, exp_arg: Polynomial) -> Result<Self> {
        if x_power.contains_x() {
            return Err(Error::UnsupportedForm("x-dependent exponent".into()));
        }
        NormalForm {
            rat,
            x_power,
            exp_arg,
        }
        .canonical()
    }

    fn canonical(mut self) -> Result<Self> {
        if self.rat.is_zero() {
            return Ok(NormalForm::zero());
        }
        let c = self.x_power.constant_term();
        let floor = c.floor();
        if !floor.is_zero() {
            let k = num::ToPrimitive::to_i64(&floor.to_integer())
                .ok_or_else(|| Error::Resource("x exponent too large".into()))?;
            self.x_power = &self.x_power - &Polynomial::constant(floor);
            self.rat = self.rat.mul_x_pow(k);
        }
        Ok(self)
    }

    pub fn ratfun(&self) -> &RatFun {
        &self.rat
    }

    pub fn numerator(&self) -> &Polynomial {
        self.rat.numerator()
    }

    pub fn denominator(&self) -> &Polynomial {
        self.rat.denominator()
    }

    pub fn x_power(&self) -> &Polynomial {
        &self.x_power
    }

    pub fn exp_arg(&self) -> &Polynomial {
        &self.exp_arg
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero()
    }

    /// True when the form is a plain rational function.
    pub fn is_rational(&self) -> bool {
        self.x_power.is_zero() && self.exp_arg.is_zero()
    }

    pub fn as_ratfun(&self) -> Option<&RatFun> {
        self.is_rational().then_some(&self.rat)
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.as_ratfun().and_then(RatFun::as_polynomial)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.as_ratfun().and_then(RatFun::constant_value)
    }

    pub fn contains_x(&self) -> bool {
        !self.x_power.is_zero() || self.rat.contains_var(&Var::x()) || self.exp_arg.contains_x()
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        self.rat.contains_var(v) || self.x_power.contains_var(v) || self.exp_arg.contains_var(v)
    }

    /// Degree guard metric: total degree of the numerator plus denominator.
    pub fn size_degree(&self) -> u32 {
        self.numerator()
            .total_degree()
            .max(self.denominator().total_degree())
    }

    fn same_transcendental(&self, other: &NormalForm) -> bool {
        self.x_power == other.x_power && self.exp_arg == other.exp_arg
    }

    pub fn neg(&self) -> NormalForm {
        NormalForm {
            rat: self.rat.neg(),
            x_power: self.x_power.clone(),
            exp_arg: self.exp_arg.clone(),
        }
    }

    pub fn add(&self, other: &NormalForm) -> Result<NormalForm> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if !self.same_transcendental(other) {
            return Err(Error::UnsupportedForm(
                "sum of terms with distinct exponential or power factors".into(),
            ));
        }
        let rat = self.rat.add(&other.rat);
        if rat.is_zero() {
            return Ok(NormalForm::zero());
        }
        Ok(NormalForm {
            rat,
            x_power: self.x_power.clone(),
            exp_arg: self.exp_arg.clone(),
        })
    }

    pub fn sub(&self, other: &NormalForm) -> Result<NormalForm> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &NormalForm) -> NormalForm {
        if self.is_zero() || other.is_zero() {
            return NormalForm::zero();
        }
        NormalForm {
            rat: self.rat.mul(&other.rat),
            x_power: &self.x_power + &other.x_power,
            exp_arg: &self.exp_arg + &other.exp_arg,
        }
        .canonical()
        .expect("x exponent within range")
    }

    pub fn recip(&self) -> Result<NormalForm> {
        NormalForm {
            rat: self.rat.recip()?,
            x_power: -&self.x_power,
            exp_arg: -&self.exp_arg,
        }
        .canonical()
    }

    pub fn div(&self, other: &NormalForm) -> Result<NormalForm> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(&other.recip()?))
    }

    pub fn scale(&self, c: &Rational) -> NormalForm {
        if c.is_zero() {
            return NormalForm::zero();
        }
        NormalForm {
            rat: self.rat.scale(c),
            x_power: self.x_power.clone(),
            exp_arg: self.exp_arg.clone(),
        }
    }

    pub fn powi(&self, k: i64) -> Result<NormalForm> {
        if k == 0 {
            return Ok(NormalForm::one());
        }
        if self.is_zero() {
            return if k > 0 {
                Ok(NormalForm::zero())
            } else {
                Err(Error::DivisionByZero)
            };
        }
        let kq = Rational::from_integer(BigInt::from(k));
        NormalForm {
            rat: self.rat.pow(k)?,
            x_power: self.x_power.scale(&kq),
            exp_arg: self.exp_arg.scale(&kq),
        }
        .canonical()
    }

    /// d/dx.
    pub fn derivative(&self) -> NormalForm {
        let x = Var::x();
        if self.is_zero() {
            return NormalForm::zero();
        }
        // (r x^e exp(E))' = x^e exp(E) (r' + r (e/x + E'))
        let mut log_deriv = RatFun::from_poly(self.exp_arg.derivative(&x));
        if !self.x_power.is_zero() {
            let ex = RatFun::new(self.x_power.clone(), Polynomial::x()).expect("x is nonzero");
            log_deriv = log_deriv.add(&ex);
        }
        let rat = self.rat.derivative(&x).add(&self.rat.mul(&log_deriv));
        if rat.is_zero() {
            return NormalForm::zero();
        }
        NormalForm {
            rat,
            x_power: self.x_power.clone(),
            exp_arg: self.exp_arg.clone(),
        }
    }

    /// Substitutes a parameter by an `x`-free rational function.
    pub fn substitute(&self, v: &Var, value: &RatFun) -> Result<NormalForm> {
        if v.is_x() || value.contains_var(&Var::x()) {
            return Err(Error::InvalidInput(
                "substitution must replace a parameter by an x-free value".into(),
            ));
        }
        let rat = self.rat.substitute(v, value)?;
        let sub_poly = |p: &Polynomial| -> Result<Polynomial> {
            let r = RatFun::from_poly(p.clone()).substitute(v, value)?;
            r.as_polynomial().cloned().ok_or_else(|| {
                Error::UnsupportedForm("substitution makes an exponent non-polynomial".into())
            })
        };
        NormalForm::from_parts(rat, sub_poly(&self.x_power)?, sub_poly(&self.exp_arg)?)
    }

    /// Rebuilds an expression in canonical printing order.
    pub fn to_expr(&self) -> Expr {
        if self.is_zero() {
            return Expr::zero();
        }
        let num = poly_to_expr(self.numerator());
        let core = if self.denominator().is_one() {
            num
        } else {
            Expr::Div(Box::new(num), Box::new(poly_to_expr(self.denominator())))
        };
        let mut factors = if core == Expr::int(1) {
            Vec::new()
        } else {
            vec![core]
        };
        if !self.x_power.is_zero() {
            factors.push(Expr::Pow(
                Box::new(Expr::x()),
                Box::new(poly_to_expr(&self.x_power)),
            ));
        }
        if !self.exp_arg.is_zero() {
            factors.push(Expr::Exp(Box::new(poly_to_expr(&self.exp_arg))));
        }
        match factors.len() {
            0 => Expr::int(1),
            1 => factors.pop().unwrap(),
            _ => Expr::Mul(factors),
        }
    }

    pub fn eval_f64<F: Fn(&Var) -> Option<f64> + Copy>(&self, x: f64, params: F) -> Option<f64> {
        let value = |v: &Var| if v.is_x() { Some(x) } else { params(v) };
        let r = self.rat.eval_f64(value)?;
        let e = if self.x_power.is_zero() {
            1.0
        } else {
            x.powf(self.x_power.eval_f64(params)?)
        };
        let ex = if self.exp_arg.is_zero() {
            1.0
        } else {
            self.exp_arg.eval_f64(value)?.exp()
        };
        Some(r * e * ex)
    }
}

/// Monomial printed with parameters first (alphabetical), then `x`.
fn monomial_factors(m: &Monomial) -> Vec<Expr> {
    let mut params = Vec::new();
    let mut xf = None;
    for (v, e) in m.factors() {
        let f = if e == 1 {
            Expr::Sym(v.clone())
        } else {
            Expr::Pow(
                Box::new(Expr::Sym(v.clone())),
                Box::new(Expr::int(e as i64)),
            )
        };
        if v.is_x() {
            xf = Some(f);
        } else {
            params.push(f);
        }
    }
    params.extend(xf);
    params
}

/// Polynomial as an expression, terms in descending graded-lex order.
pub fn poly_to_expr(p: &Polynomial) -> Expr {
    if p.is_zero() {
        return Expr::zero();
    }
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms().rev() {
        let mut factors = monomial_factors(m);
        let term = if factors.is_empty() {
            Expr::Num(c.clone())
        } else if c.is_one() {
            if factors.len() == 1 {
                factors.pop().unwrap()
            } else {
                Expr::Mul(factors)
            }
        } else if *c == -Rational::one() {
            let inner = if factors.len() == 1 {
                factors.pop().unwrap()
            } else {
                Expr::Mul(factors)
            };
            Expr::Neg(Box::new(inner))
        } else {
            factors.insert(0, Expr::Num(c.clone()));
            Expr::Mul(factors)
        };
        terms.push(term);
    }
    if terms.len() == 1 {
        terms.pop().unwrap()
    } else {
        Expr::Add(terms)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalForm({self})")
    }
}

/// Canonical normal form of an expression.
pub fn normalize(e: &Expr) -> Result<NormalForm> {
    match e {
        Expr::Num(q) => Ok(NormalForm::constant(q.clone())),
        Expr::Sym(v) => Ok(NormalForm::from_poly(Polynomial::var(v.clone()))),
        Expr::Add(items) => {
            let mut acc = NormalForm::zero();
            for it in items {
                acc = acc.add(&normalize(it)?)?;
            }
            Ok(acc)
        }
        Expr::Mul(items) => {
            let mut acc = NormalForm::one();
            for it in items {
                acc = acc.mul(&normalize(it)?);
                if acc.is_zero() {
                    // remaining factors must still be well-formed
                    for rest in items {
                        normalize(rest)?;
                    }
                    return Ok(acc);
                }
            }
            Ok(acc)
        }
        Expr::Div(a, b) => {
            let den = normalize(b)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            normalize(a)?.div(&den)
        }
        Expr::Neg(a) => Ok(normalize(a)?.neg()),
        Expr::Exp(a) => {
            let arg = normalize(a)?;
            match arg.as_polynomial() {
                Some(p) => Ok(NormalForm::exp_of(p.clone())),
                None => Err(Error::UnsupportedForm(format!(
                    "exp of non-polynomial argument `{a}`"
                ))),
            }
        }
        Expr::Pow(base, exponent) => normalize_pow(base, exponent),
        Expr::Integral(..) => Err(Error::UnsupportedForm(
            "formal integral has no normal form".into(),
        )),
    }
}

fn normalize_pow(base: &Expr, exponent: &Expr) -> Result<NormalForm> {
    let ex = normalize(exponent)?;
    let Some(ep) = ex.as_polynomial().cloned() else {
        return Err(Error::UnsupportedForm(format!(
            "exponent `{exponent}` is not a polynomial in the parameters"
        )));
    };
    if ep.contains_x() {
        return Err(Error::UnsupportedForm(format!(
            "exponent `{exponent}` depends on x"
        )));
    }
    let b = normalize(base)?;
    if let Some(k) = ep.constant_value() {
        if k.is_integer() {
            let k = num::ToPrimitive::to_i64(&k.to_integer())
                .filter(|k| k.abs() <= 1 << 16)
                .ok_or_else(|| Error::Resource("integer exponent too large".into()))?;
            return b.powi(k);
        }
    }
    // non-integer exponent: only x^e (times exp of a polynomial) is supported
    let num = b.numerator();
    let is_x_monomial = b.denominator().is_one()
        && num.len() == 1
        && num
            .leading()
            .map(|(m, c)| c.is_one() && m.factors().all(|(v, _)| v.is_x()))
            .unwrap_or(false);
    if !is_x_monomial {
        return Err(Error::UnsupportedForm(format!(
            "non-integer power of `{base}`"
        )));
    }
    let k = num.total_degree() as i64;
    let total = &Polynomial::constant(Rational::from_integer(BigInt::from(k))) + b.x_power();
    let new_exp = &total * &ep;
    let exp_arg = b.exp_arg().clone();
    let exp_arg = if exp_arg.is_zero() {
        exp_arg
    } else {
        &exp_arg * &ep
    };
    if exp_arg.contains_x() && !ep.constant_value().map(|q| q.is_integer()).unwrap_or(false) {
        // exp(E)^e = exp(e E) still a polynomial argument
    }
    NormalForm::from_parts(RatFun::one(), new_exp, exp_arg)
}

/// Numerator as the zero-testing carrier.
pub fn is_zero(nf: &NormalForm) -> bool {
    nf.is_zero()
}

impl NormalForm {
    /// Sign of the leading numerator coefficient, for display heuristics.
    pub fn leading_sign_negative(&self) -> bool {
        self.numerator().leading_coefficient().is_negative()
    }
}

#[allow(dead_code)]
fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::parse::parse;
    use crate::symcore::poly::{rat, ratio};

    fn nf(s: &str, params: &[&str]) -> NormalForm {
        normalize(&parse(s, params).unwrap()).unwrap()
    }

    #[test]
    fn common_factor_cancels() {
        let n = nf("(x^2 - 1)/(x - 1)", &[]);
        assert_eq!(n, nf("x + 1", &[]));
        assert!(n.denominator().is_one());
        assert!(n.exp_arg().is_zero());
    }

    #[test]
    fn exponentials_combine() {
        assert_eq!(nf("exp(x^2)*exp(-x^2)", &[]), NormalForm::one());
        assert_eq!(nf("exp(x)^2", &[]), nf("exp(2*x)", &[]));
    }

    #[test]
    fn log_derivative_of_exponential_is_rational() {
        // Q'/Q - P with Q = exp(3/4 x^4 + x), P = 1
        let q = nf("exp((3/4)*x^4 + x)", &[]);
        let l0 = q
            .derivative()
            .div(&q)
            .unwrap()
            .sub(&NormalForm::one())
            .unwrap();
        assert_eq!(l0, nf("3*x^3", &[]));
        assert!(l0.denominator().is_one());
    }

    #[test]
    fn zero_test() {
        assert!(nf("(x+1)*(x-1) - x^2 + 1", &[]).is_zero());
        assert!(!nf("x - 1", &[]).is_zero());
    }

    #[test]
    fn symbolic_x_powers() {
        let a = nf("x^(n+2)", &["n"]);
        let b = nf("x^2*x^n", &["n"]);
        assert_eq!(a, b);
        assert_eq!(a.x_power(), &Polynomial::var(Var::new("n")));
        let h = nf("x^(1/2)", &[]);
        assert_eq!(h.x_power().constant_value(), Some(ratio(1, 2)));
        let inv = nf("x^(-1/2)", &[]);
        assert_eq!(inv.x_power().constant_value(), Some(ratio(1, 2)));
        assert_eq!(inv.denominator(), &Polynomial::x());
        // (x^n)' = n x^n / x
        let d = nf("x^n", &["n"]).derivative();
        assert_eq!(d, nf("n*x^(n-1)", &["n"]));
    }

    #[test]
    fn unsupported_forms() {
        assert!(matches!(
            normalize(&parse("exp(1/x)", &[]).unwrap()),
            Err(Error::UnsupportedForm(_))
        ));
        assert!(matches!(
            normalize(&parse("1/(x - x)", &[]).unwrap()),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(
            normalize(&parse("exp(x) + 1", &[]).unwrap()),
            Err(Error::UnsupportedForm(_))
        ));
        assert!(normalize(&parse("(x+1)^(1/2)", &[]).unwrap()).is_err());
    }

    #[test]
    fn printing_is_canonical() {
        let n = nf("-4*x/(1 - 2*x^2)", &[]);
        assert_eq!(n.to_string(), "4*x/(2*x^2 - 1)");
        let e = nf("exp(x)*x/2", &[]);
        assert_eq!(e.to_string(), "1/2*x*exp(x)");
        let s = nf("x^n/a", &["a", "n"]);
        assert_eq!(s.to_string(), "1/a*x^n");
        let _ = rat(1);
    }
}
