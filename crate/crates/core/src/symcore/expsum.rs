//! Laurent polynomials `sum_k c_k E^k` in one formal exponential
//! `E = exp(int g)` with normal-form coefficients. `E' = g E`, so the class
//! is closed under differentiation and exact zero tests reduce to the
//! coefficients. This carries solutions whose integrating factor has no
//! closed form.

use std::collections::BTreeMap;
use std::fmt;

use super::expr::Expr;
use super::normal::{normalize, NormalForm};
use super::poly::Rational;
use crate::error::{Error, Result};

/// The integrand `g` of `E = exp(int_base^x g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub g: NormalForm,
    pub integrand: Expr,
    pub base: Rational,
}

#[derive(Clone, Debug)]
pub struct ExpSum {
    generator: Option<Generator>,
    terms: BTreeMap<i64, NormalForm>,
}

impl ExpSum {
    pub fn zero() -> Self {
        ExpSum {
            generator: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_normal(nf: NormalForm) -> Self {
        let mut s = ExpSum::zero();
        if !nf.is_zero() {
            s.terms.insert(0, nf);
        }
        s
    }

    /// `E^k` for the given generator.
    pub fn power(generator: Generator, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(k, NormalForm::one());
        ExpSum {
            generator: Some(generator),
            terms,
        }
    }

    pub fn generator(&self) -> Option<&Generator> {
        self.generator.as_ref()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &NormalForm)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `E^0` when no other power occurs.
    pub fn as_normal(&self) -> Option<NormalForm> {
        match self.terms.len() {
            0 => Some(NormalForm::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    fn unify(&self, other: &ExpSum) -> Result<(Option<Generator>, ExpSum)> {
        match (&self.generator, &other.generator) {
            (None, _) => Ok((other.generator.clone(), other.clone())),
            (Some(_), None) => Ok((self.generator.clone(), other.clone())),
            (Some(a), Some(b)) if a.g == b.g && a.base == b.base => {
                Ok((self.generator.clone(), other.clone()))
            }
            (Some(a), Some(b)) if a.g == b.g.neg() && a.base == b.base => {
                let terms = other.terms.iter().map(|(k, c)| (-k, c.clone())).collect();
                Ok((
                    self.generator.clone(),
                    ExpSum {
                        generator: self.generator.clone(),
                        terms,
                    },
                ))
            }
            _ => Err(Error::UnsupportedForm(
                "formal exponentials of different integrals".into(),
            )),
        }
    }

    fn insert(terms: &mut BTreeMap<i64, NormalForm>, k: i64, c: NormalForm) -> Result<()> {
        let sum = match terms.remove(&k) {
            Some(old) => old.add(&c)?,
            None => c,
        };
        if !sum.is_zero() {
            terms.insert(k, sum);
        }
        Ok(())
    }

    pub fn add(&self, other: &ExpSum) -> Result<ExpSum> {
        let (generator, other) = self.unify(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in other.terms {
            Self::insert(&mut terms, k, c)?;
        }
        Ok(ExpSum { generator, terms })
    }

    pub fn neg(&self) -> ExpSum {
        ExpSum {
            generator: self.generator.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &ExpSum) -> Result<ExpSum> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ExpSum) -> Result<ExpSum> {
        let (generator, other) = self.unify(other)?;
        let mut terms = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                Self::insert(&mut terms, i + j, a.mul(b))?;
            }
        }
        Ok(ExpSum { generator, terms })
    }

    /// Inverse of a single term.
    pub fn recip(&self) -> Result<ExpSum> {
        if self.terms.len() != 1 {
            return Err(if self.is_zero() {
                Error::DivisionByZero
            } else {
                Error::UnsupportedForm("reciprocal of a sum of formal exponentials".into())
            });
        }
        let (k, c) = self.terms.iter().next().unwrap();
        let mut terms = BTreeMap::new();
        terms.insert(-k, c.recip()?);
        Ok(ExpSum {
            generator: self.generator.clone(),
            terms,
        })
    }

    pub fn div(&self, other: &ExpSum) -> Result<ExpSum> {
        if let (Some(a), Some(b)) = (self.as_normal(), other.as_normal()) {
            return Ok(ExpSum::from_normal(a.div(&b)?));
        }
        // common factor `c E^k` of a sum divided by a single term
        self.mul(&other.recip()?)
    }

    pub fn powi(&self, k: i64) -> Result<ExpSum> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut acc = ExpSum::from_normal(NormalForm::one());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Result<ExpSum> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut d = c.derivative();
            if *k != 0 {
                let g = &self.generator.as_ref().expect("generator for E^k").g;
                d = d.add(&c.mul(g).scale(&Rational::from_integer((*k).into())))?;
            }
            Self::insert(&mut terms, *k, d)?;
        }
        Ok(ExpSum {
            generator: self.generator.clone(),
            terms,
        })
    }

    /// Applies `f` to every coefficient.
    pub fn try_map<F: Fn(&NormalForm) -> Result<NormalForm>>(&self, f: F) -> Result<ExpSum> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            Self::insert(&mut terms, *k, f(c)?)?;
        }
        Ok(ExpSum {
            generator: self.generator.clone(),
            terms,
        })
    }

    pub fn to_expr(&self) -> Expr {
        let items = self
            .terms
            .iter()
            .map(|(k, c)| {
                let c = c.to_expr();
                match (&self.generator, k) {
                    (_, 0) | (None, _) => c,
                    (Some(g), k) => {
                        let i = Expr::integral(g.integrand.clone(), g.base.clone());
                        let arg = if *k == 1 {
                            i
                        } else if *k == -1 {
                            Expr::neg(i)
                        } else {
                            Expr::mul(Expr::int(*k), i)
                        };
                        Expr::mul(c, Expr::exp(arg))
                    }
                }
            })
            .collect();
        Expr::sum(items)
    }
}

impl PartialEq for ExpSum {
    fn eq(&self, other: &Self) -> bool {
        let pure = |s: &ExpSum| s.terms.keys().all(|&k| k == 0);
        self.terms == other.terms
            && (pure(self)
                || self.generator.as_ref().map(|g| &g.g) == other.generator.as_ref().map(|g| &g.g))
    }
}

impl fmt::Display for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

/// Splits `k * int(f)` into `(k, f, base)`.
fn integral_multiple(e: &Expr) -> Option<(i64, &Expr, &Rational)> {
    match e {
        Expr::Integral(f, base) => Some((1, f, base)),
        Expr::Neg(a) => integral_multiple(a).map(|(k, f, b)| (-k, f, b)),
        Expr::Mul(items) if items.len() == 2 => {
            let k = items[0].as_num()?;
            if !k.is_integer() {
                return None;
            }
            let k = num::ToPrimitive::to_i64(&k.to_integer())?;
            integral_multiple(&items[1]).map(|(j, f, b)| (k * j, f, b))
        }
        _ => None,
    }
}

fn exp_to_expsum(arg: &Expr) -> Result<ExpSum> {
    let items: Vec<&Expr> = match arg {
        Expr::Add(items) => items.iter().collect(),
        other => vec![other],
    };
    let mut acc = ExpSum::from_normal(NormalForm::one());
    let mut plain = Vec::new();
    for it in items {
        if !it.contains_integral() {
            plain.push(it.clone());
            continue;
        }
        let (k, f, base) = integral_multiple(it).ok_or_else(|| {
            Error::UnsupportedForm(format!(
                "exponent `{it}` is not an integer multiple of an integral"
            ))
        })?;
        if f.contains_integral() {
            return Err(Error::UnsupportedForm("nested formal integrals".into()));
        }
        let generator = Generator {
            g: normalize(f)?,
            integrand: f.clone(),
            base: base.clone(),
        };
        acc = acc.mul(&ExpSum::power(generator, k))?;
    }
    let rest = normalize(&Expr::exp(Expr::sum(plain)))?;
    acc.mul(&ExpSum::from_normal(rest))
}

/// Normalizes an expression whose formal integrals occur only as
/// `exp(k int(g))` with a single `g`.
pub fn normalize_exp_sum(e: &Expr) -> Result<ExpSum> {
    if !e.contains_integral() {
        return Ok(ExpSum::from_normal(normalize(e)?));
    }
    match e {
        Expr::Add(items) => {
            let mut acc = ExpSum::zero();
            for it in items {
                acc = acc.add(&normalize_exp_sum(it)?)?;
            }
            Ok(acc)
        }
        Expr::Mul(items) => {
            let mut acc = ExpSum::from_normal(NormalForm::one());
            for it in items {
                acc = acc.mul(&normalize_exp_sum(it)?)?;
            }
            Ok(acc)
        }
        Expr::Div(a, b) => normalize_exp_sum(a)?.div(&normalize_exp_sum(b)?),
        Expr::Neg(a) => Ok(normalize_exp_sum(a)?.neg()),
        Expr::Pow(base, exponent) => match exponent.as_num() {
            Some(k) if k.is_integer() => {
                let k = num::ToPrimitive::to_i64(&k.to_integer())
                    .ok_or_else(|| Error::Resource("exponent too large".into()))?;
                normalize_exp_sum(base)?.powi(k)
            }
            _ => Err(Error::UnsupportedForm(
                "non-integer power of a formal exponential".into(),
            )),
        },
        Expr::Exp(a) => exp_to_expsum(a),
        Expr::Integral(..) => Err(Error::UnsupportedForm(
            "formal integral outside an exponential".into(),
        )),
        Expr::Num(_) | Expr::Sym(_) => unreachable!("leaves carry no integral"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::differentiate;
    use crate::symcore::parse::parse;

    fn e(s: &str) -> Expr {
        parse(s, &["a"]).unwrap()
    }

    #[test]
    fn derivative_matches_structural_rules() {
        let u = e("(x + 1)*exp(int(1/(1+x^2), 0) + x) - 2*exp(-int(1/(1+x^2), 0))");
        let direct = normalize_exp_sum(&differentiate(&u)).unwrap();
        let via = normalize_exp_sum(&u).unwrap().derivative().unwrap();
        assert_eq!(direct.sub(&via).unwrap(), ExpSum::zero());
        assert_eq!(via.terms().count(), 2);
    }

    #[test]
    fn powers_cancel() {
        let u = e("exp(int(1/(1+x^2), 0))^2 * exp(-2*int(1/(1+x^2), 0)) - 1");
        assert!(normalize_exp_sum(&u).unwrap().is_zero());
        let flipped = e("exp(int(1/(1+x^2), 0)) * exp(int(-1/(1+x^2), 0))");
        assert_eq!(
            normalize_exp_sum(&flipped).unwrap().as_normal(),
            Some(NormalForm::one())
        );
    }

    #[test]
    fn refuses_mixed_generators() {
        let u = e("exp(int(1/(1+x^2), 0)) + exp(int(1/(2+x^2), 0))");
        assert!(normalize_exp_sum(&u).is_err());
        let v = e("int(1/(1+x^2), 0)");
        assert!(normalize_exp_sum(&v).is_err());
    }

    #[test]
    fn round_trip_through_expressions() {
        let u = normalize_exp_sum(&e("a*x*exp(-int(x/(1-x^2), 0))")).unwrap();
        assert_eq!(normalize_exp_sum(&u.to_expr()).unwrap(), u);
    }
}
