use std::fmt;

use num::{One, Zero};

use super::gcd::gcd;
use super::poly::{Monomial, Polynomial, Rational, Var};
use crate::error::{Error, Result};

/// Reduced quotient of polynomials.
///
/// Invariants: `gcd(num, den) = 1`, `den` has coprime integer coefficients
/// with positive leading coefficient, and the zero function is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Polynomial,
    den: Polynomial,
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        RatFun::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RatFun {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFun::from_poly(Polynomial::constant(c))
    }

    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        Ok(RatFun::from_coprime(num, den))
    }

    /// Builds from a numerator and denominator already known to be coprime.
    fn from_coprime(num: Polynomial, den: Polynomial) -> Self {
        let (f, den) = den.primitive_split();
        let num = if f.is_one() {
            num
        } else {
            num.scale(&f.recip())
        };
        RatFun { num, den }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn into_parts(self) -> (Polynomial, Polynomial) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFun::new(&self.num + &other.num, self.den.clone())
                .expect("nonzero denominator");
        }
        // Henrici: only the shared part of the denominators can cancel
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let num = &(&self.num * &other.den) + &(&other.num * &self.den);
            return RatFun::from_coprime(num, &self.den * &other.den);
        }
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = other.den.div_exact(&g).unwrap();
        let t = &(&self.num * &d2) + &(&other.num * &d1);
        if t.is_zero() {
            return RatFun::zero();
        }
        let h = gcd(&t, &g);
        let (t, g2) = if h.is_one() {
            (t, g)
        } else {
            (t.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        RatFun::from_coprime(t, &(&d1 * &d2) * &g2)
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return RatFun::zero();
        }
        if self.is_polynomial() && other.is_polynomial() {
            return RatFun::from_poly(&self.num * &other.num);
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RatFun::from_coprime(&n1 * &n2, &d1 * &d2)
    }

    pub fn recip(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<RatFun> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(RatFun::from_coprime(base.num.pow(k), base.den.pow(k)))
    }

    /// Multiplies by `x^k` for any integer `k`.
    pub fn mul_x_pow(&self, k: i64) -> RatFun {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let xm = Polynomial::term(
            Monomial::var(Var::x(), k.unsigned_abs() as u32),
            Rational::one(),
        );
        if k > 0 {
            self.mul(&RatFun::from_poly(xm))
        } else {
            self.div(&RatFun::from_poly(xm)).expect("x^k is nonzero")
        }
    }

    pub fn derivative(&self, v: &Var) -> RatFun {
        let dn = self.num.derivative(v);
        if self.den.is_constant() {
            return RatFun {
                num: dn,
                den: self.den.clone(),
            };
        }
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return RatFun::new(dn, self.den.clone()).expect("nonzero");
        }
        // (n/d)' = (n' r - n d'/g) / (d r) with g = gcd(d, d'), r = d/g
        let g = gcd(&self.den, &dd);
        let r = self.den.div_exact(&g).unwrap();
        let dd_g = dd.div_exact(&g).unwrap();
        let num = &(&dn * &r) - &(&self.num * &dd_g);
        RatFun::new(num, &self.den * &r).expect("nonzero")
    }

    /// Substitutes `v -> value` (a rational function free of `v`).
    pub fn substitute(&self, v: &Var, value: &RatFun) -> Result<RatFun> {
        if !self.contains_var(v) {
            return Ok(self.clone());
        }
        let (pn, pd) = (value.numerator(), value.denominator());
        let sub_poly = |p: &Polynomial| -> (Polynomial, u32) {
            let deg = p.degree_in(v);
            let coeffs = p.coefficients_in(v);
            let mut acc = Polynomial::zero();
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let t = &(c * &pn.pow(k as u32)) * &pd.pow(deg - k as u32);
                acc = &acc + &t;
            }
            (acc, deg)
        };
        let (n, dn) = sub_poly(&self.num);
        let (d, dd) = sub_poly(&self.den);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // n/pd^dn divided by d/pd^dd
        let (n, d) = if dd >= dn {
            (&n * &pd.pow(dd - dn), d)
        } else {
            (n, &d * &pd.pow(dn - dd))
        };
        RatFun::new(n, d)
    }

    pub fn eval_f64<F: Fn(&Var) -> Option<f64> + Copy>(&self, value: F) -> Option<f64> {
        Some(self.num.eval_f64(value)? / self.den.eval_f64(value)?)
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::poly::{rat, ratio};

    fn x() -> Polynomial {
        Polynomial::x()
    }

    fn c(n: i64) -> Polynomial {
        Polynomial::from_int(n)
    }

    #[test]
    fn common_factor_cancels() {
        let r = RatFun::new(&x().pow(2) - &c(1), &x() - &c(1)).unwrap();
        assert_eq!(r.numerator(), &(&x() + &c(1)));
        assert!(r.denominator().is_one());
    }

    #[test]
    fn denominator_sign_and_content_canonical() {
        let r = RatFun::new(c(3), &x().scale(&rat(-6)) + &c(2)).unwrap();
        assert_eq!(r.denominator(), &(&x().scale(&rat(3)) - &c(1)));
        assert_eq!(r.numerator().constant_value(), Some(ratio(-3, 2)));
    }

    #[test]
    fn henrici_addition() {
        let a = RatFun::new(c(1), &x() - &c(1)).unwrap();
        let b = RatFun::new(c(1), &x() + &c(1)).unwrap();
        let s = a.add(&b);
        assert_eq!(s.numerator(), &x().scale(&rat(2)));
        assert_eq!(s.denominator(), &(&x().pow(2) - &c(1)));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn derivative_of_quotient() {
        // (1/(x^2+1))' = -2x/(x^2+1)^2
        let d = &x().pow(2) + &c(1);
        let r = RatFun::new(c(1), d.clone()).unwrap();
        let dr = r.derivative(&Var::x());
        assert_eq!(dr.numerator(), &x().scale(&rat(-2)));
        assert_eq!(dr.denominator(), &d.pow(2));
    }

    #[test]
    fn substitution_of_parameter() {
        let a = Var::new("a");
        let pa = Polynomial::var(a.clone());
        // a/(x+a) with a -> 1/x  gives 1/(x^2+1)
        let r = RatFun::new(pa.clone(), &x() + &pa).unwrap();
        let val = RatFun::new(c(1), x()).unwrap();
        let s = r.substitute(&a, &val).unwrap();
        assert_eq!(s, RatFun::new(c(1), &x().pow(2) + &c(1)).unwrap());
    }
}
