//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are the independent variable `x` plus any number of named
//! parameters. Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose
//! ordering is graded lexicographic with `x` greatest and parameters in
//! alphabetical order, so the last entry is always the leading term.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

pub type Rational = BigRational;

pub const INDEPENDENT: &str = "x";

/// A variable name. `x` sorts before every parameter.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        if name == INDEPENDENT {
            return Var::x();
        }
        Var(Arc::from(name))
    }

    pub fn x() -> Self {
        static X: OnceLock<Var> = OnceLock::new();
        X.get_or_init(|| Var(Arc::from(INDEPENDENT))).clone()
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_x(&self) -> bool {
        &*self.0 == INDEPENDENT
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        (!self.is_x(), &*self.0).cmp(&(!other.is_x(), &*other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Power product of variables, stored sorted by variable priority with no
/// zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            let mut s = SmallVec::new();
            s.push((v, exp));
            Monomial(s)
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Var, u32)> {
        self.0.iter().map(|(v, e)| (v, *e))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| *e).sum()
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.0[i..].iter().cloned());
        out.extend(other.0[j..].iter().cloned());
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < *v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == *v {
                let d = other.0[j].1;
                j += 1;
                match e.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v.clone(), e - d)),
                }
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        for (v, e) in &self.0 {
            let d = other.degree_in(v);
            if d > 0 {
                out.push((v.clone(), (*e).min(d)));
            }
        }
        Monomial(out)
    }

    pub fn without(&self, v: &Var) -> Monomial {
        Monomial(self.0.iter().filter(|(w, _)| w != v).cloned().collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // `va` has higher priority and is absent from `other`
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        let c = ea.cmp(eb);
                        if c != Ordering::Equal {
                            return c;
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Sparse polynomial over the rationals. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Polynomial::constant(rat(n))
    }

    pub fn var(v: Var) -> Self {
        Polynomial::term(Monomial::var(v, 1), Rational::one())
    }

    pub fn x() -> Self {
        Polynomial::var(Var::x())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Constant term (coefficient of the unit monomial).
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.factors() {
                out.insert(v.clone());
            }
        }
        out
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        self.terms.keys().any(|m| m.degree_in(v) > 0)
    }

    pub fn contains_x(&self) -> bool {
        self.contains_var(&Var::x())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: &Var) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let d = m.degree_in(v);
            if d == 0 {
                continue;
            }
            let reduced = m.without(v).mul(&Monomial::var(v.clone(), d - 1));
            out.add_term(reduced, c * rat(d as i64));
        }
        out
    }

    /// Coefficients with respect to `v`: entry `i` multiplies `v^i`.
    pub fn coefficients_in(&self, v: &Var) -> Vec<Polynomial> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Polynomial::zero(); deg + 1];
        for (m, c) in &self.terms {
            let d = m.degree_in(v) as usize;
            out[d].add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn from_coefficients(v: &Var, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let vm = Monomial::var(v.clone(), i as u32);
            for (m, k) in c.terms() {
                out.add_term(m.mul(&vm), k.clone());
            }
        }
        out
    }

    /// Leading coefficient with respect to `v` (a polynomial in the rest).
    pub fn leading_in(&self, v: &Var) -> Polynomial {
        let deg = self.degree_in(v);
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if m.degree_in(v) == deg {
                out.add_term(m.without(v), c.clone());
            }
        }
        out
    }

    /// Replaces `v` by the polynomial `value`.
    pub fn substitute(&self, v: &Var, value: &Polynomial) -> Polynomial {
        if !self.contains_var(v) {
            return self.clone();
        }
        let coeffs = self.coefficients_in(v);
        // Horner
        let mut acc = Polynomial::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Gcd of all monomials.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        let mut g = first.clone();
        for m in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Divides every term by a monomial that divides all of them.
    pub fn div_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.div(m).expect("monomial divides every term"), c.clone()))
                .collect(),
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        let (lm, lc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(&lm)?;
            let qc = c * &lc_inv;
            for (dm, dc) in d.terms() {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Division with remainder in `v`, requiring the leading coefficient of
    /// `d` in `v` to be a nonzero constant.
    pub fn div_rem_in(&self, v: &Var, d: &Polynomial) -> Option<(Polynomial, Polynomial)> {
        let lc = d.leading_in(v).constant_value()?;
        if lc.is_zero() {
            return None;
        }
        let dd = d.degree_in(v);
        let dcoeffs = d.coefficients_in(v);
        let mut rem = self.coefficients_in(v);
        let mut quot = vec![Polynomial::zero(); rem.len().max(1)];
        while rem.len() > dd as usize && !rem.is_empty() {
            let top = rem.len() - 1;
            let lead = rem[top].scale(&lc.recip());
            let shift = top - dd as usize;
            if !lead.is_zero() {
                for (j, dc) in dcoeffs.iter().enumerate() {
                    rem[j + shift] = &rem[j + shift] - &(&lead * dc);
                }
                quot[shift] = &quot[shift] + &lead;
            }
            rem.pop();
        }
        Some((
            Polynomial::from_coefficients(v, &quot),
            Polynomial::from_coefficients(v, &rem),
        ))
    }

    /// Writes `self = factor * primitive` where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn primitive_split(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::one(), Polynomial::zero());
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut factor = Rational::new(num_gcd, den_lcm);
        if self.leading_coefficient().is_negative() {
            factor = -factor;
        }
        let inv = factor.recip();
        (factor, self.scale(&inv))
    }

    pub fn primitive(&self) -> Polynomial {
        self.primitive_split().1
    }

    pub fn eval_f64<F: Fn(&Var) -> Option<f64>>(&self, value: F) -> Option<f64> {
        let mut sum = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64()?;
            for (v, e) in m.factors() {
                t *= value(v)?.powi(e as i32);
            }
            sum += t;
        }
        Some(sum)
    }

    /// Evaluates the variables that `value` binds, keeping the rest symbolic.
    pub fn eval_partial<F: Fn(&Var) -> Option<Rational>>(&self, value: F) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Monomial::one();
            for (v, e) in m.factors() {
                match value(v) {
                    Some(q) => coeff *= num::pow::pow(q, e as usize),
                    None => rest = rest.mul(&Monomial::var(v.clone(), e)),
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if m.is_one() {
                    format!("{c}")
                } else {
                    format!("({c})*{m:?}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (mut big, small) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in small.terms() {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let mut out = Polynomial::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in rhs.terms() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &str) -> Polynomial {
        Polynomial::var(Var::new(v))
    }

    #[test]
    fn x_is_greatest_variable() {
        let x = Var::x();
        let a = Var::new("a");
        let z = Var::new("z");
        assert!(x < a && a < z);
        // grlex: x beats a at equal degree
        let mx = Monomial::var(x, 1);
        let ma = Monomial::var(a, 1);
        assert!(mx > ma);
        let x2 = Polynomial::x().pow(2);
        let big = &x2 + &(&p("a") * &p("b"));
        assert_eq!(big.leading().unwrap().0, &Monomial::var(Var::x(), 2));
    }

    #[test]
    fn no_zero_coefficients_survive() {
        let a = &p("a") + &Polynomial::x();
        let b = &a - &Polynomial::x();
        assert_eq!(b, p("a"));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division() {
        let x = Polynomial::x();
        let a = p("a");
        let f = &(&x + &a) * &(&x - &Polynomial::one());
        let q = f.div_exact(&(&x + &a)).unwrap();
        assert_eq!(q, &x - &Polynomial::one());
        assert!(f.div_exact(&(&x + &Polynomial::from_int(2))).is_none());
    }

    #[test]
    fn primitive_split_normalizes_sign_and_content() {
        let x = Polynomial::x();
        let f = &x.scale(&ratio(-2, 3)) + &Polynomial::constant(ratio(4, 9));
        let (c, prim) = f.primitive_split();
        assert_eq!(prim, &x.scale(&rat(3)) - &Polynomial::from_int(2));
        assert_eq!(prim.scale(&c), f);
    }

    #[test]
    fn division_with_remainder() {
        let x = Polynomial::x();
        let f = &x.pow(3) + &Polynomial::from_int(1);
        let d = &x.pow(2) - &Polynomial::from_int(1);
        let (q, r) = f.div_rem_in(&Var::x(), &d).unwrap();
        assert_eq!(q, x.clone());
        assert_eq!(r, &x + &Polynomial::from_int(1));
    }
}
