//! Dense univariate polynomials over the rationals, used by the integrator.

use num::{BigInt, One, Signed, ToPrimitive, Zero};

use super::poly::{Monomial, Polynomial, Rational, Var};

/// Coefficient `i` multiplies `t^i`; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        UPoly(vec![c]).trimmed()
    }

    pub fn from_coeffs(c: Vec<Rational>) -> Self {
        UPoly(c).trimmed()
    }

    /// From a polynomial in `v` alone; `None` if other variables occur.
    pub fn from_polynomial(p: &Polynomial, v: &Var) -> Option<Self> {
        let mut out = vec![Rational::zero(); p.degree_in(v) as usize + 1];
        for (m, c) in p.terms() {
            let mut deg = 0;
            for (w, e) in m.factors() {
                if w != v {
                    return None;
                }
                deg = e;
            }
            out[deg as usize] = c.clone();
        }
        Some(UPoly(out).trimmed())
    }

    pub fn to_polynomial(&self, v: &Var) -> Polynomial {
        Polynomial::from_terms(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (Monomial::var(v.clone(), i as u32), c.clone())),
        )
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    /// Degree, with `deg(0) = -1`.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn lc(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = Rational::zero();
        UPoly(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
        .trimmed()
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        UPoly(self.0.iter().map(|a| a * c).collect()).trimmed()
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly(out).trimmed()
    }

    pub fn derivative(&self) -> UPoly {
        UPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
        .trimmed()
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let dd = d.0.len() - 1;
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] * &inv;
            if !q.is_zero() {
                for (j, c) in d.0.iter().enumerate() {
                    rem[k + j] -= &q * c;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (UPoly(quot).trimmed(), UPoly(rem).trimmed())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lc().recip())
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(s, t, g)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::constant(Rational::one()), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::constant(Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let inv = r0.lc().recip();
        (s0.scale(&inv), t0.scale(&inv), r0.scale(&inv))
    }

    /// Solves `s*a + t*b = c` with `deg s < deg b`; `None` if `gcd(a, b)`
    /// does not divide `c`.
    pub fn diophantine(a: &UPoly, b: &UPoly, c: &UPoly) -> Option<(UPoly, UPoly)> {
        let (s, _, g) = a.ext_gcd(b);
        let (cg, rem) = c.div_rem(&g);
        if !rem.is_zero() {
            return None;
        }
        let s = s.mul(&cg).div_rem(b).1;
        let (t, rem) = c.sub(&s.mul(a)).div_rem(b);
        debug_assert!(rem.is_zero());
        Some((s, t))
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// All rational roots with multiplicity; `None` if the coefficients are
    /// too large to enumerate candidate divisors.
    pub fn rational_roots(&self) -> Option<Vec<(Rational, u32)>> {
        let mut p = self.clone();
        let mut out = Vec::new();
        let mut zero_mult = 0;
        while p.degree() > 0 && p.0[0].is_zero() {
            p = UPoly(p.0[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            out.push((Rational::zero(), zero_mult));
        }
        if p.degree() <= 0 {
            return Some(out);
        }
        // integer coefficients
        let lcm = p.0.iter().fold(BigInt::one(), |acc, c| {
            num::integer::lcm(acc, c.denom().clone())
        });
        let ints: Vec<BigInt> =
            p.0.iter()
                .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
                .collect();
        let a0 = divisors(&ints[0])?;
        let an = divisors(ints.last().unwrap())?;
        for pnum in &a0 {
            for q in &an {
                for sign in [1, -1] {
                    let r = Rational::new(pnum * BigInt::from(sign), q.clone());
                    if out.iter().any(|(x, _)| *x == r) {
                        continue;
                    }
                    let lin = UPoly(vec![-r.clone(), Rational::one()]);
                    let mut k = 0;
                    loop {
                        let (quo, rem) = p.div_rem(&lin);
                        if !rem.is_zero() {
                            break;
                        }
                        p = quo;
                        k += 1;
                    }
                    if k > 0 {
                        out.push((r, k));
                    }
                }
            }
        }
        Some(out)
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1 << 44 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}
