//! Univariate images modulo the Mersenne prime `2^61 - 1`, used to bound
//! gcd degrees before running the exact algorithm.

use std::collections::BTreeMap;

use num::{BigInt, Integer, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{Polynomial, Rational, Var};

const P: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn reduce_int(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(P))
        .to_u64()
        .expect("reduced below p")
}

fn reduce(q: &Rational) -> Option<u64> {
    let d = reduce_int(q.denom());
    if d == 0 {
        return None;
    }
    Some(mul(reduce_int(q.numer()), inv(d)))
}

/// Image of `p` as a dense polynomial in `v` with every other variable
/// replaced by its value in `point`. `None` when a denominator vanishes.
fn image(p: &Polynomial, v: &Var, point: &BTreeMap<Var, u64>) -> Option<Vec<u64>> {
    let mut out = vec![0u64; p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = reduce(c)?;
        let mut k = 0usize;
        for (w, e) in m.factors() {
            if w == v {
                k = e as usize;
            } else {
                t = mul(t, pow(point[w], e as u64));
            }
        }
        out[k] = add(out[k], t);
    }
    Some(out)
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn rem(a: &mut Vec<u64>, b: &[u64]) {
    let lb = inv(*b.last().unwrap());
    while a.len() >= b.len() {
        let q = mul(*a.last().unwrap(), lb);
        let shift = a.len() - b.len();
        for (j, &bj) in b.iter().enumerate() {
            a[shift + j] = sub(a[shift + j], mul(q, bj));
        }
        trim(a);
    }
}

fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        rem(&mut a, &b);
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Upper bound for the degree in `v` of `gcd(a, b)`, for each variable
/// occurring in both. Evaluation points that kill a leading coefficient
/// are retried; a variable with no good point gets its trivial bound.
pub(crate) fn gcd_degree_bounds(a: &Polynomial, b: &Polynomial) -> BTreeMap<Var, usize> {
    let common: Vec<Var> = a.vars().intersection(&b.vars()).cloned().collect();
    let all: Vec<Var> = a.vars().union(&b.vars()).cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9_7f4a_7c15);
    let mut out = BTreeMap::new();
    for v in &common {
        let trivial = a.degree_in(v).min(b.degree_in(v)) as usize;
        let mut bound = trivial;
        for _ in 0..3 {
            let point: BTreeMap<Var, u64> = all
                .iter()
                .map(|w| (w.clone(), rng.gen_range(2..P)))
                .collect();
            let (Some(ia), Some(ib)) = (image(a, v, &point), image(b, v, &point)) else {
                continue;
            };
            if ia.last() == Some(&0) || ib.last() == Some(&0) {
                continue;
            }
            bound = gcd_degree(ia, ib);
            break;
        }
        out.insert(v.clone(), bound);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::normal::normalize;
    use crate::symcore::parse::parse;

    fn poly(s: &str) -> Polynomial {
        let nf = normalize(&parse(s, &["a", "b"]).unwrap()).unwrap();
        nf.as_polynomial().unwrap().clone()
    }

    #[test]
    fn bounds_detect_shared_factor() {
        let a = poly("(x + a)*(x - b)");
        let b = poly("(x + a)*(x + b + 1)");
        let d = gcd_degree_bounds(&a, &b);
        assert_eq!(d[&Var::x()], 1);
        assert_eq!(d[&Var::new("a")], 1);
        assert_eq!(d[&Var::new("b")], 0);
        let c = poly("x^2 + a*b + 1");
        assert!(gcd_degree_bounds(&a, &c).values().all(|&k| k == 0));
    }
}
