//! Exact multivariate gcd over the rationals.
//!
//! Recursive: the polynomial is viewed as univariate in its highest-priority
//! variable with coefficients in the remaining ones, contents are peeled off
//! recursively and the primitive parts go through a subresultant PRS.

use num::One;

use super::modp::gcd_degree_bounds;
use super::poly::{Polynomial, Rational, Var};

/// Gcd normalized to coprime integer coefficients with positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let a = a.div_monomial(&ma);
    let b = b.div_monomial(&mb);
    let mono = Polynomial::term(mg, Rational::one());
    if a.is_constant() || b.is_constant() {
        return mono;
    }
    // cheap exits that cover the common "one divides the other" case
    let (small, large) = if a.len() <= b.len() {
        (&a, &b)
    } else {
        (&b, &a)
    };
    if large.total_degree() >= small.total_degree() && large.div_exact(small).is_some() {
        return (&mono * small).primitive();
    }
    let g = gcd_reduced(&a, &b);
    (&mono * &g).primitive()
}

/// Gcd of monomial-free inputs, guided by modular degree bounds.
fn gcd_reduced(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (va, vb) = (a.vars(), b.vars());
    if let Some(v) = va.symmetric_difference(&vb).next() {
        return if a.contains_var(v) {
            gcd(&content_in(a, v), b)
        } else {
            gcd(a, &content_in(b, v))
        };
    }
    let bounds = gcd_degree_bounds(a, b);
    if bounds.values().all(|&d| d == 0) {
        return Polynomial::one();
    }
    if let Some((v, _)) = bounds.iter().find(|(_, &d)| d == 0) {
        return gcd(&content_in(a, v), &content_in(b, v));
    }
    let v = bounds
        .keys()
        .min_by_key(|v| a.degree_in(v).max(b.degree_in(v)))
        .expect("common variable")
        .clone();
    gcd_recursive(a, b, &v)
}

pub fn gcd_all<'a, I: IntoIterator<Item = &'a Polynomial>>(polys: I) -> Polynomial {
    let mut items: Vec<&Polynomial> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    items.sort_by_key(|p| p.len());
    let mut acc = Polynomial::zero();
    for p in items {
        acc = gcd(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Content of `p` viewed as a polynomial in `v`: gcd of its coefficients.
pub fn content_in(p: &Polynomial, v: &Var) -> Polynomial {
    let coeffs = p.coefficients_in(v);
    gcd_all(coeffs.iter())
}

fn gcd_recursive(a: &Polynomial, b: &Polynomial, v: &Var) -> Polynomial {
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = subresultant_gcd(&pa, &pb, v);
    &c * &g
}

/// Pseudo-remainder of `a` by `b` in `v`, as coefficient vectors.
fn prem(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<Polynomial> = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return r;
    }
    let mut e = (r.len() - 1) - db + 1;
    while !r.is_empty() && r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[j + shift] = &r[j + shift] - &(&lr * bc);
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn trim(v: &mut Vec<Polynomial>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn exact(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.div_exact(b).expect("subresultant division is exact")
}

fn div_coeffs(r: &[Polynomial], d: &Polynomial) -> Vec<Polynomial> {
    r.iter().map(|c| exact(c, d)).collect()
}

fn subresultant_gcd(a: &Polynomial, b: &Polynomial, v: &Var) -> Polynomial {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a.coefficients_in(v), b.coefficients_in(v))
    } else {
        (b.coefficients_in(v), a.coefficients_in(v))
    };
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let d = (a.len() - 1) - (b.len() - 1);
        let r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return Polynomial::one();
        }
        a = b;
        b = div_coeffs(&r, &(&g * &h.pow(d as u32)));
        g = a.last().unwrap().clone();
        if d > 0 {
            h = exact(&g.pow(d as u32), &h.pow(d as u32 - 1));
        }
    }
    let poly = Polynomial::from_coefficients(v, &b);
    let cont = content_in(&poly, v);
    exact(&poly, &cont)
}

/// Resultant of `a` and `b` with respect to `v`.
pub fn resultant(a: &Polynomial, b: &Polynomial, v: &Var) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero();
    }
    let mut da = a.degree_in(v) as usize;
    let mut db = b.degree_in(v) as usize;
    if da == 0 {
        return a.pow(db as u32);
    }
    if db == 0 {
        return b.pow(da as u32);
    }
    let mut a = a.coefficients_in(v);
    let mut b = b.coefficients_in(v);
    let mut sign = Polynomial::one();
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        if da % 2 == 1 && db % 2 == 1 {
            sign = -&sign;
        }
    }
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let dega = a.len() - 1;
        let degb = b.len() - 1;
        let delta = dega - degb;
        if dega % 2 == 1 && degb % 2 == 1 {
            sign = -&sign;
        }
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            return Polynomial::zero();
        }
        b = div_coeffs(&r, &(&g * &h.pow(delta as u32)));
        g = a.last().unwrap().clone();
        if delta > 0 {
            h = exact(&g.pow(delta as u32), &h.pow(delta as u32 - 1));
        } else {
            // h^(1-0) g^0 = h
        }
        if b.len() == 1 {
            break;
        }
    }
    let dega = (a.len() - 1) as u32;
    let lb = b[0].clone();
    let hh = if dega == 0 {
        h
    } else {
        exact(&lb.pow(dega), &h.pow(dega - 1))
    };
    &sign * &hh
}

/// Squarefree test with respect to `v`.
pub fn is_squarefree_in(p: &Polynomial, v: &Var) -> bool {
    let d = p.derivative(v);
    if d.is_zero() {
        return p.degree_in(v) == 0;
    }
    let g = gcd(p, &d);
    !g.contains_var(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::poly::{rat, Var};

    fn v(n: &str) -> Polynomial {
        Polynomial::var(Var::new(n))
    }

    fn c(n: i64) -> Polynomial {
        Polynomial::from_int(n)
    }

    #[test]
    fn univariate_gcd() {
        let x = Polynomial::x();
        let a = &(&x - &c(1)) * &(&x + &c(2));
        let b = &(&x - &c(1)) * &(&x - &c(3));
        assert_eq!(gcd(&a, &b), &x - &c(1));
    }

    #[test]
    fn multivariate_gcd_with_parameters() {
        let x = Polynomial::x();
        let a_ = v("a");
        let b_ = v("b");
        let g = &(&a_ * &x) + &b_;
        let p = &g * &(&x.pow(2) + &a_);
        let q = &g * &(&(&b_ * &x) - &c(1));
        assert_eq!(gcd(&p, &q), g.primitive());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let x = Polynomial::x();
        let a = &x.pow(2) + &v("a");
        let b = &x + &c(1);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn gcd_keeps_monomial_part() {
        let x = Polynomial::x();
        let a = &x.pow(3) * &v("a");
        let b = &x.pow(2) * &(&x + &c(1));
        assert_eq!(gcd(&a, &b), x.pow(2));
    }

    #[test]
    fn resultant_matches_root_product() {
        // res_x(x^2 - 2, x - z) = z^2 - 2
        let x = Polynomial::x();
        let z = v("z");
        let a = &x.pow(2) - &c(2);
        let b = &x - &z;
        let r = resultant(&a, &b, &Var::x());
        assert_eq!(r, &z.pow(2) - &c(2));
        // res(x^2 + 1, x^2 - 1) = 4
        let r = resultant(&(&x.pow(2) + &c(1)), &(&x.pow(2) - &c(1)), &Var::x());
        assert_eq!(r.constant_value(), Some(rat(4)));
    }

    #[test]
    fn squarefree_detection() {
        let x = Polynomial::x();
        assert!(is_squarefree_in(&(&x.pow(2) - &c(1)), &Var::x()));
        assert!(!is_squarefree_in(&(&x + &c(1)).pow(2), &Var::x()));
    }
}
