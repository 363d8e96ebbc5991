//! Factorization of parameter polynomials into the pieces that matter for
//! conditional termination.
//!
//! The splitter peels monomial content and per-variable contents, separates
//! repeated factors with derivative gcds and then searches for factors that
//! are linear in some variable. Whatever survives is reported whole; a
//! polynomial that is primitive and linear in one of its variables is
//! irreducible, which covers every constraint the solver produces.

use num::{BigInt, Signed, ToPrimitive, Zero};

use super::constraint::Constraint;
use super::gcd::{content_in, gcd};
use super::normal::NormalForm;
use super::poly::{Polynomial, Rational, Var};

/// Upper bound on candidate divisors tried per linear-factor search.
const CANDIDATE_LIMIT: usize = 20_000;

/// Factors of `p` with multiplicities, up to a rational constant. Factors are
/// primitive with positive leading coefficient; constants are dropped.
pub fn factor(p: &Polynomial) -> Vec<(Polynomial, u32)> {
    let mut out: Vec<(Polynomial, u32)> = Vec::new();
    let mut push = |f: Polynomial, k: u32| {
        if let Some(slot) = out.iter_mut().find(|(g, _)| *g == f) {
            slot.1 += k;
        } else {
            out.push((f, k));
        }
    };
    for f in split(p) {
        push(f, 1);
    }
    out
}

/// Irreducible-over-the-search factors of `p`, repeated by multiplicity.
fn split(p: &Polynomial) -> Vec<Polynomial> {
    let p = p.primitive();
    if p.is_zero() || p.is_constant() {
        return Vec::new();
    }
    let mono = p.monomial_content();
    if !mono.is_one() {
        let mut out = Vec::new();
        for (v, e) in mono.factors() {
            for _ in 0..e {
                out.push(Polynomial::var(v.clone()));
            }
        }
        out.extend(split(&p.div_monomial(&mono)));
        return out;
    }
    let vars: Vec<Var> = p.vars().into_iter().collect();
    if vars.len() > 1 {
        for v in &vars {
            let c = content_in(&p, v);
            if !c.is_constant() {
                let rest = p.div_exact(&c).expect("content divides");
                let mut out = split(&c);
                out.extend(split(&rest));
                return out;
            }
        }
    }
    if vars.iter().any(|v| p.degree_in(v) == 1) {
        return vec![p];
    }
    for v in &vars {
        let g = gcd(&p, &p.derivative(v));
        if !g.is_constant() {
            let rest = p.div_exact(&g).expect("gcd divides");
            let mut out = split(&g);
            out.extend(split(&rest));
            return out;
        }
    }
    if let Some(f) = linear_factor(&p, &vars) {
        let rest = p.div_exact(&f).expect("verified factor");
        let mut out = vec![f];
        out.extend(split(&rest));
        return out;
    }
    vec![p]
}

/// Searches for a factor `q*v + r` with `q | lc_v(p)` and `r | p(v = 0)`.
fn linear_factor(p: &Polynomial, vars: &[Var]) -> Option<Polynomial> {
    let mut order: Vec<&Var> = vars.iter().collect();
    order.sort_by_key(|v| p.degree_in(v));
    for v in order {
        let lc = p.leading_in(v);
        let tc = p.coefficients_in(v).swap_remove(0);
        if tc.is_zero() {
            return Some(Polynomial::var(v.clone()));
        }
        let (Some(lead_divs), Some(trail_divs)) = (divisors(&lc), divisors(&tc)) else {
            continue;
        };
        if lead_divs.len().saturating_mul(trail_divs.len()) > CANDIDATE_LIMIT {
            continue;
        }
        let vp = Polynomial::var(v.clone());
        for q in &lead_divs {
            let qv = q * &vp;
            for r in &trail_divs {
                for cand in [&qv + r, &qv - r] {
                    let cand = cand.primitive();
                    if cand.total_degree() >= p.total_degree() {
                        continue;
                    }
                    if p.div_exact(&cand).is_some() {
                        return Some(cand);
                    }
                }
            }
        }
    }
    None
}

/// Divisors of `p` up to sign: products of its factors times integer
/// divisors of its content. `None` when there are too many.
fn divisors(p: &Polynomial) -> Option<Vec<Polynomial>> {
    let (content, prim) = p.primitive_split();
    let mut ints = integer_divisors(content.numer())?;
    ints.retain(|d| !d.is_zero());
    let mut out: Vec<Polynomial> = ints
        .into_iter()
        .map(|d| Polynomial::constant(Rational::from_integer(d)))
        .collect();
    for (f, k) in factor(&prim) {
        let mut next = Vec::with_capacity(out.len() * (k as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..k {
                acc = &acc * &f;
                next.push(acc.clone());
            }
        }
        out = next;
        if out.len() > CANDIDATE_LIMIT {
            return None;
        }
    }
    Some(out)
}

fn integer_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let small = n.to_u64()?;
    if small > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d * d != small {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    out.sort();
    Some(out)
}

/// The `x`-free factors of the numerator of `nf` that are not monomials,
/// deduplicated. Each is a parameter condition under which `nf` vanishes
/// identically in `x`.
pub fn zero_constraints(nf: &NormalForm) -> Vec<Constraint> {
    if nf.is_zero() {
        return Vec::new();
    }
    let content = content_in(nf.numerator(), &Var::x());
    let mut out: Vec<Constraint> = Vec::new();
    for (f, _) in factor(&content) {
        if is_monomial(&f) {
            continue;
        }
        let c = Constraint::new(f).expect("x-free nonconstant factor");
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out.sort_by_key(Constraint::sort_key);
    out
}

fn is_monomial(p: &Polynomial) -> bool {
    p.len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::normal::normalize;
    use crate::symcore::parse::parse;

    fn poly(s: &str, params: &[&str]) -> Polynomial {
        normalize(&parse(s, params).unwrap())
            .unwrap()
            .as_polynomial()
            .unwrap()
            .clone()
    }

    fn product_of(fs: &[(Polynomial, u32)]) -> Polynomial {
        fs.iter()
            .fold(Polynomial::one(), |acc, (f, k)| &acc * &f.pow(*k))
    }

    #[test]
    fn splits_products_of_linear_factors() {
        let ps = ["a", "b", "c", "n"];
        let p = poly(
            "a*c*(a*c - n - b)*(a*c - 2*(n+b) + 2)*(a*c - 3*(n+b) + 6)",
            &ps,
        );
        let fs = factor(&p);
        assert_eq!(fs.len(), 5, "{fs:?}");
        assert_eq!(product_of(&fs).primitive(), p.primitive());
    }

    #[test]
    fn univariate_rational_roots() {
        let p = poly("a^3*(a+6)*(a+12)^2", &["a"]);
        let fs = factor(&p);
        assert!(fs.contains(&(poly("a + 6", &["a"]), 1)));
        assert!(fs.contains(&(poly("a + 12", &["a"]), 2)));
        assert!(fs.contains(&(poly("a", &["a"]), 3)));
    }

    #[test]
    fn irreducible_stays_whole() {
        let p = poly("a^2 + b^2 + 1", &["a", "b"]);
        assert_eq!(factor(&p), vec![(p.clone(), 1)]);
    }

    #[test]
    fn constraints_drop_monomials_and_x() {
        let ps = ["a", "b", "c", "n"];
        let nf = normalize(&parse("a*c*(a*c - n - b)*(x^2 + 1)/x^4", &ps).unwrap()).unwrap();
        let cs = zero_constraints(&nf);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].polynomial(), &poly("a*c - b - n", &ps));
        let none = normalize(&parse("x^2 + a", &["a"]).unwrap()).unwrap();
        assert!(zero_constraints(&none).is_empty());
    }

    #[test]
    fn constants_have_no_factors() {
        assert!(factor(&Polynomial::from_int(12)).is_empty());
    }
}
