use std::collections::BTreeSet;
use std::fmt;

use super::normal::{poly_to_expr, NormalForm};
use super::poly::{Polynomial, Var};
use super::ratfun::RatFun;
use crate::error::{Error, Result};

/// A parameter condition `p = 0`, stored primitive with positive leading
/// coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Constraint(Polynomial);

impl Constraint {
    pub fn new(p: Polynomial) -> Result<Self> {
        if p.contains_x() {
            return Err(Error::InvalidConstraint(format!("{p:?} depends on x")));
        }
        if p.is_constant() {
            return Err(Error::InvalidConstraint(format!("{p:?} is constant")));
        }
        Ok(Constraint(p.primitive()))
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.0
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.0.vars()
    }

    /// Ordering used when reporting several constraints at once.
    pub fn sort_key(&self) -> (u32, usize, String) {
        (self.0.total_degree(), self.0.len(), self.to_string())
    }

    /// Variables in which the constraint is linear with an invertible
    /// (nonzero) coefficient.
    pub fn linear_variables(&self) -> Vec<Var> {
        self.0
            .vars()
            .into_iter()
            .filter(|v| self.0.degree_in(v) == 1)
            .collect()
    }

    /// Solves `p = 0` for `v` when `p` is linear in `v`.
    pub fn solve_for(&self, v: &Var) -> Option<RatFun> {
        if self.0.degree_in(v) != 1 {
            return None;
        }
        let coeffs = self.0.coefficients_in(v);
        RatFun::new(-&coeffs[0], coeffs[1].clone()).ok()
    }

    /// Elimination variable: alphabetically last linear variable not in
    /// `avoid`.
    pub fn preferred_variable(&self, avoid: &BTreeSet<Var>) -> Option<Var> {
        self.linear_variables()
            .into_iter()
            .filter(|v| !avoid.contains(v))
            .max()
    }

    pub fn eval_f64<F: Fn(&Var) -> Option<f64>>(&self, value: F) -> Option<f64> {
        self.0.eval_f64(value)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", poly_to_expr(&self.0))
    }
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Constraint({self} = 0)")
    }
}

/// A parameter solved out of a set of constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub var: Var,
    pub value: RatFun,
}

impl fmt::Display for Elimination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = NormalForm::from_ratfun(self.value.clone());
        write!(f, "{} = {}", self.var, v)
    }
}

/// Solves the constraints one after another by linear elimination, never
/// eliminating a variable from `avoid` unless `forced` names it.
pub fn eliminate(
    constraints: &[Constraint],
    avoid: &BTreeSet<Var>,
    forced: Option<&Var>,
) -> Result<Vec<Elimination>> {
    let mut done: Vec<Elimination> = Vec::new();
    for c in constraints {
        let mut p = RatFun::from_poly(c.polynomial().clone());
        for e in &done {
            p = p.substitute(&e.var, &e.value)?;
        }
        if p.is_zero() {
            continue;
        }
        let reduced = Constraint::new(p.numerator().clone())?;
        let var = match forced {
            Some(v) if reduced.linear_variables().contains(v) => Some(v.clone()),
            _ => reduced
                .preferred_variable(avoid)
                .or_else(|| reduced.linear_variables().into_iter().max()),
        };
        let var = var.ok_or_else(|| {
            Error::InvalidConstraint(format!("{reduced} is not linear in any parameter"))
        })?;
        let value = reduced.solve_for(&var).expect("linear variable");
        for e in done.iter_mut() {
            e.value = e.value.substitute(&var, &value)?;
        }
        done.push(Elimination { var, value });
    }
    Ok(done)
}

/// Applies eliminations to a normal form.
pub fn reduce(nf: &NormalForm, elims: &[Elimination]) -> Result<NormalForm> {
    let mut out = nf.clone();
    for e in elims {
        out = out.substitute(&e.var, &e.value)?;
    }
    Ok(out)
}

/// True when `nf` vanishes identically on the variety of `constraints`.
/// Uses linear elimination when possible and divisibility of the numerator
/// by the (irreducible) constraint otherwise.
pub fn vanishes_under(nf: &NormalForm, constraints: &[Constraint]) -> bool {
    if nf.is_zero() {
        return true;
    }
    if constraints.is_empty() {
        return false;
    }
    if let Ok(elims) = eliminate(constraints, &nf.x_power().vars(), None) {
        if let Ok(r) = reduce(nf, &elims) {
            return r.is_zero();
        }
    }
    constraints
        .iter()
        .any(|c| nf.numerator().div_exact(c.polynomial()).is_some())
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

    #[test]
    fn canonical_form() {
        let ps = ["a", "b", "c", "n"];
        let c = Constraint::new(poly("-2*a*c + 2*n + 2*b", &ps)).unwrap();
        assert_eq!(c.polynomial(), &poly("a*c - b - n", &ps));
        assert!(Constraint::new(poly("x + a", &["a"])).is_err());
        assert!(Constraint::new(Polynomial::from_int(3)).is_err());
    }

    #[test]
    fn elimination_prefers_last_free_variable() {
        let ps = ["a", "b", "c", "n"];
        let c = Constraint::new(poly("a*c - b - n", &ps)).unwrap();
        let avoid: BTreeSet<Var> = [Var::new("n")].into_iter().collect();
        assert_eq!(c.preferred_variable(&avoid), Some(Var::new("c")));
        let elims = eliminate(&[c], &avoid, None).unwrap();
        let want = normalize(&parse("(b + n)/a", &ps).unwrap()).unwrap();
        assert_eq!(NormalForm::from_ratfun(elims[0].value.clone()), want);
    }

    #[test]
    fn reduction_zeroes_dependent_forms() {
        let ps = ["a", "b", "c", "n"];
        let c = Constraint::new(poly("a*c - b - n", &ps)).unwrap();
        let nf = normalize(&parse("(a*c - b - n)*x^2/(x + 1)", &ps).unwrap()).unwrap();
        assert!(vanishes_under(&nf, &[c]));
        let other = normalize(&parse("(a*c - b)*x", &ps).unwrap()).unwrap();
        let c2 = Constraint::new(poly("a*c - b - n", &ps)).unwrap();
        assert!(!vanishes_under(&other, &[c2]));
    }

    #[test]
    fn nonlinear_constraint_falls_back_to_division() {
        let c = Constraint::new(poly("a^2 + a + 1", &["a"])).unwrap();
        let nf = normalize(&parse("(a^2 + a + 1)*x", &["a"]).unwrap()).unwrap();
        assert!(vanishes_under(&nf, &[c]));
    }
}
