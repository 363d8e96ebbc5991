//! Generalized hypergeometric series
//!
//! ```text
//! pFq(a1..ap; b1..bq; z) = sum_k (a1)_k ... (ap)_k / ((b1)_k ... (bq)_k) z^k / k!
//! ```
//!
//! with the rising factorial `(a)_k = a (a+1) ... (a+k-1)`. A numerator
//! parameter equal to `-n` truncates the series to a polynomial of degree
//! `n`, which is the only way the solvers use `2F0`.

use std::fmt;

use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::symcore::{evaluate_numeric, normalize, Bindings, Expr, NormalForm, Rational};

/// `(alpha)_k` as an expression; an exact number when `alpha` is one.
pub fn pochhammer(alpha: &Expr, k: u32) -> Expr {
    if let Some(a) = alpha.as_num() {
        return Expr::num(pochhammer_rational(a, k));
    }
    Expr::product(
        (0..k)
            .map(|i| Expr::add(alpha.clone(), Expr::int(i as i64)))
            .collect(),
    )
}

pub fn pochhammer_rational(alpha: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut a = alpha.clone();
    for _ in 0..k {
        acc *= &a;
        if acc.is_zero() {
            break;
        }
        a += Rational::one();
    }
    acc
}

pub fn pochhammer_f64(alpha: f64, k: u32) -> f64 {
    (0..k).map(|i| alpha + i as f64).product()
}

/// `pFq(numerator; denominator; argument)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperSpec {
    pub numerator: Vec<Expr>,
    pub denominator: Vec<Expr>,
    pub argument: Expr,
}

fn nonpositive_integer(e: &Expr) -> Option<u32> {
    let q = e.as_num()?;
    if q.is_integer() && !q.is_positive() {
        (-q).to_integer().to_u32()
    } else {
        None
    }
}

impl HyperSpec {
    /// Rejects numeric denominator parameters that are zero or negative
    /// integers and parameters that depend on `x`.
    pub fn new(numerator: Vec<Expr>, denominator: Vec<Expr>, argument: Expr) -> Result<Self> {
        for p in numerator.iter().chain(&denominator) {
            if p.contains_x() {
                return Err(Error::InvalidInput(format!("parameter {p} depends on x")));
            }
        }
        if let Some(b) = denominator
            .iter()
            .find(|b| nonpositive_integer(b).is_some())
        {
            return Err(Error::InadmissibleDenominator(b.to_string()));
        }
        Ok(HyperSpec {
            numerator,
            denominator,
            argument,
        })
    }

    pub fn p(&self) -> usize {
        self.numerator.len()
    }

    pub fn q(&self) -> usize {
        self.denominator.len()
    }

    /// Degree `n` of the truncated series: the smallest `n` among numerator
    /// parameters equal to `-n`.
    pub fn truncation(&self) -> Option<u32> {
        self.numerator.iter().filter_map(nonpositive_integer).min()
    }

    /// Conditions on symbolic denominator parameters.
    pub fn assumptions(&self) -> Vec<String> {
        self.denominator
            .iter()
            .filter(|b| b.as_num().is_none())
            .map(|b| format!("{b} is not zero or a negative integer"))
            .collect()
    }

    /// Coefficient of `z^k`.
    pub fn coefficient(&self, k: u32) -> Expr {
        let mut factorial = Rational::one();
        for i in 2..=k {
            factorial *= Rational::from_integer(i.into());
        }
        let top: Vec<Expr> = self.numerator.iter().map(|a| pochhammer(a, k)).collect();
        let mut bottom: Vec<Expr> = self.denominator.iter().map(|b| pochhammer(b, k)).collect();
        bottom.push(Expr::num(factorial));
        Expr::div(Expr::product(top), Expr::product(bottom))
    }

    /// The terminating series as an explicit polynomial in the argument.
    pub fn expand_polynomial(&self) -> Result<Expr> {
        let n = self.truncation().ok_or(Error::NoTruncatingParameter)?;
        if let Some(b) = self.denominator.iter().find(|b| b.as_num().is_none()) {
            return Err(Error::InadmissibleDenominator(format!(
                "{b} is not numeric"
            )));
        }
        let terms = (0..=n)
            .map(|k| {
                Expr::mul(
                    self.coefficient(k),
                    Expr::powi(self.argument.clone(), k as i64),
                )
            })
            .collect();
        Ok(Expr::sum(terms))
    }

    pub fn expand_normal(&self) -> Result<NormalForm> {
        normalize(&self.expand_polynomial()?)
    }

    /// Numeric value at `x`. Terminating series are summed exactly term by
    /// term; otherwise partial sums must settle to relative `tol` within
    /// `max_terms` terms. Series with `p > q + 1` are refused unless they
    /// terminate.
    pub fn evaluate(&self, x: f64, bindings: &Bindings, max_terms: usize, tol: f64) -> Result<f64> {
        let num: Vec<f64> = self
            .numerator
            .iter()
            .map(|a| evaluate_numeric(a, x, bindings))
            .collect::<Result<_>>()?;
        let den: Vec<f64> = self
            .denominator
            .iter()
            .map(|b| evaluate_numeric(b, x, bindings))
            .collect::<Result<_>>()?;
        let z = evaluate_numeric(&self.argument, x, bindings)?;
        let limit = match self.truncation() {
            Some(n) => n as usize,
            None if self.p() > self.q() + 1 => {
                return Err(Error::Divergent(format!(
                    "{}F{} does not terminate",
                    self.p(),
                    self.q()
                )))
            }
            None => max_terms,
        };
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut settled = 0;
        for k in 0..limit {
            let kf = k as f64;
            let mut ratio = z / (kf + 1.0);
            for a in &num {
                ratio *= a + kf;
            }
            for b in &den {
                let d = b + kf;
                if d == 0.0 {
                    return Err(Error::InadmissibleDenominator(format!("{b}")));
                }
                ratio /= d;
            }
            term *= ratio;
            sum += term;
            if self.truncation().is_none() {
                if term.abs() <= tol * sum.abs() {
                    settled += 1;
                    if settled == 2 {
                        return Ok(sum);
                    }
                } else {
                    settled = 0;
                }
            }
        }
        if self.truncation().is_none() {
            return Err(Error::NonConvergent { terms: max_terms });
        }
        Ok(sum)
    }
}

impl fmt::Display for HyperSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Expr]| {
            if v.is_empty() {
                "-".to_string()
            } else {
                v.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            }
        };
        write!(
            f,
            "{}F{}({}; {}; {})",
            self.p(),
            self.q(),
            list(&self.numerator),
            list(&self.denominator),
            self.argument
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::parse;
    use crate::symcore::poly::ratio;

    fn q(n: i64, d: i64) -> Expr {
        Expr::num(ratio(n, d))
    }

    fn z() -> Expr {
        Expr::sym("z")
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&q(5, 7), 0), Expr::one());
        assert_eq!(pochhammer(&Expr::int(-2), 1), Expr::int(-2));
        assert_eq!(pochhammer(&Expr::int(-2), 3), Expr::zero());
        assert_eq!(pochhammer(&q(1, 2), 2), q(3, 4));
        let sym = normalize(&pochhammer(&Expr::sym("a"), 3)).unwrap();
        let want = normalize(&parse("a*(a+1)*(a+2)", &["a"]).unwrap()).unwrap();
        assert_eq!(sym, want);
    }

    #[test]
    fn truncating_expansions() {
        let f = HyperSpec::new(vec![Expr::int(-1)], vec![q(1, 2)], z()).unwrap();
        let want = normalize(&parse("1 - 2*z", &["z"]).unwrap()).unwrap();
        assert_eq!(f.expand_normal().unwrap(), want);
        let g = HyperSpec::new(vec![Expr::int(0)], vec![q(3, 2)], z()).unwrap();
        assert_eq!(g.expand_polynomial().unwrap(), Expr::one());
        let h = HyperSpec::new(vec![Expr::int(-1), Expr::int(2)], vec![Expr::one()], z()).unwrap();
        assert_eq!(h.expand_normal().unwrap(), want);
    }

    #[test]
    fn numeric_values() {
        let b = Bindings::new();
        let f = HyperSpec::new(vec![Expr::int(-1)], vec![q(1, 2)], q(1, 4)).unwrap();
        assert_eq!(f.evaluate(0.0, &b, 100, 1e-15).unwrap(), 0.5);
        // 1 + (-2)(3)(-1/2) + (-2)(-1)(3)(4)(1/4)/2 = 1 + 3 + 3
        let g = HyperSpec::new(vec![Expr::int(-2), Expr::int(3)], vec![], q(-1, 2)).unwrap();
        assert_eq!(g.evaluate(0.0, &b, 100, 1e-15).unwrap(), 7.0);
        let e = HyperSpec::new(vec![], vec![], Expr::one()).unwrap();
        let v = e.evaluate(0.0, &b, 100, 1e-16).unwrap();
        assert!((v - std::f64::consts::E).abs() < 1e-15);
        let zero =
            HyperSpec::new(vec![q(1, 3), Expr::int(2)], vec![q(5, 2)], Expr::zero()).unwrap();
        assert_eq!(zero.evaluate(0.0, &b, 10, 1e-15).unwrap(), 1.0);
    }

    #[test]
    fn refusals() {
        let b = Bindings::new();
        assert!(matches!(
            HyperSpec::new(vec![Expr::one()], vec![Expr::int(-3)], z()),
            Err(Error::InadmissibleDenominator(_))
        ));
        let f = HyperSpec::new(vec![Expr::one(), Expr::int(2)], vec![], Expr::x()).unwrap();
        assert!(matches!(
            f.evaluate(0.1, &b, 100, 1e-12),
            Err(Error::Divergent(_))
        ));
        assert!(matches!(
            f.expand_polynomial(),
            Err(Error::NoTruncatingParameter)
        ));
        let slow = HyperSpec::new(
            vec![Expr::one(), Expr::one()],
            vec![Expr::int(2)],
            q(999, 1000),
        )
        .unwrap();
        assert!(matches!(
            slow.evaluate(0.0, &b, 50, 1e-14),
            Err(Error::NonConvergent { .. })
        ));
    }
}
