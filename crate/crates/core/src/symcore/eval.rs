use std::collections::BTreeMap;

use num::ToPrimitive;

use super::expr::Expr;
use super::normal::NormalForm;
use super::poly::Var;
use crate::error::{Error, Result};
use crate::numeric;

/// Numeric values for parameters.
pub type Bindings = BTreeMap<String, f64>;

/// Evaluates `e` at `x` in double precision. A denominator that is exactly
/// zero is a pole.
pub fn evaluate_numeric(e: &Expr, x: f64, bindings: &Bindings) -> Result<f64> {
    evaluate_guarded(e, x, bindings, 0.0)
}

/// As [`evaluate_numeric`], but any denominator with magnitude at most
/// `min_den` counts as a pole.
pub fn evaluate_guarded(e: &Expr, x: f64, bindings: &Bindings, min_den: f64) -> Result<f64> {
    let v = Evaluator { bindings, min_den }.eval(e, x)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { x })
    }
}

/// Evaluates a normal form; denominators of magnitude at most `min_den`
/// count as poles.
pub fn evaluate_normal(nf: &NormalForm, x: f64, bindings: &Bindings, min_den: f64) -> Result<f64> {
    for p in [nf.numerator(), nf.denominator(), nf.x_power(), nf.exp_arg()] {
        for v in p.vars() {
            if !v.is_x() && !bindings.contains_key(v.name()) {
                return Err(Error::UnboundParameter(v.name().to_string()));
            }
        }
    }
    let value = |v: &Var| {
        if v.is_x() {
            Some(x)
        } else {
            bindings.get(v.name()).copied()
        }
    };
    let den = nf
        .denominator()
        .eval_f64(value)
        .ok_or(Error::NonFinite { x })?;
    if den == 0.0 || den.abs() <= min_den {
        return Err(Error::Pole { x });
    }
    if !nf.x_power().is_zero() && x <= 0.0 {
        return Err(Error::NonFinite { x });
    }
    let v = nf
        .eval_f64(x, |v: &Var| bindings.get(v.name()).copied())
        .ok_or(Error::NonFinite { x })?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { x })
    }
}

struct Evaluator<'a> {
    bindings: &'a Bindings,
    min_den: f64,
}

impl Evaluator<'_> {
    fn eval(&self, e: &Expr, x: f64) -> Result<f64> {
        Ok(match e {
            Expr::Num(q) => q.to_f64().ok_or(Error::NonFinite { x })?,
            Expr::Sym(v) if v.is_x() => x,
            Expr::Sym(v) => *self
                .bindings
                .get(v.name())
                .ok_or_else(|| Error::UnboundParameter(v.name().to_string()))?,
            Expr::Add(items) => {
                let mut s = 0.0;
                for it in items {
                    s += self.eval(it, x)?;
                }
                s
            }
            Expr::Mul(items) => {
                let mut p = 1.0;
                for it in items {
                    p *= self.eval(it, x)?;
                }
                p
            }
            Expr::Div(a, b) => {
                let d = self.eval(b, x)?;
                if d == 0.0 || d.abs() <= self.min_den {
                    return Err(Error::Pole { x });
                }
                self.eval(a, x)? / d
            }
            Expr::Pow(base, exponent) => {
                let b = self.eval(base, x)?;
                let p = self.eval(exponent, x)?;
                if p.fract() == 0.0 && p.abs() < i32::MAX as f64 {
                    if p < 0.0 && (b == 0.0 || b.abs() <= self.min_den) {
                        return Err(Error::Pole { x });
                    }
                    b.powi(p as i32)
                } else {
                    if b < 0.0 {
                        return Err(Error::NonFinite { x });
                    }
                    if p < 0.0 && (b == 0.0 || b <= self.min_den) {
                        return Err(Error::Pole { x });
                    }
                    b.powf(p)
                }
            }
            Expr::Neg(a) => -self.eval(a, x)?,
            Expr::Exp(a) => self.eval(a, x)?.exp(),
            Expr::Integral(f, base) => {
                let lo = base.to_f64().ok_or(Error::NonFinite { x })?;
                numeric::integrate(|t| self.eval(f, t), lo, x, 1e-13, 1e-12)?
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::parse::parse;

    fn bind(pairs: &[(&str, f64)]) -> Bindings {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn rational_expression() {
        let e = parse("-4*x/(1 - 2*x^2)", &[]).unwrap();
        assert_eq!(evaluate_numeric(&e, 0.0, &Bindings::new()).unwrap(), 0.0);
    }

    #[test]
    fn with_parameters() {
        let e = parse("2*(m+a)*x + 4*c*m + 2*b - 1", &["a", "b", "c", "m"]).unwrap();
        let b = bind(&[("a", 1.0), ("b", 0.0), ("c", 0.0), ("m", 1.0)]);
        assert_eq!(evaluate_numeric(&e, 1.0, &b).unwrap(), 3.0);
    }

    #[test]
    fn errors() {
        let e = parse("1/(x - 1)", &[]).unwrap();
        assert!(matches!(
            evaluate_numeric(&e, 1.0, &Bindings::new()),
            Err(Error::Pole { .. })
        ));
        assert!(matches!(
            evaluate_guarded(&e, 1.0 + 1e-9, &Bindings::new(), 1e-6),
            Err(Error::Pole { .. })
        ));
        let p = parse("a*x", &["a"]).unwrap();
        assert!(matches!(
            evaluate_numeric(&p, 1.0, &Bindings::new()),
            Err(Error::UnboundParameter(_))
        ));
    }

    #[test]
    fn formal_integral_uses_quadrature() {
        let e = parse("int(1/(1+x^2), 0)", &[]).unwrap();
        let v = evaluate_numeric(&e, 1.0, &Bindings::new()).unwrap();
        assert!((v - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn example_three_solution_value() {
        let e = parse(
            "(9*x^8 - 30*x^4 + 5)/(x*exp((3/4)*x^4 + x)*(x^8 - 6*x^4 + 5))",
            &[],
        )
        .unwrap();
        let v = evaluate_numeric(&e, 2.0, &Bindings::new()).unwrap();
        // 50-digit reference value
        let exact = 4.608_684_931_031_593e-6;
        assert!((v - exact).abs() / exact < 1e-14);
    }
}
