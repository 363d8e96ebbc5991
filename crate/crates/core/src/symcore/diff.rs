use super::expr::Expr;

/// d/dx by structural rules. Exponents are `x`-free by construction, so the
/// power rule applies to every `Pow` node.
pub fn differentiate(e: &Expr) -> Expr {
    match e {
        Expr::Num(_) => Expr::zero(),
        Expr::Sym(v) => {
            if v.is_x() {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Expr::Add(items) => Expr::sum(items.iter().map(differentiate).collect()),
        Expr::Mul(items) => {
            let mut terms = Vec::with_capacity(items.len());
            for (i, f) in items.iter().enumerate() {
                let df = differentiate(f);
                if df.is_zero() {
                    continue;
                }
                let mut factors = items.clone();
                factors[i] = df;
                terms.push(Expr::product(factors));
            }
            Expr::sum(terms)
        }
        Expr::Div(a, b) => {
            let da = differentiate(a);
            let db = differentiate(b);
            if db.is_zero() {
                return Expr::div(da, (**b).clone());
            }
            let num = Expr::sub(Expr::mul(da, (**b).clone()), Expr::mul((**a).clone(), db));
            Expr::div(num, Expr::powi((**b).clone(), 2))
        }
        Expr::Pow(base, exponent) => {
            debug_assert!(!exponent.contains_x(), "exponent depends on x");
            let db = differentiate(base);
            if db.is_zero() {
                return Expr::zero();
            }
            let lowered = match exponent.as_num() {
                Some(q) => Expr::num(q - super::poly::rat(1)),
                None => Expr::sub((**exponent).clone(), Expr::one()),
            };
            Expr::product(vec![
                (**exponent).clone(),
                Expr::pow((**base).clone(), lowered),
                db,
            ])
        }
        Expr::Neg(a) => Expr::neg(differentiate(a)),
        Expr::Exp(a) => Expr::mul(differentiate(a), e.clone()),
        Expr::Integral(f, _) => (**f).clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::normal::normalize;
    use crate::symcore::parse::parse;

    fn check(src: &str, expected: &str, params: &[&str]) {
        let d = differentiate(&parse(src, params).unwrap());
        let want = normalize(&parse(expected, params).unwrap()).unwrap();
        assert_eq!(normalize(&d).unwrap(), want, "d/dx {src} gave {d}");
    }

    #[test]
    fn power_rule() {
        check("x^2", "2*x", &[]);
        check("2*x", "2", &[]);
        check("x^-2", "-2/x^3", &[]);
        check("x^n", "n*x^(n-1)", &["n"]);
    }

    #[test]
    fn chain_rule_through_exp() {
        check("exp((3/4)*x^4 + x)", "(3*x^3 + 1)*exp((3/4)*x^4 + x)", &[]);
    }

    #[test]
    fn quotient_rule() {
        check("1/(1 - 2*x^2)", "4*x/(1 - 2*x^2)^2", &[]);
        check("a/x", "-a/x^2", &["a"]);
    }

    #[test]
    fn integral_token_differentiates_to_integrand() {
        let e = parse("int(1/(1+x^2), 0)", &[]).unwrap();
        assert_eq!(differentiate(&e), parse("1/(1+x^2)", &[]).unwrap());
    }
}
