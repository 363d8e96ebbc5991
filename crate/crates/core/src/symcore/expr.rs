//! Expression trees over `x` and named parameters.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigInt, One, Signed, Zero};

use super::poly::{rat, Rational, Var};

/// Symbolic expression. Literals are exact rationals; there is no
/// floating-point payload anywhere in the tree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Expr {
    Num(Rational),
    Sym(Var),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Base raised to an `x`-free exponent. Non-integer exponents are only
    /// normalizable when the base is `x`.
    Pow(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Exp(Box<Expr>),
    /// Formal antiderivative `int_{base}^{x} integrand`, used where no
    /// symbolic antiderivative is available.
    Integral(Box<Expr>, Rational),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Num(rat(n))
    }

    pub fn num(q: Rational) -> Expr {
        Expr::Num(q)
    }

    pub fn x() -> Expr {
        Expr::Sym(Var::x())
    }

    pub fn sym(name: &str) -> Expr {
        Expr::Sym(Var::new(name))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Num(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Num(q) if q.is_one())
    }

    pub fn as_num(&self) -> Option<&Rational> {
        match self {
            Expr::Num(q) => Some(q),
            _ => None,
        }
    }

    /// Sum with flattening, constant folding and zero removal.
    pub fn sum(items: Vec<Expr>) -> Expr {
        let mut out = Vec::with_capacity(items.len());
        let mut konst = Rational::zero();
        let mut slot = None;
        let flat = items.into_iter().flat_map(|it| match it {
            Expr::Add(inner) => inner,
            e => vec![e],
        });
        for e in flat {
            match e {
                Expr::Num(q) => {
                    konst += q;
                    slot.get_or_insert(out.len());
                }
                e => out.push(e),
            }
        }
        if !konst.is_zero() {
            out.insert(slot.unwrap_or(out.len()), Expr::Num(konst));
        }
        match out.len() {
            0 => Expr::zero(),
            1 => out.pop().unwrap(),
            _ => Expr::Add(out),
        }
    }

    /// Product with flattening, constant folding and unit removal.
    pub fn product(items: Vec<Expr>) -> Expr {
        let mut out = Vec::with_capacity(items.len());
        let mut konst = Rational::one();
        for it in items {
            match it {
                Expr::Num(q) => konst *= q,
                Expr::Mul(inner) => {
                    for e in inner {
                        match e {
                            Expr::Num(q) => konst *= q,
                            e => out.push(e),
                        }
                    }
                }
                e => out.push(e),
            }
        }
        if konst.is_zero() {
            return Expr::zero();
        }
        if out.is_empty() {
            return Expr::Num(konst);
        }
        if !konst.is_one() {
            if konst == -Rational::one() && out.len() == 1 {
                return Expr::Neg(Box::new(out.pop().unwrap()));
            }
            out.insert(0, Expr::Num(konst));
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Expr::Mul(out)
        }
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::sum(vec![a, b])
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::sum(vec![a, Expr::neg(b)])
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::product(vec![a, b])
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        match (&a, &b) {
            (_, Expr::Num(q)) if q.is_one() => a,
            (Expr::Num(p), Expr::Num(q)) if !q.is_zero() => Expr::Num(p / q),
            (Expr::Num(p), _) if p.is_zero() => Expr::zero(),
            _ => Expr::Div(Box::new(a), Box::new(b)),
        }
    }

    pub fn neg(a: Expr) -> Expr {
        match a {
            Expr::Num(q) => Expr::Num(-q),
            Expr::Neg(inner) => *inner,
            Expr::Mul(mut items) if matches!(items.first(), Some(Expr::Num(_))) => {
                if let Expr::Num(q) = &mut items[0] {
                    *q = -q.clone();
                }
                Expr::product(items)
            }
            e => Expr::Neg(Box::new(e)),
        }
    }

    pub fn pow(base: Expr, exponent: Expr) -> Expr {
        if exponent.is_zero() {
            return Expr::one();
        }
        if exponent.is_one() {
            return base;
        }
        if let (Expr::Num(b), Expr::Num(e)) = (&base, &exponent) {
            if e.is_integer() && (!b.is_zero() || e.is_positive()) {
                if let Some(k) = num::ToPrimitive::to_i32(&e.to_integer()) {
                    return Expr::Num(num::pow::Pow::pow(b.clone(), k));
                }
            }
        }
        Expr::Pow(Box::new(base), Box::new(exponent))
    }

    pub fn powi(base: Expr, k: i64) -> Expr {
        Expr::pow(base, Expr::int(k))
    }

    pub fn exp(arg: Expr) -> Expr {
        if arg.is_zero() {
            return Expr::one();
        }
        Expr::Exp(Box::new(arg))
    }

    pub fn integral(integrand: Expr, base: Rational) -> Expr {
        Expr::Integral(Box::new(integrand), base)
    }

    /// All symbols appearing in the tree, `x` included.
    pub fn symbols(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<Var>) {
        match self {
            Expr::Num(_) => {}
            Expr::Sym(v) => {
                out.insert(v.clone());
            }
            Expr::Add(items) | Expr::Mul(items) => {
                for e in items {
                    e.collect_symbols(out);
                }
            }
            Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            Expr::Neg(a) | Expr::Exp(a) => a.collect_symbols(out),
            Expr::Integral(f, _) => {
                out.insert(Var::x());
                f.collect_symbols(out);
            }
        }
    }

    pub fn contains_x(&self) -> bool {
        self.symbols().contains(&Var::x())
    }

    pub fn contains_integral(&self) -> bool {
        match self {
            Expr::Integral(..) => true,
            Expr::Num(_) | Expr::Sym(_) => false,
            Expr::Add(items) | Expr::Mul(items) => items.iter().any(Expr::contains_integral),
            Expr::Div(a, b) | Expr::Pow(a, b) => a.contains_integral() || b.contains_integral(),
            Expr::Neg(a) | Expr::Exp(a) => a.contains_integral(),
        }
    }

    /// Replaces a parameter by an expression.
    pub fn substitute(&self, v: &Var, value: &Expr) -> Expr {
        match self {
            Expr::Sym(w) if w == v => value.clone(),
            Expr::Num(_) | Expr::Sym(_) => self.clone(),
            Expr::Add(items) => Expr::sum(items.iter().map(|e| e.substitute(v, value)).collect()),
            Expr::Mul(items) => {
                Expr::product(items.iter().map(|e| e.substitute(v, value)).collect())
            }
            Expr::Div(a, b) => Expr::div(a.substitute(v, value), b.substitute(v, value)),
            Expr::Pow(a, b) => Expr::pow(a.substitute(v, value), b.substitute(v, value)),
            Expr::Neg(a) => Expr::neg(a.substitute(v, value)),
            Expr::Exp(a) => Expr::exp(a.substitute(v, value)),
            Expr::Integral(f, base) => Expr::integral(f.substitute(v, value), base.clone()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(_) => 1,
            Expr::Mul(_) | Expr::Div(..) => 2,
            Expr::Num(q) if !q.is_integer() => 2,
            Expr::Num(q) if q.is_negative() => 3,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_bare(f)?;
            write!(f, ")")
        } else {
            self.write_bare(f)
        }
    }

    fn write_bare(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => write_rational(f, q),
            Expr::Sym(v) => write!(f, "{v}"),
            Expr::Add(items) => {
                for (i, e) in items.iter().enumerate() {
                    if i == 0 {
                        e.write_prec(f, 1)?;
                        continue;
                    }
                    match negated_term(e) {
                        Some(pos) => {
                            write!(f, " - ")?;
                            pos.write_prec(f, 2)?;
                        }
                        None => {
                            write!(f, " + ")?;
                            e.write_prec(f, 2)?;
                        }
                    }
                }
                Ok(())
            }
            Expr::Mul(items) => {
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                        e.write_prec(f, 4)?;
                    } else {
                        e.write_prec(f, 2)?;
                    }
                }
                Ok(())
            }
            Expr::Div(a, b) => {
                a.write_prec(f, 2)?;
                write!(f, "/")?;
                b.write_prec(f, 3)
            }
            Expr::Pow(a, b) => {
                a.write_prec(f, 5)?;
                write!(f, "^")?;
                match b.as_ref() {
                    Expr::Num(q) if q.is_integer() && !q.is_negative() => write_rational(f, q),
                    Expr::Sym(v) => write!(f, "{v}"),
                    other => {
                        write!(f, "(")?;
                        other.write_bare(f)?;
                        write!(f, ")")
                    }
                }
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_prec(f, 2)
            }
            Expr::Exp(a) => {
                write!(f, "exp(")?;
                a.write_bare(f)?;
                write!(f, ")")
            }
            Expr::Integral(g, base) => {
                write!(f, "int(")?;
                g.write_bare(f)?;
                write!(f, ", ")?;
                write_rational(f, base)?;
                write!(f, ")")
            }
        }
    }
}

/// If `e` prints with a leading minus, the positive counterpart.
fn negated_term(e: &Expr) -> Option<Expr> {
    match e {
        Expr::Neg(inner) => Some((**inner).clone()),
        Expr::Num(q) if q.is_negative() => Some(Expr::Num(-q.clone())),
        Expr::Mul(items) => match items.first() {
            Some(Expr::Num(q)) if q.is_negative() => {
                let mut rest = items.clone();
                rest[0] = Expr::Num(-q.clone());
                Some(Expr::product(rest))
            }
            _ => None,
        },
        Expr::Div(a, b) => negated_term(a).map(|pa| Expr::Div(Box::new(pa), b.clone())),
        _ => None,
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.denom() == &BigInt::one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_bare(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::poly::ratio;

    #[test]
    fn builders_fold_constants() {
        assert_eq!(Expr::sum(vec![Expr::int(2), Expr::int(-2)]), Expr::zero());
        assert_eq!(
            Expr::product(vec![Expr::int(3), Expr::x(), Expr::one()]),
            Expr::Mul(vec![Expr::int(3), Expr::x()])
        );
        assert_eq!(Expr::product(vec![Expr::int(0), Expr::x()]), Expr::zero());
        assert_eq!(
            Expr::div(Expr::int(2), Expr::int(4)),
            Expr::Num(ratio(1, 2))
        );
    }

    #[test]
    fn printing() {
        let e = Expr::sum(vec![
            Expr::mul(Expr::Num(ratio(3, 4)), Expr::powi(Expr::x(), 4)),
            Expr::mul(Expr::int(-2), Expr::x()),
            Expr::int(-1),
        ]);
        assert_eq!(e.to_string(), "3/4*x^4 - 2*x - 1");
        let q = Expr::div(
            Expr::neg(Expr::mul(Expr::int(4), Expr::x())),
            Expr::sub(Expr::one(), Expr::x()),
        );
        assert_eq!(q.to_string(), "-4*x/(1 - x)");
        let p = Expr::pow(Expr::x(), Expr::sum(vec![Expr::sym("n"), Expr::int(1)]));
        assert_eq!(p.to_string(), "x^(n + 1)");
        assert_eq!(Expr::powi(Expr::x(), -2).to_string(), "x^(-2)");
        assert_eq!(Expr::exp(Expr::neg(Expr::x())).to_string(), "exp(-x)");
    }
}
