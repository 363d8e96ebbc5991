//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' power)?
//! power  := integer | '-' integer | ident | '(' expr ')'
//! base   := integer | ident | '(' expr ')' | 'exp' '(' expr ')'
//!         | 'int' '(' expr ',' ['-'] integer ['/' integer] ')' | '-' factor
//! ```
//!
//! `x` is the independent variable; every other identifier must be a
//! declared parameter.

use num::{BigInt, Zero};

use super::expr::Expr;
use super::poly::{Rational, Var, INDEPENDENT};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().unwrap()), start));
                continue;
            }
            l if l.is_ascii_alphabetic() || l == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(Error::Parse {
                    position: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    params: &'a [String],
}

pub fn parse_expr(text: &str, params: &[String]) -> Result<Expr> {
    for p in params {
        validate_param_name(p)?;
    }
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
        params,
    };
    if parser.peek() == &Tok::End {
        return Err(Error::Parse {
            position: 0,
            message: "empty expression".into(),
        });
    }
    let e = parser.expr()?;
    match parser.peek() {
        Tok::End => Ok(e),
        t => Err(parser.error(format!("unexpected token {t:?}"))),
    }
}

/// Convenience for parameter lists given as `&str`.
pub fn parse(text: &str, params: &[&str]) -> Result<Expr> {
    let owned: Vec<String> = params.iter().map(|s| s.to_string()).collect();
    parse_expr(text, &owned)
}

pub fn validate_param_name(p: &str) -> Result<()> {
    let ok = p
        .chars()
        .next()
        .map(|c| c.is_ascii_alphabetic() || c == '_')
        .unwrap_or(false)
        && p.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !ok || p == INDEPENDENT || p == "exp" || p == "int" {
        return Err(Error::InvalidInput(format!("invalid parameter name `{p}`")));
    }
    Ok(())
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn position(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: String) -> Error {
        Error::Parse {
            position: self.position(),
            message,
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek() == &t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {t:?}, found {:?}", self.peek())))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut items = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    items.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    items.push(Expr::neg(self.term()?));
                }
                _ => break,
            }
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::Add(items)
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = match acc {
                        Expr::Mul(mut items) => {
                            items.push(rhs);
                            Expr::Mul(items)
                        }
                        other => Expr::Mul(vec![other, rhs]),
                    };
                }
                Tok::Slash => {
                    let at = self.position();
                    self.bump();
                    let rhs = self.factor()?;
                    acc = match (acc, rhs) {
                        (_, Expr::Num(q)) if q.is_zero() => {
                            return Err(Error::Parse {
                                position: at,
                                message: "division by literal zero".into(),
                            })
                        }
                        (Expr::Num(p), Expr::Num(q)) => Expr::Num(p / q),
                        (a, b) => Expr::Div(Box::new(a), Box::new(b)),
                    };
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.peek() != &Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.position();
        let exponent = match self.bump() {
            Tok::Int(n) => Expr::Num(Rational::from_integer(n)),
            Tok::Minus => match self.bump() {
                Tok::Int(n) => Expr::Num(-Rational::from_integer(n)),
                _ => {
                    self.pos -= 1;
                    return Err(self.error("expected integer exponent".into()));
                }
            },
            Tok::Ident(name) => {
                self.pos -= 1;
                let e = self.symbol(&name)?;
                self.bump();
                e
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                e
            }
            _ => {
                self.pos -= 1;
                return Err(self.error("expected exponent".into()));
            }
        };
        if exponent.contains_x() {
            return Err(Error::Parse {
                position: at,
                message: "exponent must not depend on x".into(),
            });
        }
        Ok(Expr::Pow(Box::new(base), Box::new(exponent)))
    }

    fn symbol(&self, name: &str) -> Result<Expr> {
        if name == INDEPENDENT {
            return Ok(Expr::Sym(Var::x()));
        }
        if self.params.iter().any(|p| p == name) {
            return Ok(Expr::Sym(Var::new(name)));
        }
        Err(Error::UnknownSymbol {
            name: name.to_string(),
            position: self.position(),
        })
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Tok::Minus => {
                self.bump();
                Ok(Expr::neg(self.factor()?))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) if name == "exp" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Exp(Box::new(e)))
            }
            Tok::Ident(name) if name == "int" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let e = self.expr()?;
                self.expect(Tok::Comma)?;
                let base = self.signed_rational()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Integral(Box::new(e), base))
            }
            Tok::Ident(name) => {
                let e = self.symbol(&name)?;
                self.bump();
                Ok(e)
            }
            Tok::End => Err(self.error("unexpected end of input".into())),
            t => Err(self.error(format!("unexpected token {t:?}"))),
        }
    }

    fn signed_rational(&mut self) -> Result<Rational> {
        let neg = if self.peek() == &Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let Tok::Int(n) = self.bump() else {
            self.pos -= 1;
            return Err(self.error("expected integer".into()));
        };
        let mut q = Rational::from_integer(n);
        if self.peek() == &Tok::Slash {
            self.bump();
            let Tok::Int(d) = self.bump() else {
                self.pos -= 1;
                return Err(self.error("expected integer denominator".into()));
            };
            if d.is_zero() {
                return Err(self.error("zero denominator".into()));
            }
            q /= Rational::from_integer(d);
        }
        Ok(if neg { -q } else { q })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::poly::ratio;

    #[test]
    fn product_with_power() {
        let e = parse("3*x^3", &[]).unwrap();
        assert_eq!(
            e,
            Expr::Mul(vec![
                Expr::int(3),
                Expr::Pow(Box::new(Expr::x()), Box::new(Expr::int(3)))
            ])
        );
    }

    #[test]
    fn quotient_with_parameters() {
        let e = parse("-(2*m*x - 1)/(a*x^3 + b*x^2 + c*x)", &["a", "b", "c", "m"]).unwrap();
        assert!(matches!(e, Expr::Div(..)));
    }

    #[test]
    fn exponential_node() {
        let e = parse("exp((3/4)*x^4 + x)", &[]).unwrap();
        let Expr::Exp(arg) = e else {
            panic!("expected exp")
        };
        assert!(matches!(*arg, Expr::Add(_)));
    }

    #[test]
    fn literal_division_folds() {
        assert_eq!(parse("6/8", &[]).unwrap(), Expr::Num(ratio(3, 4)));
        // left associative: x/3/4 = x/12 in value
        let e = parse("x/3/4", &[]).unwrap();
        assert!(matches!(e, Expr::Div(..)));
    }

    #[test]
    fn errors_carry_positions() {
        match parse("2*x + )", &[]) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
        match parse("x + q", &["a"]) {
            Err(Error::UnknownSymbol { name, position }) => {
                assert_eq!(name, "q");
                assert_eq!(position, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("", &[]).is_err());
        assert!(parse("x $ 2", &[]).is_err());
    }

    #[test]
    fn symbolic_and_negative_exponents() {
        assert!(parse("x^n", &["n"]).is_ok());
        assert!(parse("x^(n+2)", &["n"]).is_ok());
        assert!(parse("x^-2", &[]).is_ok());
        assert!(parse("int(1/x, 1)", &[]).is_ok());
    }
}
