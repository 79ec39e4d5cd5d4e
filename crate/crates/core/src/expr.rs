//! Expression grammar shared by the CLI and the presentation file format.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are generator names of the target table or the central
//! parameters `p`, `q`. Division and negative powers require a scalar
//! (generator-free) operand.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{Element, GeneratorTable};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Symbol(String),
    /// Signed top-level summands; `true` marks subtraction.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Quotient(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Power(Box<Expr>, i32),
}

impl Expr {
    /// Number of top-level summands.
    pub fn term_count(&self) -> usize {
        match self {
            Expr::Sum(ts) => ts.len(),
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    table: &'a GeneratorTable,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![(false, self.term()?)];
        loop {
            if self.eat('+') {
                terms.push((false, self.term()?));
            } else if self.eat('-') {
                terms.push((true, self.term()?));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 && !terms[0].0 {
            terms.pop().unwrap().1
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.unary()?];
        loop {
            if self.eat('*') {
                factors.push(self.unary()?);
            } else if self.eat('/') {
                let den = self.unary()?;
                if matches!(&den, Expr::Int(n) if n.is_zero()) {
                    return Err(Error::Parse {
                        pos: self.toks[self.at - 1].0,
                        msg: "zero denominator".into(),
                    });
                }
                let num = if factors.len() == 1 {
                    factors.pop().unwrap()
                } else {
                    Expr::Product(std::mem::take(&mut factors))
                };
                factors = vec![Expr::Quotient(Box::new(num), Box::new(den))];
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return self.err("expected an integer exponent");
        };
        self.at += 1;
        if paren && !self.eat(')') {
            return self.err("expected `)`");
        }
        let Ok(mut e) = i32::try_from(n) else {
            return self.err("exponent too large");
        };
        if neg {
            e = -e;
        }
        Ok(Expr::Power(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                if name != "p" && name != "q" && self.table.lookup(&name).is_none() {
                    return self.err(format!("unknown identifier `{name}`"));
                }
                self.at += 1;
                Ok(Expr::Symbol(name))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse `text` against the identifiers of `table`.
pub fn parse(text: &str, table: &GeneratorTable) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        table,
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

fn as_scalar(e: &Element) -> Option<Scalar> {
    match e.terms().len() {
        0 => Some(Scalar::zero()),
        1 => {
            let (w, c) = e.terms().iter().next().unwrap();
            w.is_empty().then(|| c.clone())
        }
        _ => None,
    }
}

/// Evaluate to an element of the free algebra (no relations applied).
pub fn eval(expr: &Expr, table: &Arc<GeneratorTable>) -> Result<Element> {
    let domain = |m: &str| Error::Domain(m.to_string());
    Ok(match expr {
        Expr::Int(n) => Element::scalar(table, Scalar::from_bigint(n.clone())),
        Expr::Symbol(s) if s == "p" => Element::scalar(table, Scalar::p()),
        Expr::Symbol(s) if s == "q" => Element::scalar(table, Scalar::q()),
        Expr::Symbol(s) => Element::generator(table, table.id(s)?),
        Expr::Sum(ts) => {
            let mut acc = Element::zero(table);
            for (neg, t) in ts {
                let v = eval(t, table)?;
                acc = if *neg { &acc - &v } else { &acc + &v };
            }
            acc
        }
        Expr::Product(fs) => {
            let mut acc = Element::one(table);
            for f in fs {
                acc = acc.try_mul(&eval(f, table)?)?;
            }
            acc
        }
        Expr::Quotient(n, d) => {
            let den = eval(d, table)?;
            let s = as_scalar(&den).ok_or_else(|| domain("division by a non-scalar"))?;
            let inv = s.inv().ok_or_else(|| domain("division by zero"))?;
            eval(n, table)?.scale(&inv)
        }
        Expr::Neg(e) => -&eval(e, table)?,
        Expr::Power(b, k) => {
            let base = eval(b, table)?;
            if *k < 0 {
                let s = as_scalar(&base).ok_or_else(|| domain("negative power of a non-scalar"))?;
                let v = s.pow(*k).ok_or_else(|| domain("negative power of zero"))?;
                Element::scalar(table, v)
            } else {
                let mut acc = Element::one(table);
                for _ in 0..*k {
                    acc = acc.try_mul(&base)?;
                }
                acc
            }
        }
    })
}

/// Parse and evaluate in one step.
pub fn parse_element(text: &str, table: &Arc<GeneratorTable>) -> Result<Element> {
    eval(&parse(text, table)?, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Arc<GeneratorTable> {
        GeneratorTable::from_spec(&[
            ("h", 1, true),
            ("hp", 1, true),
            ("dx", 1, false),
            ("th2", 1, false),
            ("th1", 1, false),
            ("x", 0, false),
        ])
    }

    #[test]
    fn three_top_level_terms() {
        let t = table();
        let e = parse("x*th2 - th2*x - h*x^2", &t).unwrap();
        assert_eq!(e.term_count(), 3);
    }

    #[test]
    fn parenthesized_factor() {
        let t = table();
        let e = parse("(1+h*hp)*dx*x", &t).unwrap();
        match e {
            Expr::Product(fs) => {
                assert_eq!(fs.len(), 3);
                assert!(matches!(fs[0], Expr::Sum(_)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rational_coefficient() {
        let t = table();
        let e = parse_element("h/(q-1)*x", &t).unwrap();
        let (w, c) = e.terms().iter().next().unwrap();
        assert_eq!(w.display(&t).to_string(), "h*x");
        assert_eq!(c, &(Scalar::one() / (Scalar::q() - Scalar::one())));
    }

    #[test]
    fn negative_scalar_power() {
        let t = table();
        let e = parse_element("q^-1*x + q^(-1)*x", &t).unwrap();
        assert_eq!(e.to_string(), "(2/q)*x");
    }

    #[test]
    fn errors() {
        let t = table();
        assert!(matches!(parse("x*y", &t), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse("x/0", &t), Err(Error::Parse { .. })));
        assert!(matches!(parse("1/", &t), Err(Error::Parse { .. })));
        assert!(parse_element("1/x", &t).is_err());
    }

    #[test]
    fn print_parse_roundtrip() {
        let t = table();
        let e = parse_element("-3/2*th2*x + (p - 1)/(q*p - 1)*h*x^2 - x", &t).unwrap();
        let again = parse_element(&e.to_string(), &t).unwrap();
        assert_eq!(again, e);
    }
}
