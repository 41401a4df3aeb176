//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := ("+" | "-") unary | power
//! power  := atom ("^" digits)?
//! atom   := number | ident | "(" expr ")"
//! number := digits ("/" digits)?
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Poly, PolyError};
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    /// Value and whether it was written with a slash.
    Num(Q, bool),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| -> String {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        text[start..*i].to_string()
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' => {
                let num: BigInt = digits(&mut i).parse().expect("digits");
                let mut value = Q::from_integer(num);
                let slash = i < bytes.len() && bytes[i] == b'/';
                if slash {
                    i += 1;
                    let den = digits(&mut i);
                    if den.is_empty() {
                        return Err(PolyError::Syntax {
                            pos: i,
                            msg: "expected a denominator after '/'".into(),
                        });
                    }
                    let den: BigInt = den.parse().expect("digits");
                    if den.is_zero() {
                        return Err(PolyError::Syntax {
                            pos: start,
                            msg: "zero denominator".into(),
                        });
                    }
                    value /= Q::from_integer(den);
                }
                out.push((start, Tok::Num(value, slash)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(PolyError::Syntax {
                    pos: start,
                    msg: format!(
                        "unexpected character {:?}",
                        text[start..].chars().next().unwrap()
                    ),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    vars: &'a [&'a str],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn syntax(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.offset(),
            msg: msg.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let exp = match self.toks.get(self.pos) {
                Some((_, Tok::Num(n, false))) => n.to_integer().to_string(),
                Some((p, _)) => return Err(PolyError::MalformedExponent { pos: *p }),
                None => return Err(PolyError::MalformedExponent { pos: self.end }),
            };
            let k: u32 = exp
                .parse()
                .map_err(|_| PolyError::MalformedExponent { pos: self.offset() })?;
            self.pos += 1;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Num(c, _))) => {
                self.pos += 1;
                Ok(Poly::constant(self.vars, c))
            }
            Some((_, Tok::Ident(name))) => {
                self.pos += 1;
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or(PolyError::UnknownVariable(name))?;
                Ok(Poly::var(self.vars, i))
            }
            Some((_, Tok::LParen)) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.syntax("expected a number, variable or '('")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

/// Parses an expression over the declared variables into canonical form.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<Poly, PolyError> {
    check_vars(vars)?;
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(PolyError::Empty);
    }
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        end: text.len(),
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(poly)
}

fn check_vars(vars: &[&str]) -> Result<(), PolyError> {
    for (i, v) in vars.iter().enumerate() {
        let ok = v
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(PolyError::BadVariableName(v.to_string()));
        }
        if vars[..i].contains(v) {
            return Err(PolyError::DuplicateVariable(v.to_string()));
        }
    }
    Ok(())
}

/// Identifiers in order of first appearance.
pub fn infer_variables(text: &str) -> Result<Vec<String>, PolyError> {
    let mut out: Vec<String> = Vec::new();
    for (_, t) in tokenize(text)? {
        if let Tok::Ident(name) = t {
            if !out.contains(&name) {
                out.push(name);
            }
        }
    }
    Ok(out)
}
