//! Text syntax for elements of F_q, F_q[T] and F_q(T).
//!
//! Grammar: sums and differences of products, `*` optional, `/` for
//! division, `^` with an integer exponent (a negative exponent inverts),
//! parentheses, integer literals (reduced mod p), `T`, and the field
//! generator symbol (default `u`). Whitespace is ignored.

use crate::error::{Error, Result};
use crate::fq::{Field, FqElem};
use crate::polyring::Poly;
use crate::ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let v = lit.parse().map_err(|_| Error::Parse(format!("integer literal too large: {}", lit)))?;
                out.push(Tok::Int(v));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' | '\u{b7}' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            other => return Err(Error::Parse(format!("unexpected character '{}'", other))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a Field,
    var: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                // implicit multiplication: "2T", "T(T+1)", "(T+1)(T+2)"
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.next() {
            Some(Tok::Int(e)) => e,
            other => return Err(Error::Parse(format!("expected integer exponent, found {:?}", other))),
        };
        if e > 1 << 16 {
            return Err(Error::Parse(format!("exponent {} too large", e)));
        }
        let r = base.pow(e);
        if neg {
            r.inv()
        } else {
            Ok(r)
        }
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let f = self.field;
        match self.next() {
            Some(Tok::Int(n)) => Ok(RatFunc::constant(f, f.from_int((n % f.p() as u64) as i64))),
            Some(Tok::Ident(name)) => {
                if name == self.var {
                    Ok(RatFunc::t(f))
                } else if name == f.symbol() && f.degree() > 1 {
                    Ok(RatFunc::constant(f, f.generator()))
                } else {
                    Err(Error::Parse(format!("unknown symbol '{}'", name)))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse("unbalanced parentheses".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {:?}", other))),
        }
    }
}

pub fn parse_ratfunc(field: &Field, s: &str) -> Result<RatFunc> {
    parse_in(field, s, "T")
}

fn parse_in(field: &Field, s: &str, var: &str) -> Result<RatFunc> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { field, var, toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in '{}'", s)));
    }
    Ok(out)
}

pub fn parse_poly(field: &Field, s: &str) -> Result<Poly> {
    let r = parse_ratfunc(field, s)?;
    r.as_poly()
        .cloned()
        .ok_or_else(|| Error::Parse(format!("'{}' is not a polynomial", s)))
}

/// Parses a polynomial in the variable `var` instead of `T`, e.g. a field
/// modulus `u^2+2*u+2` over the prime field.
pub fn parse_poly_in(field: &Field, s: &str, var: &str) -> Result<Poly> {
    let r = parse_in(field, s, var)?;
    r.as_poly()
        .cloned()
        .ok_or_else(|| Error::Parse(format!("'{}' is not a polynomial", s)))
}

pub fn parse_elem(field: &Field, s: &str) -> Result<FqElem> {
    let r = parse_ratfunc(field, s)?;
    r.as_constant()
        .ok_or_else(|| Error::Parse(format!("'{}' is not a field constant", s)))
}

/// Splits on commas outside parentheses.
pub fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}
