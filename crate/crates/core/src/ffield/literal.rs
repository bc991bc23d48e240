//! Shared lexer and recursive-descent parser for element literals (polynomials
//! in `a`) and univariate function expressions (polynomials in `x` with field
//! coefficients).
//!
//! Grammar:
//! ```text
//! expr    := ['+' | '-'] term (('+' | '-') term)*
//! term    := factor (['*'] factor)*
//! factor  := primary ['^' INT]
//! primary := INT | 'a' | 'x' | 'inv' | '(' expr ')'
//! ```
//! `a` may also be spelled `alpha`, `α` or `\alpha`.

use std::collections::BTreeMap;

use super::{Elem, Field};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Alpha,
    X,
    Inv,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        match ch {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let mut v: u64 = 0;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[i].1 as u64 - '0' as u64))
                        .ok_or(Error::Parse { pos, msg: "integer literal too large".into() })?;
                    i += 1;
                }
                out.push((Tok::Int(v), pos));
            }
            '+' => {
                out.push((Tok::Plus, pos));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, pos));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, pos));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, pos));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, pos));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, pos));
                i += 1;
            }
            'α' => {
                out.push((Tok::Alpha, pos));
                i += 1;
            }
            c if c.is_ascii_alphabetic() || c == '\\' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].1.is_ascii_alphabetic() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                let tok = match word.as_str() {
                    "a" | "alpha" | "\\alpha" => Tok::Alpha,
                    "x" => Tok::X,
                    "inv" => Tok::Inv,
                    _ => {
                        return Err(Error::Parse { pos, msg: format!("unknown identifier `{word}`") });
                    }
                };
                out.push((tok, pos));
            }
            c => return Err(Error::Parse { pos, msg: format!("unexpected character `{c}`") }),
        }
    }
    Ok(out)
}

/// Sparse polynomial in `x`: exponent -> nonzero coefficient.
pub(crate) type XPoly = BTreeMap<u64, Elem>;

struct Parser<'f> {
    field: &'f Field,
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    allow_x: bool,
}

impl<'f> Parser<'f> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.at).map(|&(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn q(&self) -> u64 {
        self.field.order() as u64
    }

    fn add_into(&self, acc: &mut XPoly, other: &XPoly, negate: bool) {
        for (&e, &c) in other {
            let c = if negate { self.field.neg(c) } else { c };
            let cur = acc.get(&e).copied().unwrap_or(Elem::ZERO);
            let sum = self.field.add(cur, c);
            if sum.is_zero() {
                acc.remove(&e);
            } else {
                acc.insert(e, sum);
            }
        }
    }

    fn mul(&self, a: &XPoly, b: &XPoly) -> Result<XPoly> {
        let mut out = XPoly::new();
        for (&ea, &ca) in a {
            for (&eb, &cb) in b {
                let e = ea + eb;
                if e >= self.q() {
                    return Err(Error::ExponentOutOfRange { exponent: e, size: self.q() });
                }
                let mut single = XPoly::new();
                single.insert(e, self.field.mul(ca, cb));
                self.add_into(&mut out, &single, false);
            }
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<XPoly> {
        let mut acc = XPoly::new();
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => self.at += 1,
            Some(Tok::Minus) => {
                negate = true;
                self.at += 1;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            self.add_into(&mut acc, &t, negate);
            match self.peek() {
                Some(Tok::Plus) => {
                    negate = false;
                    self.at += 1;
                }
                Some(Tok::Minus) => {
                    negate = true;
                    self.at += 1;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<XPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    let f = self.factor()?;
                    acc = self.mul(&acc, &f)?;
                }
                Some(Tok::Int(_) | Tok::Alpha | Tok::X | Tok::Inv | Tok::LParen) => {
                    let f = self.factor()?;
                    acc = self.mul(&acc, &f)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<XPoly> {
        let start = self.pos();
        let base = self.primary()?;
        if self.peek() != Some(Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let e = match self.peek() {
            Some(Tok::Int(e)) => e,
            _ => return self.err("expected an integer exponent after `^`"),
        };
        self.at += 1;
        if base.len() == 1 {
            let (&be, &bc) = base.iter().next().unwrap();
            let exponent = be.checked_mul(e).unwrap_or(u64::MAX);
            if be > 0 && exponent >= self.q() {
                return Err(Error::ExponentOutOfRange { exponent, size: self.q() });
            }
            let coeff = self.field.pow_u128(bc, e as u128);
            let mut out = XPoly::new();
            if !coeff.is_zero() {
                out.insert(if be == 0 { 0 } else { exponent }, coeff);
            }
            return Ok(out);
        }
        if base.is_empty() {
            let mut out = XPoly::new();
            if e == 0 {
                out.insert(0, Elem::ONE);
            }
            return Ok(out);
        }
        if e > 64 {
            return Err(Error::Parse { pos: start, msg: "power of a multi-term expression is too large".into() });
        }
        let mut out = XPoly::new();
        out.insert(0, Elem::ONE);
        for _ in 0..e {
            out = self.mul(&out, &base)?;
        }
        Ok(out)
    }

    fn primary(&mut self) -> Result<XPoly> {
        let mut out = XPoly::new();
        match self.peek() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                let c = self.field.from_int((v % self.field.p() as u64) as i64);
                if !c.is_zero() {
                    out.insert(0, c);
                }
            }
            Some(Tok::Alpha) => {
                self.at += 1;
                let a = self.field.alpha();
                if !a.is_zero() {
                    out.insert(0, a);
                }
            }
            Some(Tok::X) => {
                if !self.allow_x {
                    return self.err("`x` is not allowed in an element literal");
                }
                self.at += 1;
                if self.q() <= 1 {
                    return self.err("degenerate field");
                }
                out.insert(1, Elem::ONE);
            }
            Some(Tok::Inv) => {
                if !self.allow_x {
                    return self.err("`inv` is not allowed in an element literal");
                }
                self.at += 1;
                out.insert(self.q() - 2, Elem::ONE);
            }
            Some(Tok::LParen) => {
                self.at += 1;
                out = self.expr()?;
                if self.peek() != Some(Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.at += 1;
            }
            Some(t) => return self.err(format!("unexpected token {t:?}")),
            None => return self.err("unexpected end of input"),
        }
        Ok(out)
    }
}

fn run(field: &Field, text: &str, allow_x: bool) -> Result<XPoly> {
    let toks = lex(text)?;
    let mut parser = Parser { field, toks, at: 0, end: text.len(), allow_x };
    if parser.toks.is_empty() {
        return parser.err("empty expression");
    }
    let out = parser.expr()?;
    if parser.at != parser.toks.len() {
        return parser.err("trailing input");
    }
    Ok(out)
}

pub(crate) fn parse_element(field: &Field, text: &str) -> Result<Elem> {
    let poly = run(field, text, false)?;
    Ok(poly.get(&0).copied().unwrap_or(Elem::ZERO))
}

pub(crate) fn parse_x_poly(field: &Field, text: &str) -> Result<XPoly> {
    run(field, text, true)
}
