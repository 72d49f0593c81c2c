//! Recursive-descent reader for the canonical polynomial notation
//! (`X^2 + (t^2 + 1)*X - t^5`, `2*t^28`, `0`).

use crate::arith::FpElem;
use crate::error::{Error, Result};
use crate::poly::{TPoly, XPoly};

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    p: u64,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| self.err("expected a number"))
    }

    fn exponent(&mut self) -> Result<usize> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            Ok(self.number()? as usize)
        } else {
            Ok(1)
        }
    }

    fn expr(&mut self) -> Result<XPoly> {
        let mut acc = XPoly::zero(self.p);
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                negate = true;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let term = self.term()?;
            acc = if negate { &acc - &term } else { &acc + &term };
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<XPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<XPoly> {
        let p = self.p;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b't') => {
                self.pos += 1;
                let e = self.exponent()?;
                Ok(XPoly::constant(TPoly::monomial(FpElem::one(p), e)))
            }
            Some(b'X') => {
                self.pos += 1;
                let e = self.exponent()?;
                Ok(XPoly::monomial(TPoly::one(p), e))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(XPoly::constant(TPoly::constant(FpElem::new((n % p) as i64, p))))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

pub(crate) fn parse_xpoly(s: &str, p: u64) -> Result<XPoly> {
    let mut parser = Parser { src: s, bytes: s.as_bytes(), pos: 0, p };
    let out = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.err("trailing input"));
    }
    Ok(out)
}
