//! Text input for polynomials: integers, variables, `+ - *`, `^int` and
//! parentheses. Negative powers are only accepted on units.

use std::sync::Arc;

use dashu_int::IBig;

use super::poly::LaurentPoly;
use super::varset::VarSet;
use crate::error::{Error, Result};

impl LaurentPoly {
    pub fn parse(vars: &Arc<VarSet>, src: &str) -> Result<Self> {
        let mut p = Parser {
            vars,
            src: src.as_bytes(),
            pos: 0,
        };
        let v = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    vars: &'a Arc<VarSet>,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero(self.vars);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.product()?;
            acc = if sign > 0 { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc * self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = if self.peek() == Some(b'(') {
            self.pos += 1;
            let e = self.int_exponent()?;
            if self.peek() != Some(b')') {
                return Err(self.err("expected `)`"));
            }
            self.pos += 1;
            e
        } else {
            self.int_exponent()?
        };
        base.pow(e).map_err(|_| self.err("negative power of a non-unit"))
    }

    fn int_exponent(&mut self) -> Result<i64> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: i64 = digits.parse().map_err(|_| self.err("expected exponent"))?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: IBig = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(LaurentPoly::constant(self.vars, n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                LaurentPoly::var(self.vars, name)
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_parens() {
        let v = VarSet::new(["q", "t"]).unwrap();
        let a = LaurentPoly::parse(&v, "-(1 + q)^2 * t^-1 + 2").unwrap();
        let b = LaurentPoly::parse(&v, "2 - t^(-1) - 2*q*t^-1 - q^2*t^-1").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors() {
        let v = VarSet::new(["q"]).unwrap();
        assert!(LaurentPoly::parse(&v, "(1+q)^-1").is_err());
        assert!(LaurentPoly::parse(&v, "x").is_err());
        assert!(LaurentPoly::parse(&v, "q +").is_err());
        assert!(LaurentPoly::parse(&v, "q q").is_err());
    }
}
