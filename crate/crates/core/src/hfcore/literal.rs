//! Text syntax for hereditarily finite sets.
//!
//! `{}` and `{a,b,...}` list members, `#n` is the von Neumann ordinal `n`, and
//! `<a,b>` is the Kuratowski pair. The printer prefers `#n`, then `<a,b>`,
//! then explicit braces, and never emits whitespace.

use std::fmt;
use std::str::FromStr;

use super::HfSet;
use crate::error::{Error, Result};

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_ordinal() {
            return write!(f, "#{n}");
        }
        if let Some((x, y)) = self.as_pair() {
            return write!(f, "<{x},{y}>");
        }
        f.write_str("{")?;
        for (i, m) in self.members().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for HfSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_literal(s)
    }
}

/// Parses one literal spanning the whole input (surrounding whitespace allowed).
pub fn parse_literal(input: &str) -> Result<HfSet> {
    let mut p = LiteralParser::new(input);
    let value = p.set()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.error("trailing characters after literal"));
    }
    Ok(value)
}

pub(crate) struct LiteralParser<'a> {
    bytes: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> LiteralParser<'a> {
    pub(crate) fn new(input: &'a str) -> Self {
        Self {
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn at(input: &'a str, pos: usize) -> Self {
        Self {
            bytes: input.as_bytes(),
            pos,
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::parse(1, self.pos + 1, message)
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    pub(crate) fn set(&mut self) -> Result<HfSet> {
        self.skip_ws();
        match self.peek() {
            Some(b'{') => {
                self.pos += 1;
                let mut members = Vec::new();
                self.skip_ws();
                if self.peek() == Some(b'}') {
                    self.pos += 1;
                    return Ok(HfSet::empty());
                }
                loop {
                    members.push(self.set()?);
                    self.skip_ws();
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b'}') => {
                            self.pos += 1;
                            return Ok(HfSet::from_members(members));
                        }
                        _ => return Err(self.error("expected `,` or `}`")),
                    }
                }
            }
            Some(b'<') => {
                self.pos += 1;
                let x = self.set()?;
                self.expect(b',')?;
                let y = self.set()?;
                self.expect(b'>')?;
                Ok(HfSet::pair(x, y))
            }
            Some(b'#') => {
                self.pos += 1;
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.error("expected digits after `#`"));
                }
                let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let n: usize = digits.parse().map_err(|_| self.error("ordinal out of range"))?;
                if n > 100_000 {
                    return Err(self.error("ordinal too large"));
                }
                Ok(HfSet::ordinal(n))
            }
            _ => Err(self.error("expected `{`, `<` or `#`")),
        }
    }
}
