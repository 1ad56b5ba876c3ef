//! Shared helpers for the line-oriented text formats.

use crate::error::{Error, Result};
use crate::hfcore::literal::LiteralParser;
use crate::hfcore::HfSet;

pub(crate) struct Line<'a> {
    pub number: usize,
    pub text: &'a str,
    pub pos: usize,
}

impl<'a> Line<'a> {
    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.number, self.pos + 1, message)
    }

    pub fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(|c: char| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    pub fn word(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| c.is_ascii_whitespace()).unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("unexpected end of line"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    pub fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        let w = self.word()?;
        w.parse().map_err(|_| {
            self.pos = start;
            self.skip_ws();
            self.error(format!("expected a number, found `{w}`"))
        })
    }

    pub fn literal(&mut self) -> Result<HfSet> {
        let mut p = LiteralParser::at(self.text, self.pos);
        let value = p.set().map_err(|e| e.at_line(self.number, 0))?;
        self.pos = p.pos;
        Ok(value)
    }

    pub fn arrow(&mut self) -> Result<()> {
        self.skip_ws();
        if self.text[self.pos..].starts_with("->") {
            self.pos += 2;
            Ok(())
        } else {
            Err(self.error("expected `->`"))
        }
    }

    pub fn end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos < self.text.len() {
            Err(self.error("trailing characters"))
        } else {
            Ok(())
        }
    }
}

pub(crate) fn strip_comment(raw: &str) -> &str {
    // `#` starts a comment only at the beginning of a line or after whitespace;
    // elsewhere it is the ordinal shorthand
    let bytes = raw.as_bytes();
    for (k, &c) in bytes.iter().enumerate() {
        if c == b'#' && (k == 0 || bytes[k - 1].is_ascii_whitespace()) {
            let next = bytes.get(k + 1);
            if !next.is_some_and(|c| c.is_ascii_digit()) {
                return &raw[..k];
            }
        }
    }
    raw
}
