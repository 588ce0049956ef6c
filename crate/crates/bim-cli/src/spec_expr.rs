//! Parser and evaluator for monoid spec expressions:
//!
//! ```text
//! expr  := symmetric(<n>) | rook(<n>, <group>) | product(<expr>, <expr>, ...)
//!        | table(<path>)
//! group := trivial | cyclic(<k>) | table(<path>)
//! ```
//!
//! Whitespace is ignored outside of paths. Errors carry the column of the
//! offending token (line 1: expressions are single-line).

use std::sync::Arc;

use bim::error::{Error, Result};
use bim::finmon::parse_bim;
use bim::rook::{rook_monoid, symmetric_inverse_monoid, GroupTable};
use bim::{FinBim, Limits};

pub struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let end = rest
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(rest.len());
        if end == 0 {
            return Err(self.err("expected a name"));
        }
        let word = rest[..end].to_string();
        self.pos += end;
        Ok(word)
    }

    fn integer(&mut self) -> Result<usize> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let end = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if end == 0 {
            return Err(self.err("expected an integer"));
        }
        let value = rest[..end]
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        self.pos += end;
        Ok(value)
    }

    /// Everything up to the closing parenthesis, taken verbatim.
    fn path(&mut self) -> Result<String> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let end = rest.find(')').ok_or_else(|| self.err("unterminated path"))?;
        let p = rest[..end].trim().to_string();
        self.pos += end;
        Ok(p)
    }

    fn group(&mut self, limits: &Limits) -> Result<GroupTable> {
        let name = self.ident()?;
        match name.as_str() {
            "trivial" => Ok(GroupTable::trivial()),
            "cyclic" => {
                self.expect('(')?;
                let k = self.integer()?;
                self.expect(')')?;
                GroupTable::cyclic(k)
            }
            "table" => {
                self.expect('(')?;
                let path = self.path()?;
                self.expect(')')?;
                let _ = limits;
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::parse(1, self.pos + 1, format!("cannot read `{path}`: {e}")))?;
                GroupTable::parse(&text)
            }
            other => Err(self.err(format!("unknown group `{other}`"))),
        }
    }

    pub fn expr(&mut self, limits: &Limits) -> Result<Arc<FinBim>> {
        let name = self.ident()?;
        match name.as_str() {
            "symmetric" => {
                self.expect('(')?;
                let n = self.integer()?;
                self.expect(')')?;
                if n == 0 {
                    return Err(self.err("symmetric(n) needs n >= 1"));
                }
                Ok(symmetric_inverse_monoid(n, limits)?.monoid().clone())
            }
            "rook" => {
                self.expect('(')?;
                let n = self.integer()?;
                self.expect(',')?;
                let group = self.group(limits)?;
                self.expect(')')?;
                Ok(rook_monoid(n, group, limits)?.monoid().clone())
            }
            "product" => {
                self.expect('(')?;
                let mut factors = vec![self.expr(limits)?];
                while self.peek() == Some(',') {
                    self.expect(',')?;
                    factors.push(self.expr(limits)?);
                }
                self.expect(')')?;
                let mut product = factors[0].clone();
                for f in &factors[1..] {
                    product = product.direct_product(f, limits)?;
                }
                Ok(product)
            }
            "table" => {
                self.expect('(')?;
                let path = self.path()?;
                self.expect(')')?;
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::parse(1, self.pos + 1, format!("cannot read `{path}`: {e}")))?;
                parse_bim(&text, limits)
            }
            other => Err(self.err(format!("unknown constructor `{other}`"))),
        }
    }

    pub fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

/// Parses and evaluates a spec expression into a validated monoid.
pub fn eval_spec(text: &str, limits: &Limits) -> Result<Arc<FinBim>> {
    let mut p = Parser::new(text);
    let m = p.expr(limits)?;
    p.finish()?;
    Ok(m)
}
