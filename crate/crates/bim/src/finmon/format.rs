//! Multiplication-table text format.
//!
//! ```text
//! bim <n> zero=<i> one=<j>
//! <n lines of n space-separated indices>   (multiplication table)
//! <one line of n indices>                  (inverse map)
//! ```
//!
//! Parsing is strict: unexpected tokens, short or long lines, and trailing
//! content are reported with the 1-based line and column of the first error.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finmon::FinBim;
use crate::Limits;

struct Tok<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn tokens(line: &str, lineno: usize) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain([(line.len(), ' ')]) {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Tok { text: &line[s..i], line: lineno, col: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    out
}

fn parse_index(tok: &Tok<'_>, n: usize, what: &str) -> Result<u32> {
    let v: usize = tok
        .text
        .parse()
        .map_err(|_| Error::parse(tok.line, tok.col, format!("expected {what}, found `{}`", tok.text)))?;
    if v >= n {
        return Err(Error::parse(
            tok.line,
            tok.col,
            format!("{what} {v} out of range (size {n})"),
        ));
    }
    Ok(v as u32)
}

/// Parses and validates a monoid in the table text format.
pub fn parse_bim(text: &str, limits: &Limits) -> Result<Arc<FinBim>> {
    let mut lines = text.lines().enumerate();
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty input"))?;
    let toks = tokens(header, lineno + 1);
    if toks.len() != 4 || toks[0].text != "bim" {
        return Err(Error::parse(
            lineno + 1,
            toks.first().map_or(1, |t| t.col),
            "expected header `bim <n> zero=<i> one=<j>`",
        ));
    }
    let n: usize = toks[1].text.parse().map_err(|_| {
        Error::parse(toks[1].line, toks[1].col, format!("expected size, found `{}`", toks[1].text))
    })?;
    if n == 0 {
        return Err(Error::parse(toks[1].line, toks[1].col, "size must be positive"));
    }
    let keyed = |tok: &Tok<'_>, key: &str| -> Result<u32> {
        let rest = tok.text.strip_prefix(key).and_then(|r| r.strip_prefix('=')).ok_or_else(|| {
            Error::parse(tok.line, tok.col, format!("expected `{key}=<index>`, found `{}`", tok.text))
        })?;
        parse_index(&Tok { text: rest, line: tok.line, col: tok.col + key.len() + 1 }, n, "index")
    };
    let zero = keyed(&toks[2], "zero")?;
    let one = keyed(&toks[3], "one")?;

    let mut mult = Vec::with_capacity(n * n);
    for row in 0..n {
        let (lineno, line) = lines.next().ok_or_else(|| {
            Error::parse(row + 2, 1, format!("expected multiplication row {} of {n}", row + 1))
        })?;
        let toks = tokens(line, lineno + 1);
        if toks.len() != n {
            return Err(Error::parse(
                lineno + 1,
                toks.get(n).map_or(line.len() + 1, |t| t.col),
                format!("expected {n} entries in multiplication row, found {}", toks.len()),
            ));
        }
        for tok in &toks {
            mult.push(parse_index(tok, n, "element index")?);
        }
    }
    let (lineno, line) = lines
        .next()
        .ok_or_else(|| Error::parse(n + 2, 1, "expected inverse row"))?;
    let toks = tokens(line, lineno + 1);
    if toks.len() != n {
        return Err(Error::parse(
            lineno + 1,
            toks.get(n).map_or(line.len() + 1, |t| t.col),
            format!("expected {n} entries in inverse row, found {}", toks.len()),
        ));
    }
    let mut inv = Vec::with_capacity(n);
    for tok in &toks {
        inv.push(parse_index(tok, n, "element index")?);
    }
    for (lineno, line) in lines {
        if let Some(tok) = tokens(line, lineno + 1).first() {
            return Err(Error::parse(tok.line, tok.col, "unexpected content after tables"));
        }
    }
    FinBim::from_tables(n, mult, inv, zero, one, limits)
}

/// Serializes a monoid in the table text format; `parse_bim` reads it back.
pub fn format_bim(s: &FinBim) -> String {
    use std::fmt::Write;
    let n = s.size();
    let mut out = String::new();
    let _ = writeln!(out, "bim {n} zero={} one={}", s.zero_raw(), s.one_raw());
    for a in 0..n as u32 {
        let row: Vec<String> = (0..n as u32).map(|b| s.m(a, b).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    let inv: Vec<String> = (0..n as u32).map(|a| s.iv(a).to_string()).collect();
    let _ = writeln!(out, "{}", inv.join(" "));
    out
}
