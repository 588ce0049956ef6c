//! Finite MV-algebras: validation, the Łukasiewicz chains, Boolean and
//! simplicity tests, isomorphism search, and the text serialization.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::finmon::{ValidationOutcome, Violation};

/// A finite MV-algebra (A, ⊕, ¬, 0) with 1 = ¬0 designated explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvAlg {
    n: usize,
    oplus: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    one: u32,
}

/// Runs the MV axioms over candidate tables:
/// commutative-monoid laws for (A, ⊕, 0), ¬¬x = x, x ⊕ 1 = 1, and
/// ¬(¬x ⊕ y) ⊕ y = ¬(¬y ⊕ x) ⊕ x.
pub fn mv_validate(n: usize, oplus: &[u32], neg: &[u32], zero: u32, one: u32) -> ValidationOutcome {
    let fail = |axiom: &'static str, witness: &[u32]| {
        ValidationOutcome::Fail(Violation {
            axiom,
            witness: witness.iter().map(|&w| w as usize).collect(),
        })
    };
    if n == 0
        || oplus.len() != n * n
        || neg.len() != n
        || zero as usize >= n
        || one as usize >= n
        || oplus.iter().chain(neg).any(|&x| x as usize >= n)
    {
        return fail("mv-table-shape", &[]);
    }
    let op = |a: u32, b: u32| oplus[a as usize * n + b as usize];
    if neg[zero as usize] != one {
        return fail("mv-one-is-neg-zero", &[zero]);
    }
    for a in 0..n as u32 {
        if op(a, zero) != a || op(zero, a) != a {
            return fail("mv-zero-unit", &[a]);
        }
        if neg[neg[a as usize] as usize] != a {
            return fail("mv-double-negation", &[a]);
        }
        if op(a, one) != one {
            return fail("mv-one-absorbing", &[a]);
        }
        for b in 0..n as u32 {
            if op(a, b) != op(b, a) {
                return fail("mv-commutativity", &[a, b]);
            }
            for c in 0..n as u32 {
                if op(op(a, b), c) != op(a, op(b, c)) {
                    return fail("mv-associativity", &[a, b, c]);
                }
            }
            let lhs = op(neg[op(neg[a as usize], b) as usize], b);
            let rhs = op(neg[op(neg[b as usize], a) as usize], a);
            if lhs != rhs {
                return fail("mv-lukasiewicz-axiom", &[a, b]);
            }
        }
    }
    ValidationOutcome::Pass
}

impl MvAlg {
    pub fn new(n: usize, oplus: Vec<u32>, neg: Vec<u32>, zero: u32, one: u32) -> Result<MvAlg> {
        match mv_validate(n, &oplus, &neg, zero, one) {
            ValidationOutcome::Pass => Ok(MvAlg { n, oplus, neg, zero, one }),
            ValidationOutcome::Fail(v) => Err(v.into_error()),
        }
    }

    /// The Łukasiewicz chain with `n` elements: carrier r/(n-1) for
    /// 0 <= r <= n-1, x ⊕ y = min(x + y, 1), ¬x = 1 - x. Element index r
    /// stands for the exact rational r/(n-1).
    pub fn lukasiewicz(n: usize) -> Result<MvAlg> {
        if n < 2 {
            return Err(Error::domain("Łukasiewicz algebras need at least two elements"));
        }
        let top = (n - 1) as u32;
        let mut oplus = vec![0u32; n * n];
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                oplus[a as usize * n + b as usize] = (a + b).min(top);
            }
        }
        let neg = (0..n as u32).map(|a| top - a).collect();
        MvAlg::new(n, oplus, neg, 0, top)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    #[inline]
    pub fn oplus(&self, a: u32, b: u32) -> u32 {
        self.oplus[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// MV order: x <= y iff y = x ⊕ z for some z.
    pub fn leq(&self, x: u32, y: u32) -> bool {
        (0..self.n as u32).any(|z| self.oplus(x, z) == y)
    }

    /// Every element idempotent under ⊕.
    pub fn is_boolean(&self) -> bool {
        (0..self.n as u32).all(|x| self.oplus(x, x) == x)
    }

    /// The smallest ideal containing `x`: downward closed and closed
    /// under ⊕.
    fn ideal_of(&self, x: u32) -> Vec<u32> {
        let mut inside = vec![false; self.n];
        inside[self.zero as usize] = true;
        inside[x as usize] = true;
        loop {
            let mut grew = false;
            let members: Vec<u32> = (0..self.n as u32).filter(|&a| inside[a as usize]).collect();
            for &a in &members {
                for &b in &members {
                    let s = self.oplus(a, b);
                    if !inside[s as usize] {
                        inside[s as usize] = true;
                        grew = true;
                    }
                }
                for below in 0..self.n as u32 {
                    if !inside[below as usize] && self.leq(below, a) {
                        inside[below as usize] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                return members;
            }
        }
    }

    /// Only ideals are {0} and the whole algebra.
    pub fn is_simple(&self) -> bool {
        (0..self.n as u32)
            .filter(|&x| x != self.zero)
            .all(|x| self.ideal_of(x).len() == self.n)
    }

    /// Backtracking search for an isomorphism onto `other`; returns the
    /// image table indexed by `self` elements.
    pub fn iso(&self, other: &MvAlg) -> Option<Vec<u32>> {
        if self.n != other.n {
            return None;
        }
        let mut map = vec![u32::MAX; self.n];
        let mut used = vec![false; self.n];
        map[self.zero as usize] = other.zero;
        used[other.zero as usize] = true;
        if self.one != self.zero {
            if used[other.one as usize] {
                return None;
            }
            map[self.one as usize] = other.one;
            used[other.one as usize] = true;
        }
        let order: Vec<u32> = (0..self.n as u32)
            .filter(|&x| map[x as usize] == u32::MAX)
            .collect();
        fn consistent(a: &MvAlg, b: &MvAlg, map: &[u32]) -> bool {
            for x in 0..a.n as u32 {
                if map[x as usize] == u32::MAX {
                    continue;
                }
                let nx = a.neg(x);
                if map[nx as usize] != u32::MAX && b.neg(map[x as usize]) != map[nx as usize] {
                    return false;
                }
                for y in 0..a.n as u32 {
                    if map[y as usize] == u32::MAX {
                        continue;
                    }
                    let s = a.oplus(x, y);
                    if map[s as usize] != u32::MAX
                        && b.oplus(map[x as usize], map[y as usize]) != map[s as usize]
                    {
                        return false;
                    }
                }
            }
            true
        }
        fn rec(a: &MvAlg, b: &MvAlg, order: &[u32], pos: usize, map: &mut [u32], used: &mut [bool]) -> bool {
            if pos == order.len() {
                return consistent(a, b, map);
            }
            let x = order[pos] as usize;
            for y in 0..b.n as u32 {
                if used[y as usize] {
                    continue;
                }
                map[x] = y;
                used[y as usize] = true;
                if consistent(a, b, map) && rec(a, b, order, pos + 1, map, used) {
                    return true;
                }
                used[y as usize] = false;
                map[x] = u32::MAX;
            }
            false
        }
        if rec(self, other, &order, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    /// Text serialization:
    ///
    /// ```text
    /// mv <n>
    /// <n lines of n indices>    (⊕ table)
    /// <one line of n indices>   (¬ map)
    /// zero=<i> one=<j>
    /// ```
    pub fn format(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "mv {}", self.n);
        for a in 0..self.n as u32 {
            let row: Vec<String> = (0..self.n as u32).map(|b| self.oplus(a, b).to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        let neg: Vec<String> = (0..self.n as u32).map(|a| self.neg(a).to_string()).collect();
        let _ = writeln!(out, "{}", neg.join(" "));
        let _ = writeln!(out, "zero={} one={}", self.zero, self.one);
        out
    }

    pub fn parse(text: &str) -> Result<MvAlg> {
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let header: Vec<&str> = lines
            .first()
            .ok_or_else(|| Error::parse(1, 1, "empty MV-algebra text"))?
            .split_whitespace()
            .collect();
        if header.len() != 2 || header[0] != "mv" {
            return Err(Error::parse(1, 1, "expected header `mv <n>`"));
        }
        let n: usize = header[1]
            .parse()
            .map_err(|_| Error::parse(1, 1, format!("bad size `{}`", header[1])))?;
        if lines.len() != n + 3 {
            return Err(Error::parse(1, 1, format!("expected {} lines, found {}", n + 3, lines.len())));
        }
        let parse_row = |line: &str, lineno: usize| -> Result<Vec<u32>> {
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(lineno, 1, format!("bad index `{t}`"))))
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::parse(lineno, 1, format!("expected {n} entries")));
            }
            Ok(row)
        };
        let mut oplus = Vec::with_capacity(n * n);
        for (i, line) in lines[1..=n].iter().enumerate() {
            oplus.extend(parse_row(line, i + 2)?);
        }
        let neg = parse_row(lines[n + 1], n + 2)?;
        let tail = lines[n + 2];
        let mut zero = None;
        let mut one = None;
        for tok in tail.split_whitespace() {
            if let Some(v) = tok.strip_prefix("zero=") {
                zero = v.parse::<u32>().ok();
            } else if let Some(v) = tok.strip_prefix("one=") {
                one = v.parse::<u32>().ok();
            }
        }
        let (zero, one) = zero.zip(one).ok_or_else(|| {
            Error::parse(n + 3, 1, "expected trailing `zero=<i> one=<j>`")
        })?;
        MvAlg::new(n, oplus, neg, zero, one)
    }
}

/// The unique homomorphism Ł_m → Ł_n when (m-1) divides (n-1): the atom
/// 1/(m-1) is forced onto 1/(m-1) written over denominator n-1. Returns the
/// full image table, or `None` when no homomorphism exists.
pub fn mv_hom(m: usize, n: usize) -> Result<Option<Vec<u32>>> {
    if m < 2 || n < 2 {
        return Err(Error::domain("Łukasiewicz algebras need at least two elements"));
    }
    if !(n - 1).is_multiple_of(m - 1) {
        return Ok(None);
    }
    let step = ((n - 1) / (m - 1)) as u32;
    Ok(Some((0..m as u32).map(|r| r * step).collect()))
}

/// Checks that a map between MV-algebras preserves ⊕, ¬, 0 and 1.
pub fn is_mv_homomorphism(a: &MvAlg, b: &MvAlg, map: &[u32]) -> bool {
    if map.len() != a.size() || map.iter().any(|&x| (x as usize) >= b.size()) {
        return false;
    }
    if map[a.zero() as usize] != b.zero() || map[a.one() as usize] != b.one() {
        return false;
    }
    for x in 0..a.size() as u32 {
        if map[a.neg(x) as usize] != b.neg(map[x as usize]) {
            return false;
        }
        for y in 0..a.size() as u32 {
            if map[a.oplus(x, y) as usize] != b.oplus(map[x as usize], map[y as usize]) {
                return false;
            }
        }
    }
    true
}

/// Identifies a finite simple MV-algebra with the Łukasiewicz chain of its
/// cardinality, when possible.
pub fn lukasiewicz_identification(m: &MvAlg) -> Result<Option<HashMap<u32, u32>>> {
    if !m.is_simple() {
        return Ok(None);
    }
    let chain = MvAlg::lukasiewicz(m.size())?;
    Ok(m
        .iso(&chain)
        .map(|map| map.iter().enumerate().map(|(i, &x)| (i as u32, x)).collect()))
}
