//! Finite groups as explicit tables; entries of rook matrices live in a
//! group with a zero adjoined.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    id: u32,
}

impl GroupTable {
    pub fn new(order: usize, mult: Vec<u32>, inv: Vec<u32>, id: u32) -> Result<GroupTable> {
        let g = GroupTable { order, mult, inv, id };
        g.validate()?;
        Ok(g)
    }

    pub fn trivial() -> GroupTable {
        GroupTable { order: 1, mult: vec![0], inv: vec![0], id: 0 }
    }

    pub fn cyclic(k: usize) -> Result<GroupTable> {
        if k == 0 {
            return Err(Error::domain("cyclic group order must be positive"));
        }
        let mut mult = vec![0u32; k * k];
        for a in 0..k {
            for b in 0..k {
                mult[a * k + b] = ((a + b) % k) as u32;
            }
        }
        let inv = (0..k).map(|a| ((k - a) % k) as u32).collect();
        Ok(GroupTable { order: k, mult, inv, id: 0 })
    }

    fn validate(&self) -> Result<()> {
        let n = self.order;
        if n == 0 || self.mult.len() != n * n || self.inv.len() != n || self.id as usize >= n {
            return Err(Error::domain("malformed group tables"));
        }
        if self.mult.iter().chain(&self.inv).any(|&x| x as usize >= n) {
            return Err(Error::domain("group table entry out of range"));
        }
        for a in 0..n as u32 {
            if self.m(self.id, a) != a || self.m(a, self.id) != a {
                return Err(Error::Axiom { axiom: "group-identity", witness: vec![a as usize] });
            }
            if self.m(a, self.inv(a)) != self.id || self.m(self.inv(a), a) != self.id {
                return Err(Error::Axiom { axiom: "group-inverse", witness: vec![a as usize] });
            }
            for b in 0..n as u32 {
                for c in 0..n as u32 {
                    if self.m(self.m(a, b), c) != self.m(a, self.m(b, c)) {
                        return Err(Error::Axiom {
                            axiom: "group-associativity",
                            witness: vec![a as usize, b as usize, c as usize],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    #[inline]
    pub fn m(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// Parses the group table text format:
    ///
    /// ```text
    /// group <n> id=<i>
    /// <n lines of n indices>
    /// <one line of n indices>
    /// ```
    pub fn parse(text: &str) -> Result<GroupTable> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (l0, header) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty group table"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "group" {
            return Err(Error::parse(l0 + 1, 1, "expected header `group <n> id=<i>`"));
        }
        let n: usize = toks[1]
            .parse()
            .map_err(|_| Error::parse(l0 + 1, 1, format!("bad group order `{}`", toks[1])))?;
        let id: u32 = toks[2]
            .strip_prefix("id=")
            .and_then(|r| r.parse().ok())
            .ok_or_else(|| Error::parse(l0 + 1, 1, "expected `id=<index>`"))?;
        let mut rows = Vec::new();
        for _ in 0..=n {
            let (li, line) = lines
                .next()
                .ok_or_else(|| Error::parse(l0 + 2, 1, format!("expected {n} table rows and an inverse row")))?;
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(li + 1, 1, format!("bad index `{t}`"))))
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::parse(li + 1, 1, format!("expected {n} entries")));
            }
            rows.push(row);
        }
        let inv = rows.pop().expect("n+1 rows were read");
        GroupTable::new(n, rows.concat(), inv, id)
    }

    pub fn format(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "group {} id={}", self.order, self.id);
        for a in 0..self.order as u32 {
            let row: Vec<String> = (0..self.order as u32).map(|b| self.m(a, b).to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        let inv: Vec<String> = (0..self.order as u32).map(|a| self.inv(a).to_string()).collect();
        let _ = writeln!(out, "{}", inv.join(" "));
        out
    }
}
