//! Rook matrices over a group with zero adjoined.
//!
//! An n×n matrix over G⁰ is a rook matrix when it has at most one non-zero
//! entry in each row and each column (over G⁰ two distinct group entries in
//! a row or column always violate the orthogonality conditions, so the
//! classical "partial permutation with labels" picture is exact). We store
//! the column map: `colmap[j] = Some((i, g))` when entry (i, j) is the group
//! element `g`. Multiplication composes the column maps and multiplies the
//! labels; the star is the transposed map with inverted labels.

use crate::error::{Error, Result};
use crate::rook::GroupTable;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RookMatrix {
    n: usize,
    colmap: Vec<Option<(u32, u32)>>,
}

impl RookMatrix {
    pub fn zero(n: usize) -> RookMatrix {
        RookMatrix { n, colmap: vec![None; n] }
    }

    pub fn identity(n: usize, group: &GroupTable) -> RookMatrix {
        RookMatrix {
            n,
            colmap: (0..n as u32).map(|j| Some((j, group.id()))).collect(),
        }
    }

    /// The atomic idempotent E_i (1-based) with the identity at (i, i).
    pub fn atomic_idempotent(n: usize, i: usize, group: &GroupTable) -> RookMatrix {
        assert!((1..=n).contains(&i));
        let mut m = RookMatrix::zero(n);
        m.colmap[i - 1] = Some(((i - 1) as u32, group.id()));
        m
    }

    /// Single non-zero entry `g` at row `i`, column `j` (0-based).
    pub fn single(n: usize, i: usize, j: usize, g: u32) -> RookMatrix {
        let mut m = RookMatrix::zero(n);
        m.colmap[j] = Some((i as u32, g));
        m
    }

    pub fn from_colmap(n: usize, colmap: Vec<Option<(u32, u32)>>) -> Result<RookMatrix> {
        if colmap.len() != n {
            return Err(Error::domain("column map length differs from size"));
        }
        let mut seen = vec![false; n];
        for e in colmap.iter().flatten() {
            let row = e.0 as usize;
            if row >= n {
                return Err(Error::domain("row index out of range"));
            }
            if std::mem::replace(&mut seen[row], true) {
                return Err(Error::domain("two non-zero entries share a row"));
            }
        }
        Ok(RookMatrix { n, colmap })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn colmap(&self) -> &[Option<(u32, u32)>] {
        &self.colmap
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<u32> {
        match self.colmap[j] {
            Some((r, g)) if r as usize == i => Some(g),
            _ => None,
        }
    }

    pub fn rank(&self) -> usize {
        self.colmap.iter().flatten().count()
    }

    pub fn mul(&self, other: &RookMatrix, group: &GroupTable) -> RookMatrix {
        debug_assert_eq!(self.n, other.n);
        let colmap = other
            .colmap
            .iter()
            .map(|e| match e {
                Some((k, h)) => self.colmap[*k as usize].map(|(i, g)| (i, group.m(g, *h))),
                None => None,
            })
            .collect();
        RookMatrix { n: self.n, colmap }
    }

    /// Transpose with entrywise inverse.
    pub fn star(&self, group: &GroupTable) -> RookMatrix {
        let mut colmap = vec![None; self.n];
        for (j, e) in self.colmap.iter().enumerate() {
            if let Some((i, g)) = e {
                colmap[*i as usize] = Some((j as u32, group.inv(*g)));
            }
        }
        RookMatrix { n: self.n, colmap }
    }

    pub fn is_idempotent(&self, group: &GroupTable) -> bool {
        self.colmap
            .iter()
            .enumerate()
            .all(|(j, e)| match e {
                None => true,
                Some((i, g)) => *i as usize == j && *g == group.id(),
            })
    }

    /// Natural partial order: labeled-graph inclusion.
    pub fn leq(&self, other: &RookMatrix) -> bool {
        self.colmap
            .iter()
            .zip(&other.colmap)
            .all(|(a, b)| a.is_none() || a == b)
    }

    pub fn compatible(&self, other: &RookMatrix, group: &GroupTable) -> bool {
        self.star(group).mul(other, group).is_idempotent(group)
            && self.mul(&other.star(group), group).is_idempotent(group)
    }

    pub fn orthogonal(&self, other: &RookMatrix, group: &GroupTable) -> bool {
        let zero = RookMatrix::zero(self.n);
        self.star(group).mul(other, group) == zero
            && self.mul(&other.star(group), group) == zero
    }

    /// Join of a compatible pair: the union of the labeled graphs.
    pub fn join(&self, other: &RookMatrix, group: &GroupTable) -> Result<RookMatrix> {
        if !self.compatible(other, group) {
            return Err(Error::precondition("join requires a compatible pair"));
        }
        let colmap = self
            .colmap
            .iter()
            .zip(&other.colmap)
            .map(|(a, b)| a.or(*b))
            .collect();
        RookMatrix::from_colmap(self.n, colmap)
    }

    /// Meet: the intersection of the labeled graphs.
    pub fn meet(&self, other: &RookMatrix) -> RookMatrix {
        let colmap = self
            .colmap
            .iter()
            .zip(&other.colmap)
            .map(|(a, b)| if a == b { *a } else { None })
            .collect();
        RookMatrix { n: self.n, colmap }
    }

    /// Largest idempotent below the matrix: the fixed diagonal part.
    pub fn fixed_point(&self, group: &GroupTable) -> RookMatrix {
        let colmap = self
            .colmap
            .iter()
            .enumerate()
            .map(|(j, e)| match e {
                Some((i, g)) if *i as usize == j && *g == group.id() => *e,
                _ => None,
            })
            .collect();
        RookMatrix { n: self.n, colmap }
    }

    /// Positions (0-based) of the diagonal identity entries of an idempotent.
    pub fn diag_support(&self) -> Vec<usize> {
        self.colmap
            .iter()
            .enumerate()
            .filter_map(|(j, e)| e.map(|_| j))
            .collect()
    }

    /// `s`-fold block-diagonal repetition.
    pub fn block_repeat(&self, s: usize) -> RookMatrix {
        let n = self.n * s;
        let mut colmap = vec![None; n];
        for b in 0..s {
            for (j, e) in self.colmap.iter().enumerate() {
                colmap[b * self.n + j] = e.map(|(i, g)| ((b * self.n) as u32 + i, g));
            }
        }
        RookMatrix { n, colmap }
    }

    /// Parses the rook matrix literal: `n` lines of `n` entries, `.` for the
    /// zero and a group-element index otherwise.
    pub fn parse(text: &str, group: &GroupTable) -> Result<RookMatrix> {
        let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let n = rows.len();
        if n == 0 {
            return Err(Error::parse(1, 1, "empty rook matrix literal"));
        }
        let mut colmap: Vec<Option<(u32, u32)>> = vec![None; n];
        let mut row_used = vec![false; n];
        for (i, row) in rows.iter().enumerate() {
            let toks: Vec<&str> = row.split_whitespace().collect();
            if toks.len() != n {
                return Err(Error::parse(
                    i + 1,
                    1,
                    format!("expected {n} entries, found {}", toks.len()),
                ));
            }
            for (j, tok) in toks.iter().enumerate() {
                if *tok == "." {
                    continue;
                }
                let g: u32 = tok.parse().map_err(|_| {
                    Error::parse(i + 1, j + 1, format!("expected `.` or group index, found `{tok}`"))
                })?;
                if g as usize >= group.order() {
                    return Err(Error::parse(
                        i + 1,
                        j + 1,
                        format!("group index {g} out of range (order {})", group.order()),
                    ));
                }
                if colmap[j].is_some() {
                    return Err(Error::parse(i + 1, j + 1, "two non-zero entries in one column"));
                }
                if std::mem::replace(&mut row_used[i], true) {
                    return Err(Error::parse(i + 1, j + 1, "two non-zero entries in one row"));
                }
                colmap[j] = Some((i as u32, g));
            }
        }
        Ok(RookMatrix { n, colmap })
    }

    pub fn format(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| match self.entry(i, j) {
                    Some(g) => g.to_string(),
                    None => ".".to_string(),
                })
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    /// Sort key realizing the canonical matrix order (atomic idempotents
    /// come out as E_1 < E_2 < ... < E_n).
    pub(crate) fn sort_key(&self) -> Vec<(u8, u32, u32)> {
        self.colmap
            .iter()
            .map(|e| match e {
                Some((i, g)) => (0u8, *i, *g),
                None => (1u8, 0, 0),
            })
            .collect()
    }
}
