//! Exhaustive axiom validation for candidate multiplication tables.
//!
//! The checks are exact and discrete; there are no tolerances. They run in
//! the order below and stop at the first violation, reporting the axiom name
//! and a witness tuple of element indices:
//!
//! 1. table shape and index range,
//! 2. `zero-ne-one`,
//! 3. `one-identity`, `zero-absorbing`,
//! 4. `associativity` (full n³ scan),
//! 5. `inverse-regular` (a·a⁻¹·a = a), `inverse-coregular` (a⁻¹·a·a⁻¹ = a⁻¹),
//! 6. `idempotents-commute` (makes the semigroup inverse and the declared
//!    inverse map the unique generalized inverse),
//! 7. `idempotent-join` and `idempotent-complement` (E(S) is a unital
//!    Boolean algebra),
//! 8. `compatible-join` (every compatible pair has a least upper bound),
//! 9. `distributivity` (multiplication distributes over compatible joins,
//!    scanned over all compatible pairs and all multipliers).

use crate::error::Error;
use crate::Limits;

/// Unvalidated candidate tables.
#[derive(Debug, Clone)]
pub struct RawTables {
    pub n: usize,
    pub mult: Vec<u32>,
    pub inv: Vec<u32>,
    pub zero: u32,
    pub one: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
}

impl Violation {
    pub fn into_error(self) -> Error {
        Error::Axiom { axiom: self.axiom, witness: self.witness }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationOutcome {
    Pass,
    Fail(Violation),
}

impl ValidationOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, ValidationOutcome::Pass)
    }
}

struct Scan<'a> {
    n: usize,
    mult: &'a [u32],
    inv: &'a [u32],
    zero: u32,
    one: u32,
    idem: Vec<bool>,
    dom: Vec<u32>,
}

impl<'a> Scan<'a> {
    #[inline]
    fn m(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.n + b as usize]
    }

    fn leq(&self, a: u32, b: u32) -> bool {
        self.m(b, self.dom[a as usize]) == a
    }

    fn compatible(&self, a: u32, b: u32) -> bool {
        let ab = self.m(a, self.inv[b as usize]);
        let ba = self.m(self.inv[a as usize], b);
        self.idem[ab as usize] && self.idem[ba as usize]
    }

    /// Least upper bound among all elements, if one exists.
    fn lub(&self, a: u32, b: u32) -> Option<u32> {
        let ubs: Vec<u32> = (0..self.n as u32)
            .filter(|&u| self.leq(a, u) && self.leq(b, u))
            .collect();
        let mut cand = *ubs.first()?;
        for &u in &ubs {
            if self.leq(u, cand) {
                cand = u;
            }
        }
        if ubs.iter().all(|&u| self.leq(cand, u)) {
            Some(cand)
        } else {
            None
        }
    }
}

fn fail(axiom: &'static str, witness: &[u32]) -> ValidationOutcome {
    ValidationOutcome::Fail(Violation {
        axiom,
        witness: witness.iter().map(|&w| w as usize).collect(),
    })
}

/// Runs the complete axiom scan over candidate tables.
pub fn validate_tables(raw: &RawTables, limits: &Limits) -> ValidationOutcome {
    let n = raw.n;
    if n == 0 || raw.mult.len() != n * n || raw.inv.len() != n {
        return fail("table-shape", &[]);
    }
    if n > limits.max_elements {
        return fail("size-bound", &[n as u32]);
    }
    if raw.mult.iter().any(|&x| x as usize >= n)
        || raw.inv.iter().any(|&x| x as usize >= n)
        || raw.zero as usize >= n
        || raw.one as usize >= n
    {
        return fail("table-shape", &[]);
    }
    if raw.zero == raw.one {
        return fail("zero-ne-one", &[raw.zero]);
    }

    let mut s = Scan {
        n,
        mult: &raw.mult,
        inv: &raw.inv,
        zero: raw.zero,
        one: raw.one,
        idem: vec![false; n],
        dom: vec![0; n],
    };
    for a in 0..n as u32 {
        s.idem[a as usize] = s.m(a, a) == a;
    }

    for a in 0..n as u32 {
        if s.m(s.one, a) != a || s.m(a, s.one) != a {
            return fail("one-identity", &[a]);
        }
        if s.m(s.zero, a) != s.zero || s.m(a, s.zero) != s.zero {
            return fail("zero-absorbing", &[a]);
        }
    }

    for a in 0..n as u32 {
        for b in 0..n as u32 {
            let ab = s.m(a, b);
            for c in 0..n as u32 {
                if s.m(ab, c) != s.m(a, s.m(b, c)) {
                    return fail("associativity", &[a, b, c]);
                }
            }
        }
    }

    for a in 0..n as u32 {
        let ai = s.inv[a as usize];
        if s.m(s.m(a, ai), a) != a {
            return fail("inverse-regular", &[a]);
        }
        if s.m(s.m(ai, a), ai) != ai {
            return fail("inverse-coregular", &[a]);
        }
    }

    // Idempotents commute iff a regular semigroup is inverse; together with
    // the previous two checks this makes `inv` the unique inverse map.
    for a in 0..n as u32 {
        if !s.idem[a as usize] {
            continue;
        }
        for b in 0..n as u32 {
            if s.idem[b as usize] && s.m(a, b) != s.m(b, a) {
                return fail("idempotents-commute", &[a, b]);
            }
        }
    }

    for a in 0..n as u32 {
        s.dom[a as usize] = s.m(s.inv[a as usize], a);
    }

    let idems: Vec<u32> = (0..n as u32).filter(|&a| s.idem[a as usize]).collect();
    let mut join_of = vec![u32::MAX; n * n];
    for &e in &idems {
        for &f in &idems {
            match s.lub(e, f) {
                Some(j) if s.idem[j as usize] => join_of[e as usize * n + f as usize] = j,
                _ => return fail("idempotent-join", &[e, f]),
            }
        }
    }

    for &e in &idems {
        let has_complement = idems.iter().any(|&g| {
            s.m(g, e) == s.zero && join_of[e as usize * n + g as usize] == s.one
        });
        if !has_complement {
            return fail("idempotent-complement", &[e]);
        }
    }

    let mut compatible_pairs = Vec::new();
    let mut join_all = vec![u32::MAX; n * n];
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            if s.compatible(a, b) {
                match s.lub(a, b) {
                    Some(j) => {
                        join_all[a as usize * n + b as usize] = j;
                        compatible_pairs.push((a, b, j));
                    }
                    None => return fail("compatible-join", &[a, b]),
                }
            }
        }
    }

    for &(a, b, j) in &compatible_pairs {
        for c in 0..n as u32 {
            let ca = s.m(c, a);
            let cb = s.m(c, b);
            if join_all[ca as usize * n + cb as usize] != s.m(c, j) {
                return fail("distributivity", &[c, a, b]);
            }
            let ac = s.m(a, c);
            let bc = s.m(b, c);
            if join_all[ac as usize * n + bc as usize] != s.m(j, c) {
                return fail("distributivity", &[a, b, c]);
            }
        }
    }

    ValidationOutcome::Pass
}
