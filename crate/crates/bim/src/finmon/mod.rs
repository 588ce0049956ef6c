//! Finite Boolean inverse monoids as explicit multiplication tables.
//!
//! A [`FinBim`] owns the full n×n multiplication table, the inverse map, and
//! the designated zero and identity. Everything else — the natural partial
//! order, compatibility, joins, the fixed-point operator, meets, Boolean
//! complements, Green's relations — is derived from the tables. Elements are
//! canonical indices wrapped in [`El`] handles that remember which monoid
//! they belong to, so cross-monoid references are caught as domain errors.
//!
//! Monoids are immutable after construction. Derived relations are either
//! computed eagerly (the order bitsets) or cached write-once (atoms,
//! D-witnesses, principal ideals), so shared monoids can be queried from
//! several threads at once.

mod format;
mod morphism;
mod subalg;
mod validate;

pub use format::{format_bim, parse_bim};
pub use morphism::Morphism;
pub use subalg::SubMonoid;
pub use validate::{validate_tables, RawTables, ValidationOutcome, Violation};

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::Limits;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Handle to an element of a specific [`FinBim`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct El {
    monoid: u64,
    idx: u32,
}

impl El {
    pub fn index(self) -> usize {
        self.idx as usize
    }
}

/// How the two elements of a monoid sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relations {
    pub leq: bool,
    pub compatible: bool,
    pub orthogonal: bool,
    pub d_related: bool,
    pub j_related: bool,
}

/// A finite Boolean inverse monoid given by its multiplication table.
pub struct FinBim {
    id: u64,
    n: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    zero: u32,
    one: u32,
    dom: Vec<u32>,
    ran: Vec<u32>,
    idem: Vec<bool>,
    idems: Vec<u32>,
    units: Vec<u32>,
    /// geq[x] = { y : x <= y } in the natural partial order.
    geq: Vec<BitSet>,
    /// below[x] = { y : y <= x }.
    below: Vec<BitSet>,
    atoms: OnceLock<Vec<u32>>,
    d_witness: OnceLock<HashMap<(u32, u32), u32>>,
    j_ideals: OnceLock<HashMap<u32, BitSet>>,
}

impl std::fmt::Debug for FinBim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FinBim")
            .field("id", &self.id)
            .field("n", &self.n)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .finish()
    }
}

impl FinBim {
    /// Builds a monoid from raw tables after running the full axiom scan.
    ///
    /// The first violated axiom is reported with a witness; a `FinBim` is
    /// only ever constructed from a passing candidate.
    pub fn from_tables(
        n: usize,
        mult: Vec<u32>,
        inv: Vec<u32>,
        zero: u32,
        one: u32,
        limits: &Limits,
    ) -> Result<Arc<FinBim>> {
        let raw = RawTables { n, mult, inv, zero, one };
        match validate_tables(&raw, limits) {
            ValidationOutcome::Pass => Ok(Self::from_tables_trusted(
                raw.n, raw.mult, raw.inv, raw.zero, raw.one,
            )),
            ValidationOutcome::Fail(v) => Err(v.into_error()),
        }
    }

    /// Constructor for tables known to satisfy the axioms (products,
    /// enumerated rook monoids, local bisections, quotients). The axiom scan
    /// stays available through [`validate_tables`] and is exercised on these
    /// constructions by the test suite.
    pub(crate) fn from_tables_trusted(
        n: usize,
        mult: Vec<u32>,
        inv: Vec<u32>,
        zero: u32,
        one: u32,
    ) -> Arc<FinBim> {
        debug_assert_eq!(mult.len(), n * n);
        debug_assert_eq!(inv.len(), n);
        let mut dom = vec![0u32; n];
        let mut ran = vec![0u32; n];
        let mut idem = vec![false; n];
        let mut idems = Vec::new();
        for a in 0..n as u32 {
            dom[a as usize] = mult[inv[a as usize] as usize * n + a as usize];
            ran[a as usize] = mult[a as usize * n + inv[a as usize] as usize];
            if mult[a as usize * n + a as usize] == a {
                idem[a as usize] = true;
                idems.push(a);
            }
        }
        let mut geq = vec![BitSet::new(n); n];
        let mut below = vec![BitSet::new(n); n];
        for a in 0..n {
            let da = dom[a] as usize;
            for b in 0..n {
                // a <= b iff a = b * dom(a)
                if mult[b * n + da] == a as u32 {
                    geq[a].insert(b);
                    below[b].insert(a);
                }
            }
        }
        let units = (0..n as u32)
            .filter(|&g| dom[g as usize] == one && ran[g as usize] == one)
            .collect();
        Arc::new(FinBim {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            n,
            mult,
            inv,
            zero,
            one,
            dom,
            ran,
            idem,
            idems,
            units,
            geq,
            below,
            atoms: OnceLock::new(),
            d_witness: OnceLock::new(),
            j_ideals: OnceLock::new(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Copies the defining tables back out (for re-validation and
    /// serialization).
    pub fn raw_tables(&self) -> RawTables {
        RawTables {
            n: self.n,
            mult: self.mult.clone(),
            inv: self.inv.clone(),
            zero: self.zero,
            one: self.one,
        }
    }

    pub fn el(&self, i: usize) -> Result<El> {
        if i < self.n {
            Ok(El { monoid: self.id, idx: i as u32 })
        } else {
            Err(Error::domain(format!(
                "element index {i} out of range for monoid of size {}",
                self.n
            )))
        }
    }

    pub fn zero_el(&self) -> El {
        El { monoid: self.id, idx: self.zero }
    }

    pub fn one_el(&self) -> El {
        El { monoid: self.id, idx: self.one }
    }

    /// Checks that `a` belongs to this monoid and unwraps the index.
    pub(crate) fn check(&self, a: El) -> Result<u32> {
        if a.monoid == self.id {
            Ok(a.idx)
        } else {
            Err(Error::domain("element belongs to a different monoid"))
        }
    }

    pub(crate) fn wrap(&self, i: u32) -> El {
        El { monoid: self.id, idx: i }
    }

    pub(crate) fn owns(&self, a: El) -> bool {
        a.monoid == self.id
    }

    // ---- raw table access -------------------------------------------------

    #[inline]
    pub(crate) fn m(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.n + b as usize]
    }

    #[inline]
    pub(crate) fn iv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    #[inline]
    pub(crate) fn d(&self, a: u32) -> u32 {
        self.dom[a as usize]
    }

    #[inline]
    pub(crate) fn r(&self, a: u32) -> u32 {
        self.ran[a as usize]
    }

    #[inline]
    pub(crate) fn is_idem_raw(&self, a: u32) -> bool {
        self.idem[a as usize]
    }

    #[inline]
    pub(crate) fn leq_raw(&self, a: u32, b: u32) -> bool {
        self.geq[a as usize].contains(b as usize)
    }

    pub(crate) fn zero_raw(&self) -> u32 {
        self.zero
    }

    pub(crate) fn one_raw(&self) -> u32 {
        self.one
    }

    pub(crate) fn idems_raw(&self) -> &[u32] {
        &self.idems
    }

    pub(crate) fn units_raw(&self) -> &[u32] {
        &self.units
    }

    pub(crate) fn compat_raw(&self, a: u32, b: u32) -> bool {
        self.is_idem_raw(self.m(self.iv(a), b)) && self.is_idem_raw(self.m(a, self.iv(b)))
    }

    pub(crate) fn orth_raw(&self, a: u32, b: u32) -> bool {
        self.m(self.iv(a), b) == self.zero && self.m(a, self.iv(b)) == self.zero
    }

    /// Least upper bound of a compatible pair, if it exists.
    pub(crate) fn join_raw(&self, a: u32, b: u32) -> Option<u32> {
        if !self.compat_raw(a, b) {
            return None;
        }
        let ubs = self.geq[a as usize].intersect(&self.geq[b as usize]);
        let mut cand = ubs.iter().next()?;
        for u in ubs.iter() {
            if self.leq_raw(u as u32, cand as u32) {
                cand = u;
            }
        }
        // cand must be the least upper bound, not merely minimal
        if ubs.iter().all(|u| self.leq_raw(cand as u32, u as u32)) {
            Some(cand as u32)
        } else {
            None
        }
    }

    /// Largest idempotent below `s` (the fixed-point operator).
    pub(crate) fn phi_raw(&self, s: u32) -> u32 {
        let mut cand = self.zero;
        for e in self.below[s as usize].iter() {
            let e = e as u32;
            if self.is_idem_raw(e) && self.leq_raw(cand, e) {
                cand = e;
            }
        }
        debug_assert!(self.below[s as usize]
            .iter()
            .all(|e| !self.is_idem_raw(e as u32) || self.leq_raw(e as u32, cand)));
        cand
    }

    pub(crate) fn meet_raw(&self, a: u32, b: u32) -> u32 {
        self.m(self.phi_raw(self.m(a, self.iv(b))), b)
    }

    /// Boolean-algebra relative complement `f \ e` for idempotents `e <= f`.
    pub(crate) fn complement_raw(&self, e: u32, f: u32) -> Result<u32> {
        for &g in &self.idems {
            if self.leq_raw(g, f) && self.m(g, e) == self.zero && self.join_raw(g, e) == Some(f) {
                return Ok(g);
            }
        }
        Err(Error::internal(
            "idempotent has no complement in a validated Boolean inverse monoid",
        ))
    }

    /// Minimal non-zero elements in the natural partial order.
    pub(crate) fn atoms_raw(&self) -> &[u32] {
        self.atoms.get_or_init(|| {
            (0..self.n as u32)
                .filter(|&a| a != self.zero && self.below[a as usize].count() == 2)
                .collect()
        })
    }

    /// Every (dom, ran) pair realized by some element, with one witness each.
    pub(crate) fn d_witnesses(&self) -> &HashMap<(u32, u32), u32> {
        self.d_witness.get_or_init(|| {
            let mut map = HashMap::new();
            for s in 0..self.n as u32 {
                map.entry((self.d(s), self.r(s))).or_insert(s);
            }
            map
        })
    }

    pub(crate) fn d_related_raw(&self, e: u32, f: u32) -> bool {
        self.d_witnesses().contains_key(&(e, f))
    }

    /// Principal two-sided ideals `SeS` of all idempotents, as element sets.
    pub(crate) fn j_ideals(&self) -> &HashMap<u32, BitSet> {
        self.j_ideals.get_or_init(|| {
            let mut map = HashMap::new();
            for &e in &self.idems {
                let mut set = BitSet::new(self.n);
                for x in 0..self.n as u32 {
                    let xe = self.m(x, e);
                    for y in 0..self.n as u32 {
                        set.insert(self.m(xe, y) as usize);
                    }
                }
                map.insert(e, set);
            }
            map
        })
    }

    pub(crate) fn j_related_raw(&self, a: u32, b: u32) -> bool {
        // SaS = S d(a) S in an inverse semigroup.
        let ideals = self.j_ideals();
        ideals[&self.d(a)] == ideals[&self.d(b)]
    }

    // ---- public operations ------------------------------------------------

    pub fn mul(&self, a: El, b: El) -> Result<El> {
        Ok(self.wrap(self.m(self.check(a)?, self.check(b)?)))
    }

    pub fn inverse(&self, a: El) -> Result<El> {
        Ok(self.wrap(self.iv(self.check(a)?)))
    }

    /// d(a) = a⁻¹a.
    pub fn dom_of(&self, a: El) -> Result<El> {
        Ok(self.wrap(self.d(self.check(a)?)))
    }

    /// r(a) = aa⁻¹.
    pub fn ran_of(&self, a: El) -> Result<El> {
        Ok(self.wrap(self.r(self.check(a)?)))
    }

    /// e(a) = d(a) ∨ r(a).
    pub fn extent(&self, a: El) -> Result<El> {
        let a = self.check(a)?;
        let e = self.join_raw(self.d(a), self.r(a)).ok_or_else(|| {
            Error::internal("idempotents of a validated monoid always have joins")
        })?;
        Ok(self.wrap(e))
    }

    pub fn is_idempotent(&self, a: El) -> Result<bool> {
        Ok(self.is_idem_raw(self.check(a)?))
    }

    pub fn is_unit(&self, a: El) -> Result<bool> {
        let a = self.check(a)?;
        Ok(self.d(a) == self.one && self.r(a) == self.one)
    }

    pub fn leq(&self, a: El, b: El) -> Result<bool> {
        Ok(self.leq_raw(self.check(a)?, self.check(b)?))
    }

    pub fn idempotents(&self) -> Vec<El> {
        self.idems.iter().map(|&e| self.wrap(e)).collect()
    }

    pub fn units(&self) -> Vec<El> {
        self.units.iter().map(|&g| self.wrap(g)).collect()
    }

    pub fn elements(&self) -> Vec<El> {
        (0..self.n as u32).map(|i| self.wrap(i)).collect()
    }

    /// All order/compatibility/Green facts about a pair at once.
    pub fn relations(&self, a: El, b: El) -> Result<Relations> {
        let a = self.check(a)?;
        let b = self.check(b)?;
        Ok(Relations {
            leq: self.leq_raw(a, b),
            compatible: self.compat_raw(a, b),
            orthogonal: self.orth_raw(a, b),
            d_related: self.d_related_raw(self.d(a), self.d(b)),
            j_related: self.j_related_raw(a, b),
        })
    }

    /// Join of a compatible pair. Joins of incompatible pairs do not exist,
    /// so asking for one is a precondition error.
    pub fn join(&self, a: El, b: El) -> Result<El> {
        let ar = self.check(a)?;
        let br = self.check(b)?;
        if !self.compat_raw(ar, br) {
            return Err(Error::precondition(
                "join requires a compatible pair of elements",
            ));
        }
        self.join_raw(ar, br)
            .map(|j| self.wrap(j))
            .ok_or_else(|| Error::internal("compatible pair without a least upper bound"))
    }

    /// The largest idempotent below `a`; equals `a ∧ 1`.
    pub fn fixed_point(&self, a: El) -> Result<El> {
        Ok(self.wrap(self.phi_raw(self.check(a)?)))
    }

    /// Greatest lower bound; meets always exist in a finite Boolean inverse
    /// monoid and are computed through the fixed-point operator.
    pub fn meet(&self, a: El, b: El) -> Result<El> {
        Ok(self.wrap(self.meet_raw(self.check(a)?, self.check(b)?)))
    }

    /// Relative complement `f \ e` for idempotents `e <= f`.
    pub fn complement_in(&self, e: El, f: El) -> Result<El> {
        let e = self.check(e)?;
        let f = self.check(f)?;
        if !self.is_idem_raw(e) || !self.is_idem_raw(f) {
            return Err(Error::domain("complement requires idempotent arguments"));
        }
        if !self.leq_raw(e, f) {
            return Err(Error::domain("complement requires e <= f"));
        }
        Ok(self.wrap(self.complement_raw(e, f)?))
    }

    /// Complement of an idempotent in the unital Boolean algebra E(S).
    pub fn complement(&self, e: El) -> Result<El> {
        self.complement_in(e, self.one_el())
    }

    /// Difference `b \ a = b·(d(b) \ d(a))` for arbitrary `a <= b`.
    pub fn difference(&self, b: El, a: El) -> Result<El> {
        let br = self.check(b)?;
        let ar = self.check(a)?;
        if !self.leq_raw(ar, br) {
            return Err(Error::domain("difference requires a <= b"));
        }
        let rel = self.complement_raw(self.d(ar), self.d(br))?;
        Ok(self.wrap(self.m(br, rel)))
    }

    /// Order-minimal non-zero elements.
    pub fn atoms(&self) -> Vec<El> {
        self.atoms_raw().iter().map(|&a| self.wrap(a)).collect()
    }

    /// Atoms that are idempotent, in canonical index order.
    pub fn atomic_idempotents(&self) -> Vec<El> {
        self.atoms_raw()
            .iter()
            .filter(|&&a| self.is_idem_raw(a))
            .map(|&a| self.wrap(a))
            .collect()
    }

    /// Componentwise direct product.
    pub fn direct_product(
        self: &Arc<FinBim>,
        other: &Arc<FinBim>,
        limits: &Limits,
    ) -> Result<Arc<FinBim>> {
        let n = self
            .n
            .checked_mul(other.n)
            .filter(|&n| n <= limits.max_elements)
            .ok_or_else(|| {
                Error::resource(format!(
                    "direct product would have {} * {} elements (limit {})",
                    self.n, other.n, limits.max_elements
                ))
            })?;
        let k = other.n;
        let pair = |i: u32, j: u32| i * k as u32 + j;
        let mut mult = vec![0u32; n * n];
        for a1 in 0..self.n as u32 {
            for a2 in 0..k as u32 {
                for b1 in 0..self.n as u32 {
                    for b2 in 0..k as u32 {
                        mult[pair(a1, a2) as usize * n + pair(b1, b2) as usize] =
                            pair(self.m(a1, b1), other.m(a2, b2));
                    }
                }
            }
        }
        let mut inv = vec![0u32; n];
        for a1 in 0..self.n as u32 {
            for a2 in 0..k as u32 {
                inv[pair(a1, a2) as usize] = pair(self.iv(a1), other.iv(a2));
            }
        }
        Ok(FinBim::from_tables_trusted(
            n,
            mult,
            inv,
            pair(self.zero, other.zero),
            pair(self.one, other.one),
        ))
    }
}

#[cfg(test)]
mod tests;
