//! Submonoid and subalgebra constructions inside a fixed ambient monoid.

use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::finmon::{El, FinBim, Morphism};

/// A subset of an ambient monoid that is closed under multiplication and
/// inverses. Joins, meets, and complements always refer to the ambient monoid.
#[derive(Clone)]
pub struct SubMonoid {
    parent: Arc<FinBim>,
    elements: Vec<u32>,
}

impl std::fmt::Debug for SubMonoid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubMonoid")
            .field("parent", &self.parent.size())
            .field("elements", &self.elements)
            .finish()
    }
}

impl SubMonoid {
    pub(crate) fn from_raw(parent: Arc<FinBim>, mut elements: Vec<u32>) -> SubMonoid {
        elements.sort_unstable();
        elements.dedup();
        SubMonoid { parent, elements }
    }

    pub fn parent(&self) -> &Arc<FinBim> {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> Vec<El> {
        self.elements.iter().map(|&i| self.parent.wrap(i)).collect()
    }

    pub fn contains(&self, a: El) -> bool {
        self.parent.owns(a) && self.elements.binary_search(&(a.index() as u32)).is_ok()
    }

    /// True when the subset is a subalgebra of the parent.
    pub fn is_subalgebra(&self) -> Result<bool> {
        self.parent.is_subalgebra(&self.elements())
    }

    /// Extracts the subset as a standalone monoid, together with the
    /// inclusion morphism back into the parent.
    pub fn materialize(&self) -> Result<(Arc<FinBim>, Morphism)> {
        let p = &self.parent;
        let k = self.elements.len();
        let pos = |x: u32| -> Result<u32> {
            self.elements
                .binary_search(&x)
                .map(|i| i as u32)
                .map_err(|_| Error::precondition("subset is not closed under multiplication"))
        };
        let mut mult = vec![0u32; k * k];
        let mut inv = vec![0u32; k];
        for (i, &a) in self.elements.iter().enumerate() {
            inv[i] = pos(p.iv(a))?;
            for (j, &b) in self.elements.iter().enumerate() {
                mult[i * k + j] = pos(p.m(a, b))?;
            }
        }
        let zero = pos(p.zero_raw())
            .map_err(|_| Error::precondition("subset does not contain zero"))?;
        let one = pos(p.one_raw())
            .map_err(|_| Error::precondition("subset does not contain one"))?;
        let sub = FinBim::from_tables_trusted(k, mult, inv, zero, one);
        let inclusion = Morphism::new(
            sub.clone(),
            p.clone(),
            self.elements.clone(),
        )?;
        Ok((sub, inclusion))
    }
}

impl FinBim {
    fn check_all(&self, els: &[El]) -> Result<Vec<u32>> {
        els.iter().map(|&e| self.check(e)).collect()
    }

    /// Wraps an element list as a [`SubMonoid`] view (deduplicated; closure
    /// properties are checked by `is_subalgebra`/`materialize`, not here).
    pub fn submonoid(self: &Arc<Self>, elements: &[El]) -> Result<SubMonoid> {
        let raw = self.check_all(elements)?;
        Ok(SubMonoid::from_raw(self.clone(), raw))
    }

    /// True iff the subset is an inverse submonoid containing 0 and 1 that is
    /// closed under ambient joins of compatible pairs, complements of
    /// idempotents, and ambient meets.
    pub fn is_subalgebra(&self, t: &[El]) -> Result<bool> {
        let els = self.check_all(t)?;
        let mut set = BitSet::new(self.size());
        for &x in &els {
            set.insert(x as usize);
        }
        if !set.contains(self.zero_raw() as usize) || !set.contains(self.one_raw() as usize) {
            return Ok(false);
        }
        for &a in &els {
            if !set.contains(self.iv(a) as usize) {
                return Ok(false);
            }
            for &b in &els {
                if !set.contains(self.m(a, b) as usize) {
                    return Ok(false);
                }
                if self.compat_raw(a, b) {
                    match self.join_raw(a, b) {
                        Some(j) if set.contains(j as usize) => {}
                        _ => return Ok(false),
                    }
                }
                if !set.contains(self.meet_raw(a, b) as usize) {
                    return Ok(false);
                }
            }
            if self.is_idem_raw(a) {
                let c = self.complement_raw(a, self.one_raw())?;
                if !set.contains(c as usize) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The Boolean subalgebra of E(S) generated by a set of idempotents:
    /// all joins of the minterms of the generators.
    pub fn boolean_subalgebra_generated(&self, gens: &[El]) -> Result<Vec<El>> {
        let gens = self.check_all(gens)?;
        if let Some(&bad) = gens.iter().find(|&&e| !self.is_idem_raw(e)) {
            return Err(Error::domain(format!(
                "generator {bad} is not idempotent"
            )));
        }
        // Minterms, kept as the refinement of the partition {1} by each
        // generator; zero pieces are dropped so the cells stay orthogonal.
        let mut cells: Vec<u32> = vec![self.one_raw()];
        for &g in &gens {
            let mut next = Vec::with_capacity(cells.len() * 2);
            for &c in &cells {
                let inside = self.m(c, g);
                let outside = self.complement_raw(inside, c)?;
                for piece in [inside, outside] {
                    if piece != self.zero_raw() {
                        next.push(piece);
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            cells = next;
        }
        if cells.len() > 26 {
            return Err(Error::internal(
                "minterm refinement produced more cells than E(S) can hold",
            ));
        }
        // Joins of all subsets of the orthogonal cells.
        let mut out = vec![self.zero_raw()];
        let mut by_mask = vec![self.zero_raw(); 1 << cells.len()];
        for mask in 1usize..1 << cells.len() {
            let low = mask.trailing_zeros() as usize;
            let rest = by_mask[mask & (mask - 1)];
            let j = self
                .join_raw(rest, cells[low])
                .ok_or_else(|| Error::internal("orthogonal idempotents must have a join"))?;
            by_mask[mask] = j;
            out.push(j);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out.into_iter().map(|i| self.wrap(i)).collect())
    }

    /// The set `{ g e : g ∈ G, e ∈ E }` as an inverse submonoid, for a
    /// subgroup `G` of units and a `G`-invariant subsemilattice `E`
    /// containing the identity. Its unit group is `G` and its idempotents
    /// are exactly `E`.
    pub fn ge_submonoid(self: &Arc<Self>, units: &[El], idems: &[El]) -> Result<SubMonoid> {
        let g = self.check_all(units)?;
        let e = self.check_all(idems)?;
        let in_g = |x: u32| g.contains(&x);
        let in_e = |x: u32| e.contains(&x);
        for &x in &g {
            if self.d(x) != self.one_raw() || self.r(x) != self.one_raw() {
                return Err(Error::precondition(format!("element {x} is not a unit")));
            }
        }
        if !in_g(self.one_raw()) {
            return Err(Error::precondition("unit set must contain the identity"));
        }
        for &x in &g {
            if !in_g(self.iv(x)) {
                return Err(Error::precondition(format!(
                    "unit set is not closed under inverses at {x}"
                )));
            }
            for &y in &g {
                if !in_g(self.m(x, y)) {
                    return Err(Error::precondition(format!(
                        "unit set is not closed under products at ({x}, {y})"
                    )));
                }
            }
        }
        for &x in &e {
            if !self.is_idem_raw(x) {
                return Err(Error::precondition(format!("element {x} is not idempotent")));
            }
        }
        if !in_e(self.one_raw()) {
            return Err(Error::precondition("idempotent set must contain the identity"));
        }
        for &x in &e {
            for &y in &e {
                if !in_e(self.m(x, y)) {
                    return Err(Error::precondition(format!(
                        "idempotent set is not a subsemilattice at ({x}, {y})"
                    )));
                }
            }
        }
        for &gu in &g {
            for &eu in &e {
                let conj = self.m(self.m(gu, eu), self.iv(gu));
                if !in_e(conj) {
                    return Err(Error::precondition(format!(
                        "idempotent set is not invariant under the unit action at ({gu}, {eu})"
                    )));
                }
            }
        }
        let mut elements = Vec::with_capacity(g.len() * e.len());
        for &gu in &g {
            for &eu in &e {
                elements.push(self.m(gu, eu));
            }
        }
        Ok(SubMonoid::from_raw(self.clone(), elements))
    }

    /// The smallest Boolean subalgebra of E(S) containing `idems` that is
    /// invariant under conjugation by the subgroup generated by `units`.
    pub fn invariant_closure(&self, idems: &[El], units: &[El]) -> Result<Vec<El>> {
        let e = self.check_all(idems)?;
        let g = self.check_all(units)?;
        for &x in &g {
            if self.d(x) != self.one_raw() || self.r(x) != self.one_raw() {
                return Err(Error::precondition(format!("element {x} is not a unit")));
            }
        }
        // Close the unit set into a subgroup.
        let mut group = vec![self.one_raw()];
        let mut frontier: Vec<u32> = g.clone();
        while let Some(x) = frontier.pop() {
            if group.contains(&x) {
                continue;
            }
            group.push(x);
            frontier.push(self.iv(x));
            for &y in &group.clone() {
                frontier.push(self.m(x, y));
                frontier.push(self.m(y, x));
            }
        }
        let mut orbit = Vec::new();
        for &gu in &group {
            for &eu in &e {
                orbit.push(self.wrap(self.m(self.m(gu, eu), self.iv(gu))));
            }
        }
        let out = self.boolean_subalgebra_generated(&orbit)?;
        debug_assert!(out.iter().all(|&x| {
            group.iter().all(|&gu| {
                let conj = self.m(self.m(gu, x.index() as u32), self.iv(gu));
                out.iter().any(|&y| y.index() as u32 == conj)
            })
        }));
        Ok(out)
    }

    /// All joins of finite compatible subsets of `t`. The input must be an
    /// inverse submonoid whose idempotents form a Boolean subalgebra of E(S);
    /// the result is then a subalgebra of `self`.
    pub fn join_closure(self: &Arc<Self>, t: &[El]) -> Result<SubMonoid> {
        let els = self.check_all(t)?;
        let mut set = BitSet::new(self.size());
        for &x in &els {
            set.insert(x as usize);
        }
        if !set.contains(self.one_raw() as usize) {
            return Err(Error::precondition("input must contain the identity"));
        }
        if !set.contains(self.zero_raw() as usize) {
            return Err(Error::precondition("input must contain zero"));
        }
        for &a in &els {
            if !set.contains(self.iv(a) as usize) {
                return Err(Error::precondition(format!(
                    "input is not closed under inverses at {a}"
                )));
            }
            for &b in &els {
                if !set.contains(self.m(a, b) as usize) {
                    return Err(Error::precondition(format!(
                        "input is not closed under products at ({a}, {b})"
                    )));
                }
            }
        }
        for &a in &els {
            if !self.is_idem_raw(a) {
                continue;
            }
            let c = self.complement_raw(a, self.one_raw())?;
            if !set.contains(c as usize) {
                return Err(Error::precondition(format!(
                    "idempotents are not a Boolean subalgebra: complement of {a} is missing"
                )));
            }
            for &b in &els {
                if !self.is_idem_raw(b) {
                    continue;
                }
                let j = self
                    .join_raw(a, b)
                    .ok_or_else(|| Error::internal("idempotent pair without a join"))?;
                if !set.contains(j as usize) {
                    return Err(Error::precondition(format!(
                        "idempotents are not a Boolean subalgebra: join of ({a}, {b}) is missing"
                    )));
                }
            }
        }
        // Iterated binary joins reach every join of a finite compatible
        // subset, by distributivity.
        let mut current: Vec<u32> = set.iter().map(|i| i as u32).collect();
        loop {
            let mut added = false;
            let snapshot = current.clone();
            for (i, &a) in snapshot.iter().enumerate() {
                for &b in &snapshot[i + 1..] {
                    if let Some(j) = self.join_raw(a, b) {
                        if !set.contains(j as usize) {
                            set.insert(j as usize);
                            current.push(j);
                            added = true;
                        }
                    }
                }
            }
            if !added {
                break;
            }
        }
        let closure = SubMonoid::from_raw(self.clone(), current);
        if !closure.is_subalgebra()? {
            return Err(Error::internal("join closure failed to be a subalgebra"));
        }
        Ok(closure)
    }
}
