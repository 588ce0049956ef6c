//! Morphisms of Boolean inverse monoids.
//!
//! A morphism preserves multiplication, zero, one, joins of compatible pairs,
//! and complements of idempotents. Between finite Boolean inverse monoids it
//! then automatically preserves meets; the constructor still verifies the
//! listed conditions exhaustively, so holding a `Morphism` is a proof that
//! the map is one.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finmon::{El, FinBim};

#[derive(Clone)]
pub struct Morphism {
    source: Arc<FinBim>,
    target: Arc<FinBim>,
    map: Vec<u32>,
}

impl std::fmt::Debug for Morphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Morphism")
            .field("source", &self.source.size())
            .field("target", &self.target.size())
            .field("map", &self.map)
            .finish()
    }
}

impl Morphism {
    /// Builds a morphism from a per-element image table, verifying every
    /// defining condition. `map[i]` is the target index of source element `i`.
    pub fn new(source: Arc<FinBim>, target: Arc<FinBim>, map: Vec<u32>) -> Result<Morphism> {
        let n = source.size();
        if map.len() != n {
            return Err(Error::domain("morphism table length differs from source size"));
        }
        if map.iter().any(|&x| x as usize >= target.size()) {
            return Err(Error::domain("morphism image out of range"));
        }
        if map[source.zero_raw() as usize] != target.zero_raw() {
            return Err(Error::domain("morphism must map zero to zero"));
        }
        if map[source.one_raw() as usize] != target.one_raw() {
            return Err(Error::domain("morphism must map one to one"));
        }
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                let lhs = map[source.m(a, b) as usize];
                let rhs = target.m(map[a as usize], map[b as usize]);
                if lhs != rhs {
                    return Err(Error::domain(format!(
                        "map does not preserve multiplication at ({a}, {b})"
                    )));
                }
            }
        }
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                if !source.compat_raw(a, b) {
                    continue;
                }
                let j = source.join_raw(a, b).ok_or_else(|| {
                    Error::internal("compatible pair without join in source")
                })?;
                let tj = target
                    .join_raw(map[a as usize], map[b as usize])
                    .ok_or_else(|| {
                        Error::domain(format!(
                            "images of compatible pair ({a}, {b}) have no join"
                        ))
                    })?;
                if map[j as usize] != tj {
                    return Err(Error::domain(format!(
                        "map does not preserve the join of ({a}, {b})"
                    )));
                }
            }
        }
        for &e in source.idems_raw() {
            let ce = source.complement_raw(e, source.one_raw())?;
            let tce = target.complement_raw(map[e as usize], target.one_raw())?;
            if map[ce as usize] != tce {
                return Err(Error::domain(format!(
                    "map does not preserve the complement of idempotent {e}"
                )));
            }
        }
        Ok(Morphism { source, target, map })
    }

    pub fn source(&self) -> &Arc<FinBim> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinBim> {
        &self.target
    }

    pub fn identity(monoid: Arc<FinBim>) -> Morphism {
        let map = (0..monoid.size() as u32).collect();
        Morphism { source: monoid.clone(), target: monoid, map }
    }

    pub fn apply(&self, a: El) -> Result<El> {
        let i = self.source.check(a)?;
        Ok(self.target.wrap(self.map[i as usize]))
    }

    pub(crate) fn apply_raw(&self, i: u32) -> u32 {
        self.map[i as usize]
    }

    pub fn image_indices(&self) -> &[u32] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        self.map.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size() == self.target.size() && self.is_injective()
    }

    /// `then ∘ self`.
    pub fn compose(&self, then: &Morphism) -> Result<Morphism> {
        if !Arc::ptr_eq(&self.target, &then.source) {
            return Err(Error::domain("composition requires matching monoids"));
        }
        let map = self.map.iter().map(|&x| then.map[x as usize]).collect();
        Ok(Morphism {
            source: self.source.clone(),
            target: then.target.clone(),
            map,
        })
    }

    pub fn inverse(&self) -> Result<Morphism> {
        if !self.is_bijective() {
            return Err(Error::domain("only bijective morphisms can be inverted"));
        }
        let mut map = vec![0u32; self.target.size()];
        for (i, &x) in self.map.iter().enumerate() {
            map[x as usize] = i as u32;
        }
        Ok(Morphism {
            source: self.target.clone(),
            target: self.source.clone(),
            map,
        })
    }

    /// Pointwise equality of two morphisms with identical endpoints.
    pub fn same_map(&self, other: &Morphism) -> bool {
        Arc::ptr_eq(&self.source, &other.source)
            && Arc::ptr_eq(&self.target, &other.target)
            && self.map == other.map
    }
}
