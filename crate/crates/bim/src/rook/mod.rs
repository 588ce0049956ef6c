//! Concrete models of finite Boolean inverse monoids: rook matrices over a
//! group with zero adjoined, and the symmetric inverse monoids they realize.

mod group;
mod matrix;
mod morphism;

pub use group::GroupTable;
pub use matrix::RookMatrix;
pub use morphism::{
    iso_from_atom_listing, normal_form, normal_form_rook, InnerAutomorphism, RookHom,
    StandardMorphism,
};

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finmon::{El, FinBim};
use crate::Limits;

/// A fully materialized rook-matrix monoid: the abstract table monoid plus
/// the dictionary between element indices and matrices.
pub struct RookModel {
    n: usize,
    group: GroupTable,
    monoid: Arc<FinBim>,
    matrices: Vec<RookMatrix>,
    index: HashMap<RookMatrix, u32>,
}

impl std::fmt::Debug for RookModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RookModel")
            .field("n", &self.n)
            .field("group_order", &self.group.order())
            .field("elements", &self.matrices.len())
            .finish()
    }
}

/// Number of n×n rook matrices over a group of the given order:
/// sum over k of C(n,k)^2 k! |G|^k.
pub fn rook_count(n: usize, group_order: usize) -> Option<u128> {
    let mut total: u128 = 0;
    let mut term: u128 = 1; // k = 0 term
    for k in 1..=n {
        // C(n,k)^2 k! g^k = previous * ((n-k+1)^2 * g / k)
        let a = (n - k + 1) as u128;
        term = term
            .checked_mul(a)?
            .checked_mul(a)?
            .checked_mul(group_order as u128)?
            / k as u128;
        total = total.checked_add(term)?;
    }
    total.checked_add(1)
}

impl RookModel {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn monoid(&self) -> &Arc<FinBim> {
        &self.monoid
    }

    pub fn element_count(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrix(&self, i: usize) -> &RookMatrix {
        &self.matrices[i]
    }

    pub fn matrix_of(&self, a: El) -> Result<&RookMatrix> {
        Ok(&self.matrices[self.monoid.check(a)? as usize])
    }

    pub fn index_of(&self, m: &RookMatrix) -> Result<u32> {
        self.index
            .get(m)
            .copied()
            .ok_or_else(|| Error::domain("matrix is not an element of this rook monoid"))
    }

    pub fn el_of(&self, m: &RookMatrix) -> Result<El> {
        let i = self.index_of(m)?;
        self.monoid.el(i as usize)
    }

    /// The atomic idempotent E_i, 1-based.
    pub fn atomic_el(&self, i: usize) -> Result<El> {
        self.el_of(&RookMatrix::atomic_idempotent(self.n, i, &self.group))
    }
}

fn enumerate_rook(n: usize, group: &GroupTable) -> Vec<RookMatrix> {
    // Depth-first over columns: leave the column empty or send it to an
    // unused row with any group label.
    let mut out = Vec::new();
    let mut colmap: Vec<Option<(u32, u32)>> = vec![None; n];
    let mut used = vec![false; n];
    fn rec(
        col: usize,
        n: usize,
        group: &GroupTable,
        colmap: &mut Vec<Option<(u32, u32)>>,
        used: &mut Vec<bool>,
        out: &mut Vec<RookMatrix>,
    ) {
        if col == n {
            out.push(RookMatrix::from_colmap(n, colmap.clone()).expect("construction is rook"));
            return;
        }
        colmap[col] = None;
        rec(col + 1, n, group, colmap, used, out);
        for row in 0..n {
            if used[row] {
                continue;
            }
            used[row] = true;
            for g in 0..group.order() as u32 {
                colmap[col] = Some((row as u32, g));
                rec(col + 1, n, group, colmap, used, out);
            }
            used[row] = false;
        }
        colmap[col] = None;
    }
    rec(0, n, group, &mut colmap, &mut used, &mut out);
    out.sort_by_key(|m| m.sort_key());
    out
}

/// The Boolean inverse monoid of all n×n rook matrices over `group` with a
/// zero adjoined, fully materialized.
pub fn rook_monoid(n: usize, group: GroupTable, limits: &Limits) -> Result<Arc<RookModel>> {
    if n == 0 {
        return Err(Error::domain("rook monoid size must be positive"));
    }
    let count = rook_count(n, group.order())
        .filter(|&c| c <= limits.max_elements as u128)
        .ok_or_else(|| {
            Error::resource(format!(
                "rook monoid R_{n} over a group of order {} exceeds the element bound {}",
                group.order(),
                limits.max_elements
            ))
        })?;
    let matrices = enumerate_rook(n, &group);
    debug_assert_eq!(matrices.len() as u128, count);
    let index: HashMap<RookMatrix, u32> = matrices
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i as u32))
        .collect();
    let k = matrices.len();
    let mut mult = vec![0u32; k * k];
    for (i, a) in matrices.iter().enumerate() {
        for (j, b) in matrices.iter().enumerate() {
            mult[i * k + j] = index[&a.mul(b, &group)];
        }
    }
    let inv: Vec<u32> = matrices.iter().map(|a| index[&a.star(&group)]).collect();
    let zero = index[&RookMatrix::zero(n)];
    let one = index[&RookMatrix::identity(n, &group)];
    let monoid = FinBim::from_tables_trusted(k, mult, inv, zero, one);
    Ok(Arc::new(RookModel { n, group, monoid, matrices, index }))
}

/// The symmetric inverse monoid I_n, realized as rook matrices over the
/// trivial group.
pub fn symmetric_inverse_monoid(n: usize, limits: &Limits) -> Result<Arc<RookModel>> {
    rook_monoid(n, GroupTable::trivial(), limits)
}
