//! Finite-stage towers of symmetric inverse monoids under standard
//! embeddings, classified by supernatural numbers.
//!
//! A [`UhfSpec`] fixes a division sequence s_1 | s_2 | ...; level k is the
//! rook-matrix monoid R_{s_k} and the embedding from level k to level l is
//! the standard morphism of multiplicity s_l / s_k. Elements of the tower
//! are rook matrices tagged with a level and normalized to the least level
//! whose stage contains a preimage, detected through the block-diagonal
//! periodicity pattern. Stages are standalone matrix arithmetic; a full
//! table monoid is materialized only below the element bound (certificates),
//! never for element arithmetic.

use std::sync::Arc;

use num::{BigRational, BigUint, FromPrimitive, Integer, Zero};

use crate::error::{Error, Result};
use crate::finmon::SubMonoid;
use crate::rook::{symmetric_inverse_monoid, GroupTable, RookMatrix, RookModel, StandardMorphism};
use crate::structure::{is_factorizable, is_fundamental, principal_ideal_poset};
use crate::supernat::{interleaved, DivisionSequence, Supernatural};
use crate::{Limits, Verdict};

pub struct UhfSpec {
    seq: DivisionSequence,
    limits: Limits,
    group: GroupTable,
}

impl std::fmt::Debug for UhfSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UhfSpec").field("seq", &self.seq).finish()
    }
}

impl UhfSpec {
    /// Tower of an infinite supernatural number along its canonical division
    /// sequence.
    pub fn from_supernatural(n: &Supernatural, limits: &Limits) -> Result<Arc<UhfSpec>> {
        if !n.is_infinite() {
            return Err(Error::domain(
                "a UHF tower needs an infinite supernatural number",
            ));
        }
        Ok(Arc::new(UhfSpec {
            seq: crate::supernat::from_supernatural(n)?,
            limits: limits.clone(),
            group: GroupTable::trivial(),
        }))
    }

    /// Tower over an explicit division-sequence prefix. Operations that
    /// would need the missing tail propagate three-valued verdicts.
    pub fn from_prefix(terms: &[u64], limits: &Limits) -> Result<Arc<UhfSpec>> {
        let seq = DivisionSequence::prefix(terms.iter().map(|&t| BigUint::from(t)).collect())?;
        Ok(Arc::new(UhfSpec { seq, limits: limits.clone(), group: GroupTable::trivial() }))
    }

    pub fn sequence(&self) -> &DivisionSequence {
        &self.seq
    }

    /// The exact supernatural number when the spec is canonical.
    pub fn supernatural(&self) -> Option<&Supernatural> {
        match &self.seq {
            DivisionSequence::Canonical(n) => Some(n),
            _ => None,
        }
    }

    /// s_k for 1-based k, bounded by the configured horizon.
    pub fn level_size(&self, k: usize) -> Result<usize> {
        if k == 0 {
            return Err(Error::domain("levels are 1-based"));
        }
        let terms = self.seq.terms(k)?;
        let t = terms
            .get(k - 1)
            .ok_or_else(|| Error::domain(format!("level {k} lies beyond the sequence")))?;
        let small: u64 = t
            .try_into()
            .map_err(|_| Error::resource(format!("level {k} exceeds the size horizon")))?;
        if small > self.limits.max_level_size {
            return Err(Error::resource(format!(
                "level {k} has size {small}, beyond the horizon {}",
                self.limits.max_level_size
            )));
        }
        Ok(small as usize)
    }

    /// A view of stage k: R_{s_k} as matrix arithmetic.
    pub fn stage(self: &Arc<Self>, k: usize) -> Result<StageView> {
        Ok(StageView { spec: self.clone(), level: k, size: self.level_size(k)? })
    }

    /// The standard embedding from stage k into stage l.
    pub fn embed(&self, k: usize, l: usize) -> Result<StandardMorphism> {
        if k > l {
            return Err(Error::domain("embeddings go from lower levels to higher ones"));
        }
        let sk = self.level_size(k)?;
        let sl = self.level_size(l)?;
        StandardMorphism::new(sk, sl / sk)
    }

    /// Wraps a level-k rook matrix as a tower element, normalizing to the
    /// least level that already contains it.
    pub fn element(self: &Arc<Self>, level: usize, matrix: RookMatrix) -> Result<ColimitElement> {
        let size = self.level_size(level)?;
        if matrix.size() != size {
            return Err(Error::domain(format!(
                "matrix has size {}, level {level} has size {size}",
                matrix.size()
            )));
        }
        Ok(self.normalize(level, matrix))
    }

    fn normalize(self: &Arc<Self>, level: usize, matrix: RookMatrix) -> ColimitElement {
        for j in 1..level {
            let Ok(sj) = self.level_size(j) else { continue };
            if let Some(block) = extract_periodic_block(&matrix, sj) {
                return ColimitElement { spec: self.clone(), level: j, matrix: block };
            }
        }
        ColimitElement { spec: self.clone(), level, matrix }
    }
}

/// Leading block of a block-diagonal periodic matrix, when the matrix is
/// the standard image of a smaller one.
fn extract_periodic_block(m: &RookMatrix, block: usize) -> Option<RookMatrix> {
    let n = m.size();
    if block == 0 || !n.is_multiple_of(block) || block == n {
        return None;
    }
    let s = n / block;
    let lead: Vec<Option<(u32, u32)>> = m.colmap()[..block].to_vec();
    for e in lead.iter().flatten() {
        if e.0 as usize >= block {
            return None;
        }
    }
    for rep in 1..s {
        for (j, entry) in lead.iter().enumerate() {
            let expected = entry.map(|(i, g)| (i + (rep * block) as u32, g));
            if m.colmap()[rep * block + j] != expected {
                return None;
            }
        }
    }
    RookMatrix::from_colmap(block, lead).ok()
}

/// A stage of the tower, supporting matrix arithmetic without a table.
#[derive(Clone)]
pub struct StageView {
    spec: Arc<UhfSpec>,
    level: usize,
    size: usize,
}

impl std::fmt::Debug for StageView {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StageView")
            .field("level", &self.level)
            .field("size", &self.size)
            .finish()
    }
}

impl StageView {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Materializes the stage as a table monoid when it fits the bound.
    pub fn materialize(&self) -> Result<Arc<RookModel>> {
        symmetric_inverse_monoid(self.size, &self.spec.limits)
    }
}

/// An element of the tower: a rook matrix at its least level.
#[derive(Clone)]
pub struct ColimitElement {
    spec: Arc<UhfSpec>,
    level: usize,
    matrix: RookMatrix,
}

impl std::fmt::Debug for ColimitElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ColimitElement")
            .field("level", &self.level)
            .field("matrix", &self.matrix)
            .finish()
    }
}

impl ColimitElement {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn matrix(&self) -> &RookMatrix {
        &self.matrix
    }

    pub fn spec(&self) -> &Arc<UhfSpec> {
        &self.spec
    }

    fn same_spec(&self, other: &ColimitElement) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) {
            Ok(())
        } else {
            Err(Error::domain("elements belong to different towers"))
        }
    }

    /// Embeds both elements into their common (maximum) level.
    pub fn lift(&self, other: &ColimitElement) -> Result<(usize, RookMatrix, RookMatrix)> {
        self.same_spec(other)?;
        let level = self.level.max(other.level);
        let target = self.spec.level_size(level)?;
        let a = self.matrix.block_repeat(target / self.matrix.size());
        let b = other.matrix.block_repeat(target / other.matrix.size());
        Ok((level, a, b))
    }

    pub fn multiply(&self, other: &ColimitElement) -> Result<ColimitElement> {
        let (level, a, b) = self.lift(other)?;
        Ok(self.spec.normalize(level, a.mul(&b, &self.spec.group)))
    }

    pub fn join(&self, other: &ColimitElement) -> Result<ColimitElement> {
        let (level, a, b) = self.lift(other)?;
        if !a.compatible(&b, &self.spec.group) {
            return Err(Error::precondition("join requires a compatible pair"));
        }
        Ok(self.spec.normalize(level, a.join(&b, &self.spec.group)?))
    }

    pub fn meet(&self, other: &ColimitElement) -> Result<ColimitElement> {
        let (level, a, b) = self.lift(other)?;
        Ok(self.spec.normalize(level, a.meet(&b)))
    }

    pub fn star(&self) -> ColimitElement {
        ColimitElement {
            spec: self.spec.clone(),
            level: self.level,
            matrix: self.matrix.star(&self.spec.group),
        }
    }

    /// Equality of normalized representatives.
    pub fn eq_element(&self, other: &ColimitElement) -> Result<bool> {
        self.same_spec(other)?;
        Ok(self.level == other.level && self.matrix == other.matrix)
    }
}

/// Isomorphism of towers: equality of the classifying supernatural numbers,
/// three-valued when a sequence does not determine its ideal.
pub fn uhf_isomorphic(a: &UhfSpec, b: &UhfSpec) -> Result<Verdict> {
    interleaved(&a.seq, &b.seq)
}

/// Value of the unique normalized invariant mean on an idempotent tower
/// element; independent of the level it is computed at.
pub fn uhf_mean(a: &ColimitElement) -> Result<BigRational> {
    if !a.matrix.is_idempotent(&a.spec.group) {
        return Err(Error::domain("means are defined on idempotents"));
    }
    let num = BigRational::from_usize(a.matrix.rank()).expect("rank");
    let den = BigRational::from_usize(a.matrix.size()).expect("size");
    Ok(num / den)
}

/// Does some stage contain an idempotent of mean p/q? True exactly when q
/// divides some term of the division sequence; for canonical specs this is
/// decided by scanning terms up to the freeze index of q, for prefix or
/// generator specs a missing witness leaves the question open.
pub fn uhf_mv_probe(spec: &UhfSpec, p: u64, q: u64) -> Result<Verdict> {
    if q == 0 {
        return Err(Error::domain("denominator must be positive"));
    }
    if p > q {
        return Err(Error::domain("fraction must lie in [0, 1]"));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::domain("fraction must be reduced"));
    }
    if q == 1 {
        return Ok(Verdict::True);
    }
    let big_q = BigUint::from(q);
    match &spec.seq {
        DivisionSequence::Canonical(n) => {
            // Largest prime-power exponent in q; past the freeze index all
            // term valuations relevant to q have stabilized.
            let mut m = q;
            let mut vmax = 0u32;
            let mut d = 2u64;
            while d * d <= m {
                let mut c = 0;
                while m.is_multiple_of(d) {
                    m /= d;
                    c += 1;
                }
                vmax = vmax.max(c);
                d += 1;
            }
            if m > 1 {
                vmax = vmax.max(1);
            }
            let kstar = n.freeze_index(vmax);
            for t in spec.seq.terms(kstar)? {
                if (&t % &big_q).is_zero() {
                    return Ok(Verdict::True);
                }
            }
            Ok(Verdict::False)
        }
        DivisionSequence::Prefix(terms) => {
            for t in terms {
                if (t % &big_q).is_zero() {
                    return Ok(Verdict::True);
                }
            }
            Ok(Verdict::Unknown)
        }
        DivisionSequence::Generator { horizon, .. } => {
            for t in spec.seq.terms(*horizon)? {
                if (&t % &big_q).is_zero() {
                    return Ok(Verdict::True);
                }
            }
            Ok(Verdict::Unknown)
        }
    }
}

/// One verified level of a finite-type certificate chain.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CertMember {
    pub level: usize,
    pub stage_size: usize,
    pub image_elements: usize,
    pub subalgebra: bool,
    pub factorizable: bool,
    pub fundamental: bool,
    pub zero_simplifying: bool,
    pub j_linear: bool,
    pub divides_next: bool,
}

/// The images of stages 1..k inside stage k, with each image verified as a
/// simple subalgebra chain member. Requires stage k to fit the element
/// bound.
pub fn finite_type_certificate(
    spec: &Arc<UhfSpec>,
    k: usize,
    limits: &Limits,
) -> Result<(Vec<CertMember>, Vec<SubMonoid>)> {
    let top_size = spec.level_size(k)?;
    let top = symmetric_inverse_monoid(top_size, limits)?;
    let mut members = Vec::new();
    let mut chain = Vec::new();
    for j in 1..=k {
        let sj = spec.level_size(j)?;
        let factor = top_size / sj;
        let small = symmetric_inverse_monoid(sj, limits)?;
        let image: Vec<crate::finmon::El> = (0..small.element_count())
            .map(|i| {
                let idx = top.index_of(&small.matrix(i).block_repeat(factor))?;
                top.monoid().el(idx as usize)
            })
            .collect::<Result<_>>()?;
        let sub = top.monoid().submonoid(&image)?;
        let subalgebra = sub.is_subalgebra()?;
        let (mat, _) = sub.materialize()?;
        let poset = principal_ideal_poset(&mat);
        members.push(CertMember {
            level: j,
            stage_size: sj,
            image_elements: sub.len(),
            subalgebra,
            factorizable: is_factorizable(&mat),
            fundamental: is_fundamental(&mat),
            zero_simplifying: mat.is_zero_simplifying(),
            j_linear: poset.is_linear,
            divides_next: j == k || {
                let next = spec.level_size(j + 1)?;
                next % sj == 0
            },
        });
        chain.push(sub);
    }
    Ok((members, chain))
}
