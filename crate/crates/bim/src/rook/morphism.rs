//! Morphisms in the rook-matrix world: standard (block-diagonal) morphisms,
//! inner automorphisms, matrix-level homomorphisms for targets too large to
//! materialize, and the normal-form algorithm that writes any morphism
//! between finite simple monoids as a standard morphism up to isomorphisms
//! on both ends.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finmon::{El, FinBim, Morphism};
use crate::rook::{GroupTable, RookMatrix, RookModel};
use crate::structure::is_simple;

/// The morphism A ↦ A ⊕ ... ⊕ A (s blocks) from R_m into R_{sm}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardMorphism {
    m: usize,
    s: usize,
}

impl StandardMorphism {
    pub fn new(m: usize, s: usize) -> Result<StandardMorphism> {
        if m == 0 || s == 0 {
            return Err(Error::domain("standard morphism sizes must be positive"));
        }
        Ok(StandardMorphism { m, s })
    }

    pub fn source_size(&self) -> usize {
        self.m
    }

    pub fn multiplicity(&self) -> usize {
        self.s
    }

    pub fn target_size(&self) -> usize {
        self.m * self.s
    }

    pub fn apply(&self, a: &RookMatrix) -> Result<RookMatrix> {
        if a.size() != self.m {
            return Err(Error::domain("matrix size does not match the standard morphism"));
        }
        Ok(a.block_repeat(self.s))
    }

    /// Table-level morphism between materialized rook monoids.
    pub fn to_morphism(&self, src: &RookModel, dst: &RookModel) -> Result<Morphism> {
        if src.size() != self.m || dst.size() != self.target_size() {
            return Err(Error::domain("model sizes do not match the standard morphism"));
        }
        if src.group() != dst.group() {
            return Err(Error::domain("standard morphism requires a common entry group"));
        }
        let map = (0..src.element_count())
            .map(|i| dst.index_of(&src.matrix(i).block_repeat(self.s)))
            .collect::<Result<Vec<u32>>>()?;
        Morphism::new(src.monoid().clone(), dst.monoid().clone(), map)
    }
}

/// Conjugation by a permutation matrix; every automorphism of R_n is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerAutomorphism {
    n: usize,
    perm: Vec<u32>,
}

impl InnerAutomorphism {
    /// `perm` is 0-based; the automorphism sends `E_(i+1)` to `E_(perm[i]+1)`.
    pub fn new(n: usize, perm: Vec<u32>) -> Result<InnerAutomorphism> {
        if perm.len() != n {
            return Err(Error::domain("permutation length differs from size"));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p as usize >= n || std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::domain("permutation is not a bijection"));
            }
        }
        Ok(InnerAutomorphism { n, perm })
    }

    pub fn identity(n: usize) -> InnerAutomorphism {
        InnerAutomorphism { n, perm: (0..n as u32).collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    /// The permutation matrix P with P_{i, perm(i)} = 1.
    pub fn perm_matrix(&self, group: &GroupTable) -> RookMatrix {
        let mut colmap = vec![None; self.n];
        for (i, &pi) in self.perm.iter().enumerate() {
            colmap[pi as usize] = Some((i as u32, group.id()));
        }
        RookMatrix::from_colmap(self.n, colmap).expect("permutation matrix is rook")
    }

    /// A ↦ P⁻¹AP.
    pub fn apply(&self, a: &RookMatrix, group: &GroupTable) -> Result<RookMatrix> {
        if a.size() != self.n {
            return Err(Error::domain("matrix size does not match the automorphism"));
        }
        let p = self.perm_matrix(group);
        Ok(p.star(group).mul(a, group).mul(&p, group))
    }

    /// `self ∘ other` as automorphisms (first `other`, then `self`).
    pub fn compose(&self, other: &InnerAutomorphism) -> Result<InnerAutomorphism> {
        if self.n != other.n {
            return Err(Error::domain("automorphism sizes differ"));
        }
        let perm = (0..self.n)
            .map(|i| self.perm[other.perm[i] as usize])
            .collect();
        Ok(InnerAutomorphism { n: self.n, perm })
    }

    pub fn inverse(&self) -> InnerAutomorphism {
        let mut perm = vec![0u32; self.n];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p as usize] = i as u32;
        }
        InnerAutomorphism { n: self.n, perm }
    }

    pub fn to_morphism(&self, model: &RookModel) -> Result<Morphism> {
        if model.size() != self.n {
            return Err(Error::domain("model size does not match the automorphism"));
        }
        let map = (0..model.element_count())
            .map(|i| model.index_of(&self.apply(model.matrix(i), model.group())?))
            .collect::<Result<Vec<u32>>>()?;
        Morphism::new(model.monoid().clone(), model.monoid().clone(), map)
    }
}

/// A morphism from a materialized rook monoid into R_n given by explicit
/// matrix images, for targets too large to materialize as tables.
#[derive(Clone)]
pub struct RookHom {
    source: Arc<RookModel>,
    target_size: usize,
    images: Vec<RookMatrix>,
}

impl std::fmt::Debug for RookHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RookHom")
            .field("source_size", &self.source.size())
            .field("target_size", &self.target_size)
            .finish()
    }
}

impl RookHom {
    /// Verifies that the images define a morphism of Boolean inverse monoids.
    pub fn new(source: Arc<RookModel>, target_size: usize, images: Vec<RookMatrix>) -> Result<RookHom> {
        let k = source.element_count();
        let group = source.group().clone();
        if images.len() != k {
            return Err(Error::domain("image table length differs from source size"));
        }
        if images.iter().any(|m| m.size() != target_size) {
            return Err(Error::domain("image size differs from declared target size"));
        }
        let s = source.monoid();
        if images[s.zero_raw() as usize] != RookMatrix::zero(target_size) {
            return Err(Error::domain("morphism must map zero to zero"));
        }
        if images[s.one_raw() as usize] != RookMatrix::identity(target_size, &group) {
            return Err(Error::domain("morphism must map one to one"));
        }
        for a in 0..k as u32 {
            for b in 0..k as u32 {
                let prod = images[a as usize].mul(&images[b as usize], &group);
                if images[s.m(a, b) as usize] != prod {
                    return Err(Error::domain(format!(
                        "images do not preserve multiplication at ({a}, {b})"
                    )));
                }
                if s.compat_raw(a, b) {
                    let j = s
                        .join_raw(a, b)
                        .ok_or_else(|| Error::internal("compatible pair without join"))?;
                    let tj = images[a as usize].join(&images[b as usize], &group)?;
                    if images[j as usize] != tj {
                        return Err(Error::domain(format!(
                            "images do not preserve the join of ({a}, {b})"
                        )));
                    }
                }
            }
        }
        for &e in s.idems_raw() {
            let ce = s.complement_raw(e, s.one_raw())?;
            let img = &images[e as usize];
            let mut colmap = vec![None; target_size];
            for (j, slot) in colmap.iter_mut().enumerate() {
                if img.entry(j, j).is_none() {
                    *slot = Some((j as u32, group.id()));
                }
            }
            let expected = RookMatrix::from_colmap(target_size, colmap)?;
            if images[ce as usize] != expected {
                return Err(Error::domain(format!(
                    "images do not preserve the complement of idempotent {e}"
                )));
            }
        }
        Ok(RookHom { source, target_size, images })
    }

    pub fn standard(source: &Arc<RookModel>, s: usize) -> Result<RookHom> {
        let sm = StandardMorphism::new(source.size(), s)?;
        let images = (0..source.element_count())
            .map(|i| source.matrix(i).block_repeat(sm.multiplicity()))
            .collect();
        RookHom::new(source.clone(), sm.target_size(), images)
    }

    pub fn inner(source: &Arc<RookModel>, auto: &InnerAutomorphism) -> Result<RookHom> {
        if auto.size() != source.size() {
            return Err(Error::domain("automorphism size differs from model size"));
        }
        let images = (0..source.element_count())
            .map(|i| auto.apply(source.matrix(i), source.group()))
            .collect::<Result<Vec<_>>>()?;
        RookHom::new(source.clone(), source.size(), images)
    }

    /// Post-composes with a standard morphism.
    pub fn then_standard(&self, s: usize) -> Result<RookHom> {
        let images = self.images.iter().map(|m| m.block_repeat(s)).collect();
        RookHom::new(self.source.clone(), self.target_size * s, images)
    }

    /// Post-composes with an inner automorphism of the target.
    pub fn then_inner(&self, auto: &InnerAutomorphism) -> Result<RookHom> {
        if auto.size() != self.target_size {
            return Err(Error::domain("automorphism size differs from target size"));
        }
        let images = self
            .images
            .iter()
            .map(|m| auto.apply(m, self.source.group()))
            .collect::<Result<Vec<_>>>()?;
        RookHom::new(self.source.clone(), self.target_size, images)
    }

    pub fn source(&self) -> &Arc<RookModel> {
        &self.source
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn image(&self, i: usize) -> &RookMatrix {
        &self.images[i]
    }

    pub fn apply_matrix(&self, m: &RookMatrix) -> Result<RookMatrix> {
        Ok(self.images[self.source.index_of(m)? as usize].clone())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen: HashMap<&RookMatrix, ()> = HashMap::new();
        self.images.iter().all(|m| seen.insert(m, ()).is_none())
    }
}

/// The unique isomorphism between finite simple monoids extending a pairing
/// of their atomic idempotents: the atom from e_i to e_j is carried to the
/// atom from f_i to f_j, and everything else is a join of atoms.
pub fn iso_from_atom_listing(
    s: &Arc<FinBim>,
    t: &Arc<FinBim>,
    es: &[El],
    fs: &[El],
) -> Result<Morphism> {
    if !is_simple(s) || !is_simple(t) {
        return Err(Error::domain(
            "atom-listing isomorphisms are defined between finite simple monoids",
        ));
    }
    if es.len() != fs.len() {
        return Err(Error::domain("atomic idempotent listings differ in length"));
    }
    let check_listing = |m: &Arc<FinBim>, listing: &[El]| -> Result<Vec<u32>> {
        let mut raw = Vec::with_capacity(listing.len());
        for &e in listing {
            raw.push(m.check(e)?);
        }
        let mut sorted = raw.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let mut expected: Vec<u32> = m
            .atomic_idempotents()
            .iter()
            .map(|e| e.index() as u32)
            .collect();
        expected.sort_unstable();
        if sorted != expected {
            return Err(Error::domain(
                "listing must enumerate every atomic idempotent exactly once",
            ));
        }
        Ok(raw)
    };
    let es = check_listing(s, es)?;
    let fs = check_listing(t, fs)?;
    let pos: HashMap<u32, usize> = es.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    // Unique atom of t from f_i to f_j, by simplicity.
    let t_atom = |i: usize, j: usize| -> Result<u32> {
        let mut found = None;
        for &y in t.atoms_raw() {
            if t.d(y) == fs[i] && t.r(y) == fs[j] {
                if found.is_some() {
                    return Err(Error::internal("several atoms share domain and range"));
                }
                found = Some(y);
            }
        }
        found.ok_or_else(|| Error::internal("missing atom between atomic idempotents"))
    };
    let mut atom_image: HashMap<u32, u32> = HashMap::new();
    for &x in s.atoms_raw() {
        let i = pos[&s.d(x)];
        let j = pos[&s.r(x)];
        atom_image.insert(x, t_atom(i, j)?);
    }
    let mut map = vec![0u32; s.size()];
    for a in 0..s.size() as u32 {
        if a == s.zero_raw() {
            map[a as usize] = t.zero_raw();
            continue;
        }
        // Every non-zero element is the join of the atoms below it, and those
        // atoms are pairwise orthogonal.
        let mut acc = t.zero_raw();
        for &x in s.atoms_raw() {
            if s.leq_raw(x, a) {
                acc = t
                    .join_raw(acc, atom_image[&x])
                    .ok_or_else(|| Error::internal("atom images failed to be compatible"))?;
            }
        }
        map[a as usize] = acc;
    }
    Morphism::new(s.clone(), t.clone(), map)
}

struct ListingData {
    /// listing[p] = the element that must be carried to E_{p+1}.
    listing: Vec<u32>,
    multiplicity: usize,
}

/// Shared combinatorial core of the normal form: orders the atomic
/// idempotents of the target so that the given morphism becomes standard.
///
/// Inputs are raw and abstract: `m` source atomic idempotents ordered as
/// e_1..e_m, the unique atoms x_i from e_1 to e_i, the target atomic
/// idempotents below each θ(e_i), and a conjugation oracle for θ(x_i).
fn interleave_listing(
    m: usize,
    blocks: Vec<Vec<u32>>,
    conjugate_by_theta_x: impl Fn(usize, u32) -> Result<u32>,
) -> Result<ListingData> {
    let total: usize = blocks.iter().map(Vec::len).sum();
    if m == 0 || !total.is_multiple_of(m) {
        return Err(Error::internal("target atoms do not split evenly over the source"));
    }
    let s = total / m;
    if blocks.len() != m || blocks.iter().any(|b| b.len() != s) {
        return Err(Error::internal("blocks below the images have unequal sizes"));
    }
    // Block A_1 keeps its canonical order; each A_i is ordered by
    // transporting A_1 along θ(x_i); the final listing interleaves the
    // blocks position by position.
    let mut listing = vec![0u32; total];
    for j in 0..s {
        for i in 0..m {
            listing[j * m + i] = conjugate_by_theta_x(i, blocks[0][j])?;
        }
    }
    Ok(ListingData { listing, multiplicity: s })
}

/// Normal form of a morphism between materialized finite simple monoids:
/// returns the isomorphism β: T → R_n and the standard morphism σ with
/// σ = β ∘ θ ∘ α⁻¹.
pub fn normal_form(
    theta: &Morphism,
    alpha: &Morphism,
    rm: &Arc<RookModel>,
    rn: &Arc<RookModel>,
) -> Result<(Morphism, StandardMorphism)> {
    let s_mon = theta.source();
    let t_mon = theta.target();
    if !is_simple(s_mon) || !is_simple(t_mon) {
        return Err(Error::domain("normal form requires finite simple monoids"));
    }
    if !Arc::ptr_eq(alpha.source(), s_mon) || !Arc::ptr_eq(alpha.target(), rm.monoid()) {
        return Err(Error::domain("alpha must be an isomorphism from the source onto R_m"));
    }
    if !alpha.is_bijective() {
        return Err(Error::domain("alpha must be bijective"));
    }
    let m = s_mon.atomic_idempotents().len();
    let n = t_mon.atomic_idempotents().len();
    if rm.size() != m || rn.size() != n {
        return Err(Error::domain("rook models do not match the atom counts"));
    }
    if !n.is_multiple_of(m) || !theta.is_injective() {
        return Err(Error::internal(
            "a morphism between finite simple monoids is injective with m dividing n",
        ));
    }
    let alpha_inv = alpha.inverse()?;
    let es: Vec<u32> = (1..=m)
        .map(|i| Ok(alpha_inv.apply(rm.atomic_el(i)?)?.index() as u32))
        .collect::<Result<_>>()?;
    // x_i: the unique atom from e_1 to e_i.
    let xs: Vec<u32> = (0..m)
        .map(|i| {
            let mut found = None;
            for &x in s_mon.atoms_raw() {
                if s_mon.d(x) == es[0] && s_mon.r(x) == es[i] {
                    found = Some(x);
                    break;
                }
            }
            found.ok_or_else(|| Error::internal("missing atom in a simple monoid"))
        })
        .collect::<Result<_>>()?;
    let t_atoms: Vec<u32> = t_mon
        .atomic_idempotents()
        .iter()
        .map(|e| e.index() as u32)
        .collect();
    let blocks: Vec<Vec<u32>> = es
        .iter()
        .map(|&ei| {
            let img = theta.apply_raw(ei);
            t_atoms
                .iter()
                .copied()
                .filter(|&f| t_mon.leq_raw(f, img))
                .collect()
        })
        .collect();
    let data = interleave_listing(m, blocks, |i, f| {
        let yi = theta.apply_raw(xs[i]);
        Ok(t_mon.m(t_mon.m(yi, f), t_mon.iv(yi)))
    })?;
    let listing: Vec<El> = data.listing.iter().map(|&f| t_mon.wrap(f)).collect();
    let rn_atoms: Vec<El> = (1..=n).map(|i| rn.atomic_el(i)).collect::<Result<_>>()?;
    let beta = iso_from_atom_listing(t_mon, rn.monoid(), &listing, &rn_atoms)?;
    let sigma = StandardMorphism::new(m, data.multiplicity)?;
    let sigma_morphism = sigma.to_morphism(rm, rn)?;
    let composite = alpha_inv.compose(theta)?.compose(&beta)?;
    if !composite.same_map(&sigma_morphism) {
        return Err(Error::internal("normal form failed elementwise verification"));
    }
    Ok((beta, sigma))
}

/// Matrix-level normal form for morphisms into R_n with n too large to
/// materialize: returns the inner automorphism β of R_n and the standard
/// morphism σ with σ = β ∘ θ ∘ α⁻¹.
pub fn normal_form_rook(
    theta: &RookHom,
    alpha: &RookHom,
) -> Result<(InnerAutomorphism, StandardMorphism)> {
    let model = theta.source();
    if model.group().order() != 1 {
        return Err(Error::domain(
            "normal form requires simple monoids (trivial entry group)",
        ));
    }
    if !Arc::ptr_eq(alpha.source(), model) || alpha.target_size() != model.size() {
        return Err(Error::domain("alpha must be an automorphism of the source"));
    }
    if !alpha.is_injective() {
        return Err(Error::domain("alpha must be bijective"));
    }
    let m = model.size();
    let n = theta.target_size();
    if !n.is_multiple_of(m) || !theta.is_injective() {
        return Err(Error::internal(
            "a morphism between finite simple monoids is injective with m dividing n",
        ));
    }
    let group = model.group().clone();
    // α⁻¹ as a matrix-to-matrix dictionary.
    let mut alpha_pre: HashMap<RookMatrix, u32> = HashMap::new();
    for i in 0..model.element_count() {
        alpha_pre.insert(alpha.image(i).clone(), i as u32);
    }
    let alpha_inv = |mat: &RookMatrix| -> Result<u32> {
        alpha_pre
            .get(mat)
            .copied()
            .ok_or_else(|| Error::domain("alpha is not onto R_m"))
    };
    // e_i = α⁻¹(E_i) is the atomic idempotent at diagonal position c_i.
    let cs: Vec<usize> = (1..=m)
        .map(|i| {
            let ei = alpha_inv(&RookMatrix::atomic_idempotent(m, i, &group))?;
            let mat = model.matrix(ei as usize);
            if !mat.is_idempotent(&group) || mat.rank() != 1 {
                return Err(Error::internal("alpha inverse of E_i is not an atomic idempotent"));
            }
            Ok(mat.diag_support()[0])
        })
        .collect::<Result<_>>()?;
    // y_i = θ(x_i) where x_i is the single-entry matrix from c_1 to c_i.
    let ys: Vec<RookMatrix> = (0..m)
        .map(|i| {
            let x = RookMatrix::single(m, cs[i], cs[0], group.id());
            theta.apply_matrix(&x)
        })
        .collect::<Result<_>>()?;
    let blocks: Vec<Vec<u32>> = (0..m)
        .map(|i| {
            let ei = RookMatrix::single(m, cs[i], cs[i], group.id());
            Ok(theta
                .apply_matrix(&ei)?
                .diag_support()
                .into_iter()
                .map(|p| p as u32)
                .collect())
        })
        .collect::<Result<_>>()?;
    let data = interleave_listing(m, blocks, |i, p| {
        // Transport diagonal position p along y_i.
        ys[i].colmap()[p as usize]
            .map(|(row, _)| row)
            .ok_or_else(|| Error::internal("θ(x_i) undefined on a position below θ(e_1)"))
    })?;
    let mut tau = vec![0u32; n];
    for (p, &c) in data.listing.iter().enumerate() {
        tau[c as usize] = p as u32;
    }
    let beta = InnerAutomorphism::new(n, tau)?;
    let sigma = StandardMorphism::new(m, data.multiplicity)?;
    for i in 0..model.element_count() {
        let mat = model.matrix(i);
        let pre = alpha_inv(mat)?;
        let lhs = beta.apply(theta.image(pre as usize), &group)?;
        let rhs = sigma.apply(mat)?;
        if lhs != rhs {
            return Err(Error::internal("normal form failed elementwise verification"));
        }
    }
    Ok((beta, sigma))
}
