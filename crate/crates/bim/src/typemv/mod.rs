//! The measurement layer: invariant means, the partial type monoid of
//! idempotent D-classes, effect-algebra tests, and the MV-algebra carried by
//! a Foulis monoid. All values are exact rationals.

mod mv;
mod solve;

pub use mv::{
    is_mv_homomorphism, lukasiewicz_identification, mv_hom, mv_validate, MvAlg,
};

use std::collections::HashMap;
use std::sync::Arc;

use num::{BigRational, FromPrimitive, Zero};

use crate::error::{Error, Result};
use crate::finmon::{El, FinBim};
use crate::structure::{is_factorizable, principal_ideal_poset};

/// A normalized invariant mean: D-invariant, additive on orthogonal
/// idempotents, with ν(1) = 1.
#[derive(Clone)]
pub struct Mean {
    monoid: Arc<FinBim>,
    /// values aligned with the monoid's idempotent list
    values: Vec<BigRational>,
}

impl std::fmt::Debug for Mean {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Mean").field("values", &self.values.len()).finish()
    }
}

impl Mean {
    pub fn value(&self, e: El) -> Result<BigRational> {
        let raw = self.monoid.check(e)?;
        let pos = self
            .monoid
            .idems_raw()
            .binary_search(&raw)
            .map_err(|_| Error::domain("means are defined on idempotents"))?;
        Ok(self.values[pos].clone())
    }

    /// (idempotent, value) pairs in canonical element order.
    pub fn entries(&self) -> Vec<(El, BigRational)> {
        self.monoid
            .idems_raw()
            .iter()
            .zip(&self.values)
            .map(|(&e, v)| (self.monoid.wrap(e), v.clone()))
            .collect()
    }
}

/// The unique normalized invariant mean of a finite simple monoid:
/// ν(e) = (number of atomic idempotents below e) / (total atomic
/// idempotents).
pub fn invariant_mean_simple(s: &Arc<FinBim>) -> Result<Mean> {
    if !crate::structure::is_simple(s) {
        return Err(Error::precondition(
            "the counting mean needs a finite simple monoid",
        ));
    }
    let atoms: Vec<u32> = s
        .atomic_idempotents()
        .iter()
        .map(|e| e.index() as u32)
        .collect();
    let n = BigRational::from_usize(atoms.len()).expect("atom count");
    let values = s
        .idems_raw()
        .iter()
        .map(|&e| {
            let below = atoms.iter().filter(|&&a| s.leq_raw(a, e)).count();
            BigRational::from_usize(below).expect("count") / n.clone()
        })
        .collect();
    Ok(Mean { monoid: s.clone(), values })
}

/// Solves the invariant-mean constraint system exactly and returns the
/// extreme points of the solution set: one mean when it is unique, the
/// extreme means of the family otherwise, and nothing when no normalized
/// invariant mean exists.
pub fn enumerate_invariant_means(s: &Arc<FinBim>) -> Result<Vec<Mean>> {
    let idems = s.idems_raw();
    let nv = idems.len();
    let pos: HashMap<u32, usize> = idems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    let mut seen_rows: Vec<Vec<i64>> = Vec::new();
    let mut push_row = |coeffs: Vec<i64>, rhs: i64, rows: &mut Vec<(Vec<BigRational>, BigRational)>| {
        let mut tagged = coeffs.clone();
        tagged.push(rhs);
        if seen_rows.contains(&tagged) {
            return;
        }
        seen_rows.push(tagged);
        rows.push((
            coeffs
                .into_iter()
                .map(|c| BigRational::from_i64(c).expect("small"))
                .collect(),
            BigRational::from_i64(rhs).expect("small"),
        ));
    };
    let unit_row = |i: usize, j_opt: Option<usize>, k_opt: Option<usize>| {
        let mut v = vec![0i64; nv];
        v[i] += 1;
        if let Some(j) = j_opt {
            v[j] -= 1;
        }
        if let Some(k) = k_opt {
            v[k] -= 1;
        }
        v
    };
    push_row(unit_row(pos[&s.zero_raw()], None, None), 0, &mut rows);
    push_row(unit_row(pos[&s.one_raw()], None, None), 1, &mut rows);
    for a in 0..s.size() as u32 {
        let d = pos[&s.d(a)];
        let r = pos[&s.r(a)];
        if d != r {
            push_row(unit_row(d, Some(r), None), 0, &mut rows);
        }
    }
    for &e in idems {
        for &f in idems {
            if s.m(e, f) != s.zero_raw() {
                continue;
            }
            let j = s
                .join_raw(e, f)
                .ok_or_else(|| Error::internal("orthogonal idempotents must have a join"))?;
            push_row(unit_row(pos[&j], Some(pos[&e]), Some(pos[&f])), 0, &mut rows);
        }
    }
    let Some(solution) = solve::solve_affine(rows, nv) else {
        return Ok(Vec::new());
    };
    let dim = solution.basis.len();
    let nonneg = |x: &[BigRational]| x.iter().all(|v| *v >= BigRational::zero());
    let mut points: Vec<Vec<BigRational>> = Vec::new();
    if dim == 0 {
        if nonneg(&solution.particular) {
            points.push(solution.particular.clone());
        }
    } else {
        if dim > 3 {
            return Err(Error::resource(format!(
                "invariant-mean family has dimension {dim}; extreme-point enumeration is capped at 3"
            )));
        }
        // A vertex of the bounded polytope pins `dim` coordinates to zero.
        let coords: Vec<usize> = (0..nv).collect();
        let mut chosen = vec![0usize; dim];
        enumerate_subsets(&coords, dim, &mut chosen, 0, 0, &mut |subset| {
            let rows: Vec<(Vec<BigRational>, BigRational)> = subset
                .iter()
                .map(|&c| {
                    (
                        (0..dim).map(|k| solution.basis[k][c].clone()).collect(),
                        -solution.particular[c].clone(),
                    )
                })
                .collect();
            if let Some(small) = solve::solve_affine(rows, dim) {
                if small.basis.is_empty() {
                    let point: Vec<BigRational> = (0..nv)
                        .map(|c| {
                            let mut v = solution.particular[c].clone();
                            for k in 0..dim {
                                v += small.particular[k].clone() * solution.basis[k][c].clone();
                            }
                            v
                        })
                        .collect();
                    if nonneg(&point) && !points.contains(&point) {
                        points.push(point);
                    }
                }
            }
        });
    }
    points.sort();
    Ok(points
        .into_iter()
        .map(|values| Mean { monoid: s.clone(), values })
        .collect())
}

fn enumerate_subsets(
    coords: &[usize],
    want: usize,
    chosen: &mut Vec<usize>,
    depth: usize,
    start: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if depth == want {
        f(chosen);
        return;
    }
    for i in start..coords.len() {
        chosen[depth] = coords[i];
        enumerate_subsets(coords, want, chosen, depth + 1, i + 1, f);
    }
}

/// D-classes of idempotents with the partial orthogonal addition
/// `[e] + [f] = [e' ∨ f']`.
pub struct TypeInterval {
    monoid: Arc<FinBim>,
    classes: Vec<Vec<u32>>,
    class_of: HashMap<u32, u32>,
    add: Vec<Option<u32>>,
    zero_class: u32,
    one_class: u32,
}

impl std::fmt::Debug for TypeInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TypeInterval")
            .field("classes", &self.classes.len())
            .finish()
    }
}

impl TypeInterval {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn zero_class(&self) -> usize {
        self.zero_class as usize
    }

    pub fn one_class(&self) -> usize {
        self.one_class as usize
    }

    pub fn class_of(&self, e: El) -> Result<usize> {
        let raw = self.monoid.check(e)?;
        self.class_of
            .get(&raw)
            .map(|&c| c as usize)
            .ok_or_else(|| Error::domain("type-interval classes contain idempotents only"))
    }

    pub fn members(&self, class: usize) -> Vec<El> {
        self.classes[class]
            .iter()
            .map(|&e| self.monoid.wrap(e))
            .collect()
    }

    pub fn representative(&self, class: usize) -> El {
        self.monoid.wrap(self.classes[class][0])
    }

    /// The partial sum, defined exactly when orthogonal representatives
    /// exist.
    pub fn add(&self, i: usize, j: usize) -> Option<usize> {
        self.add[i * self.classes.len() + j].map(|c| c as usize)
    }

    pub fn is_conical(&self) -> bool {
        let k = self.classes.len();
        (0..k).all(|i| {
            (0..k).all(|j| {
                self.add(i, j) != Some(self.zero_class as usize)
                    || (i == self.zero_class as usize && j == self.zero_class as usize)
            })
        })
    }

    pub fn is_cancellative(&self) -> bool {
        let k = self.classes.len();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if let (Some(x), Some(y)) = (self.add(a, c), self.add(b, c)) {
                        if x == y && a != b {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `[1]` is the maximum in the algebraic order `x <= y iff x + z = y`.
    pub fn has_top(&self) -> bool {
        let k = self.classes.len();
        let one = self.one_class as usize;
        (0..k).all(|x| (0..k).any(|z| self.add(x, z) == Some(one)))
    }

    pub fn is_effect_algebra(&self) -> bool {
        self.is_conical() && self.is_cancellative() && self.has_top()
    }
}

/// Builds the type interval of `s`, checking that the partial addition is
/// well defined over every orthogonal choice of representatives.
pub fn type_interval(s: &Arc<FinBim>) -> Result<TypeInterval> {
    let idems = s.idems_raw();
    let mut classes: Vec<Vec<u32>> = Vec::new();
    let mut class_of: HashMap<u32, u32> = HashMap::new();
    for &e in idems {
        if let Some(found) = classes.iter().position(|c| s.d_related_raw(c[0], e)) {
            classes[found].push(e);
            class_of.insert(e, found as u32);
        } else {
            class_of.insert(e, classes.len() as u32);
            classes.push(vec![e]);
        }
    }
    let k = classes.len();
    let mut add = vec![None; k * k];
    for i in 0..k {
        for j in 0..k {
            let mut result: Option<u32> = None;
            for &e in &classes[i] {
                for &f in &classes[j] {
                    if s.m(e, f) != s.zero_raw() {
                        continue;
                    }
                    let join = s
                        .join_raw(e, f)
                        .ok_or_else(|| Error::internal("orthogonal idempotents must join"))?;
                    let c = class_of[&join];
                    match result {
                        None => result = Some(c),
                        Some(prev) if prev != c => {
                            return Err(Error::internal(
                                "type-interval addition is not well defined",
                            ))
                        }
                        _ => {}
                    }
                }
            }
            add[i * k + j] = result;
        }
    }
    let zero_class = class_of[&s.zero_raw()];
    let one_class = class_of[&s.one_raw()];
    Ok(TypeInterval { monoid: s.clone(), classes, class_of, add, zero_class, one_class })
}

/// Factorizable with a lattice of principal ideals.
pub fn is_foulis(s: &Arc<FinBim>) -> bool {
    is_factorizable(s) && principal_ideal_poset(s).is_lattice
}

/// The MV-algebra of a Foulis monoid on the D-classes of idempotents:
/// `¬[e] = [complement(e)]` and `[e] ⊕ [f] = [e] + ([ē] ∧ [f])`, with the
/// meet taken in the lattice of principal ideals.
///
/// ```
/// use bim::rook::symmetric_inverse_monoid;
/// use bim::typemv::{mv_algebra, MvAlg};
/// use bim::Limits;
///
/// let i2 = symmetric_inverse_monoid(2, &Limits::default())?;
/// let coord = mv_algebra(i2.monoid())?;
/// // Three idempotent D-classes form the three-element chain.
/// let chain = MvAlg::lukasiewicz(3)?;
/// assert!(coord.algebra.iso(&chain).is_some());
/// # Ok::<(), bim::Error>(())
/// ```
pub struct MvCoordinatization {
    pub algebra: MvAlg,
    pub interval: TypeInterval,
}

pub fn mv_algebra(s: &Arc<FinBim>) -> Result<MvCoordinatization> {
    if !is_foulis(s) {
        return Err(Error::precondition(
            "the MV-algebra construction needs a Foulis monoid",
        ));
    }
    let interval = type_interval(s)?;
    let poset = principal_ideal_poset(s);
    let k = interval.class_count();
    // D = J on idempotents of a finite (hence Dedekind-finite) monoid; the
    // meet is computed on J-classes and pulled back, so check it holds.
    let mut j_to_class: HashMap<usize, usize> = HashMap::new();
    for i in 0..k {
        let jc = poset.class_of(interval.representative(i))?;
        if j_to_class.insert(jc, i).is_some() {
            return Err(Error::internal("two D-classes share a J-class"));
        }
    }
    for i in 0..k {
        for &e in &interval.members(i).iter().map(|e| e.index() as u32).collect::<Vec<_>>() {
            let jc = poset.class_of(s.wrap(e))?;
            if j_to_class.get(&jc) != Some(&i) {
                return Err(Error::internal("D and J disagree on idempotents"));
            }
        }
    }
    let neg: Vec<u32> = (0..k)
        .map(|i| {
            let e = interval.representative(i).index() as u32;
            let c = s.complement_raw(e, s.one_raw())?;
            interval.class_of(s.wrap(c)).map(|c| c as u32)
        })
        .collect::<Result<_>>()?;
    let mut oplus = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            let ji = poset.class_of(interval.representative(neg[i] as usize))?;
            let jj = poset.class_of(interval.representative(j))?;
            let met = poset
                .meet_class(ji, jj)
                .ok_or_else(|| Error::internal("Foulis monoid lost its lattice meet"))?;
            let met_class = *j_to_class
                .get(&met)
                .ok_or_else(|| Error::internal("J-meet has no idempotent class"))?;
            let sum = interval
                .add(i, met_class)
                .ok_or_else(|| Error::internal("[e] + ([ē] ∧ [f]) must be defined"))?;
            oplus[i * k + j] = sum as u32;
        }
    }
    let algebra = MvAlg::new(
        k,
        oplus,
        neg,
        interval.zero_class() as u32,
        interval.one_class() as u32,
    )
    .map_err(|e| Error::internal(format!("type interval failed the MV axioms: {e}")))?;
    Ok(MvCoordinatization { algebra, interval })
}
