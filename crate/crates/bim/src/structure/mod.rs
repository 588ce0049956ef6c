//! Structural analysis of finite Boolean inverse monoids: predicates,
//! infinitesimals, the maximum idempotent-separating congruence, the atom
//! groupoid and reconstruction, additive ideals, and fundamentalization.

mod groupoid;
mod ideals;

pub use groupoid::{
    atom_groupoid, local_bisections, reconstruct, AtomGroupoid, BisectionModel, FiniteGroupoid,
};
pub use ideals::{principal_ideal_poset, JPoset};

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finmon::{El, FinBim, Morphism, SubMonoid};
use crate::rook::GroupTable;

/// Only idempotents commute with all idempotents.
pub fn is_fundamental(s: &FinBim) -> bool {
    (0..s.size() as u32).all(|a| {
        s.is_idem_raw(a)
            || s.idems_raw().iter().any(|&e| s.m(a, e) != s.m(e, a))
    })
}

/// Every idempotent is central.
pub fn is_clifford(s: &FinBim) -> bool {
    (0..s.size() as u32)
        .all(|a| s.idems_raw().iter().all(|&e| s.m(a, e) == s.m(e, a)))
}

/// Between any 0 != e < f there is a non-zero idempotent below f killing e.
pub fn is_zero_disjunctive(s: &FinBim) -> bool {
    s.idems_raw().iter().all(|&e| {
        if e == s.zero_raw() {
            return true;
        }
        s.idems_raw().iter().all(|&f| {
            if !(s.leq_raw(e, f) && e != f) {
                return true;
            }
            s.idems_raw()
                .iter()
                .any(|&x| x != s.zero_raw() && s.leq_raw(x, f) && s.m(e, x) == s.zero_raw())
        })
    })
}

/// e D f <= e forces e = f.
pub fn is_dedekind_finite(s: &FinBim) -> bool {
    s.idems_raw().iter().all(|&e| {
        s.idems_raw()
            .iter()
            .all(|&f| !(s.d_related_raw(e, f) && s.leq_raw(f, e)) || e == f)
    })
}

/// e D 1 forces e = 1.
pub fn is_directly_finite(s: &FinBim) -> bool {
    s.idems_raw()
        .iter()
        .all(|&e| !s.d_related_raw(e, s.one_raw()) || e == s.one_raw())
}

/// Every element lies below a unit.
pub fn is_factorizable(s: &FinBim) -> bool {
    (0..s.size() as u32).all(|a| s.units_raw().iter().any(|&g| s.leq_raw(a, g)))
}

/// e D f implies complement(e) D complement(f).
pub fn has_d_complementation(s: &FinBim) -> bool {
    let one = s.one_raw();
    s.idems_raw().iter().all(|&e| {
        s.idems_raw().iter().all(|&f| {
            if !s.d_related_raw(e, f) {
                return true;
            }
            let (ce, cf) = match (s.complement_raw(e, one), s.complement_raw(f, one)) {
                (Ok(ce), Ok(cf)) => (ce, cf),
                _ => return false,
            };
            s.d_related_raw(ce, cf)
        })
    })
}

/// e1 ⊕ f1 D e2 ⊕ f2 with e1 D e2 forces f1 D f2, over orthogonal joins of
/// idempotents.
pub fn is_d_cancellative(s: &FinBim) -> bool {
    let idems = s.idems_raw();
    let zero = s.zero_raw();
    let orth_pairs: Vec<(u32, u32, u32)> = idems
        .iter()
        .flat_map(|&e| {
            idems.iter().filter_map(move |&f| {
                if s.m(e, f) == zero {
                    s.join_raw(e, f).map(|j| (e, f, j))
                } else {
                    None
                }
            })
        })
        .collect();
    for &(e1, f1, j1) in &orth_pairs {
        for &(e2, f2, j2) in &orth_pairs {
            if s.d_related_raw(j1, j2) && s.d_related_raw(e1, e2) && !s.d_related_raw(f1, f2) {
                return false;
            }
        }
    }
    true
}

/// 0-simplifying and fundamental (with 0 != 1, which validation guarantees).
pub fn is_simple(s: &FinBim) -> bool {
    is_fundamental(s) && s.is_zero_simplifying()
}

/// Non-zero elements squaring to zero.
pub fn infinitesimals(s: &FinBim) -> Vec<El> {
    (0..s.size() as u32)
        .filter(|&a| a != s.zero_raw() && s.m(a, a) == s.zero_raw())
        .map(|a| s.wrap(a))
        .collect()
}

/// The involution a ∨ a⁻¹ ∨ complement(e(a)) attached to an infinitesimal.
pub fn involution_of(s: &FinBim, a: El) -> Result<El> {
    let ar = s.check(a)?;
    if ar == s.zero_raw() || s.m(ar, ar) != s.zero_raw() {
        return Err(Error::domain("involutions are built from infinitesimals"));
    }
    let core = s
        .join_raw(ar, s.iv(ar))
        .ok_or_else(|| Error::internal("an infinitesimal is orthogonal to its inverse"))?;
    let extent = s
        .join_raw(s.d(ar), s.r(ar))
        .ok_or_else(|| Error::internal("idempotents always have joins"))?;
    let rest = s.complement_raw(extent, s.one_raw())?;
    let g = s
        .join_raw(core, rest)
        .ok_or_else(|| Error::internal("orthogonal elements always have joins"))?;
    if s.d(g) != s.one_raw() || s.r(g) != s.one_raw() || s.m(g, g) != s.one_raw() || g == s.one_raw()
    {
        return Err(Error::internal("constructed element is not an involution"));
    }
    Ok(s.wrap(g))
}

/// Writes `a` as φ(a) ∨ a_1 ∨ ... ∨ a_m with the a_i infinitesimals, by
/// greedily peeling the least-index atom infinitesimal off the remainder.
pub fn basic_decomposition(s: &FinBim, a: El) -> Result<(El, Vec<El>)> {
    if !is_fundamental(s) {
        return Err(Error::precondition(
            "basic decomposition requires a fundamental monoid",
        ));
    }
    let ar = s.check(a)?;
    let e = s.phi_raw(ar);
    let mut parts = Vec::new();
    let mut rem = s.m(ar, s.complement_raw(s.d(e), s.d(ar))?);
    while rem != s.zero_raw() {
        let x = s
            .atoms_raw()
            .iter()
            .copied()
            .find(|&x| s.leq_raw(x, rem) && s.m(x, x) == s.zero_raw())
            .ok_or_else(|| {
                Error::internal("non-zero remainder without an infinitesimal below it")
            })?;
        parts.push(s.wrap(x));
        rem = s.m(rem, s.complement_raw(s.d(x), s.d(rem))?);
    }
    debug_assert!({
        let mut acc = e;
        for p in &parts {
            acc = s.join_raw(acc, p.index() as u32).expect("parts are compatible");
        }
        acc == ar
    });
    Ok((s.wrap(e), parts))
}

/// Every non-zero element is a join of an idempotent and finitely many
/// infinitesimals; on finite monoids this is equivalent to being
/// fundamental.
pub fn is_basic(s: &FinBim) -> bool {
    (0..s.size() as u32).all(|a| {
        if a == s.zero_raw() {
            return true;
        }
        let e = s.phi_raw(a);
        let rem = match s.complement_raw(s.d(e), s.d(a)) {
            Ok(c) => s.m(a, c),
            Err(_) => return false,
        };
        s.atoms_raw()
            .iter()
            .all(|&x| !s.leq_raw(x, rem) || s.m(x, x) == s.zero_raw())
    })
}

/// The maximum idempotent-separating congruence, as a class id per element.
/// a μ b iff a and b share domain and range and conjugate every idempotent
/// identically on both sides.
pub fn mu_classes(s: &FinBim) -> Vec<u32> {
    let idems = s.idems_raw();
    let mut fingerprint: HashMap<(u32, u32, Vec<u32>, Vec<u32>), u32> = HashMap::new();
    let mut classes = vec![0u32; s.size()];
    for a in 0..s.size() as u32 {
        let ai = s.iv(a);
        let key = (
            s.d(a),
            s.r(a),
            idems.iter().map(|&e| s.m(s.m(a, e), ai)).collect(),
            idems.iter().map(|&e| s.m(s.m(ai, e), a)).collect(),
        );
        let next = fingerprint.len() as u32;
        classes[a as usize] = *fingerprint.entry(key).or_insert(next);
    }
    classes
}

/// The quotient by μ together with the quotient morphism. The quotient is
/// fundamental and restricts to a Boolean-algebra isomorphism on
/// idempotents.
pub fn quotient_by_mu(s: &Arc<FinBim>) -> Result<(Arc<FinBim>, Morphism)> {
    let classes = mu_classes(s);
    let k = classes.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut reps = vec![u32::MAX; k];
    for a in 0..s.size() as u32 {
        let c = classes[a as usize] as usize;
        if reps[c] == u32::MAX {
            reps[c] = a;
        }
    }
    // μ is a congruence; verify on the nose so a bug cannot slip through.
    for a in 0..s.size() as u32 {
        for b in 0..s.size() as u32 {
            let viaclasses =
                classes[s.m(reps[classes[a as usize] as usize], reps[classes[b as usize] as usize]) as usize];
            if classes[s.m(a, b) as usize] != viaclasses {
                return Err(Error::internal("μ fingerprints do not form a congruence"));
            }
        }
    }
    let mut mult = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            mult[i * k + j] = classes[s.m(reps[i], reps[j]) as usize];
        }
    }
    let inv = (0..k).map(|i| classes[s.iv(reps[i]) as usize]).collect();
    let zero = classes[s.zero_raw() as usize];
    let one = classes[s.one_raw() as usize];
    let quotient = FinBim::from_tables_trusted(k, mult, inv, zero, one);
    if !is_fundamental(&quotient) {
        return Err(Error::internal("quotient by μ must be fundamental"));
    }
    // μ separates idempotents.
    for i in 0..k {
        let members = (0..s.size() as u32)
            .filter(|&a| classes[a as usize] as usize == i && s.is_idem_raw(a))
            .count();
        if members > 1 {
            return Err(Error::internal("μ identified two idempotents"));
        }
    }
    let morphism = Morphism::new(s.clone(), quotient.clone(), classes)?;
    Ok((quotient, morphism))
}

/// One entry per connected component of the atom groupoid: the number of
/// atomic idempotents and the isotropy group at the least object.
pub fn decompose(s: &Arc<FinBim>) -> Result<Vec<(usize, GroupTable)>> {
    let at = atom_groupoid(s)?;
    let g = at.groupoid();
    let mut out = Vec::new();
    for component in g.components() {
        let base = *component.iter().min().expect("components are non-empty");
        out.push((component.len(), g.isotropy_at(base)?));
    }
    Ok(out)
}

/// Finds an isomorphism between finite simple monoids, if one exists. For
/// simple monoids an isomorphism exists exactly when the atom counts match,
/// and any atomic-idempotent pairing realizes one.
pub fn find_isomorphism(s: &Arc<FinBim>, t: &Arc<FinBim>) -> Result<Option<Morphism>> {
    if !is_simple(s) || !is_simple(t) {
        return Err(Error::domain(
            "isomorphism search is supported between finite simple monoids",
        ));
    }
    let es = s.atomic_idempotents();
    let fs = t.atomic_idempotents();
    if es.len() != fs.len() {
        return Ok(None);
    }
    crate::rook::iso_from_atom_listing(s, t, &es, &fs).map(Some)
}

/// Grows a subalgebra of a basic monoid into a fundamental subalgebra, by
/// adjoining signature idempotents of its units, closing under the unit
/// action and Boolean operations, and taking the join closure of the
/// resulting GE submonoid.
pub fn embed_into_fundamental(s: &Arc<FinBim>, t: &SubMonoid) -> Result<SubMonoid> {
    if !is_basic(s) {
        return Err(Error::precondition("ambient monoid must be basic"));
    }
    if !Arc::ptr_eq(t.parent(), s) {
        return Err(Error::domain("subalgebra belongs to a different monoid"));
    }
    if !t.is_subalgebra()? {
        return Err(Error::precondition("input must be a subalgebra"));
    }
    let units: Vec<El> = t
        .elements()
        .into_iter()
        .filter(|&x| s.is_unit(x).unwrap_or(false))
        .collect();
    let mut gens: Vec<El> = t
        .elements()
        .into_iter()
        .filter(|&x| s.is_idempotent(x).unwrap_or(false))
        .collect();
    for &g in &units {
        let (e, parts) = basic_decomposition(s, g)?;
        gens.push(e);
        for p in parts {
            gens.push(s.dom_of(p)?);
        }
    }
    let b = s.invariant_closure(&gens, &units)?;
    let t1 = s.ge_submonoid(&units, &b)?;
    let closure = s.join_closure(&t1.elements())?;
    for x in t.elements() {
        if !closure.contains(x) {
            return Err(Error::internal("fundamentalization lost an element of the input"));
        }
    }
    let (materialized, _) = closure.materialize()?;
    if !is_fundamental(&materialized) || !is_basic(&materialized) {
        return Err(Error::internal("fundamentalization failed to be fundamental"));
    }
    Ok(closure)
}

/// Flat summary of the structural predicates and counts of a monoid.
///
/// Serialized keys (text and JSON) are exactly the field names:
/// `elements`, `idempotents`, `atoms`, `units`, `d_classes`, `fundamental`,
/// `factorizable`, `basic`, `clifford`, `zero_simplifying`,
/// `dedekind_finite`, `directly_finite`, `d_cancellative`,
/// `d_complementation`, `zero_disjunctive`, `j_linear`, `j_lattice`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct StructureReport {
    pub elements: usize,
    pub idempotents: usize,
    pub atoms: usize,
    pub units: usize,
    pub d_classes: usize,
    pub fundamental: bool,
    pub factorizable: bool,
    pub basic: bool,
    pub clifford: bool,
    pub zero_simplifying: bool,
    pub dedekind_finite: bool,
    pub directly_finite: bool,
    pub d_cancellative: bool,
    pub d_complementation: bool,
    pub zero_disjunctive: bool,
    pub j_linear: bool,
    pub j_lattice: bool,
}

impl StructureReport {
    pub fn compute(s: &Arc<FinBim>) -> StructureReport {
        let poset = principal_ideal_poset(s);
        let mut d_classes = 0usize;
        let idems = s.idems_raw();
        let mut seen: Vec<u32> = Vec::new();
        for &e in idems {
            if !seen.iter().any(|&f| s.d_related_raw(e, f)) {
                seen.push(e);
                d_classes += 1;
            }
        }
        StructureReport {
            elements: s.size(),
            idempotents: idems.len(),
            atoms: s.atoms_raw().len(),
            units: s.units_raw().len(),
            d_classes,
            fundamental: is_fundamental(s),
            factorizable: is_factorizable(s),
            basic: is_basic(s),
            clifford: is_clifford(s),
            zero_simplifying: s.is_zero_simplifying(),
            dedekind_finite: is_dedekind_finite(s),
            directly_finite: is_directly_finite(s),
            d_cancellative: is_d_cancellative(s),
            d_complementation: has_d_complementation(s),
            zero_disjunctive: is_zero_disjunctive(s),
            j_linear: poset.is_linear,
            j_lattice: poset.is_lattice,
        }
    }

    /// Deterministic `key=value` block, one line per field.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            out.push_str(k);
            out.push('=');
            out.push_str(&v);
            out.push('\n');
        };
        kv("elements", self.elements.to_string());
        kv("idempotents", self.idempotents.to_string());
        kv("atoms", self.atoms.to_string());
        kv("units", self.units.to_string());
        kv("d_classes", self.d_classes.to_string());
        kv("fundamental", self.fundamental.to_string());
        kv("factorizable", self.factorizable.to_string());
        kv("basic", self.basic.to_string());
        kv("clifford", self.clifford.to_string());
        kv("zero_simplifying", self.zero_simplifying.to_string());
        kv("dedekind_finite", self.dedekind_finite.to_string());
        kv("directly_finite", self.directly_finite.to_string());
        kv("d_cancellative", self.d_cancellative.to_string());
        kv("d_complementation", self.d_complementation.to_string());
        kv("zero_disjunctive", self.zero_disjunctive.to_string());
        kv("j_linear", self.j_linear.to_string());
        kv("j_lattice", self.j_lattice.to_string());
        out
    }
}
