//! Finite groupoids, the atom groupoid of a monoid, local bisections, and
//! the reconstruction isomorphism S ≅ K(at(S)).

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finmon::{El, FinBim, Morphism};
use crate::rook::GroupTable;
use crate::Limits;

/// A finite groupoid with explicit composition. `compose(a, b)` is defined
/// exactly when `dom(a) = cod(b)` and then runs "b first, then a", matching
/// the restricted product of an inverse semigroup.
pub struct FiniteGroupoid {
    objects: usize,
    dom: Vec<u32>,
    cod: Vec<u32>,
    compose: Vec<Option<u32>>,
    inv: Vec<u32>,
    identity: Vec<u32>,
}

impl std::fmt::Debug for FiniteGroupoid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroupoid")
            .field("objects", &self.objects)
            .field("arrows", &self.dom.len())
            .finish()
    }
}

impl FiniteGroupoid {
    pub fn new(
        objects: usize,
        dom: Vec<u32>,
        cod: Vec<u32>,
        compose: Vec<Option<u32>>,
        inv: Vec<u32>,
        identity: Vec<u32>,
    ) -> Result<FiniteGroupoid> {
        let k = dom.len();
        if cod.len() != k || inv.len() != k || compose.len() != k * k || identity.len() != objects {
            return Err(Error::domain("malformed groupoid tables"));
        }
        let g = FiniteGroupoid { objects, dom, cod, compose, inv, identity };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let k = self.arrow_count();
        let axiom = |name: &'static str, witness: &[u32]| Error::Axiom {
            axiom: name,
            witness: witness.iter().map(|&w| w as usize).collect(),
        };
        for a in 0..k as u32 {
            if self.dom[a as usize] as usize >= self.objects
                || self.cod[a as usize] as usize >= self.objects
            {
                return Err(axiom("groupoid-object-range", &[a]));
            }
        }
        for (o, &e) in self.identity.iter().enumerate() {
            if e as usize >= k || self.dom[e as usize] as usize != o || self.cod[e as usize] as usize != o {
                return Err(axiom("groupoid-identity-arrow", &[o as u32]));
            }
        }
        for a in 0..k as u32 {
            for b in 0..k as u32 {
                let defined = self.dom[a as usize] == self.cod[b as usize];
                match self.compose_raw(a, b) {
                    Some(c) => {
                        if !defined {
                            return Err(axiom("groupoid-partiality", &[a, b]));
                        }
                        if self.dom[c as usize] != self.dom[b as usize]
                            || self.cod[c as usize] != self.cod[a as usize]
                        {
                            return Err(axiom("groupoid-endpoints", &[a, b]));
                        }
                    }
                    None => {
                        if defined {
                            return Err(axiom("groupoid-partiality", &[a, b]));
                        }
                    }
                }
            }
        }
        for a in 0..k as u32 {
            let ai = self.inv[a as usize];
            if self.dom[ai as usize] != self.cod[a as usize]
                || self.cod[ai as usize] != self.dom[a as usize]
            {
                return Err(axiom("groupoid-inverse", &[a]));
            }
            let left = self.identity[self.cod[a as usize] as usize];
            let right = self.identity[self.dom[a as usize] as usize];
            if self.compose_raw(a, ai) != Some(left) || self.compose_raw(ai, a) != Some(right) {
                return Err(axiom("groupoid-inverse", &[a]));
            }
            if self.compose_raw(a, right) != Some(a) || self.compose_raw(left, a) != Some(a) {
                return Err(axiom("groupoid-identity-arrow", &[a]));
            }
        }
        for a in 0..k as u32 {
            for b in 0..k as u32 {
                for c in 0..k as u32 {
                    let lhs = self.compose_raw(a, b).and_then(|ab| self.compose_raw(ab, c));
                    let rhs = self.compose_raw(b, c).and_then(|bc| self.compose_raw(a, bc));
                    if lhs != rhs {
                        return Err(axiom("groupoid-associativity", &[a, b, c]));
                    }
                }
            }
        }
        Ok(())
    }

    /// The groupoid of an equivalence-relation on n points: one arrow for
    /// every ordered pair of objects.
    pub fn pair_groupoid(n: usize) -> Result<FiniteGroupoid> {
        if n == 0 {
            return Err(Error::domain("pair groupoid needs at least one object"));
        }
        let arrow = |d: usize, c: usize| (d * n + c) as u32;
        let k = n * n;
        let mut dom = vec![0u32; k];
        let mut cod = vec![0u32; k];
        let mut inv = vec![0u32; k];
        for d in 0..n {
            for c in 0..n {
                dom[arrow(d, c) as usize] = d as u32;
                cod[arrow(d, c) as usize] = c as u32;
                inv[arrow(d, c) as usize] = arrow(c, d);
            }
        }
        let mut compose = vec![None; k * k];
        for d1 in 0..n {
            for c1 in 0..n {
                for d2 in 0..n {
                    let a = arrow(d1, c1);
                    let b = arrow(d2, d1);
                    compose[a as usize * k + b as usize] = Some(arrow(d2, c1));
                }
            }
        }
        let identity = (0..n).map(|o| arrow(o, o)).collect();
        FiniteGroupoid::new(n, dom, cod, compose, inv, identity)
    }

    /// Disjoint union of two groupoids.
    pub fn disjoint_union(&self, other: &FiniteGroupoid) -> Result<FiniteGroupoid> {
        let ka = self.arrow_count();
        let kb = other.arrow_count();
        let k = ka + kb;
        let mut dom = self.dom.clone();
        let mut cod = self.cod.clone();
        let mut inv = self.inv.clone();
        dom.extend(other.dom.iter().map(|&d| d + self.objects as u32));
        cod.extend(other.cod.iter().map(|&c| c + self.objects as u32));
        inv.extend(other.inv.iter().map(|&i| i + ka as u32));
        let mut compose = vec![None; k * k];
        for a in 0..ka {
            for b in 0..ka {
                compose[a * k + b] = self.compose[a * ka + b];
            }
        }
        for a in 0..kb {
            for b in 0..kb {
                compose[(ka + a) * k + (ka + b)] = other.compose[a * kb + b].map(|c| c + ka as u32);
            }
        }
        let mut identity = self.identity.clone();
        identity.extend(other.identity.iter().map(|&e| e + ka as u32));
        FiniteGroupoid::new(self.objects + other.objects, dom, cod, compose, inv, identity)
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn arrow_count(&self) -> usize {
        self.dom.len()
    }

    pub fn dom(&self, arrow: usize) -> usize {
        self.dom[arrow] as usize
    }

    pub fn cod(&self, arrow: usize) -> usize {
        self.cod[arrow] as usize
    }

    pub fn inv(&self, arrow: usize) -> usize {
        self.inv[arrow] as usize
    }

    pub fn identity_arrow(&self, object: usize) -> usize {
        self.identity[object] as usize
    }

    #[inline]
    pub(crate) fn compose_raw(&self, a: u32, b: u32) -> Option<u32> {
        self.compose[a as usize * self.arrow_count() + b as usize]
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.compose_raw(a as u32, b as u32).map(|c| c as usize)
    }

    /// At most one arrow between any two objects.
    pub fn is_principal(&self) -> bool {
        let mut seen = vec![false; self.objects * self.objects];
        for a in 0..self.arrow_count() {
            let key = self.dom(a) * self.objects + self.cod(a);
            if std::mem::replace(&mut seen[key], true) {
                return false;
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components as sorted object lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.objects];
        let mut next = 0;
        for start in 0..self.objects {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(o) = stack.pop() {
                for a in 0..self.arrow_count() {
                    for other in [self.dom(a), self.cod(a)] {
                        if (self.dom(a) == o || self.cod(a) == o) && comp[other] == usize::MAX {
                            comp[other] = next;
                            stack.push(other);
                        }
                    }
                }
            }
            next += 1;
        }
        let mut out = vec![Vec::new(); next];
        for (o, &c) in comp.iter().enumerate() {
            out[c].push(o);
        }
        out
    }

    /// The isotropy group at an object, from the loops under composition.
    pub fn isotropy_at(&self, object: usize) -> Result<GroupTable> {
        let loops: Vec<u32> = (0..self.arrow_count() as u32)
            .filter(|&a| self.dom[a as usize] as usize == object && self.cod[a as usize] as usize == object)
            .collect();
        let pos: HashMap<u32, u32> = loops.iter().enumerate().map(|(i, &a)| (a, i as u32)).collect();
        let k = loops.len();
        let mut mult = vec![0u32; k * k];
        for (i, &a) in loops.iter().enumerate() {
            for (j, &b) in loops.iter().enumerate() {
                let c = self
                    .compose_raw(a, b)
                    .ok_or_else(|| Error::internal("loops at one object must compose"))?;
                mult[i * k + j] = pos[&c];
            }
        }
        let inv = loops.iter().map(|&a| pos[&self.inv[a as usize]]).collect();
        let id = pos[&(self.identity[object])];
        GroupTable::new(k, mult, inv, id)
    }
}

/// The atoms of a monoid under the restricted product, with the dictionary
/// back into the monoid.
pub struct AtomGroupoid {
    monoid: Arc<FinBim>,
    groupoid: FiniteGroupoid,
    /// arrow index -> element index of the atom
    arrow_elements: Vec<u32>,
    /// object index -> element index of the atomic idempotent
    object_idempotents: Vec<u32>,
}

impl std::fmt::Debug for AtomGroupoid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AtomGroupoid")
            .field("objects", &self.object_idempotents.len())
            .field("arrows", &self.arrow_elements.len())
            .finish()
    }
}

impl AtomGroupoid {
    pub fn monoid(&self) -> &Arc<FinBim> {
        &self.monoid
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn arrow_element(&self, arrow: usize) -> El {
        self.monoid.wrap(self.arrow_elements[arrow])
    }

    pub fn object_idempotent(&self, object: usize) -> El {
        self.monoid.wrap(self.object_idempotents[object])
    }

    pub fn arrow_of(&self, a: El) -> Result<usize> {
        let raw = self.monoid.check(a)?;
        self.arrow_elements
            .iter()
            .position(|&x| x == raw)
            .ok_or_else(|| Error::domain("element is not an atom"))
    }
}

/// Assembles the atoms of `s` into a groupoid under the restricted product.
pub fn atom_groupoid(s: &Arc<FinBim>) -> Result<AtomGroupoid> {
    let atoms: Vec<u32> = s.atoms_raw().to_vec();
    let arrow_of: HashMap<u32, u32> = atoms.iter().enumerate().map(|(i, &a)| (a, i as u32)).collect();
    let object_idempotents: Vec<u32> = atoms.iter().copied().filter(|&a| s.is_idem_raw(a)).collect();
    let object_of: HashMap<u32, u32> = object_idempotents
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i as u32))
        .collect();
    let k = atoms.len();
    let mut dom = vec![0u32; k];
    let mut cod = vec![0u32; k];
    let mut inv = vec![0u32; k];
    for (i, &a) in atoms.iter().enumerate() {
        dom[i] = *object_of
            .get(&s.d(a))
            .ok_or_else(|| Error::internal("domain of an atom must be an atomic idempotent"))?;
        cod[i] = *object_of
            .get(&s.r(a))
            .ok_or_else(|| Error::internal("range of an atom must be an atomic idempotent"))?;
        inv[i] = arrow_of[&s.iv(a)];
    }
    let mut compose = vec![None; k * k];
    for (i, &a) in atoms.iter().enumerate() {
        for (j, &b) in atoms.iter().enumerate() {
            if s.d(a) == s.r(b) {
                let c = s.m(a, b);
                let arrow = arrow_of
                    .get(&c)
                    .ok_or_else(|| Error::internal("restricted product of atoms must be an atom"))?;
                compose[i * k + j] = Some(*arrow);
            }
        }
    }
    let identity = object_idempotents.iter().map(|e| arrow_of[e]).collect();
    let groupoid = FiniteGroupoid::new(object_idempotents.len(), dom, cod, compose, inv, identity)?;
    Ok(AtomGroupoid {
        monoid: s.clone(),
        groupoid,
        arrow_elements: atoms,
        object_idempotents,
    })
}

/// The monoid K(G) of local bisections of a finite groupoid, materialized,
/// with the dictionary between element indices and arrow sets.
pub struct BisectionModel {
    monoid: Arc<FinBim>,
    bisections: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
}

impl std::fmt::Debug for BisectionModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BisectionModel")
            .field("elements", &self.bisections.len())
            .finish()
    }
}

impl BisectionModel {
    pub fn monoid(&self) -> &Arc<FinBim> {
        &self.monoid
    }

    pub fn element_count(&self) -> usize {
        self.bisections.len()
    }

    /// The sorted arrow set of an element.
    pub fn bisection(&self, i: usize) -> &[u32] {
        &self.bisections[i]
    }

    pub fn el_of(&self, arrows: &[u32]) -> Result<El> {
        let mut key = arrows.to_vec();
        key.sort_unstable();
        let i = self
            .index
            .get(&key)
            .ok_or_else(|| Error::domain("arrow set is not a local bisection"))?;
        self.monoid.el(*i as usize)
    }
}

/// Enumerates all local bisections of `g` (arrow subsets on which dom and
/// cod are both injective) under the setwise product.
pub fn local_bisections(g: &FiniteGroupoid, limits: &Limits) -> Result<BisectionModel> {
    let mut arrows_by_dom: Vec<Vec<u32>> = vec![Vec::new(); g.object_count()];
    for a in 0..g.arrow_count() {
        arrows_by_dom[g.dom(a)].push(a as u32);
    }
    let mut bisections: Vec<Vec<u32>> = Vec::new();
    let mut chosen: Vec<u32> = Vec::new();
    let mut cod_used = vec![false; g.object_count()];
    fn rec(
        obj: usize,
        g: &FiniteGroupoid,
        by_dom: &[Vec<u32>],
        chosen: &mut Vec<u32>,
        cod_used: &mut Vec<bool>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if obj == g.object_count() {
            let mut b = chosen.clone();
            b.sort_unstable();
            out.push(b);
            return;
        }
        rec(obj + 1, g, by_dom, chosen, cod_used, out);
        for &a in &by_dom[obj] {
            let c = g.cod(a as usize);
            if cod_used[c] {
                continue;
            }
            cod_used[c] = true;
            chosen.push(a);
            rec(obj + 1, g, by_dom, chosen, cod_used, out);
            chosen.pop();
            cod_used[c] = false;
        }
    }
    rec(0, g, &arrows_by_dom, &mut chosen, &mut cod_used, &mut bisections);
    if bisections.len() > limits.max_elements {
        return Err(Error::resource(format!(
            "groupoid has {} local bisections (limit {})",
            bisections.len(),
            limits.max_elements
        )));
    }
    bisections.sort();
    let index: HashMap<Vec<u32>, u32> = bisections
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), i as u32))
        .collect();
    let k = bisections.len();
    let product = |x: &[u32], y: &[u32]| -> Result<Vec<u32>> {
        let mut out = Vec::new();
        for &a in x {
            for &b in y {
                if let Some(c) = g.compose_raw(a, b) {
                    out.push(c);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    };
    let mut mult = vec![0u32; k * k];
    for (i, x) in bisections.iter().enumerate() {
        for (j, y) in bisections.iter().enumerate() {
            let p = product(x, y)?;
            mult[i * k + j] = *index
                .get(&p)
                .ok_or_else(|| Error::internal("product of bisections is not a bisection"))?;
        }
    }
    let inv = bisections
        .iter()
        .map(|x| {
            let mut xi: Vec<u32> = x.iter().map(|&a| g.inv(a as usize) as u32).collect();
            xi.sort_unstable();
            index
                .get(&xi)
                .copied()
                .ok_or_else(|| Error::internal("inverse of a bisection is not a bisection"))
        })
        .collect::<Result<Vec<u32>>>()?;
    let zero = index[&Vec::new()];
    let mut one_arrows: Vec<u32> = (0..g.object_count())
        .map(|o| g.identity_arrow(o) as u32)
        .collect();
    one_arrows.sort_unstable();
    let one = index[&one_arrows];
    let monoid = FinBim::from_tables_trusted(k, mult, inv, zero, one);
    Ok(BisectionModel { monoid, bisections, index })
}

/// The reconstruction map a ↦ { atoms below a }, verified to be an
/// isomorphism onto the local-bisection monoid of the atom groupoid.
pub fn reconstruct(s: &Arc<FinBim>, limits: &Limits) -> Result<Morphism> {
    let at = atom_groupoid(s)?;
    let model = local_bisections(at.groupoid(), limits)?;
    let atoms = s.atoms_raw();
    let mut map = Vec::with_capacity(s.size());
    for a in 0..s.size() as u32 {
        let arrows: Vec<u32> = atoms
            .iter()
            .enumerate()
            .filter(|&(_, &x)| s.leq_raw(x, a))
            .map(|(i, _)| i as u32)
            .collect();
        map.push(
            model
                .el_of(&arrows)?
                .index() as u32,
        );
    }
    let iso = Morphism::new(s.clone(), model.monoid().clone(), map)
        .map_err(|e| Error::internal(format!("reconstruction map is not a morphism: {e}")))?;
    if !iso.is_bijective() {
        return Err(Error::internal("reconstruction map is not bijective"));
    }
    Ok(iso)
}
