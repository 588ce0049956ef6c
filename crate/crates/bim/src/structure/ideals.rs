//! Additive ideals of the idempotent algebra, pencils, and the poset of
//! principal two-sided ideals.

use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::finmon::{El, FinBim};

/// Closes a set of idempotents into an additive ideal of E(S): an order-ideal
/// closed under conjugation by every element and under joins.
fn close_ideal(s: &FinBim, seed: &BitSet) -> BitSet {
    let n = s.size();
    let mut f = seed.clone();
    f.insert(s.zero_raw() as usize);
    loop {
        let mut grew = false;
        let members: Vec<u32> = f.iter().map(|i| i as u32).collect();
        for &e in &members {
            for &g in s.idems_raw() {
                if s.leq_raw(g, e) && !f.contains(g as usize) {
                    f.insert(g as usize);
                    grew = true;
                }
            }
            for x in 0..n as u32 {
                let conj = s.m(s.m(x, e), s.iv(x));
                if !f.contains(conj as usize) {
                    f.insert(conj as usize);
                    grew = true;
                }
            }
            for &other in &members {
                if let Some(j) = s.join_raw(e, other) {
                    if !f.contains(j as usize) {
                        f.insert(j as usize);
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return f;
        }
    }
}

impl FinBim {
    /// All additive ideals of E(S), each as a sorted list of idempotents,
    /// ordered by size then content. Generated as closures of single
    /// idempotents, then closed under pairwise unions.
    pub fn additive_ideals(&self) -> Vec<Vec<El>> {
        let mut ideals: Vec<BitSet> = Vec::new();
        let push = |set: BitSet, ideals: &mut Vec<BitSet>| {
            if !ideals.contains(&set) {
                ideals.push(set);
            }
        };
        push(close_ideal(self, &BitSet::new(self.size())), &mut ideals);
        for &e in self.idems_raw() {
            let seed = BitSet::from_indices(self.size(), [e as usize]);
            push(close_ideal(self, &seed), &mut ideals);
        }
        loop {
            let mut grew = false;
            let snapshot = ideals.clone();
            for (i, a) in snapshot.iter().enumerate() {
                for b in &snapshot[i + 1..] {
                    let mut u = a.clone();
                    u.union_with(b);
                    let closed = close_ideal(self, &u);
                    if !ideals.contains(&closed) {
                        ideals.push(closed);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<Vec<El>> = ideals
            .iter()
            .map(|set| set.iter().map(|i| self.wrap(i as u32)).collect())
            .collect();
        out.sort_by_key(|ideal| {
            (
                ideal.len(),
                ideal.iter().map(|e| e.index()).collect::<Vec<_>>(),
            )
        });
        out
    }

    /// Exactly two additive ideals: {0} and E(S).
    pub fn is_zero_simplifying(&self) -> bool {
        self.additive_ideals().len() == 2
    }

    /// The elements of the additive ideal of S corresponding to an additive
    /// ideal F of E(S): the join closure of S·F·S.
    pub fn additive_ideal_elements(&self, f: &[El]) -> Result<Vec<El>> {
        let mut set = BitSet::new(self.size());
        for &e in f {
            let e = self.check(e)?;
            if !self.is_idem_raw(e) {
                return Err(Error::domain("additive ideals of E(S) consist of idempotents"));
            }
            for x in 0..self.size() as u32 {
                let xe = self.m(x, e);
                for y in 0..self.size() as u32 {
                    set.insert(self.m(xe, y) as usize);
                }
            }
        }
        set.insert(self.zero_raw() as usize);
        loop {
            let mut grew = false;
            let members: Vec<u32> = set.iter().map(|i| i as u32).collect();
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    if let Some(j) = self.join_raw(a, b) {
                        if !set.contains(j as usize) {
                            set.insert(j as usize);
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        Ok(set.iter().map(|i| self.wrap(i as u32)).collect())
    }

    /// Pencil order f ⪯ e: some finite set X has ⋁ d(X) = f and ⋁ r(X) <= e.
    /// Decided as membership of f in the additive ideal generated by e.
    pub fn pencil_leq(&self, f: El, e: El) -> Result<bool> {
        let f = self.check(f)?;
        let e = self.check(e)?;
        if f == self.zero_raw() || e == self.zero_raw() {
            return Err(Error::domain("pencils are defined between non-zero idempotents"));
        }
        if !self.is_idem_raw(f) || !self.is_idem_raw(e) {
            return Err(Error::domain("pencils are defined between idempotents"));
        }
        let ideal = close_ideal(self, &BitSet::from_indices(self.size(), [e as usize]));
        Ok(ideal.contains(f as usize))
    }
}

/// The poset of principal two-sided ideals (J-classes), with lattice and
/// linearity flags.
pub struct JPoset {
    monoid: Arc<FinBim>,
    /// one representative idempotent per class
    reps: Vec<u32>,
    /// class id of every element
    class_of: Vec<u32>,
    /// leq[i * k + j]: class i's ideal is contained in class j's
    leq: Vec<bool>,
    pub is_lattice: bool,
    pub is_linear: bool,
}

impl std::fmt::Debug for JPoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("JPoset")
            .field("classes", &self.reps.len())
            .field("is_lattice", &self.is_lattice)
            .field("is_linear", &self.is_linear)
            .finish()
    }
}

impl JPoset {
    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    pub fn class_of(&self, a: El) -> Result<usize> {
        Ok(self.class_of[self.monoid.check(a)? as usize] as usize)
    }

    pub fn representative(&self, class: usize) -> El {
        self.monoid.wrap(self.reps[class])
    }

    pub fn leq_classes(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.reps.len() + j]
    }

    /// Greatest lower bound in the class order, when it exists.
    pub fn meet_class(&self, i: usize, j: usize) -> Option<usize> {
        let k = self.reps.len();
        let lower: Vec<usize> = (0..k)
            .filter(|&c| self.leq_classes(c, i) && self.leq_classes(c, j))
            .collect();
        let mut best = *lower.first()?;
        for &c in &lower {
            if self.leq_classes(best, c) {
                best = c;
            }
        }
        lower.iter().all(|&c| self.leq_classes(c, best)).then_some(best)
    }

    pub fn join_class(&self, i: usize, j: usize) -> Option<usize> {
        let k = self.reps.len();
        let upper: Vec<usize> = (0..k)
            .filter(|&c| self.leq_classes(i, c) && self.leq_classes(j, c))
            .collect();
        let mut best = *upper.first()?;
        for &c in &upper {
            if self.leq_classes(c, best) {
                best = c;
            }
        }
        upper.iter().all(|&c| self.leq_classes(best, c)).then_some(best)
    }
}

/// Orders the J-classes of `s` by inclusion of principal ideals.
pub fn principal_ideal_poset(s: &Arc<FinBim>) -> JPoset {
    let ideals = s.j_ideals();
    // Distinct ideals among idempotents, each keyed by its least idempotent.
    let mut reps: Vec<u32> = Vec::new();
    let mut ideal_list: Vec<&BitSet> = Vec::new();
    for &e in s.idems_raw() {
        let ideal = &ideals[&e];
        if !ideal_list.contains(&ideal) {
            ideal_list.push(ideal);
            reps.push(e);
        }
    }
    let k = reps.len();
    let mut class_of = vec![0u32; s.size()];
    for a in 0..s.size() as u32 {
        let ideal = &ideals[&s.d(a)];
        class_of[a as usize] = ideal_list.iter().position(|&x| x == ideal).expect("seen") as u32;
    }
    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = ideal_list[i].is_subset(ideal_list[j]);
        }
    }
    let mut poset = JPoset {
        monoid: s.clone(),
        reps,
        class_of,
        leq,
        is_lattice: false,
        is_linear: false,
    };
    poset.is_linear = (0..k).all(|i| (0..k).all(|j| poset.leq_classes(i, j) || poset.leq_classes(j, i)));
    poset.is_lattice = (0..k).all(|i| {
        (0..k).all(|j| poset.meet_class(i, j).is_some() && poset.join_class(i, j).is_some())
    });
    poset
}
