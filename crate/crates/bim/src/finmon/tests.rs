use std::sync::Arc;

use crate::error::Error;
use crate::finmon::{parse_bim, format_bim, validate_tables, El, FinBim, RawTables, ValidationOutcome};
use crate::rook::{rook_monoid, symmetric_inverse_monoid, GroupTable, RookMatrix, RookModel};
use crate::Limits;

fn limits() -> Limits {
    Limits::default()
}

fn i_n(n: usize) -> Arc<RookModel> {
    symmetric_inverse_monoid(n, &limits()).unwrap()
}

/// The partial bijection sending each listed 1-based point to its image.
fn partial(model: &RookModel, pairs: &[(usize, usize)]) -> El {
    let mut colmap = vec![None; model.size()];
    for &(from, to) in pairs {
        colmap[from - 1] = Some(((to - 1) as u32, 0));
    }
    model
        .el_of(&RookMatrix::from_colmap(model.size(), colmap).unwrap())
        .unwrap()
}

// ---- brute-force oracles -----------------------------------------------

fn oracle_join(s: &FinBim, a: El, b: El) -> Option<El> {
    let ubs: Vec<El> = s
        .elements()
        .into_iter()
        .filter(|&u| s.leq(a, u).unwrap() && s.leq(b, u).unwrap())
        .collect();
    ubs.iter()
        .copied()
        .find(|&m| ubs.iter().all(|&u| s.leq(m, u).unwrap()))
}

fn oracle_meet(s: &FinBim, a: El, b: El) -> Option<El> {
    let lbs: Vec<El> = s
        .elements()
        .into_iter()
        .filter(|&l| s.leq(l, a).unwrap() && s.leq(l, b).unwrap())
        .collect();
    lbs.iter()
        .copied()
        .find(|&m| lbs.iter().all(|&l| s.leq(l, m).unwrap()))
}

fn oracle_phi(s: &FinBim, a: El) -> El {
    let cands: Vec<El> = s
        .idempotents()
        .into_iter()
        .filter(|&e| s.leq(e, a).unwrap())
        .collect();
    cands
        .iter()
        .copied()
        .find(|&m| cands.iter().all(|&e| s.leq(e, m).unwrap()))
        .expect("0 is always a candidate")
}

// ---- validation ----------------------------------------------------------

#[test]
fn validate_passes_on_i2_tables() {
    let s = i_n(2);
    assert_eq!(s.monoid().size(), 7);
    assert!(validate_tables(&s.monoid().raw_tables(), &limits()).is_pass());
}

#[test]
fn validate_passes_on_two_element_boolean_algebra() {
    // {0, 1} with 1·1 = 1 is a unital Boolean algebra qua monoid.
    let raw = RawTables { n: 2, mult: vec![0, 0, 0, 1], inv: vec![0, 1], zero: 0, one: 1 };
    assert!(validate_tables(&raw, &limits()).is_pass());
}

#[test]
fn validate_rejects_three_chain_semilattice() {
    // 0 < e < 1 as a meet-semilattice: e has no complement.
    let mut mult = vec![0u32; 9];
    for a in 0..3usize {
        for b in 0..3usize {
            mult[a * 3 + b] = a.min(b) as u32;
        }
    }
    let raw = RawTables { n: 3, mult, inv: vec![0, 1, 2], zero: 0, one: 2 };
    match validate_tables(&raw, &limits()) {
        ValidationOutcome::Fail(v) => {
            assert_eq!(v.axiom, "idempotent-complement");
            assert_eq!(v.witness, vec![1]);
        }
        ValidationOutcome::Pass => panic!("three-chain is not Boolean"),
    }
}

#[test]
fn validate_reports_first_broken_axiom() {
    let s = i_n(2);
    let mut raw = s.monoid().raw_tables();
    raw.mult[5 * raw.n + 3] = raw.one;
    match validate_tables(&raw, &limits()) {
        ValidationOutcome::Fail(v) => assert!(!v.witness.is_empty()),
        ValidationOutcome::Pass => panic!("corrupted table passed"),
    }
}

// ---- relations -----------------------------------------------------------

#[test]
fn relations_orthogonal_pair_in_i2() {
    let s = i_n(2);
    let a = partial(&s, &[(1, 2)]);
    let b = partial(&s, &[(2, 1)]);
    let rel = s.monoid().relations(a, b).unwrap();
    assert!(rel.orthogonal);
    assert!(rel.compatible);
    assert!(!rel.leq);
}

#[test]
fn relations_reflexive() {
    let s = i_n(2);
    for a in s.monoid().elements() {
        let rel = s.monoid().relations(a, a).unwrap();
        assert!(rel.leq && rel.compatible && rel.d_related && rel.j_related);
    }
}

#[test]
fn relations_atomic_idempotents_d_related() {
    let s = i_n(2);
    let e1 = s.atomic_el(1).unwrap();
    let e2 = s.atomic_el(2).unwrap();
    let rel = s.monoid().relations(e1, e2).unwrap();
    assert!(rel.d_related);
    assert!(rel.j_related);
    assert!(!rel.leq);
}

#[test]
fn relations_reject_cross_monoid_elements() {
    let s = i_n(2);
    let t = i_n(2);
    let a = s.monoid().el(0).unwrap();
    let b = t.monoid().el(0).unwrap();
    assert!(matches!(s.monoid().relations(a, b), Err(Error::Domain(_))));
    assert!(matches!(s.monoid().mul(a, b), Err(Error::Domain(_))));
}

// ---- join -----------------------------------------------------------------

#[test]
fn join_of_orthogonal_atoms_is_transposition() {
    let s = i_n(2);
    let a = partial(&s, &[(1, 2)]);
    let b = partial(&s, &[(2, 1)]);
    let transposition = partial(&s, &[(1, 2), (2, 1)]);
    assert_eq!(s.monoid().join(a, b).unwrap(), transposition);
}

#[test]
fn join_with_zero_and_self() {
    let s = i_n(2);
    let zero = s.monoid().zero_el();
    for a in s.monoid().elements() {
        assert_eq!(s.monoid().join(a, zero).unwrap(), a);
        assert_eq!(s.monoid().join(a, a).unwrap(), a);
    }
}

#[test]
fn join_of_incompatible_pair_is_an_error() {
    let s = i_n(2);
    let id = s.monoid().one_el();
    let transposition = partial(&s, &[(1, 2), (2, 1)]);
    assert!(matches!(
        s.monoid().join(id, transposition),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn join_matches_least_upper_bound_oracle() {
    for s in [i_n(2), i_n(3)] {
        let m = s.monoid();
        for a in m.elements() {
            for b in m.elements() {
                if m.relations(a, b).unwrap().compatible {
                    assert_eq!(m.join(a, b).unwrap(), oracle_join(m, a, b).unwrap());
                }
            }
        }
    }
}

// ---- fixed point and meet --------------------------------------------------

#[test]
fn fixed_point_examples() {
    let s2 = i_n(2);
    let transposition = partial(&s2, &[(1, 2), (2, 1)]);
    assert_eq!(
        s2.monoid().fixed_point(transposition).unwrap(),
        s2.monoid().zero_el()
    );
    for e in s2.monoid().idempotents() {
        assert_eq!(s2.monoid().fixed_point(e).unwrap(), e);
    }
    let s3 = i_n(3);
    let a = partial(&s3, &[(1, 2), (3, 3)]);
    let e3 = partial(&s3, &[(3, 3)]);
    assert_eq!(s3.monoid().fixed_point(a).unwrap(), e3);
}

#[test]
fn fixed_point_matches_oracle_and_identities() {
    for s in [i_n(2), i_n(3)] {
        let m = s.monoid();
        for a in m.elements() {
            let phi = m.fixed_point(a).unwrap();
            assert_eq!(phi, oracle_phi(m, a));
            assert_eq!(phi, m.meet(a, m.one_el()).unwrap());
            assert_eq!(phi, m.fixed_point(m.inverse(a).unwrap()).unwrap());
            for e in m.idempotents() {
                let lhs = m.fixed_point(m.mul(a, e).unwrap()).unwrap();
                let rhs = m.mul(phi, e).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        for g in m.units() {
            for h in m.units() {
                let hi = m.inverse(h).unwrap();
                let conj = m.mul(m.mul(h, g).unwrap(), hi).unwrap();
                let lhs = m.fixed_point(conj).unwrap();
                let rhs = m
                    .mul(m.mul(h, m.fixed_point(g).unwrap()).unwrap(), hi)
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn fixed_point_commutes_with_its_element() {
    // φ(s) = s·φ(s) = φ(s)·s.
    for s in [i_n(2), i_n(3)] {
        let m = s.monoid();
        for a in m.elements() {
            let phi = m.fixed_point(a).unwrap();
            assert_eq!(m.mul(a, phi).unwrap(), phi);
            assert_eq!(m.mul(phi, a).unwrap(), phi);
        }
    }
}

#[test]
fn factorizable_submonoid_is_its_unit_group_times_its_idempotents() {
    // The factorizable submonoid {0, id, transposition} of I_2 decomposes
    // as U(T)·E(T).
    let s = i_n(2);
    let m = s.monoid();
    let t = m.ge_submonoid(&m.units(), &[m.zero_el(), m.one_el()]).unwrap();
    let units: Vec<El> = t
        .elements()
        .into_iter()
        .filter(|&x| m.is_unit(x).unwrap())
        .collect();
    let idems: Vec<El> = t
        .elements()
        .into_iter()
        .filter(|&x| m.is_idempotent(x).unwrap())
        .collect();
    let rebuilt = m.ge_submonoid(&units, &idems).unwrap();
    assert_eq!(rebuilt.elements(), t.elements());
}

#[test]
fn meet_examples_and_oracle() {
    let s = i_n(2);
    let m = s.monoid();
    let transposition = partial(&s, &[(1, 2), (2, 1)]);
    assert_eq!(m.meet(m.one_el(), transposition).unwrap(), m.zero_el());
    for a in m.elements() {
        assert_eq!(m.meet(a, a).unwrap(), a);
        assert_eq!(m.meet(a, m.one_el()).unwrap(), m.fixed_point(a).unwrap());
    }
    for s in [
        i_n(2),
        i_n(3),
        rook_monoid(2, GroupTable::cyclic(2).unwrap(), &limits()).unwrap(),
    ] {
        let m = s.monoid();
        for a in m.elements() {
            for b in m.elements() {
                assert_eq!(m.meet(a, b).unwrap(), oracle_meet(m, a, b).unwrap());
            }
        }
    }
}

#[test]
fn meet_distributivity() {
    for s in [
        i_n(2),
        rook_monoid(2, GroupTable::cyclic(2).unwrap(), &limits()).unwrap(),
    ] {
        let m = s.monoid();
        for a in m.elements() {
            for b in m.elements() {
                for c in m.elements() {
                    let ab = m.meet(a, b).unwrap();
                    let lhs = m.mul(ab, c).unwrap();
                    let rhs = m
                        .meet(m.mul(a, c).unwrap(), m.mul(b, c).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs);
                    let lhs = m.mul(c, ab).unwrap();
                    let rhs = m
                        .meet(m.mul(c, a).unwrap(), m.mul(c, b).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

// ---- complements ------------------------------------------------------------

#[test]
fn complement_examples() {
    let s = i_n(2);
    let m = s.monoid();
    let e1 = s.atomic_el(1).unwrap();
    let e2 = s.atomic_el(2).unwrap();
    assert_eq!(m.complement(e1).unwrap(), e2);
    for f in m.idempotents() {
        assert_eq!(m.complement_in(m.zero_el(), f).unwrap(), f);
        assert_eq!(m.complement_in(f, f).unwrap(), m.zero_el());
    }
}

#[test]
fn complement_domain_errors() {
    let s = i_n(2);
    let m = s.monoid();
    let transposition = partial(&s, &[(1, 2), (2, 1)]);
    assert!(matches!(m.complement(transposition), Err(Error::Domain(_))));
    let e1 = s.atomic_el(1).unwrap();
    let e2 = s.atomic_el(2).unwrap();
    assert!(matches!(m.complement_in(e1, e2), Err(Error::Domain(_))));
}

#[test]
fn difference_of_general_elements() {
    let s = i_n(3);
    let m = s.monoid();
    let a = partial(&s, &[(1, 2)]);
    let b = partial(&s, &[(1, 2), (3, 3)]);
    let diff = m.difference(b, a).unwrap();
    assert_eq!(diff, partial(&s, &[(3, 3)]));
    assert_eq!(m.join(a, diff).unwrap(), b);
}

// ---- Boolean subalgebra generation ------------------------------------------

#[test]
fn boolean_subalgebra_of_nothing_is_zero_one() {
    let s = i_n(2);
    let m = s.monoid();
    let out = m.boolean_subalgebra_generated(&[]).unwrap();
    let mut expected = vec![m.zero_el(), m.one_el()];
    expected.sort();
    assert_eq!(out, expected);
}

#[test]
fn boolean_subalgebra_of_one_atom_in_i2_is_everything() {
    let s = i_n(2);
    let m = s.monoid();
    let e1 = s.atomic_el(1).unwrap();
    let out = m.boolean_subalgebra_generated(&[e1]).unwrap();
    let mut all = m.idempotents();
    all.sort();
    assert_eq!(out, all);
}

#[test]
fn boolean_subalgebra_of_all_atoms_is_all_idempotents() {
    let s = i_n(3);
    let m = s.monoid();
    let atoms = m.atomic_idempotents();
    let out = m.boolean_subalgebra_generated(&atoms).unwrap();
    assert_eq!(out.len(), m.idempotents().len());
}

#[test]
fn boolean_subalgebra_rejects_non_idempotent_generators() {
    let s = i_n(2);
    let a = partial(&s, &[(1, 2)]);
    assert!(matches!(
        s.monoid().boolean_subalgebra_generated(&[a]),
        Err(Error::Domain(_))
    ));
}

// ---- GE submonoids -----------------------------------------------------------

#[test]
fn ge_submonoid_of_trivial_group_is_the_semilattice() {
    let s = i_n(2);
    let m = s.monoid();
    let t = m.ge_submonoid(&[m.one_el()], &m.idempotents()).unwrap();
    let mut expected = m.idempotents();
    expected.sort();
    assert_eq!(t.elements(), expected);
}

#[test]
fn ge_submonoid_of_units_and_trivial_algebra() {
    let s = i_n(2);
    let m = s.monoid();
    let t = m
        .ge_submonoid(&m.units(), &[m.zero_el(), m.one_el()])
        .unwrap();
    assert_eq!(t.len(), 3); // 0, identity, transposition
    let transposition = partial(&s, &[(1, 2), (2, 1)]);
    assert!(t.contains(transposition));
    assert!(t.contains(m.zero_el()));
    assert!(t.contains(m.one_el()));
}

#[test]
fn ge_submonoid_of_units_and_all_idempotents_is_everything() {
    let s = i_n(2);
    let m = s.monoid();
    let t = m.ge_submonoid(&m.units(), &m.idempotents()).unwrap();
    assert_eq!(t.len(), 7);
}

#[test]
fn ge_submonoid_rejects_non_invariant_idempotents() {
    let s = i_n(2);
    let m = s.monoid();
    let e1 = s.atomic_el(1).unwrap();
    let err = m.ge_submonoid(&m.units(), &[m.one_el(), e1]);
    assert!(matches!(err, Err(Error::Precondition(_))));
}

// ---- invariant closure ---------------------------------------------------------

#[test]
fn invariant_closure_with_trivial_group_is_boolean_closure() {
    let s = i_n(3);
    let m = s.monoid();
    let e1 = s.atomic_el(1).unwrap();
    let lhs = m.invariant_closure(&[e1], &[m.one_el()]).unwrap();
    let rhs = m.boolean_subalgebra_generated(&[e1]).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn invariant_closure_orbit_example() {
    let s = i_n(2);
    let m = s.monoid();
    let e1 = s.atomic_el(1).unwrap();
    let transposition = partial(&s, &[(1, 2), (2, 1)]);
    let out = m.invariant_closure(&[e1], &[transposition]).unwrap();
    assert_eq!(out.len(), 4);
}

#[test]
fn invariant_closure_is_idempotent_operation() {
    let s = i_n(2);
    let m = s.monoid();
    let e1 = s.atomic_el(1).unwrap();
    let transposition = partial(&s, &[(1, 2), (2, 1)]);
    let once = m.invariant_closure(&[e1], &[transposition]).unwrap();
    let twice = m.invariant_closure(&once, &[transposition]).unwrap();
    assert_eq!(once, twice);
}

// ---- join closure ----------------------------------------------------------------

#[test]
fn join_closure_of_closed_set_is_identity() {
    let s = i_n(2);
    let m = s.monoid();
    let t = m.ge_submonoid(&m.units(), &[m.zero_el(), m.one_el()]).unwrap();
    let closed = m.join_closure(&t.elements()).unwrap();
    assert_eq!(closed.elements(), t.elements());
}

#[test]
fn join_closure_of_ge_submonoid_is_all_of_i2() {
    let s = i_n(2);
    let m = s.monoid();
    let t = m.ge_submonoid(&m.units(), &m.idempotents()).unwrap();
    let closed = m.join_closure(&t.elements()).unwrap();
    assert_eq!(closed.len(), 7);
    assert!(closed.len() <= 1 << t.len());
}

#[test]
fn join_closure_rejects_bad_idempotent_structure() {
    let s = i_n(2);
    let m = s.monoid();
    let e1 = s.atomic_el(1).unwrap();
    // {0, e1, 1} is an inverse submonoid but E is not a Boolean subalgebra.
    let err = m.join_closure(&[m.zero_el(), e1, m.one_el()]);
    assert!(matches!(err, Err(Error::Precondition(_))));
}

// ---- direct products -----------------------------------------------------------

#[test]
fn direct_product_counts() {
    let i1 = i_n(1);
    let i2 = i_n(2);
    let p11 = i1.monoid().direct_product(i1.monoid(), &limits()).unwrap();
    assert_eq!(p11.size(), 4);
    assert_eq!(p11.idempotents().len(), 4); // a Boolean algebra
    let p21 = i2.monoid().direct_product(i1.monoid(), &limits()).unwrap();
    assert_eq!(p21.size(), 14);
}

#[test]
fn direct_product_passes_validation() {
    let i2 = i_n(2);
    let p = i2.monoid().direct_product(i2.monoid(), &limits()).unwrap();
    assert!(validate_tables(&p.raw_tables(), &limits()).is_pass());
}

#[test]
fn direct_product_respects_element_bound() {
    let i3 = i_n(3);
    let tight = Limits { max_elements: 100, ..Limits::default() };
    assert!(matches!(
        i3.monoid().direct_product(i3.monoid(), &tight),
        Err(Error::Resource(_))
    ));
}

// ---- subalgebra predicate ---------------------------------------------------------

#[test]
fn is_subalgebra_examples() {
    let s = i_n(2);
    let m = s.monoid();
    assert!(m.is_subalgebra(&m.elements()).unwrap());
    assert!(m.is_subalgebra(&[m.zero_el(), m.one_el()]).unwrap());
    let e1 = s.atomic_el(1).unwrap();
    assert!(!m.is_subalgebra(&[m.zero_el(), e1, m.one_el()]).unwrap());
}

// ---- meets in factorizable submonoids ----------------------------------------------

#[test]
fn ge_submonoid_meet_closure_iff_units_have_fixed_points_inside() {
    let s = i_n(2);
    let m = s.monoid();
    // E = {0, 1}: φ(transposition) = 0 lies inside, so meets stay inside.
    let with_zero = m.ge_submonoid(&m.units(), &[m.zero_el(), m.one_el()]).unwrap();
    let els = with_zero.elements();
    for &a in &els {
        for &b in &els {
            assert!(with_zero.contains(m.meet(a, b).unwrap()));
        }
    }
    // E = {1}: the unit group alone; φ(transposition) = 0 is missing and the
    // meet of the two units escapes.
    let group_only = m.ge_submonoid(&m.units(), &[m.one_el()]).unwrap();
    let els = group_only.elements();
    let escaped = els.iter().any(|&a| {
        els.iter()
            .any(|&b| !group_only.contains(m.meet(a, b).unwrap()))
    });
    assert!(escaped);
}

#[test]
fn join_closure_of_meet_closed_submonoid_is_meet_closed() {
    let s = i_n(3);
    let m = s.monoid();
    let t = m.ge_submonoid(&m.units(), &m.idempotents()).unwrap();
    let closed = m.join_closure(&t.elements()).unwrap();
    let els = closed.elements();
    for &a in &els {
        for &b in &els {
            assert!(closed.contains(m.meet(a, b).unwrap()));
        }
    }
}

// ---- submonoid materialization ------------------------------------------------------

#[test]
fn materialize_round_trips_through_inclusion() {
    let s = i_n(2);
    let m = s.monoid();
    let t = m.ge_submonoid(&m.units(), &[m.zero_el(), m.one_el()]).unwrap();
    let sub = m.join_closure(&t.elements()).unwrap();
    let (mat, inclusion) = sub.materialize().unwrap();
    assert_eq!(mat.size(), sub.len());
    for x in mat.elements() {
        assert!(sub.contains(inclusion.apply(x).unwrap()));
    }
}

// ---- text format ----------------------------------------------------------------------

#[test]
fn table_format_round_trip() {
    let s = i_n(2);
    let text = format_bim(s.monoid());
    let parsed = parse_bim(&text, &limits()).unwrap();
    assert_eq!(parsed.raw_tables().mult, s.monoid().raw_tables().mult);
    assert_eq!(format_bim(&parsed), text);
}

#[test]
fn table_format_reports_positions() {
    match parse_bim("nope", &limits()) {
        Err(Error::Parse { line: 1, .. }) => {}
        other => panic!("expected parse error, got {other:?}"),
    }
    match parse_bim("bim 2 zero=0 one=1\n0\n0 1\n0 1", &limits()) {
        Err(Error::Parse { line: 2, .. }) => {}
        other => panic!("expected parse error on line 2, got {other:?}"),
    }
    match parse_bim("bim 2 zero=0 one=1\n0 7\n0 1\n0 1", &limits()) {
        Err(Error::Parse { line: 2, col: 3, .. }) => {}
        other => panic!("expected parse error at 2:3, got {other:?}"),
    }
    let s = i_n(1);
    let mut text = format_bim(s.monoid());
    text.push_str("extra\n");
    assert!(matches!(parse_bim(&text, &limits()), Err(Error::Parse { .. })));
}
