//! Computational algebra for finite Boolean inverse monoids.
//!
//! A finite Boolean inverse monoid (BIM) is an inverse monoid with zero whose
//! idempotents form a unital Boolean algebra and in which every compatible
//! pair of elements has a join distributed over by multiplication. This crate
//! works with such monoids given by explicit multiplication tables and
//! provides:
//!
//! - [`finmon`]: the table-backed [`finmon::FinBim`] type, axiom validation,
//!   the natural partial order, joins of compatible pairs, meets through the
//!   fixed-point operator, Boolean structure on idempotents, and submonoid
//!   constructions (`GE` products, generated Boolean subalgebras, join
//!   closures, direct products).
//! - [`rook`]: concrete models. Rook matrices over a finite group with zero
//!   adjoined, symmetric inverse monoids, standard (block-diagonal) morphisms,
//!   inner automorphisms, and the normal-form algorithm that exhibits every
//!   morphism between finite simple monoids as a standard morphism.
//! - [`structure`]: structural analysis. Atoms and the atom groupoid, local
//!   bisections and reconstruction, the maximum idempotent-separating
//!   congruence, structural predicates (fundamental, factorizable, basic,
//!   Clifford, 0-simplifying, ...), additive ideals, infinitesimals, and
//!   embedding of subalgebras into fundamental subalgebras.
//! - [`typemv`]: the measurement layer. Invariant means, the partial type
//!   monoid of idempotent D-classes, effect-algebra checks, and the MV-algebra
//!   carried by a Foulis monoid together with the Łukasiewicz chains.
//! - [`supernat`]: supernatural numbers, division sequences, interleaving, and
//!   membership in the generalized Łukasiewicz algebras.
//! - [`colimit`]: finite-stage towers of symmetric inverse monoids under
//!   standard embeddings, classified by supernatural numbers.
//!
//! All arithmetic is exact: element indices, bitsets, and rational numbers.
//! There is no floating point anywhere in the crate.
//!
//! Every value is immutable after construction and every operation is pure,
//! so shared monoids may be queried concurrently. Internal caches are
//! write-once and behave as if computed eagerly.
//!
//! ```
//! use bim::rook::symmetric_inverse_monoid;
//! use bim::structure::StructureReport;
//! use bim::Limits;
//!
//! let limits = Limits::default();
//! let i2 = symmetric_inverse_monoid(2, &limits)?;
//! let monoid = i2.monoid();
//! assert_eq!(monoid.size(), 7);
//!
//! // The two orthogonal rank-one atoms join to the transposition.
//! let a = i2.el_of(&bim::rook::RookMatrix::single(2, 1, 0, 0))?;
//! let b = i2.el_of(&bim::rook::RookMatrix::single(2, 0, 1, 0))?;
//! let join = monoid.join(a, b)?;
//! assert!(monoid.is_unit(join)?);
//! assert_eq!(monoid.meet(join, monoid.one_el())?, monoid.zero_el());
//!
//! let report = StructureReport::compute(monoid);
//! assert!(report.fundamental && report.zero_simplifying);
//! # Ok::<(), bim::Error>(())
//! ```

#![forbid(unsafe_code)]

pub mod colimit;
pub mod error;
pub mod finmon;
pub mod rook;
pub mod structure;
pub mod supernat;
pub mod typemv;

mod bitset;

pub use error::{Error, Result};
pub use finmon::FinBim;

/// Resource bounds shared by the enumerating constructors.
///
/// `max_elements` guards the O(n^3) table validation and all full-table
/// materializations; `max_level_size` bounds the matrix size of a colimit
/// stage that may be touched by element arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Limits {
    pub max_elements: usize,
    pub max_level_size: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 5000,
            max_level_size: 4096,
        }
    }
}

/// Three-valued verdict used where a finite description cannot decide a
/// question about an infinite object (prefix-backed division sequences,
/// horizon-bounded generators).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Unknown => "unknown",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
