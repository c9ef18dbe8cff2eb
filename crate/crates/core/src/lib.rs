//! Finite tense m-symmetric algebras and their dual tms-spaces.
//!
//! The crate covers four layers:
//!
//! * [`poset`] and [`lattice`]: finite orders, up-sets, bounded distributive
//!   lattices and their prime filters.
//! * [`algebra`] and [`space`]: the two kinds of structure, with exhaustive
//!   axiom checkers that report the first failing tuple.
//! * [`duality`]: the dual space of an algebra, the complex algebra of a
//!   space, the unit/counit isomorphisms and the action on morphisms.
//! * [`congruence`]: congruence lattices computed directly by partition
//!   enumeration and through tms-subsets of the dual space.
//!
//! [`enumerate`] generates exhaustive small corpora and [`model`] / [`dot`]
//! handle the text formats used by the `tensym` command-line tool.
//!
//! All carriers are indexed `0..n` and capped at [`MAX_CARRIER`] elements so
//! that subsets fit in a `u64` mask.

pub mod algebra;
pub mod bits;
pub mod congruence;
pub mod dot;
pub mod duality;
pub mod enumerate;
mod error;
pub mod guard;
pub mod lattice;
pub mod model;
pub mod poset;
pub mod report;
pub mod samples;
pub mod space;

pub use algebra::{
    check_homomorphism, classify, minimal_symmetry_degree, quotient, validate_tms_algebra, Axiom,
    AxiomReport, Classification, Congruence, TmsAlgebra,
};
pub use congruence::{
    congruence_lattice, congruences_bruteforce, theta_of_subset, tms_subsets, verify_theorem_t2,
    CongruenceLattice, TmsSubset,
};
pub use dot::render_dot;
pub use duality::{
    check_tms_function, complex_algebra, dual_function, dual_space, epsilon_iso, sigma_iso,
    DualSpace, MapDirection, StructureMap,
};
pub use enumerate::{build_corpus, enumerate_posets, enumerate_spaces, Corpus};
pub use error::{Error, Result};
pub use guard::Guards;
pub use lattice::{lattice_from_poset, prime_filters, Lattice, PrimeFilter};
pub use model::{parse_model, render_model, Model, ModelDocument, Structure};
pub use poset::{build_poset, upset_family, Poset, Upset};
pub use report::{Check, Report};
pub use space::{validate_tms_space, Relation, SpaceCondition, SpaceReport, TmsSpace};

/// Largest carrier any structure may have.
pub const MAX_CARRIER: usize = 64;
