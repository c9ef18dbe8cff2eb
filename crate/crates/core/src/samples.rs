//! Small hand-built instances used by tests, the corpus and the docs.
//!
//! Element numbering follows the carrier order of each lattice: for the
//! chains `0 < c < 1` it is `0, c, 1`; for the square it is `0, a, b, 1`.

use crate::algebra::TmsAlgebra;
use crate::lattice::lattice_from_poset;
use crate::poset::{build_poset, Poset};
use crate::space::{Relation, TmsSpace};

fn algebra(poset: Poset, neg: &[usize], future: &[usize], past: &[usize], m: u32) -> TmsAlgebra {
    let lattice = lattice_from_poset(&poset).expect("sample order is a distributive lattice");
    TmsAlgebra::new(lattice, neg.to_vec(), future.to_vec(), past.to_vec(), m)
        .expect("sample tables are total")
}

fn square() -> Poset {
    build_poset(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
}

/// Two-element Boolean algebra, `N` = swap, `G = H = id`, `m = 1`.
pub fn b2() -> TmsAlgebra {
    algebra(Poset::chain(2).unwrap(), &[1, 0], &[0, 1], &[0, 1], 1)
}

/// `B2` with `G ≡ 1` and `H = id`: fails the `H` half of T3 at `x = 1`.
pub fn b2_t3_failing() -> TmsAlgebra {
    algebra(Poset::chain(2).unwrap(), &[1, 0], &[1, 1], &[0, 1], 1)
}

/// Three-element Kleene chain `0 < c < 1`, `N(c) = c`, `G = H = id`.
pub fn k3() -> TmsAlgebra {
    algebra(
        Poset::chain(3).unwrap(),
        &[2, 1, 0],
        &[0, 1, 2],
        &[0, 1, 2],
        1,
    )
}

/// Four-element De Morgan algebra on `2²` with `N` fixing both atoms.
pub fn dm4() -> TmsAlgebra {
    algebra(square(), &[3, 1, 2, 0], &[0, 1, 2, 3], &[0, 1, 2, 3], 1)
}

/// `2²` with `N` swapping the atoms: the four-element Boolean algebra.
pub fn b4() -> TmsAlgebra {
    algebra(square(), &[3, 2, 1, 0], &[0, 1, 2, 3], &[0, 1, 2, 3], 1)
}

/// One point, `g = id`, both relations full.
pub fn point_space() -> TmsSpace {
    let full = Relation::full(1);
    TmsSpace::new(Poset::antichain(1).unwrap(), vec![0], full.clone(), full, 1).unwrap()
}

/// Four-point antichain, `g` a 4-cycle, both relations full, `m = 2`. Its
/// complex algebra is 2-symmetric but not De Morgan.
pub fn four_cycle_space() -> TmsSpace {
    let full = Relation::full(4);
    TmsSpace::new(
        Poset::antichain(4).unwrap(),
        vec![1, 2, 3, 0],
        full.clone(),
        full,
        2,
    )
    .unwrap()
}

/// 2-chain with `g = id`: `g` is not order-reversing.
pub fn chain_identity_space() -> TmsSpace {
    let empty = Relation::empty(2);
    TmsSpace::new(
        Poset::chain(2).unwrap(),
        vec![0, 1],
        empty.clone(),
        empty,
        1,
    )
    .unwrap()
}

/// The hand-listed algebras with their names, valid ones first.
pub fn named_algebras() -> Vec<(&'static str, TmsAlgebra)> {
    vec![
        ("B2", b2()),
        ("K3", k3()),
        ("DM4", dm4()),
        ("B4", b4()),
        ("B2-T3-failing", b2_t3_failing()),
    ]
}
