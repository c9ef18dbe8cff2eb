//! Bounded distributive lattices given by their order, and prime filters.

use std::collections::HashMap;

use serde::Serialize;

use crate::bits::{self, Mask};
use crate::poset::{upset_family, Poset, Upset};
use crate::{Error, Result, MAX_CARRIER};

/// A finite bounded distributive lattice with precomputed operation tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    order: Poset,
    meet: Vec<u8>,
    join: Vec<u8>,
    bottom: usize,
    top: usize,
}

/// Reads `poset` as a lattice.
///
/// Fails with [`Error::NotBounded`], [`Error::NotALattice`] (first pair
/// lacking an infimum or supremum) or [`Error::NotDistributive`] (first
/// triple with `x ∧ (y ∨ z) != (x ∧ y) ∨ (x ∧ z)`), checked in that order.
pub fn lattice_from_poset(poset: &Poset) -> Result<Lattice> {
    let n = poset.len();
    let full = poset.full_mask();
    let bottom = poset.elements().find(|&x| poset.up(x) == full);
    let top = poset.elements().find(|&x| poset.down(x) == full);
    let (Some(bottom), Some(top)) = (bottom, top) else {
        return Err(Error::NotBounded);
    };

    let mut meet = vec![0u8; n * n];
    let mut join = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            let lower = poset.down(a) & poset.down(b);
            let glb = bits::members(lower)
                .find(|&z| poset.down(z) == lower)
                .ok_or(Error::NotALattice(a, b, "infimum"))?;
            let upper = poset.up(a) & poset.up(b);
            let lub = bits::members(upper)
                .find(|&z| poset.up(z) == upper)
                .ok_or(Error::NotALattice(a, b, "supremum"))?;
            meet[a * n + b] = glb as u8;
            join[a * n + b] = lub as u8;
        }
    }
    let lattice = Lattice {
        order: poset.clone(),
        meet,
        join,
        bottom,
        top,
    };
    if let Some((x, y, z)) = lattice.distributivity_witness() {
        return Err(Error::NotDistributive(x, y, z));
    }
    Ok(lattice)
}

impl Lattice {
    /// The lattice of all up-sets of `poset` under ∩ and ∪, together with the
    /// up-sets themselves in carrier order.
    pub fn of_upsets(poset: &Poset) -> Result<(Lattice, Vec<Upset>)> {
        let upsets = upset_family(poset);
        let n = upsets.len();
        if n > MAX_CARRIER {
            return Err(Error::TooLarge(n));
        }
        let index: HashMap<Mask, usize> =
            upsets.iter().enumerate().map(|(i, u)| (u.0, i)).collect();
        let order = Poset::from_leq(n, |a, b| bits::is_subset(upsets[a].0, upsets[b].0))?;
        let mut meet = vec![0u8; n * n];
        let mut join = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = index[&(upsets[a].0 & upsets[b].0)] as u8;
                join[a * n + b] = index[&(upsets[a].0 | upsets[b].0)] as u8;
            }
        }
        let lattice = Lattice {
            order,
            meet,
            join,
            bottom: 0,
            top: n - 1,
        };
        Ok((lattice, upsets))
    }

    fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Elements `j != 0` that are not the join of the elements strictly
    /// below them.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        self.elements()
            .filter(|&j| {
                if j == self.bottom {
                    return false;
                }
                let below = self.order.down(j) & !bits::singleton(j);
                let acc = bits::members(below).fold(self.bottom, |acc, y| self.join(acc, y));
                acc != j
            })
            .collect()
    }
}

/// A prime filter of a lattice, as a member mask over its carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimeFilter(pub Mask);

impl PrimeFilter {
    pub fn mask(self) -> Mask {
        self.0
    }

    pub fn contains(self, a: usize) -> bool {
        bits::contains(self.0, a)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        bits::members(self.0)
    }
}

/// All prime filters of `lattice` in canonical subset order, with the
/// inclusion order among them.
///
/// In a finite distributive lattice these are exactly the principal filters
/// of the join-irreducible elements.
pub fn prime_filters(lattice: &Lattice) -> (Vec<PrimeFilter>, Poset) {
    let mut filters: Vec<PrimeFilter> = lattice
        .join_irreducibles()
        .into_iter()
        .map(|j| PrimeFilter(lattice.order().up(j)))
        .collect();
    filters.sort_by(|a, b| bits::canonical_cmp(a.0, b.0));
    let order = Poset::from_leq(filters.len(), |a, b| {
        bits::is_subset(filters[a].0, filters[b].0)
    })
    .expect("inclusion is a partial order");
    (filters, order)
}
