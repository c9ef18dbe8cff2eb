//! Finite partial orders and their up-sets.

use std::fmt;

use serde::Serialize;

use crate::bits::{self, Mask};
use crate::{Error, Result, MAX_CARRIER};

/// A finite poset on `0..n`, stored as up-set and down-set masks per element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    up: Vec<Mask>,
    down: Vec<Mask>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.len())
            .field("covers", &self.covers())
            .finish()
    }
}

/// Builds the poset generated by `pairs` (each `(a, b)` meaning `a <= b`).
///
/// The reflexive-transitive closure is computed; the input need not be
/// closed.
pub fn build_poset(n: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    Poset::generated(n, pairs)
}

impl Poset {
    /// The poset with no elements. Arises only as the dual of the one-element
    /// algebra.
    pub fn empty() -> Self {
        Poset {
            up: Vec::new(),
            down: Vec::new(),
        }
    }

    pub fn antichain(n: usize) -> Result<Self> {
        build_poset(n, &[])
    }

    pub fn chain(n: usize) -> Result<Self> {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        build_poset(n, &pairs)
    }

    /// Like [`build_poset`] but accepts the empty carrier.
    pub(crate) fn generated(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_CARRIER {
            return Err(Error::TooLarge(n));
        }
        let mut up: Vec<Mask> = (0..n).map(bits::singleton).collect();
        for &(a, b) in pairs {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::Index { index, len: n });
                }
            }
            up[a] |= bits::singleton(b);
        }
        // Warshall on rows
        for k in 0..n {
            let row = up[k];
            for u in up.iter_mut() {
                if bits::contains(*u, k) {
                    *u |= row;
                }
            }
        }
        for a in 0..n {
            for b in bits::members(up[a] & !bits::singleton(a)) {
                if bits::contains(up[b], a) {
                    return Err(Error::Cycle(a.min(b), a.max(b)));
                }
            }
        }
        Ok(Self::from_up_masks(up))
    }

    /// Builds a poset from a relation that is already a partial order.
    pub(crate) fn from_leq<F: Fn(usize, usize) -> bool>(n: usize, leq: F) -> Result<Self> {
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        Self::generated(n, &pairs)
    }

    fn from_up_masks(up: Vec<Mask>) -> Self {
        let n = up.len();
        let mut down = vec![0; n];
        for (a, &u) in up.iter().enumerate() {
            for b in bits::members(u) {
                down[b] |= bits::singleton(a);
            }
        }
        Poset { up, down }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn full_mask(&self) -> Mask {
        bits::full(self.len())
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        bits::contains(self.up[a], b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Principal up-set `{y : a <= y}`.
    #[inline]
    pub fn up(&self, a: usize) -> Mask {
        self.up[a]
    }

    /// Principal down-set `{y : y <= a}`.
    #[inline]
    pub fn down(&self, a: usize) -> Mask {
        self.down[a]
    }

    pub fn is_upset(&self, mask: Mask) -> bool {
        bits::members(mask).all(|x| bits::is_subset(self.up[x], mask))
    }

    pub fn is_downset(&self, mask: Mask) -> bool {
        bits::members(mask).all(|x| bits::is_subset(self.down[x], mask))
    }

    /// Smallest up-set containing `mask`.
    pub fn upward_closure(&self, mask: Mask) -> Mask {
        bits::members(mask).fold(0, |acc, x| acc | self.up[x])
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in bits::members(self.up[a] & !bits::singleton(a)) {
                let between = self.up[a] & self.down[b] & !bits::singleton(a) & !bits::singleton(b);
                if between == 0 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The poset with elements renamed by `perm` (`perm[old] = new`).
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        let n = self.len();
        let mut up = vec![0; n];
        for a in 0..n {
            up[perm[a]] = bits::image(self.up[a], perm);
        }
        Self::from_up_masks(up)
    }

    /// Order-preserving and -reflecting bijections onto itself.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = 0u64;
        self.extend_automorphism(0, &mut perm, &mut used, &mut out);
        out
    }

    fn extend_automorphism(
        &self,
        a: usize,
        perm: &mut Vec<usize>,
        used: &mut Mask,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = self.len();
        if a == n {
            out.push(perm.clone());
            return;
        }
        for image in 0..n {
            if bits::contains(*used, image) {
                continue;
            }
            let consistent = (0..a).all(|b| {
                self.leq(a, b) == self.leq(image, perm[b])
                    && self.leq(b, a) == self.leq(perm[b], image)
            });
            if consistent {
                perm[a] = image;
                *used |= bits::singleton(image);
                self.extend_automorphism(a + 1, perm, used, out);
                *used &= !bits::singleton(image);
            }
        }
        perm[a] = usize::MAX;
    }
}

/// An up-set of a poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Upset(pub Mask);

impl Upset {
    pub fn mask(self) -> Mask {
        self.0
    }

    pub fn contains(self, x: usize) -> bool {
        bits::contains(self.0, x)
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

/// All up-sets of `poset`, each once, in canonical subset order.
pub fn upset_family(poset: &Poset) -> Vec<Upset> {
    // Visit elements top-down: x may join only once everything above it has.
    let mut order: Vec<usize> = poset.elements().collect();
    order.sort_by_key(|&x| std::cmp::Reverse(poset.down(x).count_ones()));
    let mut out = Vec::new();
    grow_upsets(poset, &order, 0, 0, &mut out);
    out.sort_by(|a, b| bits::canonical_cmp(a.0, b.0));
    out
}

fn grow_upsets(poset: &Poset, order: &[usize], depth: usize, current: Mask, out: &mut Vec<Upset>) {
    let Some(&x) = order.get(depth) else {
        out.push(Upset(current));
        return;
    };
    grow_upsets(poset, order, depth + 1, current, out);
    let strictly_above = poset.up(x) & !bits::singleton(x);
    if bits::is_subset(strictly_above, current) {
        grow_upsets(poset, order, depth + 1, current | bits::singleton(x), out);
    }
}
