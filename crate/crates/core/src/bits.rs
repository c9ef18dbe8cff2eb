//! Subsets of a carrier as `u64` masks.

use std::cmp::Ordering;

pub type Mask = u64;

/// Mask with the low `n` bits set.
pub fn full(n: usize) -> Mask {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn contains(mask: Mask, i: usize) -> bool {
    mask >> i & 1 == 1
}

#[inline]
pub fn singleton(i: usize) -> Mask {
    1u64 << i
}

#[inline]
pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Iterate the members of `mask` in increasing order.
pub fn members(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub fn from_members<I: IntoIterator<Item = usize>>(items: I) -> Mask {
    items.into_iter().fold(0, |m, i| m | singleton(i))
}

/// Canonical subset order: by cardinality, then lexicographically on the
/// sorted member lists.
pub fn canonical_cmp(a: Mask, b: Mask) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        let diff = a ^ b;
        if diff == 0 {
            Ordering::Equal
        } else if contains(a, diff.trailing_zeros() as usize) {
            // equal sizes: the set holding the smallest differing element wins
            Ordering::Less
        } else {
            Ordering::Greater
        }
    })
}

/// Image of a subset under a map on indices.
pub fn image(mask: Mask, map: &[usize]) -> Mask {
    members(mask).fold(0, |m, i| m | singleton(map[i]))
}

/// Preimage of a subset under a map on indices.
pub fn preimage(mask: Mask, map: &[usize]) -> Mask {
    map.iter()
        .enumerate()
        .filter(|&(_, &y)| contains(mask, y))
        .fold(0, |m, (x, _)| m | singleton(x))
}
