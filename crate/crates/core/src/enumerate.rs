//! Exhaustive generation of small posets, tms-space decorations and the
//! derived corpus.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::algebra::TmsAlgebra;
use crate::bits;
use crate::duality::complex_algebra;
use crate::poset::{upset_family, Poset};
use crate::samples;
use crate::space::{validate_tms_space, Relation, TmsSpace};
use crate::{Error, Result};

/// Largest poset size [`enumerate_posets`] accepts.
pub const MAX_POSET_SIZE: usize = 6;
/// Largest carrier [`enumerate_spaces`] decorates.
pub const MAX_SPACE_SIZE: usize = 4;

fn guard(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        return Err(Error::SizeGuard { what, size, limit });
    }
    Ok(())
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: u64, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !bits::contains(used, i) {
                prefix.push(i);
                extend(prefix, used | bits::singleton(i), n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), 0, n, &mut out);
    out
}

/// Bit string over ordered pairs `(i, j)`, `i != j`, row-major, first pair
/// most significant; a set bit means `i` is *not* below `j`.
fn order_key(poset: &Poset) -> u64 {
    let n = poset.len();
    let mut key = 0u64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                key = key << 1 | u64::from(!poset.leq(i, j));
            }
        }
    }
    key
}

/// The relabeling of `poset` with the smallest [`order_key`], among all
/// permutations. Chains come out as `0 < 1 < ... < n-1`.
pub fn canonical_poset(poset: &Poset, perms: &[Vec<usize>]) -> (u64, Poset) {
    perms
        .iter()
        .map(|perm| {
            let relabeled = poset.relabel(perm);
            (order_key(&relabeled), relabeled)
        })
        .min_by_key(|(key, _)| *key)
        .expect("at least one permutation")
}

/// One representative per isomorphism class of posets with `1..=max_size`
/// elements, ordered by size and then canonical key.
pub fn enumerate_posets(max_size: usize) -> Result<Vec<Poset>> {
    if max_size == 0 {
        return Err(Error::EmptyCarrier);
    }
    guard("poset", max_size, MAX_POSET_SIZE)?;
    let mut out = Vec::new();
    let mut layer = vec![Poset::antichain(1)?];
    out.extend(layer.iter().cloned());
    for size in 2..=max_size {
        let perms = permutations(size);
        let mut found: BTreeMap<u64, Poset> = BTreeMap::new();
        for base in &layer {
            // the new element is maximal; its strict down-set is any down-set
            let downsets: Vec<u64> = upset_family(base)
                .into_iter()
                .map(|u| base.full_mask() & !u.mask())
                .collect();
            for down in downsets {
                let mut pairs: Vec<(usize, usize)> = base.covers();
                pairs.extend(bits::members(down).map(|d| (d, size - 1)));
                let candidate = Poset::generated(size, &pairs)?;
                let (key, canonical) = canonical_poset(&candidate, &perms);
                found.entry(key).or_insert(canonical);
            }
        }
        layer = found.into_values().collect();
        out.extend(layer.iter().cloned());
    }
    Ok(out)
}

type DecorationKey = (u64, u64, u64);

fn decoration_key(space: &TmsSpace) -> DecorationKey {
    let g = space
        .reversal()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (x, &y)| acc | (y as u64) << (4 * x));
    (g, space.future().code(), space.past().code())
}

/// Every decoration `(g, R_G, R_H)` of `poset` at degree `m` that passes
/// [`validate_tms_space`], one per isomorphism class of decorated spaces.
///
/// Candidate maps `g` are filtered by the validator with empty relations.
/// Candidate `R_G` ranges over all relations with `R_H` the transpose of
/// `R_G` through `g`; S2 and S3 together force exactly that `R_H` once `g`
/// is a bijection, so no valid decoration is skipped. Every candidate is
/// then run through the full validator.
pub fn enumerate_spaces(poset: &Poset, m: u32) -> Result<Vec<TmsSpace>> {
    let n = poset.len();
    guard("space", n, MAX_SPACE_SIZE)?;
    if m == 0 {
        return Err(Error::Shape("symmetry degree m must be at least 1".into()));
    }
    let maps: Vec<Vec<usize>> = (0..(n as u64).pow(n as u32))
        .map(|code| {
            (0..n)
                .map(|i| (code / (n as u64).pow(i as u32) % n as u64) as usize)
                .collect()
        })
        .collect();
    let reversals: Vec<Vec<usize>> = maps
        .into_iter()
        .filter(|g| {
            TmsSpace::new(
                poset.clone(),
                g.clone(),
                Relation::empty(n),
                Relation::empty(n),
                m,
            )
            .map(|s| validate_tms_space(&s).passed())
            .unwrap_or(false)
        })
        .collect();
    let automorphisms = poset.automorphisms();

    let found: Vec<Vec<(DecorationKey, TmsSpace)>> = reversals
        .par_iter()
        .map(|g| {
            let mut local = Vec::new();
            for code in 0..1u64 << (n * n) {
                let future = Relation::from_code(n, code);
                let past = future.map(n, |x, y| (g[y], g[x]));
                let space = TmsSpace::new(poset.clone(), g.clone(), future, past, m)
                    .expect("candidate shapes are consistent");
                if !validate_tms_space(&space).passed() {
                    continue;
                }
                let canonical = automorphisms
                    .iter()
                    .map(|perm| {
                        let s = space.relabel(perm);
                        (decoration_key(&s), s)
                    })
                    .min_by_key(|(k, _)| *k)
                    .expect("identity automorphism");
                local.push(canonical);
            }
            local
        })
        .collect();

    let mut unique: BTreeMap<DecorationKey, TmsSpace> = BTreeMap::new();
    for (key, space) in found.into_iter().flatten() {
        unique.entry(key).or_insert(space);
    }
    Ok(unique.into_values().collect())
}

/// Where a corpus entry came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Provenance {
    /// Index into `enumerate_posets(n_max)`.
    pub poset_id: usize,
    /// Index into `enumerate_spaces(poset, m)`.
    pub decoration_id: usize,
    pub m: u32,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub space: TmsSpace,
    pub algebra: TmsAlgebra,
    pub provenance: Provenance,
}

/// A hand-listed algebra, including deliberately invalid ones.
#[derive(Clone, Debug)]
pub struct HandInstance {
    pub name: &'static str,
    pub algebra: TmsAlgebra,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    pub hand: Vec<HandInstance>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Corpus algebras followed by the hand-listed ones.
    pub fn algebras(&self) -> impl Iterator<Item = &TmsAlgebra> {
        self.entries
            .iter()
            .map(|e| &e.algebra)
            .chain(self.hand.iter().map(|h| &h.algebra))
    }
}

/// All valid decorated spaces on posets of size `1..=n_max` for each degree
/// in `ms`, paired with their complex algebras, plus the hand-listed
/// algebras.
pub fn build_corpus(n_max: usize, ms: &[u32]) -> Result<Corpus> {
    guard("space", n_max, MAX_SPACE_SIZE)?;
    let posets = enumerate_posets(n_max)?;
    let mut degrees: Vec<u32> = ms.to_vec();
    degrees.sort_unstable();
    degrees.dedup();

    let jobs: Vec<(u32, usize)> = degrees
        .iter()
        .flat_map(|&m| (0..posets.len()).map(move |p| (m, p)))
        .collect();
    let batches: Vec<Vec<CorpusEntry>> = jobs
        .par_iter()
        .map(|&(m, poset_id)| -> Result<Vec<CorpusEntry>> {
            let spaces = enumerate_spaces(&posets[poset_id], m)?;
            spaces
                .into_iter()
                .enumerate()
                .map(|(decoration_id, space)| {
                    Ok(CorpusEntry {
                        algebra: complex_algebra(&space)?,
                        space,
                        provenance: Provenance {
                            poset_id,
                            decoration_id,
                            m,
                        },
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let hand = samples::named_algebras()
        .into_iter()
        .map(|(name, algebra)| HandInstance { name, algebra })
        .collect();
    Ok(Corpus {
        entries: batches.into_iter().flatten().collect(),
        hand,
    })
}

/// Whether two spaces on the same carrier are related by some permutation.
/// Exhaustive; meant for tests on tiny carriers.
pub fn isomorphic_spaces(a: &TmsSpace, b: &TmsSpace) -> bool {
    a.len() == b.len() && a.m() == b.m() && permutations(a.len()).iter().any(|p| a.relabel(p) == *b)
}

/// Number of distinct canonical keys, for checking that a list of posets
/// has no isomorphic pair.
pub fn distinct_poset_classes(posets: &[Poset]) -> usize {
    let mut seen = HashSet::new();
    for p in posets {
        let perms = permutations(p.len());
        seen.insert((p.len(), canonical_poset(p, &perms).0));
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts_small() {
        assert_eq!(enumerate_posets(1).unwrap().len(), 1);
        assert_eq!(enumerate_posets(2).unwrap().len(), 3);
        let three: Vec<_> = enumerate_posets(3)
            .unwrap()
            .into_iter()
            .filter(|p| p.len() == 3)
            .collect();
        assert_eq!(three.len(), 5);
    }

    #[test]
    fn chains_are_naturally_labelled() {
        let posets = enumerate_posets(3).unwrap();
        let chain = posets
            .iter()
            .find(|p| p.len() == 3 && p.covers().len() == 2 && p.leq(0, 2))
            .unwrap();
        assert_eq!(chain.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn poset_guard() {
        assert!(matches!(enumerate_posets(7), Err(Error::SizeGuard { .. })));
        assert!(matches!(enumerate_posets(0), Err(Error::EmptyCarrier)));
    }

    #[test]
    fn one_point_spaces() {
        let spaces = enumerate_spaces(&Poset::antichain(1).unwrap(), 1).unwrap();
        assert_eq!(spaces.len(), 2);
        assert!(spaces
            .iter()
            .any(|s| s.future().is_empty() && s.past().is_empty()));
        assert!(spaces
            .iter()
            .any(|s| s.future().count() == 1 && s.past().count() == 1));
    }

    #[test]
    fn no_isomorphic_pairs_on_two_antichain() {
        let spaces = enumerate_spaces(&Poset::antichain(2).unwrap(), 1).unwrap();
        for (i, a) in spaces.iter().enumerate() {
            for b in &spaces[i + 1..] {
                assert!(!isomorphic_spaces(a, b));
            }
        }
    }

    #[test]
    fn space_guard() {
        assert!(matches!(
            enumerate_spaces(&Poset::antichain(5).unwrap(), 1),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn tiny_corpus() {
        let c = build_corpus(1, &[1]).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.entries.iter().all(|e| e.algebra.len() == 2));
        assert_eq!(c.hand.len(), samples::named_algebras().len());
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }
}
