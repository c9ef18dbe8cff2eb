//! Finite tms-spaces: a poset with an order-reversing map and two relations.

use std::fmt;

use serde::Serialize;

use crate::bits::{self, Mask};
use crate::poset::{upset_family, Poset};
use crate::report::{first_failure, pairs, singles, Report};
use crate::{Error, Result};

/// A binary relation on `0..n`, stored both row-wise and column-wise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    succ: Vec<Mask>,
    pred: Vec<Mask>,
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            succ: vec![0; n],
            pred: vec![0; n],
        }
    }

    pub fn full(n: usize) -> Self {
        Relation {
            succ: vec![bits::full(n); n],
            pred: vec![bits::full(n); n],
        }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut r = Self::empty(n);
        for &(x, y) in pairs {
            for index in [x, y] {
                if index >= n {
                    return Err(Error::Index { index, len: n });
                }
            }
            r.insert(x, y);
        }
        Ok(r)
    }

    /// Relation whose pairs are the set bits of `code`, pair `(x, y)` at bit
    /// `x * n + y`. Requires `n * n <= 64`.
    pub fn from_code(n: usize, code: u64) -> Self {
        let mut r = Self::empty(n);
        for bit in bits::members(code) {
            r.insert(bit / n, bit % n);
        }
        r
    }

    /// Inverse of [`Relation::from_code`].
    pub fn code(&self) -> u64 {
        let n = self.len();
        self.pairs()
            .fold(0, |acc, (x, y)| acc | bits::singleton(x * n + y))
    }

    fn insert(&mut self, x: usize, y: usize) {
        self.succ[x] |= bits::singleton(y);
        self.pred[y] |= bits::singleton(x);
    }

    /// Size of the carrier.
    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.iter().all(|&m| m == 0)
    }

    pub fn count(&self) -> usize {
        self.succ.iter().map(|m| m.count_ones() as usize).sum()
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        bits::contains(self.succ[x], y)
    }

    /// `{x : (x, y) ∈ R}`.
    #[inline]
    pub fn preimage(&self, y: usize) -> Mask {
        self.pred[y]
    }

    /// `{y : (x, y) ∈ R}`.
    #[inline]
    pub fn image(&self, x: usize) -> Mask {
        self.succ[x]
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(x, &row)| bits::members(row).map(move |y| (x, y)))
    }

    /// `{(f(x), f(y)) : (x, y) ∈ R}` for a map `f` into a carrier of size
    /// `n`.
    pub fn map(&self, n: usize, f: impl Fn(usize, usize) -> (usize, usize)) -> Relation {
        let mut r = Relation::empty(n);
        for (x, y) in self.pairs() {
            let (a, b) = f(x, y);
            r.insert(a, b);
        }
        r
    }

    /// `{y : R⁻¹(y) ⊆ U}`, the box operator induced on subsets.
    pub fn necessity(&self, upset: Mask) -> Mask {
        (0..self.len())
            .filter(|&y| bits::is_subset(self.pred[y], upset))
            .fold(0, |acc, y| acc | bits::singleton(y))
    }
}

/// A tms-space at symmetry degree `m`. The conditions are checked by
/// [`validate_tms_space`], not at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TmsSpace {
    poset: Poset,
    /// `g`, dual to the negation.
    reversal: Vec<usize>,
    /// `R_G`.
    future: Relation,
    /// `R_H`.
    past: Relation,
    m: u32,
}

impl TmsSpace {
    pub fn new(
        poset: Poset,
        reversal: Vec<usize>,
        future: Relation,
        past: Relation,
        m: u32,
    ) -> Result<Self> {
        let n = poset.len();
        if reversal.len() != n {
            return Err(Error::Shape(format!(
                "g has {} entries for a carrier of {n}",
                reversal.len()
            )));
        }
        if let Some(&index) = reversal.iter().find(|&&v| v >= n) {
            return Err(Error::Index { index, len: n });
        }
        for (name, r) in [("RG", &future), ("RH", &past)] {
            if r.len() != n {
                return Err(Error::Shape(format!(
                    "{name} is over {} points, carrier has {n}",
                    r.len()
                )));
            }
        }
        if m == 0 {
            return Err(Error::Shape("symmetry degree m must be at least 1".into()));
        }
        Ok(TmsSpace {
            poset,
            reversal,
            future,
            past,
            m,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        self.poset.elements()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn reversal(&self) -> &[usize] {
        &self.reversal
    }

    #[inline]
    pub fn g(&self, x: usize) -> usize {
        self.reversal[x]
    }

    /// `g^k(x)`.
    pub fn g_pow(&self, k: u64, x: usize) -> usize {
        (0..k).fold(x, |y, _| self.reversal[y])
    }

    pub fn future(&self) -> &Relation {
        &self.future
    }

    pub fn past(&self) -> &Relation {
        &self.past
    }

    /// The same space with points renamed by `perm` (`perm[old] = new`).
    pub fn relabel(&self, perm: &[usize]) -> TmsSpace {
        let n = self.len();
        let mut reversal = vec![0; n];
        for x in 0..n {
            reversal[perm[x]] = perm[self.reversal[x]];
        }
        let rename = |x: usize, y: usize| (perm[x], perm[y]);
        TmsSpace {
            poset: self.poset.relabel(perm),
            reversal,
            future: self.future.map(n, rename),
            past: self.past.map(n, rename),
            m: self.m,
        }
    }
}

/// Conditions checked by [`validate_tms_space`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SpaceCondition {
    OrderReversing,
    /// S1
    Symmetry,
    /// S2
    FutureToPast,
    /// S3
    PastToFuture,
    FutureMonotone,
    PastMonotone,
    /// R2 for `R_G`
    FutureNecessityUpset,
    /// R2 for `R_H`
    PastNecessityUpset,
}

impl fmt::Display for SpaceCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpaceCondition::OrderReversing => "g order-reversing",
            SpaceCondition::Symmetry => "S1  g^2m(x) = x",
            SpaceCondition::FutureToPast => "S2  (x,y) ∈ RG ⇒ (g y, g x) ∈ RH",
            SpaceCondition::PastToFuture => "S3  (x,y) ∈ RH ⇒ (g y, g x) ∈ RG",
            SpaceCondition::FutureMonotone => "RG up-closed left, down-closed right",
            SpaceCondition::PastMonotone => "RH up-closed left, down-closed right",
            SpaceCondition::FutureNecessityUpset => "R2  G_RG(U) is an up-set",
            SpaceCondition::PastNecessityUpset => "R2  H_RH(U) is an up-set",
        };
        f.write_str(s)
    }
}

pub type SpaceReport = Report<SpaceCondition>;

/// Checks every tms-space condition exhaustively.
///
/// Witnesses: `[x, y]` with `x <= y` for the order and monotonicity checks
/// (`[x, y, x', y']` for monotonicity), `[x]` for S1, the offending pair for
/// S2/S3, and `[u, y, y']` for R2 where `u` indexes the up-set in
/// [`upset_family`] order.
pub fn validate_tms_space(space: &TmsSpace) -> SpaceReport {
    let p = space.poset();
    let n = space.len();
    let mut report = SpaceReport::new();

    report.record(
        SpaceCondition::OrderReversing,
        first_failure(pairs(n), |t| {
            !p.leq(t[0], t[1]) || p.leq(space.g(t[1]), space.g(t[0]))
        }),
    );
    let period = 2 * u64::from(space.m());
    report.record(
        SpaceCondition::Symmetry,
        first_failure(singles(n), |t| space.g_pow(period, t[0]) == t[0]),
    );
    let transpose_into = |from: &Relation, to: &Relation| {
        from.pairs()
            .find(|&(x, y)| !to.contains(space.g(y), space.g(x)))
            .map(|(x, y)| vec![x, y])
    };
    report.record(
        SpaceCondition::FutureToPast,
        transpose_into(space.future(), space.past()),
    );
    report.record(
        SpaceCondition::PastToFuture,
        transpose_into(space.past(), space.future()),
    );

    for (kind, rel) in [
        (SpaceCondition::FutureMonotone, space.future()),
        (SpaceCondition::PastMonotone, space.past()),
    ] {
        report.record(kind, monotonicity_witness(p, rel));
    }

    let upsets = upset_family(p);
    for (kind, rel) in [
        (SpaceCondition::FutureNecessityUpset, space.future()),
        (SpaceCondition::PastNecessityUpset, space.past()),
    ] {
        let witness = upsets.iter().enumerate().find_map(|(u, upset)| {
            let boxed = rel.necessity(upset.mask());
            bits::members(boxed).find_map(|y| {
                bits::members(p.up(y) & !boxed)
                    .next()
                    .map(|above| vec![u, y, above])
            })
        });
        report.record(kind, witness);
    }
    report
}

/// `(x, y) ∈ R`, `x <= x'`, `y' <= y` but `(x', y') ∉ R`.
fn monotonicity_witness(p: &Poset, rel: &Relation) -> Option<Vec<usize>> {
    rel.pairs().find_map(|(x, y)| {
        bits::members(p.up(x)).find_map(|x2| {
            bits::members(p.down(y) & !rel.image(x2))
                .next()
                .map(|y2| vec![x, y, x2, y2])
        })
    })
}
