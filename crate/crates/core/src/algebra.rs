//! Tense m-symmetric algebras: validation, classification, homomorphisms and
//! quotients.

use std::fmt;

use serde::Serialize;

use crate::lattice::{lattice_from_poset, Lattice};
use crate::poset::Poset;
use crate::report::{first_failure, pairs, singles, Report};
use crate::{Error, Result};

/// A bounded distributive lattice with a negation `N` and two tense
/// operators, at symmetry degree `m`.
///
/// Construction only checks that the tables are total; the axioms are
/// checked by [`validate_tms_algebra`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TmsAlgebra {
    lattice: Lattice,
    negation: Vec<usize>,
    /// `G`, "it is always going to be the case".
    future: Vec<usize>,
    /// `H`, "it has always been the case".
    past: Vec<usize>,
    m: u32,
}

impl TmsAlgebra {
    pub fn new(
        lattice: Lattice,
        negation: Vec<usize>,
        future: Vec<usize>,
        past: Vec<usize>,
        m: u32,
    ) -> Result<Self> {
        let n = lattice.len();
        for (name, table) in [("N", &negation), ("G", &future), ("H", &past)] {
            if table.len() != n {
                return Err(Error::Shape(format!(
                    "{name} has {} entries for a carrier of {n}",
                    table.len()
                )));
            }
            if let Some(&index) = table.iter().find(|&&v| v >= n) {
                return Err(Error::Index { index, len: n });
            }
        }
        if m == 0 {
            return Err(Error::Shape("symmetry degree m must be at least 1".into()));
        }
        Ok(TmsAlgebra {
            lattice,
            negation,
            future,
            past,
            m,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.lattice.elements()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Same tables viewed at another symmetry degree.
    pub fn with_m(&self, m: u32) -> Result<Self> {
        Self::new(
            self.lattice.clone(),
            self.negation.clone(),
            self.future.clone(),
            self.past.clone(),
            m,
        )
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.negation[a]
    }

    #[inline]
    pub fn future(&self, a: usize) -> usize {
        self.future[a]
    }

    #[inline]
    pub fn past(&self, a: usize) -> usize {
        self.past[a]
    }

    pub fn negation_table(&self) -> &[usize] {
        &self.negation
    }

    pub fn future_table(&self) -> &[usize] {
        &self.future
    }

    pub fn past_table(&self) -> &[usize] {
        &self.past
    }

    /// `N^k(a)`.
    pub fn neg_pow(&self, k: u64, a: usize) -> usize {
        (0..k).fold(a, |x, _| self.negation[x])
    }

    pub(crate) fn unary(&self, op: UnaryOp) -> &[usize] {
        match op {
            UnaryOp::Neg => &self.negation,
            UnaryOp::Future => &self.future,
            UnaryOp::Past => &self.past,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum UnaryOp {
    Neg,
    Future,
    Past,
}

impl UnaryOp {
    pub(crate) const ALL: [UnaryOp; 3] = [UnaryOp::Neg, UnaryOp::Future, UnaryOp::Past];

    pub(crate) fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "N",
            UnaryOp::Future => "G",
            UnaryOp::Past => "H",
        }
    }
}

/// The defining identities of a tense m-symmetric algebra. `T1`–`T3` are
/// split into their `G` and `H` halves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    O1,
    O2,
    O3,
    O4,
    Symmetry,
    T1Future,
    T1Past,
    T2Future,
    T2Past,
    T3Future,
    T3Past,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::O1 => "O1  N(0) = 1",
            Axiom::O2 => "O2  N(1) = 0",
            Axiom::O3 => "O3  N(x∧y) = N(x)∨N(y)",
            Axiom::O4 => "O4  N(x∨y) = N(x)∧N(y)",
            Axiom::Symmetry => "m-symmetry  N^2m(x) = x",
            Axiom::T1Future => "T1  G(1) = 1",
            Axiom::T1Past => "T1  H(1) = 1",
            Axiom::T2Future => "T2  G(x∧y) = G(x)∧G(y)",
            Axiom::T2Past => "T2  H(x∧y) = H(x)∧H(y)",
            Axiom::T3Future => "T3  x ≤ G(N(H(N^(2m-1)(x))))",
            Axiom::T3Past => "T3  x ≤ H(N(G(N^(2m-1)(x))))",
        };
        f.write_str(s)
    }
}

pub type AxiomReport = Report<Axiom>;

/// Checks every axiom exhaustively. Witnesses are the first failing tuple
/// in lexicographic element order.
pub fn validate_tms_algebra(algebra: &TmsAlgebra) -> AxiomReport {
    let l = algebra.lattice();
    let n = algebra.len();
    let (zero, one) = (l.bottom(), l.top());
    let neg = |x| algebra.neg(x);
    let odd_power = 2 * u64::from(algebra.m()) - 1;
    let mut report = AxiomReport::new();

    report.record(Axiom::O1, (neg(zero) != one).then(|| vec![zero]));
    report.record(Axiom::O2, (neg(one) != zero).then(|| vec![one]));
    report.record(
        Axiom::O3,
        first_failure(pairs(n), |t| {
            neg(l.meet(t[0], t[1])) == l.join(neg(t[0]), neg(t[1]))
        }),
    );
    report.record(
        Axiom::O4,
        first_failure(pairs(n), |t| {
            neg(l.join(t[0], t[1])) == l.meet(neg(t[0]), neg(t[1]))
        }),
    );
    report.record(
        Axiom::Symmetry,
        first_failure(singles(n), |t| algebra.neg_pow(odd_power + 1, t[0]) == t[0]),
    );

    for (op, t1, t2) in [
        (UnaryOp::Future, Axiom::T1Future, Axiom::T2Future),
        (UnaryOp::Past, Axiom::T1Past, Axiom::T2Past),
    ] {
        let table = algebra.unary(op);
        report.record(t1, (table[one] != one).then(|| vec![one]));
        report.record(
            t2,
            first_failure(pairs(n), |t| {
                table[l.meet(t[0], t[1])] == l.meet(table[t[0]], table[t[1]])
            }),
        );
    }

    // x ≤ outer(N(inner(N^(2m-1)(x))))
    for (axiom, outer, inner) in [
        (Axiom::T3Future, UnaryOp::Future, UnaryOp::Past),
        (Axiom::T3Past, UnaryOp::Past, UnaryOp::Future),
    ] {
        let (outer, inner) = (algebra.unary(outer), algebra.unary(inner));
        report.record(
            axiom,
            first_failure(singles(n), |t| {
                let x = t[0];
                let bound = outer[neg(inner[algebra.neg_pow(odd_power, x)])];
                l.leq(x, bound)
            }),
        );
    }
    report
}

/// Smallest `k >= 1` with `N^2k = id`, or `None` if `N` is not a
/// permutation.
pub fn minimal_symmetry_degree(algebra: &TmsAlgebra) -> Option<u64> {
    let table = algebra.negation_table();
    let n = table.len();
    let mut seen = vec![false; n];
    let mut order: u64 = 1;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = table[x];
            len += 1;
        }
        if x != start {
            // entered an earlier cycle or a tail: not a permutation
            return None;
        }
        order = lcm(order, len)?;
    }
    Some(if order.is_multiple_of(2) {
        order / 2
    } else {
        order
    })
}

fn lcm(a: u64, b: u64) -> Option<u64> {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    (a / x).checked_mul(b)
}

/// Membership in the classical subvarieties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// `N(N(x)) = x`.
    pub de_morgan: bool,
    /// De Morgan and `(x ∧ Nx) ∨ (y ∨ Ny) = y ∨ Ny`.
    pub kleene: bool,
    /// De Morgan and `x ∧ Nx = 0`.
    pub boolean: bool,
    /// `m = 1` and Boolean.
    pub tense_algebra: bool,
    pub de_morgan_witness: Option<Vec<usize>>,
    pub kleene_witness: Option<Vec<usize>>,
    pub boolean_witness: Option<Vec<usize>>,
}

pub fn classify(algebra: &TmsAlgebra) -> Result<Classification> {
    let report = validate_tms_algebra(algebra);
    if !report.passed() {
        return Err(Error::InvalidAlgebra(Box::new(report)));
    }
    let l = algebra.lattice();
    let n = algebra.len();
    let neg = |x| algebra.neg(x);
    let de_morgan_witness = first_failure(singles(n), |t| neg(neg(t[0])) == t[0]);
    let kleene_witness = first_failure(pairs(n), |t| {
        let (x, y) = (t[0], t[1]);
        let y_side = l.join(y, neg(y));
        l.join(l.meet(x, neg(x)), y_side) == y_side
    });
    let boolean_witness = first_failure(singles(n), |t| l.meet(t[0], neg(t[0])) == l.bottom());
    let de_morgan = de_morgan_witness.is_none();
    let kleene = de_morgan && kleene_witness.is_none();
    let boolean = de_morgan && boolean_witness.is_none();
    Ok(Classification {
        de_morgan,
        kleene,
        boolean,
        tense_algebra: algebra.m() == 1 && boolean,
        de_morgan_witness,
        kleene_witness,
        boolean_witness,
    })
}

/// Pieces of structure a homomorphism must preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Preservation {
    Meet,
    Join,
    Bottom,
    Top,
    Negation,
    Future,
    Past,
}

impl fmt::Display for Preservation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Preservation::Meet => "preserves ∧",
            Preservation::Join => "preserves ∨",
            Preservation::Bottom => "preserves 0",
            Preservation::Top => "preserves 1",
            Preservation::Negation => "preserves N",
            Preservation::Future => "preserves G",
            Preservation::Past => "preserves H",
        };
        f.write_str(s)
    }
}

pub type HomomorphismReport = Report<Preservation>;

/// Checks that `map` (indexed by the carrier of `source`) preserves the
/// lattice operations, the bounds, `N`, `G` and `H`.
pub fn check_homomorphism(
    map: &[usize],
    source: &TmsAlgebra,
    target: &TmsAlgebra,
) -> Result<HomomorphismReport> {
    if map.len() != source.len() {
        return Err(Error::Shape(format!(
            "map has {} entries, source has {} elements",
            map.len(),
            source.len()
        )));
    }
    if let Some(&index) = map.iter().find(|&&v| v >= target.len()) {
        return Err(Error::Index {
            index,
            len: target.len(),
        });
    }
    let (a, b) = (source.lattice(), target.lattice());
    let n = source.len();
    let mut report = HomomorphismReport::new();
    report.record(
        Preservation::Meet,
        first_failure(pairs(n), |t| {
            map[a.meet(t[0], t[1])] == b.meet(map[t[0]], map[t[1]])
        }),
    );
    report.record(
        Preservation::Join,
        first_failure(pairs(n), |t| {
            map[a.join(t[0], t[1])] == b.join(map[t[0]], map[t[1]])
        }),
    );
    report.record(
        Preservation::Bottom,
        (map[a.bottom()] != b.bottom()).then(|| vec![a.bottom()]),
    );
    report.record(
        Preservation::Top,
        (map[a.top()] != b.top()).then(|| vec![a.top()]),
    );
    for (kind, op) in [
        (Preservation::Negation, UnaryOp::Neg),
        (Preservation::Future, UnaryOp::Future),
        (Preservation::Past, UnaryOp::Past),
    ] {
        let (src, dst) = (source.unary(op), target.unary(op));
        report.record(
            kind,
            first_failure(singles(n), |t| map[src[t[0]]] == dst[map[t[0]]]),
        );
    }
    Ok(report)
}

/// A partition of an algebra's carrier, as a restricted growth string:
/// `blocks[x]` is the block of `x`, and blocks are numbered in order of
/// first appearance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Congruence {
    blocks: Vec<usize>,
}

impl Congruence {
    /// Normalizes arbitrary block labels.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let mut firsts: Vec<&T> = Vec::new();
        let blocks = labels
            .iter()
            .map(|label| match firsts.iter().position(|f| *f == label) {
                Some(i) => i,
                None => {
                    firsts.push(label);
                    firsts.len() - 1
                }
            })
            .collect();
        Congruence { blocks }
    }

    /// The partition whose blocks are `groups`, which must cover `0..n`
    /// exactly once.
    pub fn from_blocks(n: usize, groups: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (b, group) in groups.iter().enumerate() {
            for &x in group {
                if x >= n {
                    return Err(Error::Index { index: x, len: n });
                }
                if labels[x] != usize::MAX {
                    return Err(Error::Shape(format!("element {x} appears in two blocks")));
                }
                labels[x] = b;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Shape(format!("element {x} is in no block")));
        }
        Ok(Self::from_labels(&labels))
    }

    /// Δ, every element alone.
    pub fn identity(n: usize) -> Self {
        Congruence {
            blocks: (0..n).collect(),
        }
    }

    /// ∇, one block.
    pub fn total(n: usize) -> Self {
        Congruence { blocks: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.blocks[x]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.iter().max().map_or(0, |&b| b + 1)
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.blocks[a] == self.blocks[b]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (x, &b) in self.blocks.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    /// `self ⊆ other` as relations: every block of `self` lies in a block
    /// of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        (0..self.len()).all(|x| {
            let rep = self
                .blocks
                .iter()
                .position(|&b| b == self.blocks[x])
                .unwrap();
            other.related(rep, x)
        })
    }

    /// Intersection of the two relations.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        let pairs: Vec<(usize, usize)> = self
            .blocks
            .iter()
            .copied()
            .zip(other.blocks.iter().copied())
            .collect();
        Congruence::from_labels(&pairs)
    }

    /// Transitive closure of the union of the two relations.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut y = x;
            while parent[y] != root {
                let next = parent[y];
                parent[y] = root;
                y = next;
            }
            root
        }
        for c in [self, other] {
            for x in 0..n {
                let first = c.blocks.iter().position(|&b| b == c.blocks[x]).unwrap();
                let (rx, rf) = (find(&mut parent, x), find(&mut parent, first));
                parent[rx] = rf;
            }
        }
        let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
        Congruence::from_labels(&roots)
    }
}

/// First pair `(a, b)` with `a < b` in the same block whose images under some
/// operation land in different blocks. With `lattice_only`, only ∧ and ∨ are
/// considered.
pub(crate) fn compatibility_violation(
    algebra: &TmsAlgebra,
    theta: &Congruence,
    lattice_only: bool,
) -> Option<(usize, usize, &'static str)> {
    let l = algebra.lattice();
    let n = algebra.len();
    for a in 0..n {
        for b in a + 1..n {
            if !theta.related(a, b) {
                continue;
            }
            for c in 0..n {
                if !theta.related(l.meet(a, c), l.meet(b, c)) {
                    return Some((a, b, "∧"));
                }
                if !theta.related(l.join(a, c), l.join(b, c)) {
                    return Some((a, b, "∨"));
                }
            }
            if lattice_only {
                continue;
            }
            for op in UnaryOp::ALL {
                let table = algebra.unary(op);
                if !theta.related(table[a], table[b]) {
                    return Some((a, b, op.name()));
                }
            }
        }
    }
    None
}

/// Checks that `theta` is compatible with ∧, ∨, `N`, `G` and `H`.
pub fn check_congruence(algebra: &TmsAlgebra, theta: &Congruence) -> Result<()> {
    if theta.len() != algebra.len() {
        return Err(Error::Shape(format!(
            "partition covers {} elements, algebra has {}",
            theta.len(),
            algebra.len()
        )));
    }
    match compatibility_violation(algebra, theta, false) {
        Some((a, b, op)) => Err(Error::NotACongruence { a, b, op }),
        None => Ok(()),
    }
}

/// The quotient `A/θ` on the blocks of `theta`, with the projection map.
pub fn quotient(algebra: &TmsAlgebra, theta: &Congruence) -> Result<(TmsAlgebra, Vec<usize>)> {
    check_congruence(algebra, theta)?;
    let l = algebra.lattice();
    let reps: Vec<usize> = theta.blocks().iter().map(|b| b[0]).collect();
    let k = reps.len();
    let order = Poset::from_leq(k, |i, j| theta.block_of(l.join(reps[i], reps[j])) == j)?;
    let lattice = lattice_from_poset(&order)?;
    let lift = |op: UnaryOp| -> Vec<usize> {
        let table = algebra.unary(op);
        reps.iter().map(|&r| theta.block_of(table[r])).collect()
    };
    let q = TmsAlgebra::new(
        lattice,
        lift(UnaryOp::Neg),
        lift(UnaryOp::Future),
        lift(UnaryOp::Past),
        algebra.m(),
    )?;
    Ok((q, theta.labels().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn b2_passes_everything() {
        let r = validate_tms_algebra(&samples::b2());
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 11);
    }

    #[test]
    fn t3_failure_witness() {
        let r = validate_tms_algebra(&samples::b2_t3_failing());
        assert!(!r.passed());
        assert!(r.holds(Axiom::T3Future));
        assert_eq!(r.witness(Axiom::T3Past), Some(&[1][..]));
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn k3_and_dm4_pass() {
        assert!(validate_tms_algebra(&samples::k3()).passed());
        assert!(validate_tms_algebra(&samples::dm4()).passed());
    }

    #[test]
    fn ockham_failures_are_reported() {
        // identity negation on B2 breaks O1 and O2
        let b2 = samples::b2();
        let bad =
            TmsAlgebra::new(b2.lattice().clone(), vec![0, 1], vec![0, 1], vec![0, 1], 1).unwrap();
        let r = validate_tms_algebra(&bad);
        assert_eq!(r.witness(Axiom::O1), Some(&[0][..]));
        assert_eq!(r.witness(Axiom::O2), Some(&[1][..]));
    }

    #[test]
    fn t1_and_t2_failures() {
        let k3 = samples::k3();
        // G ≡ 0 breaks T1
        let g_zero = TmsAlgebra::new(
            k3.lattice().clone(),
            k3.negation_table().to_vec(),
            vec![0; 3],
            vec![0, 1, 2],
            1,
        )
        .unwrap();
        let r = validate_tms_algebra(&g_zero);
        assert_eq!(r.witness(Axiom::T1Future), Some(&[2][..]));
        let g_bad = TmsAlgebra::new(
            k3.lattice().clone(),
            k3.negation_table().to_vec(),
            vec![1, 0, 2],
            vec![0, 1, 2],
            1,
        )
        .unwrap();
        let r = validate_tms_algebra(&g_bad);
        // G(0∧c) = G(0) = c but G(0)∧G(c) = c∧0 = 0
        assert_eq!(r.witness(Axiom::T2Future), Some(&[0, 1][..]));
    }

    #[test]
    fn shape_errors() {
        let l = samples::b2().lattice().clone();
        assert!(matches!(
            TmsAlgebra::new(l.clone(), vec![1], vec![0, 1], vec![0, 1], 1),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            TmsAlgebra::new(l.clone(), vec![1, 5], vec![0, 1], vec![0, 1], 1),
            Err(Error::Index { index: 5, .. })
        ));
        assert!(matches!(
            TmsAlgebra::new(l, vec![1, 0], vec![0, 1], vec![0, 1], 0),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn classification_examples() {
        let c = classify(&samples::b2()).unwrap();
        assert!(c.de_morgan && c.kleene && c.boolean && c.tense_algebra);

        let c = classify(&samples::k3()).unwrap();
        assert!(c.de_morgan && c.kleene && !c.boolean && !c.tense_algebra);
        assert_eq!(c.boolean_witness, Some(vec![1]));

        let c = classify(&samples::dm4()).unwrap();
        assert!(c.de_morgan && !c.kleene && !c.boolean);
        assert_eq!(c.kleene_witness, Some(vec![1, 2]));

        assert!(matches!(
            classify(&samples::b2_t3_failing()),
            Err(Error::InvalidAlgebra(_))
        ));
    }

    #[test]
    fn boolean_at_m2_is_not_a_tense_algebra() {
        let c = classify(&samples::b2().with_m(2).unwrap()).unwrap();
        assert!(c.boolean && !c.tense_algebra);
    }

    #[test]
    fn minimal_degree() {
        assert_eq!(minimal_symmetry_degree(&samples::b2()), Some(1));
        assert_eq!(minimal_symmetry_degree(&samples::dm4()), Some(1));
        let four = crate::duality::complex_algebra(&samples::four_cycle_space()).unwrap();
        assert_eq!(minimal_symmetry_degree(&four), Some(2));
        let b2 = samples::b2();
        let constant =
            TmsAlgebra::new(b2.lattice().clone(), vec![1, 1], vec![1, 1], vec![1, 1], 1).unwrap();
        assert_eq!(minimal_symmetry_degree(&constant), None);
    }

    #[test]
    fn homomorphism_examples() {
        let b2 = samples::b2();
        assert!(check_homomorphism(&[0, 1], &b2, &b2).unwrap().passed());

        let r = check_homomorphism(&[1, 1], &b2, &b2).unwrap();
        assert_eq!(r.witness(Preservation::Bottom), Some(&[0][..]));

        // K3 -> B2 collapsing {c, 1}
        let r = check_homomorphism(&[0, 1, 1], &samples::k3(), &b2).unwrap();
        assert_eq!(r.witness(Preservation::Negation), Some(&[1][..]));
        assert!(r.holds(Preservation::Meet) && r.holds(Preservation::Join));

        assert!(matches!(
            check_homomorphism(&[0], &b2, &b2),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn quotient_by_identity_and_total() {
        let b2 = samples::b2();
        let (q, map) = quotient(&b2, &Congruence::identity(2)).unwrap();
        assert_eq!(q, b2);
        assert_eq!(map, vec![0, 1]);

        let (q, map) = quotient(&b2, &Congruence::total(2)).unwrap();
        assert_eq!(q.len(), 1);
        assert!(validate_tms_algebra(&q).passed());
        assert!(check_homomorphism(&map, &b2, &q).unwrap().passed());
    }

    #[test]
    fn dm4_straddling_partition_is_rejected() {
        let dm4 = samples::dm4();
        let theta = Congruence::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(compatibility_violation(&dm4, &theta, true).is_none());
        match quotient(&dm4, &theta) {
            Err(Error::NotACongruence {
                a: 0,
                b: 1,
                op: "N",
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn congruence_meet_join_refines() {
        let a = Congruence::from_labels(&[0, 0, 1, 2]);
        let b = Congruence::from_labels(&[0, 1, 1, 2]);
        assert_eq!(a.join(&b), Congruence::from_labels(&[0, 0, 0, 1]));
        assert_eq!(a.meet(&b), Congruence::identity(4));
        assert!(Congruence::identity(4).refines(&a));
        assert!(a.refines(&a.join(&b)));
        assert!(!a.refines(&b));
        assert_eq!(
            Congruence::from_labels(&['x', 'y', 'x']).labels(),
            &[0, 1, 0]
        );
    }

    #[test]
    fn from_blocks_rejects_bad_covers() {
        assert!(Congruence::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(Congruence::from_blocks(2, &[vec![0, 1], vec![1]]).is_err());
        assert!(Congruence::from_blocks(2, &[vec![0, 2]]).is_err());
    }
}
