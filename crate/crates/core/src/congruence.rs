//! Congruence lattices, computed directly by partition enumeration and
//! through tms-subsets of the dual space.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    check_congruence, compatibility_violation, quotient, Congruence, TmsAlgebra, UnaryOp,
};
use crate::bits::{self, Mask};
use crate::duality::DualSpace;
use crate::guard::Guards;
use crate::lattice::{prime_filters, Lattice};
use crate::report::Report;
use crate::space::{Relation, TmsSpace};
use crate::{Error, Result};

/// Whether the brute-force enumeration runs on one thread or splits the
/// search tree across the rayon pool. Both produce the same ordered list.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Sequential,
    Parallel,
}

/// "`a ~ b` forces `x ~ y`", decidable once all four indices are assigned.
#[derive(Clone, Copy, Debug)]
struct Implication {
    a: usize,
    b: usize,
    x: usize,
    y: usize,
}

/// Implications grouped by the step (largest index) at which they become
/// decidable during restricted-growth-string generation.
struct Constraints {
    by_step: Vec<Vec<Implication>>,
}

impl Constraints {
    fn new(lattice: &Lattice, unary: &[&[usize]]) -> Self {
        let n = lattice.len();
        let mut by_step = vec![Vec::new(); n];
        let mut push = |a: usize, b: usize, x: usize, y: usize| {
            if x != y {
                let step = a.max(b).max(x).max(y);
                by_step[step].push(Implication { a, b, x, y });
            }
        };
        for a in 0..n {
            for b in a + 1..n {
                for c in 0..n {
                    push(a, b, lattice.meet(a, c), lattice.meet(b, c));
                    push(a, b, lattice.join(a, c), lattice.join(b, c));
                }
                for table in unary {
                    push(a, b, table[a], table[b]);
                }
            }
        }
        Constraints { by_step }
    }

    fn holds_at(&self, step: usize, labels: &[usize]) -> bool {
        self.by_step[step]
            .iter()
            .all(|c| labels[c.a] != labels[c.b] || labels[c.x] == labels[c.y])
    }

    fn search(&self, labels: &mut Vec<usize>, max_label: usize, out: &mut Vec<Vec<usize>>) {
        let n = self.by_step.len();
        let i = labels.len();
        if i == n {
            out.push(labels.clone());
            return;
        }
        for label in 0..=max_label + 1 {
            labels.push(label);
            if self.holds_at(i, labels) {
                self.search(labels, max_label.max(label), out);
            }
            labels.pop();
        }
    }

    /// All compatible restricted growth strings in lexicographic order.
    fn enumerate(&self, mode: Mode) -> Vec<Vec<usize>> {
        let n = self.by_step.len();
        if n == 0 {
            return vec![Vec::new()];
        }
        match mode {
            Mode::Sequential => {
                let mut out = Vec::new();
                self.search(&mut vec![0], 0, &mut out);
                out
            }
            Mode::Parallel => {
                let depth = n.min(4);
                let mut prefixes = vec![vec![0]];
                for step in 1..depth {
                    prefixes = prefixes
                        .into_iter()
                        .flat_map(|p| {
                            let max = *p.iter().max().unwrap();
                            (0..=max + 1).map(move |l| {
                                let mut q = p.clone();
                                q.push(l);
                                q
                            })
                        })
                        .filter(|p| self.holds_at(step, p))
                        .collect();
                }
                prefixes
                    .into_par_iter()
                    .map(|p| {
                        let mut out = Vec::new();
                        let max = *p.iter().max().unwrap();
                        self.search(&mut p.clone(), max, &mut out);
                        out
                    })
                    .collect::<Vec<_>>()
                    .into_iter()
                    .flatten()
                    .collect()
            }
        }
    }
}

/// The tms-congruences of an algebra ordered by refinement, with meet and
/// join tables indexing into `congruences`.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    pub congruences: Vec<Congruence>,
    order: Vec<bool>,
    meet: Vec<u32>,
    join: Vec<u32>,
}

impl CongruenceLattice {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    /// `congruences[i] ⊆ congruences[j]`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order[i * self.len() + j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j] as usize
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j] as usize
    }

    pub fn position(&self, theta: &Congruence) -> Option<usize> {
        self.congruences.iter().position(|c| c == theta)
    }
}

/// Builds the lattice on `congruences`, checking each is a tms-congruence,
/// that Δ and ∇ are present, and that meets and joins computed in the
/// lattice of equivalence relations stay inside the family.
pub fn congruence_lattice(
    algebra: &TmsAlgebra,
    congruences: Vec<Congruence>,
) -> Result<CongruenceLattice> {
    for theta in &congruences {
        check_congruence(algebra, theta)?;
    }
    let n = algebra.len();
    let index: HashMap<&Congruence, usize> = congruences
        .iter()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    if index.len() != congruences.len() {
        return Err(Error::NotClosed(
            "duplicate congruence in the family".into(),
        ));
    }
    for (name, c) in [("Δ", Congruence::identity(n)), ("∇", Congruence::total(n))] {
        if !index.contains_key(&c) {
            return Err(Error::NotClosed(format!("{name} is missing")));
        }
    }
    let k = congruences.len();
    let mut order = vec![false; k * k];
    let mut meet = vec![0u32; k * k];
    let mut join = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            order[i * k + j] = congruences[i].refines(&congruences[j]);
            for (table, result, what) in [
                (&mut meet, congruences[i].meet(&congruences[j]), "meet"),
                (&mut join, congruences[i].join(&congruences[j]), "join"),
            ] {
                if let Some((a, b, op)) = compatibility_violation(algebra, &result, false) {
                    return Err(Error::NotClosed(format!(
                        "{what} of congruences {i} and {j} is not compatible with {op} at ({a}, {b})"
                    )));
                }
                let r = *index.get(&result).ok_or_else(|| {
                    Error::NotClosed(format!("{what} of congruences {i} and {j} is missing"))
                })?;
                table[i * k + j] = r as u32;
            }
        }
    }
    Ok(CongruenceLattice {
        congruences,
        order,
        meet,
        join,
    })
}

/// Every partition compatible with ∧, ∨, `N`, `G` and `H`, found by
/// restricted-growth-string enumeration with pruning.
pub fn congruences_bruteforce(algebra: &TmsAlgebra, guards: &Guards) -> Result<CongruenceLattice> {
    congruences_bruteforce_with(algebra, guards, Mode::Sequential)
}

pub fn congruences_bruteforce_with(
    algebra: &TmsAlgebra,
    guards: &Guards,
    mode: Mode,
) -> Result<CongruenceLattice> {
    guards.check_algebra(algebra.len())?;
    let unary: Vec<&[usize]> = UnaryOp::ALL.iter().map(|&op| algebra.unary(op)).collect();
    let constraints = Constraints::new(algebra.lattice(), &unary);
    let found: Vec<Congruence> = constraints
        .enumerate(mode)
        .into_iter()
        .map(|labels| Congruence::from_labels(&labels))
        .collect();
    congruence_lattice(algebra, found)
}

/// Congruences of the lattice reduct alone, ignoring `N`, `G` and `H`.
pub fn lattice_congruences_bruteforce(
    lattice: &Lattice,
    guards: &Guards,
) -> Result<Vec<Congruence>> {
    guards.check_algebra(lattice.len())?;
    let constraints = Constraints::new(lattice, &[]);
    Ok(constraints
        .enumerate(Mode::Sequential)
        .into_iter()
        .map(|labels| Congruence::from_labels(&labels))
        .collect())
}

/// A subset of a tms-space satisfying (tms1) for both relations and
/// `Y = g^(2m-1)(Y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TmsSubset(pub Mask);

impl TmsSubset {
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

/// For `u ∈ Y` and `(v, u) ∈ R` there is `w ∈ Y` with `(w, u) ∈ R` and
/// `w <= v`.
fn satisfies_tms1(space: &TmsSpace, rel: &Relation, mask: Mask) -> bool {
    let p = space.poset();
    bits::members(mask).all(|u| {
        let pred = rel.preimage(u);
        let candidates = pred & mask;
        bits::members(pred).all(|v| candidates & p.down(v) != 0)
    })
}

pub fn is_tms_subset(space: &TmsSpace, mask: Mask) -> bool {
    if !bits::is_subset(mask, space.poset().full_mask()) {
        return false;
    }
    let power = 2 * u64::from(space.m()) - 1;
    let moved: Vec<usize> = space.points().map(|x| space.g_pow(power, x)).collect();
    bits::image(mask, &moved) == mask
        && satisfies_tms1(space, space.future(), mask)
        && satisfies_tms1(space, space.past(), mask)
}

/// All tms-subsets of `space` in canonical subset order.
pub fn tms_subsets(space: &TmsSpace, guards: &Guards) -> Result<Vec<TmsSubset>> {
    guards.check_space(space.len())?;
    let mut out: Vec<TmsSubset> = (0..=space.poset().full_mask())
        .filter(|&mask| is_tms_subset(space, mask))
        .map(TmsSubset)
        .collect();
    out.sort_by(|a, b| bits::canonical_cmp(a.0, b.0));
    Ok(out)
}

impl DualSpace {
    /// `Θ(Y)`: `a ~ b` iff `σ(a) ∩ Y = σ(b) ∩ Y`. Any subset of points is
    /// accepted.
    pub fn theta(&self, points: Mask) -> Congruence {
        let labels: Vec<Mask> = (0..self.algebra_len())
            .map(|a| self.sigma(a) & points)
            .collect();
        Congruence::from_labels(&labels)
    }
}

/// `Θ(Y)` for a tms-subset `Y` of the dual space of `algebra`.
pub fn theta_of_subset(algebra: &TmsAlgebra, subset: TmsSubset) -> Result<Congruence> {
    let dual = DualSpace::of(algebra)?;
    if !is_tms_subset(&dual.space, subset.0) {
        return Err(Error::NotATmsSubset(subset.0));
    }
    Ok(dual.theta(subset.0))
}

/// `{q⁻¹(F) : F ∈ X(A/θ)}` as a set of points of the dual of `algebra`.
pub fn reconstruct_subset(
    algebra: &TmsAlgebra,
    dual: &DualSpace,
    theta: &Congruence,
) -> Result<Mask> {
    let (q_algebra, q) = quotient(algebra, theta)?;
    let (filters, _) = prime_filters(q_algebra.lattice());
    filters.iter().try_fold(0, |acc, f| {
        let pulled = bits::preimage(f.0, &q);
        let point = dual.point_of(pulled).ok_or_else(|| {
            Error::Semantic(format!("q⁻¹(F) = {pulled:#x} is not a prime filter"))
        })?;
        Ok(acc | bits::singleton(point))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum T2Condition {
    /// Every Θ(Y) passes the independent compatibility predicate.
    ThetaCompatible,
    Injective,
    /// The Θ-images are exactly the brute-force congruences.
    ImageEqualsBruteForce,
    /// `Y ⊆ Y'` iff `Θ(Y') ⊆ Θ(Y)`.
    OrderReversal,
    /// Each congruence is Θ of its reconstructed tms-subset.
    Reconstruction,
}

impl fmt::Display for T2Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            T2Condition::ThetaCompatible => "every Θ(Y) is a tms-congruence",
            T2Condition::Injective => "Y ↦ Θ(Y) injective",
            T2Condition::ImageEqualsBruteForce => "Θ-image equals brute-force congruences",
            T2Condition::OrderReversal => "Y ⊆ Y' ⇔ Θ(Y') ⊆ Θ(Y)",
            T2Condition::Reconstruction => "θ = Θ({q⁻¹(F)}) with {q⁻¹(F)} a tms-subset",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct T2Report {
    pub subsets: Vec<TmsSubset>,
    /// Θ(Y) for each entry of `subsets`.
    pub thetas: Vec<Congruence>,
    /// Brute-force congruences.
    pub congruences: Vec<Congruence>,
    pub checks: Report<T2Condition>,
}

impl T2Report {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }
}

/// Checks the anti-isomorphism between the tms-subsets of the dual space
/// and the congruence lattice computed by brute force.
///
/// Witnesses: `[i, j]` index `subsets` for injectivity and order reversal;
/// `[0, k]` names a brute-force congruence missing from the image and
/// `[1, i]` a Θ-image missing from the brute-force list; `[k]` indexes
/// `congruences` for reconstruction.
pub fn verify_theorem_t2(algebra: &TmsAlgebra, guards: &Guards) -> Result<T2Report> {
    guards.check_algebra(algebra.len())?;
    let dual = DualSpace::of(algebra)?;
    let subsets = tms_subsets(&dual.space, guards)?;
    let brute = congruences_bruteforce(algebra, guards)?.congruences;
    let thetas: Vec<Congruence> = subsets.iter().map(|y| dual.theta(y.0)).collect();
    let mut checks = Report::new();

    checks.record(
        T2Condition::ThetaCompatible,
        thetas
            .iter()
            .position(|t| compatibility_violation(algebra, t, false).is_some())
            .map(|i| vec![i]),
    );

    let mut injective = None;
    let mut seen: HashMap<&Congruence, usize> = HashMap::new();
    for (i, t) in thetas.iter().enumerate() {
        if let Some(&j) = seen.get(t) {
            injective = Some(vec![j, i]);
            break;
        }
        seen.insert(t, i);
    }
    checks.record(T2Condition::Injective, injective);

    let image: HashSet<&Congruence> = thetas.iter().collect();
    let brute_set: HashSet<&Congruence> = brute.iter().collect();
    let missing = brute
        .iter()
        .position(|c| !image.contains(c))
        .map(|k| vec![0, k])
        .or_else(|| {
            thetas
                .iter()
                .position(|t| !brute_set.contains(t))
                .map(|i| vec![1, i])
        });
    checks.record(T2Condition::ImageEqualsBruteForce, missing);

    let mut reversal = None;
    'pairs: for (i, yi) in subsets.iter().enumerate() {
        for (j, yj) in subsets.iter().enumerate() {
            if bits::is_subset(yi.0, yj.0) != thetas[j].refines(&thetas[i]) {
                reversal = Some(vec![i, j]);
                break 'pairs;
            }
        }
    }
    checks.record(T2Condition::OrderReversal, reversal);

    let mut reconstruction = None;
    for (k, theta) in brute.iter().enumerate() {
        let ok = match reconstruct_subset(algebra, &dual, theta) {
            Ok(y) => is_tms_subset(&dual.space, y) && dual.theta(y) == *theta,
            Err(_) => false,
        };
        if !ok {
            reconstruction = Some(vec![k]);
            break;
        }
    }
    checks.record(T2Condition::Reconstruction, reconstruction);

    Ok(T2Report {
        subsets,
        thetas,
        congruences: brute,
        checks,
    })
}
