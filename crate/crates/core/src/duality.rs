//! The dual tms-space of an algebra, the complex algebra of a space, and the
//! maps relating them.
//!
//! Dual-space points are the prime filters of the algebra in canonical
//! subset order. Complex-algebra elements are the up-sets of the space in
//! canonical subset order. Both isomorphism checks verify the explicit
//! canonical maps `σ` and `ε` rather than searching for an isomorphism.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{check_homomorphism, validate_tms_algebra, TmsAlgebra};
use crate::bits::{self, Mask};
use crate::lattice::{prime_filters, Lattice, PrimeFilter};
use crate::poset::Upset;
use crate::report::{first_failure, pairs, singles, Report};
use crate::space::{validate_tms_space, Relation, TmsSpace};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MapDirection {
    AlgebraToAlgebra,
    SpaceToSpace,
}

/// A total map between two carriers, `images[x]` being the image of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureMap {
    pub direction: MapDirection,
    pub images: Vec<usize>,
}

impl StructureMap {
    pub fn algebra(images: Vec<usize>) -> Self {
        StructureMap {
            direction: MapDirection::AlgebraToAlgebra,
            images,
        }
    }

    pub fn space(images: Vec<usize>) -> Self {
        StructureMap {
            direction: MapDirection::SpaceToSpace,
            images,
        }
    }

    pub fn identity(direction: MapDirection, n: usize) -> Self {
        StructureMap {
            direction,
            images: (0..n).collect(),
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.images
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &StructureMap) -> StructureMap {
        StructureMap {
            direction: self.direction,
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }
}

/// The dual space together with the prime filters its points stand for.
#[derive(Clone, Debug)]
pub struct DualSpace {
    pub space: TmsSpace,
    pub filters: Vec<PrimeFilter>,
    index: HashMap<Mask, usize>,
    carrier: usize,
}

impl DualSpace {
    /// Size of the algebra this is the dual of.
    pub fn algebra_len(&self) -> usize {
        self.carrier
    }

    /// Index of the point whose filter is `mask`, if `mask` is a prime filter.
    pub fn point_of(&self, mask: Mask) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    /// `σ(a) = {P : a ∈ P}` as a mask over the points.
    pub fn sigma(&self, a: usize) -> Mask {
        self.filters
            .iter()
            .enumerate()
            .filter(|(_, f)| f.contains(a))
            .fold(0, |acc, (i, _)| acc | bits::singleton(i))
    }

    /// Builds the dual of a lattice with unary operations, without
    /// validating them. `ops` are `N`, `G`, `H` tables.
    fn build(
        lattice: &Lattice,
        neg: &[usize],
        future: &[usize],
        past: &[usize],
        m: u32,
    ) -> Result<Self> {
        let (filters, order) = prime_filters(lattice);
        let index: HashMap<Mask, usize> =
            filters.iter().enumerate().map(|(i, f)| (f.0, i)).collect();
        let full = bits::full(lattice.len());
        let k = filters.len();

        // g_N(P) = {a : N(a) ∉ P}
        let mut reversal = Vec::with_capacity(k);
        for f in &filters {
            let image = full & !bits::preimage(f.0, neg);
            let point = index.get(&image).copied().ok_or_else(|| {
                Error::Semantic(format!("g_N maps a prime filter to non-prime {image:#x}"))
            })?;
            reversal.push(point);
        }

        // R_T = {(P, F) : T⁻¹(F) ⊆ P}
        let canonical = |op: &[usize]| {
            let mut pairs = Vec::new();
            for (j, f) in filters.iter().enumerate() {
                let pulled = bits::preimage(f.0, op);
                for (i, p) in filters.iter().enumerate() {
                    if bits::is_subset(pulled, p.0) {
                        pairs.push((i, j));
                    }
                }
            }
            Relation::from_pairs(k, &pairs)
        };
        let space = TmsSpace::new(order, reversal, canonical(future)?, canonical(past)?, m)?;
        Ok(DualSpace {
            space,
            filters,
            index,
            carrier: lattice.len(),
        })
    }

    pub fn of(algebra: &TmsAlgebra) -> Result<Self> {
        let report = validate_tms_algebra(algebra);
        if !report.passed() {
            return Err(Error::InvalidAlgebra(Box::new(report)));
        }
        Self::build(
            algebra.lattice(),
            algebra.negation_table(),
            algebra.future_table(),
            algebra.past_table(),
            algebra.m(),
        )
    }
}

/// The tms-space of prime filters of `algebra`.
pub fn dual_space(algebra: &TmsAlgebra) -> Result<TmsSpace> {
    Ok(DualSpace::of(algebra)?.space)
}

/// Complex algebra with the up-sets its elements stand for.
pub fn complex_algebra_with_upsets(space: &TmsSpace) -> Result<(TmsAlgebra, Vec<Upset>)> {
    let report = validate_tms_space(space);
    if !report.passed() {
        return Err(Error::InvalidSpace(Box::new(report)));
    }
    let (lattice, upsets) = Lattice::of_upsets(space.poset())?;
    let index: HashMap<Mask, usize> = upsets.iter().enumerate().map(|(i, u)| (u.0, i)).collect();
    let full = space.poset().full_mask();
    let lookup = |mask: Mask| {
        index
            .get(&mask)
            .copied()
            .ok_or_else(|| Error::Semantic(format!("operation leaves the up-sets at {mask:#x}")))
    };
    let mut neg = Vec::with_capacity(upsets.len());
    let mut future = Vec::with_capacity(upsets.len());
    let mut past = Vec::with_capacity(upsets.len());
    for u in &upsets {
        // N_g(U) = X \ g⁻¹(U)
        neg.push(lookup(full & !bits::preimage(u.0, space.reversal()))?);
        future.push(lookup(space.future().necessity(u.0))?);
        past.push(lookup(space.past().necessity(u.0))?);
    }
    let algebra = TmsAlgebra::new(lattice, neg, future, past, space.m())?;
    Ok((algebra, upsets))
}

/// The algebra of up-sets of `space` with `N_g`, `G_{R_G}`, `H_{R_H}`.
pub fn complex_algebra(space: &TmsSpace) -> Result<TmsAlgebra> {
    Ok(complex_algebra_with_upsets(space)?.0)
}

/// Conditions verified for the unit and counit maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IsoCondition {
    Bijective,
    Meet,
    Join,
    Bottom,
    Top,
    Negation,
    Future,
    Past,
    OrderPreserving,
    OrderReflecting,
    CommutesWithG,
    FutureRelation,
    PastRelation,
}

impl fmt::Display for IsoCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IsoCondition::Bijective => "bijective",
            IsoCondition::Meet => "preserves ∧",
            IsoCondition::Join => "preserves ∨",
            IsoCondition::Bottom => "preserves 0",
            IsoCondition::Top => "preserves 1",
            IsoCondition::Negation => "preserves N",
            IsoCondition::Future => "preserves G",
            IsoCondition::Past => "preserves H",
            IsoCondition::OrderPreserving => "preserves ≤",
            IsoCondition::OrderReflecting => "reflects ≤",
            IsoCondition::CommutesWithG => "commutes with g",
            IsoCondition::FutureRelation => "preserves and reflects RG",
            IsoCondition::PastRelation => "preserves and reflects RH",
        };
        f.write_str(s)
    }
}

pub type IsoReport = Report<IsoCondition>;

fn bijectivity_witness(map: &[usize], target_len: usize) -> Option<Vec<usize>> {
    if map.len() != target_len {
        return Some(vec![map.len(), target_len]);
    }
    let mut seen = vec![usize::MAX; target_len];
    for (x, &y) in map.iter().enumerate() {
        if seen[y] != usize::MAX {
            return Some(vec![seen[y], x]);
        }
        seen[y] = x;
    }
    None
}

/// `σ : A → D(X(A))`, `a ↦ {P : a ∈ P}`, checked to be an isomorphism of
/// tense m-symmetric algebras.
pub fn sigma_iso(algebra: &TmsAlgebra) -> Result<(StructureMap, IsoReport)> {
    let dual = DualSpace::of(algebra)?;
    let (target, upsets) = complex_algebra_with_upsets(&dual.space)?;
    let index: HashMap<Mask, usize> = upsets.iter().enumerate().map(|(i, u)| (u.0, i)).collect();
    let n = algebra.len();
    let mut report = IsoReport::new();

    let mut images = Vec::with_capacity(n);
    for a in algebra.elements() {
        let s = dual.sigma(a);
        match index.get(&s) {
            Some(&i) => images.push(i),
            None => {
                // σ(a) is always an up-set; reaching here means the dual order is wrong
                report.record(IsoCondition::Bijective, Some(vec![a]));
                return Ok((StructureMap::algebra(images), report));
            }
        }
    }
    report.record(
        IsoCondition::Bijective,
        bijectivity_witness(&images, target.len()),
    );

    let (src, dst) = (algebra.lattice(), target.lattice());
    let s = |a: usize| images[a];
    report.record(
        IsoCondition::Meet,
        first_failure(pairs(n), |t| {
            s(src.meet(t[0], t[1])) == dst.meet(s(t[0]), s(t[1]))
        }),
    );
    report.record(
        IsoCondition::Join,
        first_failure(pairs(n), |t| {
            s(src.join(t[0], t[1])) == dst.join(s(t[0]), s(t[1]))
        }),
    );
    report.record(
        IsoCondition::Bottom,
        (s(src.bottom()) != dst.bottom()).then(|| vec![src.bottom()]),
    );
    report.record(
        IsoCondition::Top,
        (s(src.top()) != dst.top()).then(|| vec![src.top()]),
    );
    report.record(
        IsoCondition::Negation,
        first_failure(singles(n), |t| s(algebra.neg(t[0])) == target.neg(s(t[0]))),
    );
    report.record(
        IsoCondition::Future,
        first_failure(singles(n), |t| {
            s(algebra.future(t[0])) == target.future(s(t[0]))
        }),
    );
    report.record(
        IsoCondition::Past,
        first_failure(singles(n), |t| {
            s(algebra.past(t[0])) == target.past(s(t[0]))
        }),
    );
    Ok((StructureMap::algebra(images), report))
}

/// `ε : X → X(D(X))`, `x ↦ {U : x ∈ U}`, checked to be an isomorphism of
/// tms-spaces.
pub fn epsilon_iso(space: &TmsSpace) -> Result<(StructureMap, IsoReport)> {
    let (algebra, upsets) = complex_algebra_with_upsets(space)?;
    let dual = DualSpace::of(&algebra)?;
    let target = &dual.space;
    let n = space.len();
    let mut report = IsoReport::new();

    let mut images = Vec::with_capacity(n);
    for x in space.points() {
        let eps = upsets
            .iter()
            .enumerate()
            .filter(|(_, u)| u.contains(x))
            .fold(0, |acc, (i, _)| acc | bits::singleton(i));
        match dual.point_of(eps) {
            Some(p) => images.push(p),
            None => {
                report.record(IsoCondition::Bijective, Some(vec![x]));
                return Ok((StructureMap::space(images), report));
            }
        }
    }
    report.record(
        IsoCondition::Bijective,
        bijectivity_witness(&images, target.len()),
    );

    let e = |x: usize| images[x];
    let (p, q) = (space.poset(), target.poset());
    report.record(
        IsoCondition::OrderPreserving,
        first_failure(pairs(n), |t| !p.leq(t[0], t[1]) || q.leq(e(t[0]), e(t[1]))),
    );
    report.record(
        IsoCondition::OrderReflecting,
        first_failure(pairs(n), |t| !q.leq(e(t[0]), e(t[1])) || p.leq(t[0], t[1])),
    );
    report.record(
        IsoCondition::CommutesWithG,
        first_failure(singles(n), |t| e(space.g(t[0])) == target.g(e(t[0]))),
    );
    report.record(
        IsoCondition::FutureRelation,
        first_failure(pairs(n), |t| {
            space.future().contains(t[0], t[1]) == target.future().contains(e(t[0]), e(t[1]))
        }),
    );
    report.record(
        IsoCondition::PastRelation,
        first_failure(pairs(n), |t| {
            space.past().contains(t[0], t[1]) == target.past().contains(e(t[0]), e(t[1]))
        }),
    );
    Ok((StructureMap::space(images), report))
}

/// `Φ(h) : X(B) → X(A)`, `F ↦ h⁻¹(F)`.
pub fn dual_function(
    h: &StructureMap,
    source: &TmsAlgebra,
    target: &TmsAlgebra,
) -> Result<StructureMap> {
    let report = check_homomorphism(h.as_slice(), source, target)?;
    if !report.passed() {
        return Err(Error::NotAHomomorphism(report.summary()));
    }
    let from = DualSpace::of(target)?;
    let to = DualSpace::of(source)?;
    let images = from
        .filters
        .iter()
        .map(|f| {
            let pulled = bits::preimage(f.0, h.as_slice());
            to.point_of(pulled).ok_or_else(|| {
                Error::Semantic(format!("preimage {pulled:#x} is not a prime filter"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StructureMap::space(images))
}

/// Conditions on a tms-function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FunctionCondition {
    Total,
    Monotone,
    Equivariant,
    /// r1
    ForthFuture,
    /// r2
    BackFuture,
    /// r3
    ForthPast,
    /// r4
    BackPast,
}

impl fmt::Display for FunctionCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FunctionCondition::Total => "total map into the target",
            FunctionCondition::Monotone => "monotone",
            FunctionCondition::Equivariant => "f ∘ g1 = g2 ∘ f",
            FunctionCondition::ForthFuture => "r1  RG forth",
            FunctionCondition::BackFuture => "r2  RG back",
            FunctionCondition::ForthPast => "r3  RH forth",
            FunctionCondition::BackPast => "r4  RH back",
        };
        f.write_str(s)
    }
}

pub type FunctionReport = Report<FunctionCondition>;

/// Checks that `f : S1 → S2` is monotone, commutes with `g`, and satisfies
/// the forth and back conditions for both relations.
///
/// Back witnesses are `[y, z]`: `(y, f(z)) ∈ R2` but no `x` with
/// `(x, z) ∈ R1` has `f(x) <= y`.
pub fn check_tms_function(f: &StructureMap, from: &TmsSpace, to: &TmsSpace) -> FunctionReport {
    let map = f.as_slice();
    let n = from.len();
    let mut report = FunctionReport::new();
    if map.len() != n {
        report.record(FunctionCondition::Total, Some(vec![map.len(), n]));
        return report;
    }
    if let Some(x) = map.iter().position(|&y| y >= to.len()) {
        report.record(FunctionCondition::Total, Some(vec![x]));
        return report;
    }
    report.record(FunctionCondition::Total, None);

    let (p, q) = (from.poset(), to.poset());
    report.record(
        FunctionCondition::Monotone,
        first_failure(pairs(n), |t| {
            !p.leq(t[0], t[1]) || q.leq(map[t[0]], map[t[1]])
        }),
    );
    report.record(
        FunctionCondition::Equivariant,
        first_failure(singles(n), |t| map[from.g(t[0])] == to.g(map[t[0]])),
    );
    for (forth, back, r1, r2) in [
        (
            FunctionCondition::ForthFuture,
            FunctionCondition::BackFuture,
            from.future(),
            to.future(),
        ),
        (
            FunctionCondition::ForthPast,
            FunctionCondition::BackPast,
            from.past(),
            to.past(),
        ),
    ] {
        report.record(
            forth,
            r1.pairs()
                .find(|&(x, y)| !r2.contains(map[x], map[y]))
                .map(|(x, y)| vec![x, y]),
        );
        let mut back_witness = None;
        'outer: for y in to.points() {
            for z in from.points() {
                if !r2.contains(y, map[z]) {
                    continue;
                }
                let found = bits::members(r1.preimage(z)).any(|x| q.leq(map[x], y));
                if !found {
                    back_witness = Some(vec![y, z]);
                    break 'outer;
                }
            }
        }
        report.record(back, back_witness);
    }
    report
}
