//! Stable intersections of tropical hypersurfaces.
//!
//! Transverse multiplicities are `Π wᵢ · |det(n₁,…,nₙ)|`, cross-checked
//! against the lattice index of the normals. In the plane,
//! [`stable_intersection_2d`] crosses facets directly when every contact is
//! a proper crossing and otherwise takes the limit of a small generic
//! translation. The perturbation oracle shares no geometry with the direct
//! path: it solves the two tie equations of each facet pair and classifies
//! the solution by evaluating the polynomials there.
//!
//! Mixed cells come from the subdivision of the tropical product
//! `p₁ ⊙ ⋯ ⊙ p_k`, whose lifting is the combined lifting of the Minkowski sum.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::lattice::{
    determinant, lattice_index, select_independent_subsystem, IntVector, IntegerMatrix, LatticeError,
};
use crate::polytope::{convex_hull, minkowski_sum, mixed_volume_ie, volume, LatticePolytope, PolytopeError, Rational};
use crate::tropical::{
    evaluate, hypersurface, pair, regular_subdivision, tropical_product, HypersurfaceComplex, RationalVector,
    SubdivisionCell, TropicalError, TropicalPolynomial,
};

/// Largest ambient dimension for mixed-cell computations.
pub const MAX_MIXED_DIM: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntersectError {
    #[error("normals are linearly dependent")]
    NotTransverse,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("perturbation is not generic for this instance")]
    NonGenericPerturbation,
    #[error("coefficient lifting is not generic: a mixed cell has summand dimensions {0:?}")]
    NonGenericInstance(Vec<usize>),
    #[error("mixed cells give {mixed_cells} but the mixed volume is {mixed_volume}")]
    BernsteinMismatch { mixed_cells: Box<Rational>, mixed_volume: Box<Rational> },
    #[error("codimension {r} is invalid for {k} supports in dimension {n}")]
    InvalidCodimension { r: usize, k: usize, n: usize },
    #[error("linear space factors must have support {{0, e1, ..., en}}")]
    InvalidHyperplane,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
}

/// `(Π weights) · |det(normals)|`.
pub fn transverse_multiplicity(normals: &[IntVector], weights: &[BigInt]) -> Result<BigInt, IntersectError> {
    let n = normals.len();
    if weights.len() != n {
        return Err(IntersectError::DimensionMismatch { expected: n, found: weights.len() });
    }
    if let Some(v) = normals.iter().find(|v| v.dim() != n) {
        return Err(IntersectError::DimensionMismatch { expected: n, found: v.dim() });
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(IntersectError::NonPositiveWeight);
    }
    let det = determinant(&IntegerMatrix::from_rows(normals))?.abs();
    if det.is_zero() {
        return Err(IntersectError::NotTransverse);
    }
    let index = lattice_index(normals, n)?;
    assert_eq!(det, index, "|det| and lattice index disagree");
    Ok(weights.iter().product::<BigInt>() * det)
}

/// One facet tuple meeting at an intersection point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Contribution {
    /// Facet index in each input complex.
    pub facets: Vec<usize>,
    pub normals: Vec<IntVector>,
    pub weights: Vec<BigInt>,
    pub multiplicity: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IntersectionPoint {
    pub location: RationalVector,
    pub multiplicity: BigInt,
    pub contributions: Vec<Contribution>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableIntersection {
    pub points: Vec<IntersectionPoint>,
    /// Whether every contact was a proper crossing of facet interiors.
    pub transverse: bool,
}

impl StableIntersection {
    pub fn total(&self) -> BigInt {
        self.points.iter().map(|p| &p.multiplicity).sum()
    }
}

/// Shift directions tried, in order, when an instance is not transverse.
pub const PERTURBATION_SHIFTS: [[i64; 2]; 6] = [[1, 2], [2, -3], [-3, 5], [5, 7], [-7, -11], [11, -13]];

fn check_planar(h: &HypersurfaceComplex) -> Result<(), IntersectError> {
    if h.ambient_dim != 2 {
        return Err(IntersectError::DimensionMismatch { expected: 2, found: h.ambient_dim });
    }
    Ok(())
}

fn contribution(
    h1: &HypersurfaceComplex,
    h2: &HypersurfaceComplex,
    i: usize,
    j: usize,
) -> Result<Contribution, IntersectError> {
    let (f1, f2) = (&h1.facets[i], &h2.facets[j]);
    let normals = vec![f1.normal.clone(), f2.normal.clone()];
    let weights = vec![f1.weight.clone(), f2.weight.clone()];
    let multiplicity = transverse_multiplicity(&normals, &weights)?;
    Ok(Contribution { facets: vec![i, j], normals, weights, multiplicity })
}

fn rat(x: &BigInt) -> Rational {
    Rational::from_integer(x.clone())
}

fn cross(a: &[Rational], b: &[Rational]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn sub(a: &[Rational], b: &[Rational]) -> RationalVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A planar facet as `origin + t·direction` for `t` in a closed range
/// (`None` meaning unbounded).
struct Piece {
    origin: RationalVector,
    direction: RationalVector,
    lo: Option<Rational>,
    hi: Option<Rational>,
}

impl Piece {
    fn of(h: &HypersurfaceComplex, facet: usize) -> Piece {
        let f = &h.facets[facet];
        let origin = h.vertices[f.vertices[0]].clone();
        let int_dir = |v: &IntVector| v.entries().iter().map(rat).collect::<RationalVector>();
        if let Some(l) = f.lineality.first() {
            Piece { origin, direction: int_dir(l), lo: None, hi: None }
        } else if f.vertices.len() == 2 {
            let direction = sub(&h.vertices[f.vertices[1]], &origin);
            Piece { origin, direction, lo: Some(Rational::zero()), hi: Some(Rational::one()) }
        } else {
            assert_eq!(f.rays.len(), 1, "a planar facet with one vertex is a ray");
            Piece { origin, direction: int_dir(&f.rays[0]), lo: Some(Rational::zero()), hi: None }
        }
    }

    fn within(&self, t: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|lo| t >= lo) && self.hi.as_ref().is_none_or(|hi| t <= hi)
    }

    fn strictly_within(&self, t: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|lo| t > lo) && self.hi.as_ref().is_none_or(|hi| t < hi)
    }
}

enum Contact {
    Disjoint,
    Crossing(RationalVector),
    Degenerate,
}

fn contact(a: &Piece, b: &Piece) -> Contact {
    let det = cross(&a.direction, &b.direction);
    let gap = sub(&b.origin, &a.origin);
    if !det.is_zero() {
        let t = cross(&gap, &b.direction) / &det;
        let s = cross(&gap, &a.direction) / &det;
        if !a.within(&t) || !b.within(&s) {
            return Contact::Disjoint;
        }
        if a.strictly_within(&t) && b.strictly_within(&s) {
            let x = a.origin.iter().zip(&a.direction).map(|(o, d)| o + &t * d).collect();
            return Contact::Crossing(x);
        }
        return Contact::Degenerate;
    }
    if !cross(&gap, &a.direction).is_zero() {
        return Contact::Disjoint;
    }
    // Collinear: compare the parameter ranges of `b` measured along `a`.
    let norm: Rational = a.direction.iter().map(|d| d * d).sum();
    let along = |p: &[Rational]| -> Rational {
        sub(p, &a.origin).iter().zip(&a.direction).map(|(x, d)| x * d).sum::<Rational>() / &norm
    };
    let scale: Rational = b.direction.iter().zip(&a.direction).map(|(x, d)| x * d).sum::<Rational>() / &norm;
    let start = along(&b.origin);
    let map = |t: &Option<Rational>| t.as_ref().map(|t| &start + &scale * t);
    let (mut lo, mut hi) = (map(&b.lo), map(&b.hi));
    let (lo_inf, hi_inf) = (b.lo.is_none(), b.hi.is_none());
    let (mut lo_inf, mut hi_inf) = (lo_inf, hi_inf);
    if scale.is_negative() {
        std::mem::swap(&mut lo, &mut hi);
        std::mem::swap(&mut lo_inf, &mut hi_inf);
    }
    let low = match (&a.lo, &lo) {
        (Some(x), Some(y)) => Some(x.max(y).clone()),
        (Some(x), None) => Some(x.clone()),
        (None, y) => y.clone(),
    };
    let high = match (&a.hi, &hi) {
        (Some(x), Some(y)) => Some(x.min(y).clone()),
        (Some(x), None) => Some(x.clone()),
        (None, y) => y.clone(),
    };
    match (low, high) {
        (Some(l), Some(h)) if l > h => Contact::Disjoint,
        _ => Contact::Degenerate,
    }
}

/// Proper crossings of facet interiors, or `None` if some contact is degenerate.
fn direct_crossings(
    h1: &HypersurfaceComplex,
    h2: &HypersurfaceComplex,
) -> Result<Option<Vec<IntersectionPoint>>, IntersectError> {
    let pieces1: Vec<Piece> = (0..h1.facets.len()).map(|i| Piece::of(h1, i)).collect();
    let pieces2: Vec<Piece> = (0..h2.facets.len()).map(|j| Piece::of(h2, j)).collect();
    let mut points = Vec::new();
    for (i, a) in pieces1.iter().enumerate() {
        for (j, b) in pieces2.iter().enumerate() {
            match contact(a, b) {
                Contact::Disjoint => {}
                Contact::Degenerate => return Ok(None),
                Contact::Crossing(x) => {
                    let c = contribution(h1, h2, i, j)?;
                    points.push(IntersectionPoint {
                        location: x,
                        multiplicity: c.multiplicity.clone(),
                        contributions: vec![c],
                    });
                }
            }
        }
    }
    points.sort();
    Ok(Some(points))
}

/// Stable intersection of two plane tropical curves.
pub fn stable_intersection_2d(
    h1: &HypersurfaceComplex,
    h2: &HypersurfaceComplex,
) -> Result<StableIntersection, IntersectError> {
    check_planar(h1)?;
    check_planar(h2)?;
    if let Some(points) = direct_crossings(h1, h2)? {
        return Ok(StableIntersection { points, transverse: true });
    }
    for v in PERTURBATION_SHIFTS {
        match perturbation_limit_2d(h1, h2, &IntVector::from_i64s(&v)) {
            Ok(points) => return Ok(StableIntersection { points, transverse: false }),
            Err(IntersectError::NonGenericPerturbation) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(IntersectError::NonGenericPerturbation)
}

/// A crossing of facet `facets.0` of the first curve with facet `facets.1`
/// of the translated second curve.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Crossing {
    facets: (usize, usize),
    multiplicity: BigInt,
    location: RationalVector,
}

/// Whether every tied term lies on the line through the dual edge, i.e. `x`
/// is in the relative interior of the facet.
fn ties_only_the_edge(argmax: &[IntVector], u: &IntVector, v: &IntVector) -> bool {
    let d = v - u;
    argmax.iter().all(|a| {
        let w = a - u;
        &w[0] * &d[1] == &w[1] * &d[0]
    })
}

/// Do the closed facets (second one moved by `shift`) share a point? Only
/// called for facets on a common line.
fn collinear_facets_meet(
    h1: &HypersurfaceComplex,
    i: usize,
    h2: &HypersurfaceComplex,
    j: usize,
    shift: &[Rational],
) -> bool {
    let a = Piece::of(h1, i);
    let mut b = Piece::of(h2, j);
    b.origin = b.origin.iter().zip(shift).map(|(o, s)| o + s).collect();
    !matches!(contact(&a, &b), Contact::Disjoint)
}

fn perturbed_crossings(
    h1: &HypersurfaceComplex,
    h2: &HypersurfaceComplex,
    shift: &[Rational],
) -> Result<Vec<Crossing>, IntersectError> {
    let p1 = &h1.polynomial;
    let p2 = h2.polynomial.translated(shift)?;
    let coef =
        |p: &TropicalPolynomial, e: &IntVector| p.coefficient(e).expect("edge endpoints are support points").clone();
    let mut out = Vec::new();
    for (i, f1) in h1.facets.iter().enumerate() {
        let (u1, v1) = &f1.dual_edge;
        // ⟨v − u, x⟩ = c_u − c_v
        let a = v1 - u1;
        let ra = coef(p1, u1) - coef(p1, v1);
        for (j, f2) in h2.facets.iter().enumerate() {
            let (u2, v2) = &f2.dual_edge;
            let b = v2 - u2;
            let rb = coef(&p2, u2) - coef(&p2, v2);
            let det = rat(&(&a[0] * &b[1] - &a[1] * &b[0]));
            if det.is_zero() {
                // Same tie line iff the right-hand sides scale like the normals.
                let k = if a[0].is_zero() { rat(&b[1]) / rat(&a[1]) } else { rat(&b[0]) / rat(&a[0]) };
                if rb == &k * &ra && collinear_facets_meet(h1, i, h2, j, shift) {
                    return Err(IntersectError::NonGenericPerturbation);
                }
                continue;
            }
            let x = vec![(&ra * rat(&b[1]) - &rb * rat(&a[1])) / &det, (rat(&a[0]) * &rb - rat(&b[0]) * &ra) / &det];
            let e1 = evaluate(p1, &x)?;
            let e2 = evaluate(&p2, &x)?;
            let on = |e: &[IntVector], u: &IntVector, v: &IntVector| {
                e.binary_search(u).is_ok() && e.binary_search(v).is_ok()
            };
            if !on(&e1.argmax, u1, v1) || !on(&e2.argmax, u2, v2) {
                continue;
            }
            if !ties_only_the_edge(&e1.argmax, u1, v1) || !ties_only_the_edge(&e2.argmax, u2, v2) {
                return Err(IntersectError::NonGenericPerturbation);
            }
            let multiplicity =
                &f1.weight * &f2.weight * (&a[0] * &b[1] - &a[1] * &b[0]).abs() / (a.content() * b.content());
            out.push(Crossing { facets: (i, j), multiplicity, location: x });
        }
    }
    out.sort();
    Ok(out)
}

/// Sign of `c₀ + ε·c₁` for every sufficiently small `ε > 0`.
fn eventual_sign(c0: &Rational, c1: &Rational) -> Ordering {
    match c0.cmp(&Rational::zero()) {
        Ordering::Equal => c1.cmp(&Rational::zero()),
        o => o,
    }
}

fn collinear(alpha: &IntVector, u: &IntVector, v: &IntVector) -> bool {
    let (w, d) = (alpha - u, v - u);
    &w[0] * &d[1] == &w[1] * &d[0]
}

/// Facet pairs that cross for all sufficiently small `ε > 0` once the second
/// curve is moved by `εv`. The crossing point is affine in `ε` and so is every
/// dominance condition, so membership is a sign test on `(constant, slope)`.
fn small_shift_crossings(
    h1: &HypersurfaceComplex,
    h2: &HypersurfaceComplex,
    v: &IntVector,
) -> Result<Vec<(usize, usize)>, IntersectError> {
    let (p1, p2) = (&h1.polynomial, &h2.polynomial);
    let vr: RationalVector = v.entries().iter().map(rat).collect();
    let zero = Rational::zero();
    let coef =
        |p: &TropicalPolynomial, e: &IntVector| p.coefficient(e).expect("edge endpoints are support points").clone();
    // Every term other than the edge's must lose, strictly unless it lies on the edge's line.
    let dominant =
        |p: &TropicalPolynomial, (u, w): &(IntVector, IntVector), x0: &[Rational], x1: &[Rational], drift: bool| {
            let cu = coef(p, u);
            for t in p.terms() {
                let alpha = &t.exponent;
                if alpha == u || alpha == w {
                    continue;
                }
                let d = u - alpha;
                let c0 = pair(x0, &d) + &cu - &t.coefficient;
                let mut c1 = pair(x1, &d);
                if drift {
                    c1 -= pair(&vr, &d);
                }
                match eventual_sign(&c0, &c1) {
                    Ordering::Less => return Ok(false),
                    Ordering::Equal if !collinear(alpha, u, w) => return Err(IntersectError::NonGenericPerturbation),
                    _ => {}
                }
            }
            Ok(true)
        };
    let mut out = Vec::new();
    for (i, f1) in h1.facets.iter().enumerate() {
        let (u1, v1) = &f1.dual_edge;
        let a = v1 - u1;
        let ra = coef(p1, u1) - coef(p1, v1);
        for (j, f2) in h2.facets.iter().enumerate() {
            let (u2, v2) = &f2.dual_edge;
            let b = v2 - u2;
            let rb0 = coef(p2, u2) - coef(p2, v2);
            let rb1 = pair(&vr, &b);
            let det = rat(&(&a[0] * &b[1] - &a[1] * &b[0]));
            if det.is_zero() {
                let k = if a[0].is_zero() { rat(&b[1]) / rat(&a[1]) } else { rat(&b[0]) / rat(&a[0]) };
                if rb1.is_zero()
                    && rb0 == &k * &ra
                    && collinear_facets_meet(h1, i, h2, j, &[zero.clone(), zero.clone()])
                {
                    return Err(IntersectError::NonGenericPerturbation);
                }
                continue;
            }
            let solve = |r1: &Rational, r2: &Rational| -> RationalVector {
                vec![(r1 * rat(&b[1]) - r2 * rat(&a[1])) / &det, (rat(&a[0]) * r2 - rat(&b[0]) * r1) / &det]
            };
            let (x0, x1) = (solve(&ra, &rb0), solve(&zero, &rb1));
            if dominant(p1, &f1.dual_edge, &x0, &x1, false)? && dominant(p2, &f2.dual_edge, &x0, &x1, true)? {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// Ordinary intersection of `H₁` with `H₂ + εv`, every crossing weighted by
/// `w₁w₂|det(n₁,n₂)|`. Fails if the translated configuration is not transverse.
pub fn perturbation_oracle_2d(
    h1: &HypersurfaceComplex,
    h2: &HypersurfaceComplex,
    v: &IntVector,
    eps: &Rational,
) -> Result<Vec<IntersectionPoint>, IntersectError> {
    check_planar(h1)?;
    check_planar(h2)?;
    let shift: RationalVector = v.entries().iter().map(|e| rat(e) * eps).collect();
    perturbed_crossings(h1, h2, &shift)?
        .into_iter()
        .map(|c| {
            let contrib = contribution(h1, h2, c.facets.0, c.facets.1)?;
            debug_assert_eq!(contrib.multiplicity, c.multiplicity);
            Ok(IntersectionPoint { location: c.location, multiplicity: c.multiplicity, contributions: vec![contrib] })
        })
        .collect()
}

/// Initial pair of perturbation sizes; both shrink by `1/1000` per retry.
pub fn perturbation_schedule() -> (Rational, Rational) {
    (Rational::new(BigInt::one(), BigInt::from(997)), Rational::new(BigInt::one(), BigInt::from(9973)))
}

pub const PERTURBATION_RETRIES: usize = 5;

/// Limit of the perturbed intersections as `ε → 0`. Crossings move affinely
/// in `ε`, so two samples extrapolate exactly once both show the crossings
/// that persist for every smaller `ε`.
pub fn perturbation_limit_2d(
    h1: &HypersurfaceComplex,
    h2: &HypersurfaceComplex,
    v: &IntVector,
) -> Result<Vec<IntersectionPoint>, IntersectError> {
    check_planar(h1)?;
    check_planar(h2)?;
    let (mut e1, mut e2) = perturbation_schedule();
    let shrink = Rational::new(BigInt::one(), BigInt::from(1000));
    let expected = small_shift_crossings(h1, h2, v)?;
    let settled = |c: &[Crossing]| c.iter().map(|x| x.facets).eq(expected.iter().copied());
    let at = |eps: &Rational| -> Result<Vec<Crossing>, IntersectError> {
        let shift: RationalVector = v.entries().iter().map(|e| rat(e) * eps).collect();
        perturbed_crossings(h1, h2, &shift)
    };
    for _ in 0..=PERTURBATION_RETRIES {
        let outcome = at(&e1).and_then(|a| Ok((a, at(&e2)?)));
        match outcome {
            Ok((a, b))
                if settled(&a) && settled(&b) && a.iter().zip(&b).all(|(x, y)| x.multiplicity == y.multiplicity) =>
            {
                let mut clusters: BTreeMap<RationalVector, Vec<Contribution>> = BTreeMap::new();
                let span = &e2 - &e1;
                for (x, y) in a.iter().zip(&b) {
                    let limit: RationalVector =
                        x.location.iter().zip(&y.location).map(|(p, q)| (&e2 * p - &e1 * q) / &span).collect();
                    clusters.entry(limit).or_default().push(contribution(h1, h2, x.facets.0, x.facets.1)?);
                }
                return Ok(clusters
                    .into_iter()
                    .map(|(location, contributions)| IntersectionPoint {
                        multiplicity: contributions.iter().map(|c| &c.multiplicity).sum(),
                        location,
                        contributions,
                    })
                    .collect());
            }
            Ok(_) | Err(IntersectError::NonGenericPerturbation) => {
                e1 *= &shrink;
                e2 *= &shrink;
            }
            Err(e) => return Err(e),
        }
    }
    Err(IntersectError::NonGenericPerturbation)
}

/// A maximal cell `F₁ + ⋯ + F_k` of the mixed subdivision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedCell {
    pub summands: Vec<SubdivisionCell>,
    pub total_dim: usize,
    /// The point of `⋃ V(pᵢ)` dual to the cell.
    pub witness: RationalVector,
}

impl MixedCell {
    pub fn summand_dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.dim).collect()
    }

    pub fn polytope(&self) -> LatticePolytope {
        let n = self.witness.len();
        self.summands.iter().fold(LatticePolytope::point(IntVector::zeros(n)), |acc, s| {
            minkowski_sum(&acc, &s.polytope()).expect("summands share the ambient space")
        })
    }

    /// Every summand is at least an edge, and their directions are independent
    /// and fill the space.
    pub fn is_fully_mixed(&self) -> bool {
        let n = self.witness.len();
        self.summands.iter().all(|s| s.dim >= 1) && self.total_dim == n && self.polytope().dim() == n
    }

    /// Volume with the unit cube as 1, so a parallelotope spanned by `a₁,…,aₙ`
    /// gets `|det(a₁,…,aₙ)|`.
    pub fn lattice_volume(&self) -> Rational {
        volume(&self.polytope())
    }
}

pub fn mixed_cells(polys: &[TropicalPolynomial]) -> Result<Vec<MixedCell>, IntersectError> {
    let first = polys.first().ok_or(IntersectError::DimensionMismatch { expected: 1, found: 0 })?;
    let n = first.ambient_dim();
    if n > MAX_MIXED_DIM {
        return Err(IntersectError::DimensionTooLarge { dim: n, max: MAX_MIXED_DIM });
    }
    if polys.len() > n {
        return Err(IntersectError::DimensionMismatch { expected: n, found: polys.len() });
    }
    let mut product = first.clone();
    for p in &polys[1..] {
        product = tropical_product(&product, p)?;
    }
    let mut cells = Vec::new();
    for cell in regular_subdivision(&product)? {
        let x = cell.witness;
        let summands: Vec<SubdivisionCell> = polys
            .iter()
            .map(|p| {
                let e = evaluate(p, &x)?;
                let dim = convex_hull(&e.argmax)?.dim();
                Ok(SubdivisionCell { support_points: e.argmax, dim, witness: x.clone(), value: e.value })
            })
            .collect::<Result<_, IntersectError>>()?;
        let total_dim = summands.iter().map(|s| s.dim).sum();
        cells.push(MixedCell { summands, total_dim, witness: x });
    }
    Ok(cells)
}

/// The standard simplex `conv{0, e₁, …, eₙ}`, Newton polytope of a tropical hyperplane.
pub fn simplex_factor(n: usize) -> LatticePolytope {
    LatticePolytope::simplex(n, 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernsteinTotal {
    pub total: Rational,
    pub fully_mixed_cells: usize,
    pub mixed_volume: Rational,
}

/// Total stable multiplicity of `V(p₁) ∩ ⋯ ∩ V(p_r) ∩ L`, where `L` is cut
/// out by `n − r` tropical hyperplanes, from the fully mixed cells.
pub fn bernstein_total(
    polys: &[TropicalPolynomial],
    hyperplanes: &[TropicalPolynomial],
) -> Result<BernsteinTotal, IntersectError> {
    let first =
        polys.first().or(hyperplanes.first()).ok_or(IntersectError::DimensionMismatch { expected: 1, found: 0 })?;
    let n = first.ambient_dim();
    if polys.len() + hyperplanes.len() != n {
        return Err(IntersectError::DimensionMismatch { expected: n, found: polys.len() + hyperplanes.len() });
    }
    let simplex: Vec<IntVector> = simplex_factor(n).vertices().to_vec();
    if hyperplanes.iter().any(|h| h.support() != simplex) {
        return Err(IntersectError::InvalidHyperplane);
    }
    let all: Vec<TropicalPolynomial> = polys.iter().chain(hyperplanes).cloned().collect();
    let cells = mixed_cells(&all)?;
    if let Some(bad) = cells.iter().find(|c| c.total_dim > n && c.summands.iter().all(|s| s.dim >= 1)) {
        return Err(IntersectError::NonGenericInstance(bad.summand_dims()));
    }
    let fully: Vec<&MixedCell> = cells.iter().filter(|c| c.is_fully_mixed()).collect();
    let total: Rational = fully.iter().map(|c| c.lattice_volume()).sum();
    let newton: Vec<LatticePolytope> = all.iter().map(|p| p.newton_polytope()).collect::<Result<_, _>>()?;
    let mixed_volume = mixed_volume_ie(&newton)?.normalized().clone();
    if total != mixed_volume {
        return Err(IntersectError::BernsteinMismatch {
            mixed_cells: Box::new(total),
            mixed_volume: Box::new(mixed_volume),
        });
    }
    Ok(BernsteinTotal { total, fully_mixed_cells: fully.len(), mixed_volume })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutBound {
    pub bound: Rational,
    /// The lexicographically first subset attaining the bound.
    pub witness: Vec<usize>,
    /// Every `r`-subset with its `n!·MV(Δ_I, Σ, …, Σ)`.
    pub table: Vec<(Vec<usize>, Rational)>,
}

fn subsets(k: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(i + 1, k, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, r, &mut Vec::new(), &mut out);
    out
}

fn subset_mixed_volume(newton: &[LatticePolytope], subset: &[usize], n: usize) -> Result<Rational, IntersectError> {
    let mut tuple: Vec<LatticePolytope> = subset.iter().map(|&i| newton[i].clone()).collect();
    tuple.extend(std::iter::repeat_n(simplex_factor(n), n - subset.len()));
    Ok(mixed_volume_ie(&tuple)?.normalized().clone())
}

/// `max_I n!·MV(Δ_{i₁}, …, Δ_{i_r}, Σ, …, Σ)` over all `r`-subsets of the supports.
pub fn bezout_bound(supports: &[Vec<IntVector>], r: usize, n: usize) -> Result<BezoutBound, IntersectError> {
    let k = supports.len();
    if r == 0 || r > k.min(n) {
        return Err(IntersectError::InvalidCodimension { r, k, n });
    }
    let newton: Vec<LatticePolytope> = supports
        .iter()
        .map(|s| {
            let p = convex_hull(s)?;
            if p.ambient_dim() != n {
                return Err(IntersectError::DimensionMismatch { expected: n, found: p.ambient_dim() });
            }
            Ok(p)
        })
        .collect::<Result<_, IntersectError>>()?;
    let table: Vec<(Vec<usize>, Rational)> = subsets(k, r)
        .into_par_iter()
        .map(|s| {
            let mv = subset_mixed_volume(&newton, &s, n)?;
            Ok((s, mv))
        })
        .collect::<Result<_, IntersectError>>()?;
    let bound = table.iter().map(|(_, v)| v).max().expect("at least one subset").clone();
    let witness = table.iter().find(|(_, v)| *v == bound).expect("max is attained").0.clone();
    Ok(BezoutBound { bound, witness, table })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalBoundCheck {
    /// Indices of the hypersurfaces kept by the independent subsystem.
    pub subsystem: Vec<usize>,
    /// `(Π weights over the subsystem) · |det(n_I, m₁, …, m_{n−r})|`.
    pub multiplicity: BigInt,
    /// `n!·MV(Δ_I, Σ, …, Σ)` for the chosen subsystem.
    pub bound: Rational,
    pub ok: bool,
}

/// Local multiplicity at a smooth point of a possibly redundant system,
/// compared with the mixed volume of the independent subsystem it selects.
pub fn local_multiplicity_bound_check(
    normals: &[IntVector],
    weights: &[BigInt],
    linear_normals: &[IntVector],
    supports: &[Vec<IntVector>],
) -> Result<LocalBoundCheck, IntersectError> {
    let n = linear_normals.first().or(normals.first()).map_or(0, IntVector::dim);
    if weights.len() != normals.len() || supports.len() != normals.len() {
        return Err(IntersectError::DimensionMismatch {
            expected: normals.len(),
            found: weights.len().min(supports.len()),
        });
    }
    let r =
        n.checked_sub(linear_normals.len()).ok_or(IntersectError::InvalidCodimension { r: 0, k: normals.len(), n })?;
    let subsystem = select_independent_subsystem(normals, r)?;
    let mut rows: Vec<IntVector> = subsystem.iter().map(|&i| normals[i].clone()).collect();
    rows.extend(linear_normals.iter().cloned());
    let mut w: Vec<BigInt> = subsystem.iter().map(|&i| weights[i].clone()).collect();
    w.extend(std::iter::repeat_n(BigInt::one(), linear_normals.len()));
    let multiplicity = transverse_multiplicity(&rows, &w)?;
    let newton: Vec<LatticePolytope> = supports.iter().map(|s| convex_hull(s)).collect::<Result<_, _>>()?;
    let bound = subset_mixed_volume(&newton, &subsystem, n)?;
    let ok = rat(&multiplicity) <= bound;
    Ok(LocalBoundCheck { subsystem, multiplicity, bound, ok })
}

/// Builds the hypersurface of each polynomial.
pub fn hypersurfaces(polys: &[TropicalPolynomial]) -> Result<Vec<HypersurfaceComplex>, IntersectError> {
    polys.iter().map(|p| hypersurface(p).map_err(IntersectError::from)).collect()
}
