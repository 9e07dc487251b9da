//! Tropical lines and the empirical tropical degree of a hypersurface.
//!
//! A tropical line in ℝⁿ (n = 2, 3) is the balanced tree with rays
//! `−e₁, …, −eₙ` and `e₁ + ⋯ + eₙ`. Along each edge `a + t·d` of the line the
//! polynomial restricts to the upper envelope of the affine functions
//! `t ↦ ⟨a,α⟩ + c_α + t⟨d,α⟩`, so intersections with the hypersurface are
//! exactly the breakpoints of that envelope. A breakpoint is transverse when
//! it lies inside the edge and its tied terms span a segment, i.e. the point
//! is inside a facet and the edge crosses it.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::lattice::{rank, IntVector, IntegerMatrix};
use crate::polytope::{l1_diameter, mixed_volume_ie, LatticePolytope, PolytopeError, Rational};
use crate::tropical::{evaluate, pair, HypersurfaceComplex, RationalVector, TropicalError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegreeError {
    #[error("tropical lines are supported in dimensions 2 and 3, not {0}")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid tropical line: {0}")]
    InvalidLine(String),
    #[error("at least one sample is required")]
    ZeroSamples,
    #[error("sample {sample} found no transverse line in {attempts} attempts")]
    SamplingExhausted { sample: usize, attempts: usize },
    #[error(transparent)]
    Tropical(#[from] TropicalError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// An edge of a tropical line: `vertices[start] + t·direction` for
/// `t ∈ [0, length]`, or `t ≥ 0` when `end` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineEdge {
    pub start: usize,
    pub end: Option<usize>,
    pub direction: IntVector,
    pub length: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalLine {
    ambient_dim: usize,
    vertices: Vec<RationalVector>,
    edges: Vec<LineEdge>,
    /// `{i, j}` with rays `−eᵢ, −eⱼ` at the first vertex (n = 3 only).
    combinatorial_type: Option<(usize, usize)>,
}

fn offset(a: &[Rational], d: &IntVector, t: &Rational) -> RationalVector {
    a.iter().zip(d.entries()).map(|(x, e)| x + t * Rational::from_integer(e.clone())).collect()
}

impl TropicalLine {
    /// The star with vertex `v` and rays `(1,1)`, `(−1,0)`, `(0,−1)`.
    pub fn planar(vertex: RationalVector) -> Result<Self, DegreeError> {
        if vertex.len() != 2 {
            return Err(DegreeError::DimensionMismatch { expected: 2, found: vertex.len() });
        }
        let ray = |d: &[i64]| LineEdge { start: 0, end: None, direction: IntVector::from_i64s(d), length: None };
        Self::from_parts(2, vec![vertex], vec![ray(&[1, 1]), ray(&[-1, 0]), ray(&[0, -1])], None)
    }

    /// The tree with rays `−eᵢ, −eⱼ` at `a`, bounded edge `a → a + t(eᵢ + eⱼ)`,
    /// and rays `−e_k`, `(1,1,1)` at the far end.
    pub fn spatial(a: RationalVector, pair: (usize, usize), t: Rational) -> Result<Self, DegreeError> {
        if a.len() != 3 {
            return Err(DegreeError::DimensionMismatch { expected: 3, found: a.len() });
        }
        let (i, j) = (pair.0.min(pair.1), pair.0.max(pair.1));
        if i == j || j > 2 {
            return Err(DegreeError::InvalidLine(format!("pair ({}, {}) is not two distinct axes", pair.0, pair.1)));
        }
        let k = 3 - i - j;
        let unit = |m: usize, s: i64| {
            let mut e = vec![0i64; 3];
            e[m] = s;
            IntVector::from_i64s(&e)
        };
        let bounded = &unit(i, 1) + &unit(j, 1);
        let b = offset(&a, &bounded, &t);
        let ray = |start: usize, direction: IntVector| LineEdge { start, end: None, direction, length: None };
        let edges = vec![
            ray(0, unit(i, -1)),
            ray(0, unit(j, -1)),
            LineEdge { start: 0, end: Some(1), direction: bounded, length: Some(t) },
            ray(1, unit(k, -1)),
            ray(1, IntVector::from_i64s(&[1, 1, 1])),
        ];
        Self::from_parts(3, vec![a, b], edges, Some((i, j)))
    }

    /// Validates the tree structure: the rays are `−e₁,…,−eₙ, 𝟙`, edge
    /// directions have entries in `{−1, 0, 1}`, bounded edges join their
    /// endpoints with positive length, and every vertex is balanced.
    pub fn from_parts(
        n: usize,
        vertices: Vec<RationalVector>,
        edges: Vec<LineEdge>,
        combinatorial_type: Option<(usize, usize)>,
    ) -> Result<Self, DegreeError> {
        if n != 2 && n != 3 {
            return Err(DegreeError::UnsupportedDimension(n));
        }
        let bad = |msg: &str| Err(DegreeError::InvalidLine(msg.to_string()));
        if vertices.len() != n - 1 || vertices.iter().any(|v| v.len() != n) {
            return bad("wrong number or size of vertices");
        }
        let mut rays: Vec<IntVector> = edges.iter().filter(|e| e.end.is_none()).map(|e| e.direction.clone()).collect();
        rays.sort();
        let mut expected: Vec<IntVector> = (0..n).map(|i| -&IntVector::unit(n, i)).collect();
        expected.push(IntVector::new(vec![BigInt::one(); n]));
        expected.sort();
        if rays != expected {
            return bad("rays must be -e_1, ..., -e_n and (1, ..., 1)");
        }
        if edges.len() != rays.len() + vertices.len() - 1 {
            return bad("not a tree");
        }
        for e in &edges {
            if e.direction.dim() != n
                || e.direction.entries().iter().any(|x| x.abs() > BigInt::one())
                || e.direction.is_zero()
            {
                return bad("edge directions need entries in {-1, 0, 1}");
            }
            if e.start >= vertices.len() {
                return bad("edge starts at a missing vertex");
            }
            if let Some(end) = e.end {
                let Some(t) = e.length.as_ref().filter(|t| t.is_positive()) else {
                    return bad("bounded edges need a positive length");
                };
                if end >= vertices.len() || offset(&vertices[e.start], &e.direction, t) != vertices[end] {
                    return bad("bounded edge does not join its endpoints");
                }
            }
        }
        for v in 0..vertices.len() {
            let mut sum = IntVector::zeros(n);
            for e in &edges {
                if e.start == v {
                    sum = &sum + &e.direction;
                }
                if e.end == Some(v) {
                    sum = &sum - &e.direction;
                }
            }
            if !sum.is_zero() {
                return bad("unbalanced vertex");
            }
        }
        Ok(TropicalLine { ambient_dim: n, vertices, edges, combinatorial_type })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn edges(&self) -> &[LineEdge] {
        &self.edges
    }

    pub fn combinatorial_type(&self) -> Option<(usize, usize)> {
        self.combinatorial_type
    }

    pub fn rays(&self) -> impl Iterator<Item = &LineEdge> {
        self.edges.iter().filter(|e| e.end.is_none())
    }
}

/// Line vertices are drawn from `[−half_width, half_width]ⁿ` with
/// denominators up to `max_denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingBox {
    pub half_width: i64,
    pub max_denominator: i64,
}

impl Default for SamplingBox {
    fn default() -> Self {
        SamplingBox { half_width: 20, max_denominator: 16 }
    }
}

impl SamplingBox {
    fn rational<R: Rng>(&self, rng: &mut R) -> Rational {
        let den = rng.gen_range(1..=self.max_denominator);
        let num = rng.gen_range(-self.half_width * den..=self.half_width * den);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn positive<R: Rng>(&self, rng: &mut R) -> Rational {
        let den = rng.gen_range(1..=self.max_denominator);
        let num = rng.gen_range(1..=self.half_width * den);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
}

pub fn sample_tropical_line<R: Rng>(
    n: usize,
    rng: &mut R,
    sampling: &SamplingBox,
) -> Result<TropicalLine, DegreeError> {
    match n {
        2 => TropicalLine::planar((0..2).map(|_| sampling.rational(rng)).collect()),
        3 => {
            let a: RationalVector = (0..3).map(|_| sampling.rational(rng)).collect();
            let pair = [(0, 1), (0, 2), (1, 2)][rng.gen_range(0..3)];
            let t = sampling.positive(rng);
            TropicalLine::spatial(a, pair, t)
        }
        _ => Err(DegreeError::UnsupportedDimension(n)),
    }
}

pub fn random_tropical_line(n: usize, seed: u64, sampling: &SamplingBox) -> Result<TropicalLine, DegreeError> {
    sample_tropical_line(n, &mut ChaCha8Rng::seed_from_u64(seed), sampling)
}

/// Independent seed for attempt `attempt` of sample `index`, so results do
/// not depend on scheduling.
pub fn derive_seed(seed: u64, index: u64, attempt: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(mix(mix(seed) ^ index) ^ attempt)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LineHit {
    pub point: RationalVector,
    pub transverse: bool,
}

/// Tied terms span at most a segment.
fn collinear(points: &[IntVector]) -> bool {
    let rows: Vec<IntVector> = points[1..].iter().map(|p| p - &points[0]).collect();
    rows.is_empty() || rank(&IntegerMatrix::from_rows(&rows)) <= 1
}

pub fn line_hypersurface_intersections(
    line: &TropicalLine,
    h: &HypersurfaceComplex,
) -> Result<Vec<LineHit>, DegreeError> {
    let n = line.ambient_dim;
    if h.ambient_dim != n {
        return Err(DegreeError::DimensionMismatch { expected: n, found: h.ambient_dim });
    }
    let p = &h.polynomial;
    let mut hits: Vec<LineHit> = Vec::new();
    for v in &line.vertices {
        if evaluate(p, v)?.on_hypersurface() {
            hits.push(LineHit { point: v.clone(), transverse: false });
        }
    }
    for edge in &line.edges {
        let a = &line.vertices[edge.start];
        let d = &edge.direction;
        // term α restricted to the edge: intercept + t·slope
        let lines: Vec<(Rational, BigInt)> =
            p.terms().iter().map(|t| (pair(a, &t.exponent) + &t.coefficient, t.exponent.dot(d))).collect();
        let inside = |t: &Rational| t.is_positive() && edge.length.as_ref().is_none_or(|len| t < len);
        let mut breaks: Vec<Rational> = Vec::new();
        for (i, (b1, s1)) in lines.iter().enumerate() {
            for (b2, s2) in &lines[i + 1..] {
                if s1 != s2 {
                    let t = (b2 - b1) / Rational::from_integer(s1 - s2);
                    if inside(&t) {
                        breaks.push(t);
                    }
                }
            }
        }
        breaks.sort();
        breaks.dedup();
        for t in &breaks {
            let x = offset(a, d, t);
            let e = evaluate(p, &x)?;
            if e.on_hypersurface() {
                let slopes_differ = e.argmax.iter().any(|alpha| alpha.dot(d) != e.argmax[0].dot(d));
                hits.push(LineHit { point: x, transverse: slopes_differ && collinear(&e.argmax) });
            }
        }
        // A stretch of the edge inside the hypersurface shows up between breakpoints.
        let mut stops: Vec<Rational> = vec![Rational::zero()];
        stops.extend(breaks.iter().cloned());
        let last = stops.last().expect("nonempty").clone();
        stops.push(edge.length.clone().unwrap_or(last + Rational::from_integer(BigInt::from(2))));
        for w in stops.windows(2) {
            let mid = (&w[0] + &w[1]) / Rational::from_integer(BigInt::from(2));
            let x = offset(a, d, &mid);
            if evaluate(p, &x)?.on_hypersurface() {
                hits.push(LineHit { point: x, transverse: false });
            }
        }
    }
    hits.sort();
    hits.dedup_by(|b, a| {
        if a.point == b.point {
            a.transverse &= b.transverse;
            true
        } else {
            false
        }
    });
    Ok(hits)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub support: Vec<IntVector>,
    /// `diam(M)`, the ℓ¹-diameter of the support.
    pub diameter_bound: BigInt,
    /// `|M| − 1`.
    pub weak_bound: usize,
    pub max_transverse_count: usize,
    /// Transverse lines used, one per requested sample.
    pub samples: usize,
    /// Sampled lines rejected for a non-transverse contact.
    pub discarded: usize,
    /// How many lines met the hypersurface in `k` points, indexed by `k`.
    pub histogram: Vec<usize>,
    /// `n!·MV(Δ, Σ, …, Σ)`, the stable intersection number of `H` with a
    /// generic tropical line. Every transverse count is at most this.
    pub line_bound: Rational,
    pub bound_satisfied: bool,
    pub weak_bound_satisfied: bool,
    pub line_bound_satisfied: bool,
}

/// Attempts per sample before giving up on finding a transverse line.
pub const MAX_ATTEMPTS: usize = 256;

/// Transverse intersection counts of `samples` random lines with `h`.
pub fn empirical_degree(
    h: &HypersurfaceComplex,
    samples: usize,
    seed: u64,
    sampling: &SamplingBox,
) -> Result<DegreeReport, DegreeError> {
    let n = h.ambient_dim;
    if n != 2 && n != 3 {
        return Err(DegreeError::UnsupportedDimension(n));
    }
    if samples == 0 {
        return Err(DegreeError::ZeroSamples);
    }
    let outcomes: Vec<(usize, usize)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            for attempt in 0..MAX_ATTEMPTS {
                let line = random_tropical_line(n, derive_seed(seed, i as u64, attempt as u64), sampling)?;
                let hits = line_hypersurface_intersections(&line, h)?;
                if hits.iter().all(|x| x.transverse) {
                    return Ok((hits.len(), attempt));
                }
            }
            Err(DegreeError::SamplingExhausted { sample: i, attempts: MAX_ATTEMPTS })
        })
        .collect::<Result<_, DegreeError>>()?;
    let support = h.polynomial.support();
    let diameter_bound = l1_diameter(&support)?;
    let weak_bound = support.len() - 1;
    let mut tuple = vec![h.polynomial.newton_polytope()?];
    tuple.extend(std::iter::repeat_n(LatticePolytope::simplex(n, 1), n - 1));
    let line_bound = mixed_volume_ie(&tuple)?.normalized().clone();
    let max_transverse_count = outcomes.iter().map(|o| o.0).max().unwrap_or(0);
    let mut histogram = vec![0; max_transverse_count + 1];
    outcomes.iter().for_each(|o| histogram[o.0] += 1);
    Ok(DegreeReport {
        bound_satisfied: BigInt::from(max_transverse_count) <= diameter_bound,
        weak_bound_satisfied: max_transverse_count <= weak_bound,
        line_bound_satisfied: Rational::from_integer(BigInt::from(max_transverse_count)) <= line_bound,
        line_bound,
        diameter_bound,
        weak_bound,
        max_transverse_count,
        samples,
        discarded: outcomes.iter().map(|o| o.1).sum(),
        histogram,
        support,
    })
}

/// Whether every coordinate varies monotonically along the polygonal path.
pub fn path_is_monotone(path: &[RationalVector]) -> bool {
    let n = path.first().map_or(0, Vec::len);
    (0..n).all(|k| {
        let steps: Vec<Rational> = path.windows(2).map(|w| &w[1][k] - &w[0][k]).collect();
        !(steps.iter().any(Signed::is_positive) && steps.iter().any(Signed::is_negative))
    })
}

/// Checks that the tree path between any two leaves (rays cut off at a
/// finite distance) is coordinatewise monotone.
pub fn geodesic_monotonicity_check(line: &TropicalLine) -> bool {
    let reach = Rational::from_integer(BigInt::from(1000));
    let leaves: Vec<(usize, RationalVector)> =
        line.rays().map(|r| (r.start, offset(&line.vertices[r.start], &r.direction, &reach))).collect();
    for (i, (va, la)) in leaves.iter().enumerate() {
        for (vb, lb) in &leaves[i + 1..] {
            let mut path = vec![la.clone(), line.vertices[*va].clone()];
            if va != vb {
                path.push(line.vertices[*vb].clone());
            }
            path.push(lb.clone());
            if !path_is_monotone(&path) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::{hypersurface, TropicalPolynomial};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn tline() -> HypersurfaceComplex {
        hypersurface(&TropicalPolynomial::from_integers(&[(&[1, 0], 0), (&[0, 1], 0), (&[0, 0], 0)]).unwrap()).unwrap()
    }

    #[test]
    fn random_lines_have_the_forced_structure() {
        let b = SamplingBox::default();
        let l = random_tropical_line(2, 7, &b).unwrap();
        assert_eq!(l.vertices().len(), 1);
        let mut dirs: Vec<IntVector> = l.rays().map(|r| r.direction.clone()).collect();
        dirs.sort();
        assert_eq!(
            dirs,
            vec![IntVector::from_i64s(&[-1, 0]), IntVector::from_i64s(&[0, -1]), IntVector::from_i64s(&[1, 1])]
        );

        let mut types = std::collections::BTreeSet::new();
        for seed in 0..40 {
            let l = random_tropical_line(3, seed, &b).unwrap();
            assert_eq!(l.vertices().len(), 2);
            assert_eq!(l.rays().count(), 4);
            let bounded = l.edges().iter().find(|e| e.end.is_some()).unwrap();
            assert_eq!(bounded.direction.entries().iter().filter(|x| x.is_one()).count(), 2);
            types.insert(l.combinatorial_type().unwrap());
        }
        assert_eq!(types.len(), 3);

        assert_eq!(random_tropical_line(3, 11, &b).unwrap(), random_tropical_line(3, 11, &b).unwrap());
        assert_eq!(random_tropical_line(4, 11, &b), Err(DegreeError::UnsupportedDimension(4)));
    }

    #[test]
    fn corrupted_trees_are_rejected() {
        let a = vec![q(0, 1); 3];
        let good = TropicalLine::spatial(a.clone(), (0, 1), q(1, 1)).unwrap();
        let mut edges = good.edges().to_vec();
        // Bounded edge turned into (1, −1, 0): endpoints no longer match and balancing fails.
        edges[2].direction = IntVector::from_i64s(&[1, -1, 0]);
        assert!(matches!(
            TropicalLine::from_parts(3, good.vertices().to_vec(), edges, None),
            Err(DegreeError::InvalidLine(_))
        ));
        let mut edges = good.edges().to_vec();
        edges[4].direction = IntVector::from_i64s(&[2, 1, 1]);
        assert!(TropicalLine::from_parts(3, good.vertices().to_vec(), edges, None).is_err());
        assert!(TropicalLine::spatial(a, (1, 1), q(1, 1)).is_err());
    }

    #[test]
    fn generic_line_meets_a_line_once() {
        let l = TropicalLine::planar(vec![q(1, 3), q(5, 2)]).unwrap();
        let hits = line_hypersurface_intersections(&l, &tline()).unwrap();
        // Oracle: the downward ray x = 1/3 crosses the diagonal ray of H at (1/3, 1/3).
        assert_eq!(hits, vec![LineHit { point: vec![q(1, 3), q(1, 3)], transverse: true }]);
    }

    #[test]
    fn vertex_on_the_hypersurface_is_flagged() {
        let l = TropicalLine::planar(vec![q(2, 1), q(2, 1)]).unwrap();
        let hits = line_hypersurface_intersections(&l, &tline()).unwrap();
        assert!(hits.iter().any(|h| !h.transverse));

        let l = TropicalLine::planar(vec![q(3, 1), q(0, 1)]).unwrap();
        let hits = line_hypersurface_intersections(&l, &tline()).unwrap();
        assert!(hits.iter().any(|h| !h.transverse));
    }

    #[test]
    fn degree_of_a_tropical_line() {
        let r = empirical_degree(&tline(), 200, 3, &SamplingBox::default()).unwrap();
        assert_eq!(r.diameter_bound, BigInt::from(2));
        assert_eq!(r.max_transverse_count, 1);
        assert!(r.bound_satisfied && r.weak_bound_satisfied && r.line_bound_satisfied);
        assert_eq!(r.line_bound, q(1, 1));
        assert_eq!(r, empirical_degree(&tline(), 200, 3, &SamplingBox::default()).unwrap());
    }

    #[test]
    fn singleton_support_has_degree_zero() {
        let h = hypersurface(&TropicalPolynomial::from_integers(&[(&[2, 1], 4)]).unwrap()).unwrap();
        let r = empirical_degree(&h, 20, 1, &SamplingBox::default()).unwrap();
        assert_eq!(r.diameter_bound, BigInt::from(0));
        assert_eq!(r.max_transverse_count, 0);
        assert!(h.facets.is_empty());
    }

    #[test]
    fn unit_square_attains_two() {
        let p = TropicalPolynomial::new(vec![
            (IntVector::from_i64s(&[0, 0]), q(0, 1)),
            (IntVector::from_i64s(&[1, 0]), q(1, 3)),
            (IntVector::from_i64s(&[0, 1]), q(-1, 5)),
            (IntVector::from_i64s(&[1, 1]), q(2, 7)),
        ])
        .unwrap();
        let r =
            empirical_degree(&hypersurface(&p).unwrap(), 400, 9, &SamplingBox { half_width: 3, max_denominator: 16 })
                .unwrap();
        assert_eq!(r.max_transverse_count, 2);
        assert_eq!(r.line_bound, q(2, 1));
        assert!(r.bound_satisfied);
    }

    #[test]
    fn space_lines_against_a_plane() {
        let p =
            TropicalPolynomial::from_integers(&[(&[0, 0, 0], 0), (&[1, 0, 0], 0), (&[0, 1, 0], 0), (&[0, 0, 1], 0)])
                .unwrap();
        let r = empirical_degree(&hypersurface(&p).unwrap(), 100, 5, &SamplingBox::default()).unwrap();
        assert_eq!(r.max_transverse_count, 1);
        assert_eq!(r.line_bound, q(1, 1));
    }

    #[test]
    fn monotonicity() {
        for seed in 0..10 {
            assert!(geodesic_monotonicity_check(&random_tropical_line(2, seed, &SamplingBox::default()).unwrap()));
            assert!(geodesic_monotonicity_check(&random_tropical_line(3, seed, &SamplingBox::default()).unwrap()));
        }
        let zigzag = vec![vec![q(0, 1), q(0, 1)], vec![q(1, 1), q(1, 1)], vec![q(2, 1), q(0, 1)]];
        assert!(!path_is_monotone(&zigzag));
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, 0, 0), derive_seed(1, 1, 0));
        assert_ne!(derive_seed(1, 0, 0), derive_seed(1, 0, 1));
        assert_eq!(derive_seed(5, 3, 2), derive_seed(5, 3, 2));
    }
}
