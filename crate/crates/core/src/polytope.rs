//! Lattice polytopes: hulls, ℓ¹-diameters, Minkowski sums, exact volumes and
//! mixed volumes.
//!
//! Mixed volumes are reported in normalized form, `n!·MV(P₁,…,Pₙ)`, which is
//! the coefficient of `λ₁⋯λₙ` in `Vol(λ₁P₁+⋯+λₙPₙ)` and the number that
//! counts intersection points. Two independent routes compute it: the
//! inclusion–exclusion expansion over subset sums, and exact interpolation of
//! the volume polynomial on an integer grid.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::hull::Hull;
use crate::lattice::IntVector;

pub type Rational = BigRational;

/// Largest ambient dimension accepted by hull and volume computations.
pub const MAX_HULL_DIM: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("empty point set")]
    EmptyInput,
    #[error("ambient dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("normalized volume {0} is not an integer")]
    NonIntegralNormalizedVolume(Rational),
}

/// Convex hull of finitely many integer points, stored by its irredundant
/// vertex set in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    ambient_dim: usize,
    vertices: Vec<IntVector>,
    dim: usize,
}

impl LatticePolytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn point(p: IntVector) -> Self {
        LatticePolytope { ambient_dim: p.dim(), vertices: vec![p], dim: 0 }
    }

    /// `d · conv{0, e₁, …, eₙ}`.
    pub fn simplex(n: usize, d: i64) -> Self {
        let mut pts = vec![IntVector::zeros(n)];
        pts.extend((0..n).map(|i| IntVector::unit(n, i).scale(&BigInt::from(d))));
        convex_hull(&pts).expect("simplex is a valid hull input")
    }

    pub fn unit_cube(n: usize) -> Self {
        let pts: Vec<IntVector> = (0..1usize << n)
            .map(|mask| IntVector::new((0..n).map(|i| BigInt::from((mask >> i) & 1)).collect()))
            .collect();
        convex_hull(&pts).expect("cube is a valid hull input")
    }

    pub fn translate(&self, t: &IntVector) -> Self {
        LatticePolytope {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.iter().map(|v| v + t).collect(),
            dim: self.dim,
        }
    }

    /// Dilation by a nonnegative integer factor.
    pub fn dilate(&self, k: u64) -> Self {
        if k == 0 {
            return Self::point(IntVector::zeros(self.ambient_dim));
        }
        let k = BigInt::from(k);
        LatticePolytope {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.iter().map(|v| v.scale(&k)).collect(),
            dim: self.dim,
        }
    }

    /// Whether `p` lies in the polytope (boundary included).
    pub fn contains(&self, p: &IntVector) -> bool {
        let mut pts: Vec<Vec<BigInt>> = self.vertices.iter().map(|v| v.entries().to_vec()).collect();
        pts.push(p.entries().to_vec());
        let hull = Hull::new(&pts);
        hull.dim == self.dim && !hull.vertices.contains(&(pts.len() - 1)) || self.vertices.contains(p)
    }
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

fn check_uniform(points: &[IntVector]) -> Result<usize, PolytopeError> {
    let first = points.first().ok_or(PolytopeError::EmptyInput)?;
    let n = first.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != n) {
        return Err(PolytopeError::DimensionMismatch { expected: n, found: p.dim() });
    }
    Ok(n)
}

pub fn convex_hull(points: &[IntVector]) -> Result<LatticePolytope, PolytopeError> {
    let n = check_uniform(points)?;
    if n > MAX_HULL_DIM {
        return Err(PolytopeError::DimensionTooLarge { dim: n, max: MAX_HULL_DIM });
    }
    Ok(hull_unchecked(points))
}

fn hull_unchecked(points: &[IntVector]) -> LatticePolytope {
    let raw: Vec<Vec<BigInt>> = points.iter().map(|p| p.entries().to_vec()).collect();
    let hull = Hull::new(&raw);
    let mut vertices: Vec<IntVector> = hull.vertices.iter().map(|&i| points[i].clone()).collect();
    vertices.sort();
    LatticePolytope { ambient_dim: points[0].dim(), vertices, dim: hull.dim }
}

/// Maximum ℓ¹ distance between two points of the support.
pub fn l1_diameter(support: &[IntVector]) -> Result<BigInt, PolytopeError> {
    check_uniform(support)?;
    let mut best = BigInt::zero();
    for (i, a) in support.iter().enumerate() {
        for b in &support[i + 1..] {
            let d = (a - b).l1_norm();
            if d > best {
                best = d;
            }
        }
    }
    Ok(best)
}

pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope, PolytopeError> {
    if p.ambient_dim != q.ambient_dim {
        return Err(PolytopeError::DimensionMismatch { expected: p.ambient_dim, found: q.ambient_dim });
    }
    let sums: Vec<IntVector> = p.vertices.iter().flat_map(|a| q.vertices.iter().map(move |b| a + b)).collect();
    Ok(hull_unchecked(&sums))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Euclidean volume; zero for lower-dimensional polytopes.
pub fn volume(p: &LatticePolytope) -> Rational {
    Rational::new(volume_times_factorial(p), factorial(p.ambient_dim))
}

fn volume_times_factorial(p: &LatticePolytope) -> BigInt {
    if !p.is_full_dimensional() || p.ambient_dim == 0 {
        return BigInt::zero();
    }
    let raw: Vec<Vec<BigInt>> = p.vertices.iter().map(|v| v.entries().to_vec()).collect();
    Hull::new(&raw).simplex_volume_sum()
}

/// `n! · volume`, an integer for lattice polytopes.
pub fn normalized_volume(p: &LatticePolytope) -> Result<Rational, PolytopeError> {
    let v = volume(p) * Rational::from_integer(factorial(p.ambient_dim));
    if !v.is_integer() {
        return Err(PolytopeError::NonIntegralNormalizedVolume(v));
    }
    Ok(v)
}

/// A mixed volume of `dim` polytopes in ℝ^dim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedVolume {
    dim: usize,
    normalized: Rational,
}

impl MixedVolume {
    /// `n! · MV(P₁,…,Pₙ)`.
    pub fn normalized(&self) -> &Rational {
        &self.normalized
    }

    /// `MV(P₁,…,Pₙ)`, normalized so that `MV(P,…,P) = Vol(P)`.
    pub fn unnormalized(&self) -> Rational {
        &self.normalized / Rational::from_integer(factorial(self.dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

fn check_tuple(polys: &[LatticePolytope]) -> Result<usize, PolytopeError> {
    let n = polys.len();
    if n == 0 {
        return Err(PolytopeError::EmptyInput);
    }
    if let Some(p) = polys.iter().find(|p| p.ambient_dim != n) {
        return Err(PolytopeError::DimensionMismatch { expected: n, found: p.ambient_dim });
    }
    if n > MAX_HULL_DIM {
        return Err(PolytopeError::DimensionTooLarge { dim: n, max: MAX_HULL_DIM });
    }
    Ok(n)
}

fn weighted_sum(polys: &[LatticePolytope], weights: &[u64]) -> LatticePolytope {
    let n = polys[0].ambient_dim;
    polys
        .iter()
        .zip(weights)
        .filter(|(_, &w)| w > 0)
        .fold(LatticePolytope::point(IntVector::zeros(n)), |acc, (p, &w)| {
            minkowski_sum(&acc, &p.dilate(w)).expect("dimensions checked")
        })
}

/// Normalized mixed volume by inclusion–exclusion:
/// `Σ_{∅≠S⊆[n]} (−1)^{n−|S|} Vol(Σ_{i∈S} Pᵢ)`.
pub fn mixed_volume_ie(polys: &[LatticePolytope]) -> Result<MixedVolume, PolytopeError> {
    let n = check_tuple(polys)?;
    let total: BigInt = (1u32..1 << n)
        .into_par_iter()
        .map(|mask| {
            let weights: Vec<u64> = (0..n).map(|i| u64::from((mask >> i) & 1)).collect();
            let v = volume_times_factorial(&weighted_sum(polys, &weights));
            if (n - mask.count_ones() as usize).is_multiple_of(2) {
                v
            } else {
                -v
            }
        })
        .sum();
    Ok(MixedVolume { dim: n, normalized: Rational::new(total, factorial(n)) })
}

/// `[t¹] Lⱼ(t)` for the Lagrange basis on the nodes `1, …, m`.
fn linear_lagrange_coefficients(m: u64) -> Vec<Rational> {
    let nodes: Vec<Rational> = (1..=m).map(|k| Rational::from_integer(BigInt::from(k))).collect();
    nodes
        .iter()
        .enumerate()
        .map(|(j, xj)| {
            // coefficients of Π_{k≠j} (t − x_k) / (x_j − x_k), lowest degree first
            let mut poly = vec![Rational::one()];
            for (k, xk) in nodes.iter().enumerate() {
                if k == j {
                    continue;
                }
                let denom = xj - xk;
                let mut next = vec![Rational::zero(); poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d + 1] += c / &denom;
                    next[d] -= c * xk / &denom;
                }
                poly = next;
            }
            poly[1].clone()
        })
        .collect()
}

/// Normalized mixed volume as the `λ₁⋯λₙ` coefficient of `Vol(Σ λᵢPᵢ)`,
/// recovered by tensor-product interpolation on `λ ∈ {1,…,n+1}ⁿ`.
pub fn mixed_volume_interp(polys: &[LatticePolytope]) -> Result<MixedVolume, PolytopeError> {
    let n = check_tuple(polys)?;
    let m = n as u64 + 1;
    let w = linear_lagrange_coefficients(m);
    let grid: Vec<Vec<u64>> = (0..m.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let digit = code % m;
                    code /= m;
                    digit + 1
                })
                .collect()
        })
        .collect();
    let total: Rational = grid
        .into_par_iter()
        .map(|lambda| {
            let weight: Rational = lambda.iter().map(|&l| w[(l - 1) as usize].clone()).product();
            if weight.is_zero() {
                return Rational::zero();
            }
            weight * volume(&weighted_sum(polys, &lambda))
        })
        .sum();
    Ok(MixedVolume { dim: n, normalized: total })
}

/// Rationals as `p/q` (or `p` when integral).
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("denominator zero")]
    ZeroDenominator,
    #[error("invalid rational literal {0:?}")]
    Invalid(String),
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let s = s.trim();
    let invalid = || RationalParseError::Invalid(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| invalid())?;
    let den: BigInt = den.parse().map_err(|_| invalid())?;
    if den.is_zero() {
        return Err(RationalParseError::ZeroDenominator);
    }
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: &[i64]) -> IntVector {
        IntVector::from_i64s(e)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn poly(points: &[&[i64]]) -> LatticePolytope {
        convex_hull(&points.iter().map(|p| v(p)).collect::<Vec<_>>()).unwrap()
    }

    /// Shoelace area of a polygon given in cyclic order.
    fn shoelace(cycle: &[(i64, i64)]) -> Rational {
        let twice: i64 = (0..cycle.len())
            .map(|i| {
                let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                a.0 * b.1 - a.1 * b.0
            })
            .sum();
        q(twice.abs(), 2)
    }

    #[test]
    fn hull_examples() {
        let p = poly(&[&[0, 0], &[2, 0], &[0, 2], &[1, 1]]);
        assert_eq!(p.vertices(), &[v(&[0, 0]), v(&[0, 2]), v(&[2, 0])]);
        assert_eq!(p.dim(), 2);

        let single = poly(&[&[3, 5]]);
        assert_eq!(single.vertices(), &[v(&[3, 5])]);
        assert_eq!(single.dim(), 0);

        let seg = poly(&[&[0, 0], &[1, 0], &[2, 0]]);
        assert_eq!(seg.vertices(), &[v(&[0, 0]), v(&[2, 0])]);
        assert_eq!(seg.dim(), 1);
    }

    #[test]
    fn hull_errors() {
        assert_eq!(convex_hull(&[]), Err(PolytopeError::EmptyInput));
        assert_eq!(convex_hull(&[v(&[0, 0, 0, 0, 0])]), Err(PolytopeError::DimensionTooLarge { dim: 5, max: 4 }));
        assert_eq!(
            convex_hull(&[v(&[0, 0]), v(&[0, 0, 1])]),
            Err(PolytopeError::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(l1_diameter(&[v(&[0, 0])]).unwrap(), BigInt::from(0));
        assert_eq!(l1_diameter(&[v(&[0, 0]), v(&[2, 1])]).unwrap(), BigInt::from(3));
        assert_eq!(l1_diameter(&[v(&[0, 0]), v(&[3, 0]), v(&[0, 3])]).unwrap(), BigInt::from(6));
        assert_eq!(l1_diameter(&[]), Err(PolytopeError::EmptyInput));
    }

    #[test]
    fn minkowski_examples() {
        let e1 = poly(&[&[0, 0], &[1, 0]]);
        let e2 = poly(&[&[0, 0], &[0, 1]]);
        assert_eq!(minkowski_sum(&e1, &e2).unwrap(), LatticePolytope::unit_cube(2));

        let tri = LatticePolytope::simplex(2, 1);
        let shifted = minkowski_sum(&tri, &LatticePolytope::point(v(&[3, -1]))).unwrap();
        assert_eq!(shifted, tri.translate(&v(&[3, -1])));

        // Oracle: keep every pairwise sum that is not a convex combination of others.
        let pent = minkowski_sum(&tri, &LatticePolytope::unit_cube(2)).unwrap();
        assert_eq!(pent.vertices(), &[v(&[0, 0]), v(&[0, 2]), v(&[1, 2]), v(&[2, 0]), v(&[2, 1])]);

        let bad = LatticePolytope::point(v(&[0, 0, 0]));
        assert!(minkowski_sum(&tri, &bad).is_err());
    }

    #[test]
    fn volume_examples() {
        assert_eq!(volume(&LatticePolytope::unit_cube(3)), q(1, 1));
        assert_eq!(volume(&LatticePolytope::simplex(2, 1)), q(1, 2));
        let pent = poly(&[&[0, 0], &[2, 0], &[2, 1], &[1, 2], &[0, 2]]);
        let oracle = shoelace(&[(0, 0), (2, 0), (2, 1), (1, 2), (0, 2)]);
        assert_eq!(oracle, q(7, 2));
        assert_eq!(volume(&pent), oracle);
        assert_eq!(volume(&poly(&[&[0, 0], &[4, 4]])), q(0, 1));
    }

    #[test]
    fn normalized_volume_examples() {
        assert_eq!(normalized_volume(&LatticePolytope::simplex(2, 1)).unwrap(), q(1, 1));
        assert_eq!(normalized_volume(&LatticePolytope::unit_cube(2)).unwrap(), q(2, 1));
        // |det((1,1),(1,−1))| = 2 is the Euclidean area, so n!·area = 4.
        let para = poly(&[&[0, 0], &[1, 1], &[1, -1], &[2, 0]]);
        assert_eq!(shoelace(&[(0, 0), (1, -1), (2, 0), (1, 1)]), q(2, 1));
        assert_eq!(normalized_volume(&para).unwrap(), q(4, 1));
        assert_eq!(normalized_volume(&LatticePolytope::simplex(3, 2)).unwrap(), q(8, 1));
    }

    #[test]
    fn mixed_volume_examples() {
        let e1 = poly(&[&[0, 0], &[1, 0]]);
        let e2 = poly(&[&[0, 0], &[0, 1]]);
        let tri = LatticePolytope::simplex(2, 1);
        let sq = LatticePolytope::unit_cube(2);

        // Oracles by hand: Vol(2Δ) − 2Vol(Δ) = 2 − 1, and 7/2 − 1/2 − 1 for (Δ, □).
        let tri_tri = shoelace(&[(0, 0), (2, 0), (0, 2)]) - q(1, 1);
        let tri_sq = shoelace(&[(0, 0), (2, 0), (2, 1), (1, 2), (0, 2)]) - q(1, 2) - q(1, 1);
        assert_eq!(tri_tri, q(1, 1));
        assert_eq!(tri_sq, q(2, 1));

        for (pair, expected) in [([e1, e2], q(1, 1)), ([tri.clone(), tri.clone()], tri_tri), ([tri, sq], tri_sq)] {
            let ie = mixed_volume_ie(&pair).unwrap();
            let interp = mixed_volume_interp(&pair).unwrap();
            assert_eq!(ie.normalized(), &expected);
            assert_eq!(interp, ie);
        }
    }

    #[test]
    fn mixed_volume_diagonal_and_points() {
        let p = poly(&[&[0, 0, 0], &[2, 0, 0], &[0, 1, 0], &[0, 0, 3], &[1, 1, 1]]);
        let nv = normalized_volume(&p).unwrap();
        let diag = [p.clone(), p.clone(), p.clone()];
        assert_eq!(mixed_volume_interp(&diag).unwrap().normalized(), &nv);
        assert_eq!(mixed_volume_ie(&diag).unwrap().normalized(), &nv);
        assert_eq!(mixed_volume_ie(&diag).unwrap().unnormalized(), volume(&p));

        let pt = LatticePolytope::point(v(&[1, 1, 1]));
        let with_point = [p.clone(), pt, p];
        assert!(mixed_volume_interp(&with_point).unwrap().normalized().is_zero());
        assert!(mixed_volume_ie(&with_point).unwrap().normalized().is_zero());
    }

    #[test]
    fn mixed_volume_arity_errors() {
        let tri = LatticePolytope::simplex(2, 1);
        assert!(matches!(mixed_volume_ie(std::slice::from_ref(&tri)), Err(PolytopeError::DimensionMismatch { .. })));
        assert!(matches!(
            mixed_volume_interp(&[tri.clone(), tri.clone(), tri]),
            Err(PolytopeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), q(-4, 1));
        assert_eq!(parse_rational("1/0"), Err(RationalParseError::ZeroDenominator));
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&q(-6, 4)), "-3/2");
        assert_eq!(format_rational(&q(6, 3)), "2");
    }

    #[test]
    fn containment() {
        let tri = LatticePolytope::simplex(2, 2);
        assert!(tri.contains(&v(&[1, 1])));
        assert!(tri.contains(&v(&[0, 0])));
        assert!(!tri.contains(&v(&[2, 1])));
    }
}
