//! Max-plus tropical polynomials and their hypersurfaces.
//!
//! `p(x) = max_α (⟨x,α⟩ + c_α)`. The regular subdivision of the Newton
//! polytope is read off the upper hull of the lifted points `(α, c_α)`, and
//! the hypersurface is built as its dual complex: a maximal cell `S` is dual
//! to the point where all of `S` ties, an edge `[u,v]` to a facet with normal
//! `v − u`, and so on. Every cell of the hypersurface is stored by a
//! V-representation (vertices, rays, lineality), which is exact and needs no
//! facet enumeration on the primal side.
//!
//! Degenerate liftings are not refined: cells are maximal domains of
//! linearity, so coplanar lifted points produce coarse cells.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::hull::{affine_frame, lcm_all, Hull};
use crate::lattice::{integer_kernel, primitive, IntVector, IntegerMatrix};
use crate::polytope::{convex_hull, LatticePolytope, PolytopeError, Rational, MAX_HULL_DIM};

pub type RationalVector = Vec<Rational>;

/// Largest ambient dimension for which ridges and balancing are computed.
pub const MAX_COMPLEX_DIM: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TropicalError {
    #[error("a tropical polynomial needs at least one term")]
    EmptyPolynomial,
    #[error("exponent {0} appears more than once")]
    DuplicateExponent(IntVector),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("point is not on the hypersurface")]
    PointNotOnHypersurface,
    #[error("balancing fails at the ridge dual to the face with {0} support points")]
    Unbalanced(usize),
    #[error("link direction {0} leaves the hypersurface")]
    LinkValidation(IntVector),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub exponent: IntVector,
    pub coefficient: Rational,
}

/// `max_α (⟨x,α⟩ + c_α)` with pairwise distinct exponents, stored in
/// lexicographic exponent order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalPolynomial {
    ambient_dim: usize,
    terms: Vec<Term>,
}

impl TropicalPolynomial {
    pub fn new(terms: Vec<(IntVector, Rational)>) -> Result<Self, TropicalError> {
        let n = terms.first().ok_or(TropicalError::EmptyPolynomial)?.0.dim();
        let mut sorted: Vec<Term> = Vec::with_capacity(terms.len());
        for (exponent, coefficient) in terms {
            if exponent.dim() != n {
                return Err(TropicalError::DimensionMismatch { expected: n, found: exponent.dim() });
            }
            sorted.push(Term { exponent, coefficient });
        }
        sorted.sort_by(|a, b| a.exponent.cmp(&b.exponent));
        if let Some(w) = sorted.windows(2).find(|w| w[0].exponent == w[1].exponent) {
            return Err(TropicalError::DuplicateExponent(w[0].exponent.clone()));
        }
        Ok(TropicalPolynomial { ambient_dim: n, terms: sorted })
    }

    /// Integer coefficients given as `(exponent, coefficient)` pairs.
    pub fn from_integers(terms: &[(&[i64], i64)]) -> Result<Self, TropicalError> {
        Self::new(
            terms.iter().map(|(e, c)| (IntVector::from_i64s(e), Rational::from_integer(BigInt::from(*c)))).collect(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn support(&self) -> Vec<IntVector> {
        self.terms.iter().map(|t| t.exponent.clone()).collect()
    }

    pub fn coefficient(&self, exponent: &IntVector) -> Option<&Rational> {
        self.terms.binary_search_by(|t| t.exponent.cmp(exponent)).ok().map(|i| &self.terms[i].coefficient)
    }

    pub fn newton_polytope(&self) -> Result<LatticePolytope, PolytopeError> {
        convex_hull(&self.support())
    }

    /// `x ↦ p(x − shift)`; its hypersurface is that of `p` moved by `shift`.
    pub fn translated(&self, shift: &[Rational]) -> Result<Self, TropicalError> {
        self.check_point(shift)?;
        let terms = self
            .terms
            .iter()
            .map(|t| Term { exponent: t.exponent.clone(), coefficient: &t.coefficient - pair(shift, &t.exponent) })
            .collect();
        Ok(TropicalPolynomial { ambient_dim: self.ambient_dim, terms })
    }

    fn check_point(&self, x: &[Rational]) -> Result<(), TropicalError> {
        if x.len() != self.ambient_dim {
            return Err(TropicalError::DimensionMismatch { expected: self.ambient_dim, found: x.len() });
        }
        Ok(())
    }
}

impl fmt::Display for TropicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "max(")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "<x,{}> + {}", t.exponent, t.coefficient)?;
        }
        write!(f, ")")
    }
}

/// `⟨x, α⟩` for a rational point and an integer exponent.
pub(crate) fn pair(x: &[Rational], alpha: &IntVector) -> Rational {
    x.iter()
        .zip(alpha.entries())
        .filter(|(_, a)| !a.is_zero())
        .map(|(xi, a)| xi * Rational::from_integer(a.clone()))
        .sum()
}

/// Tropical product `p ⊙ q`: exponents add, coefficients add, and
/// coinciding exponents keep the larger coefficient.
pub fn tropical_product(p: &TropicalPolynomial, q: &TropicalPolynomial) -> Result<TropicalPolynomial, TropicalError> {
    if p.ambient_dim != q.ambient_dim {
        return Err(TropicalError::DimensionMismatch { expected: p.ambient_dim, found: q.ambient_dim });
    }
    let mut merged: BTreeMap<IntVector, Rational> = BTreeMap::new();
    for a in &p.terms {
        for b in &q.terms {
            let e = &a.exponent + &b.exponent;
            let c = &a.coefficient + &b.coefficient;
            merged.entry(e).and_modify(|old| *old = old.clone().max(c.clone())).or_insert(c);
        }
    }
    TropicalPolynomial::new(merged.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: Rational,
    /// Exponents of all terms attaining the maximum, in lexicographic order.
    pub argmax: Vec<IntVector>,
}

impl Evaluation {
    pub fn on_hypersurface(&self) -> bool {
        self.argmax.len() >= 2
    }
}

pub fn evaluate(p: &TropicalPolynomial, x: &[Rational]) -> Result<Evaluation, TropicalError> {
    p.check_point(x)?;
    let mut value: Option<Rational> = None;
    let mut argmax = Vec::new();
    for t in &p.terms {
        let v = pair(x, &t.exponent) + &t.coefficient;
        match &value {
            Some(best) if &v < best => {}
            Some(best) if &v == best => argmax.push(t.exponent.clone()),
            _ => {
                value = Some(v);
                argmax.clear();
                argmax.push(t.exponent.clone());
            }
        }
    }
    Ok(Evaluation { value: value.expect("polynomials have a term"), argmax })
}

/// A maximal cell of the regular subdivision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionCell {
    /// Every support point on the lifted face, sorted.
    pub support_points: Vec<IntVector>,
    pub dim: usize,
    /// A point `x` where exactly these terms attain the maximum.
    pub witness: RationalVector,
    pub value: Rational,
}

impl SubdivisionCell {
    pub fn contains_point(&self, alpha: &IntVector) -> bool {
        self.support_points.binary_search(alpha).is_ok()
    }

    pub fn polytope(&self) -> LatticePolytope {
        convex_hull(&self.support_points).expect("cells are nonempty and uniform")
    }
}

fn raw_points(points: &[IntVector]) -> Vec<Vec<BigInt>> {
    points.iter().map(|p| p.entries().to_vec()).collect()
}

/// Solves a square nonsingular rational system `A x = b`.
pub(crate) fn solve_rational(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &a[col][col];
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// The single cell of a lifting that is affine on the support.
fn flat_cell(p: &TropicalPolynomial, support: &[IntVector]) -> SubdivisionCell {
    let n = p.ambient_dim;
    let frame = affine_frame(&raw_points(support));
    // c_α = ⟨g, πα⟩ + h on the frame points, then x = −g makes every term equal h.
    let rows: Vec<Vec<Rational>> = frame
        .basis_points
        .iter()
        .map(|&i| {
            let mut row: Vec<Rational> =
                frame.coords.iter().map(|&c| Rational::from_integer(support[i][c].clone())).collect();
            row.push(Rational::one());
            row
        })
        .collect();
    let rhs: Vec<Rational> = frame.basis_points.iter().map(|&i| p.terms[i].coefficient.clone()).collect();
    let sol = solve_rational(rows, rhs).expect("frame points are affinely independent");
    let mut witness = vec![Rational::zero(); n];
    for (k, &c) in frame.coords.iter().enumerate() {
        witness[c] = -&sol[k];
    }
    SubdivisionCell { support_points: support.to_vec(), dim: frame.dim, witness, value: sol[frame.dim].clone() }
}

/// Maximal cells of the subdivision induced by the upper hull of `(α, c_α)`.
pub fn regular_subdivision(p: &TropicalPolynomial) -> Result<Vec<SubdivisionCell>, TropicalError> {
    let n = p.ambient_dim;
    if n > MAX_HULL_DIM {
        return Err(TropicalError::DimensionTooLarge { dim: n, max: MAX_HULL_DIM });
    }
    let support = p.support();
    let scale = lcm_all(p.terms.iter().map(|t| t.coefficient.denom()));
    let lifted: Vec<Vec<BigInt>> = p
        .terms
        .iter()
        .map(|t| {
            let mut row = t.exponent.entries().to_vec();
            row.push((&t.coefficient * Rational::from_integer(scale.clone())).to_integer());
            row
        })
        .collect();
    let hull = Hull::new(&lifted);
    let d = affine_frame(&raw_points(&support)).dim;
    if hull.dim == d {
        return Ok(vec![flat_cell(p, &support)]);
    }
    debug_assert_eq!(hull.coords.last(), Some(&n));
    let mut cells: Vec<SubdivisionCell> = hull
        .facets
        .iter()
        .filter(|f| f.normal[d].is_positive())
        .map(|f| {
            // ⟨a, πα⟩ + a_c·K·c_α ≤ b, so x = a / (a_c K) ties exactly the face.
            let denom = Rational::from_integer(&f.normal[d] * &scale);
            let mut witness = vec![Rational::zero(); n];
            for (k, &c) in hull.coords[..d].iter().enumerate() {
                witness[c] = Rational::from_integer(f.normal[k].clone()) / &denom;
            }
            SubdivisionCell {
                support_points: f.points.iter().map(|&i| support[i].clone()).collect(),
                dim: d,
                witness,
                value: Rational::from_integer(f.offset.clone()) / &denom,
            }
        })
        .collect();
    cells.sort_by(|a, b| a.support_points.cmp(&b.support_points));
    Ok(cells)
}

/// A codimension-one cell, dual to the subdivision edge `[u, v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceFacet {
    /// A point of the facet (the first of its vertices).
    pub base: RationalVector,
    /// ℤ-basis of the direction lattice `normal^⊥ ∩ ℤⁿ`.
    pub directions: Vec<IntVector>,
    /// `primitive(v − u)`.
    pub normal: IntVector,
    /// Lattice length of `[u, v]`.
    pub weight: BigInt,
    /// `(u, v)` with `u < v` lexicographically.
    pub dual_edge: (IntVector, IntVector),
    /// Indices into the complex's vertex list (one per maximal cell containing the edge).
    pub vertices: Vec<usize>,
    /// Recession rays, outer normals of the Newton polytope's facets containing the edge.
    pub rays: Vec<IntVector>,
    /// Lineality space shared by the whole hypersurface.
    pub lineality: Vec<IntVector>,
}

/// A codimension-two cell, dual to a two-dimensional face of the subdivision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceRidge {
    pub dual_face: Vec<IntVector>,
    /// Indices of the facets containing the ridge.
    pub facets: Vec<usize>,
    pub vertices: Vec<usize>,
    pub rays: Vec<IntVector>,
}

#[derive(Clone, Debug)]
pub struct HypersurfaceComplex {
    pub ambient_dim: usize,
    pub polynomial: TropicalPolynomial,
    pub subdivision: Vec<SubdivisionCell>,
    /// Witness of each maximal subdivision cell, aligned with `subdivision`.
    pub vertices: Vec<RationalVector>,
    pub facets: Vec<HypersurfaceFacet>,
    /// Computed, and balancing verified, for ambient dimension at most 3.
    pub ridges: Option<Vec<HypersurfaceRidge>>,
    pub lineality: Vec<IntVector>,
}

impl HypersurfaceComplex {
    pub fn contains(&self, x: &[Rational]) -> Result<bool, TropicalError> {
        Ok(evaluate(&self.polynomial, x)?.on_hypersurface())
    }

    /// Closed facet membership: both ends of the dual edge attain the maximum.
    pub fn facet_contains(&self, facet: usize, x: &[Rational]) -> Result<bool, TropicalError> {
        let e = evaluate(&self.polynomial, x)?;
        let (u, v) = &self.facets[facet].dual_edge;
        Ok(e.argmax.binary_search(u).is_ok() && e.argmax.binary_search(v).is_ok())
    }

    /// Indices of the closed facets through `x`.
    pub fn facets_containing(&self, x: &[Rational]) -> Result<Vec<usize>, TropicalError> {
        let e = evaluate(&self.polynomial, x)?;
        Ok((0..self.facets.len())
            .filter(|&i| {
                let (u, v) = &self.facets[i].dual_edge;
                e.argmax.binary_search(u).is_ok() && e.argmax.binary_search(v).is_ok()
            })
            .collect())
    }

    pub fn translated(&self, shift: &[Rational]) -> Result<HypersurfaceComplex, TropicalError> {
        hypersurface(&self.polynomial.translated(shift)?)
    }
}

struct NewtonData {
    facets: Vec<(IntVector, Vec<IntVector>)>,
    lineality: Vec<IntVector>,
}

impl NewtonData {
    fn new(support: &[IntVector]) -> Self {
        let n = support[0].dim();
        let hull = Hull::new(&raw_points(support));
        let facets = hull
            .facets
            .iter()
            .map(|f| {
                let normal = IntVector::new(hull.embed(&f.normal, n));
                (normal, f.points.iter().map(|&i| support[i].clone()).collect())
            })
            .collect();
        NewtonData { facets, lineality: span_complement(support) }
    }

    fn rays_containing(&self, points: &[&IntVector]) -> Vec<IntVector> {
        self.facets
            .iter()
            .filter(|(_, on)| points.iter().all(|p| on.binary_search(p).is_ok()))
            .map(|(normal, _)| normal.clone())
            .collect()
    }
}

/// ℤ-basis of the vectors orthogonal to every difference of the points.
fn span_complement(points: &[IntVector]) -> Vec<IntVector> {
    let n = points[0].dim();
    let diffs: Vec<IntVector> = points[1..].iter().map(|p| p - &points[0]).collect();
    if diffs.is_empty() {
        return (0..n).map(|i| IntVector::unit(n, i)).collect();
    }
    integer_kernel(&IntegerMatrix::from_rows(&diffs))
}

/// Edges of a polytope given by its lattice points, as ordered vertex pairs.
fn polytope_edges(points: &[IntVector]) -> Vec<(IntVector, IntVector)> {
    let hull = Hull::new(&raw_points(points));
    hull.edges()
        .into_iter()
        .map(|(a, b)| {
            let (u, v) = (points[a].clone(), points[b].clone());
            if u < v {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect()
}

/// `(g, c)` with `Σ cᵢ valuesᵢ = g = gcd(values) ≥ 0`.
fn gcd_combination(values: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs = vec![BigInt::zero(); values.len()];
    for (i, v) in values.iter().enumerate() {
        let e = g.extended_gcd(v);
        coeffs.iter_mut().take(i).for_each(|c| *c *= &e.x);
        coeffs[i] = e.y;
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        coeffs.iter_mut().for_each(|c| *c = -&*c);
    }
    (g, coeffs)
}

pub fn hypersurface(p: &TropicalPolynomial) -> Result<HypersurfaceComplex, TropicalError> {
    let n = p.ambient_dim;
    let subdivision = regular_subdivision(p)?;
    let support = p.support();
    let newton = NewtonData::new(&support);

    let mut edges: BTreeSet<(IntVector, IntVector)> = BTreeSet::new();
    for cell in subdivision.iter().filter(|c| c.dim >= 1) {
        edges.extend(polytope_edges(&cell.support_points));
    }
    let cells_containing = |pts: &[&IntVector]| -> Vec<usize> {
        (0..subdivision.len()).filter(|&i| pts.iter().all(|q| subdivision[i].contains_point(q))).collect()
    };

    let facets: Vec<HypersurfaceFacet> = edges
        .into_iter()
        .map(|(u, v)| {
            let diff = &v - &u;
            let normal = primitive(&diff).expect("edge endpoints differ");
            let vertices = cells_containing(&[&u, &v]);
            HypersurfaceFacet {
                base: subdivision[vertices[0]].witness.clone(),
                directions: integer_kernel(&IntegerMatrix::from_rows(std::slice::from_ref(&normal))),
                weight: diff.content(),
                rays: newton.rays_containing(&[&u, &v]),
                lineality: newton.lineality.clone(),
                normal,
                vertices,
                dual_edge: (u, v),
            }
        })
        .collect();

    let ridges = if n <= MAX_COMPLEX_DIM {
        let mut faces: BTreeSet<Vec<IntVector>> = BTreeSet::new();
        for cell in &subdivision {
            match cell.dim {
                2 => {
                    faces.insert(cell.support_points.clone());
                }
                3 => {
                    let h = Hull::new(&raw_points(&cell.support_points));
                    for f in &h.facets {
                        faces.insert(f.points.iter().map(|&i| cell.support_points[i].clone()).collect());
                    }
                }
                _ => {}
            }
        }
        let index: BTreeMap<&(IntVector, IntVector), usize> =
            facets.iter().enumerate().map(|(i, f)| (&f.dual_edge, i)).collect();
        let mut ridges = Vec::with_capacity(faces.len());
        for face in faces {
            let face_edges = polytope_edges(&face);
            let incident: Vec<usize> = face_edges.iter().map(|e| index[e]).collect();
            if !is_balanced(&face, &face_edges, &incident, &facets) {
                return Err(TropicalError::Unbalanced(face.len()));
            }
            let refs: Vec<&IntVector> = face.iter().collect();
            ridges.push(HypersurfaceRidge {
                vertices: cells_containing(&refs),
                rays: newton.rays_containing(&refs),
                facets: incident,
                dual_face: face,
            });
        }
        Some(ridges)
    } else {
        None
    };

    Ok(HypersurfaceComplex {
        ambient_dim: n,
        polynomial: p.clone(),
        vertices: subdivision.iter().map(|c| c.witness.clone()).collect(),
        subdivision,
        facets,
        ridges,
        lineality: newton.lineality,
    })
}

/// Outgoing primitive direction of the facet dual to `(u, v)` at the ridge
/// dual to a polygon containing the point `off` beside that edge.
pub(crate) fn outgoing_direction(facet: &HypersurfaceFacet, off: &IntVector) -> IntVector {
    let w = off - &facet.dual_edge.0;
    let values: Vec<BigInt> = facet.directions.iter().map(|b| b.dot(&w)).collect();
    let (_, coeffs) = gcd_combination(&values);
    let n = w.dim();
    let combo = facet.directions.iter().zip(&coeffs).fold(IntVector::zeros(n), |acc, (b, c)| &acc + &b.scale(c));
    -&combo
}

/// `Σ wₑ uₑ` must vanish on the span of the polygon.
fn is_balanced(
    face: &[IntVector],
    face_edges: &[(IntVector, IntVector)],
    incident: &[usize],
    facets: &[HypersurfaceFacet],
) -> bool {
    let n = face[0].dim();
    let mut sum = IntVector::zeros(n);
    for ((u, v), &fi) in face_edges.iter().zip(incident) {
        let off = face
            .iter()
            .find(|q| {
                let a = &(*q - u);
                let b = &(v - u);
                crate::lattice::rank(&IntegerMatrix::from_rows(&[a.clone(), b.clone()])) == 2
            })
            .expect("a polygon has a point off each edge line");
        let facet = &facets[fi];
        sum = &sum + &outgoing_direction(facet, off).scale(&facet.weight);
    }
    face.iter().all(|q| sum.dot(&(q - &face[0])).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkCone {
    pub rays: Vec<IntVector>,
    pub lineality: Vec<IntVector>,
    pub dual_edge: (IntVector, IntVector),
    pub weight: BigInt,
}

impl LinkCone {
    pub fn generators(&self) -> Vec<IntVector> {
        self.rays.iter().chain(&self.lineality).cloned().collect()
    }
}

/// The fan of directions `u` with `ω + εu` on the hypersurface for small `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkFan {
    pub base: RationalVector,
    pub cones: Vec<LinkCone>,
}

pub fn link_at(h: &HypersurfaceComplex, omega: &[Rational]) -> Result<LinkFan, TropicalError> {
    let p = &h.polynomial;
    let eval = evaluate(p, omega)?;
    if !eval.on_hypersurface() {
        return Err(TropicalError::PointNotOnHypersurface);
    }
    // Near ω only the tied terms matter, and they tie with equal constants, so
    // the link is the hypersurface of u ↦ max_{α∈A} ⟨u,α⟩.
    let active = &eval.argmax;
    let local = NewtonData::new(active);
    let cones: Vec<LinkCone> = polytope_edges(active)
        .into_iter()
        .map(|(u, v)| LinkCone {
            rays: local.rays_containing(&[&u, &v]),
            lineality: local.lineality.clone(),
            weight: (&v - &u).content(),
            dual_edge: (u, v),
        })
        .collect();

    let gap = p
        .terms
        .iter()
        .filter(|t| active.binary_search(&t.exponent).is_err())
        .map(|t| &eval.value - (pair(omega, &t.exponent) + &t.coefficient))
        .min();
    for cone in &cones {
        let mut probes = cone.generators();
        probes.extend(cone.lineality.iter().map(|l| -l));
        probes.push(cone.generators().iter().fold(IntVector::zeros(omega.len()), |a, g| &a + g));
        for u in probes {
            let spread: BigInt = p.terms.iter().map(|t| t.exponent.dot(&u).abs()).sum();
            let eps = match &gap {
                Some(g) => g / Rational::from_integer(BigInt::from(2) * (spread + BigInt::one())),
                None => Rational::one(),
            };
            let moved: RationalVector =
                omega.iter().zip(u.entries()).map(|(o, e)| o + &eps * Rational::from_integer(e.clone())).collect();
            if !evaluate(p, &moved)?.on_hypersurface() {
                return Err(TropicalError::LinkValidation(u));
            }
        }
    }
    Ok(LinkFan { base: omega.to_vec(), cones })
}
