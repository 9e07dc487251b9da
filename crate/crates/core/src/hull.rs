//! Convex hulls of integer point sets in any (small) dimension.
//!
//! The hull is built as a placing triangulation: start from an affinely
//! independent simplex and add the remaining points one at a time, coning
//! each new point over the boundary simplices it strictly sees. Strict
//! visibility makes the construction valid for degenerate (coplanar,
//! collinear, repeated) inputs. Boundary simplices are then merged into true
//! facets by their normalized supporting hyperplanes.
//!
//! Lower-dimensional point sets are handled in an injective coordinate
//! projection of their affine hull, so all predicates stay integral.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::{bareiss_determinant, rank_of_rows};

/// Affine hull data of a point set.
#[derive(Clone, Debug)]
pub(crate) struct AffineFrame {
    pub dim: usize,
    /// `dim` coordinate indices on which the projection of the affine hull is injective.
    pub coords: Vec<usize>,
    /// `dim + 1` affinely independent point indices.
    pub basis_points: Vec<usize>,
}

pub(crate) fn affine_frame(points: &[Vec<BigInt>]) -> AffineFrame {
    if points.is_empty() {
        return AffineFrame { dim: 0, coords: Vec::new(), basis_points: Vec::new() };
    }
    let origin = &points[0];
    let mut basis_points = vec![0];
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        rows.push(p.iter().zip(origin).map(|(a, b)| a - b).collect());
        if rank_of_rows(rows.clone()) == rows.len() {
            basis_points.push(i);
        } else {
            rows.pop();
        }
    }
    let dim = rows.len();
    let ambient = origin.len();
    let mut coords = Vec::with_capacity(dim);
    for c in 0..ambient {
        if coords.len() == dim {
            break;
        }
        coords.push(c);
        let restricted: Vec<Vec<BigInt>> =
            rows.iter().map(|r| coords.iter().map(|&k| r[k].clone()).collect()).collect();
        if rank_of_rows(transpose(&restricted)) < coords.len() {
            coords.pop();
        }
    }
    AffineFrame { dim, coords, basis_points }
}

fn transpose(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    (0..cols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Outward normal form of a supporting hyperplane: `⟨normal, y⟩ ≤ offset` on the hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct HullFacet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
    /// Every input point lying on the hyperplane, vertices or not.
    pub points: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct Hull {
    pub dim: usize,
    pub coords: Vec<usize>,
    pub facets: Vec<HullFacet>,
    pub simplices: Vec<Vec<usize>>,
    pub vertices: Vec<usize>,
    projected: Vec<Vec<BigInt>>,
}

struct BoundaryFacet {
    verts: Vec<usize>,
    normal: Vec<BigInt>,
    offset: BigInt,
}

/// Normal of the hyperplane through `d` points of ℤ^d (generalized cross product).
fn hyperplane(points: &[&Vec<BigInt>]) -> (Vec<BigInt>, BigInt) {
    let d = points[0].len();
    let diffs: Vec<Vec<BigInt>> =
        points[1..].iter().map(|p| p.iter().zip(points[0]).map(|(a, b)| a - b).collect()).collect();
    let normal: Vec<BigInt> = (0..d)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = diffs
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, e)| e.clone()).collect())
                .collect();
            let m = bareiss_determinant(minor);
            if j % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect();
    let offset = dot(&normal, points[0]);
    (normal, offset)
}

fn oriented_facet(verts: Vec<usize>, projected: &[Vec<BigInt>], reference: usize) -> BoundaryFacet {
    let pts: Vec<&Vec<BigInt>> = verts.iter().map(|&i| &projected[i]).collect();
    let (mut normal, mut offset) = hyperplane(&pts);
    if dot(&normal, &projected[reference]) > offset {
        normal.iter_mut().for_each(|e| *e = -&*e);
        offset = -offset;
    }
    debug_assert!(dot(&normal, &projected[reference]) < offset);
    BoundaryFacet { verts, normal, offset }
}

impl Hull {
    pub fn new(points: &[Vec<BigInt>]) -> Hull {
        assert!(!points.is_empty(), "hull of an empty point set");
        let frame = affine_frame(points);
        let d = frame.dim;
        let projected: Vec<Vec<BigInt>> =
            points.iter().map(|p| frame.coords.iter().map(|&k| p[k].clone()).collect()).collect();

        if d == 0 {
            return Hull {
                dim: 0,
                coords: frame.coords,
                facets: Vec::new(),
                simplices: vec![vec![0]],
                vertices: vec![0],
                projected,
            };
        }

        let simplex = frame.basis_points.clone();
        let mut simplices = vec![simplex.clone()];
        let mut boundary: Vec<BoundaryFacet> = (0..=d)
            .map(|skip| {
                let mut verts: Vec<usize> =
                    simplex.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &i)| i).collect();
                verts.sort_unstable();
                oriented_facet(verts, &projected, simplex[skip])
            })
            .collect();

        let in_simplex: BTreeSet<usize> = simplex.iter().copied().collect();
        for p in (0..points.len()).filter(|i| !in_simplex.contains(i)) {
            let visible: Vec<usize> =
                (0..boundary.len()).filter(|&f| dot(&boundary[f].normal, &projected[p]) > boundary[f].offset).collect();
            if visible.is_empty() {
                continue;
            }
            let mut ridges: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
            for &f in &visible {
                let verts = &boundary[f].verts;
                for k in 0..verts.len() {
                    let ridge: Vec<usize> =
                        verts.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
                    ridges.entry(ridge).and_modify(|e| e.0 += 1).or_insert((1, verts[k]));
                }
                let mut s = verts.clone();
                s.push(p);
                simplices.push(s);
            }
            let visible_set: BTreeSet<usize> = visible.into_iter().collect();
            let mut next: Vec<BoundaryFacet> =
                boundary.into_iter().enumerate().filter(|(i, _)| !visible_set.contains(i)).map(|(_, f)| f).collect();
            let mut horizon: Vec<(Vec<usize>, usize)> =
                ridges.into_iter().filter(|(_, (c, _))| *c == 1).map(|(r, (_, opp))| (r, opp)).collect();
            horizon.sort();
            for (ridge, opposite) in horizon {
                let mut verts = ridge;
                verts.push(p);
                verts.sort_unstable();
                next.push(oriented_facet(verts, &projected, opposite));
            }
            boundary = next;
        }

        // Merge coplanar boundary simplices into facets.
        let mut planes: BTreeMap<(Vec<BigInt>, BigInt), ()> = BTreeMap::new();
        for f in &boundary {
            let g = f.normal.iter().fold(BigInt::zero(), |acc, e| acc.gcd(e));
            let normal: Vec<BigInt> = f.normal.iter().map(|e| e / &g).collect();
            planes.insert((normal, &f.offset / &g), ());
        }
        let facets: Vec<HullFacet> = planes
            .into_keys()
            .map(|(normal, offset)| {
                let on: Vec<usize> = (0..points.len()).filter(|&i| dot(&normal, &projected[i]) == offset).collect();
                HullFacet { normal, offset, points: on }
            })
            .collect();

        let mut seen: BTreeSet<&Vec<BigInt>> = BTreeSet::new();
        let mut vertices = Vec::new();
        for i in 0..points.len() {
            if !seen.insert(&points[i]) {
                continue;
            }
            let normals: Vec<Vec<BigInt>> =
                facets.iter().filter(|f| f.points.contains(&i)).map(|f| f.normal.clone()).collect();
            if rank_of_rows(normals) == d {
                vertices.push(i);
            }
        }

        Hull { dim: d, coords: frame.coords, facets, simplices, vertices, projected }
    }

    /// Sum over the triangulation of `|det|`, i.e. `d!` times the volume in the
    /// projected coordinates.
    pub fn simplex_volume_sum(&self) -> BigInt {
        if self.dim == 0 {
            return BigInt::zero();
        }
        self.simplices
            .iter()
            .map(|s| {
                let base = &self.projected[s[0]];
                let rows: Vec<Vec<BigInt>> =
                    s[1..].iter().map(|&i| self.projected[i].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
                bareiss_determinant(rows).abs()
            })
            .sum()
    }

    /// Pairs of vertices spanning an edge of the polytope.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, &u) in self.vertices.iter().enumerate() {
            for &v in &self.vertices[a + 1..] {
                let normals: Vec<Vec<BigInt>> = self
                    .facets
                    .iter()
                    .filter(|f| f.points.contains(&u) && f.points.contains(&v))
                    .map(|f| f.normal.clone())
                    .collect();
                if rank_of_rows(normals) + 1 == self.dim {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Lifts a projected-coordinate covector back to the ambient space
    /// (zero on the dropped coordinates).
    pub fn embed(&self, covector: &[BigInt], ambient: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); ambient];
        for (k, &c) in self.coords.iter().enumerate() {
            out[c] = covector[k].clone();
        }
        out
    }
}

/// Positive lcm of the given integers (1 for an empty list).
pub(crate) fn lcm_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v))
}
