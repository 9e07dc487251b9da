//! Seeded generators for test instances: rational coefficients, supports,
//! polynomials and polytopes.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::lattice::IntVector;
use crate::polytope::{convex_hull, LatticePolytope, Rational};
use crate::tropical::TropicalPolynomial;

/// Uniform rational `a/b` with `|a/b| ≤ bound` and `1 ≤ b ≤ max_den`.
pub fn rational<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    Rational::new(BigInt::from(rng.gen_range(-bound * den..=bound * den)), BigInt::from(den))
}

/// Coefficients with large denominators, generic with overwhelming probability.
pub fn generic_coefficient<R: Rng>(rng: &mut R) -> Rational {
    rational(rng, 10, 1_000_003)
}

/// Lattice points of `d·conv{0, e₁, …, eₙ}`.
pub fn simplex_support(n: usize, d: i64) -> Vec<IntVector> {
    fn go(n: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<IntVector>) {
        if cur.len() == n {
            out.push(IntVector::from_i64s(cur));
            return;
        }
        for a in 0..=left {
            cur.push(a);
            go(n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, &mut Vec::new(), &mut out);
    out
}

/// `size` distinct points of `[0, max_coord]ⁿ`.
pub fn random_support<R: Rng>(rng: &mut R, n: usize, max_coord: i64, size: usize) -> Vec<IntVector> {
    let mut grid: Vec<IntVector> = Vec::new();
    let side = (max_coord + 1) as usize;
    for code in 0..side.pow(n as u32) {
        let mut c = code;
        let p: Vec<i64> = (0..n)
            .map(|_| {
                let x = (c % side) as i64;
                c /= side;
                x
            })
            .collect();
        grid.push(IntVector::from_i64s(&p));
    }
    grid.shuffle(rng);
    grid.truncate(size.min(grid.len()));
    grid.sort();
    grid
}

/// Like [`random_support`] but with a full-dimensional convex hull.
pub fn random_full_support<R: Rng>(rng: &mut R, n: usize, max_coord: i64, size: usize) -> Vec<IntVector> {
    loop {
        let s = random_support(rng, n, max_coord, size.max(n + 1));
        if convex_hull(&s).expect("valid support").is_full_dimensional() {
            return s;
        }
    }
}

pub fn random_polynomial<R: Rng>(rng: &mut R, support: &[IntVector]) -> TropicalPolynomial {
    TropicalPolynomial::new(support.iter().map(|e| (e.clone(), generic_coefficient(rng))).collect())
        .expect("supports are nonempty with distinct points")
}

/// A tropical hyperplane `max(x₁ + c₁, …, xₙ + cₙ, c₀)` with generic coefficients.
pub fn random_hyperplane<R: Rng>(rng: &mut R, n: usize) -> TropicalPolynomial {
    random_polynomial(rng, &simplex_support(n, 1))
}

pub fn random_polytope<R: Rng>(rng: &mut R, n: usize, max_coord: i64, points: usize) -> LatticePolytope {
    let pts: Vec<IntVector> = (0..points)
        .map(|_| IntVector::from_i64s(&(0..n).map(|_| rng.gen_range(0..=max_coord)).collect::<Vec<_>>()))
        .collect();
    convex_hull(&pts).expect("valid points")
}
