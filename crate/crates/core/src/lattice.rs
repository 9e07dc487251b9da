//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers: primitive
//! vectors, Bareiss determinants, Hermite and Smith normal forms, integer
//! kernels, saturations and lattice indices. Matrices are small (ambient
//! dimension rarely exceeds 8), so the algorithms favour clarity over
//! asymptotics.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("cannot primitivize the zero vector")]
    ZeroVector,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("generators have rank {rank}, expected full rank {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("span has dimension {rank}, fewer than the {requested} requested")]
    InsufficientRank { rank: usize, requested: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A vector in ℤⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|e| e * k).collect())
    }

    /// Greatest common divisor of the entries (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, e| g.gcd(e))
    }

    pub fn l1_norm(&self) -> BigInt {
        self.0.iter().map(|e| e.abs()).sum()
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;

    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl Add for &IntVector {
    type Output = IntVector;

    fn add(self, rhs: &IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;

    fn sub(self, rhs: &IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;

    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|e| -e).collect())
    }
}

impl From<Vec<BigInt>> for IntVector {
    fn from(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        IntegerMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let vectors: Vec<IntVector> = rows.iter().map(|r| IntVector::from_i64s(r)).collect();
        Self::from_rows(&vectors)
    }

    /// Matrix whose rows are the given vectors. All vectors must share a dimension.
    pub fn from_rows(rows: &[IntVector]) -> Self {
        let cols = rows.first().map_or(0, IntVector::dim);
        assert!(rows.iter().all(|r| r.dim() == cols), "ragged rows");
        let entries = rows.iter().flat_map(|r| r.entries().iter().cloned()).collect();
        Self::new(rows.len(), cols, entries)
    }

    /// Matrix whose columns are the given vectors, with `dim` rows.
    pub fn from_columns(dim: usize, columns: &[IntVector]) -> Self {
        let mut m = Self::zeros(dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.dim(), dim, "column has wrong dimension");
            for i in 0..dim {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).0).collect()
    }
}

/// Divides out the (positive) gcd of the entries; orientation is preserved.
pub fn primitive(v: &IntVector) -> Result<IntVector, LatticeError> {
    let g = v.content();
    if g.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(IntVector(v.0.iter().map(|e| e / &g).collect()))
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &IntegerMatrix) -> Result<BigInt, LatticeError> {
    if m.rows != m.cols {
        return Err(LatticeError::NotSquare { rows: m.rows, cols: m.cols });
    }
    Ok(bareiss_determinant(m.to_rows()))
}

pub(crate) fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank over ℚ.
pub fn rank(m: &IntegerMatrix) -> usize {
    rank_of_rows(m.to_rows())
}

pub(crate) fn rank_of_rows(mut a: Vec<Vec<BigInt>>) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (f, g) = (a[r][c].clone(), a[i][c].clone());
            let pivot_row = a[r].clone();
            let row = &mut a[i];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &f - &g * y;
            }
            let content = row.iter().fold(BigInt::zero(), |acc, e| acc.gcd(e));
            if !content.is_zero() && !content.is_one() {
                row.iter_mut().for_each(|e| *e = &*e / &content);
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// `min(rows, cols)` diagonal entries, nonzero ones first, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// Product of the nonzero invariant factors.
    pub fn nonzero_product(&self) -> BigInt {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).product()
    }
}

/// Smith normal form by elementary row/column operations, always pivoting on
/// the entry of smallest absolute value.
pub fn smith_normal_form(m: &IntegerMatrix) -> SnfResult {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows, m.cols);
    let size = rows.min(cols);

    for t in 0..size {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // remaining block is zero
                return finish_snf(a, size);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let pivot_row = a[t].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and retry.
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offending {
                Some(i) => {
                    let row = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&row) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
    }
    finish_snf(a, size)
}

fn finish_snf(a: Vec<Vec<BigInt>>, size: usize) -> SnfResult {
    let invariant_factors: Vec<BigInt> = (0..size).map(|i| a[i][i].abs()).collect();
    let rank = invariant_factors.iter().filter(|d| !d.is_zero()).count();
    SnfResult { invariant_factors, rank }
}

/// Row-style Hermite normal form: echelon rows with positive pivots, entries
/// above each pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hermite_normal_form(m: &IntegerMatrix) -> IntegerMatrix {
    let rows = hnf_rows(m.to_rows(), m.cols);
    if rows.is_empty() {
        return IntegerMatrix::zeros(0, m.cols);
    }
    let vectors: Vec<IntVector> = rows.into_iter().map(IntVector).collect();
    IntegerMatrix::from_rows(&vectors)
}

fn hnf_rows(mut a: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        loop {
            let pivot = (r..a.len()).filter(|&i| !a[i][c].is_zero()).min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(p) = pivot else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            a[r].iter_mut().for_each(|e| *e = -&*e);
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if q.is_zero() {
                continue;
            }
            let pivot_row = a[r].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x -= &q * y;
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// ℤ-basis (in Hermite form) of `{x ∈ ℤⁿ : M x = 0}` where `n = M.cols()`.
pub fn integer_kernel(m: &IntegerMatrix) -> Vec<IntVector> {
    let (rows, cols) = (m.rows, m.cols);
    // Row j of the augmented matrix is [column j of M | e_j].
    let augmented: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            let mut row: Vec<BigInt> = (0..rows).map(|i| m.get(i, j).clone()).collect();
            row.extend((0..cols).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    hnf_rows(augmented, rows + cols)
        .into_iter()
        .filter(|row| row[..rows].iter().all(Zero::is_zero))
        .map(|row| IntVector(row[rows..].to_vec()))
        .collect()
}

/// ℤ-basis of `span_ℝ(directions) ∩ ℤⁿ`.
pub fn saturate(directions: &[IntVector]) -> Vec<IntVector> {
    let Some(first) = directions.first() else {
        return Vec::new();
    };
    let n = first.dim();
    let complement = integer_kernel(&IntegerMatrix::from_rows(directions));
    if complement.is_empty() {
        return (0..n).map(|i| IntVector::unit(n, i)).collect();
    }
    integer_kernel(&IntegerMatrix::from_rows(&complement))
}

/// Index `[ℤⁿ : Λ]` of the subgroup generated by `generators`.
pub fn lattice_index(generators: &[IntVector], ambient_dim: usize) -> Result<BigInt, LatticeError> {
    if let Some(g) = generators.iter().find(|g| g.dim() != ambient_dim) {
        return Err(LatticeError::DimensionMismatch { expected: ambient_dim, found: g.dim() });
    }
    let snf = smith_normal_form(&IntegerMatrix::from_columns(ambient_dim, generators));
    if snf.rank < ambient_dim {
        return Err(LatticeError::RankDeficient { rank: snf.rank, expected: ambient_dim });
    }
    Ok(snf.nonzero_product())
}

/// Greedily picks the first `r` indices (in input order) whose vectors are
/// linearly independent.
pub fn select_independent_subsystem(normals: &[IntVector], r: usize) -> Result<Vec<usize>, LatticeError> {
    let mut chosen: Vec<usize> = Vec::with_capacity(r);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, v) in normals.iter().enumerate() {
        if chosen.len() == r {
            break;
        }
        rows.push(v.entries().to_vec());
        if rank_of_rows(rows.clone()) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    if chosen.len() < r {
        return Err(LatticeError::InsufficientRank { rank: chosen.len(), requested: r });
    }
    Ok(chosen)
}
