//! Exact linear algebra over the rationals.
//!
//! Two elimination routes are provided. [`rank_and_kernel`] runs fraction-free
//! (Bareiss) elimination on a dense matrix after clearing denominators row by
//! row. [`SparseEchelon`] maintains a reduced row basis incrementally and is
//! what the large invariance systems use. Both end in the same reduced row
//! echelon form, so their kernel bases agree exactly.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::scalar::{denominator_lcm, zero_vector, Scalar, Vector};

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: zero_vector(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<Scalar, Error> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one());
        }
        let (mut a, scale) = integer_rows(self);
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(Scalar::new(sign * &a[n - 1][n - 1], scale))
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a[(i, c)].is_zero())?;
            if p != c {
                a.swap_rows(p, c);
                inv.swap_rows(p, c);
            }
            let pivot = a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] = &a[(c, j)] / &pivot;
                inv[(c, j)] = &inv[(c, j)] / &pivot;
            }
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..n {
                    let da = &f * &a[(c, j)];
                    a[(i, j)] -= da;
                    let di = &f * &inv[(c, j)];
                    inv[(i, j)] -= di;
                }
            }
        }
        Some(inv)
    }

    /// Leading principal minors `D_1, ..., D_n`.
    pub fn leading_principal_minors(&self) -> Result<Vec<Scalar>, Error> {
        (1..=self.rows)
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                self.select(&idx, &idx).determinant()
            })
            .collect()
    }

    /// Sylvester's criterion on a symmetric matrix.
    pub fn is_positive_definite(&self) -> bool {
        self.is_square()
            && *self == self.transpose()
            && self
                .leading_principal_minors()
                .is_ok_and(|m| m.iter().all(Signed::is_positive))
    }

    pub fn is_negative_definite(&self) -> bool {
        let neg = Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        };
        neg.is_positive_definite()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

/// Clears denominators row by row. Returns the integer rows and the product
/// of the row scalings (so that `det(m) = det(ints) / scale`).
fn integer_rows(m: &Matrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let lcm = denominator_lcm(row);
            let ints = row.iter().map(|x| (x * &lcm).to_integer()).collect();
            scale *= lcm;
            ints
        })
        .collect();
    (rows, scale)
}

/// Rank and a kernel basis of a dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub kernel: Vec<Vector>,
}

/// Fraction-free (Bareiss) elimination. Pivots are chosen in the leftmost
/// column that still has a nonzero entry, taking the smallest row index. The
/// kernel basis has one vector per free column `f`, with a `1` in position `f`
/// and zeros in the other free positions.
pub fn rank_and_kernel(m: &Matrix) -> RankKernel {
    let (mut a, _) = integer_rows(m);
    let (nrows, ncols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..nrows {
            if a[i][c].is_zero() {
                // Row i still has to be scaled to keep the Bareiss invariant.
                for j in c + 1..ncols {
                    if !a[i][j].is_zero() {
                        a[i][j] = &a[r][c] * &a[i][j] / &prev;
                    }
                }
                continue;
            }
            for j in c + 1..ncols {
                a[i][j] = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    let echelon: Vec<Vector> = a
        .into_iter()
        .take(r)
        .map(|row| row.into_iter().map(Scalar::from_integer).collect())
        .collect();
    let reduced = back_substitute(echelon, &pivots);
    let kernel = kernel_from_rref(&reduced, &pivots, ncols);
    RankKernel {
        rank: r,
        pivots,
        kernel,
    }
}

/// Turns an echelon form with the given pivot columns into reduced form.
fn back_substitute(mut rows: Vec<Vector>, pivots: &[usize]) -> Vec<Vector> {
    for (i, &c) in pivots.iter().enumerate().rev() {
        let p = rows[i][c].clone();
        for x in rows[i].iter_mut() {
            *x = &*x / &p;
        }
        for k in 0..i {
            let f = rows[k][c].clone();
            if f.is_zero() {
                continue;
            }
            let (upper, lower) = rows.split_at_mut(i);
            for (x, y) in upper[k].iter_mut().zip(&lower[0]) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    rows
}

fn kernel_from_rref(rows: &[Vector], pivots: &[usize], ncols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; ncols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = zero_vector(ncols);
            v[f] = Scalar::one();
            for (row, &c) in rows.iter().zip(pivots) {
                v[c] = -&row[f];
            }
            v
        })
        .collect()
}

/// Sparse row: column-sorted `(column, value)` pairs without zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Incrementally maintained row echelon basis of sparse rows.
///
/// Each stored row has pivot coefficient one. Rows are reduced against the
/// existing pivots on insertion; [`SparseEchelon::reduced_rows`] performs the
/// final back substitution.
#[derive(Debug, Clone)]
pub struct SparseEchelon {
    ncols: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseRow>,
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            pivot_row: vec![None; ncols],
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduces `row` against the current pivots, returning the remainder.
    pub fn reduce(&self, row: &[(usize, Scalar)]) -> SparseRow {
        let mut dense = zero_vector(self.ncols);
        for (c, x) in row {
            dense[*c] += x;
        }
        for c in 0..self.ncols {
            if dense[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let f = dense[c].clone();
                for (j, y) in &self.rows[r] {
                    dense[*j] -= &f * y;
                }
            }
        }
        dense.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// Inserts a row; returns `true` when it increased the rank.
    pub fn insert(&mut self, row: &[(usize, Scalar)]) -> bool {
        if self.is_full() {
            return false;
        }
        let rem = self.reduce(row);
        let Some((c, lead)) = rem.first().cloned() else {
            return false;
        };
        let normalized = rem.into_iter().map(|(j, x)| (j, x / &lead)).collect();
        self.pivot_row[c] = Some(self.rows.len());
        self.rows.push(normalized);
        true
    }

    pub fn contains(&self, row: &[(usize, Scalar)]) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Reduced row echelon form as dense rows ordered by pivot column.
    pub fn reduced_rows(&self) -> Vec<Vector> {
        let pivots = self.pivots();
        let rows: Vec<Vector> = pivots
            .iter()
            .map(|&c| {
                let mut v = zero_vector(self.ncols);
                for (j, x) in &self.rows[self.pivot_row[c].unwrap()] {
                    v[*j] = x.clone();
                }
                v
            })
            .collect();
        back_substitute(rows, &pivots)
    }

    /// Kernel basis of the inserted rows, in the same normalization as
    /// [`rank_and_kernel`].
    pub fn kernel(&self) -> Vec<Vector> {
        kernel_from_rref(&self.reduced_rows(), &self.pivots(), self.ncols)
    }
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(vectors: &[Vector]) -> usize {
    let ncols = vectors.first().map_or(0, Vec::len);
    let mut ech = SparseEchelon::new(ncols);
    for v in vectors {
        ech.insert(&to_sparse(v));
    }
    ech.rank()
}

pub fn to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

/// Solves `m x = b` for square invertible `m`.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vector> {
    m.inverse()?.mul_vec(b).ok()
}
