//! Finite-dimensional Lie algebras given by exact structure constants.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::Error;
use crate::linalg::{to_sparse, Matrix, SparseEchelon};
use crate::scalar::{is_zero_vector, unit_vector, zero_vector, Scalar, Vector};

/// Sparse vector as `(index, coefficient)` pairs, sorted, no zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Whether construction insists on a nondegenerate Killing form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semisimplicity {
    Require,
    /// For internal intermediates such as isotropy subalgebras with a centre.
    Skip,
}

/// Real Lie algebra with basis `x_0, ..., x_{n-1}` and brackets
/// `[x_i, x_j] = sum_k c_ij^k x_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    /// Only `i < j` is stored; the full table is derived.
    brackets: BTreeMap<(usize, usize), SparseVec>,
    table: Vec<SparseVec>,
}

impl LieAlgebra {
    /// Builds an algebra from the `i < j` brackets, checking the Jacobi
    /// identity on every basis triple and, if requested, semisimplicity.
    pub fn new(
        labels: Vec<String>,
        brackets: BTreeMap<(usize, usize), SparseVec>,
        check: Semisimplicity,
    ) -> Result<Self, Error> {
        let n = labels.len();
        let mut clean = BTreeMap::new();
        for ((i, j), terms) in brackets {
            if i >= j {
                return Err(Error::BracketOrder { i, j });
            }
            if j >= n {
                return Err(Error::IndexOutOfRange(j));
            }
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, c) in terms {
                if k >= n {
                    return Err(Error::IndexOutOfRange(k));
                }
                *acc.entry(k).or_insert_with(Scalar::zero) += c;
            }
            let v: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !v.is_empty() {
                clean.insert((i, j), v);
            }
        }
        let alg = Self::assemble(labels, clean);
        alg.check_jacobi()?;
        if check == Semisimplicity::Require && alg.killing_form().determinant()?.is_zero() {
            return Err(Error::NotSemisimple);
        }
        Ok(alg)
    }

    /// Builds an algebra from a full bracket function on basis vectors, given
    /// as dense coordinate vectors.
    pub fn from_bracket_fn<F>(labels: Vec<String>, check: Semisimplicity, f: F) -> Result<Self, Error>
    where
        F: Fn(usize, usize) -> Vector,
    {
        let n = labels.len();
        let mut brackets = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                if !is_zero_vector(&v) {
                    brackets.insert((i, j), to_sparse(&v));
                }
            }
        }
        Self::new(labels, brackets, check)
    }

    fn assemble(labels: Vec<String>, brackets: BTreeMap<(usize, usize), SparseVec>) -> Self {
        let n = labels.len();
        let mut table = alloc::vec![SparseVec::new(); n * n];
        for (&(i, j), v) in &brackets {
            table[i * n + j] = v.clone();
            table[j * n + i] = v.iter().map(|(k, c)| (*k, -c)).collect();
        }
        Self {
            labels,
            brackets,
            table,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Stored structure constants, `i < j` only.
    pub fn brackets(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.brackets
    }

    /// `[x_i, x_j]` as a sparse vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.basis_bracket(i, j)
            .iter()
            .find(|(l, _)| *l == k)
            .map_or_else(Scalar::zero, |(_, c)| c.clone())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, Error> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        let mut out = zero_vector(n);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.basis_bracket(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad_{x_i}`: entry `(k, j)` is `c_ij^k`.
    pub fn ad_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (k, c) in self.basis_bracket(i, j) {
                m[(*k, j)] = c.clone();
            }
        }
        m
    }

    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for j in 0..n {
                for (k, c) in self.basis_bracket(i, j) {
                    m[(*k, j)] += a * c;
                }
            }
        }
        m
    }

    /// Killing form `B_ij = tr(ad_{x_i} ad_{x_j})`.
    pub fn killing_form(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        let mut b = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut t = Scalar::zero();
                for k in 0..n {
                    for l in 0..n {
                        let (p, q) = (&ads[i][(k, l)], &ads[j][(l, k)]);
                        if !p.is_zero() && !q.is_zero() {
                            t += p * q;
                        }
                    }
                }
                b[(i, j)] = t.clone();
                b[(j, i)] = t;
            }
        }
        b
    }

    pub fn is_semisimple(&self) -> bool {
        !self.killing_form().determinant().is_ok_and(|d| d.is_zero())
    }

    /// Negative definite Killing form: semisimple of compact type.
    pub fn is_compact(&self) -> bool {
        self.dim() > 0 && self.killing_form().is_negative_definite()
    }

    fn check_jacobi(&self) -> Result<(), Error> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = zero_vector(n);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (l, x) in self.basis_bracket(a, b) {
                            for (m, y) in self.basis_bracket(*l, c) {
                                acc[*m] += x * y;
                            }
                        }
                    }
                    if !is_zero_vector(&acc) {
                        return Err(Error::JacobiViolation { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// Block-diagonal sum: brackets across blocks vanish.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n1 = self.dim();
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("{l}.1")).collect();
        labels.extend(other.labels.iter().map(|l| format!("{l}.2")));
        let mut brackets = self.brackets.clone();
        for (&(i, j), v) in &other.brackets {
            brackets.insert((i + n1, j + n1), v.iter().map(|(k, c)| (k + n1, c.clone())).collect());
        }
        Self::assemble(labels, brackets)
    }

    /// Restricts the brackets to a subalgebra with the given basis, returning
    /// the structure constants in that basis. Fails if the span is not closed.
    pub fn subalgebra(&self, basis: &[Vector], labels: Vec<String>) -> Result<LieAlgebra, Error> {
        let coords = Coordinates::new(self.dim(), basis)?;
        let d = basis.len();
        let mut brackets = BTreeMap::new();
        for a in 0..d {
            for b in a + 1..d {
                let v = self.bracket(&basis[a], &basis[b])?;
                let c = coords
                    .solve(&v)
                    .ok_or(Error::PairInvariant("subspace is not closed under the bracket"))?;
                if !is_zero_vector(&c) {
                    brackets.insert((a, b), to_sparse(&c));
                }
            }
        }
        Ok(Self::assemble(labels, brackets))
    }

    /// Indices of basis elements that generate the algebra under brackets,
    /// chosen greedily in basis order.
    pub fn generating_subset(&self) -> Vec<usize> {
        let n = self.dim();
        let mut chosen = Vec::new();
        let mut span = SparseEchelon::new(n);
        let mut members: Vec<Vector> = Vec::new();
        for i in 0..n {
            if span.is_full() {
                break;
            }
            let e = unit_vector(n, i);
            if span.contains(&to_sparse(&e)) {
                continue;
            }
            chosen.push(i);
            // Close the span under brackets with everything already present.
            let mut queue = alloc::vec![e];
            while let Some(v) = queue.pop() {
                if !span.insert(&to_sparse(&v)) {
                    continue;
                }
                for w in members.clone() {
                    let b = self.bracket(&v, &w).expect("dims agree");
                    if !is_zero_vector(&b) {
                        queue.push(b);
                    }
                }
                members.push(v);
            }
        }
        chosen
    }
}

/// Coordinates with respect to a (possibly partial) basis of `Q^n`.
#[derive(Debug, Clone)]
pub struct Coordinates {
    dim: usize,
    basis: Vec<Vector>,
    /// Left inverse on the span of the basis.
    left_inverse: Matrix,
}

impl Coordinates {
    pub fn new(dim: usize, basis: &[Vector]) -> Result<Self, Error> {
        if basis.iter().any(|b| b.len() != dim) {
            return Err(Error::InvalidBasis("vector length differs from ambient dimension"));
        }
        let b = Matrix::from_columns(dim, basis);
        let gram = b.transpose().mul(&b)?;
        let inv = gram
            .inverse()
            .ok_or(Error::InvalidBasis("vectors are linearly dependent"))?;
        let left_inverse = inv.mul(&b.transpose())?;
        Ok(Self {
            dim,
            basis: basis.to_vec(),
            left_inverse,
        })
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Coordinates of `v` when it lies in the span, `None` otherwise.
    pub fn solve(&self, v: &[Scalar]) -> Option<Vector> {
        let c = self.left_inverse.mul_vec(v).ok()?;
        (self.combine(&c) == v).then_some(c)
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }
}

/// Linear endomorphism of a Lie algebra, as a matrix over its basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearEndo(pub Matrix);

impl LinearEndo {
    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vector, Error> {
        self.0.mul_vec(v)
    }

    pub fn compose(&self, other: &LinearEndo) -> Result<LinearEndo, Error> {
        Ok(LinearEndo(self.0.mul(&other.0)?))
    }

    pub fn is_involution(&self) -> bool {
        self.0.is_square() && self.0.mul(&self.0).is_ok_and(|m| m == Matrix::identity(self.0.rows()))
    }

    /// Checks `s([x_i, x_j]) = [s(x_i), s(x_j)]` on basis pairs.
    pub fn check_automorphism(&self, g: &LieAlgebra) -> Result<(), Error> {
        let n = g.dim();
        if self.0.rows() != n || self.0.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.0.rows(),
            });
        }
        let images: Vec<Vector> = (0..n).map(|i| self.0.column(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let mut lhs = zero_vector(n);
                for (k, c) in g.basis_bracket(i, j) {
                    for (o, x) in lhs.iter_mut().zip(&images[*k]) {
                        *o += c * x;
                    }
                }
                if lhs != g.bracket(&images[i], &images[j])? {
                    return Err(Error::NotAutomorphism { i, j });
                }
            }
        }
        Ok(())
    }
}
