//! Linear actions of Lie algebras by derivations.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Which basis the indices of a form or polynomial refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceTag {
    /// The whole algebra `g`.
    G,
    /// The fixed subalgebra `h` of a pair, on its own basis.
    H,
    /// The complement `m` of a pair, on its own basis.
    M,
}

impl SpaceTag {
    pub fn name(self) -> &'static str {
        match self {
            SpaceTag::G => "g",
            SpaceTag::H => "h",
            SpaceTag::M => "m",
        }
    }
}

/// A Lie algebra acting on `Q^dim`: one matrix per basis element of the
/// acting algebra, plus a subset of indices generating it as a Lie algebra.
///
/// Entry `(a, j)` of a matrix is the coefficient of `e_a` in `u . e_j`.
#[derive(Debug, Clone)]
pub struct Representation {
    tag: SpaceTag,
    dim: usize,
    matrices: Vec<Matrix>,
    generators: Vec<usize>,
    /// Per matrix, per column `j`: nonzero `(a, entry)` pairs.
    cols: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl Representation {
    pub fn new(tag: SpaceTag, dim: usize, matrices: Vec<Matrix>, generators: Vec<usize>) -> Self {
        let cols = matrices
            .iter()
            .map(|m| {
                (0..dim)
                    .map(|j| {
                        (0..dim)
                            .filter(|&a| !m[(a, j)].is_zero())
                            .map(|a| (a, m[(a, j)].clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self {
            tag,
            dim,
            matrices,
            generators,
            cols,
        }
    }

    /// The adjoint action of `g` on itself.
    pub fn adjoint(g: &LieAlgebra, tag: SpaceTag) -> Self {
        let matrices = (0..g.dim()).map(|i| g.ad_basis(i)).collect();
        Self::new(tag, g.dim(), matrices, g.generating_subset())
    }

    pub fn tag(&self) -> SpaceTag {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn acting_dim(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn matrix(&self, u: usize) -> &Matrix {
        &self.matrices[u]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Matrix of a general element `sum_u c_u x_u` of the acting algebra.
    pub fn matrix_of(&self, coeffs: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (c, a) in coeffs.iter().zip(&self.matrices) {
            if c.is_zero() {
                continue;
            }
            for i in 0..self.dim {
                for j in 0..self.dim {
                    if !a[(i, j)].is_zero() {
                        m[(i, j)] += c * &a[(i, j)];
                    }
                }
            }
        }
        m
    }

    pub(crate) fn col_entries(&self, u: usize, j: usize) -> &[(usize, Scalar)] {
        &self.cols[u][j]
    }
}

/// Sparse view of an arbitrary matrix in the same layout as a
/// [`Representation`], for actions by elements that are not basis vectors.
pub(crate) struct SparseAction {
    pub rows: Vec<Vec<(usize, Scalar)>>,
    pub cols: Vec<Vec<(usize, Scalar)>>,
}

impl SparseAction {
    pub fn new(m: &Matrix) -> Self {
        let n = m.rows();
        let rows = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&j| !m[(a, j)].is_zero())
                    .map(|j| (j, m[(a, j)].clone()))
                    .collect()
            })
            .collect();
        let cols = (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&a| !m[(a, j)].is_zero())
                    .map(|a| (a, m[(a, j)].clone()))
                    .collect()
            })
            .collect();
        Self { rows, cols }
    }
}
