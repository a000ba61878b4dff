//! Symmetric pairs `g = h + m` and their compact duals.
//!
//! The compact dual `g_U = h + i m` is realized without complex numbers: on
//! the basis `(h_basis, m_basis)` the brackets of two `m` vectors change
//! sign, all others are kept.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::lie::{Coordinates, LieAlgebra, LinearEndo, Semisimplicity};
use crate::linalg::{rank_and_kernel, to_sparse, Matrix};
use crate::rep::{Representation, SpaceTag};
use crate::scalar::{is_zero_vector, primitive_integer_vector, unit_vector, Scalar, Vector};

#[derive(Debug, Clone)]
pub struct SymmetricPair {
    algebra: LieAlgebra,
    sigma: LinearEndo,
    h_basis: Vec<Vector>,
    m_basis: Vec<Vector>,
    /// Coordinates on `h_basis ++ m_basis`.
    split: Coordinates,
    proj_h: LinearEndo,
    proj_m: LinearEndo,
    h_algebra: LieAlgebra,
    isotropy: Representation,
    h_adjoint: Representation,
    symmetric: bool,
}

impl SymmetricPair {
    /// Eigenspace decomposition of an involutive automorphism.
    pub fn cartan_decompose(g: &LieAlgebra, sigma: &LinearEndo) -> Result<Self, Error> {
        let n = g.dim();
        if sigma.matrix().rows() != n || sigma.matrix().cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: sigma.matrix().rows(),
            });
        }
        if !sigma.is_involution() {
            return Err(Error::NotInvolution);
        }
        sigma.check_automorphism(g)?;
        let id = Matrix::identity(n);
        let eigenspace = |m: Matrix| -> Vec<Vector> {
            rank_and_kernel(&m)
                .kernel
                .iter()
                .map(|v| primitive_integer_vector(v))
                .collect()
        };
        let h = eigenspace(sigma.matrix().sub(&id));
        let m = eigenspace(sigma.matrix().add(&id));
        Self::from_parts(g.clone(), sigma.clone(), h, m, true)
    }

    /// `(g + g, swap)` with `h` the diagonal `(x, x)` and `m` the
    /// antidiagonal `(x, -x)`, on the basis order of `g`.
    pub fn group_pair(g: &LieAlgebra) -> Result<Self, Error> {
        if !g.is_semisimple() {
            return Err(Error::NotSemisimple);
        }
        let n = g.dim();
        let gg = g.direct_sum(g);
        let mut swap = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            swap[(i + n, i)] = Scalar::one();
            swap[(i, i + n)] = Scalar::one();
        }
        let h = (0..n)
            .map(|i| {
                let mut v = unit_vector(2 * n, i);
                v[i + n] = Scalar::one();
                v
            })
            .collect();
        let m = (0..n)
            .map(|i| {
                let mut v = unit_vector(2 * n, i);
                v[i + n] = -Scalar::one();
                v
            })
            .collect();
        Self::from_parts(gg, LinearEndo(swap), h, m, true)
    }

    /// Reductive splitting `g = h + m` with `m` the Killing complement of a
    /// subalgebra `h`. No involution is required, so `[m, m]` may leave `h`;
    /// [`SymmetricPair::is_symmetric`] reports whether it does not.
    pub fn reductive(g: &LieAlgebra, h_basis: Vec<Vector>) -> Result<Self, Error> {
        let n = g.dim();
        let b = g.killing_form();
        let hb = Matrix::from_columns(n, &h_basis);
        let constraints = if h_basis.is_empty() {
            Matrix::zeros(0, n)
        } else {
            hb.transpose().mul(&b)?
        };
        let m_basis: Vec<Vector> = rank_and_kernel(&constraints)
            .kernel
            .iter()
            .map(|v| primitive_integer_vector(v))
            .collect();
        let split = Coordinates::new(n, &[h_basis.clone(), m_basis.clone()].concat())?;
        let k = h_basis.len();
        let diag: Vec<Scalar> = (0..n)
            .map(|i| if i < k { Scalar::one() } else { -Scalar::one() })
            .collect();
        // sigma = P diag P^{-1}
        let p = Matrix::from_columns(n, split.basis());
        let pinv = p.inverse().ok_or(Error::InvalidBasis("h and m do not span g"))?;
        let mut d = Matrix::zeros(n, n);
        for (i, x) in diag.into_iter().enumerate() {
            d[(i, i)] = x;
        }
        let sigma = LinearEndo(p.mul(&d)?.mul(&pinv)?);
        let mut pair = Self::from_parts(g.clone(), sigma, h_basis, m_basis, false)?;
        pair.symmetric = pair.m_brackets_in_h();
        Ok(pair)
    }

    /// Validates the bases and derives projections, the isotropy action and
    /// the subalgebra structure of `h`.
    fn from_parts(
        algebra: LieAlgebra,
        sigma: LinearEndo,
        h_basis: Vec<Vector>,
        m_basis: Vec<Vector>,
        require_symmetric: bool,
    ) -> Result<Self, Error> {
        let n = algebra.dim();
        if h_basis.len() + m_basis.len() != n {
            return Err(Error::InvalidBasis("dim h + dim m differs from dim g"));
        }
        let all: Vec<Vector> = h_basis.iter().chain(&m_basis).cloned().collect();
        let split = Coordinates::new(n, &all)?;
        let k = h_basis.len();
        let coords = |v: &[Scalar]| split.solve(v).expect("h + m spans g");

        let h_labels = (0..k).map(|i| format!("h{i}")).collect();
        let h_algebra = algebra
            .subalgebra(&h_basis, h_labels)
            .map_err(|_| Error::PairInvariant("[h, h] is not contained in h"))?;

        let mut isotropy = Vec::with_capacity(k);
        for u in &h_basis {
            let mut rho = Matrix::zeros(m_basis.len(), m_basis.len());
            for (c, x) in m_basis.iter().enumerate() {
                let w = coords(&algebra.bracket(u, x)?);
                if w[..k].iter().any(|a| !a.is_zero()) {
                    return Err(Error::PairInvariant("[h, m] is not contained in m"));
                }
                for (a, y) in w[k..].iter().enumerate() {
                    rho[(a, c)] = y.clone();
                }
            }
            isotropy.push(rho);
        }

        let kill = algebra.killing_form();
        let form = |x: &[Scalar], y: &[Scalar]| -> Scalar {
            let bx = kill.mul_vec(y).expect("dims");
            crate::linalg::dot(x, &bx)
        };
        for x in &h_basis {
            for y in &m_basis {
                if !form(x, y).is_zero() {
                    return Err(Error::PairInvariant("h and m are not Killing orthogonal"));
                }
            }
        }
        let gram = |basis: &[Vector]| -> Matrix {
            let mut g = Matrix::zeros(basis.len(), basis.len());
            for (i, x) in basis.iter().enumerate() {
                for (j, y) in basis.iter().enumerate() {
                    g[(i, j)] = form(x, y);
                }
            }
            g
        };
        if gram(&h_basis).determinant()?.is_zero() {
            return Err(Error::DegenerateRestriction("h"));
        }
        if gram(&m_basis).determinant()?.is_zero() {
            return Err(Error::DegenerateRestriction("m"));
        }

        let p = Matrix::from_columns(n, &all);
        let pinv = p.inverse().ok_or(Error::InvalidBasis("h and m do not span g"))?;
        let mut dh = Matrix::zeros(n, n);
        for i in 0..k {
            dh[(i, i)] = Scalar::one();
        }
        let proj_h = p.mul(&dh)?.mul(&pinv)?;
        let proj_m = Matrix::identity(n).sub(&proj_h);

        let h_adjoint = Representation::adjoint(&h_algebra, SpaceTag::H);
        let generators = h_adjoint.generators().to_vec();
        let pair = Self {
            isotropy: Representation::new(SpaceTag::M, m_basis.len(), isotropy, generators),
            h_adjoint,
            algebra,
            sigma,
            h_basis,
            m_basis,
            split,
            proj_h: LinearEndo(proj_h),
            proj_m: LinearEndo(proj_m),
            h_algebra,
            symmetric: require_symmetric,
        };
        if require_symmetric && !pair.m_brackets_in_h() {
            return Err(Error::PairInvariant("[m, m] is not contained in h"));
        }
        Ok(pair)
    }

    fn m_brackets_in_h(&self) -> bool {
        let k = self.h_dim();
        self.m_basis.iter().enumerate().all(|(i, x)| {
            self.m_basis[i + 1..].iter().all(|y| {
                let w = self.split_coordinates(&self.algebra.bracket(x, y).expect("dims"));
                w[k..].iter().all(Zero::is_zero)
            })
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn sigma(&self) -> &LinearEndo {
        &self.sigma
    }

    pub fn h_basis(&self) -> &[Vector] {
        &self.h_basis
    }

    pub fn m_basis(&self) -> &[Vector] {
        &self.m_basis
    }

    pub fn h_dim(&self) -> usize {
        self.h_basis.len()
    }

    pub fn m_dim(&self) -> usize {
        self.m_basis.len()
    }

    pub fn proj_h(&self) -> &LinearEndo {
        &self.proj_h
    }

    pub fn proj_m(&self) -> &LinearEndo {
        &self.proj_m
    }

    /// `h` with its own structure constants on `h_basis`.
    pub fn h_algebra(&self) -> &LieAlgebra {
        &self.h_algebra
    }

    /// `h` acting on `m` in `m_basis` coordinates.
    pub fn isotropy(&self) -> &Representation {
        &self.isotropy
    }

    /// `h` acting on itself in `h_basis` coordinates.
    pub fn h_adjoint(&self) -> &Representation {
        &self.h_adjoint
    }

    /// False only for reductive splittings with `[m, m]` not inside `h`.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Coordinates of a vector of `g` on `h_basis ++ m_basis`.
    pub fn split_coordinates(&self, v: &[Scalar]) -> Vector {
        self.split.solve(v).expect("h + m spans g")
    }

    /// `h` coordinates of `proj_h(v)`.
    pub fn h_part(&self, v: &[Scalar]) -> Vector {
        self.split_coordinates(v)[..self.h_dim()].to_vec()
    }

    /// `m` coordinates of `proj_m(v)`.
    pub fn m_part(&self, v: &[Scalar]) -> Vector {
        self.split_coordinates(v)[self.h_dim()..].to_vec()
    }

    pub fn h_vector(&self, coords: &[Scalar]) -> Vector {
        self.split
            .combine(&[coords, &crate::scalar::zero_vector(self.m_dim())].concat())
    }

    pub fn m_vector(&self, coords: &[Scalar]) -> Vector {
        self.split
            .combine(&[&crate::scalar::zero_vector(self.h_dim())[..], coords].concat())
    }

    /// Structure constants of `g` on the basis `h_basis ++ m_basis`, with the
    /// brackets of two `m` vectors multiplied by `m_sign`.
    fn rebased(&self, m_sign: &Scalar) -> Result<LieAlgebra, Error> {
        let basis: Vec<&Vector> = self.h_basis.iter().chain(&self.m_basis).collect();
        let k = self.h_dim();
        let mut labels: Vec<String> = (0..k).map(|i| format!("h{i}")).collect();
        labels.extend((0..self.m_dim()).map(|i| format!("m{i}")));
        let mut brackets = BTreeMap::new();
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                let mut c = self.split_coordinates(&self.algebra.bracket(basis[a], basis[b])?);
                if a >= k && b >= k {
                    for x in c.iter_mut() {
                        *x *= m_sign;
                    }
                }
                if !is_zero_vector(&c) {
                    brackets.insert((a, b), to_sparse(&c));
                }
            }
        }
        LieAlgebra::new(labels, brackets, Semisimplicity::Skip)
    }

    /// The algebra on `h_basis ++ m_basis` with `[m, m]` negated.
    pub fn sign_twist(&self) -> Result<LieAlgebra, Error> {
        self.rebased(&-Scalar::one())
    }

    /// The algebra on `h_basis ++ m_basis` unchanged.
    pub fn rebase(&self) -> Result<LieAlgebra, Error> {
        self.rebased(&Scalar::one())
    }

    /// The compact dual `h + i m`. An algebra that is already compact is its
    /// own dual (on the basis `h_basis ++ m_basis`); otherwise the sign twist
    /// is applied and must be compact.
    pub fn compact_dual(&self) -> Result<LieAlgebra, Error> {
        let dual = if self.algebra.is_compact() {
            self.rebase()?
        } else {
            self.sign_twist()?
        };
        if !dual.killing_form().is_negative_definite() {
            return Err(Error::DualNotCompact);
        }
        Ok(dual)
    }

    /// The pair `(g_U, h_U)` on standard bases: `h` spans the first
    /// `dim h` coordinates and `m` the rest.
    pub fn dual_pair(&self) -> Result<SymmetricPair, Error> {
        let dual = self.compact_dual()?;
        let n = dual.dim();
        let k = self.h_dim();
        let mut sigma = Matrix::zeros(n, n);
        for i in 0..n {
            sigma[(i, i)] = if i < k { Scalar::one() } else { -Scalar::one() };
        }
        let h = (0..k).map(|i| unit_vector(n, i)).collect();
        let m = (k..n).map(|i| unit_vector(n, i)).collect();
        let mut pair = Self::from_parts(dual, LinearEndo(sigma), h, m, false)?;
        pair.symmetric = pair.m_brackets_in_h();
        Ok(pair)
    }
}
