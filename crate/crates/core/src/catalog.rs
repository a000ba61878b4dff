//! Built-in matrix Lie algebras and their standard involutions.
//!
//! Every algebra is real with rational structure constants. Matrices carry
//! Gaussian-rational entries so that `su(n)` fits the same machinery.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::lie::{Coordinates, LieAlgebra, LinearEndo, Semisimplicity};
use crate::multi_index::SortedIndex;
use crate::pair::SymmetricPair;
use crate::poly::SymPoly;
use crate::rep::SpaceTag;
use crate::scalar::{int, Scalar, Vector};

/// Square matrix with entries `re + i im`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMatrix {
    n: usize,
    re: Vec<Scalar>,
    im: Vec<Scalar>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            re: vec![Scalar::zero(); n * n],
            im: vec![Scalar::zero(); n * n],
        }
    }

    /// `E_jk` scaled by `re + i im`.
    pub fn unit(n: usize, j: usize, k: usize, re: i64, im: i64) -> Self {
        let mut m = Self::zeros(n);
        m.re[j * n + k] = int(re);
        m.im[j * n + k] = int(im);
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            n: self.n,
            re: self.re.iter().zip(&o.re).map(|(a, b)| a + b).collect(),
            im: self.im.iter().zip(&o.im).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            n: self.n,
            re: self.re.iter().map(|a| a * c).collect(),
            im: self.im.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let (ar, ai) = (&self.re[i * n + k], &self.im[i * n + k]);
                if ar.is_zero() && ai.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let (br, bi) = (&o.re[k * n + j], &o.im[k * n + j]);
                    if br.is_zero() && bi.is_zero() {
                        continue;
                    }
                    out.re[i * n + j] += ar * br - ai * bi;
                    out.im[i * n + j] += ar * bi + ai * br;
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self).scale(&-Scalar::one()))
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.re[j * n + i] = self.re[i * n + j].clone();
                out.im[j * n + i] = self.im[i * n + j].clone();
            }
        }
        out
    }

    /// Trace as `(re, im)`.
    pub fn trace(&self) -> (Scalar, Scalar) {
        let n = self.n;
        (0..n).fold((Scalar::zero(), Scalar::zero()), |(r, i), k| {
            (r + &self.re[k * n + k], i + &self.im[k * n + k])
        })
    }

    /// Real coordinates: real parts then imaginary parts.
    pub fn flatten(&self) -> Vector {
        self.re.iter().chain(&self.im).cloned().collect()
    }
}

/// A Lie algebra realized by an explicit basis of matrices.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    algebra: LieAlgebra,
    matrices: Vec<CMatrix>,
    coords: Coordinates,
}

impl MatrixAlgebra {
    pub fn new(labels: Vec<String>, matrices: Vec<CMatrix>) -> Result<Self, Error> {
        let n = matrices[0].size();
        let flat: Vec<Vector> = matrices.iter().map(CMatrix::flatten).collect();
        let coords = Coordinates::new(2 * n * n, &flat)?;
        let solve = |m: &CMatrix| coords.solve(&m.flatten());
        let algebra = LieAlgebra::from_bracket_fn(labels, Semisimplicity::Require, |i, j| {
            solve(&matrices[i].commutator(&matrices[j])).expect("basis closed under commutator")
        })?;
        Ok(Self {
            algebra,
            matrices,
            coords,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn coordinates_of(&self, m: &CMatrix) -> Option<Vector> {
        self.coords.solve(&m.flatten())
    }

    /// Expresses a matrix map preserving the algebra as a [`LinearEndo`].
    pub fn endo<F: Fn(&CMatrix) -> CMatrix>(&self, f: F) -> Result<LinearEndo, Error> {
        let cols = self
            .matrices
            .iter()
            .map(|m| self.coordinates_of(&f(m)).ok_or(Error::NotAutomorphism { i: 0, j: 0 }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LinearEndo(crate::linalg::Matrix::from_columns(
            self.algebra.dim(),
            &cols,
        )))
    }

    /// `X -> -X^T`.
    pub fn negative_transpose(&self) -> Result<LinearEndo, Error> {
        self.endo(|m| m.transpose().scale(&-Scalar::one()))
    }

    /// `X -> S X S` for a diagonal sign matrix `S`.
    pub fn conjugation_by_signs(&self, signs: &[i64]) -> Result<LinearEndo, Error> {
        let n = self.matrices[0].size();
        let mut s = CMatrix::zeros(n);
        for (i, &x) in signs.iter().enumerate() {
            s.re[i * n + i] = int(x);
        }
        self.endo(|m| s.mul(m).mul(&s))
    }

    /// Symmetrized trace form `f(X_1..X_k) = (1/k!) sum_perm tr(X_p1 ... X_pk)`.
    ///
    /// For real matrix algebras this is real. For `su(n)` the value is real
    /// for even `k` and purely imaginary for odd `k`; the nonzero part is
    /// returned.
    pub fn trace_power(&self, k: usize) -> SymPoly {
        let n = self.algebra.dim();
        let mut re = Vec::new();
        let mut im = Vec::new();
        for idx in SortedIndex::all(n, k) {
            let items = idx.to_vec();
            let (mut sr, mut si) = (Scalar::zero(), Scalar::zero());
            let mut count = 0i64;
            for_each_permutation(&items, &mut |perm| {
                let mut prod = self.matrices[perm[0]].clone();
                for &p in &perm[1..] {
                    prod = prod.mul(&self.matrices[p]);
                }
                let (r, i) = prod.trace();
                sr += r;
                si += i;
                count += 1;
            });
            let c = int(count);
            re.push((idx.clone(), sr / &c));
            im.push((idx, si / &c));
        }
        let has_re = re.iter().any(|(_, c)| !c.is_zero());
        let terms = if has_re { re } else { im };
        SymPoly::from_terms(k, SpaceTag::G, n, terms)
    }
}

fn for_each_permutation(items: &[usize], f: &mut dyn FnMut(&[usize])) {
    fn rec(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(items, k + 1, f);
            items.swap(k, i);
        }
    }
    let mut v = items.to_vec();
    rec(&mut v, 0, f);
}

fn labelled(pairs: Vec<(String, CMatrix)>) -> Result<MatrixAlgebra, Error> {
    let (labels, mats) = pairs.into_iter().unzip();
    MatrixAlgebra::new(labels, mats)
}

/// `sl(n, R)`: `E_jk` above the diagonal, then below, then `E_jj - E_{j+1,j+1}`.
/// For `n = 2` the basis is `(e, f, h)`.
pub fn sl_matrix(n: usize) -> MatrixAlgebra {
    let mut v = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            v.push((format!("E{j}{k}"), CMatrix::unit(n, j, k, 1, 0)));
        }
    }
    for j in 0..n {
        for k in j + 1..n {
            v.push((format!("E{k}{j}"), CMatrix::unit(n, k, j, 1, 0)));
        }
    }
    for j in 0..n - 1 {
        v.push((
            format!("H{j}"),
            CMatrix::unit(n, j, j, 1, 0).add(&CMatrix::unit(n, j + 1, j + 1, -1, 0)),
        ));
    }
    if n == 2 {
        for ((l, _), name) in v.iter_mut().zip(["e", "f", "h"]) {
            *l = name.to_string();
        }
    }
    labelled(v).expect("sl(n) is semisimple")
}

/// `su(n)`: `E_jk - E_kj`, `i(E_jk + E_kj)`, then `i(E_jj - E_{j+1,j+1})`.
pub fn su_matrix(n: usize) -> MatrixAlgebra {
    let mut v = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            v.push((
                format!("A{j}{k}"),
                CMatrix::unit(n, j, k, 1, 0).add(&CMatrix::unit(n, k, j, -1, 0)),
            ));
            v.push((
                format!("S{j}{k}"),
                CMatrix::unit(n, j, k, 0, 1).add(&CMatrix::unit(n, k, j, 0, 1)),
            ));
        }
    }
    for j in 0..n - 1 {
        v.push((
            format!("D{j}"),
            CMatrix::unit(n, j, j, 0, 1).add(&CMatrix::unit(n, j + 1, j + 1, 0, -1)),
        ));
    }
    labelled(v).expect("su(n) is semisimple")
}

/// `so(p, q)`: matrices with `X^T eta + eta X = 0`, `eta = diag(1^p, (-1)^q)`.
pub fn so_matrix(p: usize, q: usize) -> MatrixAlgebra {
    let n = p + q;
    let mut v = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            let mixed = j < p && k >= p;
            let sign = if mixed { 1 } else { -1 };
            v.push((
                format!("L{j}{k}"),
                CMatrix::unit(n, j, k, 1, 0).add(&CMatrix::unit(n, k, j, sign, 0)),
            ));
        }
    }
    labelled(v).expect("so(p,q) is semisimple for p + q >= 3")
}

/// `sp(2n, R)`: blocks `[[A, B], [C, -A^T]]` with `B`, `C` symmetric.
pub fn sp_matrix(two_n: usize) -> MatrixAlgebra {
    let n = two_n / 2;
    let m = two_n;
    let mut v = Vec::new();
    for j in 0..n {
        for k in 0..n {
            v.push((
                format!("A{j}{k}"),
                CMatrix::unit(m, j, k, 1, 0).add(&CMatrix::unit(m, n + k, n + j, -1, 0)),
            ));
        }
    }
    for j in 0..n {
        for k in j..n {
            let b = if j == k {
                CMatrix::unit(m, j, n + j, 1, 0)
            } else {
                CMatrix::unit(m, j, n + k, 1, 0).add(&CMatrix::unit(m, k, n + j, 1, 0))
            };
            v.push((format!("B{j}{k}"), b));
        }
    }
    for j in 0..n {
        for k in j..n {
            let c = if j == k {
                CMatrix::unit(m, n + j, j, 1, 0)
            } else {
                CMatrix::unit(m, n + j, k, 1, 0).add(&CMatrix::unit(m, n + k, j, 1, 0))
            };
            v.push((format!("C{j}{k}"), c));
        }
    }
    labelled(v).expect("sp(2n) is semisimple")
}

/// `su(2)` on the cyclic basis `[x, y] = z`, `[y, z] = x`, `[z, x] = y`,
/// realized by the rotation generators of `so(3)`.
pub fn su2_matrix() -> MatrixAlgebra {
    let l = |a: usize, b: usize| CMatrix::unit(3, b, a, 1, 0).add(&CMatrix::unit(3, a, b, -1, 0));
    labelled(vec![
        ("x".to_string(), l(1, 2)),
        ("y".to_string(), l(2, 0)),
        ("z".to_string(), l(0, 1)),
    ])
    .expect("su(2) is semisimple")
}

pub fn sl(n: usize) -> LieAlgebra {
    sl_matrix(n).algebra
}

pub fn su(n: usize) -> LieAlgebra {
    su_matrix(n).algebra
}

pub fn su2() -> LieAlgebra {
    su2_matrix().algebra
}

pub fn so(p: usize, q: usize) -> LieAlgebra {
    so_matrix(p, q).algebra
}

pub fn sp(two_n: usize) -> LieAlgebra {
    sp_matrix(two_n).algebra
}

/// Named algebras accepted by [`algebra`].
pub const ALGEBRAS: &[&str] = &[
    "su2", "su3", "su2+su2", "sl2", "sl3", "so3", "so4", "so(2,1)", "so(3,1)", "sp4",
];

/// Matrix realization of a named algebra, when it has one.
pub fn matrix_algebra(name: &str) -> Result<MatrixAlgebra, Error> {
    Ok(match name {
        "su2" => su2_matrix(),
        "su3" => su_matrix(3),
        "sl2" => sl_matrix(2),
        "sl3" => sl_matrix(3),
        "so3" => so_matrix(3, 0),
        "so4" => so_matrix(4, 0),
        "so(2,1)" => so_matrix(2, 1),
        "so(3,1)" => so_matrix(3, 1),
        "sp4" => sp_matrix(4),
        _ => return Err(Error::UnknownCatalogEntry(name.to_string())),
    })
}

pub fn algebra(name: &str) -> Result<LieAlgebra, Error> {
    if name == "su2+su2" {
        return Ok(su2().direct_sum(&su2()));
    }
    matrix_algebra(name).map(|m| m.algebra)
}

/// A catalog symmetric pair with its classical compact dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogPair {
    pub name: &'static str,
    pub compact_dual: &'static str,
}

pub const PAIRS: &[CatalogPair] = &[
    CatalogPair {
        name: "sl2:cartan",
        compact_dual: "SU(2)/SO(2) = S^2",
    },
    CatalogPair {
        name: "sl3:cartan",
        compact_dual: "SU(3)/SO(3) (Wu manifold)",
    },
    CatalogPair {
        name: "so(2,1):cartan",
        compact_dual: "SO(3)/SO(2) = S^2",
    },
    CatalogPair {
        name: "so(3,1):cartan",
        compact_dual: "SO(4)/SO(3) = S^3",
    },
    CatalogPair {
        name: "sp4:cartan",
        compact_dual: "Sp(2)/U(2)",
    },
    CatalogPair {
        name: "so3:ad-diag(1,1,-1)",
        compact_dual: "SO(3)/SO(2) = S^2",
    },
    CatalogPair {
        name: "so4:ad-diag(1,1,1,-1)",
        compact_dual: "SO(4)/SO(3) = S^3",
    },
    CatalogPair {
        name: "su3:ad-diag(1,1,-1)",
        compact_dual: "SU(3)/S(U(2)xU(1)) = CP^2",
    },
    CatalogPair {
        name: "su3:neg-transpose",
        compact_dual: "SU(3)/SO(3) (Wu manifold)",
    },
    CatalogPair {
        name: "group:su2",
        compact_dual: "SU(2) = S^3",
    },
    CatalogPair {
        name: "group:su3",
        compact_dual: "SU(3)",
    },
];

fn parse_signs(text: &str) -> Option<Vec<i64>> {
    let inner = text.strip_prefix("ad-diag(")?.strip_suffix(')')?;
    inner
        .split(',')
        .map(|s| match s.trim() {
            "1" | "+1" => Some(1),
            "-1" => Some(-1),
            _ => None,
        })
        .collect()
}

/// Resolves `algebra:involution`, or `group:algebra` for the group pair.
///
/// Involutions: `cartan` / `neg-transpose` (`X -> -X^T`), `ad-diag(s_1,..,s_n)`
/// (conjugation by a diagonal sign matrix).
pub fn pair(name: &str) -> Result<SymmetricPair, Error> {
    let unknown = || Error::UnknownCatalogEntry(name.to_string());
    let (alg, inv) = name.split_once(':').ok_or_else(unknown)?;
    if alg == "group" {
        return SymmetricPair::group_pair(&algebra(inv)?);
    }
    let m = matrix_algebra(alg)?;
    let sigma = match inv {
        "cartan" | "neg-transpose" => m.negative_transpose()?,
        other => {
            let signs = parse_signs(other).ok_or_else(unknown)?;
            if signs.len() != m.matrices()[0].size() {
                return Err(unknown());
            }
            m.conjugation_by_signs(&signs)?
        }
    };
    SymmetricPair::cartan_decompose(m.algebra(), &sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(sl(2).dim(), 3);
        assert_eq!(sl(3).dim(), 8);
        assert_eq!(su(3).dim(), 8);
        assert_eq!(so(3, 1).dim(), 6);
        assert_eq!(sp(4).dim(), 10);
    }

    #[test]
    fn compactness_matches_real_form() {
        assert!(su2().is_compact());
        assert!(su(3).is_compact());
        assert!(so(4, 0).is_compact());
        assert!(!sl(2).is_compact());
        assert!(!so(2, 1).is_compact());
        assert!(!sp(4).is_compact());
    }

    #[test]
    fn every_catalog_pair_resolves() {
        for p in PAIRS {
            let pair = pair(p.name).unwrap();
            assert!(pair.m_dim() > 0, "{}", p.name);
        }
        assert!(pair("sl2:bogus").is_err());
        assert!(pair("su3:ad-diag(1,-1)").is_err());
    }

    #[test]
    fn su3_trace_cubic_is_nonzero() {
        let f = su_matrix(3).trace_power(3);
        assert!(!f.is_zero());
    }
}
