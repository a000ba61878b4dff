//! Curvature of the standard connection on `G -> G/H` and Chern-Weil forms.
//!
//! The standard connection is the Killing-orthogonal projection onto `h`.
//! Extending `x, y` in `m` to left-invariant horizontal fields, the structure
//! equation gives `R(x, y) = d theta(x, y) = -theta([x, y]) = -proj_h [x, y]`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::Error;
use crate::ext::{independent_subset, AltForm, GradedBasis};
use crate::multi_index::MultiIndex;
use crate::pair::SymmetricPair;
use crate::poly::{invariant_polynomials, is_invariant, SymPoly};
use crate::rep::SpaceTag;
use crate::scalar::{factorial, pow2, Scalar, Vector};

/// `R(x_i, x_j)` for `i < j` over `m_basis`, as coordinates over `h_basis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureTensor {
    m_dim: usize,
    h_dim: usize,
    values: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
}

impl CurvatureTensor {
    pub fn m_dim(&self) -> usize {
        self.m_dim
    }

    pub fn h_dim(&self) -> usize {
        self.h_dim
    }

    /// Sparse `h` coordinates of `R(x_i, x_j)` with the sign from antisymmetry.
    pub fn get(&self, i: usize, j: usize) -> Vec<(usize, Scalar)> {
        if i == j {
            return Vec::new();
        }
        let (a, b, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        let v = self.values.get(&(a, b)).cloned().unwrap_or_default();
        if flip {
            v.into_iter().map(|(k, x)| (k, -x)).collect()
        } else {
            v
        }
    }

    pub fn get_dense(&self, i: usize, j: usize) -> Vector {
        let mut v = crate::scalar::zero_vector(self.h_dim);
        for (k, x) in self.get(i, j) {
            v[k] = x;
        }
        v
    }

    /// `R([u, x], y) + R(x, [u, y]) = [u, R(x, y)]` for all basis `u` of `h`
    /// and `x, y` of `m`.
    pub fn is_equivariant(&self, pair: &SymmetricPair) -> bool {
        let h = pair.h_algebra();
        let iso = pair.isotropy();
        let bilinear = |x: &[Scalar], y: &[Scalar]| -> Vector {
            let mut out = crate::scalar::zero_vector(self.h_dim);
            for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                    for (k, r) in self.get(i, j) {
                        out[k] += a * b * r;
                    }
                }
            }
            out
        };
        for u in 0..self.h_dim {
            let ad_m = iso.matrix(u);
            let uh = crate::scalar::unit_vector(self.h_dim, u);
            for i in 0..self.m_dim {
                for j in 0..self.m_dim {
                    let ex = crate::scalar::unit_vector(self.m_dim, i);
                    let ey = crate::scalar::unit_vector(self.m_dim, j);
                    let ux = ad_m.mul_vec(&ex).expect("dims");
                    let uy = ad_m.mul_vec(&ey).expect("dims");
                    let lhs: Vector = bilinear(&ux, &ey)
                        .iter()
                        .zip(bilinear(&ex, &uy))
                        .map(|(a, b)| a + b)
                        .collect();
                    let rhs = h.bracket(&uh, &self.get_dense(i, j)).expect("dims");
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `R(x, y) = -proj_h [x, y]` on `m`.
pub fn standard_curvature(pair: &SymmetricPair) -> CurvatureTensor {
    let g = pair.algebra();
    let mut values = BTreeMap::new();
    for i in 0..pair.m_dim() {
        for j in i + 1..pair.m_dim() {
            let b = g.bracket(&pair.m_basis()[i], &pair.m_basis()[j]).expect("dims");
            let h = pair.h_part(&b);
            let v: Vec<(usize, Scalar)> = h
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (k, -x))
                .collect();
            if !v.is_empty() {
                values.insert((i, j), v);
            }
        }
    }
    CurvatureTensor {
        m_dim: pair.m_dim(),
        h_dim: pair.h_dim(),
        values,
    }
}

/// Calls `f(sign, pairs)` for every perfect matching of `items` (even
/// length), with pairs `(a, b)`, `a < b`, listed by increasing first
/// element; `sign` is the parity of the permutation that lists the pairs.
pub(crate) type MatchingVisitor<'a> = dyn FnMut(i32, &[(usize, usize)]) + 'a;

pub(crate) fn for_each_matching(items: &[usize], f: &mut MatchingVisitor<'_>) {
    fn rec(rest: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, sign: i32, f: &mut MatchingVisitor<'_>) {
        if rest.is_empty() {
            f(sign, acc);
            return;
        }
        let first = rest.remove(0);
        for p in 0..rest.len() {
            let second = rest.remove(p);
            acc.push((first, second));
            // moving `second` next to `first` passes `p` elements
            let s = if p % 2 == 0 { sign } else { -sign };
            rec(rest, acc, s, f);
            acc.pop();
            rest.insert(p, second);
        }
        rest.insert(0, first);
    }
    let mut rest = items.to_vec();
    rec(&mut rest, &mut Vec::new(), 1, f);
}

/// `CW_f(x_1..x_{2k}) = sum_{S_{2k}} sign f(R(x_s1, x_s2), ..., R(x_s(2k-1), x_s(2k)))`.
///
/// Computed as `k! 2^k` times the signed sum over perfect matchings.
pub fn cw_form(pair: &SymmetricPair, f: &SymPoly) -> Result<AltForm, Error> {
    if f.tag() != SpaceTag::H || f.dim() != pair.h_dim() {
        return Err(Error::SpaceMismatch);
    }
    if !is_invariant(pair.h_adjoint(), f) {
        return Err(Error::NotInvariantPolynomial);
    }
    let curvature = standard_curvature(pair);
    cw_form_with(&curvature, f)
}

pub(crate) fn cw_form_with(curvature: &CurvatureTensor, f: &SymPoly) -> Result<AltForm, Error> {
    let k = f.degree();
    let n = curvature.m_dim;
    let mut out = AltForm::zero(2 * k, SpaceTag::M, n);
    if 2 * k > n {
        return Ok(out);
    }
    let norm = Scalar::from_integer(factorial(k as u32) * pow2(k as u32));
    for idx in MultiIndex::all(n, 2 * k) {
        let items = idx.to_vec();
        let mut acc = Scalar::zero();
        for_each_matching(&items, &mut |sign, pairs| {
            let args: Vec<Vec<(usize, Scalar)>> = pairs.iter().map(|&(a, b)| curvature.get(a, b)).collect();
            if args.iter().any(Vec::is_empty) {
                return;
            }
            let refs: Vec<&[(usize, Scalar)]> = args.iter().map(Vec::as_slice).collect();
            let v = f.eval_sparse(&refs);
            if sign > 0 {
                acc += v;
            } else {
                acc -= v;
            }
        });
        out.add_term(idx, acc * &norm);
    }
    Ok(out)
}

/// Graded span of the Chern-Weil forms of invariant polynomials on `h` of
/// degree at most `cap`, closed under wedge products.
pub fn even_subalgebra(pair: &SymmetricPair, cap: usize) -> Result<GradedBasis, Error> {
    let n = pair.m_dim();
    let curvature = standard_curvature(pair);
    let mut generators: Vec<Vec<AltForm>> = (0..=n).map(|_| Vec::new()).collect();
    for k in 1..=cap.min(n / 2) {
        for f in invariant_polynomials(pair.h_adjoint(), k, cap)? {
            generators[2 * k].push(cw_form_with(&curvature, &f)?);
        }
    }
    Ok(close_under_wedge(n, generators))
}

/// Per-degree independent spans of all wedge products of the given
/// generators (degree-indexed), together with the unit.
pub(crate) fn close_under_wedge(n: usize, generators: Vec<Vec<AltForm>>) -> GradedBasis {
    let mut span: Vec<Vec<AltForm>> = (0..=n).map(|_| Vec::new()).collect();
    span[0].push(AltForm::one(SpaceTag::M, n));
    for d in 1..=n {
        let mut candidates: Vec<AltForm> = generators.get(d).cloned().unwrap_or_default();
        for a in 1..d {
            for g in generators.get(a).map_or(&[][..], Vec::as_slice) {
                for s in &span[d - a] {
                    candidates.push(g.wedge(s).expect("same space"));
                }
            }
        }
        span[d] = independent_subset(n, d, candidates);
    }
    GradedBasis::from_spanning(SpaceTag::M, n, span)
}
