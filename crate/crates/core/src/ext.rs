//! Sparse exterior algebra, derivation actions and invariant forms.
//!
//! Convention: the coefficient of an [`AltForm`] on the multi-index
//! `(i_1 < ... < i_k)` is its value on `(x_{i_1}, ..., x_{i_k})`. Alternating
//! sums elsewhere in the crate run over full permutation groups without a
//! normalizing factor.
//!
//! Sign convention for the infinitesimal action: `u . w` is the derivative of
//! `exp(-t ad_u)^* w` at `t = 0`, that is
//! `(u . w)(x_1, ..., x_k) = - sum_i w(x_1, ..., [u, x_i], ..., x_k)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::linalg::{Matrix, SparseEchelon, SparseRow};
use crate::multi_index::{MultiIndex, MAX_DIM};
use crate::pair::SymmetricPair;
use crate::rep::{Representation, SpaceTag, SparseAction};
use crate::scalar::{Scalar, Vector};

/// Alternating multilinear form on a tagged coordinate space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltForm {
    degree: usize,
    tag: SpaceTag,
    dim: usize,
    coeffs: BTreeMap<MultiIndex, Scalar>,
}

impl AltForm {
    pub fn zero(degree: usize, tag: SpaceTag, dim: usize) -> Self {
        Self {
            degree,
            tag,
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar, tag: SpaceTag, dim: usize) -> Self {
        let mut f = Self::zero(0, tag, dim);
        f.add_term(MultiIndex::EMPTY, c);
        f
    }

    pub fn one(tag: SpaceTag, dim: usize) -> Self {
        Self::constant(Scalar::one(), tag, dim)
    }

    /// `dx_{i_1} ^ ... ^ dx_{i_k}` for an increasing tuple.
    pub fn basis(indices: &[usize], tag: SpaceTag, dim: usize) -> Result<Self, Error> {
        let idx = MultiIndex::from_sorted(indices).ok_or(Error::InvalidBasis("indices must increase"))?;
        if idx.max_index().is_some_and(|m| m >= dim) {
            return Err(Error::IndexOutOfRange(idx.max_index().unwrap_or(0)));
        }
        let mut f = Self::zero(indices.len(), tag, dim);
        f.add_term(idx, Scalar::one());
        Ok(f)
    }

    /// Builds a form from `(index tuple, coefficient)` pairs. Unsorted tuples
    /// are sorted with the permutation sign; tuples with repeats are dropped.
    pub fn from_terms<I>(degree: usize, tag: SpaceTag, dim: usize, terms: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Vec<usize>, Scalar)>,
    {
        if dim > MAX_DIM {
            return Err(Error::TooLarge(dim));
        }
        let mut f = Self::zero(degree, tag, dim);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::DimensionMismatch {
                    expected: degree,
                    found: idx.len(),
                });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::IndexOutOfRange(bad));
            }
            if let Some((mi, sign)) = MultiIndex::sort_signed(&idx) {
                f.add_term(mi, if sign > 0 { c } else { -c });
            }
        }
        Ok(f)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn tag(&self) -> SpaceTag {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, idx: MultiIndex) -> Scalar {
        self.coeffs.get(&idx).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Value on basis vectors given in any order.
    pub fn value_on(&self, indices: &[usize]) -> Scalar {
        match MultiIndex::sort_signed(indices) {
            Some((mi, s)) => {
                let c = self.coeff(mi);
                if s > 0 {
                    c
                } else {
                    -c
                }
            }
            None => Scalar::zero(),
        }
    }

    pub(crate) fn add_term(&mut self, idx: MultiIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.coeffs.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<(), Error> {
        if self.tag != other.tag || self.dim != other.dim {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_space(other)?;
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            out.add_term(*i, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.degree, self.tag, self.dim);
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(i, x)| (*i, x * c)).collect();
        }
        out
    }

    /// Exterior product. The coefficient on a merged index carries the sign
    /// of the shuffle sorting the concatenated tuples.
    pub fn wedge(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_space(other)?;
        let mut out = Self::zero(self.degree + other.degree, self.tag, self.dim);
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                if let Some(s) = i.merge_sign(*j) {
                    let ab = a * b;
                    out.add_term(MultiIndex::from_mask(i.mask() | j.mask()), if s > 0 { ab } else { -ab });
                }
            }
        }
        Ok(out)
    }

    /// Value on arbitrary vectors: `sum_I c_I det(v_j[i_l])`.
    pub fn eval(&self, vectors: &[Vector]) -> Result<Scalar, Error> {
        if vectors.len() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: vectors.len(),
            });
        }
        let mut acc = Scalar::zero();
        for (idx, c) in &self.coeffs {
            let rows = idx.to_vec();
            let mut m = Matrix::zeros(self.degree, self.degree);
            for (l, v) in vectors.iter().enumerate() {
                for (a, &i) in rows.iter().enumerate() {
                    m[(a, l)] = v[i].clone();
                }
            }
            acc += c * m.determinant()?;
        }
        Ok(acc)
    }

    /// Pullback along the linear map whose columns are `images` (vectors in
    /// this form's space): `(L^* w)(y_1..y_k) = w(L y_1, ..., L y_k)`.
    pub fn pullback(&self, images: &[Vector], tag: SpaceTag) -> Result<Self, Error> {
        let target_dim = images.len();
        let mut out = Self::zero(self.degree, tag, target_dim);
        for j in MultiIndex::all(target_dim, self.degree) {
            let vs: Vec<Vector> = j.iter().map(|c| images[c].clone()).collect();
            out.add_term(j, self.eval(&vs)?);
        }
        Ok(out)
    }

    /// Re-tags a form and embeds its indices by `map` (injective, order
    /// preserving) into a space of dimension `dim`.
    pub fn relabel(&self, map: &[usize], tag: SpaceTag, dim: usize) -> Self {
        let mut out = Self::zero(self.degree, tag, dim);
        for (idx, c) in &self.coeffs {
            let v: Vec<usize> = idx.iter().map(|i| map[i]).collect();
            let (mi, s) = MultiIndex::sort_signed(&v).expect("injective");
            out.add_term(mi, if s > 0 { c.clone() } else { -c });
        }
        out
    }

    /// Coordinates over `basis` (every index must be present).
    pub fn to_row(&self, basis: &FormBasis) -> SparseRow {
        self.coeffs
            .iter()
            .map(|(i, c)| (basis.position(*i).expect("index in basis"), c.clone()))
            .collect()
    }

    pub fn from_vector(v: &[Scalar], basis: &FormBasis, tag: SpaceTag) -> Self {
        let mut f = Self::zero(basis.degree, tag, basis.dim);
        for (i, c) in v.iter().enumerate() {
            f.add_term(basis.indices[i], c.clone());
        }
        f
    }
}

/// All multi-indices of a fixed degree, in lexicographic order.
#[derive(Debug, Clone)]
pub struct FormBasis {
    dim: usize,
    degree: usize,
    indices: Vec<MultiIndex>,
}

impl FormBasis {
    pub fn new(dim: usize, degree: usize) -> Self {
        Self {
            dim,
            degree,
            indices: MultiIndex::all(dim, degree),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn position(&self, idx: MultiIndex) -> Option<usize> {
        self.indices.binary_search(&idx).ok()
    }
}

/// Derivation action of a matrix on a form (see module docs for the sign).
fn act_sparse(action: &SparseAction, w: &AltForm) -> AltForm {
    let mut out = AltForm::zero(w.degree, w.tag, w.dim);
    for (k, c) in &w.coeffs {
        for a in k.iter() {
            let rest = k.without(a);
            for (j, x) in &action.rows[a] {
                if rest.contains(*j) {
                    continue;
                }
                let sign_odd = rest.count_between(a, *j) % 2 == 1;
                let v = -(x * c);
                out.add_term(rest.with(*j), if sign_odd { -v } else { v });
            }
        }
    }
    out
}

/// `u . w` for an element `u` (coordinates over the acting algebra's basis).
pub fn act(rep: &Representation, u: &[Scalar], w: &AltForm) -> Result<AltForm, Error> {
    if w.tag != rep.tag() || w.dim != rep.dim() {
        return Err(Error::SpaceMismatch);
    }
    if u.len() != rep.acting_dim() {
        return Err(Error::NotInSubalgebra);
    }
    Ok(act_sparse(&SparseAction::new(&rep.matrix_of(u)), w))
}

/// `u . w` for a vector `u` of `g` that must lie in `h`, acting on a form on `m`.
pub fn h_action(pair: &SymmetricPair, u: &[Scalar], w: &AltForm) -> Result<AltForm, Error> {
    if u.len() != pair.algebra().dim() {
        return Err(Error::DimensionMismatch {
            expected: pair.algebra().dim(),
            found: u.len(),
        });
    }
    let split = pair.split_coordinates(u);
    if split[pair.h_dim()..].iter().any(|x| !x.is_zero()) {
        return Err(Error::NotInSubalgebra);
    }
    act(pair.isotropy(), &split[..pair.h_dim()], w)
}

/// The stacked invariance system `{w -> u . w}` over the generators of the
/// acting algebra, as sparse rows over `basis`.
fn invariance_rows(rep: &Representation, basis: &FormBasis) -> Vec<SparseRow> {
    let mut rows = Vec::new();
    for &u in rep.generators() {
        for &jdx in basis.indices() {
            let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
            for j in jdx.iter() {
                let rest = jdx.without(j);
                for (a, x) in rep.col_entries(u, j) {
                    if rest.contains(*a) {
                        continue;
                    }
                    let k = rest.with(*a);
                    let odd = rest.count_between(j, *a) % 2 == 1;
                    let col = basis.position(k).expect("same degree");
                    let v = if odd { x.clone() } else { -x };
                    *row.entry(col).or_insert_with(Scalar::zero) += v;
                }
            }
            let row: SparseRow = row.into_iter().filter(|(_, x)| !x.is_zero()).collect();
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    rows
}

/// Basis of `Lambda^k(V^*)^A` for the representation `A` on `V`.
pub fn invariant_forms(rep: &Representation, k: usize) -> Vec<AltForm> {
    let basis = FormBasis::new(rep.dim(), k);
    if basis.is_empty() {
        return Vec::new();
    }
    let mut ech = SparseEchelon::new(basis.len());
    for row in invariance_rows(rep, &basis) {
        ech.insert(&row);
        if ech.is_full() {
            break;
        }
    }
    ech.kernel()
        .iter()
        .map(|v| AltForm::from_vector(v, &basis, rep.tag()))
        .collect()
}

/// Invariant `k`-forms on `m` under the isotropy action of `h`.
pub fn pair_invariant_forms(pair: &SymmetricPair, k: usize) -> Vec<AltForm> {
    invariant_forms(pair.isotropy(), k)
}

/// `dim Lambda^k(m^*)^h` for `k = 0..=dim m`.
pub fn poincare_polynomial(pair: &SymmetricPair) -> Vec<usize> {
    (0..=pair.m_dim())
        .map(|k| pair_invariant_forms(pair, k).len())
        .collect()
}

/// True when every acting basis element kills `w`.
pub fn is_invariant(rep: &Representation, w: &AltForm) -> bool {
    (0..rep.acting_dim()).all(|u| act_sparse(&SparseAction::new(rep.matrix(u)), w).is_zero())
}

/// Reductive-pair Chevalley-Eilenberg differential of a form on `m`:
/// `dw(x_0..x_k) = sum_{i<j} (-1)^{i+j} w(proj_m [x_i, x_j], x_0..^i..^j..x_k)`.
pub fn ce_differential(pair: &SymmetricPair, w: &AltForm) -> Result<AltForm, Error> {
    if w.tag != SpaceTag::M || w.dim != pair.m_dim() {
        return Err(Error::SpaceMismatch);
    }
    let n = pair.m_dim();
    let g = pair.algebra();
    let mut table: Vec<Vec<Vector>> = Vec::with_capacity(n);
    for a in 0..n {
        let row = (0..n)
            .map(|b| pair.m_part(&g.bracket(&pair.m_basis()[a], &pair.m_basis()[b]).expect("dims")))
            .collect();
        table.push(row);
    }
    let mut out = AltForm::zero(w.degree + 1, SpaceTag::M, n);
    if w.is_zero() {
        return Ok(out);
    }
    for jdx in MultiIndex::all(n, w.degree + 1) {
        let items = jdx.to_vec();
        let mut total = Scalar::zero();
        for i in 0..items.len() {
            for j in i + 1..items.len() {
                let v = &table[items[i]][items[j]];
                let rest: Vec<usize> = items
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| *p != i && *p != j)
                    .map(|(_, &x)| x)
                    .collect();
                let mut term = Scalar::zero();
                for (a, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    let mut args = alloc::vec![a];
                    args.extend_from_slice(&rest);
                    term += x * w.value_on(&args);
                }
                if (i + j) % 2 == 1 {
                    term = -term;
                }
                total += term;
            }
        }
        out.add_term(jdx, total);
    }
    Ok(out)
}

/// Per-degree bases of a graded subspace of forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    tag: SpaceTag,
    dim: usize,
    degrees: Vec<Vec<AltForm>>,
}

impl GradedBasis {
    /// Keeps, degree by degree, the forms that are independent of those
    /// before them.
    pub fn from_spanning(tag: SpaceTag, dim: usize, spanning: Vec<Vec<AltForm>>) -> Self {
        let degrees = spanning
            .into_iter()
            .enumerate()
            .map(|(k, forms)| independent_subset(dim, k, forms))
            .collect();
        Self { tag, dim, degrees }
    }

    pub fn tag(&self) -> SpaceTag {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len().saturating_sub(1)
    }

    pub fn degree(&self, k: usize) -> &[AltForm] {
        self.degrees.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[AltForm])> {
        self.degrees.iter().enumerate().map(|(k, v)| (k, v.as_slice()))
    }

    /// Exact membership of `w` in the span of degree `w.degree()`.
    pub fn contains(&self, w: &AltForm) -> bool {
        let basis = FormBasis::new(self.dim, w.degree());
        let mut ech = SparseEchelon::new(basis.len());
        for f in self.degree(w.degree()) {
            ech.insert(&f.to_row(&basis));
        }
        ech.contains(&w.to_row(&basis))
    }
}

pub(crate) fn independent_subset(dim: usize, k: usize, forms: Vec<AltForm>) -> Vec<AltForm> {
    let basis = FormBasis::new(dim, k);
    let mut ech = SparseEchelon::new(basis.len());
    forms
        .into_iter()
        .filter(|f| !f.is_zero() && ech.insert(&f.to_row(&basis)))
        .collect()
}

/// Rank of a list of forms of degree `k` on a space of dimension `dim`.
pub fn rank_of_forms(dim: usize, k: usize, forms: &[AltForm]) -> usize {
    let basis = FormBasis::new(dim, k);
    let mut ech = SparseEchelon::new(basis.len());
    for f in forms {
        ech.insert(&f.to_row(&basis));
    }
    ech.rank()
}

/// Graded basis of all invariant forms on `m`.
pub fn invariant_graded_basis(pair: &SymmetricPair) -> GradedBasis {
    let degrees = (0..=pair.m_dim()).map(|k| pair_invariant_forms(pair, k)).collect();
    GradedBasis {
        tag: SpaceTag::M,
        dim: pair.m_dim(),
        degrees,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::{int, unit_vector};

    fn form(deg: usize, dim: usize, terms: &[(&[usize], i64)]) -> AltForm {
        AltForm::from_terms(deg, SpaceTag::M, dim, terms.iter().map(|(i, c)| (i.to_vec(), int(*c)))).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let dx1 = form(1, 3, &[(&[1], 1)]);
        let dx2 = form(1, 3, &[(&[2], 1)]);
        assert_eq!(dx1.wedge(&dx2).unwrap(), form(2, 3, &[(&[1, 2], 1)]));
        let a = form(1, 3, &[(&[0], 2), (&[2], -1)]);
        assert!(a.wedge(&a).unwrap().is_zero());
        let s = form(1, 3, &[(&[1], 1), (&[2], 1)]);
        assert_eq!(s.wedge(&dx1).unwrap(), form(2, 3, &[(&[1, 2], -1)]));
        let other = AltForm::basis(&[0], SpaceTag::G, 3).unwrap();
        assert_eq!(dx1.wedge(&other), Err(Error::SpaceMismatch));
    }

    #[test]
    fn eval_matches_coefficients() {
        let w = form(2, 3, &[(&[0, 2], 3), (&[1, 2], -1)]);
        assert_eq!(w.eval(&[unit_vector(3, 2), unit_vector(3, 0)]).unwrap(), int(-3));
        let v = alloc::vec![int(1), int(1), int(0)];
        // w(e0 + e1, e2) = 3 - 1
        assert_eq!(w.eval(&[v, unit_vector(3, 2)]).unwrap(), int(2));
    }

    #[test]
    fn sl2_invariant_forms() {
        let pair = catalog::pair("sl2:cartan").unwrap();
        assert_eq!(pair_invariant_forms(&pair, 2).len(), 1);
        assert_eq!(pair_invariant_forms(&pair, 1).len(), 0);
        assert_eq!(poincare_polynomial(&pair), [1, 0, 1]);
    }

    #[test]
    fn su2_biinvariant_three_form() {
        let g = catalog::su2();
        let rep = Representation::adjoint(&g, SpaceTag::G);
        let forms = invariant_forms(&rep, 3);
        assert_eq!(forms.len(), 1);
        assert_eq!(invariant_forms(&rep, 1).len(), 0);
        assert_eq!(invariant_forms(&rep, 2).len(), 0);
    }

    #[test]
    fn degree_zero_forms_are_inert() {
        let pair = catalog::pair("su3:ad-diag(1,1,-1)").unwrap();
        let one = AltForm::one(SpaceTag::M, pair.m_dim());
        for u in pair.h_basis() {
            assert!(h_action(&pair, u, &one).unwrap().is_zero());
        }
    }

    #[test]
    fn central_element_kills_invariants() {
        let pair = catalog::pair("su3:ad-diag(1,1,-1)").unwrap();
        // The centre of h = u(2) is the kernel of ad on h.
        let h = pair.h_algebra();
        let mut ker = crate::linalg::SparseEchelon::new(h.dim());
        for i in 0..h.dim() {
            for row in h.ad_basis(i).to_rows() {
                ker.insert(&crate::linalg::to_sparse(&row));
            }
        }
        let _ = ker;
        // Solve [z, h_i] = 0 for all i directly.
        let mut rows = Vec::new();
        for i in 0..h.dim() {
            let adi = h.ad_basis(i);
            rows.extend(adi.to_rows().into_iter().map(|r| r.iter().map(|x| -x).collect()));
        }
        let centre = crate::linalg::rank_and_kernel(&Matrix::from_rows(rows).unwrap()).kernel;
        assert_eq!(centre.len(), 1);
        let z = pair.h_vector(&centre[0]);
        for k in 0..=4 {
            for w in pair_invariant_forms(&pair, k) {
                assert!(h_action(&pair, &z, &w).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn acting_vector_outside_h_is_rejected() {
        let pair = catalog::pair("sl2:cartan").unwrap();
        let w = AltForm::basis(&[0], SpaceTag::M, 2).unwrap();
        let x = pair.m_basis()[0].clone();
        assert_eq!(h_action(&pair, &x, &w), Err(Error::NotInSubalgebra));
    }

    #[test]
    fn ce_differential_vanishes_on_symmetric_pair() {
        let pair = catalog::pair("sl2:cartan").unwrap();
        let area = &pair_invariant_forms(&pair, 2)[0];
        assert!(ce_differential(&pair, area).unwrap().is_zero());
        let dx = AltForm::basis(&[0], SpaceTag::M, 2).unwrap();
        assert!(ce_differential(&pair, &dx).unwrap().is_zero());
    }

    #[test]
    fn ce_differential_detects_non_symmetric_pair() {
        let g = catalog::su2();
        let pair = SymmetricPair::reductive(&g, Vec::new()).unwrap();
        let dx = AltForm::basis(&[0], SpaceTag::M, 3).unwrap();
        let d = ce_differential(&pair, &dx).unwrap();
        // d(dx)(y, z) = -dx([y, z]) = -1 on the cyclic basis
        assert_eq!(d.coeff(MultiIndex::from_sorted(&[1, 2]).unwrap()), int(-1));
    }

    #[test]
    fn pullback_and_relabel_agree() {
        let w = form(2, 3, &[(&[0, 1], 1), (&[1, 2], 5)]);
        let images = alloc::vec![unit_vector(3, 1), unit_vector(3, 2)];
        let p = w.pullback(&images, SpaceTag::G).unwrap();
        assert_eq!(p.coeff(MultiIndex::from_sorted(&[0, 1]).unwrap()), int(5));
        let r = p.relabel(&[1, 2], SpaceTag::M, 3);
        assert_eq!(r, form(2, 3, &[(&[1, 2], 5)]));
    }
}
