//! Symmetric multilinear forms and the invariant ones among them.
//!
//! A [`SymPoly`] of degree `k` stores, for each monomial `i_1 <= ... <= i_k`,
//! its value `f(x_{i_1}, ..., x_{i_k})` on basis vectors. The associated
//! polynomial is `x -> f(x, ..., x)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::lie::LieAlgebra;
use crate::linalg::{SparseEchelon, SparseRow};
use crate::multi_index::SortedIndex;
use crate::rep::{Representation, SpaceTag, SparseAction};
use crate::scalar::{int, Scalar, Vector};

/// Default bound on the polynomial degree of invariant searches.
pub const DEFAULT_DEGREE_CAP: usize = 4;

/// Hard bound on any requested polynomial degree.
pub const MAX_POLY_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly {
    degree: usize,
    tag: SpaceTag,
    dim: usize,
    coeffs: BTreeMap<SortedIndex, Scalar>,
}

impl SymPoly {
    pub fn zero(degree: usize, tag: SpaceTag, dim: usize) -> Self {
        Self {
            degree,
            tag,
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    /// The degree-zero unit.
    pub fn one(tag: SpaceTag, dim: usize) -> Self {
        let mut f = Self::zero(0, tag, dim);
        f.add_term(SortedIndex::default(), Scalar::one());
        f
    }

    pub fn from_terms<I>(degree: usize, tag: SpaceTag, dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (SortedIndex, Scalar)>,
    {
        let mut f = Self::zero(degree, tag, dim);
        for (idx, c) in terms {
            assert_eq!(idx.degree(), degree, "monomial degree");
            f.add_term(idx, c);
        }
        f
    }

    pub(crate) fn from_vector(v: &[Scalar], basis: &[SortedIndex], degree: usize, tag: SpaceTag, dim: usize) -> Self {
        Self::from_terms(degree, tag, dim, basis.iter().cloned().zip(v.iter().cloned()))
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

    pub fn terms(&self) -> impl Iterator<Item = (&SortedIndex, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, idx: &SortedIndex) -> Scalar {
        self.coeffs.get(idx).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Value on basis vectors given in any order.
    pub fn value_on(&self, indices: &[usize]) -> Scalar {
        self.coeff(&SortedIndex::from_unsorted(indices))
    }

    fn add_term(&mut self, idx: SortedIndex, c: Scalar) {
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
            out.add_term(i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.degree, self.tag, self.dim);
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(i, x)| (i.clone(), x * c)).collect();
        }
        out
    }

    /// Multilinear value on sparse arguments.
    pub fn eval_sparse(&self, args: &[&[(usize, Scalar)]]) -> Scalar {
        assert_eq!(args.len(), self.degree, "argument count");
        let mut acc = Scalar::zero();
        let mut idx = alloc::vec![0usize; self.degree];
        self.eval_rec(args, 0, &mut idx, &Scalar::one(), &mut acc);
        acc
    }

    fn eval_rec(&self, args: &[&[(usize, Scalar)]], slot: usize, idx: &mut Vec<usize>, w: &Scalar, acc: &mut Scalar) {
        if slot == args.len() {
            if idx.len() > 16 {
                let c = self.value_on(idx);
                *acc += w * c;
                return;
            }
            let mut key = [0u8; 16];
            for (k, &i) in key.iter_mut().zip(idx.iter()) {
                *k = i as u8;
            }
            let key = &mut key[..idx.len()];
            key.sort_unstable();
            if let Some(c) = self.coeffs.get(&*key) {
                *acc += w * c;
            }
            return;
        }
        for (i, x) in args[slot] {
            idx[slot] = *i;
            self.eval_rec(args, slot + 1, idx, &(w * x), acc);
        }
    }

    /// Multilinear value on dense arguments.
    pub fn eval(&self, args: &[Vector]) -> Result<Scalar, Error> {
        if args.len() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: args.len(),
            });
        }
        if let Some(v) = args.iter().find(|v| v.len() != self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let sparse: Vec<SparseRow> = args.iter().map(|v| crate::linalg::to_sparse(v)).collect();
        let refs: Vec<&[(usize, Scalar)]> = sparse.iter().map(Vec::as_slice).collect();
        Ok(self.eval_sparse(&refs))
    }

    /// `(L^* f)(y_1..y_k) = f(L y_1, ..., L y_k)` where `images` are the
    /// columns of `L`.
    pub fn pullback(&self, images: &[Vector], tag: SpaceTag) -> Result<Self, Error> {
        let n = images.len();
        let mut out = Self::zero(self.degree, tag, n);
        for idx in SortedIndex::all(n, self.degree) {
            let args: Vec<Vector> = idx.iter().map(|i| images[i].clone()).collect();
            out.add_term(idx, self.eval(&args)?);
        }
        Ok(out)
    }

    /// Symmetrized product, normalized so that the associated polynomials
    /// multiply: `P_{fg}(x) = P_f(x) P_g(x)`.
    pub fn sym_product(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_space(other)?;
        let (p, q) = (self.degree, other.degree);
        let n = p + q;
        let mut out = Self::zero(n, self.tag, self.dim);
        let total = binomial(n, p);
        let mut candidates: BTreeSet<SortedIndex> = BTreeSet::new();
        for a in self.coeffs.keys() {
            for b in other.coeffs.keys() {
                candidates.insert(a.merge(b));
            }
        }
        for idx in candidates {
            let items = idx.to_vec();
            let mut acc = Scalar::zero();
            for_each_subset(n, p, &mut |chosen| {
                let (mut left, mut right) = (Vec::with_capacity(p), Vec::with_capacity(q));
                for (pos, &i) in items.iter().enumerate() {
                    if chosen & (1u64 << pos) != 0 {
                        left.push(i);
                    } else {
                        right.push(i);
                    }
                }
                let a = self.value_on(&left);
                if !a.is_zero() {
                    acc += a * other.value_on(&right);
                }
            });
            out.add_term(idx, acc / int(total as i64));
        }
        Ok(out)
    }

    /// Flat coordinates over `SortedIndex::all(dim, degree)`.
    pub(crate) fn to_row(&self, basis: &[SortedIndex]) -> SparseRow {
        self.coeffs
            .iter()
            .map(|(i, c)| (basis.binary_search(i).expect("monomial in basis"), c.clone()))
            .collect()
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(u64)) {
    fn rec(start: usize, n: usize, left: usize, mask: u64, f: &mut dyn FnMut(u64)) {
        if left == 0 {
            f(mask);
            return;
        }
        for i in start..=n - left {
            rec(i + 1, n, left - 1, mask | (1u64 << i), f);
        }
    }
    rec(0, n, k, 0, f);
}

/// Row of `f -> (u . f)` at output monomial `jdx`, over `basis`.
fn action_row(cols: &[Vec<(usize, Scalar)>], jdx: &SortedIndex, basis: &[SortedIndex]) -> BTreeMap<usize, Scalar> {
    let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
    for j in jdx.distinct() {
        let mult = int(jdx.multiplicity(j) as i64);
        for (a, x) in &cols[j] {
            let k = jdx.replace(j, *a);
            let col = basis.binary_search(&k).expect("same degree");
            *row.entry(col).or_insert_with(Scalar::zero) -= &mult * x;
        }
    }
    row.retain(|_, x| !x.is_zero());
    row
}

/// `(u . f)(x_1..x_k) = - sum_i f(x_1, .., u . x_i, .., x_k)`.
fn act_sparse(action: &SparseAction, f: &SymPoly) -> SymPoly {
    let mut out = SymPoly::zero(f.degree, f.tag, f.dim);
    let mut targets: BTreeSet<SortedIndex> = BTreeSet::new();
    for k in f.coeffs.keys() {
        for a in k.distinct() {
            for (j, _) in &action.rows[a] {
                targets.insert(k.replace(a, *j));
            }
        }
    }
    for jdx in targets {
        let mut acc = Scalar::zero();
        for j in jdx.distinct() {
            let mult = int(jdx.multiplicity(j) as i64);
            for (a, x) in &action.cols[j] {
                let c = f.coeff(&jdx.replace(j, *a));
                if !c.is_zero() {
                    acc -= &mult * x * c;
                }
            }
        }
        out.add_term(jdx, acc);
    }
    out
}

/// `u . f` for an element `u` of the acting algebra (coordinates over its basis).
pub fn sym_action(rep: &Representation, u: &[Scalar], f: &SymPoly) -> Result<SymPoly, Error> {
    if f.tag != rep.tag() || f.dim != rep.dim() {
        return Err(Error::SpaceMismatch);
    }
    if u.len() != rep.acting_dim() {
        return Err(Error::NotInSubalgebra);
    }
    Ok(act_sparse(&SparseAction::new(&rep.matrix_of(u)), f))
}

/// True when every acting basis element kills `f`.
pub fn is_invariant(rep: &Representation, f: &SymPoly) -> bool {
    f.tag == rep.tag()
        && f.dim == rep.dim()
        && (0..rep.acting_dim()).all(|u| act_sparse(&SparseAction::new(rep.matrix(u)), f).is_zero())
}

/// Basis of the invariant symmetric `k`-linear forms. Degree zero returns
/// the unit.
pub fn invariant_polynomials(rep: &Representation, k: usize, cap: usize) -> Result<Vec<SymPoly>, Error> {
    let cap = cap.min(MAX_POLY_DEGREE);
    if k > cap {
        return Err(Error::DegreeCapExceeded { degree: k, cap });
    }
    if k == 0 {
        return Ok(alloc::vec![SymPoly::one(rep.tag(), rep.dim())]);
    }
    let basis = SortedIndex::all(rep.dim(), k);
    let mut ech = SparseEchelon::new(basis.len());
    'outer: for &u in rep.generators() {
        let cols: Vec<Vec<(usize, Scalar)>> = (0..rep.dim()).map(|j| rep.col_entries(u, j).to_vec()).collect();
        for jdx in &basis {
            let row: SparseRow = action_row(&cols, jdx, &basis).into_iter().collect();
            if !row.is_empty() {
                ech.insert(&row);
                if ech.is_full() {
                    break 'outer;
                }
            }
        }
    }
    Ok(ech
        .kernel()
        .iter()
        .map(|v| SymPoly::from_vector(v, &basis, k, rep.tag(), rep.dim()))
        .collect())
}

/// The Killing form as a degree-two symmetric form on `g`.
pub fn killing_poly(g: &LieAlgebra) -> SymPoly {
    let b = g.killing_form();
    let n = g.dim();
    let mut f = SymPoly::zero(2, SpaceTag::G, n);
    for i in 0..n {
        for j in i..n {
            f.add_term(SortedIndex::from_sorted(&[i, j]).expect("sorted"), b[(i, j)].clone());
        }
    }
    f
}

/// Rank of a list of degree-`k` polynomials on a space of dimension `dim`.
pub fn rank_of_polys(dim: usize, k: usize, polys: &[SymPoly]) -> usize {
    let basis = SortedIndex::all(dim, k);
    let mut ech = SparseEchelon::new(basis.len());
    for f in polys {
        ech.insert(&f.to_row(&basis));
    }
    ech.rank()
}

/// Invariant polynomials of degree `k` that are not in the span of products
/// of invariants of lower positive degree, as a basis of a complement.
pub fn indecomposable_invariants(
    rep: &Representation,
    k: usize,
    lower: &[Vec<SymPoly>],
    cap: usize,
) -> Result<Vec<SymPoly>, Error> {
    let all = invariant_polynomials(rep, k, cap)?;
    let basis = SortedIndex::all(rep.dim(), k);
    let mut ech = SparseEchelon::new(basis.len());
    for a in 1..k {
        let b = k - a;
        if a > b {
            break;
        }
        for f in lower.get(a).map_or(&[][..], Vec::as_slice) {
            for g in lower.get(b).map_or(&[][..], Vec::as_slice) {
                ech.insert(&f.sym_product(g)?.to_row(&basis));
            }
        }
    }
    Ok(all.into_iter().filter(|f| ech.insert(&f.to_row(&basis))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::{int, unit_vector};

    fn adjoint(g: &LieAlgebra) -> Representation {
        Representation::adjoint(g, SpaceTag::G)
    }

    #[test]
    fn killing_poly_values() {
        let g = catalog::sl(2);
        let k = killing_poly(&g);
        // basis e, f, h
        assert_eq!(k.value_on(&[2, 2]), int(8));
        assert_eq!(k.value_on(&[1, 0]), int(4));
        assert_eq!(k.value_on(&[0, 0]), int(0));
        assert!(is_invariant(&adjoint(&g), &k));
    }

    #[test]
    fn su2_quadratic_invariants() {
        let g = catalog::su2();
        let rep = adjoint(&g);
        let q = invariant_polynomials(&rep, 2, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(rank_of_polys(3, 2, &[q[0].clone(), killing_poly(&g)]), 1);
        assert!(invariant_polynomials(&rep, 1, DEFAULT_DEGREE_CAP).unwrap().is_empty());
        assert!(invariant_polynomials(&rep, 3, DEFAULT_DEGREE_CAP).unwrap().is_empty());
    }

    #[test]
    fn su3_cubic_invariant_matches_trace_form() {
        let m = catalog::su_matrix(3);
        let rep = adjoint(m.algebra());
        let cubic = invariant_polynomials(&rep, 3, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(cubic.len(), 1);
        let trace = m.trace_power(3);
        assert!(is_invariant(&rep, &trace));
        assert_eq!(rank_of_polys(8, 3, &[cubic[0].clone(), trace]), 1);
    }

    #[test]
    fn quadratic_invariants_count_simple_factors() {
        for (g, n) in [
            (catalog::su2(), 1),
            (catalog::su2().direct_sum(&catalog::su2()), 2),
            (catalog::su(3), 1),
        ] {
            let rep = adjoint(&g);
            assert_eq!(invariant_polynomials(&rep, 2, 4).unwrap().len(), n);
        }
    }

    #[test]
    fn abelian_acting_algebra_leaves_linear_forms_invariant() {
        let pair = catalog::pair("sl2:cartan").unwrap();
        let lin = invariant_polynomials(pair.h_adjoint(), 1, 4).unwrap();
        assert_eq!(lin.len(), 1);
    }

    #[test]
    fn central_linear_form_on_u2() {
        let pair = catalog::pair("su3:ad-diag(1,1,-1)").unwrap();
        let lin = invariant_polynomials(pair.h_adjoint(), 1, 4).unwrap();
        assert_eq!(lin.len(), 1);
        for u in 0..pair.h_dim() {
            let e = unit_vector(pair.h_dim(), u);
            assert!(sym_action(pair.h_adjoint(), &e, &lin[0]).unwrap().is_zero());
        }
    }

    #[test]
    fn random_quadratic_is_not_invariant() {
        let g = catalog::su2();
        let rep = adjoint(&g);
        let f = SymPoly::from_terms(
            2,
            SpaceTag::G,
            3,
            [(SortedIndex::from_sorted(&[0, 0]).unwrap(), int(1))],
        );
        assert!(!sym_action(&rep, &unit_vector(3, 2), &f).unwrap().is_zero());
        assert!(!is_invariant(&rep, &f));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let rep = adjoint(&catalog::su2());
        assert_eq!(
            invariant_polynomials(&rep, 5, 4),
            Err(Error::DegreeCapExceeded { degree: 5, cap: 4 })
        );
    }

    #[test]
    fn product_properties() {
        let g = catalog::su2();
        let k = killing_poly(&g);
        let one = SymPoly::one(SpaceTag::G, 3);
        assert_eq!(k.sym_product(&one).unwrap(), k);
        let k2 = k.sym_product(&k).unwrap();
        assert_eq!(k2.degree(), 4);
        assert!(is_invariant(&adjoint(&g), &k2));
        let lin = SymPoly::from_terms(1, SpaceTag::G, 3, [(SortedIndex::from_sorted(&[1]).unwrap(), int(2))]);
        assert_eq!(lin.sym_product(&k).unwrap(), k.sym_product(&lin).unwrap());
        // P_{k^2}(x) = P_k(x)^2 at x = e_0
        assert_eq!(k2.value_on(&[0, 0, 0, 0]), int(4));
        // polarization: k2(x, x, y, y) = (k(x,x)k(y,y) + 2 k(x,y)^2) / 3
        assert_eq!(k2.value_on(&[0, 0, 1, 1]), int(4) / int(3));
    }

    #[test]
    fn indecomposables_of_su2_at_degree_four_vanish() {
        let g = catalog::su2();
        let rep = adjoint(&g);
        let lower: Vec<Vec<SymPoly>> = (0..4).map(|k| invariant_polynomials(&rep, k, 4).unwrap()).collect();
        assert!(indecomposable_invariants(&rep, 4, &lower, 4).unwrap().is_empty());
        assert_eq!(indecomposable_invariants(&rep, 2, &lower, 4).unwrap().len(), 1);
    }

    #[test]
    fn pullback_to_subalgebra() {
        let g = catalog::su2();
        let k = killing_poly(&g);
        let r = k.pullback(&[unit_vector(3, 2)], SpaceTag::H).unwrap();
        assert_eq!(r.value_on(&[0, 0]), int(-2));
    }
}
