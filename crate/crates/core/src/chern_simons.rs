//! The transgression map `tau`, primitive forms, and the straight-path
//! Chern-Simons form between the two flat connections on a group.
//!
//! `tau(f)(v_1..v_{2k-1}) = sum_{S_{2k-1}} sign f(v_s1, [v_s2, v_s3], ...)`.
//!
//! The integral route works with `g`-valued left-invariant forms. The path
//! `theta_t = (1 - t) A_0 + t A_1` between the Maurer-Cartan form
//! `A_0 = mu` and the trivial connection `A_1 = 0` (the two flat
//! connections pulled back along the section `g -> (1, g)`) has curvature
//! `R_t = d theta_t + [theta_t, theta_t] / 2`, computed from the structure
//! equation `d alpha(x, y) = -alpha([x, y])`, and the form is
//! `k int_0^1 f(theta_t', R_t, ..., R_t) dt`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::chern_weil::for_each_matching;
use crate::error::Error;
use crate::ext::{self, AltForm, FormBasis, GradedBasis};
use crate::lie::LieAlgebra;
use crate::linalg::{to_sparse, Matrix, SparseEchelon, SparseRow};
use crate::multi_index::MultiIndex;
use crate::poly::{invariant_polynomials, is_invariant, SymPoly, MAX_POLY_DEGREE};
use crate::rep::{Representation, SpaceTag};
use crate::scalar::{factorial, int, pow2, zero_vector, Scalar, Vector};

/// `(-1)^k k! (k-1)! / (2^{k-1} (2k-1)!)`.
pub fn cs_constant(k: u32) -> Scalar {
    assert!(k >= 1, "k >= 1");
    let num = factorial(k) * factorial(k - 1);
    let den = pow2(k - 1) * factorial(2 * k - 1);
    let c = Scalar::new(num, den);
    if k.is_multiple_of(2) {
        c
    } else {
        -c
    }
}

/// Rank of `g`: the smallest nullity of `ad_x` over a fixed family of
/// pseudo-random elements.
pub fn rank(g: &LieAlgebra) -> usize {
    let n = g.dim();
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut best = n;
    for _ in 0..4 {
        let x: Vector = (0..n)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                int((state % 7) as i64 - 3)
            })
            .collect();
        let nullity = n - crate::linalg::rank_and_kernel(&g.ad(&x)).rank;
        best = best.min(nullity);
    }
    best
}

fn bracket_table(g: &LieAlgebra) -> Vec<Vec<Vec<(usize, Scalar)>>> {
    let n = g.dim();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    if a == b {
                        Vec::new()
                    } else if a < b {
                        g.basis_bracket(a, b).clone()
                    } else {
                        g.basis_bracket(b, a).iter().map(|(k, x)| (*k, -x)).collect()
                    }
                })
                .collect()
        })
        .collect()
}

/// The Cartan-Chevalley-Weil map on an ad-invariant polynomial of degree
/// `k`, giving a `(2k - 1)`-form on `g`.
pub fn tau(g: &LieAlgebra, f: &SymPoly) -> Result<AltForm, Error> {
    if f.tag() != SpaceTag::G || f.dim() != g.dim() {
        return Err(Error::SpaceMismatch);
    }
    if !is_invariant(&Representation::adjoint(g, SpaceTag::G), f) {
        return Err(Error::NotInvariantPolynomial);
    }
    Ok(tau_unchecked(g, f))
}

pub(crate) fn tau_unchecked(g: &LieAlgebra, f: &SymPoly) -> AltForm {
    let k = f.degree();
    let n = g.dim();
    let mut out = AltForm::zero((2 * k).saturating_sub(1), SpaceTag::G, n);
    if k == 0 || 2 * k - 1 > n {
        return out;
    }
    let table = bracket_table(g);
    let norm = Scalar::from_integer(factorial(k as u32 - 1) * pow2(k as u32 - 1));
    for idx in MultiIndex::all(n, 2 * k - 1) {
        let items = idx.to_vec();
        let mut acc = Scalar::zero();
        for r in 0..items.len() {
            let head = alloc::vec![(items[r], Scalar::one())];
            let rest: Vec<usize> = items
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != r)
                .map(|(_, &x)| x)
                .collect();
            let mut partial = Scalar::zero();
            for_each_matching(&rest, &mut |sign, pairs| {
                let mut args: Vec<&[(usize, Scalar)]> = Vec::with_capacity(k);
                args.push(&head);
                for &(a, b) in pairs {
                    let v = &table[a][b];
                    if v.is_empty() {
                        return;
                    }
                    args.push(v);
                }
                let v = f.eval_sparse(&args);
                if sign > 0 {
                    partial += v;
                } else {
                    partial -= v;
                }
            });
            if r % 2 == 0 {
                acc += partial;
            } else {
                acc -= partial;
            }
        }
        out.add_term(idx, acc * &norm);
    }
    out
}

/// Span of `tau(f)` over invariant polynomials of degree `1..=cap`, graded
/// by form degree `2k - 1`.
pub fn primitive_space(g: &LieAlgebra, cap: usize) -> Result<GradedBasis, Error> {
    if cap > MAX_POLY_DEGREE {
        return Err(Error::DegreeCapExceeded {
            degree: cap,
            cap: MAX_POLY_DEGREE,
        });
    }
    let n = g.dim();
    let rep = Representation::adjoint(g, SpaceTag::G);
    let mut spanning: Vec<Vec<AltForm>> = (0..=n).map(|_| Vec::new()).collect();
    for k in 1..=cap {
        if 2 * k - 1 > n {
            break;
        }
        for f in invariant_polynomials(&rep, k, cap)? {
            spanning[2 * k - 1].push(tau_unchecked(g, &f));
        }
    }
    Ok(GradedBasis::from_spanning(SpaceTag::G, n, spanning))
}

/// Form degrees of a primitive basis, with multiplicity, increasing.
pub fn primitive_degrees(prims: &GradedBasis) -> Vec<usize> {
    prims
        .iter()
        .flat_map(|(d, forms)| core::iter::repeat_n(d, forms.len()))
        .collect()
}

/// Coefficients of `prod_i (1 + t^{d_i})`.
pub fn hopf_polynomial(degrees: &[usize]) -> Vec<i64> {
    let mut p = alloc::vec![1i64];
    for &d in degrees {
        let mut q = alloc::vec![0i64; p.len() + d];
        for (i, c) in p.iter().enumerate() {
            q[i] += c;
            q[i + d] += c;
        }
        p = q;
    }
    p
}

/// Projection of `Lambda^j(g^*)` onto the invariant forms along
/// `g . Lambda^j(g^*)`, as coordinates over the invariant basis (one row per
/// invariant form). Returns `None` when there are no invariants.
fn invariant_projector(rep: &Representation, j: usize) -> Option<Matrix> {
    let invariants = ext::invariant_forms(rep, j);
    if invariants.is_empty() {
        return None;
    }
    let basis = FormBasis::new(rep.dim(), j);
    let size = basis.len();
    let mut ech = SparseEchelon::new(size);
    let mut columns: Vec<Vector> = Vec::with_capacity(size);
    for w in &invariants {
        let v = dense(&w.to_row(&basis), size);
        ech.insert(&to_sparse(&v));
        columns.push(v);
    }
    'outer: for u in 0..rep.acting_dim() {
        let e = crate::scalar::unit_vector(rep.acting_dim(), u);
        for &idx in basis.indices() {
            let mut w = AltForm::zero(j, rep.tag(), rep.dim());
            w.add_term(idx, Scalar::one());
            let image = ext::act(rep, &e, &w).expect("same space");
            let row = image.to_row(&basis);
            if ech.insert(&row) {
                columns.push(dense(&row, size));
                if ech.is_full() {
                    break 'outer;
                }
            }
        }
    }
    let m = Matrix::from_columns(size, &columns);
    let inv = m.inverse().expect("invariants complement the image");
    let r = invariants.len();
    Some(Matrix::from_rows((0..r).map(|i| inv.row(i).to_vec()).collect()).expect("rows"))
}

fn dense(row: &[(usize, Scalar)], n: usize) -> Vector {
    let mut v = zero_vector(n);
    for (i, x) in row {
        v[*i] = x.clone();
    }
    v
}

/// Primitivity through the linearized orbit map `(x, y) -> x - y`: the
/// pullback of `w` to `g + g` is split by bidegree, each mixed component is
/// projected onto invariant forms in both factors, and `w` is primitive when
/// all of these vanish.
pub fn is_primitive(g: &LieAlgebra, w: &AltForm) -> Result<bool, Error> {
    if w.tag() != SpaceTag::G || w.dim() != g.dim() {
        return Err(Error::SpaceMismatch);
    }
    let rep = Representation::adjoint(g, SpaceTag::G);
    if !ext::is_invariant(&rep, w) {
        return Err(Error::NotBiinvariant);
    }
    let k = w.degree();
    let n = g.dim();
    let projectors: Vec<Option<Matrix>> = (0..=k)
        .map(|j| {
            if j == 0 || j == k {
                None
            } else {
                invariant_projector(&rep, j)
            }
        })
        .collect();
    for j in 1..k {
        let (Some(p), Some(q)) = (&projectors[j], &projectors[k - j]) else {
            continue;
        };
        let left = FormBasis::new(n, j);
        let right = FormBasis::new(n, k - j);
        let mut component = Matrix::zeros(left.len(), right.len());
        let sign_b = (k - j) % 2 == 1;
        for (idx, c) in w.terms() {
            let items = idx.to_vec();
            for_each_split(&items, j, &mut |a, b| {
                let mut args = a.to_vec();
                args.extend_from_slice(b);
                let (_, s) = MultiIndex::sort_signed(&args).expect("distinct");
                let negative = (s < 0) != sign_b;
                let ia = left
                    .position(MultiIndex::from_sorted(a).expect("sorted"))
                    .expect("in basis");
                let ib = right
                    .position(MultiIndex::from_sorted(b).expect("sorted"))
                    .expect("in basis");
                if negative {
                    component[(ia, ib)] -= c;
                } else {
                    component[(ia, ib)] += c;
                }
            });
        }
        let projected = p.mul(&component)?.mul(&q.transpose())?;
        if !projected.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Calls `f(a, b)` for every split of the increasing `items` into an
/// increasing `a` of length `j` and its increasing complement `b`.
fn for_each_split(items: &[usize], j: usize, f: &mut dyn FnMut(&[usize], &[usize])) {
    let n = items.len();
    let mut chosen = alloc::vec![false; n];
    fn rec(items: &[usize], chosen: &mut Vec<bool>, start: usize, left: usize, f: &mut dyn FnMut(&[usize], &[usize])) {
        if left == 0 {
            let a: Vec<usize> = items
                .iter()
                .zip(chosen.iter())
                .filter(|(_, c)| **c)
                .map(|(x, _)| *x)
                .collect();
            let b: Vec<usize> = items
                .iter()
                .zip(chosen.iter())
                .filter(|(_, c)| !**c)
                .map(|(x, _)| *x)
                .collect();
            f(&a, &b);
            return;
        }
        for i in start..=items.len() - left {
            chosen[i] = true;
            rec(items, chosen, i + 1, left - 1, f);
            chosen[i] = false;
        }
    }
    if j <= n {
        rec(items, &mut chosen, 0, j, f);
    }
}

/// Alternating form with values in `g`; the value on a basis tuple is stored
/// at its increasing multi-index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VecForm {
    degree: usize,
    dim: usize,
    values: BTreeMap<MultiIndex, Vector>,
}

impl VecForm {
    pub fn zero(degree: usize, dim: usize) -> Self {
        Self {
            degree,
            dim,
            values: BTreeMap::new(),
        }
    }

    /// The Maurer-Cartan form `mu(x) = x`.
    pub fn identity(dim: usize) -> Self {
        let mut f = Self::zero(1, dim);
        for i in 0..dim {
            f.values
                .insert(MultiIndex::single(i), crate::scalar::unit_vector(dim, i));
        }
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    fn insert(&mut self, idx: MultiIndex, v: Vector) {
        if v.iter().any(|x| !x.is_zero()) {
            self.values.insert(idx, v);
        }
    }

    /// Value on basis vectors in any order.
    pub fn value_on(&self, indices: &[usize]) -> Vector {
        match MultiIndex::sort_signed(indices) {
            Some((idx, s)) => match self.values.get(&idx) {
                Some(v) if s > 0 => v.clone(),
                Some(v) => v.iter().map(|x| -x).collect(),
                None => zero_vector(self.dim),
            },
            None => zero_vector(self.dim),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (idx, v) in &other.values {
            let sum: Vector = out.value_on(&idx.to_vec()).iter().zip(v).map(|(a, b)| a + b).collect();
            out.values.remove(idx);
            out.insert(*idx, sum);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.degree, self.dim);
        for (idx, v) in &self.values {
            out.insert(*idx, v.iter().map(|x| x * c).collect());
        }
        out
    }

    /// Exterior derivative of a left-invariant 1-form: `d a(x, y) = -a([x, y])`.
    pub fn d(&self, g: &LieAlgebra) -> Self {
        assert_eq!(self.degree, 1, "1-forms only");
        let n = self.dim;
        let mut out = Self::zero(2, n);
        for a in 0..n {
            for b in a + 1..n {
                let mut v = zero_vector(n);
                for (c, x) in g.basis_bracket(a, b) {
                    for (i, y) in self.value_on(&[*c]).iter().enumerate() {
                        v[i] -= x * y;
                    }
                }
                out.insert(MultiIndex::from_sorted(&[a, b]).expect("sorted"), v);
            }
        }
        out
    }

    /// `[a, b](x, y) = [a(x), b(y)] - [a(y), b(x)]` for 1-forms.
    pub fn bracket(&self, other: &Self, g: &LieAlgebra) -> Self {
        assert!(self.degree == 1 && other.degree == 1, "1-forms only");
        let n = self.dim;
        let mut out = Self::zero(2, n);
        for x in 0..n {
            for y in x + 1..n {
                let p = g.bracket(&self.value_on(&[x]), &other.value_on(&[y])).expect("dims");
                let q = g.bracket(&self.value_on(&[y]), &other.value_on(&[x])).expect("dims");
                out.insert(
                    MultiIndex::from_sorted(&[x, y]).expect("sorted"),
                    p.iter().zip(q).map(|(a, b)| a - b).collect(),
                );
            }
        }
        out
    }
}

/// Curvature of `theta_t = A_0 + t (A_1 - A_0)` as `c_0 + c_1 t + c_2 t^2`.
#[derive(Debug, Clone)]
pub struct PathCurvatureSymbol {
    velocity: VecForm,
    coeffs: [VecForm; 3],
}

impl PathCurvatureSymbol {
    pub fn new(g: &LieAlgebra, a0: &VecForm, a1: &VecForm) -> Self {
        let half = crate::scalar::ratio(1, 2);
        let d = a1.add(&a0.scale(&-Scalar::one()));
        let c0 = a0.d(g).add(&a0.bracket(a0, g).scale(&half));
        let c1 = d.d(g).add(&a0.bracket(&d, g).add(&d.bracket(a0, g)).scale(&half));
        let c2 = d.bracket(&d, g).scale(&half);
        Self {
            velocity: d,
            coeffs: [c0, c1, c2],
        }
    }

    /// The straight path from the Maurer-Cartan form to the zero connection.
    pub fn section_path(g: &LieAlgebra) -> Self {
        let n = g.dim();
        Self::new(g, &VecForm::identity(n), &VecForm::zero(1, n))
    }

    /// `d theta_t / dt`.
    pub fn velocity(&self) -> &VecForm {
        &self.velocity
    }

    pub fn coefficients(&self) -> &[VecForm; 3] {
        &self.coeffs
    }

    pub fn at(&self, t: &Scalar) -> VecForm {
        let t2 = t * t;
        self.coeffs[0]
            .add(&self.coeffs[1].scale(t))
            .add(&self.coeffs[2].scale(&t2))
    }
}

/// `f(a_1, ..., a_k)` for `g`-valued forms of degrees `p_i`:
/// `(1 / prod p_i!) sum_{S_n} sign f(a_1(v_s..), ..., a_k(v_s..))`.
fn apply_to_forms(f: &SymPoly, forms: &[&VecForm], n: usize) -> AltForm {
    let degree: usize = forms.iter().map(|a| a.degree).sum();
    let mut out = AltForm::zero(degree, SpaceTag::G, n);
    let norm: Scalar = forms.iter().fold(Scalar::one(), |acc, a| {
        acc * Scalar::from_integer(factorial(a.degree as u32))
    });
    let tables: Vec<BTreeMap<MultiIndex, SparseRow>> = forms
        .iter()
        .map(|a| a.values.iter().map(|(i, v)| (*i, to_sparse(v))).collect())
        .collect();
    for idx in MultiIndex::all(n, degree) {
        let items = idx.to_vec();
        let mut acc = Scalar::zero();
        for_each_signed_permutation(&items, &mut |sign, perm| {
            let mut sign = sign;
            let mut refs: Vec<&[(usize, Scalar)]> = Vec::with_capacity(forms.len());
            let mut pos = 0;
            for (a, table) in forms.iter().zip(&tables) {
                let Some((key, s)) = MultiIndex::sort_signed(&perm[pos..pos + a.degree]) else {
                    return;
                };
                let Some(v) = table.get(&key) else {
                    return;
                };
                sign *= s;
                refs.push(v);
                pos += a.degree;
            }
            let v = f.eval_sparse(&refs);
            if sign > 0 {
                acc += v;
            } else {
                acc -= v;
            }
        });
        out.add_term(idx, acc / &norm);
    }
    out
}

fn for_each_signed_permutation(items: &[usize], f: &mut dyn FnMut(i32, &[usize])) {
    fn rec(v: &mut Vec<usize>, k: usize, sign: i32, f: &mut dyn FnMut(i32, &[usize])) {
        if k == v.len() {
            f(sign, v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            rec(v, k + 1, if i == k { sign } else { -sign }, f);
            v.swap(k, i);
        }
    }
    let mut v = items.to_vec();
    rec(&mut v, 0, 1, f);
}

/// `k int_0^1 f(theta_t', R_t, ..., R_t) dt` along [`PathCurvatureSymbol::section_path`],
/// expanded as a polynomial in `t` and integrated exactly.
pub fn cs_form_via_integral(g: &LieAlgebra, f: &SymPoly) -> Result<AltForm, Error> {
    if f.tag() != SpaceTag::G || f.dim() != g.dim() {
        return Err(Error::SpaceMismatch);
    }
    if !is_invariant(&Representation::adjoint(g, SpaceTag::G), f) {
        return Err(Error::NotInvariantPolynomial);
    }
    let k = f.degree();
    let n = g.dim();
    if k == 0 {
        return Ok(AltForm::zero(0, SpaceTag::G, n));
    }
    let mut out = AltForm::zero(2 * k - 1, SpaceTag::G, n);
    if 2 * k - 1 > n {
        return Ok(out);
    }
    let path = PathCurvatureSymbol::section_path(g);
    let live: Vec<usize> = (0..3).filter(|&i| !path.coeffs[i].is_zero()).collect();
    // Every ordered choice of curvature coefficient per slot.
    let slots = k - 1;
    let mut choice = alloc::vec![0usize; slots];
    loop {
        let power: usize = choice.iter().map(|&c| live[c]).sum();
        let mut forms: Vec<&VecForm> = alloc::vec![&path.velocity];
        forms.extend(choice.iter().map(|&c| &path.coeffs[live[c]]));
        if !live.is_empty() || slots == 0 {
            let term = apply_to_forms(f, &forms, n);
            let weight = int(k as i64) / int(power as i64 + 1);
            out = out.add(&term.scale(&weight))?;
        }
        // advance the mixed-radix counter
        let mut p = 0;
        loop {
            if p == slots || live.is_empty() {
                return Ok(out);
            }
            choice[p] += 1;
            if choice[p] < live.len() {
                break;
            }
            choice[p] = 0;
            p += 1;
        }
    }
}

/// True when `a = c b` for the given scalar, exactly.
pub fn is_multiple(a: &AltForm, b: &AltForm, c: &Scalar) -> bool {
    a.sub(&b.scale(c)).is_ok_and(|d| d.is_zero())
}

/// The scalar `c` with `a = c b`, when `b` is nonzero and such `c` exists.
pub fn ratio_of(a: &AltForm, b: &AltForm) -> Option<Scalar> {
    let (idx, bc) = b.terms().next()?;
    let r = a.coeff(*idx) / bc;
    if is_multiple(a, b, &r) {
        Some(r)
    } else {
        None
    }
}
