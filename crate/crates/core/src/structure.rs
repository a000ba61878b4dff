//! Pullback along `iota(gH) = g sigma(g)^{-1}`, the projection formulas, the
//! projector lemma, and the even-times-odd decomposition of invariant forms.
//!
//! Inner products on `Lambda^k` are Gram determinants of the inner product
//! induced on `g^*` by `-kappa` of the compact dual:
//! `<dx_I, dx_J> = det((K^{-1})[I, J])` with `K = -kappa`.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::chern_simons::{cs_constant, cs_form_via_integral, is_multiple, tau_unchecked};
use crate::chern_weil::{close_under_wedge, cw_form_with, standard_curvature};
use crate::error::Error;
use crate::exec::Executor;
use crate::ext::{self, independent_subset, rank_of_forms, AltForm, FormBasis, GradedBasis};
use crate::lie::LieAlgebra;
use crate::linalg::{dot, rank_and_kernel, solve, Matrix};
use crate::pair::SymmetricPair;
use crate::poly::{indecomposable_invariants, invariant_polynomials, SymPoly, DEFAULT_DEGREE_CAP};
use crate::rep::{Representation, SpaceTag};
use crate::scalar::{pow2, primitive_integer_vector, zero_vector, Scalar, Vector};

/// `(iota^* w)(x_1..x_k) = 2^k w(x_1, ..., x_k)` for `x_i` in `m`.
pub fn iota_pullback(pair: &SymmetricPair, w: &AltForm) -> Result<AltForm, Error> {
    let g = pair.algebra();
    if w.tag() != SpaceTag::G || w.dim() != g.dim() {
        return Err(Error::SpaceMismatch);
    }
    if !ext::is_invariant(&Representation::adjoint(g, SpaceTag::G), w) {
        return Err(Error::NotBiinvariant);
    }
    Ok(restrict_to_m(pair, w))
}

fn restrict_to_m(pair: &SymmetricPair, w: &AltForm) -> AltForm {
    let k = w.degree();
    let r = w.pullback(pair.m_basis(), SpaceTag::M).expect("dims");
    r.scale(&Scalar::from_integer(pow2(k as u32)))
}

/// `K^{-1}` for `K = -kappa`, after checking that `K` is positive definite.
fn dual_inner_product(g: &LieAlgebra) -> Result<Matrix, Error> {
    let k = g.killing_form();
    let neg = Matrix::zeros(k.rows(), k.cols()).sub(&k);
    if !neg.is_positive_definite() {
        return Err(Error::DualNotCompact);
    }
    Ok(neg.inverse().expect("definite"))
}

/// `<a, b> = sum a_I b_J det(kinv[I, J])`.
fn form_inner(kinv: &Matrix, a: &AltForm, b: &AltForm) -> Scalar {
    let mut acc = Scalar::zero();
    for (i, x) in a.terms() {
        let rows = i.to_vec();
        for (j, y) in b.terms() {
            let d = kinv.select(&rows, &j.to_vec()).determinant().expect("square");
            if !d.is_zero() {
                acc += x * y * d;
            }
        }
    }
    acc
}

/// Extension by zero along `g = h + m`: `W(v_1..v_k) = w(proj_m v_1, ...)`.
pub fn extend_by_zero(pair: &SymmetricPair, w: &AltForm) -> AltForm {
    let n = pair.algebra().dim();
    let images: Vec<Vector> = (0..n).map(|i| pair.m_part(&crate::scalar::unit_vector(n, i))).collect();
    w.pullback(&images, SpaceTag::G).expect("dims")
}

/// `pi^* w`: extend an `h`-invariant form on `m` by zero and project it
/// orthogonally onto the biinvariant forms. The algebra of `pair` must be
/// compact.
pub fn pi_pullback(pair: &SymmetricPair, w: &AltForm) -> Result<AltForm, Error> {
    if w.tag() != SpaceTag::M || w.dim() != pair.m_dim() {
        return Err(Error::SpaceMismatch);
    }
    let g = pair.algebra();
    let kinv = dual_inner_product(g)?;
    if !ext::is_invariant(pair.isotropy(), w) {
        return Err(Error::NotInvariant);
    }
    let k = w.degree();
    let extended = extend_by_zero(pair, w);
    let biinvariant = ext::invariant_forms(&Representation::adjoint(g, SpaceTag::G), k);
    let mut out = AltForm::zero(k, SpaceTag::G, g.dim());
    if biinvariant.is_empty() || extended.is_zero() {
        return Ok(out);
    }
    let r = biinvariant.len();
    let mut gram = Matrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            gram[(i, j)] = form_inner(&kinv, &biinvariant[i], &biinvariant[j]);
        }
    }
    let rhs: Vector = biinvariant.iter().map(|b| form_inner(&kinv, &extended, b)).collect();
    let c = solve(&gram, &rhs).ok_or(Error::NotDefinite)?;
    for (ci, b) in c.iter().zip(&biinvariant) {
        out = out.add(&b.scale(ci))?;
    }
    Ok(out)
}

/// Subspaces produced by the projector lemma, with the verdict
/// `F_1 = im(pi_1 on F_2) + ker(pi_2 on F_1)` as a direct sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaWitness {
    pub f1_dim: usize,
    pub f2_dim: usize,
    pub image: Vec<Vector>,
    pub kernel: Vec<Vector>,
    pub holds: bool,
}

/// Orthogonal projections `pi_i` onto `F_i` in `Q^e_dim` with inner product
/// `gram`; computes `im(pi_1 | F_2)` and `ker(pi_2 | F_1)` and checks that
/// they split `F_1`.
pub fn projector_lemma_check(e_dim: usize, f1: &[Vector], f2: &[Vector], gram: &Matrix) -> Result<LemmaWitness, Error> {
    if gram.rows() != e_dim || gram.cols() != e_dim {
        return Err(Error::DimensionMismatch {
            expected: e_dim,
            found: gram.rows(),
        });
    }
    if let Some(v) = f1.iter().chain(f2).find(|v| v.len() != e_dim) {
        return Err(Error::DimensionMismatch {
            expected: e_dim,
            found: v.len(),
        });
    }
    if !gram.is_positive_definite() {
        return Err(Error::NotDefinite);
    }
    let f1 = independent_vectors(f1);
    let f2 = independent_vectors(f2);
    let d1 = f1.len();
    let gf1: Vec<Vector> = f1.iter().map(|a| gram.mul_vec(a).expect("dims")).collect();

    let mut g1 = Matrix::zeros(d1, d1);
    for i in 0..d1 {
        for j in 0..d1 {
            g1[(i, j)] = dot(&f1[i], &gf1[j]);
        }
    }
    let mut pairing = Matrix::zeros(f2.len(), d1);
    for b in 0..f2.len() {
        for a in 0..d1 {
            pairing[(b, a)] = dot(&f2[b], &gf1[a]);
        }
    }
    let g1_inv = g1.inverse().expect("Gram of a basis is invertible");
    let image: Vec<Vector> = independent_vectors(
        &pairing
            .to_rows()
            .iter()
            .map(|rhs| combine(&f1, &g1_inv.mul_vec(rhs).expect("dims"), e_dim))
            .collect::<Vec<_>>(),
    );

    let kernel: Vec<Vector> = rank_and_kernel(&pairing)
        .kernel
        .iter()
        .map(|c| primitive_integer_vector(&combine(&f1, c, e_dim)))
        .collect();

    let union: Vec<Vector> = image.iter().chain(&kernel).cloned().collect();
    let with_f1: Vec<Vector> = union.iter().chain(&f1).cloned().collect();
    let holds = image.len() + kernel.len() == d1 && dense_rank(&union) == d1 && dense_rank(&with_f1) == d1;
    Ok(LemmaWitness {
        f1_dim: d1,
        f2_dim: f2.len(),
        image,
        kernel,
        holds,
    })
}

fn combine(basis: &[Vector], c: &[Scalar], n: usize) -> Vector {
    let mut v = zero_vector(n);
    for (ci, b) in c.iter().zip(basis) {
        if ci.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(b) {
            *x += ci * y;
        }
    }
    v
}

/// Leftmost independent subset, as primitive integer vectors.
fn independent_vectors(vs: &[Vector]) -> Vec<Vector> {
    let Some(n) = vs.first().map(Vec::len) else {
        return Vec::new();
    };
    let ints: Vec<Vector> = vs.iter().map(|v| primitive_integer_vector(v)).collect();
    rank_and_kernel(&Matrix::from_columns(n, &ints))
        .pivots
        .into_iter()
        .map(|j| ints[j].clone())
        .collect()
}

fn dense_rank(vs: &[Vector]) -> usize {
    vs.first()
        .map_or(0, |v| rank_and_kernel(&Matrix::from_columns(v.len(), vs)).rank)
}

/// The lemma in the setting of the structure theorem, in degree `k`, over a
/// compact pair: `F_1` = invariant forms on `m` extended by zero, `F_2` =
/// biinvariant forms, ambient space their span in `Lambda^k(g^*)`.
pub fn pair_lemma_instance(pair: &SymmetricPair, k: usize) -> Result<LemmaWitness, Error> {
    let g = pair.algebra();
    let kinv = dual_inner_product(g)?;
    let f1: Vec<AltForm> = ext::pair_invariant_forms(pair, k)
        .iter()
        .map(|w| extend_by_zero(pair, w))
        .collect();
    let f2 = ext::invariant_forms(&Representation::adjoint(g, SpaceTag::G), k);
    let span = independent_subset(g.dim(), k, f1.iter().chain(&f2).cloned().collect());
    let e = span.len();
    let basis = FormBasis::new(g.dim(), k);
    let span_matrix = Matrix::from_columns(
        basis.len(),
        &span.iter().map(|w| dense_row(w, &basis)).collect::<Vec<_>>(),
    );
    let coords = |w: &AltForm| -> Vector {
        let target = dense_row(w, &basis);
        least_coords(&span_matrix, &target)
    };
    let mut gram = Matrix::zeros(e, e);
    for i in 0..e {
        for j in 0..e {
            gram[(i, j)] = form_inner(&kinv, &span[i], &span[j]);
        }
    }
    let f1c: Vec<Vector> = f1.iter().map(coords).collect();
    let f2c: Vec<Vector> = f2.iter().map(coords).collect();
    projector_lemma_check(e, &f1c, &f2c, &gram)
}

fn dense_row(w: &AltForm, basis: &FormBasis) -> Vector {
    let mut v = zero_vector(basis.len());
    for (i, x) in w.to_row(basis) {
        v[i] = x;
    }
    v
}

/// Coordinates of `target` over the independent columns of `m`.
fn least_coords(m: &Matrix, target: &[Scalar]) -> Vector {
    // Normal equations are exact and solvable for independent columns.
    let mt = m.transpose();
    let lhs = mt.mul(m).expect("dims");
    let rhs = mt.mul_vec(target).expect("dims");
    solve(&lhs, &rhs).expect("independent columns")
}

/// Polynomial-degree bounds for the generator searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub even_poly_degree: usize,
    pub odd_poly_degree: usize,
}

impl Caps {
    pub fn uniform(d: usize) -> Self {
        Self {
            even_poly_degree: d,
            odd_poly_degree: d,
        }
    }
}

impl Default for Caps {
    fn default() -> Self {
        Self::uniform(DEFAULT_DEGREE_CAP)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenGenerator {
    pub poly_degree: usize,
    pub form: AltForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddGenerator {
    pub poly_degree: usize,
    pub primitive_degree: usize,
    pub form: AltForm,
}

/// The Chern-Simons comparison for one polynomial on the compact dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsCheck {
    pub poly_degree: usize,
    pub constant: Scalar,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub degree: usize,
    pub total: usize,
    pub expected: usize,
    pub product_rank: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub name: String,
    pub g_dim: usize,
    pub h_dim: usize,
    pub m_dim: usize,
    pub caps: Caps,
    pub symmetric: bool,
    pub closed: bool,
    pub poincare_total: Vec<usize>,
    pub poincare_even: Vec<usize>,
    pub poincare_odd: Vec<usize>,
    pub even_generators: Vec<EvenGenerator>,
    pub odd_generators: Vec<OddGenerator>,
    pub cs_checks: Vec<CsCheck>,
    pub degrees: Vec<DegreeVerdict>,
}

impl DecompositionReport {
    /// True when every degree factors and every invariant form is closed.
    pub fn verdict(&self) -> bool {
        self.closed && self.degrees.iter().all(|d| d.holds) && self.cs_checks.iter().all(|c| c.holds)
    }
}

/// Invariant forms on `m` for every degree, computed in parallel.
pub fn invariant_basis_with<E: Executor>(pair: &SymmetricPair, exec: &E) -> GradedBasis {
    let degrees = exec.map(pair.m_dim() + 1, |k| ext::pair_invariant_forms(pair, k));
    GradedBasis::from_spanning(SpaceTag::M, pair.m_dim(), degrees)
}

/// Verifies that the invariant forms on `m` are the tensor product of the
/// Chern-Weil subalgebra and the subalgebra generated by `iota^* tau(f)`,
/// all computed over the compact dual.
pub fn full_decomposition<E: Executor>(
    pair: &SymmetricPair,
    name: &str,
    caps: Caps,
    exec: &E,
) -> Result<DecompositionReport, Error> {
    let dual = pair.dual_pair()?;
    let n = dual.m_dim();
    let gu = dual.algebra();

    let total = invariant_basis_with(&dual, exec);
    let closed = total.iter().all(|(_, forms)| {
        forms
            .iter()
            .all(|w| ext::ce_differential(&dual, w).is_ok_and(|d| d.is_zero()))
    });

    // even part
    let even_cap = caps.even_poly_degree.min(n / 2);
    let curvature = standard_curvature(&dual);
    let even_polys: Vec<Result<Vec<SymPoly>, Error>> = exec.map(even_cap, |i| {
        invariant_polynomials(dual.h_adjoint(), i + 1, caps.even_poly_degree)
    });
    let mut even_generators = Vec::new();
    let mut even_spanning: Vec<Vec<AltForm>> = (0..=n).map(|_| Vec::new()).collect();
    for (i, polys) in even_polys.into_iter().enumerate() {
        let k = i + 1;
        let polys = polys?;
        let forms = exec.map(polys.len(), |j| cw_form_with(&curvature, &polys[j]));
        let forms: Vec<AltForm> = forms.into_iter().collect::<Result<_, _>>()?;
        let kept = independent_subset(n, 2 * k, forms);
        for f in &kept {
            even_generators.push(EvenGenerator {
                poly_degree: k,
                form: f.clone(),
            });
        }
        even_spanning[2 * k] = kept;
    }
    let even = close_under_wedge(n, even_spanning);

    // odd part
    let odd_cap = caps.odd_poly_degree.min(n.div_ceil(2));
    let adjoint = Representation::adjoint(gu, SpaceTag::G);
    let mut lower: Vec<Vec<SymPoly>> = alloc::vec![Vec::new()];
    let mut odd_generators = Vec::new();
    let mut cs_checks = Vec::new();
    let mut odd_spanning: Vec<Vec<AltForm>> = (0..=n).map(|_| Vec::new()).collect();
    for k in 1..=odd_cap {
        let fresh = indecomposable_invariants(&adjoint, k, &lower, caps.odd_poly_degree)?;
        let results: Vec<(AltForm, AltForm)> = exec.map(fresh.len(), |j| {
            let t = tau_unchecked(gu, &fresh[j]);
            let pulled = restrict_to_m(&dual, &t);
            (t, pulled)
        });
        let mut candidates = Vec::new();
        for (f, (t, pulled)) in fresh.iter().zip(results) {
            if t.is_zero() || pulled.is_zero() {
                continue;
            }
            let constant = cs_constant(k as u32);
            let holds = cs_form_via_integral(gu, f).is_ok_and(|cs| is_multiple(&cs, &t, &constant));
            cs_checks.push(CsCheck {
                poly_degree: k,
                constant,
                holds,
            });
            candidates.push(pulled);
        }
        let kept = independent_subset(n, 2 * k - 1, candidates);
        for f in &kept {
            odd_generators.push(OddGenerator {
                poly_degree: k,
                primitive_degree: 2 * k - 1,
                form: f.clone(),
            });
        }
        odd_spanning[2 * k - 1] = kept;
        lower.push(invariant_polynomials(&adjoint, k, caps.odd_poly_degree)?);
    }
    let odd = close_under_wedge(n, odd_spanning);

    let even_dims = trimmed(even.dims());
    let odd_dims = trimmed(odd.dims());
    let degrees: Vec<DegreeVerdict> = exec.map(n + 1, |d| {
        let expected: usize = (0..=d).map(|a| even.degree(a).len() * odd.degree(d - a).len()).sum();
        let mut products = Vec::new();
        for a in 0..=d {
            for e in even.degree(a) {
                for o in odd.degree(d - a) {
                    products.push(e.wedge(o).expect("same space"));
                }
            }
        }
        let product_rank = rank_of_forms(n, d, &products);
        let mut with_total = products;
        with_total.extend(total.degree(d).iter().cloned());
        let inside = rank_of_forms(n, d, &with_total) == total.degree(d).len();
        let t = total.degree(d).len();
        DegreeVerdict {
            degree: d,
            total: t,
            expected,
            product_rank,
            holds: t == expected && product_rank == expected && inside,
        }
    });

    let short = degrees.iter().find(|d| d.product_rank < d.total);
    if let Some(d) = short {
        let natural_even = n / 2;
        let natural_odd = n.div_ceil(2);
        if caps.even_poly_degree < natural_even || caps.odd_poly_degree < natural_odd {
            return Err(Error::CapInsufficient {
                degree: d.degree,
                expected: d.total,
                found: d.product_rank,
            });
        }
    }

    Ok(DecompositionReport {
        name: String::from(name),
        g_dim: gu.dim(),
        h_dim: dual.h_dim(),
        m_dim: n,
        caps,
        symmetric: pair.is_symmetric(),
        closed,
        poincare_total: total.dims(),
        poincare_even: even_dims,
        poincare_odd: odd_dims,
        even_generators,
        odd_generators,
        cs_checks,
        degrees,
    })
}

/// Drops trailing zero degrees, keeping the constant term.
fn trimmed(mut dims: Vec<usize>) -> Vec<usize> {
    while dims.len() > 1 && dims.last() == Some(&0) {
        dims.pop();
    }
    dims
}

/// Whether `pi^*` kills every positive-degree form in `even` and is
/// injective on the span of `odd` generators, degree by degree.
pub fn cartan_borel_facts(dual: &SymmetricPair, even: &[AltForm], odd: &[AltForm]) -> Result<(bool, bool), Error> {
    let mut kills = true;
    for w in even.iter().filter(|w| w.degree() > 0) {
        kills &= pi_pullback(dual, w)?.is_zero();
    }
    let mut injective = true;
    let mut by_degree: alloc::collections::BTreeMap<usize, Vec<AltForm>> = Default::default();
    for w in odd {
        by_degree.entry(w.degree()).or_default().push(w.clone());
    }
    for (k, forms) in by_degree {
        let images: Vec<AltForm> = forms.iter().map(|w| pi_pullback(dual, w)).collect::<Result<_, _>>()?;
        injective &= rank_of_forms(dual.algebra().dim(), k, &images) == rank_of_forms(dual.m_dim(), k, &forms);
    }
    Ok((kills, injective))
}
