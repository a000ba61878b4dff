//! Cross-checks of the fast routines against direct brute-force expansions.

use invforms_core::catalog;
use invforms_core::chern_simons::{cs_constant, cs_form_via_integral, is_multiple, rank, tau};
use invforms_core::chern_weil::{cw_form, standard_curvature};
use invforms_core::ext::{self, act, h_action, invariant_forms, pair_invariant_forms, poincare_polynomial};
use invforms_core::linalg::{rank_and_kernel, Matrix};
use invforms_core::multi_index::MultiIndex;
use invforms_core::poly::{invariant_polynomials, killing_poly};
use invforms_core::scalar::{int, unit_vector, zero_vector, Scalar, Vector};
use invforms_core::{AltForm, LieAlgebra, Representation, SpaceTag, SymPoly, SymmetricPair};
use num_traits::{One, Zero};

fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i32)>) {
        let n = used.len();
        if prefix.len() == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn neg(v: &[Scalar]) -> Vector {
    v.iter().map(|x| -x).collect()
}

/// Killing form from the structure constants by an explicit triple sum.
fn killing_oracle(g: &LieAlgebra) -> Matrix {
    let n = g.dim();
    let mut b = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut t = Scalar::zero();
            for k in 0..n {
                // coefficient of e_k in [e_i, [e_j, e_k]]
                let inner = g.bracket(&unit_vector(n, j), &unit_vector(n, k)).unwrap();
                let outer = g.bracket(&unit_vector(n, i), &inner).unwrap();
                t += &outer[k];
            }
            b[(i, j)] = t;
        }
    }
    b
}

#[test]
fn killing_form_matches_oracle() {
    for name in catalog::ALGEBRAS {
        let g = catalog::algebra(name).unwrap();
        assert_eq!(g.killing_form(), killing_oracle(&g), "{name}");
    }
}

#[test]
fn killing_form_values() {
    let sl2 = catalog::sl(2);
    let b = sl2.killing_form();
    assert_eq!(b[(2, 2)], int(8));
    assert_eq!(b[(0, 1)], int(4));
    assert_eq!(b[(0, 0)], int(0));
    let su2 = catalog::su2();
    let b = su2.killing_form();
    assert_eq!(b[(0, 0)], int(-2));
    assert_eq!(b[(0, 1)], int(0));
}

#[test]
fn killing_form_is_ad_invariant() {
    for name in catalog::ALGEBRAS {
        let g = catalog::algebra(name).unwrap();
        let b = g.killing_form();
        let n = g.dim();
        let form = |x: &[Scalar], y: &[Scalar]| invforms_core::linalg::dot(x, &b.mul_vec(y).unwrap());
        for u in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let (eu, ei, ej) = (unit_vector(n, u), unit_vector(n, i), unit_vector(n, j));
                    let lhs = form(&g.bracket(&eu, &ei).unwrap(), &ej) + form(&ei, &g.bracket(&eu, &ej).unwrap());
                    assert!(lhs.is_zero(), "{name}");
                }
            }
        }
    }
}

#[test]
fn brackets_on_standard_bases() {
    let sl2 = catalog::sl(2);
    let (e, f, h) = (unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2));
    assert_eq!(sl2.bracket(&e, &f).unwrap(), h);
    assert_eq!(
        sl2.bracket(&h, &e).unwrap(),
        e.iter().map(|x| x * int(2)).collect::<Vector>()
    );
    assert_eq!(
        sl2.bracket(&h, &f).unwrap(),
        f.iter().map(|x| x * int(-2)).collect::<Vector>()
    );
    let su2 = catalog::su2();
    let (x, y, z) = (unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2));
    assert_eq!(su2.bracket(&x, &y).unwrap(), z);
    assert_eq!(su2.bracket(&y, &x).unwrap(), neg(&z));
    let v = vec![int(1), int(-2), int(3)];
    assert_eq!(su2.bracket(&v, &v).unwrap(), zero_vector(3));
}

#[test]
fn sl2_cartan_eigenspaces() {
    let pair = catalog::pair("sl2:cartan").unwrap();
    assert_eq!(pair.h_basis(), [vec![int(1), int(-1), int(0)]]);
    assert_eq!(rank_and_kernel(&Matrix::from_columns(3, pair.m_basis())).rank, 2);
    let mut all = pair.m_basis().to_vec();
    all.push(vec![int(0), int(0), int(1)]);
    all.push(vec![int(1), int(1), int(0)]);
    assert_eq!(invforms_core::linalg::rank_of(&all), 2);
}

#[test]
fn pair_dimensions() {
    for (name, h, m) in [
        ("sl2:cartan", 1, 2),
        ("sl3:cartan", 3, 5),
        ("su3:ad-diag(1,1,-1)", 4, 4),
        ("group:su2", 3, 3),
        ("group:su3", 8, 8),
        ("sp4:cartan", 4, 6),
    ] {
        let pair = catalog::pair(name).unwrap();
        assert_eq!((pair.h_dim(), pair.m_dim()), (h, m), "{name}");
    }
}

#[test]
fn compact_duals_are_negative_definite() {
    for p in catalog::PAIRS {
        let pair = catalog::pair(p.name).unwrap();
        let dual = pair.compact_dual().unwrap();
        assert!(dual.killing_form().is_negative_definite(), "{}", p.name);
        let minors = dual.killing_form().leading_principal_minors().unwrap();
        for (i, d) in minors.iter().enumerate() {
            assert_eq!(d > &Scalar::zero(), i % 2 == 1, "{}", p.name);
        }
    }
    let sl3 = catalog::pair("sl3:cartan").unwrap().compact_dual().unwrap();
    assert_eq!((sl3.dim(), rank(&sl3)), (8, 2));
}

#[test]
fn twisting_twice_restores_structure_constants() {
    for name in ["sl2:cartan", "sl3:cartan", "sp4:cartan"] {
        let pair = catalog::pair(name).unwrap();
        let twisted = pair.sign_twist().unwrap();
        let back = SymmetricPair::cartan_decompose(&twisted, pair.dual_pair().unwrap().sigma())
            .unwrap()
            .sign_twist()
            .unwrap();
        assert_eq!(back.brackets(), pair.rebase().unwrap().brackets(), "{name}");
    }
}

/// `(a ^ b)(e_J) = 1 / (p! q!) sum_S sign a(e_S..) b(e_S..)`.
fn wedge_oracle(a: &AltForm, b: &AltForm) -> AltForm {
    let (p, q) = (a.degree(), b.degree());
    let n = a.dim();
    let norm =
        Scalar::from_integer(invforms_core::scalar::factorial(p as u32) * invforms_core::scalar::factorial(q as u32));
    let perms = permutations(p + q);
    let mut terms = Vec::new();
    for idx in MultiIndex::all(n, p + q) {
        let items = idx.to_vec();
        let mut acc = Scalar::zero();
        for (perm, sign) in &perms {
            let args: Vec<usize> = perm.iter().map(|&i| items[i]).collect();
            let v = a.value_on(&args[..p]) * b.value_on(&args[p..]);
            acc += if *sign > 0 { v } else { -v };
        }
        terms.push((items, acc / &norm));
    }
    AltForm::from_terms(p + q, a.tag(), n, terms).unwrap()
}

fn sample_form(deg: usize, n: usize, seed: i64) -> AltForm {
    let terms = MultiIndex::all(n, deg)
        .into_iter()
        .enumerate()
        .map(|(i, idx)| (idx.to_vec(), int(((i as i64 * 7 + seed * 3) % 5) - 2)));
    AltForm::from_terms(deg, SpaceTag::G, n, terms).unwrap()
}

#[test]
fn wedge_matches_alternation_oracle() {
    for (p, q) in [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3)] {
        let a = sample_form(p, 5, 1);
        let b = sample_form(q, 5, 2);
        assert_eq!(a.wedge(&b).unwrap(), wedge_oracle(&a, &b), "{p} {q}");
    }
}

/// `(u . w)(e_J) = - sum_i w(.., u e_{j_i}, ..)` evaluated densely.
fn action_oracle(matrix: &Matrix, w: &AltForm) -> AltForm {
    let n = w.dim();
    let k = w.degree();
    let mut terms = Vec::new();
    for idx in MultiIndex::all(n, k) {
        let items = idx.to_vec();
        let mut acc = Scalar::zero();
        for i in 0..k {
            let args: Vec<Vector> = items
                .iter()
                .enumerate()
                .map(|(p, &j)| {
                    if p == i {
                        matrix.mul_vec(&unit_vector(n, j)).unwrap()
                    } else {
                        unit_vector(n, j)
                    }
                })
                .collect();
            acc -= w.eval(&args).unwrap();
        }
        terms.push((items, acc));
    }
    AltForm::from_terms(k, w.tag(), n, terms).unwrap()
}

#[test]
fn action_matches_oracle() {
    let g = catalog::su(3);
    let rep = Representation::adjoint(&g, SpaceTag::G);
    for k in 1..=3 {
        let w = sample_form(k, 8, k as i64);
        for u in [0, 3, 7] {
            let e = unit_vector(8, u);
            assert_eq!(act(&rep, &e, &w).unwrap(), action_oracle(rep.matrix(u), &w));
        }
    }
    let pair = catalog::pair("su3:ad-diag(1,1,-1)").unwrap();
    let w = AltForm::from_terms(2, SpaceTag::M, 4, [(vec![0, 1], int(1)), (vec![1, 3], int(-2))]).unwrap();
    for u in pair.h_basis() {
        let coords = &pair.split_coordinates(u)[..pair.h_dim()];
        let m = pair.isotropy().matrix_of(coords);
        assert_eq!(h_action(&pair, u, &w).unwrap(), action_oracle(&m, &w));
    }
}

/// Dense invariance system solved by Bareiss elimination.
fn invariant_dim_oracle(rep: &Representation, k: usize) -> usize {
    let n = rep.dim();
    let basis = MultiIndex::all(n, k);
    let mut rows = Vec::new();
    for u in 0..rep.acting_dim() {
        let images: Vec<AltForm> = basis
            .iter()
            .map(|idx| {
                let w = AltForm::from_terms(k, rep.tag(), n, [(idx.to_vec(), Scalar::one())]).unwrap();
                action_oracle(rep.matrix(u), &w)
            })
            .collect();
        for out in &basis {
            rows.push(images.iter().map(|w| w.coeff(*out)).collect::<Vector>());
        }
    }
    if rows.is_empty() {
        return basis.len();
    }
    rank_and_kernel(&Matrix::from_rows(rows).unwrap()).kernel.len()
}

#[test]
fn invariant_form_dimensions_match_dense_oracle() {
    let su2 = Representation::adjoint(&catalog::su2(), SpaceTag::G);
    for k in 0..=3 {
        assert_eq!(invariant_forms(&su2, k).len(), invariant_dim_oracle(&su2, k), "su2 {k}");
    }
    assert_eq!(invariant_forms(&su2, 3).len(), 1);
    let sl2 = catalog::pair("sl2:cartan").unwrap();
    assert_eq!(
        pair_invariant_forms(&sl2, 1).len(),
        invariant_dim_oracle(sl2.isotropy(), 1)
    );
    assert_eq!(pair_invariant_forms(&sl2, 1).len(), 0);
    assert_eq!(pair_invariant_forms(&sl2, 2).len(), 1);
    let cp2 = catalog::pair("su3:ad-diag(1,1,-1)").unwrap();
    for k in 0..=4 {
        assert_eq!(
            pair_invariant_forms(&cp2, k).len(),
            invariant_dim_oracle(cp2.isotropy(), k),
            "cp2 {k}"
        );
    }
}

#[test]
fn poincare_polynomials_of_catalog_pairs() {
    let expected: &[(&str, &[usize])] = &[
        ("sl2:cartan", &[1, 0, 1]),
        ("sl3:cartan", &[1, 0, 0, 0, 0, 1]),
        ("su3:ad-diag(1,1,-1)", &[1, 0, 1, 0, 1]),
        ("group:su2", &[1, 0, 0, 1]),
        ("so(3,1):cartan", &[1, 0, 0, 1]),
        ("sp4:cartan", &[1, 0, 1, 0, 1, 0, 1]),
        ("su3:neg-transpose", &[1, 0, 0, 0, 0, 1]),
    ];
    for (name, dims) in expected {
        let pair = catalog::pair(name).unwrap();
        let p = poincare_polynomial(&pair);
        assert_eq!(&p[..], *dims, "{name}");
        assert!(p.iter().eq(p.iter().rev()), "{name} palindromic");
    }
}

#[test]
fn invariant_forms_are_annihilated() {
    for name in ["sl3:cartan", "su3:ad-diag(1,1,-1)", "group:su2"] {
        let pair = catalog::pair(name).unwrap();
        for k in 0..=pair.m_dim() {
            for w in pair_invariant_forms(&pair, k) {
                for u in pair.h_basis() {
                    assert!(h_action(&pair, u, &w).unwrap().is_zero(), "{name} {k}");
                }
            }
        }
    }
}

/// `tau(f)` by the full sum over `S_{2k-1}`.
fn tau_oracle(g: &LieAlgebra, f: &SymPoly) -> AltForm {
    let k = f.degree();
    let n = g.dim();
    let deg = 2 * k - 1;
    let perms = permutations(deg);
    let mut terms = Vec::new();
    for idx in MultiIndex::all(n, deg) {
        let items = idx.to_vec();
        let mut acc = Scalar::zero();
        for (perm, sign) in &perms {
            let v: Vec<usize> = perm.iter().map(|&i| items[i]).collect();
            let mut args = vec![unit_vector(n, v[0])];
            for p in 0..k - 1 {
                args.push(
                    g.bracket(&unit_vector(n, v[1 + 2 * p]), &unit_vector(n, v[2 + 2 * p]))
                        .unwrap(),
                );
            }
            let x = f.eval(&args).unwrap();
            acc += if *sign > 0 { x } else { -x };
        }
        terms.push((items, acc));
    }
    AltForm::from_terms(deg, SpaceTag::G, n, terms).unwrap()
}

#[test]
fn tau_matches_oracle() {
    let su2 = catalog::su2();
    let t = tau(&su2, &killing_poly(&su2)).unwrap();
    assert_eq!(t, tau_oracle(&su2, &killing_poly(&su2)));
    assert_eq!(t.value_on(&[0, 1, 2]), int(-12));
    let su3 = catalog::su_matrix(3);
    let cubic = su3.trace_power(3);
    assert_eq!(tau(su3.algebra(), &cubic).unwrap(), tau_oracle(su3.algebra(), &cubic));
}

#[test]
fn tau_of_killing_square_vanishes() {
    for g in [catalog::su2(), catalog::su(3)] {
        let k = killing_poly(&g);
        let k2 = k.sym_product(&k).unwrap();
        assert!(tau(&g, &k2).unwrap().is_zero());
        assert!(!tau(&g, &k).unwrap().is_zero());
    }
}

#[test]
fn integral_route_matches_constant() {
    let su2 = catalog::su2();
    let k = killing_poly(&su2);
    let cs = cs_form_via_integral(&su2, &k).unwrap();
    assert_eq!(cs.value_on(&[0, 1, 2]), int(-2));
    let su3 = catalog::su_matrix(3);
    let g = su3.algebra();
    let kappa = killing_poly(g);
    assert!(is_multiple(
        &cs_form_via_integral(g, &kappa).unwrap(),
        &tau(g, &kappa).unwrap(),
        &cs_constant(2)
    ));
    let cubic = su3.trace_power(3);
    assert!(is_multiple(
        &cs_form_via_integral(g, &cubic).unwrap(),
        &tau(g, &cubic).unwrap(),
        &cs_constant(3)
    ));
    let k2 = kappa.sym_product(&kappa).unwrap();
    assert!(tau(g, &k2).unwrap().is_zero());
}

/// `CW_f` by the full sum over `S_{2k}`.
fn cw_oracle(pair: &SymmetricPair, f: &SymPoly) -> AltForm {
    let k = f.degree();
    let n = pair.m_dim();
    let r = standard_curvature(pair);
    let perms = permutations(2 * k);
    let mut terms = Vec::new();
    for idx in MultiIndex::all(n, 2 * k) {
        let items = idx.to_vec();
        let mut acc = Scalar::zero();
        for (perm, sign) in &perms {
            let v: Vec<usize> = perm.iter().map(|&i| items[i]).collect();
            let args: Vec<Vector> = (0..k).map(|p| r.get_dense(v[2 * p], v[2 * p + 1])).collect();
            let x = f.eval(&args).unwrap();
            acc += if *sign > 0 { x } else { -x };
        }
        terms.push((items, acc));
    }
    AltForm::from_terms(2 * k, SpaceTag::M, n, terms).unwrap()
}

#[test]
fn chern_weil_matches_oracle() {
    for (name, k) in [
        ("sl2:cartan", 1),
        ("su3:ad-diag(1,1,-1)", 1),
        ("su3:ad-diag(1,1,-1)", 2),
        ("sp4:cartan", 2),
    ] {
        let pair = catalog::pair(name).unwrap();
        for f in invariant_polynomials(pair.h_adjoint(), k, 4).unwrap() {
            let cw = cw_form(&pair, &f).unwrap();
            assert_eq!(cw, cw_oracle(&pair, &f), "{name} {k}");
            let inv = pair_invariant_forms(&pair, 2 * k);
            assert_eq!(
                ext::rank_of_forms(pair.m_dim(), 2 * k, &[inv.clone(), vec![cw]].concat()),
                inv.len()
            );
        }
    }
}

#[test]
fn sl2_curvature_value() {
    // m basis (h, e + f) after normalization: R(h, e + f) = 2 (f - e)
    let pair = catalog::pair("sl2:cartan").unwrap();
    let r = standard_curvature(&pair);
    let h = vec![int(0), int(0), int(1)];
    let epf = vec![int(1), int(1), int(0)];
    let mc = |v: &Vector| pair.m_part(v);
    let (a, b) = (mc(&h), mc(&epf));
    let mut value = zero_vector(pair.h_dim());
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            for (k, x) in r.get(i, j) {
                value[k] += ai * bj * x;
            }
        }
    }
    assert_eq!(pair.h_vector(&value), vec![int(-2), int(2), int(0)]);
}

#[test]
fn chern_simons_theorem_on_listed_algebras() {
    let mut algebras = vec![catalog::su2(), catalog::algebra("su2+su2").unwrap(), catalog::su(3)];
    for name in ["sl2:cartan", "sl3:cartan"] {
        algebras.push(catalog::pair(name).unwrap().compact_dual().unwrap());
    }
    for g in &algebras {
        let rep = Representation::adjoint(g, SpaceTag::G);
        let mut lower: Vec<SymPoly> = Vec::new();
        for k in 1..=4 {
            let polys = invariant_polynomials(&rep, k, 4).unwrap();
            for f in &polys {
                let t = tau(g, f).unwrap();
                assert!(is_multiple(
                    &cs_form_via_integral(g, f).unwrap(),
                    &t,
                    &cs_constant(k as u32)
                ));
                assert!(invforms_core::chern_simons::is_primitive(g, &t).unwrap());
            }
            for a in &lower {
                for b in &polys {
                    if a.degree() + b.degree() <= 4 {
                        assert!(tau(g, &a.sym_product(b).unwrap()).unwrap().is_zero());
                    }
                }
            }
            lower.extend(polys);
        }
    }
}
