use invforms_core::catalog;
use invforms_core::ext::act;
use invforms_core::linalg::{rank_and_kernel, to_sparse, Matrix, SparseEchelon};
use invforms_core::multi_index::{MultiIndex, SortedIndex};
use invforms_core::scalar::{int, Scalar, Vector};
use invforms_core::structure::projector_lemma_check;
use invforms_core::{AltForm, Representation, SpaceTag, SymPoly};
use num_traits::Zero;
use proptest::prelude::*;

const N: usize = 5;

fn form(deg: usize) -> impl Strategy<Value = AltForm> {
    let len = MultiIndex::all(N, deg).len();
    prop::collection::vec(-3i64..=3, len).prop_map(move |cs| {
        let terms = MultiIndex::all(N, deg)
            .into_iter()
            .zip(cs)
            .map(|(i, c)| (i.to_vec(), int(c)));
        AltForm::from_terms(deg, SpaceTag::G, N, terms).unwrap()
    })
}

fn poly(deg: usize, n: usize) -> impl Strategy<Value = SymPoly> {
    let len = SortedIndex::all(n, deg).len();
    prop::collection::vec(-3i64..=3, len).prop_map(move |cs| {
        let terms = SortedIndex::all(n, deg).into_iter().zip(cs).map(|(i, c)| (i, int(c)));
        SymPoly::from_terms(deg, SpaceTag::G, n, terms)
    })
}

fn vector(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-4i64..=4, n).prop_map(|v| v.into_iter().map(int).collect())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, cols), rows)
        .prop_map(|m| m.into_iter().map(|r| r.into_iter().map(int).collect()).collect())
}

fn sign_of(p: usize, q: usize) -> Scalar {
    if (p * q).is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn wedge_is_associative(p in 1usize..=2, q in 1usize..=2, a in form(1), seed in 0usize..3) {
        let b = AltForm::basis(&(0..p).map(|i| (i + seed) % N).collect::<Vec<_>>(), SpaceTag::G, N).unwrap();
        let c = AltForm::basis(&(0..q).map(|i| (i + 2 * seed + 1) % N).collect::<Vec<_>>(), SpaceTag::G, N).unwrap();
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn wedge_of_dense_forms_is_associative(a in form(1), b in form(2), c in form(1)) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn wedge_is_graded_commutative(a in form(1), b in form(2), c in form(3)) {
        for (x, y) in [(&a, &b), (&a, &c), (&b, &c), (&a, &a), (&b, &b)] {
            let xy = x.wedge(y).unwrap();
            let yx = y.wedge(x).unwrap();
            prop_assert_eq!(xy, yx.scale(&sign_of(x.degree(), y.degree())));
        }
    }

    #[test]
    fn odd_forms_square_to_zero(a in form(1), c in form(3)) {
        prop_assert!(a.wedge(&a).unwrap().is_zero());
        prop_assert!(c.wedge(&c).unwrap().is_zero() || c.degree() * 2 > N);
    }

    #[test]
    fn action_is_a_derivation(a in form(1), b in form(2), u in vector(3)) {
        let g = catalog::su2();
        let rep = Representation::adjoint(&g, SpaceTag::G);
        let a = AltForm::from_terms(1, SpaceTag::G, 3, (0..3).map(|i| (vec![i], a.value_on(&[i])))).unwrap();
        let b = AltForm::from_terms(2, SpaceTag::G, 3, [(vec![0, 1], b.value_on(&[0, 1])), (vec![1, 2], b.value_on(&[1, 2]))]).unwrap();
        let lhs = act(&rep, &u, &a.wedge(&b).unwrap()).unwrap();
        let rhs = act(&rep, &u, &a).unwrap().wedge(&b).unwrap()
            .add(&a.wedge(&act(&rep, &u, &b).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_is_linear_and_a_representation(u in vector(8), v in vector(8), w in form(1)) {
        let g = catalog::su(3);
        let rep = Representation::adjoint(&g, SpaceTag::G);
        let w = AltForm::from_terms(2, SpaceTag::G, 8, [(vec![0, 7], w.value_on(&[0])), (vec![2, 5], w.value_on(&[1])), (vec![3, 4], int(1))]).unwrap();
        let uv = g.bracket(&u, &v).unwrap();
        let lhs = act(&rep, &uv, &w).unwrap();
        let rhs = act(&rep, &u, &act(&rep, &v, &w).unwrap()).unwrap()
            .sub(&act(&rep, &v, &act(&rep, &u, &w).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bareiss_and_sparse_echelon_agree(rows in matrix(4, 6)) {
        let dense = rank_and_kernel(&Matrix::from_rows(rows.clone()).unwrap());
        let mut ech = SparseEchelon::new(6);
        for r in &rows {
            ech.insert(&to_sparse(r));
        }
        prop_assert_eq!(dense.rank, ech.rank());
        prop_assert_eq!(&dense.pivots, &ech.pivots());
        prop_assert_eq!(&dense.kernel, &ech.kernel());
        for k in &dense.kernel {
            for r in &rows {
                let d: Scalar = r.iter().zip(k).map(|(a, b)| a * b).sum();
                prop_assert!(d.is_zero());
            }
        }
    }

    #[test]
    fn projector_lemma_on_random_subspaces(f1 in matrix(3, 8), f2 in matrix(4, 8)) {
        let w = projector_lemma_check(8, &f1, &f2, &Matrix::identity(8)).unwrap();
        prop_assert!(w.holds);
        prop_assert_eq!(w.image.len() + w.kernel.len(), w.f1_dim);
    }

    #[test]
    fn sym_product_is_commutative(f in poly(1, 3), g in poly(2, 3)) {
        prop_assert_eq!(f.sym_product(&g).unwrap(), g.sym_product(&f).unwrap());
    }

    #[test]
    fn sym_product_is_multiplicative_on_the_diagonal(f in poly(1, 3), g in poly(2, 3), x in vector(3)) {
        let fg = f.sym_product(&g).unwrap();
        let diag = |p: &SymPoly| p.eval(&vec![x.clone(); p.degree()]).unwrap();
        prop_assert_eq!(diag(&fg), diag(&f) * diag(&g));
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(x in vector(8), y in vector(8), z in vector(8)) {
        let g = catalog::sl(3);
        let b = |a: &Vector, c: &Vector| g.bracket(a, c).unwrap();
        let xy = b(&x, &y);
        let yx = b(&y, &x);
        prop_assert!(xy.iter().zip(&yx).all(|(a, c)| (a + c).is_zero()));
        let j1 = b(&x, &b(&y, &z));
        let j2 = b(&y, &b(&z, &x));
        let j3 = b(&z, &b(&x, &y));
        prop_assert!((0..8).all(|i| (&j1[i] + &j2[i] + &j3[i]).is_zero()));
    }

    #[test]
    fn pullback_respects_wedge(a in form(1), b in form(2), images in matrix(N, N)) {
        let pa = a.pullback(&images, SpaceTag::G).unwrap();
        let pb = b.pullback(&images, SpaceTag::G).unwrap();
        let pab = a.wedge(&b).unwrap().pullback(&images, SpaceTag::G).unwrap();
        prop_assert_eq!(pab, pa.wedge(&pb).unwrap());
    }
}
