mod common;

use common::*;
use eucliff::cayley::orthonormal_blade_product;
use eucliff::exterior::wedge_all;
use eucliff::tensor::{
    antisymmetrize, multivector_to_tensor, permutation_symbol, qa_wedge, tensor_product,
    tensor_to_multivector,
};
use eucliff::{
    canonical_reorder, expand_in_basis, geometric_product, left_contraction, reciprocal_basis,
    scalar_product, wedge, Basis, BladeMask, EuclideanMetric, Expansion, Multivector,
};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn mv_strategy() -> impl Strategy<Value = Multivector> {
    (1..=5usize).prop_flat_map(|n| {
        proptest::collection::vec(-1.0..1.0f64, 1 << n)
            .prop_map(move |c| Multivector::from_coeffs(n, c).unwrap())
    })
}

fn mv_pair() -> impl Strategy<Value = (Multivector, Multivector)> {
    (1..=5usize).prop_flat_map(|n| {
        let v = proptest::collection::vec(-1.0..1.0f64, 1 << n);
        (v.clone(), v).prop_map(move |(a, b)| {
            (
                Multivector::from_coeffs(n, a).unwrap(),
                Multivector::from_coeffs(n, b).unwrap(),
            )
        })
    })
}

fn spd(dim: usize) -> impl Strategy<Value = EuclideanMetric> {
    proptest::collection::vec(-1.0..1.0f64, dim * dim).prop_map(move |a| {
        let a = DMatrix::from_vec(dim, dim, a);
        EuclideanMetric::from_matrix(a.transpose() * &a + DMatrix::identity(dim, dim) * 0.1)
            .unwrap()
    })
}

proptest! {
    #[test]
    fn involutions_are_idempotent_and_commute(x in mv_strategy()) {
        prop_assert_eq!(x.grade_involution().grade_involution(), x.clone());
        prop_assert_eq!(x.reversion().reversion(), x.clone());
        prop_assert_eq!(x.grade_involution().reversion(), x.reversion().grade_involution());
    }

    #[test]
    fn wedge_is_associative((x, y) in mv_pair(), seed in any::<u64>()) {
        let z = random_mv(&mut rng(seed), x.dim());
        let lhs = wedge(&wedge(&x, &y).unwrap(), &z).unwrap();
        let rhs = wedge(&x, &wedge(&y, &z).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, 1e-10));
    }

    #[test]
    fn vector_wedge_with_itself_vanishes(n in 1..=6usize, seed in any::<u64>()) {
        let v = random_vector(&mut rng(seed), n);
        prop_assert!(wedge(&v, &v).unwrap().max_abs() <= 1e-15);
    }

    #[test]
    fn vector_square_is_its_norm((n, g, c) in (1..=5usize).prop_flat_map(|n| (Just(n), spd(n), proptest::collection::vec(-1.0..1.0f64, n)))) {
        let v = Multivector::vector(&c).unwrap();
        let vv = geometric_product(&v, &v, &g).unwrap();
        let norm = g.dot(&c, &c);
        prop_assert!(rel_close(vv.scalar_part(), norm, 1e-12));
        prop_assert!(vv.k_part(0).unwrap().approx_eq(&vv, 1e-12));
        prop_assert_eq!(vv.dim(), n);
    }

    #[test]
    fn contraction_by_vector_lowers_grade(n in 2..=5usize, k in 1..=5usize, seed in any::<u64>()) {
        let k = k.min(n);
        let mut r = rng(seed);
        let g = random_spd(&mut r, n);
        let v = random_vector(&mut r, n);
        let x = random_homogeneous(&mut r, n, k);
        let c = left_contraction(&v, &x, &g).unwrap();
        prop_assert!(c.k_part(k - 1).unwrap().approx_eq(&c, 0.0));
    }

    #[test]
    fn reorder_sign_matches_permutation_symbol(perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle()) {
        let indices: Vec<usize> = perm.iter().map(|i| i + 1).collect();
        let (mask, sign) = canonical_reorder(&indices, 5).unwrap();
        prop_assert_eq!(mask, BladeMask::pseudoscalar(5));
        prop_assert_eq!(sign, permutation_symbol(&indices));
    }

    #[test]
    fn orthonormal_blade_rule_matches_bubble_sort(a in 0u32..64, b in 0u32..64) {
        // Sort the concatenated vector word; each swap of distinct vectors
        // flips the sign and equal neighbours square to one.
        let mut word: Vec<usize> = BladeMask(a).indices().chain(BladeMask(b).indices()).collect();
        let mut sign = 1.0;
        for i in 0..word.len() {
            for j in 0..word.len() - 1 - i {
                if word[j] > word[j + 1] {
                    word.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        let mut mask = 0u32;
        for i in word {
            mask ^= 1 << (i - 1);
        }
        let (m, s) = orthonormal_blade_product(BladeMask(a), BladeMask(b));
        prop_assert_eq!(m, BladeMask(mask));
        prop_assert_eq!(s, sign);
    }
}

#[test]
fn tensor_round_trip_grade_three() {
    let mut r = rng(7);
    for _ in 0..50 {
        let x = random_homogeneous(&mut r, 4, 3);
        let t = multivector_to_tensor(&x, 3).unwrap();
        assert!(t.is_antisymmetric());
        assert_eq!(tensor_to_multivector(&t).unwrap(), x);
    }
}

#[test]
fn antisymmetrizer_absorbs_inner_antisymmetrization() {
    let mut r = rng(8);
    for n in 1..=4 {
        for p in 0..=n.min(3) {
            for q in 0..=(4 - p).min(n) {
                let t = multivector_to_tensor(&random_homogeneous(&mut r, n, p), p).unwrap();
                let u = multivector_to_tensor(&random_homogeneous(&mut r, n, q), q).unwrap();
                let inner = antisymmetrize(&tensor_product(&antisymmetrize(&t), &u).unwrap());
                let direct = qa_wedge(&t, &u).unwrap();
                assert!(inner.max_abs_diff(&direct) <= 1e-14, "n={n} p={p} q={q}");
            }
        }
    }
}

/// Orthonormal basis of `g`: columns of `L⁻ᵀ` for `g = L Lᵀ`.
fn orthonormal_basis(g: &EuclideanMetric) -> DMatrix<f64> {
    g.cholesky_factor().transpose().try_inverse().unwrap()
}

#[test]
fn reciprocal_basis_matches_dual_form_construction() {
    let mut r = rng(9);
    for n in 1..=5 {
        for _ in 0..40 {
            let g = random_spd(&mut r, n);
            let basis = random_basis(&mut r, n);
            let b = orthonormal_basis(&g);
            let recip = reciprocal_basis(&basis, &g).unwrap();
            for k in 0..n {
                let eps = basis.dual_form(k);
                let mut expect = vec![0.0; n];
                for j in 0..n {
                    let bj = b.column(j);
                    let weight: f64 = eps.iter().zip(bj.iter()).map(|(e, v)| e * v).sum();
                    for (o, v) in expect.iter_mut().zip(bj.iter()) {
                        *o += weight * v;
                    }
                }
                for (got, want) in recip.vector(k).iter().zip(&expect) {
                    assert!(rel_close(*got, *want, 1e-9), "n={n} k={k}: {got} vs {want}");
                }
            }

            let ortho = Basis::from_matrix(b.clone()).unwrap();
            let self_recip = reciprocal_basis(&ortho, &g).unwrap();
            assert!((self_recip.vectors() - &b).amax() <= 1e-9);
        }
    }
}

/// All index tuples of length `k` over `0..n`.
fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..k).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect()
    })
}

#[test]
fn expansion_matches_ordered_tuple_sum() {
    let mut r = rng(10);
    for n in 1..=3 {
        for _ in 0..20 {
            let g = random_spd(&mut r, n);
            let basis = random_basis(&mut r, n);
            let recip = reciprocal_basis(&basis, &g).unwrap();
            let x = random_mv(&mut r, n);
            let mut sum = Multivector::scalar(n, x.scalar_part()).unwrap();
            let mut factorial = 1.0;
            for k in 1..=n {
                factorial *= k as f64;
                for t in tuples(n, k) {
                    let lower: Vec<_> = t.iter().map(|&j| basis_vector(&basis, j)).collect();
                    let upper: Vec<_> = t.iter().map(|&j| basis_vector(&recip, j)).collect();
                    let c = scalar_product(&x, &wedge_all(n, &upper).unwrap(), &g).unwrap();
                    sum = &sum + &wedge_all(n, &lower).unwrap().scale(c / factorial);
                }
            }
            let fast = expand_in_basis(&x, &basis, &g, Expansion::Contravariant).unwrap();
            assert!(sum.approx_eq(&fast, 1e-9));
            assert!(sum.approx_eq(&x, 1e-9));
        }
    }
}

#[test]
fn scalar_product_of_permuted_blades_carries_the_sign() {
    let g = EuclideanMetric::identity(3).unwrap();
    let e = |i: usize| blade(3, 1 << (i - 1));
    let e21 = wedge(&e(2), &e(1)).unwrap();
    let e12 = wedge(&e(1), &e(2)).unwrap();
    assert_eq!(scalar_product(&e21, &e12, &g).unwrap(), -1.0);
    assert_eq!(scalar_product(&e21, &e21, &g).unwrap(), 1.0);
}
