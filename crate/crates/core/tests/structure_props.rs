use proptest::prelude::*;
use specradius::harness::instances::{index_law_matrix, permuted_block_shift, predictor_left, predictor_right};
use specradius::harness::Seed;
use specradius::indices::{
    has_unitary_part, is_class_sn, nilpotency_index_dense, nilpotency_index_graph, power_norm_index, IndexValue,
    SupportGraph,
};
use specradius::matkernel::{operator_norm, real_part, ComplexMatrix, ToleranceConfig, C64};
use specradius::numrange::is_origin_disc;
use specradius::structures::{
    companion, detect_block_shift, halmos_dilation, is_irreducible_sym_nonneg, jordan_block, sn_matrix,
};
use specradius::tensorlaw::{evaluate_pair, predict_equality_nonneg, TensorConfig};

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

/// `n_A` as the first vanishing boolean power of the support.
fn boolean_index(mask: &[bool], n: usize) -> IndexValue {
    let mut power = mask.to_vec();
    for k in 1..=n {
        if power.iter().all(|&b| !b) {
            return IndexValue::Finite(k - 1);
        }
        power = (0..n * n)
            .map(|ij| (0..n).any(|l| power[(ij / n) * n + l] && mask[l * n + ij % n]))
            .collect();
    }
    IndexValue::Infinite
}

fn pattern(max: usize) -> impl Strategy<Value = (usize, Vec<bool>)> {
    (1..=max).prop_flat_map(|n| (Just(n), prop::collection::vec(prop::bool::weighted(0.3), n * n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn index_laws(seed in any::<u64>()) {
        let c = cfg();
        let (a, nonneg) = index_law_matrix(&mut Seed(seed).rng());
        let n = a.rows();
        let na = nilpotency_index_dense(&a, &c).unwrap();
        prop_assert!(na.is_infinite() || na.finite().unwrap() < n);
        if !a.is_zero() {
            let p = power_norm_index(&a, &c).unwrap();
            prop_assert!(p <= na);
            prop_assert!(p.is_infinite() || (1..n).contains(&p.finite().unwrap()));
        }
        if nonneg {
            prop_assert_eq!(nilpotency_index_graph(&a).unwrap(), na);
        }
    }

    #[test]
    fn graph_index_matches_boolean_powers((n, mask) in pattern(7), weights in prop::collection::vec(0.01..5.0f64, 49)) {
        let b = ComplexMatrix::from_fn(n, n, |i, j| C64::new(if mask[i * n + j] { weights[i * n + j] } else { 0.0 }, 0.0));
        let expected = boolean_index(&mask, n);
        prop_assert_eq!(nilpotency_index_graph(&b).unwrap(), expected);
        prop_assert_eq!(nilpotency_index_dense(&b, &cfg()).unwrap(), expected);
        let g = SupportGraph::from_nonnegative(&b).unwrap();
        prop_assert_eq!(g.has_cycle(), expected.is_infinite());
    }

    #[test]
    fn indices_are_similarity_invariant(seed in any::<u64>(), n in 2..=5usize, s in 0.1..10.0f64) {
        let c = cfg();
        let mut g = Seed(seed).rng();
        let k = g.int(1, n);
        let j = jordan_block(k).unwrap();
        let a = if k < n { j.direct_sum(&g.contraction(n - k).scale_real(g.uniform(0.3, 0.9))) } else { j };
        let b = g.unitary_similarity(&a).scale_real(s);
        prop_assert_eq!(power_norm_index(&a, &c).unwrap(), power_norm_index(&b, &c).unwrap());
        prop_assert_eq!(nilpotency_index_dense(&a, &c).unwrap(), nilpotency_index_dense(&b, &c).unwrap());
    }

    #[test]
    fn halmos_dilation_is_unitary(seed in any::<u64>(), n in 1..=6usize, r in 0.0..1.0f64) {
        let c = cfg();
        let a = Seed(seed).rng().contraction(n).scale_real(r);
        let u = halmos_dilation(&a, &c).unwrap();
        prop_assert!((&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(2 * n)) <= 1e-9);
        prop_assert!((&u * &u.adjoint()).max_abs_diff(&ComplexMatrix::identity(2 * n)) <= 1e-9);
        prop_assert!(u.block(0, 0, n, n) == a);
    }

    #[test]
    fn sn_matrices_are_class_sn(lams in prop::collection::vec((0.0..0.9f64, 0.0..6.3f64), 2..=5)) {
        let c = cfg();
        let lams: Vec<C64> = lams.into_iter().map(|(r, t)| C64::from_polar(r, t)).collect();
        let a = sn_matrix(&lams).unwrap();
        prop_assert!((operator_norm(&a, &c) - 1.0).abs() <= 1e-9);
        prop_assert!(is_class_sn(&a, &c).unwrap());
        prop_assert!(!has_unitary_part(&a, &c).unwrap());
        prop_assert_eq!(power_norm_index(&a, &c).unwrap(), IndexValue::Finite(lams.len() - 1));
    }

    #[test]
    fn companion_last_row_and_index(coeffs in prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 2..=5)) {
        let c = cfg();
        let coeffs: Vec<C64> = coeffs.into_iter().map(|(a, b)| C64::new(a, b)).collect();
        let n = coeffs.len();
        let a = companion(&coeffs).unwrap();
        for j in 0..n {
            prop_assert_eq!(a[(n - 1, j)], -coeffs[n - 1 - j]);
        }
        // The leading shift keeps ‖A^k‖ ≥ 1 and the index is n − 1 or ∞.
        let p = power_norm_index(&a.scale_real(1.0 / operator_norm(&a, &c)), &c).unwrap();
        prop_assert!(p.is_infinite() || p.finite().unwrap() < n);
    }

    #[test]
    fn detection_reconstructs_block_shifts(seed in any::<u64>()) {
        let c = cfg();
        let b = permuted_block_shift(&mut Seed(seed).rng(), 2, 6).unwrap();
        let d = detect_block_shift(&b, &c).unwrap().expect("block shift detected");
        prop_assert!(d.reconstruct().max_abs_diff(&b) == 0.0);
        prop_assert_eq!(d.level_sizes.iter().sum::<usize>(), b.rows());
        let form = d.block_form();
        prop_assert!(d.permutation.conjugate(&b) == form);
        prop_assert!(is_origin_disc(&b, &c).unwrap());
        if b.rows() <= 5 {
            prop_assert_eq!(IndexValue::Finite(d.shift_count()), nilpotency_index_graph(&b).unwrap());
        }
    }

    #[test]
    fn disc_iff_block_shift((n, mask) in pattern(6), weights in prop::collection::vec(0.1..1.0f64, 36)) {
        let c = cfg();
        let b = ComplexMatrix::from_fn(n, n, |i, j| C64::new(if mask[i * n + j] { weights[i * n + j] } else { 0.0 }, 0.0));
        prop_assume!(is_irreducible_sym_nonneg(&real_part(&b).unwrap(), &c).unwrap());
        let detected = detect_block_shift(&b, &c).unwrap().is_some();
        prop_assert_eq!(is_origin_disc(&b, &c).unwrap(), detected);
    }

    #[test]
    fn predictor_agrees_with_direct_evaluation(seed in any::<u64>()) {
        let cfg = TensorConfig::default().with_equality_rel_slack(1e-5);
        let mut g = Seed(seed).rng();
        let (a, _) = predictor_left(&mut g).unwrap();
        let (b, _) = predictor_right(&mut g).unwrap();
        let v = evaluate_pair(&a, &b, &cfg).unwrap();
        prop_assert_eq!(predict_equality_nonneg(&a, &b, &cfg.tol).unwrap(), v.equality_with_bound_a);
    }
}
