use std::f64::consts::PI;

use crate::error::Result;
use crate::indices::{
    has_unitary_part, is_class_sn, nilpotency_index_dense, nilpotency_index_graph, power_norm_index, IndexValue,
    SupportGraph,
};
use crate::matkernel::{
    hermitian_eig, mat_power, operator_norm, real_part, spectral_radius, tensor_product, ComplexMatrix,
    ToleranceConfig, C64, ONE, ZERO,
};
use crate::numrange::{boundary_points, is_origin_disc, numerical_radius, support_oscillation};
use crate::report::VerificationReport;
use crate::structures::{
    companion, detect_block_shift, example_3_4 as example_3_4_matrices, halmos_dilation, jordan_block,
    prop_2_14_remark, prop_2_14_scale, thm_2_13_counterexample,
};
use crate::tensorlaw::{
    evaluate_pair, predict_equality_nonneg, theorem_2_10_outcome, theorem_2_5_outcome, witness_vector, TensorConfig,
};

use super::instances::{
    bidiagonal_pair, index_law_matrix, jordan_bound_instance, permuted_block_shift,
    permuted_block_shift_with_levels, power_norm_one, predictor_left, predictor_right,
};
use super::Gen;

const SLACK: f64 = 1e-7;

fn cos_pi_over(d: usize) -> f64 {
    (PI / d as f64).cos()
}

fn unit(a: &ComplexMatrix, cfg: &ToleranceConfig) -> ComplexMatrix {
    a.scale_real(1.0 / operator_norm(a, cfg))
}

/// `w(A⊗B)` under the configured size cap.
fn tensor_radius(a: &ComplexMatrix, b: &ComplexMatrix, cfg: &TensorConfig) -> Result<f64> {
    cfg.check_size(a.rows(), b.rows())?;
    numerical_radius(&tensor_product(a, b)?, &cfg.tol)
}

fn equal_rel(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}

/// `w(A⊗B) = ‖A‖w(B)` at the configured relative slack.
fn tensor_equality(a: &ComplexMatrix, b: &ComplexMatrix, cfg: &TensorConfig) -> Result<(bool, f64, f64)> {
    let v = evaluate_pair(a, b, cfg)?;
    Ok((v.equality_with_bound_a, v.w_tensor, v.bound_a))
}

/// Pattern oracle: `n_A` from boolean powers of the support.
fn boolean_nilpotency(a: &ComplexMatrix) -> IndexValue {
    let n = a.rows();
    let base: Vec<bool> = a.as_slice().iter().map(|z| z.norm() > 0.0).collect();
    let mut power = base.clone();
    for k in 1..=n {
        if power.iter().all(|&b| !b) {
            return IndexValue::Finite(k - 1);
        }
        let mut next = vec![false; n * n];
        for i in 0..n {
            for l in 0..n {
                if power[i * n + l] {
                    for j in 0..n {
                        next[i * n + j] |= base[l * n + j];
                    }
                }
            }
        }
        power = next;
    }
    IndexValue::Infinite
}

pub(super) fn prop_1_1(g: &mut Gen, _trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    let (n, m) = (g.int(1, 4), g.int(1, 4));
    let a = g.ginibre(n, n).scale_real(g.uniform(0.2, 3.0));
    let b = g.ginibre(m, m).scale_real(g.uniform(0.2, 3.0));
    let v = evaluate_pair(&a, &b, cfg)?;
    let (na, nb) = (operator_norm(&a, tol), operator_norm(&b, tol));
    let norm_tensor = operator_norm(&tensor_product(&a, &b)?, tol);
    let upper_ok = v.w_tensor <= v.bound_a.min(v.bound_b) + SLACK * v.bound_a.max(1.0);
    let lower_ok = v.w_tensor >= v.lower - SLACK * v.lower.max(1.0);
    let norm_ok = equal_rel(norm_tensor, na * nb, SLACK);

    let c = unit(&a, tol);
    let u = halmos_dilation(&c, tol)?;
    let unitarity = (&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(2 * n));
    let compression = u.block(0, 0, n, n) == c;
    Ok(VerificationReport::new("prop_1_1")
        .matrix("A", &a)
        .matrix("B", &b)
        .quantity("verdict", &v)
        .quantity("norm_tensor", norm_tensor)
        .quantity("norm_product", na * nb)
        .quantity("dilation_unitarity_error", unitarity)
        .quantity("dilation_compresses", compression)
        .tolerance("slack", SLACK)
        .verdict(upper_ok && lower_ok && norm_ok && unitarity <= 1e-9 && compression))
}

pub(super) fn prop_1_2(g: &mut Gen, trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    let (a, family) = match trial % 4 {
        0 => {
            let n = g.int(2, 5);
            let s = g.sn_matrix(n, 0.9);
            (g.unitary_similarity(&s).scale(g.phase() * g.uniform(0.2, 3.0)), "sn_multiple")
        }
        1 => {
            let n = g.int(2, 5);
            (g.ginibre(n, n), "ginibre")
        }
        2 => {
            let n = g.int(2, 5);
            let r = g.int(1, n - 1);
            let c = g.contraction(n - r).scale_real(g.uniform(0.0, 0.9));
            let u = g.unitary(r).direct_sum(&c);
            (g.unitary_similarity(&u), "unitary_part")
        }
        _ => {
            let n = g.int(2, 5);
            let a = if g.coin(0.5) { g.sn_matrix(n, 0.8) } else { g.jordan_plus_small(n - 2, 1, 0.9) };
            (g.unitary_similarity(&a), "cnu")
        }
    };
    let n = a.rows();
    let p = power_norm_index(&a, tol)?;
    let range_ok = p.is_infinite() || p.finite().is_some_and(|k| (1..n).contains(&k));
    let hat = unit(&a, tol);
    let sn = is_class_sn(&hat, tol)?;
    let sn_ok = (p == IndexValue::Finite(n - 1)) == sn;
    let unitary_part = has_unitary_part(&hat, tol)?;
    let w_one = (numerical_radius(&hat, tol)? - 1.0).abs() <= SLACK;
    let loop_ok = unitary_part == p.is_infinite() && unitary_part == w_one;
    Ok(VerificationReport::new("prop_1_2")
        .matrix("A", &a)
        .input("family", family)
        .quantity("p_A", p)
        .quantity("is_class_sn", sn)
        .quantity("has_unitary_part", unitary_part)
        .quantity("w_is_one", w_one)
        .config(tol)
        .verdict(range_ok && sn_ok && loop_ok))
}

pub(super) fn prop_1_3(g: &mut Gen, trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    let n = g.int(2, 6);
    let (a, expected) = match trial % 3 {
        0 => (g.ginibre(n, n), IndexValue::Infinite),
        1 => {
            let s = g.strictly_upper(n);
            (g.unitary_similarity(&s), IndexValue::Finite(n - 1))
        }
        _ => {
            let k = g.int(1, n);
            let j = jordan_block(k)?;
            let a = if k < n { j.direct_sum(&ComplexMatrix::zeros(n - k, n - k)) } else { j };
            (g.unitary_similarity(&a), IndexValue::Finite(k - 1))
        }
    };
    let na = nilpotency_index_dense(&a, tol)?;
    let range_ok = na.is_infinite() || na.finite().is_some_and(|k| k < n);
    let nonzero = !a.is_zero();
    let p_ok = !nonzero || power_norm_index(&a, tol)? <= na;
    let (pattern, _) = index_law_matrix(g);
    let agree = !pattern.is_nonnegative(0.0)
        || nilpotency_index_graph(&pattern)? == nilpotency_index_dense(&pattern, tol)?;
    Ok(VerificationReport::new("prop_1_3")
        .matrix("A", &a)
        .matrix("pattern", &pattern)
        .quantity("n_A", na)
        .quantity("expected_n_A", expected)
        .quantity("graph_dense_agree", agree)
        .config(tol)
        .verdict(range_ok && na == expected && p_ok && agree))
}

pub(super) fn lemma_2_1(g: &mut Gen, _trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let n = g.int(1, 3);
    let a = if n >= 2 && g.coin(0.5) {
        let c = g.contraction(n - 1).scale_real(g.uniform(0.0, 1.0));
        let u = g.unitary(1).direct_sum(&c);
        g.unitary_similarity(&u)
    } else {
        g.unitary(n)
    }
    .scale_real(g.uniform(0.2, 3.0));
    let m = g.int(1, 4);
    let b = g.ginibre(m, m);
    let p = power_norm_index(&a, &cfg.tol)?;
    let v = evaluate_pair(&a, &b, cfg)?;
    Ok(VerificationReport::new("lemma_2_1")
        .matrix("A", &a)
        .matrix("B", &b)
        .quantity("p_A", p)
        .quantity("verdict", &v)
        .verdict(p.is_infinite() && equal_rel(v.w_tensor, v.bound_a, SLACK)))
}

pub(super) fn thm_2_2(g: &mut Gen, trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    let k = g.int(1, 3);
    let a = {
        let c_size = g.int(0, 2);
        let j = g.jordan_plus_small(k, c_size, 0.9);
        g.unitary_similarity(&j)
    };
    let constructed_equality = trial.is_multiple_of(2);
    let b = if constructed_equality {
        let m = g.int(2, 4);
        let levels = g.int(2, (k + 1).min(m));
        let sizes = g.composition(m, levels);
        let shift = g.complex_block_shift(&sizes);
        g.permutation(m).conjugate(&shift)
    } else {
        let m = g.int(2, 4);
        let mut b = g.ginibre(m, m);
        b[(0, 0)] += g.phase() * 2.0;
        b
    };
    let (equality, w_tensor, bound) = tensor_equality(&a, &b, cfg)?;
    let unitary_part = has_unitary_part(&a, tol)?;
    let disc = is_origin_disc(&b, tol)?;
    let implication = !equality || unitary_part || disc;
    Ok(VerificationReport::new("thm_2_2")
        .matrix("A", &a)
        .matrix("B", &b)
        .input("constructed_equality", constructed_equality)
        .quantity("equality", equality)
        .quantity("w_tensor", w_tensor)
        .quantity("bound_a", bound)
        .quantity("has_unitary_part", unitary_part)
        .quantity("is_origin_disc", disc)
        .config(tol)
        .verdict(implication && equality == constructed_equality && !unitary_part))
}

pub(super) fn thm_2_5(g: &mut Gen, trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    let m = g.int(1, 5);
    let (a, family) = match trial % 4 {
        0 => {
            let j = jordan_block(g.int(2, 5))?;
            (g.unitary_similarity(&j), "jordan")
        }
        1 => {
            let n = g.int(1, 3);
            (g.unitary(n), "unitary")
        }
        2 => {
            let k = g.int(1, 3);
            let c_size = g.int(0, 1);
            let j = g.jordan_plus_small(k, c_size, 0.9);
            (g.unitary_similarity(&j), "jordan_sum")
        }
        _ => loop {
            let n = g.int(2, 3);
            let c = g.contraction(n);
            let pn = operator_norm(&mat_power(&c, m.saturating_sub(1))?, tol);
            if m <= 2 || pn <= 0.95 {
                break (c, "ginibre");
            }
        },
    };
    let a = unit(&a, tol);
    let o = theorem_2_5_outcome(&a, m, cfg)?;
    Ok(VerificationReport::new("thm_2_5")
        .matrix("A", &a)
        .input("m", m)
        .input("family", family)
        .quantity("outcome", &o)
        .config(tol)
        .verdict(o.equivalence_holds()))
}

pub(super) fn prop_2_8(_g: &mut Gen, trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let (n, m) = (2 + trial % 5, 2 + (trial / 5) % 5);
    let w = tensor_radius(&jordan_block(n)?, &jordan_block(m)?, cfg)?;
    let expected = cos_pi_over(n.min(m) + 1);
    Ok(VerificationReport::new("prop_2_8")
        .input("n", n)
        .input("m", m)
        .quantity("w_tensor", w)
        .quantity("expected", expected)
        .tolerance("slack", SLACK)
        .verdict((w - expected).abs() <= SLACK))
}

/// Monic polynomial coefficients `a_1…a_n` from its roots.
fn coefficients_from_roots(roots: &[C64]) -> Vec<C64> {
    let mut c = vec![ONE];
    for &r in roots {
        let mut next = vec![ZERO; c.len() + 1];
        for (i, &ci) in c.iter().enumerate() {
            next[i] += ci;
            next[i + 1] -= ci * r;
        }
        c = next;
    }
    c.remove(0);
    c
}

pub(super) fn prop_2_9(g: &mut Gen, trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    let n = g.int(2, 5);
    let mut coeffs = vec![ZERO; n];
    let family = match trial % 5 {
        0 => "jordan",
        1 => {
            coeffs[n - 1] = -g.phase();
            "unitary"
        }
        2 => {
            for c in coeffs.iter_mut() {
                *c = g.gaussian() * 0.7;
            }
            "generic"
        }
        3 => {
            let r = if g.coin(0.5) { g.uniform(0.2, 0.8) } else { g.uniform(1.25, 3.0) };
            coeffs[n - 1] = -g.phase() * r;
            "weighted_cycle"
        }
        _ => {
            // [aω^j] ⊕ S_{n−1} with eigenvalues ω^k / conj(a), k ≠ j.
            let a = g.phase() * g.uniform(1.2, 2.0);
            let j = g.int(0, n - 1);
            let omega = |k: usize| C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
            let roots: Vec<C64> =
                (0..n).map(|k| if k == j { a * omega(k) } else { omega(k) / a.conj() }).collect();
            coeffs = coefficients_from_roots(&roots);
            "rank_one_defect"
        }
    };
    let a = companion(&coeffs)?;
    let (equality, w_tensor, bound) = tensor_equality(&a, &a, cfg)?;
    let p = power_norm_index(&a, tol)?;
    let na = nilpotency_index_dense(&a, tol)?;
    let indices_ok = p == na && (p.is_infinite() || p == IndexValue::Finite(n - 1));
    Ok(VerificationReport::new("prop_2_9")
        .matrix("A", &a)
        .input("family", family)
        .quantity("equality", equality)
        .quantity("w_tensor", w_tensor)
        .quantity("bound", bound)
        .quantity("p_A", p)
        .quantity("n_A", na)
        .config(tol)
        .verdict(equality == indices_ok))
}

pub(super) fn thm_2_10(g: &mut Gen, trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    let inst = jordan_bound_instance(g, trial.is_multiple_of(2))?;
    let o = theorem_2_10_outcome(&inst.a, tol)?;
    let expected_flag = inst.w_c <= inst.bound + SLACK;
    Ok(VerificationReport::new("thm_2_10")
        .matrix("A", &inst.a)
        .input("k", inst.k)
        .quantity("outcome", &o)
        .quantity("w_C", inst.w_c)
        .config(tol)
        .verdict(o.k == inst.k && o.w >= o.bound - SLACK && o.equality == expected_flag))
}

pub(super) fn lemma_2_11(g: &mut Gen, _trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let (a, b) = bidiagonal_pair(g);
    let (wa, wb) = (numerical_radius(&a, &cfg.tol)?, numerical_radius(&b, &cfg.tol)?);
    Ok(VerificationReport::new("lemma_2_11")
        .matrix("A", &a)
        .matrix("B", &b)
        .quantity("w_A", wa)
        .quantity("w_B", wb)
        .tolerance("margin", 1e-9)
        .verdict(wa > wb + 1e-9))
}

/// The five conditions for `‖A‖ = 1`, in order (a)…(e); (b) is decided
/// through (e), which is its computable equivalent.
fn jordan_conditions(a: &ComplexMatrix, tol: &ToleranceConfig) -> Result<[bool; 5]> {
    let n = a.rows();
    let target = cos_pi_over(n + 1);
    let w = numerical_radius(a, tol)?;
    let top = operator_norm(&mat_power(a, n - 1)?, tol) >= 1.0 - tol.eps_norm;
    let w_ok = (w - target).abs() <= 10.0 * tol.radius_tol;
    let disc = is_origin_disc(a, tol)?;
    let vanishes = nilpotency_index_dense(a, tol)? <= IndexValue::Finite(n - 1);
    let p = power_norm_index(a, tol)?;
    let e = p == IndexValue::Finite(n - 1) && nilpotency_index_dense(a, tol)? == IndexValue::Finite(n - 1);
    Ok([top && w_ok, e, disc && w_ok, top && vanishes, e])
}

pub(super) fn cor_2_12(g: &mut Gen, trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    let n = g.int(3, 6);
    let jordan_case = trial.is_multiple_of(2);
    let a = if jordan_case {
        jordan_block(n)?
    } else {
        jordan_block(n - 1)?.direct_sum(&ComplexMatrix::real_diagonal(&[cos_pi_over(n + 1)]))
    };
    let a = g.unitary_similarity(&a);
    let conds = jordan_conditions(&a, tol)?;
    let w = numerical_radius(&a, tol)?;
    let ok = if jordan_case {
        conds.iter().all(|&c| c)
    } else {
        // ‖A‖ = 1 and w(A) = cos(π/(n+1)) hold, yet every condition fails.
        (operator_norm(&a, tol) - 1.0).abs() <= tol.eps_norm
            && (w - cos_pi_over(n + 1)).abs() <= 10.0 * tol.radius_tol
            && conds.iter().all(|&c| !c)
    };
    Ok(VerificationReport::new("cor_2_12")
        .matrix("A", &a)
        .input("jordan_case", jordan_case)
        .quantity("conditions_a_to_e", conds)
        .quantity("w", w)
        .config(tol)
        .verdict(ok))
}

pub(super) fn thm_2_13(g: &mut Gen, trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    let (a, family, expect_equal_indices) = match trial % 5 {
        0 => {
            let n = g.int(2, 4);
            let r = g.int(1, n - 1);
            let c = g.contraction(n - r).scale_real(g.uniform(0.0, 0.9));
            let u = g.unitary(r).direct_sum(&c);
            (g.unitary_similarity(&u), "unitary_part", true)
        }
        1 => {
            // J_{k+1} ⊕ N with N^{k+1} = 0 and ‖N‖ < 1.
            let k = g.int(1, 3);
            let size = g.int(1, k + 1);
            let nil = g.strictly_upper(size);
            let nil = if nil.is_zero() { nil } else { unit(&nil, tol).scale_real(g.uniform(0.1, 0.95)) };
            (g.unitary_similarity(&jordan_block(k + 1)?.direct_sum(&nil)), "jordan_nilpotent", true)
        }
        2 => {
            let k = g.int(1, 3);
            let c_size = g.int(1, 2);
            let j = g.jordan_plus_small(k, c_size, 0.9);
            (g.unitary_similarity(&j), "jordan_contraction", false)
        }
        3 => {
            // Nilpotent summand of index above k + 1 but norm below one.
            let k = g.int(1, 2);
            let size = k + 2 + g.int(0, 1);
            let nil = unit(&g.strictly_upper(size), tol).scale_real(g.uniform(0.3, 0.9));
            (g.unitary_similarity(&jordan_block(k + 1)?.direct_sum(&nil)), "long_nilpotent", false)
        }
        _ => {
            let a = g.uniform(0.05, 0.5);
            (thm_2_13_counterexample(C64::new(a, 0.0))?, "counterexample", false)
        }
    };
    let p = power_norm_index(&a, tol)?;
    let na = nilpotency_index_dense(&a, tol)?;
    let (equality, w_tensor, bound) = tensor_equality(&a, &a, cfg)?;
    let equal_indices = p == na;
    let ok = equal_indices == expect_equal_indices
        && (!equal_indices || equality)
        && (family != "counterexample" || (equality && (w_tensor - 0.5).abs() <= SLACK));
    Ok(VerificationReport::new("thm_2_13")
        .matrix("A", &a)
        .input("family", family)
        .quantity("p_A", p)
        .quantity("n_A", na)
        .quantity("equality", equality)
        .quantity("w_tensor", w_tensor)
        .quantity("bound", bound)
        .config(tol)
        .verdict(ok))
}

pub(super) fn prop_2_14(g: &mut Gen, trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    if trial % 4 == 3 {
        // The n = 6, k = 2 remark matrix: W(A) is the disc of radius √2/2.
        let (a, b) = prop_2_14_remark();
        let norm2 = operator_norm(&mat_power(&a, 2)?, tol);
        let cube_zero = mat_power(&a, 3)?.is_zero();
        let p = power_norm_index(&a, tol)?;
        let na = nilpotency_index_dense(&a, tol)?;
        let wb = numerical_radius(&b, tol)?;
        let wa = numerical_radius(&a, tol)?;
        let disc = is_origin_disc(&a, tol)?;
        let ok = (norm2 - 1.0).abs() <= 1e-9
            && cube_zero
            && p == IndexValue::Finite(2)
            && na == IndexValue::Finite(2)
            && (wb - prop_2_14_scale()).abs() <= SLACK
            && (wa - cos_pi_over(4)).abs() <= SLACK
            && disc;
        return Ok(VerificationReport::new("prop_2_14")
            .matrix("A", &a)
            .input("family", "remark_matrix")
            .quantity("norm_A2", norm2)
            .quantity("w_B", wb)
            .quantity("w_A", wa)
            .quantity("is_origin_disc", disc)
            .config(tol)
            .verdict(ok));
    }
    let n = g.int(2, 5);
    let k = g.int(1, n - 1);
    let size = n - k - 1;
    let a = if size == 0 {
        jordan_block(n)?
    } else {
        let nil = g.strictly_upper(size.min(k + 1));
        let nil = if size > k + 1 { nil.direct_sum(&ComplexMatrix::zeros(size - k - 1, size - k - 1)) } else { nil };
        let nil = if nil.is_zero() { nil } else { unit(&nil, tol).scale_real(g.uniform(0.1, 1.0)) };
        jordan_block(k + 1)?.direct_sum(&nil)
    };
    let a = g.unitary_similarity(&a).scale_real(g.uniform(0.5, 2.0));
    let p = power_norm_index(&a, tol)?;
    let na = nilpotency_index_dense(&a, tol)?;
    let disc = is_origin_disc(&a, tol)?;
    Ok(VerificationReport::new("prop_2_14")
        .matrix("A", &a)
        .input("k", k)
        .quantity("p_A", p)
        .quantity("n_A", na)
        .quantity("is_origin_disc", disc)
        .quantity("oscillation", support_oscillation(&a, tol)?)
        .config(tol)
        .verdict(p == IndexValue::Finite(k) && na == IndexValue::Finite(k) && disc))
}

pub(super) fn lemma_3_2(g: &mut Gen, trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    let n = g.int(1, 6);
    let (b, family) = match trial % 4 {
        0 => {
            let density = g.uniform(0.05, 0.5);
            (g.nonneg_matrix(n, n, density), "random")
        }
        1 => {
            let density = g.uniform(0.05, 0.5);
            let mut b = g.nonneg_matrix(n, n, density);
            let i = g.int(0, n - 1);
            b[(i, i)] = C64::new(g.uniform(0.1, 1.0), 0.0);
            (b, "diagonal")
        }
        2 => {
            let density = g.uniform(0.3, 1.0);
            let b = if n >= 2 { g.nonneg_irreducible(n, density)? } else { ComplexMatrix::identity(1) };
            (b, "irreducible")
        }
        _ => (permuted_block_shift(g, 2, 5)?, "block_shift"),
    };
    let n = b.rows();
    let graph_index = nilpotency_index_graph(&b)?;
    let oracle = boolean_nilpotency(&b);
    let dense = nilpotency_index_dense(&b, tol)?;
    let mut ok = graph_index == oracle && graph_index == dense;
    // Some diagonal entry of some power is nonzero iff n_B = ∞.
    let mut power = b.clone();
    let mut diagonal_hit = false;
    for _ in 0..n {
        diagonal_hit |= (0..n).any(|i| power[(i, i)].re > 0.0);
        power = &power * &b;
    }
    ok &= diagonal_hit == graph_index.is_infinite();
    if (0..n).any(|i| b[(i, i)].re > 0.0) {
        ok &= graph_index.is_infinite();
    }
    let strongly_connected = SupportGraph::from_nonnegative(&b)?.strong_components().len() == 1;
    if strongly_connected && n >= 2 {
        ok &= graph_index.is_infinite();
    }
    let mut shift_count = None;
    if family == "block_shift" {
        let d = detect_block_shift(&b, tol)?;
        shift_count = d.as_ref().map(|d| d.shift_count());
        ok &= shift_count.map(IndexValue::Finite) == Some(graph_index);
    }
    Ok(VerificationReport::new("lemma_3_2")
        .matrix("B", &b)
        .input("family", family)
        .quantity("n_graph", graph_index)
        .quantity("n_boolean", oracle)
        .quantity("n_dense", dense)
        .quantity("shift_count", shift_count)
        .verdict(ok))
}

pub(super) fn lemma_3_3(g: &mut Gen, _trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    let k = g.int(1, 3);
    let m = g.int(k + 1, 5);
    let b = permuted_block_shift_with_levels(g, m, k + 1)?;
    let a = power_norm_one(g, k)?;
    let d = detect_block_shift(&b, tol)?.ok_or_else(|| crate::Error::Numeric("generated block shift not detected".into()))?;
    let w = witness_vector(&a, &d, tol)?;
    let wb = numerical_radius(&b, tol)?;
    let w_tensor = tensor_radius(&a, &b, cfg)?;
    let slack = 10.0 * tol.radius_tol.max(1e-7);
    let ok = (w.value - wb).abs() <= slack && (w_tensor - w.value).abs() <= slack;
    Ok(VerificationReport::new("lemma_3_3")
        .matrix("A", &a)
        .matrix("B", &b)
        .input("k", k)
        .quantity("witness_value", w.value)
        .quantity("w_B", wb)
        .quantity("w_tensor", w_tensor)
        .config(tol)
        .verdict(ok))
}

pub(super) fn thm_3_1(g: &mut Gen, _trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    let (a, left) = predictor_left(g)?;
    let (b, right) = predictor_right(g)?;
    let v = evaluate_pair(&a, &b, cfg)?;
    let predicted = predict_equality_nonneg(&a, &b, tol)?;
    // Disc form of the same condition.
    let p = power_norm_index(&a, tol)?;
    let nb = nilpotency_index_graph(&b)?;
    let disc_form = p.is_infinite() || (nb <= p && is_origin_disc(&b, tol)?);
    Ok(VerificationReport::new("thm_3_1")
        .matrix("A", &a)
        .matrix("B", &b)
        .input("left_family", left)
        .input("right_family", right)
        .quantity("verdict", &v)
        .quantity("predicted", predicted)
        .quantity("disc_form", disc_form)
        .config(tol)
        .tolerance("equality_rel_slack", cfg.equality_rel_slack)
        .verdict(predicted == v.equality_with_bound_a && disc_form == predicted))
}

pub(super) fn example_3_4(_g: &mut Gen, _trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    let (a, b) = example_3_4_matrices();
    let bstar = b.adjoint();
    let t1 = (&bstar * &b).trace();
    let t2 = (&bstar * &(&b * &b)).trace();
    let profile = boundary_points(&b, 360, tol)?;
    let support_spread = profile.support.iter().map(|s| (s - 1.0).abs()).fold(0.0, f64::max);
    let wb = numerical_radius(&b, tol)?;
    let ab = tensor_product(&a, &b)?;
    let w_tensor = tensor_radius(&a, &b, cfg)?;
    let eig = hermitian_eig(&real_part(&ab)?, tol)?;
    let eig_gap = eig.eigenvalues.iter().map(|l| (l - 1.0).abs()).fold(f64::INFINITY, f64::min);
    let nb = nilpotency_index_dense(&b, tol)?;
    let pa = power_norm_index(&a, tol)?;
    let ok = (t1 - C64::new(4.5, 0.0)).norm() <= 1e-12
        && (t2 - C64::new(2f64.sqrt() / 4.0, 0.0)).norm() <= 1e-12
        && support_spread <= 1e-6
        && (wb - 1.0).abs() <= 1e-6
        && (w_tensor - 1.0).abs() <= 1e-6
        && eig_gap <= 1e-8
        && nb.is_infinite()
        && pa == IndexValue::Finite(2);
    Ok(VerificationReport::new("example_3_4")
        .matrix("A", &a)
        .matrix("B", &b)
        .quantity("tr_BstarB", t1.re)
        .quantity("tr_BstarB2", t2.re)
        .quantity("support_spread", support_spread)
        .quantity("w_B", wb)
        .quantity("w_tensor", w_tensor)
        .quantity("eigenvalue_gap_to_one", eig_gap)
        .quantity("n_B", nb)
        .quantity("p_A", pa)
        .verdict(ok))
}

pub(super) fn cor_3_5(g: &mut Gen, trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    let (a, family) = match trial % 4 {
        0 => {
            let m = g.int(2, 4);
            let density = g.uniform(0.5, 1.0);
            let h = g.nonneg_irreducible(m, density)?;
            (real_part(&h)?, "symmetric")
        }
        1 => {
            // Chain of rank-one blocks x_j x_{j+1}ᵀ with positive unit x_j.
            let m = g.int(2, 5);
            let levels = g.int(2, m);
            let sizes = g.composition(m, levels);
            let xs: Vec<Vec<f64>> = sizes
                .iter()
                .map(|&s| {
                    let v: Vec<f64> = (0..s).map(|_| g.uniform(0.1, 1.0)).collect();
                    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    v.into_iter().map(|x| x / norm).collect()
                })
                .collect();
            let blocks: Vec<ComplexMatrix> = xs
                .windows(2)
                .map(|w| ComplexMatrix::from_fn(w[0].len(), w[1].len(), |i, j| C64::new(w[0][i] * w[1][j], 0.0)))
                .collect();
            let shift = crate::structures::block_shift(&blocks)?;
            (g.permutation(m).conjugate(&shift), "rank_one_chain")
        }
        2 => {
            let m = g.int(2, 4);
            let density = g.uniform(0.3, 0.9);
            (g.nonneg_irreducible(m, density)?, "irreducible")
        }
        _ => (permuted_block_shift(g, 3, 5)?, "block_shift"),
    };
    let a = a.scale_real(g.uniform(0.5, 2.0));
    let (equality, w_tensor, bound) = tensor_equality(&a, &a, cfg)?;
    let p = power_norm_index(&a, tol)?;
    let na = nilpotency_index_graph(&a)?;
    let b_cond = p == na;
    let norm = operator_norm(&a, tol);
    let normal_summand = spectral_radius(&a, tol)? >= norm * (1.0 - tol.eps_norm);
    let shift_cond = match detect_block_shift(&a, tol)? {
        Some(d) => {
            let product = d.blocks.iter().skip(1).fold(d.blocks[0].clone(), |acc, blk| &acc * blk);
            operator_norm(&product, tol) >= norm.powi(d.shift_count() as i32) * (1.0 - tol.eps_norm)
        }
        None => false,
    };
    let c_cond = normal_summand || shift_cond;
    Ok(VerificationReport::new("cor_3_5")
        .matrix("A", &a)
        .input("family", family)
        .quantity("equality", equality)
        .quantity("w_tensor", w_tensor)
        .quantity("bound", bound)
        .quantity("p_A", p)
        .quantity("n_A", na)
        .quantity("condition_c", c_cond)
        .config(tol)
        .verdict(equality == b_cond && b_cond == c_cond))
}

pub(super) fn cor_3_6(g: &mut Gen, trial: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let tol = &cfg.tol;
    let n = g.int(2, 5);
    let base = g.uniform(0.2, 2.0);
    let mut a = ComplexMatrix::zeros(n, n);
    let family = match trial % 3 {
        0 => {
            for i in 0..n - 1 {
                a[(i, i + 1)] = C64::new(base, 0.0);
            }
            "constant"
        }
        1 => {
            for i in 0..n - 1 {
                a[(i, i + 1)] = C64::new(base, 0.0);
            }
            let i = g.int(0, n - 2);
            a[(i, i + 1)] *= if g.coin(0.5) { g.uniform(0.3, 0.9) } else { g.uniform(1.1, 2.0) };
            "varied"
        }
        _ => {
            for i in 0..n - 1 {
                a[(i, i + 1)] = C64::new(base, 0.0);
            }
            if n >= 3 {
                let i = g.int(0, n - 3);
                let j = g.int(i + 2, n - 1);
                a[(i, j)] = C64::new(base * g.uniform(0.1, 1.0), 0.0);
                "extra_entry"
            } else {
                a[(0, 1)] = C64::new(base, 0.0);
                "constant"
            }
        }
    };
    let (equality, w_tensor, bound) = tensor_equality(&a, &a, cfg)?;
    let p = power_norm_index(&a, tol)?;
    let na = nilpotency_index_graph(&a)?;
    let b_cond = p == na && p == IndexValue::Finite(n - 1);
    let sup = a[(0, 1)];
    let c_cond = (0..n).all(|i| {
        (0..n).all(|j| if j == i + 1 { a[(i, j)] == sup } else { a[(i, j)] == ZERO })
    });
    Ok(VerificationReport::new("cor_3_6")
        .matrix("A", &a)
        .input("family", family)
        .quantity("equality", equality)
        .quantity("w_tensor", w_tensor)
        .quantity("bound", bound)
        .quantity("p_A", p)
        .quantity("n_A", na)
        .quantity("constant_superdiagonal", c_cond)
        .config(tol)
        .verdict(equality == b_cond && b_cond == c_cond))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_oracle_matches_examples() {
        assert_eq!(boolean_nilpotency(&jordan_block(4).unwrap()), IndexValue::Finite(3));
        assert_eq!(boolean_nilpotency(&ComplexMatrix::zeros(2, 2)), IndexValue::Finite(0));
        assert_eq!(boolean_nilpotency(&ComplexMatrix::identity(2)), IndexValue::Infinite);
    }

    #[test]
    fn roots_to_coefficients() {
        let c = coefficients_from_roots(&[ONE, C64::new(-1.0, 0.0)]);
        assert_eq!(c, vec![ZERO, C64::new(-1.0, 0.0)]);
    }
}
