//! When does `w(A⊗B) = ‖A‖·w(B)` hold: direct evaluation, the predictor for
//! nonnegative `B` with irreducible real part, the witness vector attaining
//! the bound, and checks of the Jordan-block characterizations.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::indices::{power_norm_index, IndexValue, SupportGraph};
use crate::matkernel::{
    kron_vec, mat_power, operator_norm, real_part, tensor_product, top_right_singular_vector, vec_norm,
    ComplexMatrix, ToleranceConfig, C64,
};
use crate::numrange::{numerical_radius, support_at};
use crate::report::VerificationReport;
use crate::structures::{detect_block_shift, is_irreducible_sym_nonneg, jordan_block, BlockShiftDecomposition};

pub const DEFAULT_SIZE_CAP: usize = 400;

/// Tolerances plus the tensor-size cap and the equality slack.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TensorConfig {
    pub tol: ToleranceConfig,
    /// Largest allowed `n·m`.
    pub size_cap: usize,
    /// Equality holds when `bound_a − w_tensor ≤ equality_rel_slack · bound_a`.
    pub equality_rel_slack: f64,
}

impl Default for TensorConfig {
    fn default() -> Self {
        Self::from_tolerances(ToleranceConfig::default())
    }
}

impl TensorConfig {
    /// Cap 400 and slack `100 · radius_tol`.
    pub fn from_tolerances(tol: ToleranceConfig) -> Self {
        Self { tol, size_cap: DEFAULT_SIZE_CAP, equality_rel_slack: 100.0 * tol.radius_tol }
    }

    pub fn with_size_cap(mut self, cap: usize) -> Self {
        self.size_cap = cap;
        self
    }

    pub fn with_equality_rel_slack(mut self, slack: f64) -> Self {
        self.equality_rel_slack = slack;
        self
    }

    /// Resource error when `n·m` exceeds the cap.
    pub fn check_size(&self, n: usize, m: usize) -> Result<()> {
        if n * m > self.size_cap {
            return Err(Error::Resource(format!(
                "tensor size {n}·{m} = {} exceeds the cap {}",
                n * m,
                self.size_cap
            )));
        }
        Ok(())
    }

    fn is_equal(&self, bound: f64, value: f64) -> bool {
        bound - value <= self.equality_rel_slack * bound
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EqualityVerdict {
    pub w_tensor: f64,
    /// `‖A‖·w(B)`.
    pub bound_a: f64,
    /// `‖B‖·w(A)`.
    pub bound_b: f64,
    /// `w(A)·w(B)`.
    pub lower: f64,
    pub equality_with_bound_a: bool,
    /// Predictor outcome, present when its hypotheses hold.
    pub predicted: Option<bool>,
    pub consistent: Option<bool>,
}

/// Direct evaluation of `w(A⊗B)` against `min(‖A‖w(B), ‖B‖w(A))` and
/// `w(A)w(B)`.
pub fn evaluate_pair(a: &ComplexMatrix, b: &ComplexMatrix, cfg: &TensorConfig) -> Result<EqualityVerdict> {
    let n = a.ensure_square("evaluate_pair")?;
    let m = b.ensure_square("evaluate_pair")?;
    cfg.check_size(n, m)?;
    let tol = &cfg.tol;
    let w_tensor = numerical_radius(&tensor_product(a, b)?, tol)?;
    let (wa, wb) = (numerical_radius(a, tol)?, numerical_radius(b, tol)?);
    let bound_a = operator_norm(a, tol) * wb;
    let bound_b = operator_norm(b, tol) * wa;
    let equality_with_bound_a = cfg.is_equal(bound_a, w_tensor);
    let predicted = match predict_equality_nonneg(a, b, tol) {
        Ok(p) => Some(p),
        Err(Error::Domain(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(EqualityVerdict {
        w_tensor,
        bound_a,
        bound_b,
        lower: wa * wb,
        equality_with_bound_a,
        predicted,
        consistent: predicted.map(|p| p == equality_with_bound_a),
    })
}

/// Predicted truth of `w(A⊗B) = ‖A‖w(B)` for nonnegative `B` with
/// irreducible `re B`: `p_A = ∞`, or `n_B ≤ p_A < ∞` with `B`
/// permutationally similar to a block-shift matrix of `n_B` blocks.
pub fn predict_equality_nonneg(a: &ComplexMatrix, b: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<bool> {
    a.ensure_square("predict_equality_nonneg")?;
    b.ensure_square("predict_equality_nonneg")?;
    if a.is_zero() {
        return Err(Error::Domain("predictor needs A ≠ 0".into()));
    }
    let graph = SupportGraph::from_nonnegative_approx(b, cfg)
        .map_err(|e| Error::Domain(format!("predictor needs B nonnegative: {e}")))?;
    if !is_irreducible_sym_nonneg(&real_part(b)?, cfg)? {
        return Err(Error::Domain("predictor needs re B irreducible".into()));
    }
    let p = power_norm_index(a, cfg)?;
    let IndexValue::Finite(p) = p else {
        return Ok(true);
    };
    let IndexValue::Finite(nb) = graph.nilpotency_index() else {
        return Ok(false);
    };
    if nb > p {
        return Ok(false);
    }
    Ok(detect_block_shift(b, cfg)?.is_some_and(|d| d.shift_count() == nb))
}

/// Unit vector attaining `w(B)` in `W(B̃⊗Â)`, where `B̃` is the block-shift
/// form of `D` and `Â = A/‖A‖`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// Coordinates of `B̃⊗Â`: level blocks `y_j ⊗ Â^{k+1−j} x`, `j = 1…k+1`.
    pub u: Vec<C64>,
    /// `|⟨(B̃⊗Â)u, u⟩|`.
    pub value: f64,
    /// `w(B)`, the support of `W(B̃)` at angle 0.
    pub radius: f64,
}

/// Builds `u = [y_1⊗Â^k x, y_2⊗Â^{k−1}x, …, y_{k+1}⊗x]` from a unit `x` with
/// `‖Â^k x‖ = 1` and the angle-0 maximizer `y` of the block-shift form.
pub fn witness_vector(a: &ComplexMatrix, d: &BlockShiftDecomposition, cfg: &ToleranceConfig) -> Result<Witness> {
    let n = a.ensure_square("witness_vector")?;
    let norm = operator_norm(a, cfg);
    if norm == 0.0 {
        return Err(Error::Domain("witness needs A ≠ 0".into()));
    }
    let unit = a.scale_real(1.0 / norm);
    let k = d.shift_count();
    let top = mat_power(&unit, k)?;
    if operator_norm(&top, cfg) < 1.0 - cfg.eps_norm {
        return Err(Error::Contract(format!(
            "witness needs ‖A^{k}‖ = ‖A‖^{k}, i.e. k = {k} ≤ p_A"
        )));
    }
    let (_, x) = top_right_singular_vector(&top, cfg)?;
    let form = d.block_form();
    let (radius, y) = support_at(&form, 0.0, cfg)?;

    let mut powers = vec![x];
    for _ in 0..k {
        let next = unit.mat_vec(powers.last().unwrap());
        powers.push(next);
    }
    let mut u = Vec::with_capacity(form.rows() * n);
    let mut offset = 0;
    for (j, &size) in d.level_sizes.iter().enumerate() {
        u.extend(kron_vec(&y[offset..offset + size], &powers[k - j]));
        offset += size;
    }
    let value = tensor_product(&form, &unit)?.quadratic_form(&u).norm();
    debug_assert!((vec_norm(&u) - 1.0).abs() < 1e-8);
    Ok(Witness { u, value, radius })
}

/// Outcome of comparing `w(A⊗J_m) = w(J_m)` with `‖A^{m−1}‖ = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JordanTensorOutcome {
    pub m: usize,
    pub w_tensor: f64,
    pub w_jordan: f64,
    pub power_norm: f64,
    pub radius_equal: bool,
    pub power_attains_one: bool,
}

impl JordanTensorOutcome {
    pub fn equivalence_holds(&self) -> bool {
        self.radius_equal == self.power_attains_one
    }
}

fn require_unit_norm(a: &ComplexMatrix, cfg: &ToleranceConfig, what: &str) -> Result<f64> {
    let norm = operator_norm(a, cfg);
    if (norm - 1.0).abs() > cfg.eps_norm {
        return Err(Error::Contract(format!("{what} needs ‖A‖ = 1, got {norm}")));
    }
    Ok(norm)
}

pub fn theorem_2_5_outcome(a: &ComplexMatrix, m: usize, cfg: &TensorConfig) -> Result<JordanTensorOutcome> {
    let n = a.ensure_square("theorem_2_5_check")?;
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    require_unit_norm(a, &cfg.tol, "theorem_2_5_check")?;
    cfg.check_size(n, m)?;
    let jm = jordan_block(m)?;
    let w_tensor = numerical_radius(&tensor_product(a, &jm)?, &cfg.tol)?;
    let w_jordan = numerical_radius(&jm, &cfg.tol)?;
    let power_norm = operator_norm(&mat_power(a, m - 1)?, &cfg.tol);
    Ok(JordanTensorOutcome {
        m,
        w_tensor,
        w_jordan,
        power_norm,
        radius_equal: cfg.is_equal(w_jordan, w_tensor),
        power_attains_one: power_norm >= 1.0 - cfg.tol.eps_norm,
    })
}

/// `w(A⊗J_m) = w(J_m)` ⇔ `‖A^{m−1}‖ = 1` for `‖A‖ = 1`, both sides computed
/// independently.
pub fn theorem_2_5_check(a: &ComplexMatrix, m: usize, cfg: &TensorConfig) -> Result<VerificationReport> {
    let o = theorem_2_5_outcome(a, m, cfg)?;
    Ok(VerificationReport::new("thm_2_5")
        .matrix("A", a)
        .input("m", m)
        .quantity("w_tensor", o.w_tensor)
        .quantity("w_jordan", o.w_jordan)
        .quantity("power_norm", o.power_norm)
        .quantity("radius_equal", o.radius_equal)
        .quantity("power_attains_one", o.power_attains_one)
        .config(&cfg.tol)
        .tolerance("equality_rel_slack", cfg.equality_rel_slack)
        .verdict(o.equivalence_holds()))
}

/// Lower bound `w(A) ≥ cos(π/(k+2))` for `‖A‖ = 1` and finite `k = p_A`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JordanBoundOutcome {
    pub k: usize,
    pub w: f64,
    pub bound: f64,
    pub holds: bool,
    /// `|w − bound| ≤ 10 · radius_tol`.
    pub equality: bool,
}

pub fn theorem_2_10_outcome(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<JordanBoundOutcome> {
    a.ensure_square("theorem_2_10_check")?;
    require_unit_norm(a, cfg, "theorem_2_10_check")?;
    let IndexValue::Finite(k) = power_norm_index(a, cfg)? else {
        return Err(Error::Domain("the bound needs a finite power norm index".into()));
    };
    let w = numerical_radius(a, cfg)?;
    let bound = (PI / (k as f64 + 2.0)).cos();
    let slack = 10.0 * cfg.radius_tol;
    Ok(JordanBoundOutcome { k, w, bound, holds: w >= bound - slack, equality: (w - bound).abs() <= slack })
}

pub fn theorem_2_10_check(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<VerificationReport> {
    let o = theorem_2_10_outcome(a, cfg)?;
    Ok(VerificationReport::new("thm_2_10")
        .matrix("A", a)
        .quantity("k", o.k)
        .quantity("w", o.w)
        .quantity("bound", o.bound)
        .quantity("equality", o.equality)
        .config(cfg)
        .verdict(o.holds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkernel::{ONE, ZERO};
    use crate::structures::{example_3_4, prop_2_14_remark, thm_2_13_counterexample};

    fn tcfg() -> TensorConfig {
        TensorConfig::default()
    }

    fn jordan(n: usize) -> ComplexMatrix {
        jordan_block(n).unwrap()
    }

    fn cos_pi_over(d: usize) -> f64 {
        (PI / d as f64).cos()
    }

    fn rotation(t: f64) -> ComplexMatrix {
        let (s, c) = t.sin_cos();
        ComplexMatrix::from_real_rows(&[&[c, -s], &[s, c]]).unwrap()
    }

    #[test]
    fn evaluate_jordan_pair() {
        let v = evaluate_pair(&jordan(3), &jordan(5), &tcfg()).unwrap();
        assert!((v.w_tensor - cos_pi_over(4)).abs() < 1e-8);
        // Attained by ‖B‖w(A); ‖A‖w(B) = cos(π/6) is strictly larger.
        assert!((v.bound_b - v.w_tensor).abs() < 1e-8);
        assert!((v.bound_a - cos_pi_over(6)).abs() < 1e-8);
        assert!(!v.equality_with_bound_a);
        assert_eq!(v.predicted, Some(false));
        assert_eq!(v.consistent, Some(true));
        let v = evaluate_pair(&jordan(5), &jordan(3), &tcfg()).unwrap();
        assert!(v.equality_with_bound_a);
        assert_eq!(v.consistent, Some(true));
    }

    #[test]
    fn evaluate_counterexample_pair() {
        let a = thm_2_13_counterexample(C64::new(0.5, 0.0)).unwrap();
        let v = evaluate_pair(&a, &a, &tcfg()).unwrap();
        assert!((v.w_tensor - 0.5).abs() < 1e-8);
        assert!(v.equality_with_bound_a);
        // re A is reducible, so the predictor does not apply.
        assert_eq!(v.predicted, None);
    }

    #[test]
    fn evaluate_example_3_4_pair() {
        let (a, b) = example_3_4();
        let v = evaluate_pair(&a, &b, &tcfg()).unwrap();
        assert!((v.w_tensor - 1.0).abs() < 1e-7, "{}", v.w_tensor);
        assert!((v.bound_a - 1.0).abs() < 1e-7);
        assert!(v.equality_with_bound_a);
        assert_eq!(v.predicted, None);
    }

    #[test]
    fn size_cap_is_enforced() {
        let cfg = tcfg().with_size_cap(8);
        assert!(matches!(evaluate_pair(&jordan(3), &jordan(3), &cfg), Err(Error::Resource(_))));
    }

    #[test]
    fn predictor_examples() {
        let cfg = ToleranceConfig::default();
        assert!(predict_equality_nonneg(&jordan(3), &jordan(2), &cfg).unwrap());
        assert!(!predict_equality_nonneg(&jordan(2), &jordan(3), &cfg).unwrap());
        let v = evaluate_pair(&jordan(2), &jordan(3), &tcfg()).unwrap();
        assert!((v.w_tensor - 0.5).abs() < 1e-8);
        assert!(v.bound_a - v.w_tensor > 0.2);
        assert!(predict_equality_nonneg(&rotation(0.4), &jordan(4), &cfg).unwrap());
        let pos = ComplexMatrix::from_real_rows(&[&[0.1, 1.0], &[0.3, 0.0]]).unwrap();
        assert!(predict_equality_nonneg(&rotation(0.4), &pos, &cfg).unwrap());
        assert!(!predict_equality_nonneg(&jordan(3), &pos, &cfg).unwrap());
        let (_, b) = example_3_4();
        assert!(matches!(predict_equality_nonneg(&jordan(3), &b, &cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn witness_examples() {
        let cfg = ToleranceConfig::default();
        let d2 = detect_block_shift(&jordan(2), &cfg).unwrap().unwrap();
        let w = witness_vector(&jordan(3), &d2, &cfg).unwrap();
        assert!((w.value - 0.5).abs() < 1e-9);
        assert!((vec_norm(&w.u) - 1.0).abs() < 1e-10);
        let w = witness_vector(&jordan(2), &d2, &cfg).unwrap();
        assert!((w.value - 0.5).abs() < 1e-9);
        let d4 = detect_block_shift(&jordan(4), &cfg).unwrap().unwrap();
        let w = witness_vector(&rotation(1.3), &d4, &cfg).unwrap();
        assert!((w.value - cos_pi_over(5)).abs() < 1e-9);
        assert!(matches!(witness_vector(&jordan(2), &d4, &cfg), Err(Error::Contract(_))));
    }

    #[test]
    fn theorem_2_5_examples() {
        for n in 2..=4 {
            for m in 1..=n {
                let o = theorem_2_5_outcome(&jordan(n), m, &tcfg()).unwrap();
                assert!(o.radius_equal && o.power_attains_one, "n={n} m={m}");
            }
        }
        let o = theorem_2_5_outcome(&jordan(2), 3, &tcfg()).unwrap();
        assert!(!o.radius_equal && !o.power_attains_one);
        assert!(theorem_2_5_check(&jordan(2), 3, &tcfg()).unwrap().passed());
        let o = theorem_2_5_outcome(&rotation(2.0), 4, &tcfg()).unwrap();
        assert!(o.radius_equal && o.power_attains_one);
        assert!(matches!(theorem_2_5_check(&jordan(2).scale_real(0.5), 2, &tcfg()), Err(Error::Contract(_))));
    }

    #[test]
    fn theorem_2_10_examples() {
        let cfg = ToleranceConfig::default();
        for k in 1..=5 {
            let o = theorem_2_10_outcome(&jordan(k + 1), &cfg).unwrap();
            assert_eq!(o.k, k);
            assert!(o.holds && o.equality);
        }
        let c = ComplexMatrix::real_diagonal(&[0.3, -0.5]);
        let o = theorem_2_10_outcome(&jordan(3).direct_sum(&c), &cfg).unwrap();
        assert!(o.holds && o.equality);
        assert!(matches!(theorem_2_10_outcome(&rotation(0.2), &cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn theorem_2_10_on_remark_matrix_is_the_equality_case() {
        let cfg = ToleranceConfig::default();
        let (a, _) = prop_2_14_remark();
        let o = theorem_2_10_outcome(&a, &cfg).unwrap();
        assert_eq!(o.k, 2);
        assert!(o.holds);
        assert!((o.w - cos_pi_over(4)).abs() < 1e-8);
        assert!(o.equality);
        let r = theorem_2_10_check(&a, &cfg).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn sandwich_on_small_pair() {
        let a = ComplexMatrix::from_rows(&[vec![C64::new(0.2, 0.5), ONE], vec![ZERO, C64::new(-0.3, 0.1)]]).unwrap();
        let b = ComplexMatrix::from_real_rows(&[&[0.0, 0.7, 0.1], &[0.2, 0.0, 1.0], &[0.0, 0.4, 0.3]]).unwrap();
        let v = evaluate_pair(&a, &b, &tcfg()).unwrap();
        let slack = 1e-8;
        assert!(v.w_tensor <= v.bound_a.min(v.bound_b) + slack);
        assert!(v.w_tensor >= v.lower - slack);
    }
}
