//! Constructed instance families shared by the suites and the acceptance run.

use std::f64::consts::PI;

use crate::error::Result;
use crate::matkernel::{mat_power, operator_norm, ComplexMatrix, ToleranceConfig, C64, ZERO};
use crate::numrange::numerical_radius;
use crate::structures::jordan_block;

use super::Gen;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

/// `J_{k+1} ⊕ C` with `w(C)` placed on a chosen side of `cos(π/(k+2))`.
#[derive(Clone, Debug)]
pub struct JordanBoundInstance {
    pub a: ComplexMatrix,
    pub k: usize,
    pub w_c: f64,
    pub bound: f64,
}

/// `w(C)` is drawn at relative distance `[1e-3, 0.25]` from the bound, below
/// it when `below`, and `‖C‖ ≤ 0.98` keeps `p_A = k`.
pub fn jordan_bound_instance(g: &mut Gen, below: bool) -> Result<JordanBoundInstance> {
    let k = g.int(1, 4);
    let bound = (PI / (k as f64 + 2.0)).cos();
    let rel = g.uniform(1e-3, 0.25);
    let target = if below { bound * (1.0 - rel) } else { (bound * (1.0 + rel)).min(bound + 0.5 * (0.97 - bound)) };
    let size = if target > 0.85 { 1 } else { g.int(1, 3) };
    let c = g.contraction_with_radius(size, target, 0.98)?;
    let c = g.unitary_similarity(&c);
    let w_c = numerical_radius(&c, &cfg())?;
    Ok(JordanBoundInstance { a: jordan_block(k + 1)?.direct_sum(&c), k, w_c, bound })
}

/// Strictly upper bidiagonal `A` of order `n` with superdiagonal moduli in
/// `[0.1, 1]`, a free corner entry `a_nn`, and its leading `(n−1)`-block `B`.
pub fn bidiagonal_pair(g: &mut Gen) -> (ComplexMatrix, ComplexMatrix) {
    let n = g.int(2, 6);
    let mut a = ComplexMatrix::zeros(n, n);
    for i in 0..n - 1 {
        a[(i, i + 1)] = g.phase() * g.uniform(0.1, 1.0);
    }
    a[(n - 1, n - 1)] = if g.coin(0.25) { ZERO } else { g.disc_point(1.0) };
    let b = a.block(0, 0, n - 1, n - 1);
    (a, b)
}

/// Unit-norm `A` with `‖A^j‖ = 1` for all `j ≤ k_min`, from a mix of
/// unitaries, Jordan sums and `S_n` matrices, all unitarily rotated.
pub fn power_norm_one(g: &mut Gen, k_min: usize) -> Result<ComplexMatrix> {
    let a = match g.int(0, 2) {
        0 => {
            let n = g.int(1, 3);
            g.unitary(n)
        }
        1 => {
            let k = g.int(k_min, k_min + 1);
            let c_size = g.int(0, 1);
            g.jordan_plus_small(k, c_size, 0.9)
        }
        _ => {
            let n = k_min + 1 + g.int(0, 1);
            g.sn_matrix(n, 0.8)
        }
    };
    let a = g.unitary_similarity(&a);
    Ok(a.scale_real(1.0 / operator_norm(&a, &cfg())))
}

/// `A` for the predictor comparison: a unitary multiple, a Ginibre matrix
/// with `‖Â²‖ ≤ 0.95`, or a rotated `(J_{k+1} ⊕ C)` with `‖C‖ ≤ 0.9`.
pub fn predictor_left(g: &mut Gen) -> Result<(ComplexMatrix, &'static str)> {
    let scale = g.uniform(0.3, 3.0);
    Ok(match g.int(0, 2) {
        0 => {
            let n = g.int(1, 4);
            (g.unitary(n).scale_real(scale), "unitary")
        }
        1 => loop {
            let n = g.int(2, 4);
            let a = g.contraction(n);
            if operator_norm(&mat_power(&a, 2)?, &cfg()) <= 0.95 {
                break (a.scale_real(scale), "ginibre");
            }
        },
        _ => {
            let k = g.int(1, 3);
            let c_size = g.int(0, 3 - k);
            let a = g.jordan_plus_small(k, c_size, 0.9);
            (g.unitary_similarity(&a).scale_real(scale), "jordan_sum")
        }
    })
}

/// Nonnegative `B` with irreducible real part: a random irreducible matrix
/// or a permuted random block shift.
pub fn predictor_right(g: &mut Gen) -> Result<(ComplexMatrix, &'static str)> {
    if g.coin(0.5) {
        let m = g.int(2, 4);
        let density = g.uniform(0.2, 1.0);
        Ok((g.nonneg_irreducible(m, density)?, "irreducible"))
    } else {
        Ok((permuted_block_shift(g, 2, 4)?, "block_shift"))
    }
}

/// Nonnegative block shift of order in `lo..=hi`, scrambled by a random
/// permutation.
pub fn permuted_block_shift(g: &mut Gen, lo: usize, hi: usize) -> Result<ComplexMatrix> {
    let m = g.int(lo, hi);
    let levels = g.int(2, m);
    permuted_block_shift_with_levels(g, m, levels)
}

pub fn permuted_block_shift_with_levels(g: &mut Gen, m: usize, levels: usize) -> Result<ComplexMatrix> {
    let sizes = g.composition(m, levels);
    let density = g.uniform(0.3, 1.0);
    let b = g.nonneg_block_shift(&sizes, density)?;
    Ok(g.permutation(m).conjugate(&b))
}

/// Matrices for the index laws: Ginibre, nilpotent, Jordan, `S_n`, and
/// nonnegative patterns (with or without cycles).
pub fn index_law_matrix(g: &mut Gen) -> (ComplexMatrix, bool) {
    let n = g.int(1, 8);
    match g.int(0, 5) {
        0 => (g.ginibre(n, n), false),
        1 => {
            let a = g.strictly_upper(n);
            (g.unitary_similarity(&a), false)
        }
        2 => (g.sn_matrix(n, 0.9), false),
        3 => {
            let density = g.uniform(0.05, 0.6);
            (g.nonneg_matrix(n, n, density), true)
        }
        4 => {
            let density = g.uniform(0.2, 1.0);
            let dag = ComplexMatrix::from_fn(n, n, |i, j| {
                if j > i {
                    C64::new(g.nonneg_entry(density), 0.0)
                } else {
                    ZERO
                }
            });
            (g.permutation(n).conjugate(&dag), true)
        }
        _ => {
            if n < 2 {
                return (jordan_block(1).unwrap().direct_sum(&ComplexMatrix::identity(1)), true);
            }
            let levels = g.int(2, n);
            let sizes = g.composition(n, levels);
            let density = g.uniform(0.2, 1.0);
            let b = g.nonneg_block_shift(&sizes, density).unwrap_or_else(|_| jordan_block(n).unwrap());
            (g.permutation(n).conjugate(&b), true)
        }
    }
}

/// Contractions of order `1…6`: unit-norm Ginibre, scaled Ginibre, rotated
/// Jordan blocks and unitaries.
pub fn halmos_contraction(g: &mut Gen) -> ComplexMatrix {
    let n = g.int(1, 6);
    match g.int(0, 3) {
        0 => g.contraction(n),
        1 => g.contraction(n).scale_real(g.uniform(0.0, 1.0)),
        2 => {
            let j = jordan_block(n).unwrap();
            g.unitary_similarity(&j)
        }
        _ => g.unitary(n),
    }
}
