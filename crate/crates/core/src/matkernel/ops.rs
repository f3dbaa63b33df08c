use crate::error::{Error, Result};
use crate::matkernel::eig::{hermitian_eig, largest_eigenvalue};
use crate::matkernel::matrix::{ComplexMatrix, C64};
use crate::matkernel::tolerance::ToleranceConfig;

const GELFAND_SQUARINGS: usize = 40;

/// Kronecker product: block `(i, j)` of the result is `a[i][j] · b`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.ensure_square("tensor_product")?;
    let m = b.ensure_square("tensor_product")?;
    Ok(ComplexMatrix::from_fn(n * m, n * m, |r, c| a[(r / m, c / m)] * b[(r % m, c % m)]))
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

/// `(A + A*) / 2`.
pub fn real_part(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.ensure_square("real_part")?;
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            C64::new(a[(i, i)].re, 0.0)
        } else {
            (a[(i, j)] + a[(j, i)].conj()) * 0.5
        }
    }))
}

/// `(A − A*) / (2i)`, so that `A = re A + i·im A`.
pub fn imag_part(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.ensure_square("imag_part")?;
    let half_over_i = C64::new(0.0, -0.5);
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            C64::new(a[(i, i)].im, 0.0)
        } else {
            (a[(i, j)] - a[(j, i)].conj()) * half_over_i
        }
    }))
}

/// Gram matrix `A*A` or `AA*`, whichever is smaller.
fn small_gram(a: &ComplexMatrix) -> ComplexMatrix {
    let adj = a.adjoint();
    if a.cols() <= a.rows() {
        &adj * a
    } else {
        a * &adj
    }
}

/// Largest singular value.
pub fn operator_norm(a: &ComplexMatrix, _cfg: &ToleranceConfig) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    // Rescale so the Gram matrix neither overflows nor underflows.
    let s = a.max_abs();
    let g = small_gram(&a.scale_real(1.0 / s));
    largest_eigenvalue(&g).max(0.0).sqrt() * s
}

/// Unit vector `x` with `‖A x‖ = ‖A‖`, taken from the top eigenvector of `A*A`.
pub fn top_right_singular_vector(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<(f64, Vec<C64>)> {
    let gram = &a.adjoint() * a;
    let d = hermitian_eig(&gram, cfg)?;
    Ok((d.max_eigenvalue().max(0.0).sqrt(), d.top_eigenvector()))
}

/// Spectral radius through Gelfand's formula `ρ(A) = lim ‖A^k‖^{1/k}`,
/// evaluated along `k = 2^s` by repeated normalized squaring.
pub fn spectral_radius(a: &ComplexMatrix, _cfg: &ToleranceConfig) -> Result<f64> {
    a.ensure_square("spectral_radius")?;
    // A^(2^s) = m · exp(log_scale)
    let mut m = a.clone();
    let mut log_scale = 0.0_f64;
    let mut estimate = a.frobenius_norm();
    if estimate == 0.0 {
        return Ok(0.0);
    }
    for s in 0..GELFAND_SQUARINGS {
        let f = m.frobenius_norm();
        if f == 0.0 {
            return Ok(0.0);
        }
        estimate = ((f.ln() + log_scale) / 2f64.powi(s as i32)).exp();
        let unit = m.scale_real(1.0 / f);
        m = &unit * &unit;
        log_scale = 2.0 * (log_scale + f.ln());
    }
    let f = m.frobenius_norm();
    if f == 0.0 {
        return Ok(0.0);
    }
    let last = ((f.ln() + log_scale) / 2f64.powi(GELFAND_SQUARINGS as i32)).exp();
    Ok(if last.is_finite() { last } else { estimate })
}

/// Square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in `[−eps_struct, eps_eig·max(1, ‖H‖)]` are treated as zero.
pub fn psd_sqrt(h: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    let d = hermitian_eig(h, cfg)?;
    let scale = d.eigenvalues.iter().fold(1.0_f64, |acc, l| acc.max(l.abs()));
    if let Some(&neg) = d.eigenvalues.iter().find(|&&l| l < -cfg.eps_struct * scale) {
        return Err(Error::Contract(format!("matrix is not positive semidefinite: eigenvalue {neg:e}")));
    }
    let floor = cfg.eps_eig * scale;
    Ok(d.apply_function(|l| if l <= floor { 0.0 } else { l.sqrt() }))
}

/// Number of eigenvalues with `|λ| > eps_struct · max(1, ‖H‖)`.
pub fn hermitian_rank(h: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<usize> {
    let d = hermitian_eig(h, cfg)?;
    let norm = d.eigenvalues.iter().fold(0.0_f64, |acc, l| acc.max(l.abs()));
    let cutoff = cfg.eps_struct * norm.max(1.0);
    Ok(d.eigenvalues.iter().filter(|l| l.abs() > cutoff).count())
}

/// `A^k` by repeated multiplication, `A^0 = I`.
pub fn mat_power(a: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
    let n = a.ensure_square("mat_power")?;
    let mut p = ComplexMatrix::identity(n);
    for _ in 0..k {
        p = &p * a;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkernel::matrix::{ONE, ZERO};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn jordan(n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |i, j| if j == i + 1 { ONE } else { ZERO })
    }

    #[test]
    fn tensor_of_identity_is_block_diagonal() {
        let b = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let t = tensor_product(&ComplexMatrix::identity(2), &b).unwrap();
        assert_eq!(t, b.direct_sum(&b));
    }

    #[test]
    fn tensor_of_jordan_twos() {
        let t = tensor_product(&jordan(2), &jordan(2)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if (i, j) == (0, 3) { ONE } else { ZERO };
                assert_eq!(t[(i, j)], expected);
            }
        }
    }

    #[test]
    fn tensor_rejects_rectangular() {
        let r = ComplexMatrix::zeros(2, 3);
        assert!(matches!(tensor_product(&r, &r), Err(Error::Dimension(_))));
    }

    #[test]
    fn adjoint_examples() {
        let i = C64::new(0.0, 1.0);
        let d = ComplexMatrix::diagonal(&[i, C64::new(2.0, 0.0)]);
        assert_eq!(adjoint(&d), ComplexMatrix::diagonal(&[-i, C64::new(2.0, 0.0)]));
        assert_eq!(adjoint(&adjoint(&d)), d);
        let j2a = adjoint(&jordan(2));
        assert_eq!(j2a[(1, 0)], ONE);
        assert_eq!(j2a[(0, 1)], ZERO);
    }

    #[test]
    fn real_part_examples() {
        let r = real_part(&jordan(2)).unwrap();
        assert_eq!(r, ComplexMatrix::from_real_rows(&[&[0.0, 0.5], &[0.5, 0.0]]).unwrap());
        let h = ComplexMatrix::new(2, 2, vec![ONE, C64::new(1.0, 2.0), C64::new(1.0, -2.0), -ONE]).unwrap();
        assert_eq!(real_part(&h).unwrap(), h);
        let ih = h.scale(C64::new(0.0, 1.0));
        assert!(real_part(&ih).unwrap().max_abs() < 1e-15);
        assert!(matches!(real_part(&ComplexMatrix::zeros(1, 2)), Err(Error::Dimension(_))));
    }

    #[test]
    fn real_and_imaginary_parts_recombine() {
        let a = ComplexMatrix::new(2, 2, vec![C64::new(1.0, 2.0), C64::new(-0.5, 0.3), C64::new(2.0, -1.0), C64::new(0.0, 4.0)]).unwrap();
        let re = real_part(&a).unwrap();
        let im = imag_part(&a).unwrap();
        let back = &re + &im.scale(C64::new(0.0, 1.0));
        assert!(back.max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn jordan_real_part_top_eigenvalue() {
        for n in 2..=8 {
            let d = hermitian_eig(&real_part(&jordan(n)).unwrap(), &cfg()).unwrap();
            let expected = (std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((d.max_eigenvalue() - expected).abs() < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn operator_norm_examples() {
        for n in 1..=6 {
            let expected = if n == 1 { 0.0 } else { 1.0 };
            assert!((operator_norm(&jordan(n), &cfg()) - expected).abs() < 1e-12);
        }
        let (c, s) = (0.6_f64, 0.8_f64);
        let u = ComplexMatrix::new(2, 2, vec![C64::new(c, 0.0), C64::new(0.0, s), C64::new(0.0, s), C64::new(c, 0.0)]).unwrap();
        assert!((operator_norm(&u, &cfg()) - 1.0).abs() < 1e-12);
        let rect = ComplexMatrix::from_real_rows(&[&[3.0, 0.0, 4.0]]).unwrap();
        assert!((operator_norm(&rect, &cfg()) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_radius_examples() {
        for n in 1..=6 {
            assert_eq!(spectral_radius(&jordan(n), &cfg()).unwrap(), 0.0);
        }
        let d = ComplexMatrix::diagonal(&[C64::new(0.3, 0.0), C64::new(-2.0, 0.0), C64::new(0.0, 1.0)]);
        assert!((spectral_radius(&d, &cfg()).unwrap() - 2.0).abs() < 1e-8 * 2.0);
        // Characteristic polynomial z^2 - 1.
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.5, 0.0]]).unwrap();
        assert!((spectral_radius(&a, &cfg()).unwrap() - 1.0).abs() < 1e-8 * 2.0);
        // Non-diagonalizable with unimodular eigenvalue.
        let shear = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!((spectral_radius(&shear, &cfg()).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn psd_sqrt_examples() {
        let i3 = ComplexMatrix::identity(3);
        assert!(psd_sqrt(&i3, &cfg()).unwrap().max_abs_diff(&i3) < 1e-14);
        let r = psd_sqrt(&ComplexMatrix::real_diagonal(&[4.0, 9.0]), &cfg()).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::real_diagonal(&[2.0, 3.0])) < 1e-14);
        let j = jordan(2);
        let defect = &ComplexMatrix::identity(2) - &(&j * &j.adjoint());
        let r = psd_sqrt(&defect, &cfg()).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::real_diagonal(&[0.0, 1.0])) < 1e-14);
        let neg = ComplexMatrix::real_diagonal(&[1.0, -0.5]);
        assert!(matches!(psd_sqrt(&neg, &cfg()), Err(Error::Contract(_))));
    }

    #[test]
    fn hermitian_rank_examples() {
        assert_eq!(hermitian_rank(&ComplexMatrix::zeros(3, 3), &cfg()).unwrap(), 0);
        assert_eq!(hermitian_rank(&ComplexMatrix::identity(4), &cfg()).unwrap(), 4);
        for n in 2..=6 {
            let j = jordan(n);
            // I - J*J = diag(1, 0, ..., 0).
            let defect = &ComplexMatrix::identity(n) - &(&j.adjoint() * &j);
            assert_eq!(defect[(0, 0)], ONE);
            assert_eq!(hermitian_rank(&defect, &cfg()).unwrap(), 1);
        }
    }

    #[test]
    fn mat_power_examples() {
        let j3 = jordan(3);
        let sq = mat_power(&j3, 2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(sq[(i, j)], if (i, j) == (0, 2) { ONE } else { ZERO });
            }
        }
        assert_eq!(mat_power(&j3, 0).unwrap(), ComplexMatrix::identity(3));
        assert!(mat_power(&j3, 3).unwrap().is_zero());
    }
}
