//! Hermitian eigensolvers.
//!
//! [`hermitian_eig`] is a cyclic complex Jacobi method returning the full
//! decomposition. [`largest_eigenvalue`] reduces to real tridiagonal form with
//! Householder reflectors and bisects on Sturm counts; it returns only
//! `λ_max` and is what the support-function scans call in their inner loop.

use crate::error::{Error, Result};
use crate::matkernel::matrix::{ComplexMatrix, C64, ZERO};
use crate::matkernel::tolerance::ToleranceConfig;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching unit eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct HermitianEigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigenDecomposition {
    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("decomposition of a non-empty matrix")
    }

    /// Unit eigenvector for the largest eigenvalue.
    pub fn top_eigenvector(&self) -> Vec<C64> {
        self.eigenvectors.column_vec(self.eigenvalues.len() - 1)
    }

    /// `V diag(f(λ)) V*`.
    pub fn apply_function(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fl[k] * v[(j, k)].conj()).sum()
        })
    }
}

fn check_hermitian(h: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<usize> {
    let n = h.ensure_square("hermitian eigensolver")?;
    let asym = h.max_abs_diff(&h.adjoint());
    if asym > cfg.eps_struct * h.max_abs().max(1.0) {
        return Err(Error::Contract(format!("matrix is not Hermitian: ‖H − H*‖_max = {asym:e}")));
    }
    Ok(n)
}

fn symmetrized(h: &ComplexMatrix) -> ComplexMatrix {
    let n = h.rows();
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            C64::new(h[(i, i)].re, 0.0)
        } else {
            (h[(i, j)] + h[(j, i)].conj()) * 0.5
        }
    })
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
pub fn hermitian_eig(h: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<HermitianEigenDecomposition> {
    let n = check_hermitian(h, cfg)?;
    let mut a = symmetrized(h);
    let mut v = ComplexMatrix::identity(n);
    let target = cfg.eps_eig * a.frobenius_norm().max(1.0);

    let mut converged = off_diagonal_mass(&a) < target;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_mass(&a) < target;
    }
    if !converged {
        return Err(Error::Numeric(format!(
            "Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps (off-diagonal mass {:e})",
            off_diagonal_mass(&a)
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(HermitianEigenDecomposition { eigenvalues, eigenvectors })
}

/// One complex Jacobi rotation annihilating `a[p][q]`; accumulates into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Phase that makes the (p, q) entry real, then a real symmetric rotation.
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let e = phase.conj();
    // 2x2 block of the unitary: [[c, s], [-s e, c e]].
    let vpp = C64::new(c, 0.0);
    let vpq = C64::new(s, 0.0);
    let vqp = -e * s;
    let vqq = e * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * vpp + akq * vqp;
        a[(k, q)] = akp * vpq + akq * vqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = vpp.conj() * apk + vqp.conj() * aqk;
        a[(q, k)] = vpq.conj() * apk + vqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * vpp + vkq * vqp;
        v[(k, q)] = vkp * vpq + vkq * vqq;
    }
}

/// Largest eigenvalue of a Hermitian matrix (only the lower triangle and the
/// real part of the diagonal are read).
pub fn largest_eigenvalue(h: &ComplexMatrix) -> f64 {
    let (diag, off) = tridiagonalize(h);
    tridiagonal_max_eigenvalue(&diag, &off)
}

/// Householder reduction to a real symmetric tridiagonal matrix with the same
/// spectrum. Returns the diagonal and the moduli of the sub-diagonal.
fn tridiagonalize(h: &ComplexMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = h.rows();
    // Working copy of the lower triangle, stored densely for simplicity.
    let mut a: Vec<C64> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if i >= j {
                h[(i, j)]
            } else {
                h[(j, i)].conj()
            }
        })
        .collect();
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    let mut v = vec![ZERO; n];
    let mut w = vec![ZERO; n];

    for k in 0..n.saturating_sub(1) {
        let m = n - k - 1;
        let x0 = a[(k + 1) * n + k];
        let mut xnorm2 = 0.0;
        for i in k + 1..n {
            xnorm2 += a[i * n + k].norm_sqr();
        }
        let xnorm = xnorm2.sqrt();
        diag.push(a[k * n + k].re);
        let tail = xnorm2 - x0.norm_sqr();
        if tail <= f64::MIN_POSITIVE {
            off.push(x0.norm());
            continue;
        }
        off.push(xnorm);
        // v = x - alpha e1 with alpha = -phase(x0) ‖x‖.
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { C64::new(1.0, 0.0) };
        let alpha = -phase * xnorm;
        for i in 0..m {
            v[i] = a[(k + 1 + i) * n + k];
        }
        v[0] -= alpha;
        let vnorm = v[..m].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v[..m].iter_mut().for_each(|z| *z /= vnorm);

        // p = A22 v on the trailing block.
        for i in 0..m {
            let row = (k + 1 + i) * n + k + 1;
            let mut s = ZERO;
            for j in 0..m {
                s += a[row + j] * v[j];
            }
            w[i] = s;
        }
        let kappa: f64 = (0..m).map(|i| (v[i].conj() * w[i]).re).sum();
        for i in 0..m {
            w[i] -= v[i] * kappa;
        }
        // A22 <- A22 - 2 v w* - 2 w v*.
        for i in 0..m {
            let row = (k + 1 + i) * n + k + 1;
            for j in 0..m {
                a[row + j] -= (v[i] * w[j].conj() + w[i] * v[j].conj()) * 2.0;
            }
        }
    }
    diag.push(a[(n - 1) * n + n - 1].re);
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix that are `< x`.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0;
    for i in 0..diag.len() {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        d = diag[i] - x - if i == 0 { 0.0 } else { e2 / d };
        if d == 0.0 {
            d = -f64::EPSILON * (diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

fn tridiagonal_max_eigenvalue(diag: &[f64], off: &[f64]) -> f64 {
    let n = diag.len();
    if n == 1 {
        return diag[0];
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let radius = if i > 0 { off[i - 1] } else { 0.0 } + if i + 1 < n { off[i] } else { 0.0 };
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 2.0 * f64::EPSILON * scale || mid == lo || mid == hi {
            break;
        }
        if sturm_count(diag, off, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
