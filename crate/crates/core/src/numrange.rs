//! Numerical radius and numerical-range boundary through the support function
//! `h(θ) = λ_max(re(e^{−iθ}A))`, whose maximum over `θ` is `w(A)`.
//!
//! The maximum is bracketed on a uniform grid and then refined by golden
//! section. Because `W(A)` contains the point of maximal modulus `z*`,
//! `h(θ) ≥ |z*| cos(θ − arg z*)`: grid values within a factor `cos(2δ)` of the
//! grid maximum (`δ` the spacing) are the only possible locations of the
//! global maximum, and a refined bracket of width `ε` loses at most
//! `w(A)(1 − cos ε)`.

use std::f64::consts::TAU;
use std::io::{self, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matkernel::{
    hermitian_eig, imag_part, largest_eigenvalue, operator_norm, real_part, ComplexMatrix,
    ToleranceConfig, C64,
};

/// Brackets refined per extremum search. Near-constant support functions
/// (disc-shaped ranges) produce one grid local maximum per rounding wiggle.
const MAX_BRACKETS: usize = 12;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Sampled support function of `W(A)`.
#[derive(Clone, Debug, Serialize)]
pub struct RangeProfile {
    pub angles: Vec<f64>,
    pub support: Vec<f64>,
    /// `⟨A x_θ, x_θ⟩` for the maximizing unit eigenvector `x_θ`.
    pub boundary: Vec<C64>,
    pub radius: f64,
    pub is_disc: bool,
    /// Refined `max h − min h`.
    pub oscillation: f64,
}

/// `θ ↦ re(e^{−iθ}A) = cos θ · re A + sin θ · im A`.
#[derive(Clone, Debug)]
pub struct SupportFunction {
    re: ComplexMatrix,
    im: ComplexMatrix,
}

impl SupportFunction {
    pub fn new(a: &ComplexMatrix) -> Result<Self> {
        Ok(Self { re: real_part(a)?, im: imag_part(a)? })
    }

    pub fn rotated_real_part(&self, theta: f64) -> ComplexMatrix {
        let (s, c) = theta.sin_cos();
        let n = self.re.rows();
        ComplexMatrix::from_fn(n, n, |i, j| self.re[(i, j)] * c + self.im[(i, j)] * s)
    }

    pub fn value(&self, theta: f64) -> f64 {
        largest_eigenvalue(&self.rotated_real_part(theta))
    }

    pub fn value_and_vector(&self, theta: f64, cfg: &ToleranceConfig) -> Result<(f64, Vec<C64>)> {
        let d = hermitian_eig(&self.rotated_real_part(theta), cfg)?;
        Ok((d.max_eigenvalue(), d.top_eigenvector()))
    }
}

/// `λ_max(re(e^{−iθ}A))` and a unit eigenvector attaining it.
pub fn support_at(a: &ComplexMatrix, theta: f64, cfg: &ToleranceConfig) -> Result<(f64, Vec<C64>)> {
    a.ensure_square("support_at")?;
    SupportFunction::new(a)?.value_and_vector(theta, cfg)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum {
    pub angle: f64,
    pub value: f64,
}

fn grid_angles(points: usize) -> Vec<f64> {
    (0..points).map(|i| TAU * i as f64 / points as f64).collect()
}

fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, width: f64) -> Extremum {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > width {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        Extremum { angle: x1, value: f1 }
    } else {
        Extremum { angle: x2, value: f2 }
    }
}

/// Global maximum of a `2π`-periodic `f` sampled on `angles` with values `g`.
/// Grid local maxima within `margin` of the grid maximum are refined.
fn refine_max(f: &impl Fn(f64) -> f64, angles: &[f64], g: &[f64], margin: f64, tol: f64) -> Extremum {
    let n = g.len();
    let spacing = TAU / n as f64;
    let (imax, &gmax) = g
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty grid");
    let mut best = Extremum { angle: angles[imax], value: gmax };

    let threshold = gmax - margin - tol;
    let mut candidates: Vec<usize> = (0..n)
        .filter(|&i| {
            let prev = g[(i + n - 1) % n];
            let next = g[(i + 1) % n];
            g[i] >= prev && g[i] >= next && g[i] >= threshold
        })
        .collect();
    candidates.sort_by(|&i, &j| g[j].total_cmp(&g[i]).then(i.cmp(&j)));
    candidates.truncate(MAX_BRACKETS);

    let scale = gmax.abs().max(tol);
    let width = (0.2 * tol / scale).sqrt().min(spacing);
    for i in candidates {
        let e = golden_max(f, angles[i] - spacing, angles[i] + spacing, width);
        if e.value > best.value {
            best = e;
        }
    }
    best.angle = best.angle.rem_euclid(TAU);
    best
}

/// Margin for maximizing a support function: `h(θ) ≥ w cos(θ − θ*)`.
fn support_max_margin(gmax: f64, points: usize) -> f64 {
    gmax.max(0.0) * (1.0 - (2.0 * TAU / points as f64).cos())
}

/// Margin for minimizing: `h` is Lipschitz with constant `‖A‖ ≤ 2 w(A)`.
fn support_min_margin(values: &[f64]) -> f64 {
    let w = values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    2.0 * w * 2.0 * TAU / values.len() as f64
}

fn grid_max(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn coarse_grid(sf: &SupportFunction, cfg: &ToleranceConfig) -> (Vec<f64>, Vec<f64>) {
    let angles = grid_angles(cfg.grid_points);
    let values = angles.iter().map(|&t| sf.value(t)).collect();
    (angles, values)
}

fn maximize_support(sf: &SupportFunction, cfg: &ToleranceConfig) -> Extremum {
    let (angles, values) = coarse_grid(sf, cfg);
    let margin = support_max_margin(grid_max(&values), values.len());
    refine_max(&|t| sf.value(t), &angles, &values, margin, cfg.radius_tol)
}

/// Maximizing angle and value of the support function of `W(A)`.
pub fn radius_maximizer(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<Extremum> {
    let n = a.ensure_square("numerical_radius")?;
    cfg.validate()?;
    if n == 1 {
        let z = a[(0, 0)];
        return Ok(Extremum { angle: z.arg().rem_euclid(TAU), value: z.norm() });
    }
    Ok(maximize_support(&SupportFunction::new(a)?, cfg))
}

/// `w(A) = max_θ λ_max(re(e^{−iθ}A))`.
pub fn numerical_radius(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<f64> {
    Ok(radius_maximizer(a, cfg)?.value)
}

/// Unit vector `y` with `|⟨A y, y⟩| ≈ w(A)`, taken from the top eigenvector at
/// the maximizing angle.
pub fn radius_attaining_vector(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<(f64, Vec<C64>)> {
    let e = radius_maximizer(a, cfg)?;
    if a.rows() == 1 {
        return Ok((e.value, vec![C64::new(1.0, 0.0)]));
    }
    let (_, v) = support_at(a, e.angle, cfg)?;
    Ok((e.value, v))
}

/// Refined `max_θ h(θ) − min_θ h(θ)`.
pub fn support_oscillation(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<f64> {
    let n = a.ensure_square("support_oscillation")?;
    cfg.validate()?;
    if n == 1 {
        return Ok(2.0 * a[(0, 0)].norm());
    }
    let sf = SupportFunction::new(a)?;
    let (angles, values) = coarse_grid(&sf, cfg);
    Ok(oscillation_from_grid(&sf, &angles, &values, cfg))
}

fn oscillation_from_grid(sf: &SupportFunction, angles: &[f64], values: &[f64], cfg: &ToleranceConfig) -> f64 {
    let margin = support_max_margin(grid_max(values), values.len());
    let max = refine_max(&|t| sf.value(t), angles, values, margin, cfg.radius_tol);
    let negated: Vec<f64> = values.iter().map(|v| -v).collect();
    let min = refine_max(&|t| -sf.value(t), angles, &negated, support_min_margin(values), cfg.radius_tol);
    max.value + min.value
}

fn disc_threshold(a: &ComplexMatrix, cfg: &ToleranceConfig) -> f64 {
    10.0 * cfg.radius_tol * operator_norm(a, cfg).max(1.0)
}

/// Whether `W(A)` is (numerically) a circular disc centred at the origin,
/// i.e. the support function is constant.
pub fn is_origin_disc(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<bool> {
    if a.ensure_square("is_origin_disc")? == 1 {
        return Ok(a[(0, 0)].norm() == 0.0);
    }
    Ok(support_oscillation(a, cfg)? <= disc_threshold(a, cfg))
}

/// Support function, boundary points and radius over `points` equispaced angles.
pub fn boundary_points(a: &ComplexMatrix, points: usize, cfg: &ToleranceConfig) -> Result<RangeProfile> {
    let n = a.ensure_square("boundary_points")?;
    cfg.validate()?;
    if points < 8 {
        return Err(Error::Usage(format!("at least 8 boundary points are required, got {points}")));
    }
    let angles = grid_angles(points);
    if n == 1 {
        let z = a[(0, 0)];
        let support = angles.iter().map(|&t| (C64::from_polar(1.0, -t) * z).re).collect::<Vec<_>>();
        return Ok(RangeProfile {
            boundary: vec![z; points],
            support,
            angles,
            radius: z.norm(),
            is_disc: z.norm() == 0.0,
            oscillation: 2.0 * z.norm(),
        });
    }

    let sf = SupportFunction::new(a)?;
    let mut support = Vec::with_capacity(points);
    let mut boundary = Vec::with_capacity(points);
    for &t in &angles {
        let (value, x) = sf.value_and_vector(t, cfg)?;
        support.push(value);
        boundary.push(a.quadratic_form(&x));
    }
    let (grid, values) = coarse_grid(&sf, cfg);
    let margin = support_max_margin(grid_max(&values), values.len());
    let radius = refine_max(&|t| sf.value(t), &grid, &values, margin, cfg.radius_tol)
        .value
        .max(support.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    let oscillation = oscillation_from_grid(&sf, &grid, &values, cfg);
    Ok(RangeProfile {
        angles,
        support,
        boundary,
        radius,
        is_disc: oscillation <= disc_threshold(a, cfg),
        oscillation,
    })
}

/// CSV with header `theta,support,re,im`, 17 significant digits per value.
pub fn write_boundary_csv<W: Write>(profile: &RangeProfile, mut out: W) -> io::Result<()> {
    writeln!(out, "theta,support,re,im")?;
    for ((t, h), z) in profile.angles.iter().zip(&profile.support).zip(&profile.boundary) {
        writeln!(out, "{t:.16e},{h:.16e},{:.16e},{:.16e}", z.re, z.im)?;
    }
    Ok(())
}
