use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances shared by every module.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Jacobi convergence threshold on the off-diagonal Frobenius mass.
    pub eps_eig: f64,
    /// Slack for norm equalities such as `‖A^k‖ = ‖A‖^k`.
    pub eps_norm: f64,
    /// Cutoff for structural zeros and numerical rank.
    pub eps_struct: f64,
    /// Target accuracy of the numerical radius.
    pub radius_tol: f64,
    /// Size of the coarse angular grid used to bracket support maxima.
    pub grid_points: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { eps_eig: 1e-12, eps_norm: 1e-8, eps_struct: 1e-7, radius_tol: 1e-9, grid_points: 256 }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [self.eps_eig, self.eps_norm, self.eps_struct, self.radius_tol]
            .iter()
            .all(|&t| t > 0.0 && t.is_finite());
        if !positive {
            return Err(Error::Usage("tolerances must be finite and strictly positive".into()));
        }
        if self.grid_points < 8 {
            return Err(Error::Usage(format!(
                "grid_points must be at least 8, got {}",
                self.grid_points
            )));
        }
        Ok(())
    }

    pub fn with_radius_tol(mut self, tol: f64) -> Self {
        self.radius_tol = tol;
        self
    }

    pub fn with_grid_points(mut self, points: usize) -> Self {
        self.grid_points = points;
        self
    }
}
