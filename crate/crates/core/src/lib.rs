//! Numerical ranges and numerical radii of dense complex matrices, the
//! power-norm and nilpotency indices, block-shift structure of nonnegative
//! matrices, and executable checks of when `w(A⊗B) = ‖A‖·w(B)`.

pub mod error;
pub mod harness;
pub mod indices;
pub mod matkernel;
pub mod numrange;
pub mod report;
pub mod structures;
pub mod tensorlaw;

pub use error::{Error, Result};
pub use matkernel::{ComplexMatrix, ToleranceConfig, C64};
