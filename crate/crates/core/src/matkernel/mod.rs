//! Dense complex matrices and the spectral primitives built on them.

mod eig;
mod matrix;
mod ops;
mod tolerance;

pub use eig::{hermitian_eig, largest_eigenvalue, HermitianEigenDecomposition};
pub use matrix::{inner, kron_vec, normalize, vec_norm, ComplexMatrix, C64, ONE, ZERO};
pub use ops::{
    adjoint, hermitian_rank, imag_part, mat_power, operator_norm, psd_sqrt, real_part,
    spectral_radius, tensor_product, top_right_singular_vector,
};
pub use tolerance::ToleranceConfig;
