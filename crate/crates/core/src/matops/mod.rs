//! Dense complex linear algebra and the numerical predicates built on it.

mod matrix;
mod spectral;
mod subspace;
mod tolerance;

pub use matrix::{ComplexMatrix, C64, I, ONE, ZERO};
pub use spectral::{
    complex_vec_norm, hermitian_spectrum, is_partial_isometry, operator_norm,
    partial_isometry_residual, real_nullspace, symmetric_eigenvalues,
};
pub(crate) use spectral::geodesic_scale;
pub use subspace::{numerical_rank, span_residual, SubspaceBasis};
pub use tolerance::Tolerance;
