//! Exact scalars (Q(i)) and exact linear algebra.

pub mod matrix;
pub mod scalar;

pub use matrix::{kernel_basis, normalize_first_one, solve_homogeneous, ExactMatrix};
pub use scalar::{GaussianRational, Scalar};
