//! Exact field arithmetic over ℚ(i) and dense exact linear algebra.

mod matrix;
mod scalar;

pub use matrix::{dot, outer, AffineSolution, ExactMatrix, Vector};
pub use scalar::Scalar;
