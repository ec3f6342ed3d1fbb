//! Lax operator algebras on the Riemann sphere, computed exactly.
//!
//! The crate builds matrix-valued rational functions on P¹ with marked points
//! `P₊ = 0`, `P₋ = ∞` and Tyurin-constrained weak singularities, their
//! almost-graded structure, the covariant-derivative action of vector fields,
//! the geometric 2-cocycles and the normalization machinery that pins the
//! local cohomology class down to a single scalar. All arithmetic takes place
//! in the Gaussian rationals, so every check is an exact equality.
//!
//! Layout:
//!
//! - [`linalg`]: scalars, matrices, rref, kernels, affine solves.
//! - [`riemann`]: rational functions, Laurent jets, residues, cycles.
//! - [`lax`]: flavors, Tyurin data, membership, homogeneous bases, grading.
//! - [`connection`]: function and vector-field algebras, connection forms,
//!   covariant derivatives, module axioms.
//! - [`cocycle`]: geometric cocycles, coboundaries, invariance, locality,
//!   level structure.
//! - [`chevalley`]: root systems, lifted Chevalley bases, normalization and
//!   the uniqueness driver.
//! - [`config`] and [`report`]: JSON configuration and verification reports
//!   used by the `laxcoh` binary.

pub mod chevalley;
pub mod cocycle;
pub mod config;
pub mod connection;
pub mod error;
pub mod lax;
pub mod linalg;
pub mod reference;
pub mod report;
pub mod riemann;
pub mod sample;
pub mod suites;

pub use error::{Error, Result};
pub use linalg::{ExactMatrix, Scalar, Vector};
