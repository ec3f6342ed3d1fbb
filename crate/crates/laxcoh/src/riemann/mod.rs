//! Rational and matrix-valued rational functions on P¹ with marked points.
//!
//! Local coordinates: `z` at `P₊ = 0`, `z − γ_s` at weak points and
//! `w = 1/z` at `P₋ = ∞`.

pub mod jet;
pub mod poly;
pub mod ratfun;
pub mod sphere;

pub use jet::{
    all_residues, integrate_cycle, jet_at, residue_at, residue_theorem_check, scalar_residue, LaurentJet,
    DEFAULT_JET_WINDOW,
};
pub use poly::Poly;
pub use ratfun::{MatRatFun, MatRatFunJson, RatFun, RatFunJson};
pub use sphere::{Cycle, MarkedSphere, Point};
