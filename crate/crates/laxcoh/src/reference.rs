//! The reference instances used throughout the tests and examples.
//!
//! - `gl2` / `sl2`: two weak points `γ = 1, 2` with `α₁ = (1, 0)`, `α₂ = (1, 1)`.
//! - `so3`: one weak point `γ = 1` with isotropic `α = (1, i, 0)`.
//! - `sp4`: one weak point `γ = 1` with `α = (1, 0, 0, 0)`.
//! - `loop`: `sl(2)` without weak points.
//!
//! The single-point `so3` and `sp4` data admit no graded basis; the two-point
//! variants `so3_pair` and `sp4_pair` do and stand in for them wherever one
//! is needed.

use std::sync::Arc;

use crate::lax::{Flavor, FlavorKind, LaxAlgebra, TyurinData};
use crate::linalg::{Scalar, Vector};
use crate::riemann::MarkedSphere;

fn ints(v: &[i64]) -> Vector {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

fn build(flavor: Flavor, gammas: &[i64], alphas: Vec<Vector>) -> Arc<LaxAlgebra> {
    let sphere = MarkedSphere::new(gammas.iter().map(|&g| Scalar::from_int(g)).collect()).expect("distinct points");
    let tyurin = TyurinData::new(sphere, alphas, &flavor).expect("valid Tyurin data");
    LaxAlgebra::new(flavor, tyurin)
}

fn two_point_alphas() -> Vec<Vector> {
    vec![ints(&[1, 0]), ints(&[1, 1])]
}

pub fn ref_gl2() -> Arc<LaxAlgebra> {
    build(Flavor::gl(2), &[1, 2], two_point_alphas())
}

pub fn ref_sl2() -> Arc<LaxAlgebra> {
    build(Flavor::sl(2), &[1, 2], two_point_alphas())
}

/// `s(n)` on the two-point sphere, with `α` padded by zeros.
pub fn ref_s(n: usize) -> Arc<LaxAlgebra> {
    let alphas = two_point_alphas()
        .into_iter()
        .map(|a| (0..n).map(|i| a.get(i).cloned().unwrap_or_else(Scalar::zero)).collect())
        .collect();
    build(Flavor::new(FlavorKind::S, n).expect("valid"), &[1, 2], alphas)
}

pub fn ref_so3() -> Arc<LaxAlgebra> {
    let alpha = vec![Scalar::one(), Scalar::i(), Scalar::zero()];
    build(Flavor::new(FlavorKind::So, 3).expect("valid"), &[1], vec![alpha])
}

pub fn ref_sp4() -> Arc<LaxAlgebra> {
    build(Flavor::new(FlavorKind::Sp, 2).expect("valid"), &[1], vec![ints(&[1, 0, 0, 0])])
}

/// `so(3)` with `γ = 1, 2`, `α₁ = (1, i, 0)`, `α₂ = (0, 1, i)`.
pub fn ref_so3_pair() -> Arc<LaxAlgebra> {
    let a1 = vec![Scalar::one(), Scalar::i(), Scalar::zero()];
    let a2 = vec![Scalar::zero(), Scalar::one(), Scalar::i()];
    build(Flavor::new(FlavorKind::So, 3).expect("valid"), &[1, 2], vec![a1, a2])
}

/// `sp(4)` with `γ = 1, 2`, `α₁ = (1, 0, 0, 0)`, `α₂ = (1, 1, 2, 3)`.
pub fn ref_sp4_pair() -> Arc<LaxAlgebra> {
    build(Flavor::new(FlavorKind::Sp, 2).expect("valid"), &[1, 2], vec![ints(&[1, 0, 0, 0]), ints(&[1, 1, 2, 3])])
}

pub fn ref_loop() -> Arc<LaxAlgebra> {
    build(Flavor::sl(2), &[], Vec::new())
}

/// Same Tyurin data, different flavor.
pub fn with_flavor(alg: &LaxAlgebra, flavor: Flavor) -> Arc<LaxAlgebra> {
    let t = alg.tyurin();
    let tyurin = TyurinData::new(t.sphere().clone(), t.alphas().to_vec(), &flavor).expect("compatible flavor");
    LaxAlgebra::new(flavor, tyurin)
}

/// All reference instances with their names.
pub fn all() -> Vec<(&'static str, Arc<LaxAlgebra>)> {
    vec![("gl2", ref_gl2()), ("sl2", ref_sl2()), ("so3", ref_so3()), ("sp4", ref_sp4()), ("loop", ref_loop())]
}
