//! The geometric cocycles as residue sums.

use serde::Serialize;

use crate::connection::{nabla, ConnectionForm, VectorField};
use crate::error::{Error, Result};
use crate::lax::LaxAlgebra;
use crate::linalg::Scalar;
use crate::riemann::{integrate_cycle, scalar_residue, Cycle, MatRatFun, Point, RatFun};

/// `tr(L · (dL'/dz + [W, L']))`.
pub fn gamma1_integrand(l: &MatRatFun, l2: &MatRatFun, w: &ConnectionForm) -> Result<RatFun> {
    let d2 = l2.derivative().add(&w.value.commutator(l2)?)?;
    l.trace_of_product(&d2)
}

/// `tr(L dL'/dz) − tr(W [L, L'])`.
pub fn gamma1_rewritten_integrand(l: &MatRatFun, l2: &MatRatFun, w: &ConnectionForm) -> Result<RatFun> {
    l.trace_of_product(&l2.derivative())?.sub(&w.value.trace_of_product(&l.commutator(l2)?)?)
}

/// `tr(L) · d tr(L')/dz`.
pub fn gamma2_integrand(l: &MatRatFun, l2: &MatRatFun) -> Result<RatFun> {
    l.trace().mul(&l2.trace().derivative())
}

/// `(1/2πi) ∮_C tr(L · ∇L')`, cross-checked against the rewritten integrand.
pub fn gamma1(l: &MatRatFun, l2: &MatRatFun, w: &ConnectionForm, cycle: &Cycle) -> Result<Scalar> {
    let a = integrate_cycle(&gamma1_integrand(l, l2, w)?, cycle);
    let b = integrate_cycle(&gamma1_rewritten_integrand(l, l2, w)?, cycle);
    if a != b {
        return Err(Error::Internal(format!("gamma1 forms disagree: {a} vs {b}")));
    }
    Ok(a)
}

/// `(1/2πi) ∮_C tr(L) · d tr(L')`.
pub fn gamma2(l: &MatRatFun, l2: &MatRatFun, cycle: &Cycle) -> Result<Scalar> {
    Ok(integrate_cycle(&gamma2_integrand(l, l2)?, cycle))
}

/// `γ₂` computed through the covariant derivative `∇_{∂_z}` of `ω`.
pub fn gamma2_with_connection(l: &MatRatFun, l2: &MatRatFun, w: &ConnectionForm, cycle: &Cycle) -> Result<Scalar> {
    let e = VectorField::new(RatFun::constant(l.sphere(), Scalar::one()));
    let g = l.trace().mul(&nabla(&e, l2, w)?.trace())?;
    Ok(integrate_cycle(&g, cycle))
}

/// Residues of both integrands at one weak point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeakResidues {
    pub point: String,
    pub gamma1: Scalar,
    pub gamma2: Scalar,
}

impl WeakResidues {
    pub fn vanish(&self) -> bool {
        self.gamma1.is_zero() && self.gamma2.is_zero()
    }
}

/// Residues of `tr(L ∇L')` and `tr L · d tr L'` at every weak point.
pub fn weak_point_residues(
    alg: &LaxAlgebra,
    l: &MatRatFun,
    l2: &MatRatFun,
    w: &ConnectionForm,
) -> Result<Vec<WeakResidues>> {
    let g1 = gamma1_integrand(l, l2, w)?;
    let g2 = gamma2_integrand(l, l2)?;
    Ok((0..alg.tyurin().num_weak())
        .map(|s| {
            let p = Point::Weak(s);
            WeakResidues { point: p.label(), gamma1: scalar_residue(&g1, p), gamma2: scalar_residue(&g2, p) }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{kn_function, minimal_connection};
    use crate::linalg::ExactMatrix;
    use crate::reference;

    fn zero_connection(alg: &LaxAlgebra) -> ConnectionForm {
        minimal_connection(alg).unwrap()
    }

    #[test]
    fn loop_values_are_direct_residues() {
        let alg = reference::ref_loop();
        let w = zero_connection(&alg);
        assert!(w.value.is_zero());
        let c = Cycle::around_zero();
        let x = ExactMatrix::from_ints(&[&[1, 2], &[0, -1]]);
        let y = ExactMatrix::from_ints(&[&[0, 1], &[3, 0]]);
        let txy = alg.flavor().trace_form(&x, &y);
        assert_eq!(txy, Scalar::from_int(6));
        for n in -3..=3i64 {
            for m in -3..=3i64 {
                let a = MatRatFun::monomial(alg.sphere(), &x, n);
                let b = MatRatFun::monomial(alg.sphere(), &y, m);
                // res_0 z^n · m z^{m−1} tr(XY) = m tr(XY) δ_{n+m,0}
                let expect = if n + m == 0 { Scalar::from_int(m) * &txy } else { Scalar::zero() };
                assert_eq!(gamma1(&a, &b, &w, &c).unwrap(), expect, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn gamma2_on_scalar_matrices() {
        let alg = reference::ref_s(3);
        let w = zero_connection(&alg);
        let c = Cycle::around_zero();
        let i3 = ExactMatrix::identity(3);
        for n in -3..=3i64 {
            for m in -3..=3i64 {
                let a = MatRatFun::monomial(alg.sphere(), &i3, n);
                let b = MatRatFun::monomial(alg.sphere(), &i3, m);
                let expect = if n + m == 0 { Scalar::from_int(9 * m) } else { Scalar::zero() };
                assert_eq!(gamma2(&a, &b, &c).unwrap(), expect);
                assert_eq!(gamma2_with_connection(&a, &b, &w, &c).unwrap(), expect);
            }
        }
        let one = reference::ref_s(1);
        let a = MatRatFun::monomial(one.sphere(), &ExactMatrix::identity(1), 1);
        let b = MatRatFun::monomial(one.sphere(), &ExactMatrix::identity(1), -1);
        assert_eq!(gamma2(&a, &b, &c).unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn non_coboundary_pair_on_sl2() {
        let alg = reference::ref_sl2();
        let w = zero_connection(&alg);
        let h = ExactMatrix::from_ints(&[&[1, 0], &[0, -1]]);
        let h0 = alg.element_for_leading(&h, 0).unwrap();
        let hm = h0.scalar_mul(&kn_function(alg.sphere(), -1)).unwrap();
        let hp = h0.scalar_mul(&kn_function(alg.sphere(), 1)).unwrap();
        assert!(hm.commutator(&hp).unwrap().is_zero());
        let c = Cycle::separating(alg.sphere());
        assert_eq!(gamma1(&hm, &hp, &w, &c).unwrap(), Scalar::from_int(2));
    }

    #[test]
    fn integrands_are_regular_at_weak_points() {
        let alg = reference::ref_gl2();
        let w = zero_connection(&alg);
        for (n, m) in [(-2, 1), (0, 0), (1, -1), (3, -4)] {
            for r in 0..4 {
                let a = alg.basis_element(n, r).unwrap();
                let b = alg.basis_element(m, 3 - r).unwrap();
                assert!(weak_point_residues(&alg, &a, &b, &w).unwrap().iter().all(WeakResidues::vanish));
            }
        }
    }
}
