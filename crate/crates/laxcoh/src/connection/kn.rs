//! Functions `A_m = z^m` and vector fields `e_k = z^{k+1} d/dz` of the
//! two-point algebra on the sphere.

use std::sync::Arc;

use crate::error::Result;
use crate::linalg::Scalar;
use crate::riemann::{MarkedSphere, MatRatFun, RatFun};

/// `A_m`.
pub fn kn_function(sphere: &Arc<MarkedSphere>, m: i64) -> RatFun {
    RatFun::monomial(sphere, Scalar::one(), m)
}

/// A meromorphic vector field `v(z) d/dz`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    pub coeff: RatFun,
}

impl VectorField {
    pub fn new(coeff: RatFun) -> Self {
        VectorField { coeff }
    }

    pub fn zero(sphere: &Arc<MarkedSphere>) -> Self {
        VectorField { coeff: RatFun::zero(sphere) }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// `[v d/dz, u d/dz] = (v u' − u v') d/dz`.
    pub fn bracket(&self, o: &VectorField) -> Result<VectorField> {
        let a = self.coeff.mul(&o.coeff.derivative())?;
        let b = o.coeff.mul(&self.coeff.derivative())?;
        Ok(VectorField { coeff: a.sub(&b)? })
    }

    /// `e . h = v h'`.
    pub fn act(&self, h: &RatFun) -> Result<RatFun> {
        self.coeff.mul(&h.derivative())
    }

    /// `e . L` entrywise.
    pub fn act_matrix(&self, l: &MatRatFun) -> Result<MatRatFun> {
        l.derivative().scalar_mul(&self.coeff)
    }

    /// `g · e`.
    pub fn times(&self, g: &RatFun) -> Result<VectorField> {
        Ok(VectorField { coeff: self.coeff.mul(g)? })
    }

    pub fn add(&self, o: &VectorField) -> Result<VectorField> {
        Ok(VectorField { coeff: self.coeff.add(&o.coeff)? })
    }

    pub fn sub(&self, o: &VectorField) -> Result<VectorField> {
        Ok(VectorField { coeff: self.coeff.sub(&o.coeff)? })
    }

    pub fn scale(&self, c: &Scalar) -> VectorField {
        VectorField { coeff: self.coeff.scale(c) }
    }
}

/// `e_k`.
pub fn kn_vector_field(sphere: &Arc<MarkedSphere>, k: i64) -> VectorField {
    VectorField { coeff: RatFun::monomial(sphere, Scalar::one(), k + 1) }
}

/// Checks `A_k A_m = A_{k+m}`, `[e_k, e_m] = (m − k) e_{k+m}` and
/// `e_k . A_m = m A_{k+m}` for all `|k|, |m| ≤ bound`.
pub fn kn_brackets(sphere: &Arc<MarkedSphere>, bound: i64) -> Result<bool> {
    for k in -bound..=bound {
        for m in -bound..=bound {
            let s = Scalar::from_int(m - k);
            let ok = kn_function(sphere, k).mul(&kn_function(sphere, m))? == kn_function(sphere, k + m)
                && kn_vector_field(sphere, k).bracket(&kn_vector_field(sphere, m))?
                    == kn_vector_field(sphere, k + m).scale(&s)
                && kn_vector_field(sphere, k).act(&kn_function(sphere, m))?
                    == kn_function(sphere, k + m).scale(&Scalar::from_int(m));
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_constants() {
        let sp = MarkedSphere::new(vec![Scalar::one()]).unwrap();
        assert!(kn_brackets(&sp, 3).unwrap());
        let e1 = kn_vector_field(&sp, 1);
        let em1 = kn_vector_field(&sp, -1);
        assert_eq!(e1.bracket(&em1).unwrap(), kn_vector_field(&sp, 0).scale(&Scalar::from_int(-2)));
        let a = kn_function(&sp, 4);
        assert_eq!(kn_vector_field(&sp, 0).act(&a).unwrap(), a.scale(&Scalar::from_int(4)));
        assert_eq!(kn_function(&sp, 2).mul(&kn_function(&sp, 3)).unwrap(), kn_function(&sp, 5));
    }
}
