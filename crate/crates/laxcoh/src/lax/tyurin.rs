use std::sync::Arc;

use super::flavor::{Flavor, FlavorKind};
use crate::error::{Error, Result};
use crate::linalg::{dot, Scalar, Vector};
use crate::riemann::MarkedSphere;

/// Weak points with their Tyurin vectors `α_s`.
#[derive(Clone, Debug, PartialEq)]
pub struct TyurinData {
    sphere: Arc<MarkedSphere>,
    alphas: Vec<Vector>,
}

impl TyurinData {
    pub fn new(sphere: Arc<MarkedSphere>, alphas: Vec<Vector>, flavor: &Flavor) -> Result<Self> {
        if alphas.len() != sphere.num_weak() {
            return Err(Error::Invalid(format!(
                "{} Tyurin vectors for {} weak points",
                alphas.len(),
                sphere.num_weak()
            )));
        }
        for (s, a) in alphas.iter().enumerate() {
            if a.len() != flavor.size() {
                return Err(Error::Invalid(format!(
                    "alpha {} has length {}, expected {}",
                    s + 1,
                    a.len(),
                    flavor.size()
                )));
            }
            if flavor.kind() == FlavorKind::So && !dot(a, a).is_zero() {
                return Err(Error::Invalid(format!("alpha {} is not isotropic", s + 1)));
            }
        }
        Ok(TyurinData { sphere, alphas })
    }

    /// No weak points at all.
    pub fn empty() -> Self {
        TyurinData { sphere: MarkedSphere::plain(), alphas: Vec::new() }
    }

    pub fn sphere(&self) -> &Arc<MarkedSphere> {
        &self.sphere
    }

    pub fn alphas(&self) -> &[Vector] {
        &self.alphas
    }

    pub fn alpha(&self, s: usize) -> &Vector {
        &self.alphas[s]
    }

    pub fn gamma(&self, s: usize) -> &Scalar {
        self.sphere.gamma(s)
    }

    pub fn num_weak(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_active(&self, s: usize) -> bool {
        self.alphas[s].iter().any(|x| !x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so_requires_isotropy() {
        let sp = MarkedSphere::new(vec![Scalar::one()]).unwrap();
        let so3 = Flavor::new(FlavorKind::So, 3).unwrap();
        let good = vec![Scalar::one(), Scalar::i(), Scalar::zero()];
        let bad = vec![Scalar::one(), Scalar::zero(), Scalar::zero()];
        assert!(TyurinData::new(sp.clone(), vec![good], &so3).is_ok());
        assert!(TyurinData::new(sp.clone(), vec![bad.clone()], &so3).is_err());
        assert!(TyurinData::new(sp, vec![bad], &Flavor::gl(3)).is_ok());
    }
}
