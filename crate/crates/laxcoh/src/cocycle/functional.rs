//! Linear functionals on the Lax algebra, given by their values on the
//! graded basis.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lax::LaxAlgebra;
use crate::linalg::Scalar;
use crate::riemann::MatRatFun;

/// Values `φ(X_n^r)` on a degree window.
///
/// Absent entries inside the window are zero. Outside the window the
/// functional is either zero or undefined, in which case evaluation fails.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFunctional {
    window: (i64, i64),
    zero_outside: bool,
    values: BTreeMap<(i64, usize), Scalar>,
}

#[derive(Serialize)]
pub struct FunctionalEntryJson {
    pub n: i64,
    pub r: usize,
    pub value: Scalar,
}

#[derive(Serialize)]
pub struct FunctionalJson {
    pub window: (i64, i64),
    pub zero_outside: bool,
    pub entries: Vec<FunctionalEntryJson>,
}

impl LinearFunctional {
    /// Undefined outside `window`.
    pub fn on_window(lo: i64, hi: i64) -> Self {
        LinearFunctional { window: (lo, hi), zero_outside: false, values: BTreeMap::new() }
    }

    /// Zero outside `window`.
    pub fn supported_on(lo: i64, hi: i64) -> Self {
        LinearFunctional { window: (lo, hi), zero_outside: true, values: BTreeMap::new() }
    }

    pub fn zero() -> Self {
        Self::supported_on(0, -1)
    }

    /// Seeded sparse functional: each `(n, r)` in the window gets a small
    /// nonzero Gaussian integer with probability `density`.
    pub fn random_sparse(dim: usize, lo: i64, hi: i64, density: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = Self::supported_on(lo, hi);
        for n in lo..=hi {
            for r in 0..dim {
                if rng.gen_bool(density) {
                    let mut re: i64 = rng.gen_range(-3..=3);
                    let im: i64 = rng.gen_range(-1..=1);
                    if re == 0 && im == 0 {
                        re = 1;
                    }
                    f.set(n, r, Scalar::gaussian(re, im));
                }
            }
        }
        f
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn set(&mut self, n: i64, r: usize, v: Scalar) {
        if v.is_zero() {
            self.values.remove(&(n, r));
        } else {
            self.values.insert((n, r), v);
        }
    }

    pub fn get(&self, n: i64, r: usize) -> Result<Scalar> {
        if n < self.window.0 || n > self.window.1 {
            if self.zero_outside {
                return Ok(Scalar::zero());
            }
            return Err(Error::WindowExceeded(format!(
                "functional needed at degree {n} outside [{}, {}]",
                self.window.0, self.window.1
            )));
        }
        Ok(self.values.get(&(n, r)).cloned().unwrap_or_else(Scalar::zero))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(i64, usize), &Scalar)> {
        self.values.iter()
    }

    /// `φ(L)` through the degree decomposition of `L`.
    pub fn eval(&self, alg: &LaxAlgebra, l: &MatRatFun) -> Result<Scalar> {
        let max = if self.zero_outside { i64::MAX } else { self.window.1 };
        let mut acc = Scalar::zero();
        for (n, c) in alg.decompose_coords(l, max)? {
            for (r, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    acc += &(x * &self.get(n, r)?);
                }
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = LinearFunctional { values: BTreeMap::new(), ..self.clone() };
        for (k, v) in &self.values {
            out.set(k.0, k.1, v * c);
        }
        out
    }

    pub fn to_json(&self) -> FunctionalJson {
        FunctionalJson {
            window: self.window,
            zero_outside: self.zero_outside,
            entries: self.values.iter().map(|(&(n, r), v)| FunctionalEntryJson { n, r, value: v.clone() }).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    #[test]
    fn evaluation_is_linear_in_components() {
        let alg = reference::ref_gl2();
        let mut f = LinearFunctional::on_window(-2, 2);
        f.set(1, 0, Scalar::from_int(3));
        f.set(-1, 2, Scalar::gaussian(0, 1));
        let a = alg.basis_element(1, 0).unwrap();
        let b = alg.basis_element(-1, 2).unwrap();
        let sum = a.scale(&Scalar::from_int(2)).add(&b).unwrap();
        assert_eq!(f.eval(&alg, &sum).unwrap(), Scalar::gaussian(6, 1));
        assert!(f.eval(&alg, &alg.basis_element(3, 0).unwrap()).is_err());
        let g = LinearFunctional::supported_on(-2, 2);
        assert!(g.eval(&alg, &alg.basis_element(3, 0).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn random_functionals_are_seeded() {
        let a = LinearFunctional::random_sparse(4, -3, 3, 0.3, 11);
        let b = LinearFunctional::random_sparse(4, -3, 3, 0.3, 11);
        assert_eq!(a, b);
        assert!(!a.is_zero());
    }
}
