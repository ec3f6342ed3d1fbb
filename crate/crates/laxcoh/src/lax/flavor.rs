//! The finite-dimensional matrix algebras and their canonical bases.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Scalar, Vector};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlavorKind {
    Gl,
    Sl,
    /// Scalar matrices.
    S,
    So,
    Sp,
}

impl FlavorKind {
    pub fn name(&self) -> &'static str {
        match self {
            FlavorKind::Gl => "gl",
            FlavorKind::Sl => "sl",
            FlavorKind::S => "s",
            FlavorKind::So => "so",
            FlavorKind::Sp => "sp",
        }
    }
}

impl FromStr for FlavorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gl" => Ok(FlavorKind::Gl),
            "sl" => Ok(FlavorKind::Sl),
            "s" => Ok(FlavorKind::S),
            "so" => Ok(FlavorKind::So),
            "sp" => Ok(FlavorKind::Sp),
            _ => Err(Error::Parse(format!("unknown flavor '{s}'"))),
        }
    }
}

/// A matrix Lie algebra `g ⊆ gl(size)` with a fixed ordered basis.
///
/// For `sp` the parameter `n` is the half rank, so matrices are `2n × 2n`
/// and `σ = [[0, I_n], [−I_n, 0]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Flavor {
    kind: FlavorKind,
    n: usize,
    size: usize,
    basis: Vec<ExactMatrix>,
    labels: Vec<String>,
    /// Left inverse of the basis: `coords = extractor · vec(X)`.
    extractor: ExactMatrix,
    sigma: Option<ExactMatrix>,
}

impl Flavor {
    pub fn new(kind: FlavorKind, n: usize) -> Result<Self> {
        let min = match kind {
            FlavorKind::Sl | FlavorKind::So => 2,
            _ => 1,
        };
        if n < min {
            return Err(Error::Invalid(format!("{}({n}) is not supported", kind.name())));
        }
        let size = if kind == FlavorKind::Sp { 2 * n } else { n };
        let (basis, labels) = canonical_basis(kind, n);
        let b = ExactMatrix::from_fn(size * size, basis.len(), |e, r| basis[r].entries()[e].clone());
        let bt = b.transpose();
        let extractor = bt.try_mul(&b)?.inverse()?.try_mul(&bt)?;
        let sigma = (kind == FlavorKind::Sp).then(|| standard_sigma(n));
        Ok(Flavor { kind, n, size, basis, labels, extractor, sigma })
    }

    pub fn gl(n: usize) -> Self {
        Self::new(FlavorKind::Gl, n).expect("valid")
    }

    pub fn sl(n: usize) -> Self {
        Self::new(FlavorKind::Sl, n).expect("valid")
    }

    pub fn kind(&self) -> FlavorKind {
        self.kind
    }

    /// The parameter `n`: matrix size, or half the matrix size for `sp`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix size.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ExactMatrix] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sigma(&self) -> Option<&ExactMatrix> {
        self.sigma.as_ref()
    }

    pub fn is_simple(&self) -> bool {
        match self.kind {
            FlavorKind::Sl | FlavorKind::Sp => true,
            FlavorKind::So => self.n >= 3 && self.n != 4,
            _ => false,
        }
    }

    /// Algebra in which connection forms take values.
    ///
    /// A normalized residue has trace 1, so `sl` and `s` use `gl`.
    pub fn connection_flavor(&self) -> Flavor {
        match self.kind {
            FlavorKind::Sl | FlavorKind::S => Flavor::gl(self.n),
            _ => self.clone(),
        }
    }

    pub fn name(&self) -> String {
        match self.kind {
            FlavorKind::Sp => format!("sp({})", 2 * self.n),
            k => format!("{}({})", k.name(), self.n),
        }
    }

    /// Coordinates over the canonical basis; `None` if `x ∉ g`.
    pub fn coordinates(&self, x: &ExactMatrix) -> Option<Vector> {
        let c = self.extractor.mul_vec(x.entries());
        (self.combine(&c) == *x).then_some(c)
    }

    pub fn contains(&self, x: &ExactMatrix) -> bool {
        x.rows() == self.size && x.cols() == self.size && self.coordinates(x).is_some()
    }

    pub fn combine(&self, coords: &[Scalar]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.size, self.size);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = &out + &b.scale(c);
            }
        }
        out
    }

    /// `tr(XY)`.
    pub fn trace_form(&self, x: &ExactMatrix, y: &ExactMatrix) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..x.rows() {
            for j in 0..x.cols() {
                if !x[(i, j)].is_zero() && !y[(j, i)].is_zero() {
                    acc += &x[(i, j)] * &y[(j, i)];
                }
            }
        }
        acc
    }

    /// Matrix of `ad` structure constants: `[B_p, B_q] = Σ_r c[p][q][r] B_r`.
    pub fn structure_constants(&self) -> Vec<Vec<Vector>> {
        self.basis
            .iter()
            .map(|p| {
                self.basis
                    .iter()
                    .map(|q| self.coordinates(&p.commutator(q).expect("square")).expect("closed under bracket"))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn standard_sigma(n: usize) -> ExactMatrix {
    ExactMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if j == i + n {
            Scalar::one()
        } else if i == j + n {
            Scalar::from_int(-1)
        } else {
            Scalar::zero()
        }
    })
}

fn canonical_basis(kind: FlavorKind, n: usize) -> (Vec<ExactMatrix>, Vec<String>) {
    let mut b = Vec::new();
    let mut l = Vec::new();
    let e = |size: usize, i: usize, j: usize| ExactMatrix::unit(size, i, j);
    match kind {
        FlavorKind::Gl => {
            for i in 0..n {
                for j in 0..n {
                    b.push(e(n, i, j));
                    l.push(format!("E{}{}", i + 1, j + 1));
                }
            }
        }
        FlavorKind::Sl => {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        b.push(e(n, i, j));
                        l.push(format!("E{}{}", i + 1, j + 1));
                    }
                }
            }
            for i in 0..n - 1 {
                b.push(&e(n, i, i) - &e(n, i + 1, i + 1));
                l.push(format!("H{}", i + 1));
            }
        }
        FlavorKind::S => {
            b.push(ExactMatrix::identity(n));
            l.push("I".into());
        }
        FlavorKind::So => {
            for i in 0..n {
                for j in i + 1..n {
                    b.push(&e(n, i, j) - &e(n, j, i));
                    l.push(format!("A{}{}", i + 1, j + 1));
                }
            }
        }
        FlavorKind::Sp => {
            let s = 2 * n;
            for i in 0..n {
                for j in 0..n {
                    b.push(&e(s, i, j) - &e(s, n + j, n + i));
                    l.push(format!("A{}{}", i + 1, j + 1));
                }
            }
            for i in 0..n {
                for j in i..n {
                    let m = if i == j { e(s, i, n + i) } else { &e(s, i, n + j) + &e(s, j, n + i) };
                    b.push(m);
                    l.push(format!("B{}{}", i + 1, j + 1));
                }
            }
            for i in 0..n {
                for j in i..n {
                    let m = if i == j { e(s, n + i, i) } else { &e(s, n + i, j) + &e(s, n + j, i) };
                    b.push(m);
                    l.push(format!("C{}{}", i + 1, j + 1));
                }
            }
        }
    }
    (b, l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let d = |k, n| Flavor::new(k, n).unwrap().dim();
        assert_eq!(d(FlavorKind::Gl, 3), 9);
        assert_eq!(d(FlavorKind::Sl, 2), 3);
        assert_eq!(d(FlavorKind::S, 4), 1);
        assert_eq!(d(FlavorKind::So, 3), 3);
        assert_eq!(d(FlavorKind::Sp, 2), 10);
    }

    #[test]
    fn membership_of_bases() {
        for (k, n) in [(FlavorKind::Sl, 3), (FlavorKind::So, 4), (FlavorKind::Sp, 2), (FlavorKind::S, 2)] {
            let f = Flavor::new(k, n).unwrap();
            for x in f.basis() {
                assert!(f.contains(x));
                if let Some(s) = f.sigma() {
                    let c = &(&x.transpose() * s) + &(s * x);
                    assert!(c.is_zero());
                }
            }
            assert!(!f.contains(&ExactMatrix::unit(f.size(), 0, 0)) || k == FlavorKind::Gl);
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let f = Flavor::new(FlavorKind::Sp, 2).unwrap();
        let c: Vec<Scalar> = (0..f.dim()).map(|k| Scalar::gaussian(k as i64 - 3, 1)).collect();
        assert_eq!(f.coordinates(&f.combine(&c)).unwrap(), c);
    }

    #[test]
    fn sl_closed_under_bracket() {
        let f = Flavor::sl(3);
        let c = f.structure_constants();
        assert_eq!(c.len(), 8);
    }
}
