//! Laurent jets, residues of `g(z) dz` and cycle integration.

use super::ratfun::{MatRatFun, RatFun};
use super::sphere::{Cycle, Point};
use crate::linalg::{ExactMatrix, Scalar};

/// Default number of jet coefficients.
pub const DEFAULT_JET_WINDOW: usize = 6;

/// A truncated Laurent expansion in the local coordinate at a marked point.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentJet {
    pub point: Point,
    pub lead_order: i64,
    pub coeffs: Vec<ExactMatrix>,
    /// Highest order included.
    pub truncation_order: i64,
}

impl LaurentJet {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ExactMatrix::is_zero)
    }

    /// Coefficient of the given order, zero outside the window below truncation.
    pub fn at(&self, order: i64) -> Option<&ExactMatrix> {
        if order < self.lead_order || order > self.truncation_order {
            return None;
        }
        self.coeffs.get((order - self.lead_order) as usize)
    }
}

/// Jet with `window` coefficients starting at the order of `f` at `p`.
///
/// The zero function has the canonical zero jet with `lead_order = 0`.
pub fn jet_at(f: &MatRatFun, p: Point, window: usize) -> LaurentJet {
    let window = window.max(1);
    let lead = f.ord_at(p).unwrap_or(0);
    let top = lead + window as i64 - 1;
    LaurentJet { point: p, lead_order: lead, coeffs: f.coefficients(p, lead, top), truncation_order: top }
}

/// Residue of `g(z) dz` at `p`.
pub fn residue_at(g: &MatRatFun, p: Point) -> ExactMatrix {
    match p {
        Point::Infinity => g.coefficient(p, 1).scale(&Scalar::from_int(-1)),
        _ => g.coefficient(p, -1),
    }
}

/// Scalar residue of `g(z) dz` at `p`.
pub fn scalar_residue(g: &RatFun, p: Point) -> Scalar {
    residue_at(g.as_matrix(), p)[(0, 0)].clone()
}

/// `(1/2πi) ∮_C g dz` as the sum of residues at the enclosed points.
pub fn integrate_cycle(g: &RatFun, c: &Cycle) -> Scalar {
    c.enclosed().map(|&p| scalar_residue(g, p)).sum()
}

/// Residues of `g dz` at every marked point.
pub fn all_residues(g: &RatFun) -> Vec<(Point, Scalar)> {
    g.sphere().points().into_iter().map(|p| (p, scalar_residue(g, p))).collect()
}

/// The residue theorem for `g dz`: the residues over all marked points sum to 0.
pub fn residue_theorem_check(g: &RatFun) -> bool {
    all_residues(g).into_iter().map(|(_, r)| r).sum::<Scalar>().is_zero()
}
