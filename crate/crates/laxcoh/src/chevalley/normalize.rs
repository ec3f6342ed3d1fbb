//! Normalization of bounded cocycles by descending induction on degree.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use super::lift::{ChevIndex, LiftedBasis};
use crate::cocycle::{Cocycle, CocycleTable, LinearFunctional};
use crate::error::{Error, Result};
use crate::lax::LaxAlgebra;
use crate::linalg::{Scalar, Vector};
use crate::report::CheckEntry;
use crate::riemann::MatRatFun;

/// Degree bound `D`: tables cover `[−D, D]²` with levels in `[−2D, 2D]`.
pub const DEFAULT_NORMALIZATION_DEGREE: i64 = 6;

/// A higher-term element `Y(n, α)` or `Z(n, i)` that is not zero.
#[derive(Clone, Debug, Serialize)]
pub struct HigherTerm {
    pub kind: &'static str,
    pub n: i64,
    pub element: String,
    pub degrees: Vec<i64>,
}

/// Result of normalizing a bounded cocycle.
#[derive(Clone, Debug)]
pub struct Normalization {
    /// `γ = γ′ − δΦ` on the canonical basis.
    pub table: CocycleTable,
    /// The input table `γ′`.
    pub input: CocycleTable,
    /// `Φ(X_n^a)` in the Chevalley basis, for `n < cutoff`.
    pub phi_chevalley: BTreeMap<(i64, ChevIndex), Scalar>,
    /// `Φ` on the canonical basis.
    pub phi: LinearFunctional,
    /// `M`: `Φ` vanishes in degrees `≥ M`.
    pub cutoff: i64,
    pub degree: i64,
    /// Higher terms met during the induction; empty when the algebra is
    /// graded.
    pub higher_terms: Vec<HigherTerm>,
}

#[derive(Serialize)]
pub struct PhiEntryJson {
    pub n: i64,
    pub element: String,
    pub value: Scalar,
}

impl Normalization {
    pub fn phi_json(&self, lb: &LiftedBasis) -> Vec<PhiEntryJson> {
        self.phi_chevalley
            .iter()
            .map(|(&(n, a), v)| PhiEntryJson { n, element: lb.labels()[a].clone(), value: v.clone() })
            .collect()
    }
}

fn phi_of(phi: &BTreeMap<(i64, ChevIndex), Scalar>, parts: &[(i64, Vector)], cutoff: i64) -> Scalar {
    let mut acc = Scalar::zero();
    for (k, c) in parts.iter().filter(|(k, _)| *k < cutoff) {
        for (a, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            if let Some(v) = phi.get(&(*k, a)) {
                acc += &(x * v);
            }
        }
    }
    acc
}

/// Normalizes `γ′` on the degree window `[−D, D]`.
///
/// The cutoff is `M = S + 1` with `S` the highest level carrying a nonzero
/// value of `γ′` on the window (`M = 1` for a zero table). For `n` from
/// `M − 1` down to `−2D`:
/// `Φ(E_n^{±α}) = ±½ γ′(H_0^α, E_n^{±α}) + Φ(Y(n, ±α))` and
/// `Φ(H_n^i) = γ′(E_0^{α_i}, E_n^{−α_i}) + Φ(Z(n, i))`, where
/// `Y = E_n^{±α} ∓ ½[H_0^α, E_n^{±α}]` and `Z = H_n^i − [E_0^{α_i}, E_n^{−α_i}]`
/// are decomposed exactly and only involve degrees above `n`.
pub fn normalize(alg: &LaxAlgebra, lb: &LiftedBasis, gamma: &Cocycle, degree: i64) -> Result<Normalization> {
    let d = degree;
    alg.prepare(-2 * d, 2 * d)?;
    let input = CocycleTable::build(alg, gamma, (-d, d), (-2 * d, 2 * d))?;
    let bounds = input.level_bounds();
    if !bounds.bounded() {
        return Err(Error::NotBounded(format!("levels reach the window edge: {:?}", bounds.pair())));
    }
    let cutoff = bounds.highest.map_or(1, |s| s + 1);
    let rs = lb.roots();
    let npos = rs.num_positive();
    let nroots = rs.roots().len();
    let max = 2 * d + 1;

    let mut phi: BTreeMap<(i64, ChevIndex), Scalar> = BTreeMap::new();
    let mut higher_terms = Vec::new();
    let half = Scalar::from_frac(1, 2);

    let coroot_zero: Vec<MatRatFun> =
        (0..npos).map(|p| alg.element_for_leading(rs.coroot(p), 0)).collect::<Result<_>>()?;
    let simple_zero: Vec<MatRatFun> =
        rs.simple().iter().map(|&s| lb.element(alg, 0, lb.e(s))).collect::<Result<_>>()?;

    for n in (-2 * d..cutoff).rev() {
        let mut record = |kind: &'static str, a: ChevIndex, parts: &[(i64, Vector)]| -> Result<()> {
            if let Some((k, _)) = parts.iter().find(|(k, _)| *k <= n) {
                return Err(Error::Internal(format!("{kind}({n}, {}) has a component in degree {k}", lb.labels()[a])));
            }
            if !parts.is_empty() {
                higher_terms.push(HigherTerm {
                    kind,
                    n,
                    element: lb.labels()[a].clone(),
                    degrees: parts.iter().map(|(k, _)| *k).collect(),
                });
            }
            Ok(())
        };
        let mut level: Vec<(ChevIndex, Scalar)> = Vec::new();
        for i in 0..nroots {
            let (p, sign) = if i < npos { (i, Scalar::one()) } else { (rs.negative(i), -Scalar::one()) };
            let en = lb.element(alg, n, lb.e(i))?;
            let h0 = &coroot_zero[p];
            let g = gamma.eval(alg, h0, &en)?;
            let y = en.sub(&h0.commutator(&en)?.scale(&(&sign * &half)))?;
            let parts = lb.decompose(alg, &y, max)?;
            record("Y", lb.e(i), &parts)?;
            level.push((lb.e(i), &(&sign * &half) * &g + phi_of(&phi, &parts, cutoff)));
        }
        for (j, &s) in rs.simple().iter().enumerate() {
            let fneg = lb.element(alg, n, lb.e(rs.negative(s)))?;
            let g = gamma.eval(alg, &simple_zero[j], &fneg)?;
            let hn = lb.element(alg, n, lb.h(j))?;
            let z = hn.sub(&simple_zero[j].commutator(&fneg)?)?;
            let parts = lb.decompose(alg, &z, max)?;
            record("Z", lb.h(j), &parts)?;
            level.push((lb.h(j), g + phi_of(&phi, &parts, cutoff)));
        }
        for (a, v) in level {
            if !v.is_zero() {
                phi.insert((n, a), v);
            }
        }
    }

    // Φ on the canonical basis: Φ(B_n^r) = Σ_a Φ(n, a)·(coefficient of a in B^r)
    let mut can = LinearFunctional::on_window(-2 * d, 2 * d);
    let dim = lb.dim();
    for n in -2 * d..cutoff.min(2 * d + 1) {
        for r in 0..dim {
            let mut v = Scalar::zero();
            for a in 0..dim {
                if let Some(p) = phi.get(&(n, a)) {
                    v += &(p * lb.chevalley_entry(a, r));
                }
            }
            can.set(n, r, v);
        }
    }
    let delta = CocycleTable::build(alg, &Cocycle::coboundary(can.clone()), (-d, d), (-2 * d, 2 * d))?;
    let table = input.sub(&delta)?;
    Ok(Normalization { table, input, phi_chevalley: phi, phi: can, cutoff, degree, higher_terms })
}

/// `γ(H_0^α, E_n^{±α}) = 0` for all roots and `γ(E_0^{α_i}, E_n^{−α_i}) = 0`
/// for the simple roots, over the degree window of the table.
pub fn check_normalized(lb: &LiftedBasis, t: &CocycleTable) -> Result<Vec<CheckEntry>> {
    let rs = lb.roots();
    let npos = rs.num_positive();
    let (lo, hi) = t.degrees();
    let mut ha = CheckEntry::new("normalized-coroot", "γ(H_0^α, E_n^{±α}) = 0 for every root α");
    let mut ee = CheckEntry::new("normalized-simple", "γ(E_0^{α_i}, E_n^{−α_i}) = 0 for every simple root");
    for n in lo..=hi {
        for i in 0..rs.roots().len() {
            let p = if i < npos { i } else { rs.negative(i) };
            let v = lb.table_value_matrices(t, 0, rs.coroot(p), n, lb.matrix(lb.e(i)))?;
            ha.record(v.is_zero(), || json!({ "n": n, "root": rs.root(i).label(), "value": v }));
        }
        for &s in rs.simple() {
            let v = lb.table_value(t, 0, lb.e(s), n, lb.e(rs.negative(s)))?;
            ee.record(v.is_zero(), || json!({ "n": n, "root": rs.root(s).label(), "value": v }));
        }
    }
    Ok(vec![ha, ee])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::RootSystem;
    use crate::connection::minimal_connection;
    use crate::reference;
    use crate::riemann::Cycle;

    fn lifted(alg: &LaxAlgebra) -> LiftedBasis {
        LiftedBasis::new(RootSystem::new(alg.flavor()).unwrap()).unwrap()
    }

    #[test]
    fn gamma1_on_loop_is_already_normalized() {
        let alg = reference::ref_loop();
        let lb = lifted(&alg);
        let w = minimal_connection(&alg).unwrap();
        let g = Cocycle::gamma1(&w, Cycle::around_zero());
        let nz = normalize(&alg, &lb, &g, 3).unwrap();
        assert!(nz.higher_terms.is_empty());
        assert_eq!(nz.cutoff, 1);
        assert!(check_normalized(&lb, &nz.input).unwrap().iter().all(CheckEntry::passed));
        assert_eq!(nz.table, nz.input);
    }

    #[test]
    fn coboundary_shift_is_removed() {
        let alg = reference::ref_sl2();
        let lb = lifted(&alg);
        let w = minimal_connection(&alg).unwrap();
        let g1 = Cocycle::gamma1(&w, Cycle::separating(alg.sphere()));
        let phi = LinearFunctional::random_sparse(3, -3, 3, 0.6, 11);
        let shifted = g1.clone().plus(Cocycle::coboundary(phi));
        let a = normalize(&alg, &lb, &shifted, 3).unwrap();
        assert!(!check_normalized(&lb, &a.input).unwrap().iter().all(CheckEntry::passed));
        for e in check_normalized(&lb, &a.table).unwrap() {
            assert!(e.passed(), "{}: {:?}", e.id, e.counterexamples);
        }
        let b = normalize(&alg, &lb, &g1, 3).unwrap();
        assert_eq!(a.table, b.table);
    }
}
