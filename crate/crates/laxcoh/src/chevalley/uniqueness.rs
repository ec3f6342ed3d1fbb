//! Comparison of normalized local cocycles: the local class is pinned down
//! by the single value `γ(H_1^{α₁}, H_{−1}^{α₁})`.

use serde::Serialize;
use serde_json::json;

use super::lift::LiftedBasis;
use super::normalize::{normalize, Normalization};
use crate::cocycle::{Cocycle, CocycleTable, LinearFunctional};
use crate::error::{Error, Result};
use crate::lax::LaxAlgebra;
use crate::linalg::Scalar;
use crate::report::CheckEntry;

/// `γ(H_1^{α₁}, H_{−1}^{α₁})` for the fixed first simple root.
pub fn reference_value(lb: &LiftedBasis, t: &CocycleTable) -> Result<Scalar> {
    let h = lb.roots().coroot(lb.roots().first_simple());
    lb.table_value_matrices(t, 1, h, -1, h)
}

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessOutcome {
    /// `γ_a ~ c·γ_b` after normalization.
    pub c: Scalar,
    pub reference_a: Scalar,
    pub reference_b: Scalar,
    /// Canonical-basis entries compared.
    pub entries_compared: usize,
    pub cutoffs: (i64, i64),
    pub higher_terms: usize,
    pub degree: i64,
}

/// Proportionality of two normalized tables.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub c: Scalar,
    pub reference_a: Scalar,
    pub reference_b: Scalar,
    pub entries_compared: usize,
}

/// Reads `c` from the reference values and checks `a = c·b` entry for
/// entry; the first mismatch is reported as [`Error::Independent`].
pub fn compare_normalized(lb: &LiftedBasis, a: &CocycleTable, b: &CocycleTable) -> Result<Comparison> {
    let ra = reference_value(lb, a)?;
    let rb = reference_value(lb, b)?;
    if rb.is_zero() {
        return Err(Error::Inconclusive("reference value of the second cocycle vanishes".into()));
    }
    let c = ra.checked_div(&rb)?;
    let scaled = b.scale(&c);
    if let Some((n, r, m, s)) = a.first_difference(&scaled)? {
        return Err(Error::Independent(format!(
            "normalized tables differ at (n={n}, r={r}, m={m}, s={s}): {} vs {}",
            a.get(n, r, m, s)?,
            scaled.get(n, r, m, s)?
        )));
    }
    let (lo, hi) = a.degrees();
    let (llo, lhi) = a.levels();
    let d = lb.dim();
    let entries_compared =
        (lo..=hi).flat_map(|n| (lo..=hi).map(move |m| n + m)).filter(|l| (llo..=lhi).contains(l)).count() * d * d;
    Ok(Comparison { c, reference_a: ra, reference_b: rb, entries_compared })
}

/// Normalizes both cocycles, reads `c` from the reference value and checks
/// `normalize(γ_a) = c · normalize(γ_b)` entry for entry.
pub fn uniqueness_driver(
    alg: &LaxAlgebra,
    lb: &LiftedBasis,
    gamma_a: &Cocycle,
    gamma_b: &Cocycle,
    degree: i64,
) -> Result<(UniquenessOutcome, Normalization, Normalization)> {
    let na = normalize(alg, lb, gamma_a, degree)?;
    let nb = normalize(alg, lb, gamma_b, degree)?;
    let cmp = compare_normalized(lb, &na.table, &nb.table)?;
    let outcome = UniquenessOutcome {
        c: cmp.c,
        reference_a: cmp.reference_a,
        reference_b: cmp.reference_b,
        entries_compared: cmp.entries_compared,
        cutoffs: (na.cutoff, nb.cutoff),
        higher_terms: na.higher_terms.len() + nb.higher_terms.len(),
        degree,
    };
    Ok((outcome, na, nb))
}

/// A normalized coboundary vanishes identically.
///
/// `coboundary-reference`: the lifted `H_1^α`, `H_{−1}^α` commute, so
/// `δφ(H_1^α, H_{−1}^α) = φ(0) = 0` for every simple root.
/// `coboundary-normalized-zero`: the normalized table of `δφ` is zero.
pub fn normalized_coboundary_check(
    alg: &LaxAlgebra,
    lb: &LiftedBasis,
    phi: &LinearFunctional,
    degree: i64,
) -> Result<Vec<CheckEntry>> {
    let rs = lb.roots();
    let mut reference =
        CheckEntry::new("coboundary-reference", "[H_1^α, H_{−1}^α] = 0, so δφ(H_1^α, H_{−1}^α) = φ(0) = 0");
    let gamma = Cocycle::coboundary(phi.clone());
    for &a in rs.simple() {
        let h1 = alg.element_for_leading(rs.coroot(a), 1)?;
        let hm = alg.element_for_leading(rs.coroot(a), -1)?;
        let br = h1.commutator(&hm)?;
        let v = gamma.eval(alg, &h1, &hm)?;
        reference.record(br.is_zero() && v.is_zero(), || json!({ "root": rs.root(a).label(), "value": v }));
    }
    let nz = normalize(alg, lb, &gamma, degree)?;
    let mut zero = CheckEntry::new("coboundary-normalized-zero", "normalize(δφ) = 0 on the window");
    zero.record(
        nz.table.is_empty(),
        || json!({ "nonzero_entries": nz.table.len(), "first": nz.table.entries().next().map(|(k, v)| json!([k, v])) }),
    );
    let zero = zero.with_witness(json!({
        "input_entries": nz.input.len(),
        "phi_support": nz.phi.entries().count(),
        "cutoff": nz.cutoff,
    }));
    Ok(vec![reference, zero])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::RootSystem;
    use crate::connection::{minimal_connection, minimal_family};
    use crate::reference;
    use crate::riemann::Cycle;

    fn lifted(alg: &LaxAlgebra) -> LiftedBasis {
        LiftedBasis::new(RootSystem::new(alg.flavor()).unwrap()).unwrap()
    }

    #[test]
    fn scaled_and_shifted_cocycles_are_proportional() {
        let alg = reference::ref_sl2();
        let lb = lifted(&alg);
        let w = minimal_connection(&alg).unwrap();
        let g1 = Cocycle::gamma1(&w, Cycle::separating(alg.sphere()));
        let five = g1.clone().scaled(Scalar::from_int(5));
        assert_eq!(uniqueness_driver(&alg, &lb, &five, &g1, 3).unwrap().0.c, Scalar::from_int(5));
        let shifted = g1.clone().plus(Cocycle::coboundary(LinearFunctional::random_sparse(3, -3, 3, 0.5, 21)));
        assert_eq!(uniqueness_driver(&alg, &lb, &shifted, &g1, 3).unwrap().0.c, Scalar::one());
    }

    #[test]
    fn connection_change_keeps_the_constant() {
        let alg = reference::ref_sl2();
        let lb = lifted(&alg);
        let fam = minimal_family(&alg).unwrap();
        let w2 = fam.alternative(&alg).unwrap().expect("second connection");
        let c = Cycle::separating(alg.sphere());
        let ga = Cocycle::gamma1(&w2, c.clone());
        let gb = Cocycle::gamma1(&fam.canonical(&alg).unwrap(), c);
        assert_eq!(uniqueness_driver(&alg, &lb, &ga, &gb, 3).unwrap().0.c, Scalar::one());
    }

    #[test]
    fn independent_tables_are_reported() {
        let alg = reference::ref_loop();
        let lb = lifted(&alg);
        let w = minimal_connection(&alg).unwrap();
        let g1 = Cocycle::gamma1(&w, Cycle::around_zero());
        // a table with the same reference value but a stray level-0 entry
        let t = CocycleTable::build(&alg, &g1, (-2, 2), (-4, 4)).unwrap();
        let mut u = t.clone();
        u.set(2, 0, -2, 1, Scalar::from_int(7));
        u.set(-2, 1, 2, 0, Scalar::from_int(-7));
        assert_eq!(compare_normalized(&lb, &u, &u).unwrap().c, Scalar::one());
        let r = compare_normalized(&lb, &u, &t);
        assert!(matches!(r, Err(Error::Independent(_))), "{r:?}");
    }

    #[test]
    fn coboundaries_normalize_to_zero() {
        let alg = reference::ref_sl2();
        let lb = lifted(&alg);
        for phi in [LinearFunctional::zero(), LinearFunctional::random_sparse(3, -4, 4, 0.7, 8)] {
            for e in normalized_coboundary_check(&alg, &lb, &phi, 3).unwrap() {
                assert!(e.passed(), "{}: {:?}", e.id, e.counterexamples);
            }
        }
    }

    #[test]
    fn degree_zero_functional_misses_level_zero_cartan_pairs() {
        let alg = reference::ref_sl2();
        let lb = lifted(&alg);
        let phi = LinearFunctional::random_sparse(3, 0, 0, 1.0, 2);
        let t = CocycleTable::build(&alg, &Cocycle::coboundary(phi), (-3, 3), (-6, 6)).unwrap();
        let h = lb.roots().coroot(0);
        for n in -3..=3 {
            assert!(lb.table_value_matrices(&t, n, h, -n, h).unwrap().is_zero());
        }
        assert!(!t.is_empty());
    }
}
