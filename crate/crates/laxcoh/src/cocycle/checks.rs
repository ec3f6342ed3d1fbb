//! Sampled verification of the cocycle axioms, L-invariance, the extension
//! to `D_g`, integrand regularity and connection independence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::evaluator::{cocycle_identity_value, extension_jacobi, Cocycle, ExtendedElement};
use super::functional::LinearFunctional;
use super::geometric::{gamma1, weak_point_residues};
use crate::connection::d1::{d1g_bracket, D1gElement};
use crate::connection::{kn_vector_field, nabla, ConnectionForm, VectorField};
use crate::error::Result;
use crate::lax::LaxAlgebra;
use crate::linalg::Scalar;
use crate::report::{run_samples, CheckEntry};
use crate::riemann::{integrate_cycle, Cycle, MatRatFun};
use crate::sample::SampleGrid;

/// Basis pair `(n, r, m, s)`.
pub type Pair = (i64, usize, i64, usize);

/// All basis pairs with degrees in the grid, thinned by the budget.
pub fn grid_pairs(alg: &LaxAlgebra, grid: &SampleGrid) -> Vec<Pair> {
    let d = alg.dim_g();
    let mut out = Vec::new();
    for n in grid.degrees() {
        for m in grid.degrees() {
            for r in 0..d {
                out.extend((0..d).map(|s| (n, r, m, s)));
            }
        }
    }
    grid.pick(out)
}

/// `count` seeded basis triples with degrees in the grid.
pub fn seeded_triples(alg: &LaxAlgebra, grid: &SampleGrid, count: usize) -> Vec<[(i64, usize); 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    let d = alg.dim_g();
    let b = grid.bound;
    (0..count).map(|_| [0; 3].map(|_: i32| (rng.gen_range(-b..=b), rng.gen_range(0..d)))).collect()
}

/// `γ(X, Y) + γ(Y, X) = 0` on basis pairs, including `γ(X, X) = 0`.
pub fn check_antisymmetry(alg: &LaxAlgebra, gamma: &Cocycle, grid: &SampleGrid) -> CheckEntry {
    run_samples("cocycle-antisymmetry", "γ(L, L') = −γ(L', L)", grid_pairs(alg, grid), |(n, r, m, s)| {
        let a = gamma.on_basis(alg, n, r, m, s)?;
        let b = gamma.on_basis(alg, m, s, n, r)?;
        Ok((a + b).is_zero())
    })
}

/// The cocycle identity on seeded triples, together with the central part
/// of the Jacobi sum in the extension, which must equal it.
pub fn check_cocycle_identity(alg: &LaxAlgebra, gamma: &Cocycle, grid: &SampleGrid, count: usize) -> Vec<CheckEntry> {
    let triples = seeded_triples(alg, grid, count);
    let identity = run_samples(
        "cocycle-identity",
        "γ([L, L'], L'') + γ([L', L''], L) + γ([L'', L], L') = 0",
        triples.clone(),
        |t| {
            let [x, y, z] = t.map(|(n, r)| alg.basis_element(n, r));
            Ok(cocycle_identity_value(alg, gamma, &x?, &y?, &z?)?.is_zero())
        },
    );
    let jacobi =
        run_samples("cocycle-extension-jacobi", "Jacobi in the central extension ⇔ cocycle identity", triples, |t| {
            let [x, y, z] = t.map(|(n, r)| alg.basis_element(n, r));
            let (x, y, z) = (x?, y?, z?);
            let ext = |l: &MatRatFun| ExtendedElement { lax: l.clone(), central: Scalar::one() };
            let j = extension_jacobi(alg, gamma, &ext(&x), &ext(&y), &ext(&z))?;
            let id = cocycle_identity_value(alg, gamma, &x, &y, &z)?;
            Ok(j.lax.is_zero() && j.central == id && id.is_zero())
        });
    vec![identity, jacobi]
}

/// Residues of `tr(L ∇L')` and `tr L·d tr L'` at every weak point vanish.
pub fn integrand_regularity(alg: &LaxAlgebra, w: &ConnectionForm, grid: &SampleGrid) -> CheckEntry {
    run_samples(
        "cocycle-integrand-regularity",
        "res_{γ_s} tr(L ∇L') = res_{γ_s} tr L · d tr L' = 0",
        grid_pairs(alg, grid),
        |(n, r, m, s)| {
            let res = weak_point_residues(alg, &alg.basis_element(n, r)?, &alg.basis_element(m, s)?, w)?;
            Ok(res.iter().all(|x| x.vanish()))
        },
    )
}

/// One invariance sample: `e_k` acting on the pair `(X_n^r, X_m^s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceSample {
    pub k: i64,
    pub n: i64,
    pub r: usize,
    pub m: i64,
    pub s: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvarianceDefect {
    pub sample: InvarianceSample,
    pub defect: Scalar,
}

fn invariance_samples(alg: &LaxAlgebra, grid: &SampleGrid) -> Vec<InvarianceSample> {
    let d = alg.dim_g();
    let mut out = Vec::new();
    for k in grid.degrees() {
        for n in grid.degrees() {
            for m in grid.degrees() {
                for r in 0..d {
                    out.extend((0..d).map(|s| InvarianceSample { k, n, r, m, s }));
                }
            }
        }
    }
    grid.pick(out)
}

fn defects(
    alg: &LaxAlgebra,
    grid: &SampleGrid,
    f: impl Fn(InvarianceSample) -> Result<Scalar> + Sync,
) -> Result<Vec<InvarianceDefect>> {
    invariance_samples(alg, grid)
        .into_par_iter()
        .map(|sample| Ok(InvarianceDefect { sample, defect: f(sample)? }))
        .collect()
}

/// `γ(∇_e L, L') + γ(L, ∇_e L')` per sample, with `∇` taken from `w_action`.
pub fn invariance_defects(
    alg: &LaxAlgebra,
    gamma: &Cocycle,
    w_action: &ConnectionForm,
    grid: &SampleGrid,
) -> Result<Vec<InvarianceDefect>> {
    alg.prepare(-2 * grid.bound, 2 * grid.bound)?;
    defects(alg, grid, |InvarianceSample { k, n, r, m, s }| {
        let e = kn_vector_field(alg.sphere(), k);
        let x = alg.basis_element(n, r)?;
        let y = alg.basis_element(m, s)?;
        Ok(gamma.eval(alg, &nabla(&e, &x, w_action)?, &y)? + gamma.eval(alg, &x, &nabla(&e, &y, w_action)?)?)
    })
}

fn entry_from_defects(id: &str, relation: &str, d: &[InvarianceDefect]) -> CheckEntry {
    let mut entry = CheckEntry::new(id, relation);
    for x in d {
        entry.record(x.defect.is_zero(), || json!(x));
    }
    entry
}

/// L-invariance report and the per-sample defects.
pub fn check_l_invariance(
    alg: &LaxAlgebra,
    gamma: &Cocycle,
    w_action: &ConnectionForm,
    grid: &SampleGrid,
) -> Result<(CheckEntry, Vec<InvarianceDefect>)> {
    let d = invariance_defects(alg, gamma, w_action, grid)?;
    let entry = entry_from_defects("cocycle-l-invariance", "γ(∇_e L, L') + γ(L, ∇_e L') = 0", &d);
    Ok((entry, d))
}

/// The zero-extended form `γ̃((L, e), (L', f)) = γ(L, L')` on `D_g`.
fn extended_value(alg: &LaxAlgebra, gamma: &Cocycle, a: &D1gElement, b: &D1gElement) -> Result<Scalar> {
    gamma.eval(alg, &a.lax, &b.lax)
}

/// Cyclic cocycle sum of `γ̃` on a triple of `D_g`.
fn extended_cocycle_sum(
    alg: &LaxAlgebra,
    gamma: &Cocycle,
    w: &ConnectionForm,
    a: &D1gElement,
    b: &D1gElement,
    c: &D1gElement,
) -> Result<Scalar> {
    let t = |x: &D1gElement, y: &D1gElement, z: &D1gElement| -> Result<Scalar> {
        extended_value(alg, gamma, &d1g_bracket(x, y, w)?, z)
    };
    Ok(t(a, b, c)? + t(b, c, a)? + t(c, a, b)?)
}

/// Extension of `γ` by zero to `D_g = ḡ ⋊ L`.
///
/// Returns the mixed-triple condition on `((L, 0), (L', 0), (0, e))`, its
/// sample-by-sample agreement with the invariance defect, and the triples
/// with two vector fields.
pub fn extend_to_dg(
    alg: &LaxAlgebra,
    gamma: &Cocycle,
    w_action: &ConnectionForm,
    grid: &SampleGrid,
) -> Result<Vec<CheckEntry>> {
    let sphere = alg.sphere();
    let zero_l = MatRatFun::zero(sphere, alg.flavor().size(), alg.flavor().size());
    let lax = |n: i64, r: usize| -> Result<D1gElement> {
        Ok(D1gElement { lax: alg.basis_element(n, r)?, field: VectorField::zero(sphere) })
    };
    let field = |k: i64| D1gElement { lax: zero_l.clone(), field: kn_vector_field(sphere, k) };

    let mixed = defects(alg, grid, |InvarianceSample { k, n, r, m, s }| {
        extended_cocycle_sum(alg, gamma, w_action, &lax(n, r)?, &lax(m, s)?, &field(k))
    })?;
    let inv = invariance_defects(alg, gamma, w_action, grid)?;

    let condition = entry_from_defects("dg-mixed-cocycle", "γ̃ cocycle on ((L, 0), (L', 0), (0, e))", &mixed);
    let mut agreement = CheckEntry::new("dg-agrees-with-invariance", "mixed D_g sum = invariance defect");
    for (a, b) in mixed.iter().zip(&inv) {
        agreement.record(a.sample == b.sample && a.defect == b.defect, || json!({ "mixed": a, "invariance": b }));
    }

    let mut pairs = Vec::new();
    for k in grid.degrees() {
        for j in grid.degrees() {
            for n in grid.degrees() {
                pairs.extend((0..alg.dim_g()).map(|r| (k, j, n, r)));
            }
        }
    }
    let two_fields =
        run_samples("dg-two-fields", "γ̃ cocycle on ((L, 0), (0, e), (0, f))", grid.pick(pairs), |(k, j, n, r)| {
            Ok(extended_cocycle_sum(alg, gamma, w_action, &lax(n, r)?, &field(k), &field(j))?.is_zero())
        });
    Ok(vec![condition, agreement, two_fields])
}

/// `ψ_{−θ}(X) = ∮ tr(−θ X)` on every basis element of degrees `[lo, hi]`,
/// with `θ = ω − ω'`.
pub fn difference_functional(
    alg: &LaxAlgebra,
    w: &ConnectionForm,
    w2: &ConnectionForm,
    cycle: &Cycle,
    lo: i64,
    hi: i64,
) -> Result<LinearFunctional> {
    let theta = w.sub(w2)?;
    alg.prepare(lo, hi)?;
    let keys: Vec<(i64, usize)> = (lo..=hi).flat_map(|n| (0..alg.dim_g()).map(move |r| (n, r))).collect();
    let vals: Vec<((i64, usize), Scalar)> = keys
        .into_par_iter()
        .map(|(n, r)| {
            let x = alg.basis_element(n, r)?;
            Ok(((n, r), -integrate_cycle(&theta.trace_of_product(&x)?, cycle)))
        })
        .collect::<Result<_>>()?;
    let mut f = LinearFunctional::on_window(lo, hi);
    for ((n, r), v) in vals {
        f.set(n, r, v);
    }
    Ok(f)
}

/// `γ_{1,ω} − γ_{1,ω'} = δψ_{−θ}` on all pairs with `|n|, |m| ≤ bound`.
pub fn connection_independence_witness(
    alg: &LaxAlgebra,
    w: &ConnectionForm,
    w2: &ConnectionForm,
    cycle: &Cycle,
    bound: i64,
) -> Result<(LinearFunctional, CheckEntry)> {
    let psi = difference_functional(alg, w, w2, cycle, -2 * bound, 2 * bound)?;
    let grid = SampleGrid::new(bound, None, 0);
    let entry = run_samples(
        "cocycle-connection-independence",
        "γ_{1,ω} − γ_{1,ω'} = ψ_{−θ}([L, L'])",
        grid_pairs(alg, &grid),
        |(n, r, m, s)| {
            let x = alg.basis_element(n, r)?;
            let y = alg.basis_element(m, s)?;
            let lhs = gamma1(&x, &y, w, cycle)? - gamma1(&x, &y, w2, cycle)?;
            Ok(lhs == psi.eval(alg, &x.commutator(&y)?)?)
        },
    );
    Ok((psi, entry))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{minimal_connection, minimal_family};
    use crate::reference;

    fn small() -> SampleGrid {
        SampleGrid::new(2, None, 3)
    }

    #[test]
    fn geometric_cocycles_pass_axioms() {
        let alg = reference::ref_gl2();
        let w = minimal_connection(&alg).unwrap();
        let c = Cycle::separating(alg.sphere());
        for g in [Cocycle::gamma1(&w, c.clone()), Cocycle::gamma2(c.clone())] {
            assert!(check_antisymmetry(&alg, &g, &small()).passed());
            assert!(check_cocycle_identity(&alg, &g, &small(), 40).iter().all(CheckEntry::passed));
        }
        assert!(integrand_regularity(&alg, &w, &small()).passed());
    }

    #[test]
    fn invariance_and_dg_extension_agree() {
        let alg = reference::ref_sl2();
        let fam = minimal_family(&alg).unwrap();
        let w = fam.canonical(&alg).unwrap();
        let w2 = fam.alternative(&alg).unwrap().expect("second connection");
        let g = Cocycle::gamma1(&w, Cycle::separating(alg.sphere()));
        let grid = SampleGrid::new(1, None, 0);
        let (same, _) = check_l_invariance(&alg, &g, &w, &grid).unwrap();
        assert!(same.passed());
        let (other, d) = check_l_invariance(&alg, &g, &w2, &grid).unwrap();
        assert!(!other.passed());
        assert!(d.iter().any(|x| !x.defect.is_zero()));
        let dg_same = extend_to_dg(&alg, &g, &w, &grid).unwrap();
        assert!(dg_same.iter().all(CheckEntry::passed));
        let dg_other = extend_to_dg(&alg, &g, &w2, &grid).unwrap();
        assert!(!dg_other[0].passed());
        assert!(dg_other[1].passed() && dg_other[2].passed());
    }

    #[test]
    fn zero_cocycle_extends() {
        let alg = reference::ref_gl2();
        let w = minimal_connection(&alg).unwrap();
        assert!(extend_to_dg(&alg, &Cocycle::Zero, &w, &SampleGrid::new(1, None, 0))
            .unwrap()
            .iter()
            .all(CheckEntry::passed));
    }

    #[test]
    fn difference_of_connections_is_a_coboundary() {
        let alg = reference::ref_gl2();
        let fam = minimal_family(&alg).unwrap();
        let w = fam.canonical(&alg).unwrap();
        let c = Cycle::separating(alg.sphere());
        let (psi, entry) = connection_independence_witness(&alg, &w, &w, &c, 1).unwrap();
        assert!(psi.is_zero() && entry.passed());
        let w2 = fam.alternative(&alg).unwrap().expect("second connection");
        let (_, entry) = connection_independence_witness(&alg, &w, &w2, &c, 2).unwrap();
        assert!(entry.passed(), "{:?}", entry.counterexamples);
    }
}
