//! Module axioms of the covariant-derivative action, checked on sample grids.

use super::covariant::{covariant_derivative, nabla, pole_cancellation};
use super::form::ConnectionForm;
use super::kn::{kn_function, kn_vector_field};
use crate::error::Result;
use crate::lax::{Flavor, FlavorKind, LaxAlgebra};
use crate::linalg::Scalar;
use crate::reference::with_flavor;
use crate::report::{run_samples as run, CheckEntry};
use crate::riemann::MatRatFun;
use crate::sample::SampleGrid;

/// Every `∇_{e_k} X_m^r` in the grid is certified, with the deep pole
/// coefficients at weak points cancelling.
pub fn check_closure(alg: &LaxAlgebra, w: &ConnectionForm, grid: &SampleGrid) -> CheckEntry {
    let d = alg.dim_g();
    let mut samples = Vec::new();
    for k in grid.degrees() {
        for m in grid.degrees() {
            samples.extend((0..d).map(|r| (k, m, r)));
        }
    }
    run("action-closure", "covariant derivative preserves the algebra", samples, |(k, m, r)| {
        let e = kn_vector_field(alg.sphere(), k);
        let x = alg.certify(&alg.basis_element(m, r)?)?;
        covariant_derivative(alg, &e, &x, w)?;
        Ok(pole_cancellation(alg, &e, &x, w)?.iter().all(|p| p.holds()))
    })
}

/// Elements of `ḡ_m` for each grid degree, indexed from `−bound`.
pub type Spaces = Vec<Vec<MatRatFun>>;

/// The Leibniz, function-linearity, Lie-module and derivation laws on
/// elements drawn from `spaces`; `suffix` is appended to every id.
pub fn check_structural_axioms(
    w: &ConnectionForm,
    grid: &SampleGrid,
    spaces: &Spaces,
    suffix: &str,
) -> Vec<CheckEntry> {
    let b = grid.bound;
    let Some(sphere) = spaces.iter().flatten().next().map(|l| l.sphere().clone()) else {
        return Vec::new();
    };
    let sphere = &sphere;
    let x = |m: i64, r: usize| -> Result<MatRatFun> { Ok(spaces[(m + b) as usize][r].clone()) };
    let len = |m: i64| spaces[(m + b) as usize].len();
    let id = |s: &str| format!("{s}{suffix}");
    let mut out = Vec::new();

    let mut triples = Vec::new();
    for k in -b..=b {
        for j in -b..=b {
            for m in -b..=b {
                triples.extend((0..len(m)).map(|r| (k, j, m, r)));
            }
        }
    }
    let triples = grid.pick(triples);

    out.push(run(&id("action-leibniz"), "∇_e(g·L) = (e.g)·L + g·∇_e L", triples.clone(), |(k, j, m, r)| {
        let e = kn_vector_field(sphere, k);
        let g = kn_function(sphere, j);
        let l = x(m, r)?;
        let lhs = nabla(&e, &l.scalar_mul(&g)?, w)?;
        let rhs = l.scalar_mul(&e.act(&g)?)?.add(&nabla(&e, &l, w)?.scalar_mul(&g)?)?;
        Ok(lhs == rhs)
    }));

    out.push(run(&id("action-function-linear"), "∇_{g·e} L = g·∇_e L", triples.clone(), |(k, j, m, r)| {
        let e = kn_vector_field(sphere, k);
        let g = kn_function(sphere, j);
        let l = x(m, r)?;
        Ok(nabla(&e.times(&g)?, &l, w)? == nabla(&e, &l, w)?.scalar_mul(&g)?)
    }));

    out.push(run(&id("action-lie-module"), "∇_[e,f] = [∇_e, ∇_f]", triples, |(k, j, m, r)| {
        let e = kn_vector_field(sphere, k);
        let f = kn_vector_field(sphere, j);
        let l = x(m, r)?;
        let lhs = nabla(&e.bracket(&f)?, &l, w)?;
        let rhs = nabla(&e, &nabla(&f, &l, w)?, w)?.sub(&nabla(&f, &nabla(&e, &l, w)?, w)?)?;
        Ok(lhs == rhs)
    }));

    let mut quads = Vec::new();
    for k in -b..=b {
        for m in -b..=b {
            for r in 0..len(m) {
                for n in -b..=b {
                    quads.extend((0..len(n)).map(|s| (k, m, r, n, s)));
                }
            }
        }
    }
    out.push(run(
        &id("action-derivation"),
        "∇_e[L, L'] = [∇_e L, L'] + [L, ∇_e L']",
        grid.pick(quads),
        |(k, m, r, n, s)| {
            let e = kn_vector_field(sphere, k);
            let l = x(m, r)?;
            let l2 = x(n, s)?;
            let lhs = nabla(&e, &l.commutator(&l2)?, w)?;
            let rhs = nabla(&e, &l, w)?.commutator(&l2)?.add(&l.commutator(&nabla(&e, &l2, w)?)?)?;
            Ok(lhs == rhs)
        },
    ));
    out
}

/// The structural laws on kernel bases of `ḡ_m`, available when no
/// leading-matrix basis exists.
pub fn check_kernel_axioms(alg: &LaxAlgebra, w: &ConnectionForm, grid: &SampleGrid) -> Vec<CheckEntry> {
    let spaces: Spaces = grid.degrees().map(|m| alg.full_space(m)).collect();
    check_structural_axioms(w, grid, &spaces, "-kernel")
}

/// Runs all action axioms on the grid.
pub fn check_action_axioms(alg: &LaxAlgebra, w: &ConnectionForm, grid: &SampleGrid) -> Result<Vec<CheckEntry>> {
    let sphere = alg.sphere();
    let d = alg.dim_g();
    let b = grid.bound;
    alg.prepare(-2 * b, 2 * b)?;
    let x = |m: i64, r: usize| -> Result<MatRatFun> { alg.basis_element(m, r) };
    let spaces: Spaces = grid.degrees().map(|m| Ok(alg.space(m)?.elements.clone())).collect::<Result<_>>()?;
    let mut out = check_structural_axioms(w, grid, &spaces, "");

    let mut pairs = Vec::new();
    for k in -b..=b {
        for m in -b..=b {
            pairs.extend((0..d).map(|r| (k, m, r)));
        }
    }
    let window = 8 * grid.bound + 16;
    out.push(run("action-leading", "∇_{e_k} X_m = m·X_{k+m} + higher", pairs.clone(), |(k, m, r)| {
        let e = kn_vector_field(sphere, k);
        let parts = alg.decompose_coords(&nabla(&e, &x(m, r)?, w)?, window)?;
        let mut expected = vec![Scalar::zero(); d];
        expected[r] = Scalar::from_int(m);
        let lead_ok = match parts.get(&(k + m)) {
            Some(c) => *c == expected,
            None => m == 0,
        };
        Ok(lead_ok && parts.keys().all(|&h| h >= k + m))
    }));

    if alg.flavor().kind() == FlavorKind::Gl {
        let n = alg.flavor().n();
        let s_alg = with_flavor(alg, Flavor::new(FlavorKind::S, n)?);
        let sl_alg = with_flavor(alg, Flavor::sl(n));
        out.push(run("action-gl-splitting", "∇_e preserves the scalar and traceless parts", pairs, |(k, m, r)| {
            let e = kn_vector_field(sphere, k);
            let (a, b) = alg.split_gl(&x(m, r)?)?;
            Ok(s_alg.certify(&nabla(&e, &a, w)?).is_ok() && sl_alg.certify(&nabla(&e, &b, w)?).is_ok())
        }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::form::minimal_connection;
    use crate::reference;

    #[test]
    fn axioms_small_grid_gl2() {
        let alg = reference::ref_gl2();
        let w = minimal_connection(&alg).unwrap();
        let grid = SampleGrid::new(1, Some(20), 3);
        for c in check_action_axioms(&alg, &w, &grid).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
        assert!(check_closure(&alg, &w, &grid).passed());
    }

    #[test]
    fn kernel_axioms_on_single_point_so3() {
        let alg = reference::ref_so3();
        let w = minimal_connection(&alg).unwrap();
        let grid = SampleGrid::new(1, Some(30), 5);
        assert!(check_action_axioms(&alg, &w, &grid).is_err());
        let entries = check_kernel_axioms(&alg, &w, &grid);
        assert_eq!(entries.len(), 4);
        for c in entries {
            assert!(c.passed() && c.samples > 0, "{c:?}");
        }
    }
}
