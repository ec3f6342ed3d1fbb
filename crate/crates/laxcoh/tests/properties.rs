//! Randomized invariants over linear combinations of basis elements.

use std::sync::Arc;

use proptest::prelude::*;

use laxcoh::chevalley::{normalize, uniqueness_driver, LiftedBasis, RootSystem};
use laxcoh::cocycle::{cocycle_identity_value, Cocycle, LinearFunctional};
use laxcoh::connection::minimal_connection;
use laxcoh::lax::LaxAlgebra;
use laxcoh::reference;
use laxcoh::riemann::{Cycle, MatRatFun};
use laxcoh::Scalar;

fn element(alg: &LaxAlgebra, m: i64, c: &[i64]) -> MatRatFun {
    let c: Vec<Scalar> = c.iter().map(|&x| Scalar::from_int(x)).collect();
    alg.element_from_coords(m, &c).unwrap()
}

fn coords(d: usize) -> impl Strategy<Value = (i64, Vec<i64>)> {
    (-2i64..=2, prop::collection::vec(-2i64..=2, d))
}

fn gl2() -> Arc<LaxAlgebra> {
    reference::ref_gl2()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn brackets_stay_in_the_algebra((m, a) in coords(4), (k, b) in coords(4)) {
        let alg = gl2();
        let x = alg.certify(&element(&alg, m, &a)).unwrap();
        let y = alg.certify(&element(&alg, k, &b)).unwrap();
        prop_assert!(alg.bracket(&x, &y).is_ok());
    }

    #[test]
    fn geometric_cocycles_on_random_elements(
        (m, a) in coords(4), (k, b) in coords(4), (j, c) in coords(4), weak in proptest::bool::ANY
    ) {
        let alg = gl2();
        let w = minimal_connection(&alg).unwrap();
        let cycle = if weak { Cycle::from_labels(&["gamma1".to_string()]).unwrap() } else { Cycle::separating(alg.sphere()) };
        let (x, y, z) = (element(&alg, m, &a), element(&alg, k, &b), element(&alg, j, &c));
        for g in [Cocycle::gamma1(&w, cycle.clone()), Cocycle::gamma2(cycle.clone())] {
            let xy = g.eval(&alg, &x, &y).unwrap();
            let yx = g.eval(&alg, &y, &x).unwrap();
            prop_assert!((xy + yx).is_zero());
            prop_assert!(cocycle_identity_value(&alg, &g, &x, &y, &z).unwrap().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn coboundaries_normalize_to_zero(seed in 0u64..1000) {
        let alg = reference::ref_sl2();
        let lb = LiftedBasis::new(RootSystem::new(alg.flavor()).unwrap()).unwrap();
        let phi = LinearFunctional::random_sparse(3, -2, 2, 0.6, seed);
        let nz = normalize(&alg, &lb, &Cocycle::coboundary(phi), 2).unwrap();
        prop_assert!(nz.table.is_empty());
    }

    #[test]
    fn uniqueness_recovers_the_scale(re in -9i64..9, im in -9i64..9) {
        prop_assume!(re != 0 || im != 0);
        let alg = reference::ref_loop();
        let lb = LiftedBasis::new(RootSystem::new(alg.flavor()).unwrap()).unwrap();
        let w = minimal_connection(&alg).unwrap();
        let g = Cocycle::gamma1(&w, Cycle::separating(alg.sphere()));
        let c = Scalar::gaussian(re, im);
        let (out, _, _) = uniqueness_driver(&alg, &lb, &g.clone().scaled(c.clone()), &g, 2).unwrap();
        prop_assert_eq!(out.c, c);
    }
}
