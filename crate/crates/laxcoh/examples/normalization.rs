//! Normalizes a cocycle by a coboundary and compares normalized cocycles:
//! scaling and coboundary shifts leave the same class up to a constant.

use laxcoh::chevalley::{normalize, uniqueness_driver, LiftedBasis, RootSystem};
use laxcoh::cocycle::{Cocycle, LinearFunctional};
use laxcoh::connection::minimal_connection;
use laxcoh::reference;
use laxcoh::riemann::Cycle;
use laxcoh::Scalar;

fn main() -> laxcoh::Result<()> {
    let alg = reference::ref_sl2();
    let lb = LiftedBasis::new(RootSystem::new(alg.flavor())?)?;
    let w = minimal_connection(&alg)?;
    let g1 = Cocycle::gamma1(&w, Cycle::separating(alg.sphere()));
    let nz = normalize(&alg, &lb, &g1, 3)?;
    println!(
        "normalized: {} entries, coboundary cutoff {}, {} terms of Φ",
        nz.table.len(),
        nz.cutoff,
        nz.phi_chevalley.len()
    );
    let shifted = g1
        .clone()
        .scaled(Scalar::from_int(5))
        .plus(Cocycle::coboundary(LinearFunctional::random_sparse(3, -3, 3, 0.5, 4)));
    let (out, _, _) = uniqueness_driver(&alg, &lb, &shifted, &g1, 3)?;
    println!("5·γ + δφ ~ c·γ with c = {} over {} entries", out.c, out.entries_compared);
    Ok(())
}
