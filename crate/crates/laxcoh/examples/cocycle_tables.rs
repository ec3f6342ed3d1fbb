//! Tabulates the two geometric cocycles on a window and reports their
//! level bounds on the separating cycle and on a cycle around one weak point.

use laxcoh::cocycle::{Cocycle, CocycleTable};
use laxcoh::connection::minimal_connection;
use laxcoh::reference;
use laxcoh::riemann::Cycle;

fn main() -> laxcoh::Result<()> {
    let alg = reference::ref_gl2();
    let w = minimal_connection(&alg)?;
    let cycles = [Cycle::separating(alg.sphere()), Cycle::from_labels(&["gamma1".to_string()])?];
    for cycle in cycles {
        for gamma in [Cocycle::gamma1(&w, cycle.clone()), Cocycle::gamma2(cycle.clone())] {
            let t = CocycleTable::build(&alg, &gamma, (-3, 3), (-6, 6))?;
            let b = t.level_bounds();
            println!(
                "{} on {:?}: {} nonzero entries, levels {:?}..={:?}, antisymmetric = {}",
                gamma.label(),
                cycle.labels(),
                t.len(),
                b.lowest,
                b.highest,
                t.antisymmetry_violations().is_empty()
            );
        }
    }
    Ok(())
}
