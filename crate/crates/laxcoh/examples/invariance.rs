//! Invariance of the first geometric cocycle under the action of vector
//! fields: it holds when the action uses the same connection and fails for
//! a different one.

use laxcoh::cocycle::{check_l_invariance, Cocycle};
use laxcoh::connection::minimal_family;
use laxcoh::reference;
use laxcoh::riemann::Cycle;
use laxcoh::sample::SampleGrid;
use laxcoh::Scalar;

fn main() -> laxcoh::Result<()> {
    let alg = reference::ref_sl2();
    let family = minimal_family(&alg)?;
    let w = family.canonical(&alg)?;
    let w2 = family.member(&alg, &[Scalar::one()])?;
    let gamma = Cocycle::gamma1(&w, Cycle::separating(alg.sphere()));
    let grid = SampleGrid::new(2, Some(60), 3);
    for (name, action) in [("same connection", &w), ("other connection", &w2)] {
        let (entry, defects) = check_l_invariance(&alg, &gamma, action, &grid)?;
        let bad = defects.iter().filter(|d| !d.defect.is_zero()).count();
        println!("{name}: passed = {}, {bad} of {} samples with a defect", entry.passed(), defects.len());
    }
    Ok(())
}
