//! Level structure of a local cocycle: the invariant form on level zero and
//! a pair of commuting elements on which the cocycle does not vanish.

use laxcoh::cocycle::{nonbound_witness, psi_form, Cocycle, CocycleTable};
use laxcoh::connection::minimal_connection;
use laxcoh::reference;
use laxcoh::riemann::Cycle;

fn main() -> laxcoh::Result<()> {
    let alg = reference::ref_sl2();
    let w = minimal_connection(&alg)?;
    let gamma = Cocycle::gamma1(&w, Cycle::separating(alg.sphere()));
    let t = CocycleTable::build(&alg, &gamma, (-3, 3), (-6, 6))?;
    let psi = psi_form(&alg, &t)?;
    let (multiple, checks) = psi.checks(alg.flavor())?;
    match multiple {
        Some(c) => println!("level-zero form = {c} · trace form"),
        None => println!("level-zero form is not a trace multiple"),
    }
    for e in checks {
        println!("  {}: {}", e.id, e.passed());
    }
    let wit = nonbound_witness(&alg, &gamma)?;
    println!("witness: bracket is zero = {}, cocycle value = {}", wit.bracket_is_zero, wit.value);
    Ok(())
}
