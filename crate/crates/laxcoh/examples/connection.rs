//! Solves for the minimal Lax connection and checks that the covariant
//! derivative of a basis element keeps the deep poles cancelled.

use laxcoh::connection::{kn_vector_field, minimal_family, pole_cancellation};
use laxcoh::reference;

fn main() -> laxcoh::Result<()> {
    for (name, alg) in [("gl2", reference::ref_gl2()), ("sp4_pair", reference::ref_sp4_pair())] {
        let family = minimal_family(&alg)?;
        let w = family.canonical(&alg)?;
        println!("{name}: pole budget {}", family.pole_budget);
        let e = kn_vector_field(alg.sphere(), 1);
        let l = alg.certify(&alg.basis_element(0, 0)?)?;
        for pc in pole_cancellation(&alg, &e, &l, &w)? {
            println!("  weak point {}: cancellation holds = {}", pc.point, pc.holds());
        }
        let json = w.to_json();
        println!("  connection matrix: {}x{}", json.value.rows, json.value.cols);
    }
    Ok(())
}
