//! Builds the graded basis of a two-point `gl(2)` Lax algebra and prints the
//! dimension of each homogeneous space plus one element with its jets.

use laxcoh::lax::GradedBasis;
use laxcoh::reference;
use laxcoh::riemann::jet_at;

fn main() -> laxcoh::Result<()> {
    let alg = reference::ref_gl2();
    let basis = GradedBasis::build(&alg, -3, 3)?;
    println!("flavor {}: {} basis elements", alg.flavor().name(), basis.len());
    for m in -3..=3 {
        println!("  degree {m:>2}: dim {} (leading rank {})", alg.space(m)?.elements.len(), alg.leading_rank(m));
    }
    let x = basis.get(1, 0)?;
    for &p in alg.sphere().points().iter() {
        let j = jet_at(&x.value, p, 4);
        println!("  jet at {}: order {}, {} coefficients", p.label(), j.lead_order, j.coeffs.len());
    }
    Ok(())
}
