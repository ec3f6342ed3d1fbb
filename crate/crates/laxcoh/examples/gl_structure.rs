//! For `gl(n)` the algebra splits into scalar and traceless parts; the first
//! geometric cocycle pairs them trivially.

use laxcoh::cocycle::{gl_cross_vanishing, Cocycle};
use laxcoh::connection::minimal_connection;
use laxcoh::reference;
use laxcoh::riemann::Cycle;
use laxcoh::sample::SampleGrid;

fn main() -> laxcoh::Result<()> {
    let alg = reference::ref_gl2();
    let x = alg.basis_element(1, 0)?;
    let (scalar, traceless) = alg.split_gl(&x)?;
    println!(
        "split of a degree-1 element: scalar part zero = {}, traceless part zero = {}",
        scalar.is_zero(),
        traceless.is_zero()
    );
    let w = minimal_connection(&alg)?;
    let gamma = Cocycle::gamma1(&w, Cycle::separating(alg.sphere()));
    let e = gl_cross_vanishing(&alg, &gamma, &SampleGrid::new(2, None, 0))?;
    println!("scalar/traceless cross terms vanish = {}", e.passed());
    Ok(())
}
