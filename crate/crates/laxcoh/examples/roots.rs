//! Root systems and Chevalley bases for the simple flavors.

use laxcoh::chevalley::RootSystem;
use laxcoh::lax::{Flavor, FlavorKind};

fn main() -> laxcoh::Result<()> {
    for (kind, n) in [(FlavorKind::Sl, 3), (FlavorKind::So, 5), (FlavorKind::Sp, 2)] {
        let rs = RootSystem::new(&Flavor::new(kind, n)?)?;
        let ok = rs.verify()?.iter().all(|e| e.passed());
        println!(
            "{}: rank {}, {} positive roots, checks pass = {ok}",
            rs.flavor().name(),
            rs.rank(),
            rs.num_positive()
        );
        println!("  simple roots: {:?}", rs.simple().iter().map(|&a| rs.root(a).label()).collect::<Vec<_>>());
        println!("  Chevalley basis: {}", rs.chevalley_labels().join(" "));
    }
    Ok(())
}
