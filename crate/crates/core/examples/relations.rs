//! Checks the superalgebra relations on a truncated boson-fermion space.

use supergrass::superfock::check_relations;
use supergrass::{FockSpace, Result};

fn main() -> Result<()> {
    let space = FockSpace::new(6, 32, 8)?;
    let report = check_relations(space);
    for (name, dev) in &report.entries {
        println!("{name:<16} {dev:.2e}");
    }
    println!("largest deviation below level {}: {:.2e}", space.band(), report.max_deviation());
    Ok(())
}
