//! Berezin-integrated ladder densities reproduce `a`, `a†` and their
//! (anti)commutators.

use num_complex::Complex64;
use supergrass::states::density_of_algebra;
use supergrass::{FockSpace, Result};

fn main() -> Result<()> {
    let r = density_of_algebra((1, 2), Complex64::new(0.3, 0.1), FockSpace::new(4, 24, 8)?)?;
    println!("{r:#?}");
    println!("largest deviation {:.2e}", r.max_deviation());
    Ok(())
}
