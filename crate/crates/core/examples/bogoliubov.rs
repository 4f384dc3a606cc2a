//! Conjugates `a` by a Grassmann-valued squeeze and compares with the
//! series and polar closed forms.

use supergrass::cli::parse_expr;
use supergrass::states::bogoliubov_check;
use supergrass::{FockSpace, Result};

fn main() -> Result<()> {
    let space = FockSpace::new(4, 40, 12)?;
    for x0 in ["0.2", "0.3i", "0.25 + 0.1*e1*e2"] {
        let r = bogoliubov_check(&parse_expr(x0, space.order)?, space)?;
        let polar = r.polar.map_or("n/a".to_string(), |d| format!("{d:.2e}"));
        println!("X0 = {x0:<18} series {:.2e}, polar {polar} (working cutoff {})", r.series, r.working_cutoff);
    }
    Ok(())
}
