//! A Hamiltonian with Grassmann couplings whose spectrum is still the
//! integers, before and after a supersqueeze conjugation.

use supergrass::cli::parse_expr;
use supergrass::isospec::{build_system, conjugate_system, eigenstates, IsoParams};
use supergrass::states::UnitaryParams;
use supergrass::{FockSpace, Result};

fn main() -> Result<()> {
    let space = FockSpace::new(4, 30, 6)?;
    let g = |s: &str| parse_expr(s, space.order);
    let sys = build_system(IsoParams::H2 { beta1: g("0.4*e3 + (0.1+0.3i)*e4")? }, space)?;
    let conj = conjugate_system(
        &sys,
        UnitaryParams::Supersqueeze { beta0: g("0.2*e3*e4")?, gamma1: g("e1")?, delta1: g("e2")? },
    )?;
    for (label, s) in [("plain", &sys), ("conjugated", &conj)] {
        let spectrum = eigenstates(s, 12)?;
        println!("{label}: relations {:.1e}, spectrum {:.1e}", s.max_deviation(), spectrum.max_deviation());
        for c in &spectrum.checks {
            println!("  {:<20} {:.1e}", c.name, c.deviation);
        }
    }
    Ok(())
}
