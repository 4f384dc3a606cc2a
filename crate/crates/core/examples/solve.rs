//! Solves `(a + 0.3 e1 b) psi = 0.5 psi` by the recurrence solver and checks
//! each family against the nullspace oracle.

use supergrass::cli::parse_expr;
use supergrass::saes::{oracle_nullspace_lift, solve_sh22, GeneratorCoefficients};
use supergrass::{FockSpace, Result};

fn main() -> Result<()> {
    let space = FockSpace::new(4, 24, 8)?;
    let g = |s: &str| parse_expr(s, space.order);
    let coeffs = GeneratorCoefficients {
        a_minus: g("1")?,
        a_plus: g("0")?,
        a3: g("0")?,
        b_minus: g("0.3*e1")?,
        b_plus: g("0")?,
        z: g("0.5")?,
    };
    let families = solve_sh22(&coeffs, space)?;
    let oracle = oracle_nullspace_lift(&coeffs.expr(), &coeffs.z, space)?;
    println!("oracle body dimension {}", oracle.body_dimension);
    for f in &families {
        println!(
            "{} on |n;{}>: residual {:.2e}, off the oracle's span by {:.2e}",
            f.method,
            f.sector.symbol(),
            f.residual,
            oracle.project(&f.state).1
        );
        for c in &f.conditions {
            println!("  needs {}", c.name);
        }
    }
    Ok(())
}
