//! Builds every closed-form family with small parameters and prints its
//! residual and norm.

use supergrass::cli::parse_expr;
use supergrass::states::{construct_family, family_names, FamilyParams};
use supergrass::{FockSpace, Result};

fn params(name: &str, order: usize) -> Result<FamilyParams> {
    let keys: &[(&str, &str)] = match name {
        "gen_coherent" => &[("z", "0.3+0.1i + 0.2*e1"), ("a_minus", "1 + 0.1*e2*e3")],
        "gen_supersqueezed" => &[("z", "0.3+0.1i"), ("beta", "0.2 + 0.1*e2")],
        "b_saes" => &[("z", "0.3*e1")],
        "az_supercoherent" => &[("z0", "0.3"), ("gamma0", "0.2i")],
        "gen_super_cohe" => &[("z", "0.3+0.1i"), ("gamma", "0.2 + 0.1*e1")],
        "susy_standard" => &[("z0", "0.3"), ("theta1", "0.2*e1")],
        n if n.starts_with("fermion_squeezed") => &[("delta0", "0.3"), ("z1", "0.2*e1")],
        n if n.starts_with("odd") => &[("gamma1", "0.3*e1"), ("delta1", "0.2*e2"), ("z", "0.3")],
        n if n.starts_with("spin_half") => &[("gamma0", "0.3"), ("delta0", "0.2"), ("z0", "0.3"), ("z", "0.3 + 0.1*e3")],
        n if n.starts_with("general_z0") => &[("beta", "0.1 + 0.1*e1"), ("gamma", "0.4 + 0.1*e2"), ("delta", "0.3"), ("z", "0.3")],
        n if n.starts_with("general") => &[("beta", "0.1 + 0.1*e1"), ("gamma", "0.4 + 0.1*e2"), ("delta", "0.3"), ("z", "0.3 + 0.2*e3")],
        _ => &[],
    };
    let mut p = FamilyParams::new(order);
    for (k, v) in keys {
        p.insert(k, parse_expr(v, order)?);
    }
    Ok(p)
}

fn main() -> Result<()> {
    let space = FockSpace::new(4, 24, 8)?;
    for name in family_names() {
        let f = construct_family(name, &params(name, space.order)?, space)?;
        println!("{name:<24} residual {:.2e}  <psi|psi> = {}", f.residual, f.norm_squared().pruned(1e-12));
    }
    Ok(())
}
