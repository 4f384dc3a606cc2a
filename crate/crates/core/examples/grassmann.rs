//! Arithmetic in a Grassmann algebra with four generators.

use num_complex::Complex64;
use supergrass::{AlgebraConfig, Result};

fn main() -> Result<()> {
    let alg = AlgebraConfig::new(4)?;
    let (e1, e2, e3) = (alg.generator(1)?, alg.generator(2)?, alg.generator(3)?);

    let x = &alg.scalar(2.0) + &(&e1 * &e2).scale(Complex64::new(1.0, 3.0));
    let theta = &e3.scale(0.5) + &e1;
    println!("x          = {x}");
    println!("theta      = {theta}");
    println!("theta^2    = {}", theta.powi(2));
    println!("e2 e1      = {}", &e2 * &e1);
    println!("x^-1       = {}", x.inverse()?);
    println!("exp(x)     = {}", x.exp());
    println!("sqrt(x)    = {}", x.sqrt()?);
    println!("x‡         = {}", x.adjoint());
    println!("theta‡ theta = {}", &theta.adjoint() * &theta);

    // Odd elements pass through x with a grade involution.
    let lhs = &x * &theta;
    let rhs = &theta * &x.star();
    println!("x theta - theta x* = {:.1e}", lhs.distance(&rhs));

    println!("∫ de1 (e1 e2) = {}", (&e1 * &e2).berezin_integrate_left(1)?);
    Ok(())
}
