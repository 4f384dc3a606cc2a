//! Eigenstates on the fermionic pair `|->, |+>`: `B b psi = Z psi` and
//! `(b + delta b†) psi = z psi`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{Condition, Method, SolutionFamily};
use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::superfock::{FockSpace, Letter, Sector, SuperOperatorExpr};

type G = GrassmannElement;

const TOL: f64 = 1e-12;

/// Solves `a x = r` over the algebra. Picks the minimal-norm solution when
/// `a` is not invertible and fails, naming the level, when none exists.
pub fn solve_left_linear(a: &G, r: &G) -> Result<G> {
    if let Ok(inv) = a.inverse() {
        return Ok(&inv * r);
    }
    let order = a.order();
    let dim = 1usize << order;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for col in 0..dim {
        let basis = G::from_blades(order, [(col as u32, Complex64::new(1.0, 0.0))])?;
        for (mask, c) in (a * &basis).blades() {
            m[(mask as usize, col)] = c;
        }
    }
    let rhs = DVector::from_fn(dim, |i, _| r.blade(i as u32));
    let svd = m.clone().svd(true, true);
    let x = svd.solve(&rhs, 1e-12).map_err(|e| Error::Domain(e.to_string()))?;
    let sol = G::from_blades(order, x.iter().enumerate().map(|(i, &c)| (i as u32, c)))?.pruned(1e-15);
    let miss = &(a * &sol) - r;
    if let Some(level) = miss.lowest_level(1e-10) {
        return Err(Error::violated("a x = r", level));
    }
    Ok(sol)
}

/// `D` with `B D* = Z` and `Z D = 0`, the two components of `B b psi = Z psi`
/// for `psi = |-> + D|+>`.
fn solve_pair(b: &G, z: &G) -> Result<G> {
    let order = b.order();
    let dim = 1usize << order;
    let mut m = DMatrix::<Complex64>::zeros(2 * dim, dim);
    for col in 0..dim {
        let basis = G::from_blades(order, [(col as u32, Complex64::new(1.0, 0.0))])?;
        for (mask, c) in (b * &basis.star()).blades() {
            m[(mask as usize, col)] = c;
        }
        for (mask, c) in (z * &basis).blades() {
            m[(dim + mask as usize, col)] = c;
        }
    }
    let rhs = DVector::from_fn(2 * dim, |i, _| if i < dim { z.blade(i as u32) } else { Complex64::new(0.0, 0.0) });
    let x = m.clone().svd(true, true).solve(&rhs, 1e-12).map_err(|e| Error::Domain(e.to_string()))?;
    let d = G::from_blades(order, x.iter().enumerate().map(|(i, &c)| (i as u32, c)))?.pruned(1e-15);
    let level = [&(b * &d.star()) - z, z * &d].iter().filter_map(|x| x.lowest_level(1e-10)).min();
    match level {
        Some(level) => Err(Error::violated("B D* = Z C, Z D = 0", level)),
        None => Ok(d),
    }
}

fn is_small(x: &G) -> bool {
    x.max_abs() <= TOL
}

fn family(space: FockSpace, d: G, conditions: Vec<Condition>, op: &SuperOperatorExpr, z: &G) -> SolutionFamily {
    let one = G::one(space.order);
    SolutionFamily::assemble(space, Sector::Minus, Method::FermionLinear, vec![one], vec![d], conditions, op.clone(), z.clone())
}

/// Solutions of `B b psi = Z psi` with `psi = C|-> + D|+>` and `C = 1`.
///
/// The branches follow the structure of `B`: invertible, purely odd,
/// or without body with a nonzero even part. The conditions each branch
/// imposes on `Z` are checked and returned with the family.
pub fn solve_fermion_scaled(b: &G, z: &G, space: FockSpace) -> Result<Vec<SolutionFamily>> {
    let order = space.order;
    let op = SuperOperatorExpr::term(b.clone(), &[Letter::B]);
    let zero = G::zero(order);
    let zs = z.star();
    let (b0, b1) = (b.even(), b.odd());
    let (z0, z1) = (z.even(), z.odd());

    if b.body().norm() > TOL {
        if is_small(z) {
            return Ok(vec![family(space, zero, Vec::new(), &op, z)]);
        }
        let body = Condition::new("Z_phi = 0", G::scalar(order, z.body()));
        body.enforce(TOL)?;
        // D = z* C* with z = B^-1 Z; the remaining equation is Z z* = 0.
        let zz = &b.inverse()? * z;
        let prod = z * &zz.star();
        let conditions = vec![
            body,
            Condition::new("z0^2 = 0", prod.even()),
            Condition::new("z0 Z1 = z1 Z0", prod.odd()),
        ];
        for c in &conditions {
            c.enforce(TOL)?;
        }
        return Ok(vec![family(space, zz.star(), conditions, &op, z)]);
    }

    if is_small(b) {
        return Err(Error::UnsupportedRegime("vanishing coefficient of b".into()));
    }
    if is_small(&b0) && is_small(z) {
        return Ok([1.0, -1.0].iter().map(|&s| family(space, b1.scale(s), Vec::new(), &op, z)).collect());
    }
    let body = Condition::new("Z_phi = 0", G::scalar(order, z.body()));
    body.enforce(TOL)?;
    let mut conditions = vec![body];
    let d_equation = if !is_small(&b0) && !is_small(&b1) {
        let b0sq = &b0 * &b0;
        if is_small(&b0sq) {
            return Err(Error::UnsupportedRegime("even part of B squares to zero while B has an odd part".into()));
        }
        conditions.push(Condition::new("Z0 (2 B1 Z1 - B0 Z0) = 0", &z0 * &(&(&b1 * &z1).scale(2.0) - &(&b0 * &z0))));
        conditions.push(Condition::new("B1 Z0^2 = 0", &(&b1 * &z0) * &z0));
        ("B0^2 D = B Z* C*", b0sq, b * &zs)
    } else if is_small(&b0) {
        conditions.push(Condition::new("Z0^2 = 0", &z0 * &z0));
        conditions.push(Condition::new("Z0 Z1 = 0", &z0 * &z1));
        ("B1 D = -Z* C*", b1, -&zs)
    } else {
        conditions.push(Condition::new("Z0^2 = 0", &z0 * &z0));
        ("B0 D = Z* C*", b0, zs)
    };
    for c in &conditions {
        c.enforce(TOL)?;
    }
    // The printed conditions are necessary only; solve the full pair.
    let d = solve_pair(b, z)?;
    let (name, coeff, rhs) = d_equation;
    let check = Condition::new(name, &(&coeff * &d) - &rhs);
    check.enforce(1e-10)?;
    conditions.push(check);
    Ok(vec![family(space, d, conditions, &op, z)])
}

/// `±sqrt(delta_0) + z_1`, the two eigenvalues admitted by `b + delta_0 b†`.
pub fn fermion_squeezed_eigenvalues(delta0: &G, z1: &G) -> Result<[G; 2]> {
    if !delta0.is_even() {
        return Err(Error::Parity("delta must be even".into()));
    }
    let root = if is_small(delta0) { G::zero(delta0.order()) } else { delta0.sqrt()? };
    Ok([&root + z1, &-&root + z1])
}

/// Eigenstates of `b + delta b†` at `z`, and of its mirror eigenvalue
/// `-z_0 + z_1` when that differs. The free constant is `C = 1`, giving
/// `D = z*`.
pub fn solve_fermion_squeezed(delta: &G, z: &G, space: FockSpace) -> Result<Vec<SolutionFamily>> {
    if !is_small(&delta.odd()) {
        return Err(Error::Parity("delta must be even".into()));
    }
    let op = &SuperOperatorExpr::b(space.order) + &SuperOperatorExpr::term(delta.clone(), &[Letter::Bd]);
    let z0 = z.even();
    let cond = Condition::new("z0^2 = delta", &(&z0 * &z0) - delta);
    cond.enforce(1e-10)?;
    let mut out = vec![family(space, z.star(), vec![cond.clone()], &op, z)];
    if !is_small(&z0) {
        let mirror = &z.odd() - &z0;
        out.push(family(space, mirror.star(), vec![cond], &op, &mirror));
    }
    Ok(out)
}
