//! Eigenstates of `A_- a` and of `a + beta a†`.

use num_complex::Complex64;

use super::fermion::solve_left_linear;
use super::sums::forward_recurrence;
use super::{Condition, Method, ReducedCoefficients, SolutionFamily};
use crate::error::{Error, Result};
use crate::grassmann::{factorial, AnalyticFn, GrassmannElement};
use crate::superfock::{FockSpace, Letter, Sector, SuperOperatorExpr};

type G = GrassmannElement;

fn power_rail(w: &G, n_max: usize) -> Vec<G> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut p = G::one(w.order());
    for n in 0..=n_max {
        out.push(p.scale(1.0 / factorial(n).sqrt()));
        p = &p * w;
    }
    out
}

fn rails(
    space: FockSpace,
    method: Method,
    w: &G,
    conditions: Vec<Condition>,
    op: &SuperOperatorExpr,
    z: &G,
) -> Vec<SolutionFamily> {
    let rail = power_rail(w, space.cutoff);
    let zero = vec![G::zero(space.order); space.cutoff + 1];
    vec![
        SolutionFamily::assemble(space, Sector::Minus, method, rail.clone(), zero.clone(), conditions.clone(), op.clone(), z.clone()),
        SolutionFamily::assemble(space, Sector::Plus, method, zero, rail, conditions, op.clone(), z.clone()),
    ]
}

/// Eigenstates of `A_- a` at `Z`, one family per rail.
///
/// With an invertible `A_-` the coefficients are `(A_-^-1 Z)^n / sqrt(n!)`.
/// Without a body the equation `A_- C_1 = Z C_0` must be solvable, which
/// forces `Z_phi = 0`; the family then uses `C_n = C_1^n / sqrt(n!)` with
/// `C_0 = 1`.
pub fn solve_scaled_boson(a_minus: &G, z: &G, space: FockSpace) -> Result<Vec<SolutionFamily>> {
    let op = SuperOperatorExpr::term(a_minus.clone(), &[Letter::A]);
    if let Ok(inv) = a_minus.inverse() {
        return Ok(rails(space, Method::CoherentSeries, &(&inv * z), Vec::new(), &op, z));
    }
    let body = Condition::new("Z_phi = 0", G::scalar(space.order, z.body()));
    body.enforce(1e-12)?;
    let c1 = solve_left_linear(a_minus, z).map_err(|e| match e {
        Error::EigenvalueConstraintViolated { level, .. } => Error::violated("A_- C_1 = Z C_0", level),
        other => other,
    })?;
    let cond = Condition::new("A_- C_1 = Z C_0", &(a_minus * &c1) - z);
    Ok(rails(space, Method::DegenerateCoherent, &c1, vec![body, cond], &op, z))
}

/// Data of the squeeze that removes the even part of `beta`.
#[derive(Debug, Clone, PartialEq)]
pub struct SqueezeReduction {
    /// Squeeze parameter `X_0` with `X_0 S(X_0 X_0‡) + beta_0 C(X_0 X_0‡) = 0`.
    pub x0: G,
    /// `cosh` of the squeeze norm, `C(X_0 X_0‡)`.
    pub cosh: G,
    /// `sinh` of the squeeze norm divided by the norm, `S(X_0 X_0‡)`.
    pub sinhc: G,
    /// `C + beta X_0‡ S`, the coefficient of `a` after conjugation.
    pub g_factor: G,
    /// `G(X_0, beta_0)`.
    pub g_factor0: G,
    pub beta1_hat: G,
    pub z_hat: G,
}

const SERIES_TERMS: usize = 4000;

/// `sum_n t^n / (2n)!` and `sum_n t^n / (2n+1)!`.
fn cosh_sinhc(t: &G) -> Result<(G, G)> {
    let mut c = Vec::new();
    let mut s = Vec::new();
    let mut f = 1.0f64;
    for n in 0..90 {
        if n > 0 {
            f *= (2 * n - 1) as f64 * (2 * n) as f64;
        }
        c.push(Complex64::new(1.0 / f, 0.0));
        s.push(Complex64::new(1.0 / (f * (2 * n + 1) as f64), 0.0));
    }
    Ok((t.analytic(&AnalyticFn::Series(c))?, t.analytic(&AnalyticFn::Series(s))?))
}

impl SqueezeReduction {
    /// Solves for `X_0` and the reduced coefficients of `a + beta a† = z`.
    pub fn new(beta: &G, z: &G) -> Result<Self> {
        let order = beta.order();
        let beta0 = beta.even();
        let beta1 = beta.odd();
        if beta0.body().norm() >= 1.0 {
            return Err(Error::Domain(format!("|body(beta_0)| = {} admits no bounded squeeze", beta0.body().norm())));
        }
        // X_0 = -beta_0 k(beta_0 beta_0‡) with k(s) = artanh(sqrt s)/sqrt s.
        let s = &beta0 * &beta0.adjoint();
        let k = if s.is_zero() {
            G::one(order)
        } else {
            let coeffs = (0..SERIES_TERMS).map(|n| Complex64::new(1.0 / (2 * n + 1) as f64, 0.0)).collect();
            s.analytic(&AnalyticFn::Series(coeffs))?
        };
        let x0 = -(&beta0 * &k);
        let (cosh, sinhc) = cosh_sinhc(&(&x0 * &x0.adjoint()))?;
        let xs = &x0.adjoint() * &sinhc;
        let g_factor = &cosh + &(beta * &xs);
        let g_factor0 = &cosh + &(&beta0 * &xs);
        let beta1_hat = &(&beta1 * &g_factor0.inverse()?) * &cosh;
        let z_hat = &g_factor.inverse()? * z;
        Ok(Self { x0, cosh, sinhc, g_factor, g_factor0, beta1_hat, z_hat })
    }

    /// Residual of the squeeze condition `X_0 S + beta_0 C = 0`.
    pub fn condition_residual(&self, beta0: &G) -> f64 {
        (&(&self.x0 * &self.sinhc) + &(beta0 * &self.cosh)).max_abs()
    }

    /// `(Gamma, Omega, C_hat)` normalizing the reduced state.
    pub fn normalization(&self) -> Result<(G, G, G)> {
        normalization_constants(&self.z_hat, &self.beta1_hat)
    }
}

/// `Gamma`, `Omega` and `C_hat = sqrt(Gamma)^-1 [1 + sqrt(Gamma)^-1 Omega sqrt(Gamma)^-1 / 2]`
/// for `exp[-b a†^2/2 - z_1 b a†^3/3] D(z_0) D(z_1)|0>` with `b = beta1_hat`.
pub fn normalization_constants(z: &G, b: &G) -> Result<(G, G, G)> {
    let order = z.order();
    let one = G::one(order);
    let z1 = z.odd();
    let z0 = z.even();
    let zd = z.adjoint();
    let bd = b.adjoint();
    let z1d = z1.adjoint();
    let p = |x: &G, k: usize| x.powi(k);
    let gamma = &(&one
        - &(&(&p(&zd, 2) * b) + &(&bd * &p(z, 2))).scale(0.5))
        - &(&(&(&p(&zd, 3) * &z1) * b) + &(&(&bd * &z1d) * &p(z, 3))).scale(1.0 / 3.0);
    let bb = &bd * b;
    let first = &(&(&(&p(&zd, 3) * &z1) * &p(z, 2)) + &(&(&p(&zd, 2) * &z1d) * &p(z, 3))).scale(1.0 / 6.0)
        + &(&(&(&(&p(&zd, 2) * &z1) * z) + &(&zd * &z1))
            + &(&(&(&zd * &z1d) * &p(z, 2)) + &(&z1d * z)));
    let quarter = (&(&(&p(&zd, 2) * &p(z, 2)) + &(&zd * z).scale(4.0)) + &one.scale(2.0)).scale(0.25);
    let mut omega = &(&first - &quarter) * &bb;
    let ninth = &(&(&(&p(&zd, 3) * &p(z, 3)) + &(&p(&zd, 2) * &p(z, 2)).scale(9.0)) + &(&zd * z).scale(24.0))
        + &one.scale(6.0);
    omega -= &(&(&ninth * &(&z1d * &z1)) * &bb).scale(1.0 / 9.0);
    let z0d = z0.adjoint();
    omega -= &(&(&(&p(&z0d, 2) * b) + &(&bd * &p(&z0, 2))) * &(&z1d * &z1));
    let root = gamma.sqrt()?;
    let inv = root.inverse()?;
    let c_hat = &inv * &(&one + &(&(&inv * &omega) * &inv).scale(0.5));
    Ok((gamma, omega, c_hat))
}

/// Eigenstate of `a + beta a† = z` on the minus rail, from the recurrence
/// `sqrt(n+1) C_(n+1) = z C_n - sqrt(n) beta C_(n-1)` with `C_0 = 1`. The
/// state is normalized. The squeeze reduction is returned alongside.
pub fn solve_boson_squeezed(beta: &G, z: &G, space: FockSpace) -> Result<(SolutionFamily, SqueezeReduction)> {
    let red = SqueezeReduction::new(beta, z)?;
    let order = space.order;
    let coeffs = ReducedCoefficients::new(beta.clone(), G::zero(order), G::zero(order), z.clone());
    let (c, _) = forward_recurrence(&coeffs, &G::one(order), &G::zero(order), space.cutoff);
    let d = vec![G::zero(order); space.cutoff + 1];
    let op = &SuperOperatorExpr::a(order) + &SuperOperatorExpr::term(beta.clone(), &[Letter::Ad]);
    let mut fam = SolutionFamily::assemble(space, Sector::Minus, Method::SqueezeReduction, c, d, Vec::new(), op, z.clone());
    fam.state = fam.state.normalize()?;
    fam.residual = crate::superfock::residual(&fam.operator, z, &fam.state);
    Ok((fam, red))
}
