//! Eigenstates mixing the bosonic and fermionic generators.

use super::sums::{forward_recurrence, o_word_on_power};
use super::{Condition, Method, ReducedCoefficients, SolutionFamily};
use crate::error::Result;
use crate::grassmann::{factorial, GrassmannElement};
use crate::superfock::{residual, FockSpace, Letter, Sector, SuperOperatorExpr, SuperState};

type G = GrassmannElement;

/// `C_n, D_n` of `a + gamma b + delta b†` as alternating-word sums,
/// `C_n = sum_l (-1)^l O(l, gamma, delta*, z_1) z^n / sqrt(n!) F_(l mod 2)`
/// and the mirror for `D_n` with `G`.
pub fn compact_coefficients(gamma: &G, delta: &G, z: &G, c0: &G, d0: &G, n_max: usize) -> (Vec<G>, Vec<G>) {
    let z1 = z.odd();
    let (gs, ds) = (gamma.star(), delta.star());
    let f = [c0.clone(), d0.star()];
    let g = [d0.clone(), c0.star()];
    let mut c = Vec::with_capacity(n_max + 1);
    let mut d = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let norm = 1.0 / factorial(n).sqrt();
        let mut cn = G::zero(z.order());
        let mut dn = G::zero(z.order());
        for l in 0..=n {
            let tc = &o_word_on_power(l, gamma, &ds, &z1, z, n) * &f[l % 2];
            let td = &o_word_on_power(l, delta, &gs, &z1, z, n) * &g[l % 2];
            if l % 2 == 0 {
                cn += &tc;
                dn += &td;
            } else {
                cn -= &tc;
                dn -= &td;
            }
        }
        c.push(cn.scale(norm));
        d.push(dn.scale(norm));
    }
    (c, d)
}

/// `C_n, D_n` of `a + b1 a† + gamma_0 b + delta_0 b†` with odd `b1`: the
/// `b1 = 0` word sums corrected by the first-order terms in `b1`.
pub fn reduced_coefficients(b1: &G, gamma0: &G, delta0: &G, z: &G, c0: &G, d0: &G, n_max: usize) -> (Vec<G>, Vec<G>) {
    let (mut c, mut d) = compact_coefficients(gamma0, delta0, z, c0, d0, n_max);
    let order = z.order();
    let (z0, z1) = (z.even(), z.odd());
    let gd = gamma0 * delta0;
    for n in 2..=n_max {
        let nf = factorial(n);
        let mut even = G::zero(order);
        for l in (2..=n).step_by(2) {
            let w = nf / (factorial(n - l) * factorial(l - 1));
            let mut t = z0.powi(n - l);
            if n > l {
                t += &(&z0.powi(n - l - 1) * &z1).scale((n - l) as f64 / (l + 1) as f64);
            }
            even += &(&t * &gd.powi((l - 2) / 2)).scale(w);
        }
        let mut odd = G::zero(order);
        for l in (3..=n).step_by(2) {
            let w = (l - 1) as f64 * nf / (factorial(n - l) * factorial(l));
            odd += &(&z0.powi(n - l) * &gd.powi((l - 3) / 2)).scale(w);
        }
        let k = 0.5 / nf.sqrt();
        let bc = b1.scale(k);
        c[n] -= &(&(&bc * &even) * c0);
        c[n] += &(&(&(&bc * &odd) * gamma0) * &d0.star());
        d[n] -= &(&(&bc * &even) * d0);
        d[n] += &(&(&(&bc * &odd) * delta0) * &c0.star());
    }
    (c, d)
}

/// The same corrections written with `(gamma_0 delta_0)^-1` and the word
/// operators. Needs an invertible `gamma_0 delta_0`.
pub fn reduced_compact_coefficients(
    b1: &G,
    gamma0: &G,
    delta0: &G,
    z: &G,
    c0: &G,
    d0: &G,
    n_max: usize,
) -> Result<(Vec<G>, Vec<G>)> {
    let (mut c, mut d) = compact_coefficients(gamma0, delta0, z, c0, d0, n_max);
    let z1 = z.odd();
    let pre = (b1 * &(gamma0 * delta0).inverse()?).scale(0.5);
    for n in 2..=n_max {
        let norm = 1.0 / factorial(n).sqrt();
        let mut ec = G::zero(z.order());
        let mut ed = G::zero(z.order());
        for l in (2..=n).step_by(2) {
            ec += &o_word_on_power(l, gamma0, delta0, &z1, z, n).scale(l as f64 * norm);
            ed += &o_word_on_power(l, delta0, gamma0, &z1, z, n).scale(l as f64 * norm);
        }
        let mut oc = G::zero(z.order());
        let mut od = G::zero(z.order());
        for l in (3..=n).step_by(2) {
            oc += &o_word_on_power(l, gamma0, delta0, &z1, z, n).scale((l - 1) as f64 * norm);
            od += &o_word_on_power(l, delta0, gamma0, &z1, z, n).scale((l - 1) as f64 * norm);
        }
        c[n] -= &(&(&pre * &ec) * c0);
        c[n] += &(&(&pre * &oc) * &d0.star());
        d[n] -= &(&(&pre * &ed) * d0);
        d[n] += &(&(&pre * &od) * &c0.star());
    }
    Ok((c, d))
}

fn pair(
    space: FockSpace,
    method: Method,
    coeffs: &ReducedCoefficients,
    build: impl Fn(&G, &G) -> (Vec<G>, Vec<G>),
) -> Vec<SolutionFamily> {
    let one = G::one(space.order);
    let zero = G::zero(space.order);
    let op = coeffs.expr();
    [(Sector::Minus, &one, &zero), (Sector::Plus, &zero, &one)]
        .into_iter()
        .map(|(sector, c0, d0)| {
            let (c, d) = build(c0, d0);
            SolutionFamily::assemble(space, sector, method, c, d, Vec::new(), op.clone(), coeffs.z.clone())
        })
        .collect()
}

/// Eigenstates of `a + gamma b` at `z`: the coherent rail `|z;->` and the
/// `D_0`-rooted family, orthogonalized against the first and normalized.
///
/// The `c` and `d` sequences are the raw recurrence coefficients for unit
/// free constants; `state` holds the normalized vector.
pub fn solve_super_coherent(gamma: &G, z: &G, space: FockSpace) -> Result<Vec<SolutionFamily>> {
    let order = space.order;
    let coeffs = ReducedCoefficients::new(G::zero(order), gamma.clone(), G::zero(order), z.clone());
    let mut fams = pair(space, Method::SuperCoherent, &coeffs, |c0, d0| forward_recurrence(&coeffs, c0, d0, space.cutoff));
    let minus = fams[0].state.normalize()?;
    let raw = &fams[1].state;
    let overlap = minus.inner_product(raw);
    let plus = raw.sub(&minus.scale_right(&overlap)).normalize()?;
    for (f, s) in fams.iter_mut().zip([minus, plus]) {
        f.residual = residual(&f.operator, z, &s);
        f.state = s;
    }
    Ok(fams)
}

/// `(N, B)` of the closed-form orthonormal `D_0`-rooted supercoherent state,
/// `B = sqrt(1 + gamma‡ gamma)` and
/// `N = B^-1 [1 - B^-1 (gamma_1‡ gamma_1 - gamma_0‡ gamma_0 (z_0‡ z_0)^2) z_1‡ z_1 B^-1]`.
pub fn supercoherent_constants(gamma: &G, z: &G) -> Result<(G, G)> {
    let one = G::one(z.order());
    let b = (&one + &(&gamma.adjoint() * gamma)).sqrt()?;
    let bi = b.inverse()?;
    let (g0, g1) = (gamma.even(), gamma.odd());
    let (z0, z1) = (z.even(), z.odd());
    let zz = &z0.adjoint() * &z0;
    let inner = &(&g1.adjoint() * &g1) - &(&(&g0.adjoint() * &g0) * &(&zz * &zz));
    let n = &bi * &(&one - &(&(&(&bi * &inner) * &(&z1.adjoint() * &z1)) * &bi));
    Ok((n, b))
}

/// Eigenstates of `a + gamma b + delta b†` from the alternating-word sums,
/// rooted at `C_0 = 1` and at `D_0 = 1`.
pub fn solve_a_gamma_delta(gamma: &G, delta: &G, z: &G, space: FockSpace) -> Result<Vec<SolutionFamily>> {
    let order = space.order;
    let coeffs = ReducedCoefficients::new(G::zero(order), gamma.clone(), delta.clone(), z.clone());
    Ok(pair(space, Method::WordOperators, &coeffs, |c0, d0| {
        compact_coefficients(gamma, delta, z, c0, d0, space.cutoff)
    }))
}

/// Supersqueeze data for `a + beta a† + gamma b + delta b†`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralReduction {
    /// `beta_1 + delta_0 gamma_1 + gamma_0 delta_1`.
    pub beta1_hat_general: G,
    /// `-(beta_0 + gamma_1 delta_1) a†^2 / 2`.
    pub squeeze: SuperOperatorExpr,
    /// `-delta_1 a† b†`.
    pub pair_creation: SuperOperatorExpr,
    /// `-gamma_1 a† b`.
    pub pair_transfer: SuperOperatorExpr,
}

impl GeneralReduction {
    pub fn new(beta: &G, gamma: &G, delta: &G) -> Self {
        let (beta0, beta1) = (beta.even(), beta.odd());
        let (g0, g1) = (gamma.even(), gamma.odd());
        let (d0, d1) = (delta.even(), delta.odd());
        let beta1_hat_general = &(&beta1 + &(&d0 * &g1)) + &(&g0 * &d1);
        let squeeze = SuperOperatorExpr::term((&beta0 + &(&g1 * &d1)).scale(-0.5), &[Letter::Ad, Letter::Ad]);
        let pair_creation = SuperOperatorExpr::term(-&d1, &[Letter::Ad, Letter::Bd]);
        let pair_transfer = SuperOperatorExpr::term(-&g1, &[Letter::Ad, Letter::B]);
        Self { beta1_hat_general, squeeze, pair_creation, pair_transfer }
    }

    /// `G phi = exp(squeeze) exp(pair_creation) exp(pair_transfer) phi`.
    /// Every exponent only raises, so the result is exact below the cutoff.
    pub fn apply(&self, phi: &SuperState) -> Result<SuperState> {
        phi.exp_apply(&self.pair_transfer)?.exp_apply(&self.pair_creation)?.exp_apply(&self.squeeze)
    }
}

/// Eigenstates of `a + beta a† + gamma b + delta b†`: the reduced problem
/// with `beta1_hat` is solved by the first-order corrected word sums, then
/// mapped back through the supersqueeze.
pub fn solve_general(beta: &G, gamma: &G, delta: &G, z: &G, space: FockSpace) -> Result<Vec<SolutionFamily>> {
    let order = space.order;
    let reduction = GeneralReduction::new(beta, gamma, delta);
    let (g0, d0) = (gamma.even(), delta.even());
    let coeffs = ReducedCoefficients::new(beta.clone(), gamma.clone(), delta.clone(), z.clone());
    let op = coeffs.expr();
    let one = G::one(order);
    let zero = G::zero(order);
    let mut out = Vec::new();
    for (sector, c0, d0c) in [(Sector::Minus, &one, &zero), (Sector::Plus, &zero, &one)] {
        let (c, d) = reduced_coefficients(&reduction.beta1_hat_general, &g0, &d0, z, c0, d0c, space.cutoff);
        let phi = SuperState::from_coefficients(
            space,
            c.iter().enumerate().map(|(n, x)| (n, Sector::Minus, x.clone())).chain(d.iter().enumerate().map(|(n, x)| (n, Sector::Plus, x.clone()))),
        )?;
        let psi = reduction.apply(&phi)?;
        let cs = (0..=space.cutoff).map(|n| psi.get(n, Sector::Minus)).collect();
        let ds = (0..=space.cutoff).map(|n| psi.get(n, Sector::Plus)).collect();
        let conditions: Vec<Condition> = Vec::new();
        out.push(SolutionFamily::with_state(sector, Method::GeneralReduction, cs, ds, conditions, op.clone(), z.clone(), psi));
    }
    Ok(out)
}
