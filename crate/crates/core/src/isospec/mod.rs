//! Oscillator Hamiltonians with Grassmann-valued, partly odd interaction
//! terms that keep the spectrum `E_n = n`: the `h(2)` family with
//! `A0 = a + b1 a†` and the spin-1/2 family with `A0 = a + g0 b + d0 b†`,
//! their ladders, coherent states and supersqueezed conjugates.

use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::saes::SqueezeReduction;
use crate::states::{apply_unitary, exp_apply, narrowed, unitary, widened, UnitaryParams};
use crate::superfock::{FockSpace, GMatrix, Letter, OperatorMatrix, Sector, SuperOperatorExpr, SuperState};

#[cfg(test)]
mod tests;

type G = GrassmannElement;

/// Levels added for displaced ground states.
const SPIN_MARGIN: usize = 48;
/// Levels added around a supersqueeze conjugation, which moves states up by
/// two levels per order in its parameters.
const CONJ_MARGIN: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoFamily {
    H2,
    SpinHalf,
}

impl IsoFamily {
    pub fn name(self) -> &'static str {
        match self {
            IsoFamily::H2 => "h2",
            IsoFamily::SpinHalf => "spin_half",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "h2" => Ok(IsoFamily::H2),
            "spin_half" => Ok(IsoFamily::SpinHalf),
            _ => Err(Error::Config(format!("unknown isospectral family {s}; known: h2, spin_half"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum IsoParams {
    /// Odd `b1` in `A0 = a + b1 a†`.
    H2 { beta1: G },
    /// Even `g0, d0` in `A0 = a + g0 b + d0 b†`, with `g0‡ g0 = d0‡ d0`.
    SpinHalf { gamma0: G, delta0: G },
}

impl IsoParams {
    pub fn family(&self) -> IsoFamily {
        match self {
            IsoParams::H2 { .. } => IsoFamily::H2,
            IsoParams::SpinHalf { .. } => IsoFamily::SpinHalf,
        }
    }

    fn order(&self) -> usize {
        match self {
            IsoParams::H2 { beta1 } => beta1.order(),
            IsoParams::SpinHalf { gamma0, .. } => gamma0.order(),
        }
    }
}

/// A named identity and its largest deviation below the guard band.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationCheck {
    pub name: String,
    pub deviation: f64,
}

#[derive(Debug, Clone)]
pub struct IsospectralSystem {
    pub params: IsoParams,
    pub space: FockSpace,
    /// Space the matrices live on; wider than `space` for conjugated systems.
    pub work: FockSpace,
    pub a0: SuperOperatorExpr,
    pub h0: SuperOperatorExpr,
    pub conjugator: Option<UnitaryParams>,
    /// `(G^-1)‡ G^-1` for a conjugated system.
    pub eta: Option<OperatorMatrix>,
    /// `A` and `H`: `A0` and `H0`, or their conjugates.
    pub a: OperatorMatrix,
    pub h: OperatorMatrix,
    conj: Option<(OperatorMatrix, OperatorMatrix)>,
    pub checks: Vec<RelationCheck>,
}

impl IsospectralSystem {
    pub fn family(&self) -> IsoFamily {
        self.params.family()
    }

    pub fn check(&self, name: &str) -> Option<f64> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.deviation)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().map(|c| c.deviation).fold(0.0, f64::max)
    }

    /// `G psi` for a conjugated system, `psi` otherwise; `psi` lives on `work`.
    fn transform(&self, psi: &SuperState) -> SuperState {
        match &self.conj {
            Some((g, _)) => g.apply(psi),
            None => psi.clone(),
        }
    }
}

fn op(c: G, word: &[Letter]) -> SuperOperatorExpr {
    SuperOperatorExpr::term(c, word)
}

fn scalar(order: usize, x: f64) -> G {
    G::scalar(order, x)
}

fn band_dev(space: FockSpace, expr: &SuperOperatorExpr) -> f64 {
    space.realize(expr).band_max_abs()
}

fn push(checks: &mut Vec<RelationCheck>, name: &str, deviation: f64) {
    checks.push(RelationCheck { name: name.to_string(), deviation });
}

/// `A0`, `H0` in normal form, and the family's relation checks.
fn base_system(params: &IsoParams, space: FockSpace) -> Result<(SuperOperatorExpr, SuperOperatorExpr, Vec<RelationCheck>)> {
    use Letter::*;
    let order = params.order();
    let one = SuperOperatorExpr::identity(order);
    let a = SuperOperatorExpr::a(order);
    let mut checks = Vec::new();
    let (a0, h0) = match params {
        IsoParams::H2 { beta1 } => {
            if !beta1.is_odd() {
                return Err(Error::Parity("beta1 must be odd".into()));
            }
            let bd = beta1.adjoint();
            let bb = &bd * beta1;
            let a0 = &a + &op(beta1.clone(), &[Ad]);
            let number = op(scalar(order, 1.0), &[Ad, A]);
            let sym = &op(bb.clone(), &[Ad, A]) + &op(bb.clone(), &[A, Ad]);
            let q_plus = op(beta1.clone(), &[Ad, Ad]);
            let q_minus = op(bd.clone(), &[A, A]);
            let quartic = op(bb.clone(), &[Ad, Ad, A, A]);
            let h0 = &(&(&(&number + &q_plus) + &q_minus) + &sym) + &quartic;
            let n_op = sym.scale_left(&scalar(order, 2.0));
            let m_op = &number - &q_plus.compose(&q_minus);
            push(&mut checks, "[M,Q+] - 2Q+", band_dev(space, &(&m_op.commutator(&q_plus) - &q_plus.scale_left(&scalar(order, 2.0)))));
            push(&mut checks, "[M,Q-] + 2Q-", band_dev(space, &(&m_op.commutator(&q_minus) + &q_minus.scale_left(&scalar(order, 2.0)))));
            push(&mut checks, "{Q+,Q-} - N", band_dev(space, &(&q_plus.anticommutator(&q_minus) - &n_op)));
            push(&mut checks, "N^2", band_dev(space, &n_op.compose(&n_op)));
            let split = &(&(&n_op.scale_left(&scalar(order, 0.5)) + &m_op) + &q_plus) + &q_minus;
            push(&mut checks, "H0 - (N/2 + M + Q+ + Q-)", band_dev(space, &(&h0 - &split)));
            let factored = (&a0.adjoint().compose(&a0) + &quartic).scale_left(&(&G::one(order) + &bb));
            push(&mut checks, "H0 - (1 + b1‡b1)(A0‡A0 + b1‡b1 a†²a²)", band_dev(space, &(&h0 - &factored)));
            let comm = &one - &op(bb.clone(), &[A, Ad]) - op(bb, &[Ad, A]);
            push(&mut checks, "[A0,A0‡] - (1 - b1‡b1{a,a†})", band_dev(space, &(&a0.commutator(&a0.adjoint()) - &comm)));
            (a0, h0)
        }
        IsoParams::SpinHalf { gamma0, delta0 } => {
            if !gamma0.is_even() || !delta0.is_even() {
                return Err(Error::Parity("gamma0 and delta0 must be even".into()));
            }
            let gap = &(&gamma0.adjoint() * gamma0) - &(&delta0.adjoint() * delta0);
            if gap.max_abs() > 1e-12 {
                return Err(Error::Domain(format!("gamma0‡ gamma0 - delta0‡ delta0 = {gap} is not zero")));
            }
            let a0 = &(&a + &op(gamma0.clone(), &[B])) + &op(delta0.clone(), &[Bd]);
            let h0 = &(&(&(&(&op(scalar(order, 1.0), &[Ad, A]) + &SuperOperatorExpr::scalar(&gamma0.adjoint() * gamma0))
                + &op(gamma0.clone(), &[Ad, B]))
                + &op(gamma0.adjoint(), &[A, Bd]))
                + &op(delta0.clone(), &[Ad, Bd]))
                + &op(delta0.adjoint(), &[A, B]);
            push(&mut checks, "H0 - A0‡A0", band_dev(space, &(&h0 - &a0.adjoint().compose(&a0))));
            push(&mut checks, "[A0,A0‡] - 1", band_dev(space, &(&a0.commutator(&a0.adjoint()) - &one)));
            (a0, h0)
        }
    };
    push(&mut checks, "[H0,A0] + A0", band_dev(space, &(&h0.commutator(&a0) + &a0)));
    push(&mut checks, "H0 - H0‡", band_dev(space, &(&h0 - &h0.adjoint())));
    Ok((a0, h0, checks))
}

/// Builds `A0` and `H0` and evaluates the family's identities on `space`.
pub fn build_system(params: IsoParams, space: FockSpace) -> Result<IsospectralSystem> {
    if params.order() != space.order {
        return Err(Error::Config("parameter order differs from the space".into()));
    }
    let (a0, h0, checks) = base_system(&params, space)?;
    let work = match params.family() {
        IsoFamily::H2 => space,
        IsoFamily::SpinHalf => widened(space, SPIN_MARGIN),
    };
    let a = work.realize(&a0);
    let h = work.realize(&h0);
    Ok(IsospectralSystem { params, space, work, a0, h0, conjugator: None, eta: None, a, h, conj: None, checks })
}

/// Restriction of `m` to the rows and columns of levels `n <= top`.
fn upto(m: &OperatorMatrix, top: usize) -> GMatrix {
    let idx = m.space().indices_upto(top);
    m.matrix().select(&idx, &idx)
}

/// `A = C A0 C^-1`, `H = C H0 C^-1` for a supersqueeze `G` or an
/// orthosymplectic `U`, with `eta = (C^-1)‡ C^-1`.
pub fn conjugate_system(system: &IsospectralSystem, conj: UnitaryParams) -> Result<IsospectralSystem> {
    let space = system.space;
    let (work, c, ci) = match &conj {
        UnitaryParams::Supersqueeze { .. } => {
            let work = widened(system.work, CONJ_MARGIN);
            let mut ci = work.identity();
            for e in conj.exponents()? {
                ci = work.exp(&-&e)?.compose(&ci);
            }
            (work, unitary(&conj, work)?, ci)
        }
        UnitaryParams::Osp { x0, .. } => {
            let margin = crate::states::squeeze_margin(x0.body().norm().tanh());
            let work = widened(system.work, margin);
            let u = unitary(&conj, work)?;
            let ui = u.adjoint();
            (work, u, ui)
        }
        other => {
            return Err(Error::UnsupportedRegime(format!("conjugation by {} is not an isospectral map here", other.kind())));
        }
    };
    let top = space.band();
    let inv_gap = upto(&c.compose(&ci).sub(&work.identity()), top).max_abs();
    if !inv_gap.is_finite() || inv_gap > 1e-6 {
        return Err(Error::NotInvertible { element: format!("{} (C C^-1 off by {inv_gap:e})", conj.kind()) });
    }
    let a0 = work.realize(&system.a0);
    let h0 = work.realize(&system.h0);
    let a = c.compose(&a0).compose(&ci);
    let h = c.compose(&h0).compose(&ci);
    let eta = ci.adjoint().compose(&ci);
    let eta_inv = c.compose(&c.adjoint());
    let mut checks = system.checks.clone();
    let dev = |m: &OperatorMatrix| upto(m, top).max_abs();
    push(&mut checks, "[H,A] + A", dev(&h.commutator(&a).add(&a)));
    push(&mut checks, "H‡ - eta H eta^-1", dev(&h.adjoint().sub(&eta.compose(&h).compose(&eta_inv))));
    push(&mut checks, "eta - eta‡", dev(&eta.sub(&eta.adjoint())));
    Ok(IsospectralSystem {
        params: system.params.clone(),
        space,
        work,
        a0: system.a0.clone(),
        h0: system.h0.clone(),
        conjugator: Some(conj),
        eta: Some(eta),
        a,
        h,
        conj: Some((c, ci)),
        checks,
    })
}

/// The two ladders `|E_n; j>` and the deviations of their defining
/// properties.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// `(j, [|E_0; j>, |E_1; j>, ...])`, on the system's `space`.
    pub ladders: Vec<(Sector, Vec<SuperState>)>,
    pub checks: Vec<RelationCheck>,
}

impl Spectrum {
    pub fn check(&self, name: &str) -> Option<f64> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.deviation)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().map(|c| c.deviation).fold(0.0, f64::max)
    }

    pub fn state(&self, j: Sector, n: usize) -> Option<&SuperState> {
        self.ladders.iter().find(|(s, _)| *s == j).and_then(|(_, v)| v.get(n))
    }
}

/// `|0; j> - b1/sqrt2 |2; j>` scaled by `1 - b1‡b1/4`.
fn h2_ground(beta1: &G, j: Sector, work: FockSpace) -> SuperState {
    h2_level(beta1, j, 0, work)
}

/// `(1 - b1‡b1(2n+1)/4)[|n> + b1‡/2 sqrt(n(n-1))|n-2> - b1/2 sqrt((n+1)(n+2))|n+2>]`.
fn h2_level(beta1: &G, j: Sector, n: usize, work: FockSpace) -> SuperState {
    let order = beta1.order();
    let bb = &beta1.adjoint() * beta1;
    let nf = n as f64;
    let mut psi = work.basis(n, j);
    if n >= 2 {
        let c = beta1.adjoint().scale(0.5 * (nf * (nf - 1.0)).sqrt());
        psi = psi.add(&work.basis(n - 2, j).scale_left(&c));
    }
    if n + 2 <= work.cutoff {
        let c = beta1.scale(-0.5 * ((nf + 1.0) * (nf + 2.0)).sqrt());
        psi = psi.add(&work.basis(n + 2, j).scale_left(&c));
    }
    psi.scale_left(&(&G::one(order) - &bb.scale(0.25 * (2.0 * nf + 1.0))))
}

/// `(1 + r r‡)^-1/2 D(s)(|0;-> - r|0;+>)` with `r = sqrt(g0)^-1 sqrt(d0)`,
/// and the zero mode on the other root,
/// `(1 + r' r'‡)^-1/2 D(-s)(|0;+> + r'|0;->)` with `r' = sqrt(d0)^-1 sqrt(g0)`.
fn spin_ground(gamma0: &G, delta0: &G, j: Sector, work: FockSpace) -> Result<SuperState> {
    let order = gamma0.order();
    let (rg, rd) = (gamma0.sqrt()?, delta0.sqrt()?);
    let s = (gamma0 * delta0).sqrt()?;
    if (&s - &(&rg * &rd)).max_abs() > 1e-10 * s.max_abs().max(1.0) {
        return Err(Error::Domain("sqrt(gamma0 delta0) and sqrt(gamma0) sqrt(delta0) lie on different branches".into()));
    }
    let (root, r, shift, sign) = match j {
        Sector::Minus => (Sector::Minus, &rg.inverse()? * &rd, s, -1.0),
        Sector::Plus => (Sector::Plus, &rd.inverse()? * &rg, -&s, 1.0),
    };
    let other = if root == Sector::Minus { Sector::Plus } else { Sector::Minus };
    let spinor = work.basis(0, root).add(&work.basis(0, other).scale_left(&r.scale(sign)));
    let norm = (&G::one(order) + &(&r * &r.adjoint())).sqrt()?.inverse()?;
    Ok(apply_unitary(&UnitaryParams::Displacement { z: shift }, &spinor)?.scale_left(&norm))
}

/// `(1 + b1‡b1 n(n+1)/4) (A0‡)^n / sqrt(n!) |E_0; j>`.
fn raised(a0d: &SuperOperatorExpr, ground: &SuperState, n: usize, factor: &G) -> SuperState {
    let mut psi = ground.clone();
    for k in 1..=n {
        psi = psi.apply(a0d).scale_left(&scalar(factor.order(), 1.0 / (k as f64).sqrt()));
    }
    psi.scale_left(factor)
}

/// `sum_n |psi_n><psi_n|` on the psi space, in the right-coefficient picture.
fn projector(states: &[&SuperState]) -> OperatorMatrix {
    let space = states[0].space();
    let order = space.order;
    let d = space.dim();
    let mut m = GMatrix::zeros(order, d, d);
    let cols: Vec<Vec<G>> = states.iter().map(|s| (0..d).map(|i| s.right().entry(i)).collect()).collect();
    for i in 0..d {
        for k in 0..d {
            let mut acc = G::zero(order);
            for v in &cols {
                if !v[i].is_zero() && !v[k].is_zero() {
                    acc += &(&v[i] * &v[k].adjoint());
                }
            }
            if !acc.is_zero() {
                m.set_entry(i, k, &acc);
            }
        }
    }
    OperatorMatrix::from_matrix(space, m)
}

/// `|E_n; j>` for `n <= n_max` in both ladders, with the eigen, ladder,
/// orthonormality and completeness checks (and for `h(2)` the vacuum and
/// basis-expansion identities). For a conjugated system the states are
/// `C|E_n; j>`, orthonormal in the `eta` pairing.
pub fn eigenstates(system: &IsospectralSystem, n_max: usize) -> Result<Spectrum> {
    let space = system.space;
    if n_max + 2 > space.band() {
        return Err(Error::Config(format!(
            "n_max = {n_max} needs cutoff - guard >= {} (have {})",
            n_max + 2,
            space.band()
        )));
    }
    let order = space.order;
    let work = system.work;
    let a0d = system.a0.adjoint();
    let one = G::one(order);
    let mut checks = Vec::new();
    let mut ladders = Vec::new();
    let mut base: Vec<(Sector, Vec<SuperState>)> = Vec::new();
    let (mut ladder_up, mut ladder_down, mut standard, mut vacuum, mut expansion) = (0f64, 0f64, 0f64, 0f64, 0f64);

    for j in [Sector::Minus, Sector::Plus] {
        let states: Vec<SuperState> = match &system.params {
            IsoParams::H2 { beta1 } => {
                let bb = &beta1.adjoint() * beta1;
                let levels: Vec<SuperState> = (0..=n_max + 1).map(|n| h2_level(beta1, j, n, work)).collect();
                let ground = h2_ground(beta1, j, work);
                for n in 0..=n_max {
                    let nf = n as f64;
                    let up = &(&one - &bb.scale(0.5 * (nf + 1.0))) * &scalar(order, (nf + 1.0).sqrt());
                    ladder_up = ladder_up.max(levels[n].apply(&a0d).sub(&levels[n + 1].scale_left(&up)).max_abs_in_band());
                    let lowered = levels[n].apply(&system.a0);
                    let expected = if n == 0 {
                        work.zero_state()
                    } else {
                        levels[n - 1].scale_left(&(&(&one - &bb.scale(0.5 * nf)) * &scalar(order, nf.sqrt())))
                    };
                    ladder_down = ladder_down.max(lowered.sub(&expected).max_abs_in_band());
                    let factor = &one + &bb.scale(0.25 * nf * (nf + 1.0));
                    standard = standard.max(raised(&a0d, &ground, n, &factor).sub(&levels[n]).max_abs_in_band());
                }
                let half = a0d.compose(&a0d).scale_right(beta1).scale_left(&scalar(order, 0.5));
                let back = ground.exp_apply(&half)?.scale_left(&(&one - &bb.scale(0.25)));
                vacuum = vacuum.max(back.sub(&work.basis(0, j)).max_abs_in_band());
                // |n;j> = (1 - b1‡b1(2n+1)/4)[|E_n> - j sqrt((n+1)(n+2))|E_n+2> b1/2 + j sqrt(n(n-1))|E_n-2> b1‡/2]
                let sign = if j == Sector::Plus { 1.0 } else { -1.0 };
                for n in 0..n_max.saturating_sub(1) {
                    let nf = n as f64;
                    let mut rhs = levels[n].clone();
                    let far = h2_level(beta1, j, n + 2, work);
                    rhs = rhs.sub(&far.scale_right(&beta1.scale(0.5 * sign * ((nf + 1.0) * (nf + 2.0)).sqrt())));
                    if n >= 2 {
                        rhs = rhs.add(&levels[n - 2].scale_right(&beta1.adjoint().scale(0.5 * sign * (nf * (nf - 1.0)).sqrt())));
                    }
                    let rhs = rhs.scale_left(&(&one - &bb.scale(0.25 * (2.0 * nf + 1.0))));
                    expansion = expansion.max(rhs.sub(&work.basis(n, j)).max_abs_in_band());
                }
                levels.into_iter().take(n_max + 1).collect()
            }
            IsoParams::SpinHalf { gamma0, delta0 } => {
                let ground = spin_ground(gamma0, delta0, j, work)?;
                let levels: Vec<SuperState> = (0..=n_max + 1).map(|n| raised(&a0d, &ground, n, &one)).collect();
                for n in 0..=n_max {
                    let nf = n as f64;
                    let lowered = levels[n].apply(&system.a0);
                    let expected = if n == 0 { work.zero_state() } else { levels[n - 1].scale_left(&scalar(order, nf.sqrt())) };
                    ladder_down = ladder_down.max(lowered.sub(&expected).max_abs_in_band());
                    let up = levels[n].apply(&a0d).sub(&levels[n + 1].scale_left(&scalar(order, (nf + 1.0).sqrt())));
                    ladder_up = ladder_up.max(up.max_abs_in_band());
                }
                levels.into_iter().take(n_max + 1).collect()
            }
        };
        base.push((j, states));
    }

    // Eigen equation and eigenvalues, on the (possibly conjugated) states.
    let (mut eigen, mut values) = (0f64, 0f64);
    let mut mapped: Vec<(Sector, Vec<SuperState>)> = Vec::new();
    for (j, states) in &base {
        let mut out = Vec::new();
        for (n, psi) in states.iter().enumerate() {
            let phi = system.transform(&psi.with_cutoff(work.cutoff, work.guard));
            let hphi = system.h.apply(&phi);
            let shifted = hphi.sub(&phi.scale_left(&scalar(order, n as f64)));
            eigen = eigen.max(narrowed(&shifted, space).max_abs_in_band());
            let num = pairing(system, &phi, &hphi);
            let den = pairing(system, &phi, &phi);
            values = values.max((num.body() / den.body() - n as f64).norm());
            out.push(phi);
        }
        mapped.push((*j, out));
    }

    // Orthonormality in the pairing of the system.
    let mut ortho = 0f64;
    let all: Vec<&SuperState> = mapped.iter().flat_map(|(_, v)| v.iter()).collect();
    for (p, x) in all.iter().enumerate() {
        for (q, y) in all.iter().enumerate() {
            let target = if p == q { 1.0 } else { 0.0 };
            ortho = ortho.max((&pairing(system, x, y) - &scalar(order, target)).max_abs());
        }
    }

    // Partial completeness of the unconjugated ladders on the levels they span.
    let top = match system.family() {
        IsoFamily::H2 => n_max.saturating_sub(2),
        IsoFamily::SpinHalf => n_max.saturating_sub(10),
    };
    let flat: Vec<&SuperState> = base.iter().flat_map(|(_, v)| v.iter()).collect();
    let p = projector(&flat);
    let completeness = upto(&p.sub(&work.identity()), top).max_abs();

    push(&mut checks, "eigen residual", eigen);
    push(&mut checks, "eigenvalue bodies", values);
    push(&mut checks, "orthonormality", ortho);
    push(&mut checks, "completeness", completeness);
    push(&mut checks, "A0‡ ladder", ladder_up);
    push(&mut checks, "A0 ladder", ladder_down);
    if system.family() == IsoFamily::H2 {
        push(&mut checks, "standard form", standard);
        push(&mut checks, "vacuum identity", vacuum);
        push(&mut checks, "basis expansion", expansion);
    }
    for (j, states) in mapped {
        ladders.push((j, states.iter().map(|s| narrowed(s, space)).collect()));
    }
    Ok(Spectrum { ladders, checks })
}

/// `<x|y>` in the graded pairing, weighted by `eta` for a conjugated system.
fn pairing(system: &IsospectralSystem, x: &SuperState, y: &SuperState) -> G {
    match &system.eta {
        Some(eta) => x.graded_inner_product(&eta.apply(y)),
        None => x.graded_inner_product(y),
    }
}

/// A coherent state with its eigen residual under `A` (or `A0`).
#[derive(Debug, Clone)]
pub struct CoherentState {
    pub state: SuperState,
    pub residual: f64,
    /// Deviation from the second construction, up to a constant, where the
    /// family has one.
    pub second_route: Option<f64>,
}

/// `b = a k` for the constant `k` read off the largest coefficient of `a`.
pub(crate) fn proportionality_gap(a: &SuperState, b: &SuperState) -> Result<f64> {
    let (n, sector, _) = a
        .coefficients()
        .into_iter()
        .max_by(|x, y| x.2.body().norm().total_cmp(&y.2.body().norm()))
        .ok_or_else(|| Error::Config("empty state".into()))?;
    let k = &a.get(n, sector).inverse()? * &b.get(n, sector);
    let k = if sector == Sector::Plus { k.star() } else { k };
    Ok(a.scale_right(&k).sub(b).max_abs_in_band())
}

/// Coherent state on ladder `j` at eigenvalue `z`.
///
/// `h(2)`: `exp[-b1 a†²/2 - z1 b1 a†³/3] D(z0) D(z1) (1 - b1‡b1/4) exp((A0‡)² b1/2)|E_0; j> C_hat`.
/// spin-1/2: `exp(z0 A0‡ - z0‡ A0)|E_0; j>`, compared on the minus ladder
/// with the spin-1/2 eigenstate at `z0` moved by `exp[z0(g0‡b† + d0‡b) - z0‡(g0 b + d0 b†)]`.
pub fn coherent_states(system: &IsospectralSystem, z: &G, j: Sector) -> Result<CoherentState> {
    let space = system.space;
    let order = space.order;
    let one = G::one(order);
    let (state, second_route) = match &system.params {
        IsoParams::H2 { beta1 } => {
            let red = SqueezeReduction::new(beta1, z)?;
            let (_, _, c_hat) = red.normalization()?;
            // On the plus ladder the odd parameters meet the starred basis.
            let c_hat = if j == Sector::Plus { c_hat.star() } else { c_hat };
            let bb = &beta1.adjoint() * beta1;
            let work = widened(system.work, SPIN_MARGIN);
            let a0d = system.a0.adjoint();
            let half = a0d.compose(&a0d).scale_right(beta1).scale_left(&scalar(order, 0.5));
            let root = h2_ground(beta1, j, work).exp_apply(&half)?.scale_left(&(&one - &bb.scale(0.25)));
            let zh = &red.z_hat;
            let mut psi = apply_unitary(&UnitaryParams::Displacement { z: zh.odd() }, &root)?;
            psi = apply_unitary(&UnitaryParams::Displacement { z: zh.even() }, &psi)?;
            let pre = &op(beta1.scale(-0.5), &[Letter::Ad, Letter::Ad])
                - &op((&zh.odd() * beta1).scale(1.0 / 3.0), &[Letter::Ad, Letter::Ad, Letter::Ad]);
            psi = psi.exp_apply(&pre)?.scale_right(&c_hat);
            (psi.with_cutoff(system.work.cutoff, system.work.guard), None)
        }
        IsoParams::SpinHalf { gamma0, delta0 } => {
            if !z.is_even() {
                return Err(Error::Parity("spin-1/2 coherent states take an even z0".into()));
            }
            let work = system.work;
            let ground = spin_ground(gamma0, delta0, j, work)?;
            let a0 = &system.a0;
            let gen = &a0.adjoint().scale_left(z) - &a0.scale_left(&z.adjoint());
            let psi = exp_apply(&gen, &ground)?;
            let second = if j == Sector::Minus {
                let p = crate::states::FamilyParams::new(order)
                    .with("gamma0", gamma0.clone())
                    .with("delta0", delta0.clone())
                    .with("z0", z.clone());
                let fam = crate::states::construct_family("spin_half_minus", &p, work)?;
                let moved = apply_unitary(
                    &UnitaryParams::Spin { z0: z.clone(), gamma0: gamma0.clone(), delta0: delta0.clone() },
                    &fam.state,
                )?;
                Some(proportionality_gap(&narrowed(&moved, space), &narrowed(&psi, space))?)
            } else {
                None
            };
            (psi, second)
        }
    };
    let phi = system.transform(&state.with_cutoff(system.work.cutoff, system.work.guard));
    let shifted = system.a.apply(&phi).sub(&phi.scale_left(z));
    let residual = narrowed(&shifted, space).max_abs_in_band();
    Ok(CoherentState { state: narrowed(&phi, space), residual, second_route })
}
