//! The named closed-form families, each assembled from its printed form and
//! checked against its defining operator.

use std::collections::BTreeMap;

use super::series::{series_apply, tanh_series, AdSeries, SeriesKind};
use super::{apply_unitary, exp_apply, narrowed, widened, UnitaryParams, DISPLACEMENT_MARGIN};
use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::saes::{supercoherent_constants, GeneralReduction, ReducedCoefficients, SqueezeReduction};
use crate::superfock::{residual, FockSpace, Letter, Sector, SuperOperatorExpr, SuperState};

type G = GrassmannElement;

/// Named Grassmann parameters; missing names read as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyParams {
    order: usize,
    values: BTreeMap<String, G>,
}

impl FamilyParams {
    pub fn new(order: usize) -> Self {
        Self { order, values: BTreeMap::new() }
    }

    pub fn with(mut self, name: &str, value: G) -> Self {
        self.insert(name, value);
        self
    }

    pub fn insert(&mut self, name: &str, value: G) {
        self.values.insert(name.to_string(), value);
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, name: &str) -> G {
        self.values.get(name).cloned().unwrap_or_else(|| G::zero(self.order))
    }

    pub fn get_or(&self, name: &str, default: G) -> G {
        self.values.get(name).cloned().unwrap_or(default)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }

    fn even(&self, name: &str) -> Result<G> {
        let x = self.get(name);
        if !x.is_even() {
            return Err(Error::Parity(format!("{name} must be even")));
        }
        Ok(x)
    }

    fn odd(&self, name: &str) -> Result<G> {
        let x = self.get(name);
        if !x.is_odd() {
            return Err(Error::Parity(format!("{name} must be odd")));
        }
        Ok(x)
    }
}

/// Constants produced while assembling a family. Only the ones the family
/// uses are set.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NormalizationRecord {
    pub gamma: Option<G>,
    pub omega: Option<G>,
    pub c_hat: Option<G>,
    pub n_sc: Option<G>,
    pub b_script: Option<G>,
    pub f_script: Option<G>,
    pub n_pm: Option<G>,
    /// Coefficients of `T_h` as a series in `a†`.
    pub t_h: Option<Vec<G>>,
}

impl NormalizationRecord {
    /// `(name, value)` for every scalar constant that is set.
    pub fn entries(&self) -> Vec<(&'static str, &G)> {
        [
            ("Gamma", &self.gamma),
            ("Omega", &self.omega),
            ("C_hat", &self.c_hat),
            ("N", &self.n_sc),
            ("B", &self.b_script),
            ("F", &self.f_script),
            ("N_pm", &self.n_pm),
        ]
        .into_iter()
        .filter_map(|(n, v)| v.as_ref().map(|v| (n, v)))
        .collect()
    }
}

/// A constructed state with the operator it diagonalizes.
#[derive(Debug, Clone)]
pub struct FamilyState {
    pub name: String,
    pub state: SuperState,
    pub operator: SuperOperatorExpr,
    pub eigenvalue: G,
    pub normalization: NormalizationRecord,
    /// Largest coefficient of `(operator - eigenvalue) state` below the guard.
    pub residual: f64,
}

impl FamilyState {
    fn new(name: &str, state: SuperState, operator: SuperOperatorExpr, eigenvalue: G, normalization: NormalizationRecord) -> Self {
        let residual = residual(&operator, &eigenvalue, &state);
        Self { name: name.to_string(), state, operator, eigenvalue, normalization, residual }
    }

    /// `<psi|psi>` in the graded pairing, the one the normalization
    /// constants are built for.
    pub fn norm_squared(&self) -> G {
        self.state.graded_inner_product(&self.state)
    }
}

const FAMILIES: &[&str] = &[
    "gen_coherent",
    "gen_supersqueezed",
    "b_saes",
    "fermion_squeezed_plus",
    "fermion_squeezed_minus",
    "az_supercoherent",
    "gen_super_cohe",
    "susy_standard",
    "odd_minus",
    "odd_plus",
    "spin_half_minus",
    "spin_half_plus",
    "spin_half_z1_minus",
    "spin_half_z1_plus",
    "general_minus",
    "general_plus",
    "general_z0_minus",
    "general_z0_plus",
];

/// Every family name accepted by [`construct_family`]. The bare names
/// `fermion_squeezed`, `spin_half`, `spin_half_z1` and `general` select the
/// first variant.
pub fn family_names() -> &'static [&'static str] {
    FAMILIES
}


fn op_mixed(beta: &G, gamma: &G, delta: &G) -> SuperOperatorExpr {
    ReducedCoefficients::new(beta.clone(), gamma.clone(), delta.clone(), G::zero(beta.order())).expr()
}

fn op_a(order: usize) -> SuperOperatorExpr {
    SuperOperatorExpr::a(order)
}

/// `D(z0) D(z1) psi` on the space of `psi`.
fn displace_split(z: &G, psi: &SuperState) -> Result<SuperState> {
    let s = apply_unitary(&UnitaryParams::Displacement { z: z.odd() }, psi)?;
    apply_unitary(&UnitaryParams::Displacement { z: z.even() }, &s)
}

/// `e^(c a†) |0; sector>`.
fn coherent_root(c: &G, sector: Sector, space: FockSpace) -> SuperState {
    AdSeries::exp_of(c, space.cutoff).apply(&space.basis(0, sector))
}

fn other(sector: Sector) -> Sector {
    match sector {
        Sector::Minus => Sector::Plus,
        Sector::Plus => Sector::Minus,
    }
}

fn sector_of(name: &str) -> Sector {
    if name.ends_with("_plus") {
        Sector::Plus
    } else {
        Sector::Minus
    }
}

/// Levels needed above the band for a squeezed tail `t^(n/2)` to drop below
/// double precision.
pub(crate) fn squeeze_margin(t: f64) -> usize {
    let t = t.clamp(1e-3, 0.95);
    ((2.0 * (1e-17f64).ln() / t.ln()).ceil() as usize + 24).max(DISPLACEMENT_MARGIN)
}

/// `sqrt(g0 d0)`, checked against `sqrt(g0) sqrt(d0)`: the printed forms
/// need the two roots to agree.
fn spin_roots(gamma0: &G, delta0: &G) -> Result<(G, G, G)> {
    let (rg, rd) = (gamma0.sqrt()?, delta0.sqrt()?);
    let s = (gamma0 * delta0).sqrt()?;
    let branch = (&s - &(&rg * &rd)).max_abs();
    if branch > 1e-10 * s.max_abs().max(1.0) {
        return Err(Error::Domain(format!(
            "sqrt(gamma0 delta0) and sqrt(gamma0) sqrt(delta0) lie on different branches (gap {branch:e})"
        )));
    }
    Ok((s, rg, rd))
}

/// Builds the named family on `space`.
pub fn construct_family(name: &str, params: &FamilyParams, space: FockSpace) -> Result<FamilyState> {
    let canonical = match name {
        "fermion_squeezed" => "fermion_squeezed_plus",
        "spin_half" => "spin_half_minus",
        "spin_half_z1" => "spin_half_z1_minus",
        "general" => "general_minus",
        "general_z0" => "general_z0_minus",
        other => other,
    };
    if params.order() != space.order {
        return Err(Error::Config("parameter order differs from the space".into()));
    }
    match canonical {
        "gen_coherent" => gen_coherent(params, space),
        "gen_supersqueezed" => gen_supersqueezed(params, space),
        "b_saes" => b_saes(params, space),
        "fermion_squeezed_plus" => fermion_squeezed(params, space, 1.0),
        "fermion_squeezed_minus" => fermion_squeezed(params, space, -1.0),
        "az_supercoherent" => az_supercoherent(params, space),
        "gen_super_cohe" => gen_super_cohe(params, space),
        "susy_standard" => susy_standard(params, space),
        "odd_minus" | "odd_plus" => odd_family(params, space, sector_of(canonical)),
        "spin_half_minus" | "spin_half_plus" => spin_half(params, space, sector_of(canonical)),
        "spin_half_z1_minus" | "spin_half_z1_plus" => spin_half_z1(params, space, sector_of(canonical)),
        "general_minus" | "general_plus" => general(params, space, sector_of(canonical)),
        "general_z0_minus" | "general_z0_plus" => general_z0(params, space, sector_of(canonical)),
        _ => Err(Error::Config(format!("unknown family {name}; known: {}", FAMILIES.join(", ")))),
    }
}

/// `D(z0) D(z1)|0;->`, eigenstate of `A_- a` at `A_- z`.
fn gen_coherent(p: &FamilyParams, space: FockSpace) -> Result<FamilyState> {
    let z = p.get("z");
    let a_minus = p.get_or("a_minus", G::one(space.order));
    let work = widened(space, DISPLACEMENT_MARGIN);
    let psi = narrowed(&displace_split(&z, &work.vacuum())?, space);
    let op = SuperOperatorExpr::term(a_minus.clone(), &[Letter::A]);
    Ok(FamilyState::new("gen_coherent", psi, op, &a_minus * &z, NormalizationRecord::default()))
}

/// `S(X0) exp[-b1 a†^2/2 - z1 b1 a†^3/3] D(z0) D(z1)|0> C_hat` with the
/// reduced `b1, z` of the squeeze conjugation.
fn gen_supersqueezed(p: &FamilyParams, space: FockSpace) -> Result<FamilyState> {
    let (beta, z) = (p.get("beta"), p.get("z"));
    let red = SqueezeReduction::new(&beta, &z)?;
    let (gamma, omega, c_hat) = red.normalization()?;
    let margin = squeeze_margin(beta.even().body().norm());
    let work = widened(space, margin);
    let zh = &red.z_hat;
    let b1 = &red.beta1_hat;
    let mut psi = displace_split(zh, &work.vacuum())?;
    let pre = AdSeries::monomial(&b1.scale(-0.5), 2, work.cutoff)
        .sub(&AdSeries::monomial(&(&zh.odd() * b1).scale(1.0 / 3.0), 3, work.cutoff));
    psi = pre.exp()?.apply(&psi);
    psi = apply_unitary(&UnitaryParams::Squeeze { x0: red.x0.clone() }, &psi)?;
    let psi = narrowed(&psi, space).scale_right(&c_hat);
    let op = op_mixed(&beta, &G::zero(space.order), &G::zero(space.order));
    let norm = NormalizationRecord { gamma: Some(gamma), omega: Some(omega), c_hat: Some(c_hat), ..Default::default() };
    Ok(FamilyState::new("gen_supersqueezed", psi, op, z, norm))
}

/// `T(z1) T(z0)|->`, eigenstate of `B b` at `B z` when `z z* = 0`.
fn b_saes(p: &FamilyParams, space: FockSpace) -> Result<FamilyState> {
    let z = p.get("z");
    let b = p.get_or("b", G::one(space.order));
    let zz = &z * &z.star();
    if let Some(level) = zz.lowest_level(1e-12) {
        return Err(Error::violated("z z* = 0", level));
    }
    let mut psi = apply_unitary(&UnitaryParams::Fermionic { z: z.even() }, &space.vacuum())?;
    psi = apply_unitary(&UnitaryParams::Fermionic { z: z.odd() }, &psi)?;
    let op = SuperOperatorExpr::term(b.clone(), &[Letter::B]);
    Ok(FamilyState::new("b_saes", psi, op, &b * &z, NormalizationRecord::default()))
}

/// `exp(b† z1 - z1‡ b) exp[±sqrt(d0)(b† + z1‡)]|-> N±`, eigenstates of
/// `b + d0 b†` at `±sqrt(d0) + z1`.
fn fermion_squeezed(p: &FamilyParams, space: FockSpace, sign: f64) -> Result<FamilyState> {
    let order = space.order;
    let d0 = p.even("delta0")?;
    let z1 = p.odd("z1")?;
    let one = G::one(order);
    let root = if d0.is_zero() { G::zero(order) } else { d0.sqrt()? };
    let rd = root.adjoint();
    let f = (&one + &(&root * &rd)).sqrt()?;
    let fi = f.inverse()?;
    let z1d = z1.adjoint();
    let inner = &(&(&root * &z1d) + &(&rd * &z1)) - &(&(&root * &rd) * &(&z1d * &z1)).scale(sign);
    let n = &fi * &(&one - &(&(&fi * &inner) * &fi).scale(0.5 * sign));
    let s = root.scale(sign);
    let squeeze = &SuperOperatorExpr::term(s.clone(), &[Letter::Bd]) + &SuperOperatorExpr::scalar(&s * &z1d);
    let mut psi = exp_apply(&squeeze, &space.vacuum())?;
    psi = apply_unitary(&UnitaryParams::Fermionic { z: z1.clone() }, &psi)?.scale_right(&n);
    let op = &SuperOperatorExpr::b(order) + &SuperOperatorExpr::term(d0, &[Letter::Bd]);
    let name = if sign > 0.0 { "fermion_squeezed_plus" } else { "fermion_squeezed_minus" };
    let norm = NormalizationRecord { f_script: Some(f), n_pm: Some(n), ..Default::default() };
    Ok(FamilyState::new(name, psi, op, &s + &z1, norm))
}

/// `sqrt(1 + g0‡ g0)^-1 D(z0)(|0;+> - g0 a†|0;->)`.
fn az_supercoherent(p: &FamilyParams, space: FockSpace) -> Result<FamilyState> {
    let order = space.order;
    let z0 = p.even("z0")?;
    let g0 = p.even("gamma0")?;
    let b = (&G::one(order) + &(&g0.adjoint() * &g0)).sqrt()?;
    let work = widened(space, DISPLACEMENT_MARGIN);
    let lifted = work.basis(1, Sector::Minus).scale_left(&g0);
    let root = work.basis(0, Sector::Plus).sub(&lifted);
    let psi = apply_unitary(&UnitaryParams::Displacement { z: z0.clone() }, &root)?;
    let psi = narrowed(&psi, space).scale_left(&b.inverse()?);
    let op = op_mixed(&G::zero(order), &g0, &G::zero(order));
    let norm = NormalizationRecord { b_script: Some(b), ..Default::default() };
    Ok(FamilyState::new("az_supercoherent", psi, op, z0, norm))
}

/// The orthonormalized second supercoherent family of `a + gamma b`.
fn gen_super_cohe(p: &FamilyParams, space: FockSpace) -> Result<FamilyState> {
    let order = space.order;
    let (z, gamma) = (p.get("z"), p.get("gamma"));
    let (z0, z1) = (z.even(), z.odd());
    let (g0, g1) = (gamma.even(), gamma.odd());
    let (n, b) = supercoherent_constants(&gamma, &z)?;
    let one = G::one(order);
    let work = widened(space, DISPLACEMENT_MARGIN);
    let ww = &z1.adjoint() * &z1;
    let e = (&z1 * &z0.adjoint()).exp();
    let ge = &g0 * &e;
    let minus = work.vacuum();
    // (1 - w/2) D(-z1)(a† + z0‡) g0 e^(z1 z0‡)|0;->
    let seed = minus.scale_left(&ge);
    let raised = SuperOperatorExpr::ad(order) + SuperOperatorExpr::scalar(z0.adjoint());
    let t1 = apply_unitary(&UnitaryParams::Displacement { z: -&z1 }, &seed.apply(&raised))?
        .scale_left(&(&one - &ww.scale(0.5)));
    // (1 + w) a† g1 |0;->
    let t2 = minus.scale_left(&g1).apply(&SuperOperatorExpr::ad(order)).scale_left(&(&one + &ww));
    // (1 - w) z‡ g0 e^(z1 z0‡) |0;->
    let t3 = minus.scale_left(&(&(&one - &ww) * &(&z.adjoint() * &ge)));
    let bracket = t1.add(&t2).sub(&t3);
    let inner = work.basis(0, Sector::Plus).sub(&bracket);
    let psi = narrowed(&displace_split(&z, &inner)?, space).scale_right(&n);
    let op = op_mixed(&G::zero(order), &gamma, &G::zero(order));
    let norm = NormalizationRecord { n_sc: Some(n), b_script: Some(b), ..Default::default() };
    Ok(FamilyState::new("gen_super_cohe", psi, op, z, norm))
}

/// `D(z0) T(theta1)|0;->`, eigenstate of `a` at `z0`.
fn susy_standard(p: &FamilyParams, space: FockSpace) -> Result<FamilyState> {
    let z0 = p.even("z0")?;
    let theta = p.odd("theta1")?;
    let work = widened(space, DISPLACEMENT_MARGIN);
    let psi = apply_unitary(&UnitaryParams::Fermionic { z: theta }, &work.vacuum())?;
    let psi = apply_unitary(&UnitaryParams::Displacement { z: z0.clone() }, &psi)?;
    Ok(FamilyState::new("susy_standard", narrowed(&psi, space), op_a(space.order), z0, NormalizationRecord::default()))
}

/// Odd `gamma1, delta1`: `exp[-g1 d1 a†^2/2] e^(-d1 a† b†) e^(z a†)|0;->`
/// and the mirror `exp[-d1 g1 a†^2/2] e^(-g1 a† b) e^(z a†)|0;+>`.
fn odd_family(p: &FamilyParams, space: FockSpace, sector: Sector) -> Result<FamilyState> {
    let order = space.order;
    let g1 = p.odd("gamma1")?;
    let d1 = p.odd("delta1")?;
    let z = p.get("z");
    let (first, second, pair) = match sector {
        Sector::Minus => (&g1, &d1, SuperOperatorExpr::term(-&d1, &[Letter::Ad, Letter::Bd])),
        Sector::Plus => (&d1, &g1, SuperOperatorExpr::term(-&g1, &[Letter::Ad, Letter::B])),
    };
    let squeeze = SuperOperatorExpr::term((first * second).scale(-0.5), &[Letter::Ad, Letter::Ad]);
    let mut psi = coherent_root(&z, sector, space);
    psi = psi.exp_apply(&pair)?.exp_apply(&squeeze)?;
    let name = if sector == Sector::Minus { "odd_minus" } else { "odd_plus" };
    Ok(FamilyState::new(name, psi, op_mixed(&G::zero(order), &g1, &d1), z, NormalizationRecord::default()))
}

/// `(s, r)` with `s = sqrt(g0 d0)` and `r = sqrt(g0)^-1 sqrt(d0)` for the
/// minus root, `sqrt(d0)^-1 sqrt(g0)` for the plus root.
fn spin_params(p: &FamilyParams, sector: Sector) -> Result<(G, G, G, G, G)> {
    let g0 = p.even("gamma0")?;
    let d0 = p.even("delta0")?;
    let (s, rg, rd) = spin_roots(&g0, &d0)?;
    let r = match sector {
        Sector::Minus => &rg.inverse()? * &rd,
        Sector::Plus => &rd.inverse()? * &rg,
    };
    let zero = G::zero(s.order());
    Ok((g0, d0, s, r, zero))
}

/// `b†` on the minus root, `b` on the plus root.
fn flip_letter(sector: Sector) -> Letter {
    match sector {
        Sector::Minus => Letter::Bd,
        Sector::Plus => Letter::B,
    }
}

/// `exp(s a† - r b†) e^(z0 a†)|0;->` and the mirror with `b`.
fn spin_half(p: &FamilyParams, space: FockSpace, sector: Sector) -> Result<FamilyState> {
    let (g0, d0, s, r, zero) = spin_params(p, sector)?;
    let z0 = p.even("z0")?;
    let gen = &SuperOperatorExpr::term(s, &[Letter::Ad]) - &SuperOperatorExpr::term(r, &[flip_letter(sector)]);
    let psi = coherent_root(&z0, sector, space).exp_apply(&gen)?;
    let name = if sector == Sector::Minus { "spin_half_minus" } else { "spin_half_plus" };
    Ok(FamilyState::new(name, psi, op_mixed(&zero, &g0, &d0), z0, NormalizationRecord::default()))
}

/// The two printed assemblies of the `z1 = 0` spin-1/2 states: the `cosh`
/// form on the root sector and the `sinh` form on the other one.
pub fn spin_half_assemblies(gamma0: &G, delta0: &G, z0: &G, sector: Sector, space: FockSpace) -> Result<(SuperState, SuperState)> {
    let p = FamilyParams::new(space.order).with("gamma0", gamma0.clone()).with("delta0", delta0.clone());
    let (_, _, s, r, _) = spin_params(&p, sector)?;
    let (_, _, _, r_other, _) = spin_params(&p, other(sector))?;
    let sa = SuperOperatorExpr::term(s, &[Letter::Ad]);
    let here = &sa - &SuperOperatorExpr::term(r.clone(), &[flip_letter(sector)]);
    let there = &sa - &SuperOperatorExpr::term(r_other, &[flip_letter(other(sector))]);
    let cosh = series_apply(&here, &coherent_root(z0, sector, space), SeriesKind::Cosh)?;
    let sinh = series_apply(&there, &coherent_root(z0, other(sector), space), SeriesKind::Sinh)?.scale_left(&-&r);
    Ok((cosh, sinh))
}

/// `exp[-z1(a† - s^-1 T_h)] cosh{s a† - r[1 + z1(2a† - s^-1 T_h)] b†} e^(z a†)|0;->`
/// and the mirror with `b` on `|0;+>`.
fn spin_half_z1(p: &FamilyParams, space: FockSpace, sector: Sector) -> Result<FamilyState> {
    let (g0, d0, s, r, zero) = spin_params(p, sector)?;
    let z = p.get("z");
    let z1 = z.odd();
    let deg = space.cutoff;
    let order = space.order;
    let th = tanh_series(&s, deg)?;
    let si = s.inverse()?;
    let ad = AdSeries::monomial(&G::one(order), 1, deg);
    // a† - s^-1 T_h
    let shifted = ad.sub(&th.scale_left(&si));
    let outer = shifted.scale_left(&-&z1).exp()?;
    // r [1 + z1 (2a† - s^-1 T_h)]
    let inner = ad.scale_left(&G::scalar(order, 2.0)).sub(&th.scale_left(&si)).scale_left(&z1);
    let coeff = AdSeries::constant(&G::one(order), deg).add(&inner).scale_left(&r);
    let gen = &SuperOperatorExpr::term(s, &[Letter::Ad])
        - &coeff.to_expr().compose(&SuperOperatorExpr::letter(order, flip_letter(sector)));
    let psi = series_apply(&gen, &coherent_root(&z, sector, space), SeriesKind::Cosh)?;
    let psi = outer.apply(&psi);
    let name = if sector == Sector::Minus { "spin_half_z1_minus" } else { "spin_half_z1_plus" };
    let norm = NormalizationRecord { t_h: Some(th.coeffs().to_vec()), ..Default::default() };
    Ok(FamilyState::new(name, psi, op_mixed(&zero, &g0, &d0), z, norm))
}

struct GeneralParts {
    beta: G,
    gamma: G,
    delta: G,
    g0: G,
    d0: G,
    reduction: GeneralReduction,
    /// `sqrt(g0 d0 - b1)` and `sqrt(g0 d0 + b1)`.
    root_minus: G,
    root_plus: G,
}

fn general_parts(p: &FamilyParams) -> Result<GeneralParts> {
    let (beta, gamma, delta) = (p.get("beta"), p.get("gamma"), p.get("delta"));
    let reduction = GeneralReduction::new(&beta, &gamma, &delta);
    let (g0, d0) = (gamma.even(), delta.even());
    let gd = &g0 * &d0;
    let b1 = &reduction.beta1_hat_general;
    let root_minus = (&gd - b1).sqrt()?;
    let root_plus = (&gd + b1).sqrt()?;
    Ok(GeneralParts { beta, gamma, delta, g0, d0, reduction, root_minus, root_plus })
}

/// `G(b0, g1, d1) phi` with
/// `phi = cosh(w a†)(1 + T_h w^-1 z1) e^(-z1 a†) e^(z a†)|0;-> - g0^-1 sinh(w a†) w' e^(-z1 a†) e^(z a†)|0;+>`
/// for `w = sqrt(g0 d0 - b1)`, `w' = sqrt(g0 d0 + b1)`, and the mirror.
fn general(p: &FamilyParams, space: FockSpace, sector: Sector) -> Result<FamilyState> {
    let parts = general_parts(p)?;
    let z = p.get("z");
    let z1 = z.odd();
    let deg = space.cutoff;
    let order = space.order;
    let w = &parts.root_minus;
    let th = tanh_series(w, deg)?;
    let lead = AdSeries::cosh_of(w, deg)
        .mul(&AdSeries::constant(&G::one(order), deg).add(&th.scale_right(&(&w.inverse()? * &z1))));
    let pre = match sector {
        Sector::Minus => parts.g0.inverse()?,
        Sector::Plus => parts.d0.inverse()?,
    };
    let cross = AdSeries::sinh_of(w, deg).scale_right(&parts.root_plus).scale_left(&pre);
    let shift = AdSeries::exp_of(&-&z1, deg).mul(&AdSeries::exp_of(&z, deg));
    let here = shift.apply(&space.basis(0, sector));
    let there = shift.apply(&space.basis(0, other(sector)));
    let phi = lead.apply(&here).sub(&cross.apply(&there));
    let psi = parts.reduction.apply(&phi)?;
    let name = if sector == Sector::Minus { "general_minus" } else { "general_plus" };
    let norm = NormalizationRecord { t_h: Some(th.coeffs().to_vec()), ..Default::default() };
    Ok(FamilyState::new(name, psi, op_mixed(&parts.beta, &parts.gamma, &parts.delta), z, norm))
}

/// The `z1 = 0` forms:
/// `G exp(g0^-1 b1 a† b†/2) cosh[w a† - g0^-1 w' b†] e^(z0 a†)|0;->` and the
/// mirror with `d0` and `b`.
fn general_z0(p: &FamilyParams, space: FockSpace, sector: Sector) -> Result<FamilyState> {
    let parts = general_parts(p)?;
    let z0 = p.even("z")?;
    let pre = match sector {
        Sector::Minus => parts.g0.inverse()?,
        Sector::Plus => parts.d0.inverse()?,
    };
    let letter = flip_letter(sector);
    let b1 = &parts.reduction.beta1_hat_general;
    // The pair factor carries +1/2 with the coefficient left of `a† b†`.
    let pair = SuperOperatorExpr::term((&pre * b1).scale(0.5), &[Letter::Ad, letter]);
    let gen = &SuperOperatorExpr::term(parts.root_minus.clone(), &[Letter::Ad])
        - &SuperOperatorExpr::term(&pre * &parts.root_plus, &[letter]);
    let phi = series_apply(&gen, &coherent_root(&z0, sector, space), SeriesKind::Cosh)?.exp_apply(&pair)?;
    let psi = parts.reduction.apply(&phi)?;
    let name = if sector == Sector::Minus { "general_z0_minus" } else { "general_z0_plus" };
    Ok(FamilyState::new(name, psi, op_mixed(&parts.beta, &parts.gamma, &parts.delta), z0, NormalizationRecord::default()))
}
