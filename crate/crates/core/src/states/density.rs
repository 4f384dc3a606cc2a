//! Berezin densities of `a, a†`, the sector combination of `a`-eigenstates,
//! and the Bogoliubov action of the squeeze operator.

use num_complex::Complex64;

use super::families::squeeze_margin;
use super::{apply_unitary, narrowed, widened, UnitaryParams, DISPLACEMENT_MARGIN};
use crate::error::{Error, Result};
use crate::grassmann::{factorial, AnalyticFn, BerezinFrame, GrassmannElement};
use crate::superfock::{residual, FockSpace, Letter, OperatorMatrix, Sector, SuperOperatorExpr, SuperState};

type G = GrassmannElement;

/// Deviations of the density identities, each the largest entry below the
/// guard band.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    /// `∫ A_- dz1‡` against `a`.
    pub annihilation: f64,
    /// `∫ dz1 A_+` against `a†`, with `A_+ = -z1 a†`.
    pub creation: f64,
    /// `∫∫ {A_-, A_+}` against `[a, a†]`.
    pub commutator: f64,
    /// `∫∫ [A_-, A_+]` against `{a, a†}`.
    pub anticommutator: f64,
    /// `{A_-, A_+}` against `z1 z1‡`.
    pub identity_density: f64,
    /// `[A_-, A_+]` against `(w/2) z1 z1‡ {a, a†}` at `w = 1`.
    pub energy_density: f64,
    /// The same at `w = 2`.
    pub energy_density_w2: f64,
    /// With `A_+ = -z1 a` instead: `∫ dz1 A_+` against `a†`.
    pub lowering_creation: f64,
    /// With `A_+ = -z1 a`: largest entry of `{A_-, A_+}`.
    pub lowering_anticommutator: f64,
    /// `A_- |alpha> - alpha z1‡ |alpha>` for the coherent state at `alpha`.
    pub eigen_residual: f64,
}

impl DensityReport {
    /// Largest deviation among the identities that hold.
    pub fn max_deviation(&self) -> f64 {
        [
            self.annihilation,
            self.creation,
            self.commutator,
            self.anticommutator,
            self.identity_density,
            self.energy_density_w2,
            self.eigen_residual,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Applies `f` to every entry of `m` below the guard band and returns the
/// largest deviation from the matching entry of `target`.
fn entrywise<F>(m: &OperatorMatrix, target: &OperatorMatrix, f: F) -> Result<f64>
where
    F: Fn(&G) -> Result<G>,
{
    let idx = m.space().band_indices();
    let mut worst = 0.0f64;
    for &r in &idx {
        for &c in &idx {
            let got = f(&m.entry(r, c))?;
            worst = worst.max((&got - &target.entry(r, c)).max_abs());
        }
    }
    Ok(worst)
}

/// `z1 = e_j + i e_k` and its adjoint span the two generators, so the
/// double integral over `z1‡, z1` is nondegenerate. A single generator
/// would make `z1‡` proportional to `z1` and `z1 z1‡` vanish.
pub fn density_of_algebra(slots: (usize, usize), alpha: Complex64, space: FockSpace) -> Result<DensityReport> {
    let order = space.order;
    let (j, k) = slots;
    if j == k {
        return Err(Error::Config("the density variable needs two distinct generators".into()));
    }
    let z1 = &G::generator(order, j)? + &G::generator(order, k)?.scale(Complex64::i());
    let z1d = z1.adjoint();
    let frame = BerezinFrame::new(vec![j, k], vec![z1d.clone(), z1.clone()])?;
    let real = |e: SuperOperatorExpr| space.realize(&e);
    let (a, ad) = (real(SuperOperatorExpr::a(order)), real(SuperOperatorExpr::ad(order)));
    let am = real(SuperOperatorExpr::term(z1d.clone(), &[Letter::A]));
    let ap = real(SuperOperatorExpr::term(-&z1, &[Letter::Ad]));
    let ap_lowering = real(SuperOperatorExpr::term(-&z1, &[Letter::A]));

    let right = |x: &G| frame.integrate(x, 0);
    let left = |x: &G| frame.integrate_left(x, 1);
    let double = |x: &G| frame.integrate(&frame.integrate(x, 0)?, 1);
    let keep = |x: &G| Ok(x.clone());

    let anti = am.anticommutator(&ap);
    let comm = am.commutator(&ap);
    let zz = &z1 * &z1d;
    let half = |w: f64| real(SuperOperatorExpr::scalar(zz.scale(w / 2.0))).compose(&a.anticommutator(&ad));

    let work = widened(space, DISPLACEMENT_MARGIN);
    let coherent = apply_unitary(&UnitaryParams::Displacement { z: G::scalar(order, alpha) }, &work.vacuum())?;
    let coherent = narrowed(&coherent, space);
    let am_expr = SuperOperatorExpr::term(z1d.clone(), &[Letter::A]);

    Ok(DensityReport {
        annihilation: entrywise(&am, &a, right)?,
        creation: entrywise(&ap, &ad, left)?,
        commutator: entrywise(&anti, &a.commutator(&ad), double)?,
        anticommutator: entrywise(&comm, &a.anticommutator(&ad), double)?,
        identity_density: entrywise(&anti, &real(SuperOperatorExpr::scalar(zz.clone())), keep)?,
        energy_density: entrywise(&comm, &half(1.0), keep)?,
        energy_density_w2: entrywise(&comm, &half(2.0), keep)?,
        lowering_creation: entrywise(&ap_lowering, &ad, left)?,
        lowering_anticommutator: am.anticommutator(&ap_lowering).band_max_abs(),
        eigen_residual: residual(&am_expr, &z1d.scale(alpha), &coherent),
    })
}

/// `rho |z;-> + tau |z;+>` with `|z;±> = D(z0) D(z1)|0;±>`. Stays an
/// `a`-eigenstate at `z` when `rho1 z1 = tau1 z1 = 0`.
pub fn combine_sectors(rho: &G, tau: &G, z: &G, space: FockSpace) -> Result<SuperState> {
    let z1 = z.odd();
    for (name, x) in [("rho1 z1 = 0", &rho.odd() * &z1), ("tau1 z1 = 0", &tau.odd() * &z1)] {
        if let Some(level) = x.lowest_level(1e-12) {
            return Err(Error::violated(name, level));
        }
    }
    let work = widened(space, DISPLACEMENT_MARGIN);
    let shift = |s: Sector| -> Result<SuperState> {
        let psi = apply_unitary(&UnitaryParams::Displacement { z: z1.clone() }, &work.basis(0, s))?;
        let psi = apply_unitary(&UnitaryParams::Displacement { z: z.even() }, &psi)?;
        Ok(narrowed(&psi, space))
    };
    Ok(shift(Sector::Minus)?.scale_left(rho).add(&shift(Sector::Plus)?.scale_left(tau)))
}

/// Largest deviations of `S‡(X0) a S(X0)` from the two forms of its
/// Bogoliubov image, below the guard band.
#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovReport {
    /// Against `C(X X‡) a + X S(X X‡) a†`, with `C` and `S` the even series
    /// of `cosh` and `sinh(r)/r` in `r^2`.
    pub series: f64,
    /// Against `cosh|X| a + sqrt(X) (sqrt(X)‡)^-1 sinh|X| a†`, when `X0` is
    /// invertible.
    pub polar: Option<f64>,
    /// Cutoff of the working space holding `S`.
    pub working_cutoff: usize,
}

impl BogoliubovReport {
    pub fn max_deviation(&self) -> f64 {
        self.series.max(self.polar.unwrap_or(0.0))
    }
}

/// `sum_k s^k / (2k + shift)!`.
fn even_series(s: &G, shift: usize) -> Result<G> {
    let coeffs = (0..60).map(|n| Complex64::new(1.0 / factorial(2 * n + shift), 0.0)).collect();
    s.analytic(&AnalyticFn::Series(coeffs))
}

/// Builds `S(X0)` as a dense exponential on a widened space and compares
/// `S‡ a S` with both closed forms over the levels of `space` below its
/// guard band.
pub fn bogoliubov_check(x0: &G, space: FockSpace) -> Result<BogoliubovReport> {
    if !x0.is_even() {
        return Err(Error::Parity("X0 must be even".into()));
    }
    let order = space.order;
    let work = widened(space, squeeze_margin(x0.body().norm().tanh()));
    let s = crate::states::unitary(&UnitaryParams::Squeeze { x0: x0.clone() }, work)?;
    let a = work.realize(&SuperOperatorExpr::a(order));
    let lhs = s.adjoint().compose(&a).compose(&s);

    let xx = x0 * &x0.adjoint();
    let series_form = &SuperOperatorExpr::term(even_series(&xx, 0)?, &[Letter::A])
        + &SuperOperatorExpr::term(x0 * &even_series(&xx, 1)?, &[Letter::Ad]);
    let polar_form = match x0.inverse() {
        Ok(_) => {
            let r = xx.sqrt()?;
            let root = x0.sqrt()?;
            let phase = &root * &root.adjoint().inverse()?;
            Some(
                &SuperOperatorExpr::term(r.cosh(), &[Letter::A])
                    + &SuperOperatorExpr::term(&phase * &r.sinh(), &[Letter::Ad]),
            )
        }
        Err(_) => None,
    };

    let top = space.band();
    let deviation = |form: &SuperOperatorExpr| {
        let rhs = work.realize(form);
        let idx = work.indices_upto(top);
        lhs.matrix().select(&idx, &idx).sub(&rhs.matrix().select(&idx, &idx)).max_abs()
    };
    Ok(BogoliubovReport {
        series: deviation(&series_form),
        polar: polar_form.as_ref().map(deviation),
        working_cutoff: work.cutoff,
    })
}
