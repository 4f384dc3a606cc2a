//! Closed-form states: the superunitary factories, the word operators, every
//! named family, the Berezin density identities and the sector combination.

mod density;
mod families;
mod series;

#[cfg(test)]
mod tests;

pub(crate) use families::squeeze_margin;
pub use density::{bogoliubov_check, combine_sectors, density_of_algebra, BogoliubovReport, DensityReport};
pub use families::{
    construct_family, family_names, spin_half_assemblies, FamilyParams, FamilyState, NormalizationRecord,
};
pub use series::{
    exp_apply_scaled, o_word_operator, o_word_sum, operator_size, series_apply, tanh_series, word_family_state,
    AdSeries, SeriesKind,
};

use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::superfock::{FockSpace, Letter, OperatorMatrix, SuperOperatorExpr, SuperState};

type G = GrassmannElement;

/// Parameters of the superunitary (or, for `G`, invertible) operators.
#[derive(Debug, Clone, PartialEq)]
pub enum UnitaryParams {
    /// `D(z) = exp(z a† - z‡ a)`.
    Displacement { z: G },
    /// `T(z) = exp(b† z - z‡ b)`.
    Fermionic { z: G },
    /// `S(X0) = exp(X0 a†^2/2 - X0‡ a^2/2)`.
    Squeeze { x0: G },
    /// `exp(-(b0 + g1 d1) a†^2/2) exp(-d1 a† b†) exp(-g1 a† b)`.
    Supersqueeze { beta0: G, gamma1: G, delta1: G },
    /// `exp(X0 a†^2/2 - X0‡ a^2/2 + G1 a† b† + G1‡ a b + D1 a† b + D1‡ a b†)`.
    Osp { x0: G, gamma1: G, delta1: G },
    /// `exp[z0 (g0‡ b† + d0‡ b) - z0‡ (g0 b + d0 b†)]`.
    Spin { z0: G, gamma0: G, delta0: G },
}

fn need(x: &G, even: bool, name: &str) -> Result<()> {
    let ok = if even { x.is_even() } else { x.is_odd() };
    if ok {
        Ok(())
    } else {
        Err(Error::Parity(format!("{name} must be {}", if even { "even" } else { "odd" })))
    }
}

impl UnitaryParams {
    pub fn kind(&self) -> &'static str {
        match self {
            UnitaryParams::Displacement { .. } => "D",
            UnitaryParams::Fermionic { .. } => "T",
            UnitaryParams::Squeeze { .. } => "S",
            UnitaryParams::Supersqueeze { .. } => "G",
            UnitaryParams::Osp { .. } => "U_osp",
            UnitaryParams::Spin { .. } => "U_spin",
        }
    }

    pub fn order(&self) -> usize {
        match self {
            UnitaryParams::Displacement { z } | UnitaryParams::Fermionic { z } => z.order(),
            UnitaryParams::Squeeze { x0 } => x0.order(),
            UnitaryParams::Supersqueeze { beta0, .. } => beta0.order(),
            UnitaryParams::Osp { x0, .. } => x0.order(),
            UnitaryParams::Spin { z0, .. } => z0.order(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            UnitaryParams::Displacement { .. } | UnitaryParams::Fermionic { .. } => Ok(()),
            UnitaryParams::Squeeze { x0 } => need(x0, true, "X0"),
            UnitaryParams::Supersqueeze { beta0, gamma1, delta1 } => {
                need(beta0, true, "beta0")?;
                need(gamma1, false, "gamma1")?;
                need(delta1, false, "delta1")
            }
            UnitaryParams::Osp { x0, gamma1, delta1 } => {
                need(x0, true, "X0")?;
                need(gamma1, false, "Gamma1")?;
                need(delta1, false, "Delta1")
            }
            UnitaryParams::Spin { z0, gamma0, delta0 } => {
                need(z0, true, "z0")?;
                need(gamma0, true, "gamma0")?;
                need(delta0, true, "delta0")
            }
        }
    }

    /// The exponents, leftmost factor first.
    pub fn exponents(&self) -> Result<Vec<SuperOperatorExpr>> {
        self.validate()?;
        let t = |c: G, w: &[Letter]| SuperOperatorExpr::term(c, w);
        use Letter::*;
        Ok(match self {
            UnitaryParams::Displacement { z } => vec![&t(z.clone(), &[Ad]) - &t(z.adjoint(), &[A])],
            UnitaryParams::Fermionic { z } => {
                let order = z.order();
                vec![&SuperOperatorExpr::bd(order).scale_right(z) - &t(z.adjoint(), &[B])]
            }
            UnitaryParams::Squeeze { x0 } => vec![squeeze_exponent(x0)],
            UnitaryParams::Supersqueeze { beta0, gamma1, delta1 } => vec![
                t((beta0 + &(gamma1 * delta1)).scale(-0.5), &[Ad, Ad]),
                t(-delta1, &[Ad, Bd]),
                t(-gamma1, &[Ad, B]),
            ],
            UnitaryParams::Osp { x0, gamma1, delta1 } => {
                let mut e = squeeze_exponent(x0);
                e = &e + &t(gamma1.clone(), &[Ad, Bd]);
                e = &e + &t(gamma1.adjoint(), &[A, B]);
                e = &e + &t(delta1.clone(), &[Ad, B]);
                e = &e + &t(delta1.adjoint(), &[A, Bd]);
                vec![e]
            }
            UnitaryParams::Spin { z0, gamma0, delta0 } => {
                let up = &t(z0 * &gamma0.adjoint(), &[Bd]) + &t(z0 * &delta0.adjoint(), &[B]);
                let zd = z0.adjoint();
                let down = &t(&zd * gamma0, &[B]) + &t(&zd * delta0, &[Bd]);
                vec![&up - &down]
            }
        })
    }

    /// The exponent as a single expression, when there is only one factor.
    pub fn generator(&self) -> Result<SuperOperatorExpr> {
        let mut e = self.exponents()?;
        if e.len() != 1 {
            return Err(Error::UnsupportedRegime(format!("{} is a product of {} exponentials", self.kind(), e.len())));
        }
        Ok(e.remove(0))
    }
}

fn squeeze_exponent(x0: &G) -> SuperOperatorExpr {
    use Letter::*;
    &SuperOperatorExpr::term(x0.scale(0.5), &[Ad, Ad]) - &SuperOperatorExpr::term(x0.adjoint().scale(0.5), &[A, A])
}

/// The operator as a matrix on `space`, each factor through the generic
/// operator exponential. Levels near the cutoff carry truncation error for
/// exponents that lower; compare only below the guard band.
pub fn unitary(params: &UnitaryParams, space: FockSpace) -> Result<OperatorMatrix> {
    let mut out = space.identity();
    for e in params.exponents()? {
        out = out.compose(&space.exp(&e)?);
    }
    Ok(out)
}

fn lowers(expr: &SuperOperatorExpr) -> bool {
    expr.terms().iter().any(|t| t.word.contains(&Letter::A))
}

/// `exp(expr) psi` on the space of `psi`: the plain series when `expr`
/// never lowers (it then stops by itself), scaled stepping otherwise.
pub fn exp_apply(expr: &SuperOperatorExpr, psi: &SuperState) -> Result<SuperState> {
    if lowers(expr) {
        exp_apply_scaled(expr, psi)
    } else {
        psi.exp_apply(expr)
    }
}

/// `U psi`, factor by factor from the right, on the space of `psi`.
pub fn apply_unitary(params: &UnitaryParams, psi: &SuperState) -> Result<SuperState> {
    let mut out = psi.clone();
    for e in params.exponents()?.iter().rev() {
        out = exp_apply(e, &out)?;
    }
    Ok(out)
}

/// Levels added above the cutoff while a displacement acts.
pub(crate) const DISPLACEMENT_MARGIN: usize = 48;

/// `space` with `margin` extra levels, all of them guard.
pub fn widened(space: FockSpace, margin: usize) -> FockSpace {
    FockSpace { cutoff: space.cutoff + margin, guard: space.guard + margin, ..space }
}

/// Restriction of a state built on a widened space back to `space`.
pub fn narrowed(psi: &SuperState, space: FockSpace) -> SuperState {
    psi.with_cutoff(space.cutoff, space.guard)
}
