//! Eigenstates of Grassmann combinations of the superalgebra generators.
//!
//! The general problem is
//! `(A_- a + A_+ a† + A_3 + B_- b + B_+ b†) psi = Z psi`. With an invertible
//! `A_-` it reduces to `(a + beta a† + gamma b + delta b†) psi = z psi`, and
//! each solver below handles one shape of `(beta, gamma, delta)`. Every
//! family carries its coefficient sequences, the conditions it imposed on
//! the eigenvalue and the residual of its assembled state.

mod boson;
mod fermion;
mod mixed;
mod oracle;
pub(crate) mod sums;
#[cfg(test)]
mod tests;

pub use boson::{normalization_constants, solve_boson_squeezed, solve_scaled_boson, SqueezeReduction};
pub use fermion::{fermion_squeezed_eigenvalues, solve_fermion_scaled, solve_fermion_squeezed, solve_left_linear};
pub use mixed::{
    compact_coefficients, reduced_coefficients, reduced_compact_coefficients, solve_a_gamma_delta, solve_general,
    solve_super_coherent, supercoherent_constants, GeneralReduction,
};
pub use oracle::{oracle_nullspace_lift, OracleSolution};
pub use sums::{
    b2_brute_force, b2_combinatorial_sums, falling, forward_recurrence, nested_word_sum, o_word_on_power, LambdaKind,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::superfock::{residual, FockSpace, Sector, SuperOperatorExpr, SuperState};

type G = GrassmannElement;

/// Coefficients of `A_- a + A_+ a† + A_3 + B_- b + B_+ b†` and the eigenvalue `Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorCoefficients {
    pub a_minus: G,
    pub a_plus: G,
    pub a3: G,
    pub b_minus: G,
    pub b_plus: G,
    pub z: G,
}

impl GeneratorCoefficients {
    /// All coefficients zero except `A_- = 1`.
    pub fn new(order: usize) -> Self {
        let zero = G::zero(order);
        Self {
            a_minus: G::one(order),
            a_plus: zero.clone(),
            a3: zero.clone(),
            b_minus: zero.clone(),
            b_plus: zero.clone(),
            z: zero,
        }
    }

    pub fn order(&self) -> usize {
        self.a_minus.order()
    }

    fn parts(&self) -> [&G; 6] {
        [&self.a_minus, &self.a_plus, &self.a3, &self.b_minus, &self.b_plus, &self.z]
    }

    /// The operator without the eigenvalue.
    pub fn expr(&self) -> SuperOperatorExpr {
        use crate::superfock::Letter::*;
        let mut e = SuperOperatorExpr::zero(self.order());
        for (c, w) in [
            (&self.a_minus, &[A][..]),
            (&self.a_plus, &[Ad][..]),
            (&self.a3, &[][..]),
            (&self.b_minus, &[B][..]),
            (&self.b_plus, &[Bd][..]),
        ] {
            e = &e + &SuperOperatorExpr::term(c.clone(), w);
        }
        e
    }

    /// Divides through by `A_-`.
    pub fn reduce(&self) -> Result<ReducedCoefficients> {
        let inv = self.a_minus.inverse()?;
        Ok(ReducedCoefficients {
            beta: &inv * &self.a_plus,
            gamma: &inv * &self.b_minus,
            delta: &inv * &self.b_plus,
            z: &inv * &(&self.z - &self.a3),
        })
    }
}

/// `(beta, gamma, delta, z)` of `(a + beta a† + gamma b + delta b†) psi = z psi`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedCoefficients {
    pub beta: G,
    pub gamma: G,
    pub delta: G,
    pub z: G,
}

impl ReducedCoefficients {
    pub fn new(beta: G, gamma: G, delta: G, z: G) -> Self {
        Self { beta, gamma, delta, z }
    }

    /// Only `z` nonzero.
    pub fn coherent(z: G) -> Self {
        let zero = G::zero(z.order());
        Self { beta: zero.clone(), gamma: zero.clone(), delta: zero, z }
    }

    pub fn order(&self) -> usize {
        self.z.order()
    }

    pub fn beta0(&self) -> G {
        self.beta.even()
    }
    pub fn beta1(&self) -> G {
        self.beta.odd()
    }
    pub fn gamma0(&self) -> G {
        self.gamma.even()
    }
    pub fn gamma1(&self) -> G {
        self.gamma.odd()
    }
    pub fn delta0(&self) -> G {
        self.delta.even()
    }
    pub fn delta1(&self) -> G {
        self.delta.odd()
    }
    pub fn z0(&self) -> G {
        self.z.even()
    }
    pub fn z1(&self) -> G {
        self.z.odd()
    }

    /// `a + beta a† + gamma b + delta b†`.
    pub fn expr(&self) -> SuperOperatorExpr {
        use crate::superfock::Letter::*;
        let order = self.order();
        &(&(&SuperOperatorExpr::a(order) + &SuperOperatorExpr::term(self.beta.clone(), &[Ad]))
            + &SuperOperatorExpr::term(self.gamma.clone(), &[B]))
            + &SuperOperatorExpr::term(self.delta.clone(), &[Bd])
    }
}

/// How a family's coefficients were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// `C_n = z^n / sqrt(n!) C_0`.
    CoherentSeries,
    /// Leading coefficient without body: `C_n = (C_1 C_0^-1)^n / sqrt(n!) C_0`.
    DegenerateCoherent,
    /// Squeeze conjugation followed by the odd-`beta` sums.
    SqueezeReduction,
    /// Two-component fermionic system solved directly.
    FermionLinear,
    /// Iterated sums with `gamma` only.
    SuperCoherent,
    /// Alternating-word operator sums.
    WordOperators,
    /// Supersqueeze conjugation plus the reduced sums.
    GeneralReduction,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::CoherentSeries => "coherent-series",
            Method::DegenerateCoherent => "degenerate-coherent",
            Method::SqueezeReduction => "squeeze-reduction",
            Method::FermionLinear => "fermion-linear",
            Method::SuperCoherent => "super-coherent",
            Method::WordOperators => "word-operators",
            Method::GeneralReduction => "general-reduction",
        };
        f.write_str(s)
    }
}

/// A condition `lhs = 0` that the eigenvalue must satisfy.
#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub name: String,
    pub lhs: G,
}

impl Condition {
    pub fn new(name: impl Into<String>, lhs: G) -> Self {
        Self { name: name.into(), lhs }
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.lhs.max_abs() <= tol
    }

    /// Lowest blade level at which the condition fails.
    pub fn failing_level(&self, tol: f64) -> Option<usize> {
        self.lhs.lowest_level(tol)
    }

    /// `Ok` when the condition holds, otherwise the matching error.
    pub fn enforce(&self, tol: f64) -> Result<()> {
        match self.failing_level(tol) {
            None => Ok(()),
            Some(level) => Err(Error::violated(self.name.clone(), level)),
        }
    }
}

/// One independent family of eigenstates.
#[derive(Debug, Clone)]
pub struct SolutionFamily {
    /// Rail carrying the free constant: `Minus` for `C_0`, `Plus` for `D_0`.
    pub sector: Sector,
    pub method: Method,
    pub c: Vec<G>,
    pub d: Vec<G>,
    pub c0: G,
    pub d0: G,
    pub conditions: Vec<Condition>,
    pub operator: SuperOperatorExpr,
    pub eigenvalue: G,
    pub state: SuperState,
    pub residual: f64,
}

impl SolutionFamily {
    /// Assembles the state `sum_n C_n |n;-> + D_n |n;+>` and its residual.
    #[allow(clippy::too_many_arguments)]
    pub fn assemble(
        space: FockSpace,
        sector: Sector,
        method: Method,
        c: Vec<G>,
        d: Vec<G>,
        conditions: Vec<Condition>,
        operator: SuperOperatorExpr,
        eigenvalue: G,
    ) -> Self {
        let mut state = SuperState::zero(space);
        for (n, x) in c.iter().enumerate().take(space.cutoff + 1) {
            state.set(n, Sector::Minus, x);
        }
        for (n, x) in d.iter().enumerate().take(space.cutoff + 1) {
            state.set(n, Sector::Plus, x);
        }
        Self::with_state(sector, method, c, d, conditions, operator, eigenvalue, state)
    }

    /// Family whose state was built separately.
    #[allow(clippy::too_many_arguments)]
    pub fn with_state(
        sector: Sector,
        method: Method,
        c: Vec<G>,
        d: Vec<G>,
        conditions: Vec<Condition>,
        operator: SuperOperatorExpr,
        eigenvalue: G,
        state: SuperState,
    ) -> Self {
        let order = eigenvalue.order();
        let c0 = c.first().cloned().unwrap_or_else(|| G::zero(order));
        let d0 = d.first().cloned().unwrap_or_else(|| G::zero(order));
        let residual = residual(&operator, &eigenvalue, &state);
        Self { sector, method, c, d, c0, d0, conditions, operator, eigenvalue, state, residual }
    }

    /// Alternation constants `F_0 = C_0`, `F_1 = D_0*`.
    pub fn f(&self) -> [G; 2] {
        [self.c0.clone(), self.d0.star()]
    }

    /// Alternation constants `G_0 = D_0`, `G_1 = C_0*`.
    pub fn g(&self) -> [G; 2] {
        [self.d0.clone(), self.c0.star()]
    }
}

/// Coefficients of `(a + beta a† + gamma b + delta b†)` read as a general
/// combination, with `A_- = 1`.
pub fn lift_reduced(red: &ReducedCoefficients) -> GeneratorCoefficients {
    GeneratorCoefficients {
        a_minus: G::one(red.order()),
        a_plus: red.beta.clone(),
        a3: G::zero(red.order()),
        b_minus: red.gamma.clone(),
        b_plus: red.delta.clone(),
        z: red.z.clone(),
    }
}

/// Dispatches on which coefficients vanish and returns every family found.
pub fn solve_sh22(coeffs: &GeneratorCoefficients, space: FockSpace) -> Result<Vec<SolutionFamily>> {
    let tol = 1e-12;
    let small = |x: &G| x.max_abs() <= tol;
    if coeffs.parts().iter().any(|p| p.order() != space.order) {
        return Err(Error::Config("coefficient order differs from the space".into()));
    }
    if coeffs.a_minus.body().norm() == 0.0 {
        let boson_only = small(&coeffs.a_plus) && small(&coeffs.b_minus) && small(&coeffs.b_plus);
        if boson_only {
            let z = &coeffs.z - &coeffs.a3;
            return solve_scaled_boson(&coeffs.a_minus, &z, space);
        }
        return Err(Error::UnsupportedRegime(
            "leading coefficient of a without body together with other nonzero generators".into(),
        ));
    }
    let red = coeffs.reduce()?;
    let (beta, gamma, delta) = (small(&red.beta), small(&red.gamma), small(&red.delta));
    let families = match (beta, gamma, delta) {
        (true, true, true) => solve_scaled_boson(&coeffs.a_minus, &(&coeffs.z - &coeffs.a3), space)?,
        (false, true, true) => vec![solve_boson_squeezed(&red.beta, &red.z, space)?.0],
        (true, false, true) => solve_super_coherent(&red.gamma, &red.z, space)?,
        (true, _, _) => solve_a_gamma_delta(&red.gamma, &red.delta, &red.z, space)?,
        _ => solve_general(&red.beta, &red.gamma, &red.delta, &red.z, space)?,
    };
    // Report residuals against the operator as given.
    let op = coeffs.expr();
    Ok(families
        .into_iter()
        .map(|mut f| {
            f.residual = residual(&op, &coeffs.z, &f.state);
            f.operator = op.clone();
            f.eigenvalue = coeffs.z.clone();
            f
        })
        .collect())
}
