//! Power series in `a†` with Grassmann coefficients, the alternating-word
//! operators `O(l, first, second, z_1)` and operator series applied to
//! states.

use crate::error::{Error, Result};
use crate::grassmann::{factorial, GrassmannElement};
use crate::saes::sums::alternating;
use crate::superfock::{apply_word, Letter, Sector, SuperOperatorExpr, SuperState};

type G = GrassmannElement;

/// `sum_k c_k (a†)^k` with `c_k` standing to the left, kept up to a fixed
/// degree. Since `a†` is even the coefficients never pick up a sign, so the
/// series form a ring isomorphic to polynomials over the algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AdSeries {
    coeffs: Vec<G>,
}

impl AdSeries {
    pub fn zero(order: usize, degree: usize) -> Self {
        Self { coeffs: vec![G::zero(order); degree + 1] }
    }

    pub fn constant(c: &G, degree: usize) -> Self {
        Self::monomial(c, 0, degree)
    }

    /// `c (a†)^k`.
    pub fn monomial(c: &G, k: usize, degree: usize) -> Self {
        let mut s = Self::zero(c.order(), degree);
        if k <= degree {
            s.coeffs[k] = c.clone();
        }
        s
    }

    pub fn from_fn(order: usize, degree: usize, f: impl Fn(usize) -> G) -> Self {
        let coeffs = (0..=degree).map(&f).collect::<Vec<_>>();
        debug_assert!(coeffs.iter().all(|c| c.order() == order));
        Self { coeffs }
    }

    /// `exp(c a†)`.
    pub fn exp_of(c: &G, degree: usize) -> Self {
        Self::from_fn(c.order(), degree, |k| c.powi(k).scale(1.0 / factorial(k)))
    }

    /// `cosh(c a†) = sum_k c^(2k) (a†)^(2k) / (2k)!`.
    pub fn cosh_of(c: &G, degree: usize) -> Self {
        Self::from_fn(c.order(), degree, |k| {
            if k % 2 == 0 {
                c.powi(k).scale(1.0 / factorial(k))
            } else {
                G::zero(c.order())
            }
        })
    }

    /// `sinh(c a†)`.
    pub fn sinh_of(c: &G, degree: usize) -> Self {
        Self::from_fn(c.order(), degree, |k| {
            if k % 2 == 1 {
                c.powi(k).scale(1.0 / factorial(k))
            } else {
                G::zero(c.order())
            }
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs[0].order()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &G {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[G] {
        &self.coeffs
    }

    fn zip(&self, other: &Self, f: impl Fn(&G, &G) -> G) -> Self {
        let degree = self.degree().max(other.degree());
        let zero = G::zero(self.order());
        let pick = |s: &Self, k: usize| s.coeffs.get(k).cloned().unwrap_or_else(|| zero.clone());
        Self { coeffs: (0..=degree).map(|k| f(&pick(self, k), &pick(other, k))).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |x, y| x - y)
    }

    /// Cauchy product, truncated at the larger degree.
    pub fn mul(&self, other: &Self) -> Self {
        let degree = self.degree().max(other.degree());
        let mut out = Self::zero(self.order(), degree);
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate().take(degree + 1 - i) {
                if !y.is_zero() {
                    out.coeffs[i + j] += &(x * y);
                }
            }
        }
        out
    }

    pub fn scale_left(&self, c: &G) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| c * x).collect() }
    }

    pub fn scale_right(&self, c: &G) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Two-sided inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0inv = self.coeffs[0].inverse()?;
        let mut u = vec![c0inv.clone()];
        for n in 1..=self.degree() {
            let mut acc = G::zero(self.order());
            for k in 1..=n {
                acc += &(&self.coeffs[k] * &u[n - k]);
            }
            u.push(-(&c0inv * &acc));
        }
        Ok(Self { coeffs: u })
    }

    /// `exp` of a series without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("exp of an a† series needs a vanishing constant term".into()));
        }
        let mut sum = Self::constant(&G::one(self.order()), self.degree());
        let mut term = sum.clone();
        for k in 1..=self.degree() {
            term = term.mul(self).scale_left(&G::scalar(self.order(), 1.0 / k as f64));
            sum = sum.add(&term);
        }
        Ok(sum)
    }

    pub fn to_expr(&self) -> SuperOperatorExpr {
        let order = self.order();
        let mut out = SuperOperatorExpr::zero(order);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &SuperOperatorExpr::term(c.clone(), &vec![Letter::Ad; k]);
            }
        }
        out
    }

    /// `self psi`, with `(a†)^k |n> = sqrt((n+k)!/n!) |n+k>`.
    pub fn apply(&self, psi: &SuperState) -> SuperState {
        let space = psi.space();
        let mut out = SuperState::zero(space);
        for sector in [Sector::Minus, Sector::Plus] {
            let src: Vec<G> = (0..=space.cutoff).map(|n| psi.get(n, sector)).collect();
            let mut dst = vec![G::zero(space.order); space.cutoff + 1];
            for (n, x) in src.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let mut f = 1.0;
                for (k, c) in self.coeffs.iter().enumerate() {
                    if n + k > space.cutoff {
                        break;
                    }
                    if k > 0 {
                        f *= ((n + k) as f64).sqrt();
                    }
                    if !c.is_zero() {
                        dst[n + k] += &(c * x).scale(f);
                    }
                }
            }
            for (n, c) in dst.iter().enumerate() {
                out.set(n, sector, c);
            }
        }
        out
    }
}

/// Which part of the exponential series to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Exp,
    Cosh,
    Sinh,
}

impl SeriesKind {
    fn keeps(self, k: usize) -> bool {
        match self {
            SeriesKind::Exp => true,
            SeriesKind::Cosh => k % 2 == 0,
            SeriesKind::Sinh => k % 2 == 1,
        }
    }
}

const SERIES_MAX_TERMS: usize = 600;

/// `f(expr) psi` for `f` in exp, cosh, sinh, summing `expr^k psi / k!`
/// until a term vanishes or drops below double precision.
pub fn series_apply(expr: &SuperOperatorExpr, psi: &SuperState, kind: SeriesKind) -> Result<SuperState> {
    let order = psi.space().order;
    let mut term = psi.clone();
    let mut sum = if kind.keeps(0) { psi.clone() } else { SuperState::zero(psi.space()) };
    for k in 1..=SERIES_MAX_TERMS {
        term = apply_word(expr, &term).scale_right(&G::scalar(order, 1.0 / k as f64));
        let last = term.max_abs();
        if last == 0.0 {
            return Ok(sum);
        }
        if kind.keeps(k) {
            sum = sum.add(&term);
        }
        if k > order + 1 && last <= 1e-17 * sum.max_abs().max(1.0) {
            return Ok(sum);
        }
    }
    Err(Error::Convergence { iterations: SERIES_MAX_TERMS, last_term: term.max_abs() })
}

/// Bound on the size of `expr` on the truncated space: each `a` or `a†`
/// counts `sqrt(cutoff + 1)`, each coefficient its blade l1 norm.
pub fn operator_size(expr: &SuperOperatorExpr, cutoff: usize) -> f64 {
    let root = ((cutoff + 1) as f64).sqrt();
    expr.terms()
        .iter()
        .map(|t| {
            let l1: f64 = t.coeff.blades().map(|(_, c)| c.norm()).sum();
            let bosonic = t.word.iter().filter(|l| matches!(l, Letter::A | Letter::Ad)).count();
            l1 * root.powi(bosonic as i32)
        })
        .sum()
}

/// `exp(expr) psi` as `exp(expr/m)^m psi` with `m` chosen so that each step
/// has size at most one half. Needed for exponents that lower, where the
/// plain series on the truncated space cancels badly.
pub fn exp_apply_scaled(expr: &SuperOperatorExpr, psi: &SuperState) -> Result<SuperState> {
    let size = operator_size(expr, psi.space().cutoff);
    let steps = (size / 0.5).ceil().max(1.0) as usize;
    let step = expr.scale_left(&G::scalar(expr.order(), 1.0 / steps as f64));
    let mut out = psi.clone();
    for _ in 0..steps {
        out = out.exp_apply(&step)?;
    }
    Ok(out)
}

/// `O(l, first, second, z_1)`:
/// `(1/l!) [w_l ((a†)^l - z_1 (a†)^(l+1)) + 1/(l+1) sum_j (-1)^(j+l) w_(l-j) z_1 w'_j (a†)^(l+1)]`
/// where `w_l` alternates `first, second, ...` over `l` factors and the
/// insertion of `z_1` continues the same alternation.
pub fn o_word_operator(l: usize, first: &G, second: &G, z1: &G) -> SuperOperatorExpr {
    let order = first.order();
    let word = alternating(order, 0, l, first, second);
    let mut inserted = G::zero(order);
    for j in 0..=l {
        let before = alternating(order, 0, l - j, first, second);
        let after = alternating(order, l - j, j, first, second);
        let t = &(&before * z1) * &after;
        if (j + l) % 2 == 0 {
            inserted += &t;
        } else {
            inserted -= &t;
        }
    }
    let top = &inserted.scale(1.0 / (l + 1) as f64) - &(&word * z1);
    let k = 1.0 / factorial(l);
    let lead = SuperOperatorExpr::term(word.scale(k), &vec![Letter::Ad; l]);
    let tail = SuperOperatorExpr::term(top.scale(k), &vec![Letter::Ad; l + 1]);
    &lead + &tail
}

/// `sum` of `O(l, first, second, z_1)` over `l <= l_max` of the given parity.
pub fn o_word_sum(parity: usize, l_max: usize, first: &G, second: &G, z1: &G) -> SuperOperatorExpr {
    let mut out = SuperOperatorExpr::zero(first.order());
    for l in (parity..=l_max).step_by(2) {
        out = &out + &o_word_operator(l, first, second, z1);
    }
    out
}

/// The word-operator family of `a + gamma b + delta b†` at `z`, rooted in
/// `sector` with unit constant:
/// `sum_even O(l, g, d*, z_1) e^(z a†)|0;-> - sum_odd O(l, d, g*, z_1) e^(z a†)|0;+>`
/// for the minus root and the mirror for the plus root.
pub fn word_family_state(gamma: &G, delta: &G, z: &G, sector: Sector, space: crate::FockSpace) -> Result<SuperState> {
    let z1 = z.odd();
    let (gs, ds) = (gamma.star(), delta.star());
    let (same, other) = match sector {
        Sector::Minus => ((gamma, &ds), (delta, &gs)),
        Sector::Plus => ((delta, &gs), (gamma, &ds)),
    };
    let flip = match sector {
        Sector::Minus => Sector::Plus,
        Sector::Plus => Sector::Minus,
    };
    let coherent = AdSeries::exp_of(z, space.cutoff);
    let here = coherent.apply(&space.basis(0, sector));
    let there = coherent.apply(&space.basis(0, flip));
    let even = o_word_sum(0, space.cutoff, same.0, same.1, &z1);
    let odd = o_word_sum(1, space.cutoff, other.0, other.1, &z1);
    Ok(apply_word(&even, &here).sub(&apply_word(&odd, &there)))
}

/// `T_h = cosh(c a†)^-1 sinh(c a†)`.
pub fn tanh_series(c: &G, degree: usize) -> Result<AdSeries> {
    Ok(AdSeries::cosh_of(c, degree).inverse()?.mul(&AdSeries::sinh_of(c, degree)))
}
