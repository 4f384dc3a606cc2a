//! States on the truncated graded Fock space.

use num_complex::Complex64;

use super::expr::{Letter, SuperOperatorExpr};
use super::linalg::GVector;
use super::{FockSpace, Sector};
use crate::error::{Error, Result};
use crate::grassmann::{level, GrassmannElement};

/// A state `sum_n C_n |n;-> + D_n |n;+>` with the coefficients written to
/// the left of the kets.
///
/// Internally each coefficient is stored moved to the right of its ket,
/// `c |k> = |k> c^(p_k)` where `p_k` is the ket parity and `c^(1)` is the
/// star conjugate. In that form every operator acts by an ordinary
/// Grassmann matrix product.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperState {
    space: FockSpace,
    right: GVector,
    /// Largest coefficient magnitude pushed above the cutoff so far.
    pub truncation_loss: f64,
}

/// Star on the plus-sector entries: converts between left- and
/// right-standing coefficients.
pub(crate) fn flip_plus(space: &FockSpace, v: &GVector) -> GVector {
    let mut out = v.clone();
    let plus = space.sector_indices(Sector::Plus);
    for (m, b) in v.blades() {
        if level(m) % 2 == 1 {
            let t = out.blade_mut(m);
            for &i in &plus {
                t[i] = -b[i];
            }
        }
    }
    out
}

impl SuperState {
    pub fn zero(space: FockSpace) -> Self {
        Self { space, right: GVector::zeros(space.order, space.dim()), truncation_loss: 0.0 }
    }

    /// `|n; sector>` with unit coefficient.
    pub fn basis(space: FockSpace, n: usize, sector: Sector) -> Self {
        let mut s = Self::zero(space);
        s.set(n, sector, &GrassmannElement::one(space.order));
        s
    }

    pub(crate) fn from_right(space: FockSpace, right: GVector) -> Self {
        Self { space, right, truncation_loss: 0.0 }
    }

    /// Builds a state from left-standing coefficients.
    pub fn from_coefficients<I>(space: FockSpace, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Sector, GrassmannElement)>,
    {
        let mut s = Self::zero(space);
        for (n, sector, c) in coeffs {
            if n > space.cutoff {
                return Err(Error::Config(format!("level {n} above cutoff {}", space.cutoff)));
            }
            if c.order() != space.order {
                return Err(Error::Config("coefficient order differs from the space".into()));
            }
            let cur = s.get(n, sector);
            s.set(n, sector, &(&cur + &c));
        }
        Ok(s)
    }

    /// The `|0;->`-rooted rail `sum_n c_n |n; sector>` from a coefficient sequence.
    pub fn from_rail(space: FockSpace, sector: Sector, coeffs: &[GrassmannElement]) -> Self {
        let mut s = Self::zero(space);
        for (n, c) in coeffs.iter().enumerate().take(space.cutoff + 1) {
            s.set(n, sector, c);
        }
        s
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub(crate) fn right(&self) -> &GVector {
        &self.right
    }

    /// Left-standing coefficient of `|n; sector>`.
    pub fn get(&self, n: usize, sector: Sector) -> GrassmannElement {
        let c = self.right.entry(self.space.index(n, sector));
        match sector {
            Sector::Minus => c,
            Sector::Plus => c.star(),
        }
    }

    pub fn set(&mut self, n: usize, sector: Sector, c: &GrassmannElement) {
        let r = match sector {
            Sector::Minus => c.clone(),
            Sector::Plus => c.star(),
        };
        self.right.set_entry(self.space.index(n, sector), &r);
    }

    /// Left-standing coefficients in basis order.
    pub fn coefficients(&self) -> Vec<(usize, Sector, GrassmannElement)> {
        let mut out = Vec::with_capacity(self.space.dim());
        for sector in [Sector::Minus, Sector::Plus] {
            for n in 0..=self.space.cutoff {
                out.push((n, sector, self.get(n, sector)));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(-1.0, other)
    }

    fn axpy(&self, s: f64, other: &Self) -> Self {
        assert_eq!(self.space, other.space, "states live on different spaces");
        Self {
            space: self.space,
            right: self.right.axpy(Complex64::new(s, 0.0), &other.right),
            truncation_loss: self.truncation_loss.max(other.truncation_loss),
        }
    }

    /// `c · psi`: every left coefficient multiplied on the left by `c`.
    pub fn scale_left(&self, c: &GrassmannElement) -> Self {
        // Moving c right past a plus ket stars it, which negates its odd part there.
        let even = self.right.left_scale(&c.even());
        let odd = plus_negated(&self.space, &self.right.left_scale(&c.odd()));
        let mut out = self.clone();
        out.right = even.axpy(Complex64::new(1.0, 0.0), &odd);
        out
    }

    /// `psi · c`.
    pub fn scale_right(&self, c: &GrassmannElement) -> Self {
        let mut out = self.clone();
        out.right = self.right.right_scale(c);
        out
    }

    /// `sum_k (c_k^phi)‡ c_k^psi` over left-standing coefficients.
    pub fn inner_product(&self, other: &Self) -> GrassmannElement {
        assert_eq!(self.space, other.space, "states live on different spaces");
        let l1 = flip_plus(&self.space, &self.right);
        let l2 = flip_plus(&other.space, &other.right);
        l1.dot_adjoint(&l2)
    }

    /// `sum_k (x_k^phi)‡ x_k^psi` over right-standing coefficients. Operator
    /// adjoints are exact adjoints for this pairing; for states of definite
    /// parity it coincides with [`inner_product`](Self::inner_product).
    pub fn graded_inner_product(&self, other: &Self) -> GrassmannElement {
        assert_eq!(self.space, other.space, "states live on different spaces");
        self.right.dot_adjoint(&other.right)
    }

    /// `sqrt(<psi|psi>)`.
    pub fn norm(&self) -> Result<GrassmannElement> {
        let ip = self.inner_product(self);
        let b = ip.body();
        if !(b.re > 0.0) || b.im.abs() > 1e-12 * b.re.max(1.0) {
            return Err(Error::DegenerateState { body: format!("{b}") });
        }
        ip.sqrt()
    }

    /// `psi · norm(psi)^-1`.
    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm()?;
        Ok(self.scale_right(&n.inverse()?))
    }

    /// Largest blade coefficient over levels `n <= cutoff - guard`.
    pub fn max_abs_in_band(&self) -> f64 {
        self.right.max_abs_on(&self.space.band_indices())
    }

    pub fn max_abs(&self) -> f64 {
        self.right.max_abs()
    }

    /// Largest coefficient deviation from `other` below the guard band.
    pub fn distance(&self, other: &Self) -> f64 {
        self.sub(other).max_abs_in_band()
    }

    /// Applies an expression letter by letter in the left-coefficient
    /// picture: odd letters star the coefficients they pass.
    pub fn apply(&self, expr: &SuperOperatorExpr) -> Self {
        apply_word(expr, self)
    }

    /// `exp(expr) psi` as the series `sum_k expr^k psi / k!`, iterated on the
    /// state. For raising or nilpotent exponents the series stops by itself
    /// and the result is exact below the cutoff.
    pub fn exp_apply(&self, expr: &SuperOperatorExpr) -> Result<Self> {
        const MAX_TERMS: usize = 400;
        let mut term = self.clone();
        let mut sum = self.clone();
        for k in 1..=MAX_TERMS {
            let inv_k = GrassmannElement::scalar(self.space.order, 1.0 / k as f64);
            term = apply_word(expr, &term).scale_right(&inv_k);
            let last = term.max_abs();
            if last == 0.0 {
                return Ok(sum);
            }
            sum = sum.add(&term);
            sum.truncation_loss = sum.truncation_loss.max(term.truncation_loss);
            if k > self.space.order && last <= 1e-17 * sum.max_abs().max(1.0) {
                return Ok(sum);
            }
        }
        Err(Error::Convergence { iterations: MAX_TERMS, last_term: term.max_abs() })
    }

    /// Same state on a space with a different cutoff, dropping levels that
    /// no longer fit.
    pub fn with_cutoff(&self, cutoff: usize, guard: usize) -> Self {
        let space = FockSpace { cutoff, guard, ..self.space };
        let mut out = Self::zero(space);
        let keep = cutoff.min(self.space.cutoff);
        for (m, b) in self.right.blades() {
            let t = out.right.blade_mut(m);
            for sector in [Sector::Minus, Sector::Plus] {
                for n in 0..=keep {
                    t[space.index(n, sector)] = b[self.space.index(n, sector)];
                }
            }
        }
        out.right.clean();
        out
    }
}

fn plus_negated(space: &FockSpace, v: &GVector) -> GVector {
    let mut out = v.clone();
    let plus = space.sector_indices(Sector::Plus);
    let masks: Vec<u32> = v.blades().map(|(m, _)| m).collect();
    for m in masks {
        let t = out.blade_mut(m);
        for &i in &plus {
            t[i] = -t[i];
        }
    }
    out
}

/// `expr psi`, evaluated letter by letter on left-standing coefficients.
pub fn apply_word(expr: &SuperOperatorExpr, psi: &SuperState) -> SuperState {
    let space = psi.space;
    let left: Vec<GrassmannElement> = (0..space.dim())
        .map(|i| {
            let (n, s) = space.label(i);
            psi.get(n, s)
        })
        .collect();
    let zero = GrassmannElement::zero(space.order);
    let mut total = vec![zero.clone(); space.dim()];
    let mut loss = psi.truncation_loss;
    for term in expr.terms() {
        let mut v = left.clone();
        for &letter in term.word.iter().rev() {
            let mut next = vec![zero.clone(); space.dim()];
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (n, s) = space.label(i);
                match letter {
                    Letter::I => next[i] = &next[i] + c,
                    Letter::A => {
                        if n > 0 {
                            let j = space.index(n - 1, s);
                            next[j] = &next[j] + &c.scale((n as f64).sqrt());
                        }
                    }
                    Letter::Ad => {
                        let c = c.scale(((n + 1) as f64).sqrt());
                        if n < space.cutoff {
                            let j = space.index(n + 1, s);
                            next[j] = &next[j] + &c;
                        } else {
                            loss = loss.max(c.max_abs());
                        }
                    }
                    Letter::B => {
                        if s == Sector::Plus {
                            let j = space.index(n, Sector::Minus);
                            next[j] = &next[j] + &c.star();
                        }
                    }
                    Letter::Bd => {
                        if s == Sector::Minus {
                            let j = space.index(n, Sector::Plus);
                            next[j] = &next[j] + &c.star();
                        }
                    }
                }
            }
            v = next;
        }
        for (t, c) in total.iter_mut().zip(&v) {
            if !c.is_zero() {
                *t = &*t + &(&term.coeff * c);
            }
        }
    }
    let mut out = SuperState::zero(space);
    for (i, c) in total.iter().enumerate() {
        let (n, s) = space.label(i);
        out.set(n, s, c);
    }
    out.truncation_loss = loss;
    out
}

/// Largest coefficient of `(expr - Z) psi` below the guard band.
pub fn residual(expr: &SuperOperatorExpr, z: &GrassmannElement, psi: &SuperState) -> f64 {
    let shifted = expr - &SuperOperatorExpr::scalar(z.clone());
    apply_word(&shifted, psi).max_abs_in_band()
}
