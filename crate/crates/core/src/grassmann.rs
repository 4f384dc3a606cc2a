//! Arithmetic in the finite complex Grassmann algebra with `L` generators.
//!
//! An element is stored sparsely as a map from blade masks to complex
//! coefficients. Bit `j - 1` of a mask is set when the generator `e_j` is a
//! factor of the blade; the generators of a blade are always kept in
//! ascending order, so the mask alone identifies the basis element. Mask `0`
//! is the unit and carries the body of the element.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported number of generators.
pub const MAX_ORDER: usize = 10;

/// Session-wide settings for Grassmann arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraConfig {
    pub order: usize,
    /// Coefficients with magnitude at or below this are dropped by
    /// [`GrassmannElement::pruned`]. Arithmetic itself only drops exact zeros.
    pub prune_threshold: f64,
    pub tolerance: f64,
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        Self { order: 6, prune_threshold: 0.0, tolerance: 1e-12 }
    }
}

impl AlgebraConfig {
    pub fn new(order: usize) -> Result<Self> {
        check_order(order)?;
        Ok(Self { order, ..Self::default() })
    }

    pub fn zero(&self) -> GrassmannElement {
        GrassmannElement::zero(self.order)
    }

    pub fn one(&self) -> GrassmannElement {
        GrassmannElement::one(self.order)
    }

    pub fn scalar(&self, c: impl Into<Complex64>) -> GrassmannElement {
        GrassmannElement::scalar(self.order, c)
    }

    pub fn generator(&self, j: usize) -> Result<GrassmannElement> {
        GrassmannElement::generator(self.order, j)
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::Config(format!("Grassmann order {order} outside 1..={MAX_ORDER}")));
    }
    Ok(())
}

/// Number of generators in a blade.
#[inline]
pub fn level(mask: u32) -> u32 {
    mask.count_ones()
}

/// Sign picked up when the ordered blades `a` and `b` are multiplied and the
/// result is brought back to ascending order. Zero if they share a generator.
#[inline]
pub fn blade_sign(a: u32, b: u32) -> f64 {
    if a & b != 0 {
        return 0.0;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// The three conjugations of the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involution {
    /// `B* = B_0 - B_1`.
    Star,
    /// Complex conjugation of the coefficients, blades treated as real.
    Bar,
    /// `B‡`: conjugated coefficients, odd-level blades multiplied by `-i`.
    Adjoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Body,
    Soul,
    Even,
    Odd,
}

/// Analytic functions that can be lifted to the algebra by Taylor expansion
/// about the body.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticFn {
    Sqrt,
    Exp,
    Cosh,
    Sinh,
    /// `sum_n c_n x^n` with the given coefficients.
    Series(Vec<Complex64>),
}

impl AnalyticFn {
    /// `f^(k)(b) / k!`.
    fn taylor_coefficient(&self, b: Complex64, k: usize) -> Complex64 {
        let fact = factorial(k);
        match self {
            AnalyticFn::Sqrt => {
                // binomial(1/2, k) b^(1/2 - k)
                let mut binom = 1.0;
                for i in 0..k {
                    binom *= (0.5 - i as f64) / (i as f64 + 1.0);
                }
                b.sqrt() * b.powi(-(k as i32)) * binom
            }
            AnalyticFn::Exp => b.exp() / fact,
            AnalyticFn::Cosh => {
                if k % 2 == 0 {
                    b.cosh() / fact
                } else {
                    b.sinh() / fact
                }
            }
            AnalyticFn::Sinh => {
                if k % 2 == 0 {
                    b.sinh() / fact
                } else {
                    b.cosh() / fact
                }
            }
            AnalyticFn::Series(c) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (n, cn) in c.iter().enumerate().skip(k) {
                    acc += cn * binomial(n, k) * b.powi((n - k) as i32);
                }
                acc
            }
        }
    }
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// An element of the complex Grassmann algebra with `order` generators.
#[derive(Clone, PartialEq)]
pub struct GrassmannElement {
    order: u8,
    blades: BTreeMap<u32, Complex64>,
}

impl GrassmannElement {
    pub fn zero(order: usize) -> Self {
        assert!(order <= MAX_ORDER, "Grassmann order {order} exceeds {MAX_ORDER}");
        Self { order: order as u8, blades: BTreeMap::new() }
    }

    pub fn one(order: usize) -> Self {
        Self::scalar(order, 1.0)
    }

    pub fn scalar(order: usize, c: impl Into<Complex64>) -> Self {
        let mut x = Self::zero(order);
        x.insert(0, c.into());
        x
    }

    /// The degree-one generator `e_j`, `1 <= j <= order`.
    pub fn generator(order: usize, j: usize) -> Result<Self> {
        if j == 0 || j > order {
            return Err(Error::GeneratorOutOfRange { index: j, order });
        }
        let mut x = Self::zero(order);
        x.insert(1 << (j - 1), Complex64::new(1.0, 0.0));
        Ok(x)
    }

    /// Builds an element from `(mask, coefficient)` pairs; repeated masks add up.
    pub fn from_blades<I>(order: usize, blades: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, Complex64)>,
    {
        check_order(order)?;
        let mut x = Self::zero(order);
        for (mask, c) in blades {
            if (mask as u64) >> order != 0 {
                return Err(Error::Config(format!("blade mask {mask:#b} not below 2^{order}")));
            }
            x.add_to(mask, c);
        }
        Ok(x)
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn blade(&self, mask: u32) -> Complex64 {
        self.blades.get(&mask).copied().unwrap_or_default()
    }

    pub fn blades(&self) -> impl Iterator<Item = (u32, Complex64)> + '_ {
        self.blades.iter().map(|(&m, &c)| (m, c))
    }

    pub fn num_blades(&self) -> usize {
        self.blades.len()
    }

    pub fn is_zero(&self) -> bool {
        self.blades.is_empty()
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.blades.values().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Componentwise maximal deviation from `other`.
    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).max_abs()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    fn insert(&mut self, mask: u32, c: Complex64) {
        if c != Complex64::new(0.0, 0.0) {
            self.blades.insert(mask, c);
        }
    }

    fn add_to(&mut self, mask: u32, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.blades.entry(mask).or_default();
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.blades.remove(&mask);
        }
    }

    fn check_same_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::Config(format!(
                "mismatched Grassmann orders {} and {}",
                self.order, other.order
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.blades {
            out.add_to(m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.blades {
            out.add_to(m, -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let mut acc: BTreeMap<u32, Complex64> = BTreeMap::new();
        for (&ma, &ca) in &self.blades {
            for (&mb, &cb) in &other.blades {
                let s = blade_sign(ma, mb);
                if s != 0.0 {
                    *acc.entry(ma | mb).or_default() += ca * cb * s;
                }
            }
        }
        acc.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Ok(Self { order: self.order, blades: acc })
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        let mut out = Self::zero(self.order());
        for (&m, &v) in &self.blades {
            out.insert(m, v * c);
        }
        out
    }

    /// `self^k` by repeated multiplication.
    pub fn powi(&self, k: usize) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    fn map_blades(&self, f: impl Fn(u32, Complex64) -> Complex64) -> Self {
        let mut out = Self::zero(self.order());
        for (&m, &c) in &self.blades {
            out.insert(m, f(m, c));
        }
        out
    }

    pub fn involution(&self, kind: Involution) -> Self {
        match kind {
            Involution::Star => self.star(),
            Involution::Bar => self.bar(),
            Involution::Adjoint => self.adjoint(),
        }
    }

    pub fn star(&self) -> Self {
        self.map_blades(|m, c| if level(m) % 2 == 1 { -c } else { c })
    }

    pub fn bar(&self) -> Self {
        self.map_blades(|_, c| c.conj())
    }

    pub fn adjoint(&self) -> Self {
        self.map_blades(|m, c| {
            if level(m) % 2 == 1 {
                c.conj() * Complex64::new(0.0, -1.0)
            } else {
                c.conj()
            }
        })
    }

    pub fn decompose(&self, part: Part) -> Self {
        let keep = |m: u32| match part {
            Part::Body => m == 0,
            Part::Soul => m != 0,
            Part::Even => level(m) % 2 == 0,
            Part::Odd => level(m) % 2 == 1,
        };
        let mut out = Self::zero(self.order());
        for (&m, &c) in &self.blades {
            if keep(m) {
                out.insert(m, c);
            }
        }
        out
    }

    pub fn body(&self) -> Complex64 {
        self.blade(0)
    }

    pub fn soul(&self) -> Self {
        self.decompose(Part::Soul)
    }

    pub fn even(&self) -> Self {
        self.decompose(Part::Even)
    }

    pub fn odd(&self) -> Self {
        self.decompose(Part::Odd)
    }

    pub fn is_even(&self) -> bool {
        self.blades.keys().all(|&m| level(m) % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.blades.keys().all(|&m| level(m) % 2 == 1)
    }

    /// Lowest blade level carrying a coefficient above `tol`, if any.
    pub fn lowest_level(&self, tol: f64) -> Option<usize> {
        self.blades
            .iter()
            .filter(|(_, c)| c.norm() > tol)
            .map(|(&m, _)| level(m) as usize)
            .min()
    }

    /// Drops coefficients whose magnitude is at most `threshold`.
    pub fn pruned(&self, threshold: f64) -> Self {
        let mut out = self.clone();
        out.blades.retain(|_, c| c.norm() > threshold);
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        self.inverse_tol(0.0)
    }

    /// Inverse via `b^-1 sum_k (-s/b)^k`; fails when `|body| <= tol`.
    pub fn inverse_tol(&self, tol: f64) -> Result<Self> {
        let b = self.body();
        if b.norm() <= tol || b == Complex64::new(0.0, 0.0) {
            return Err(Error::NotInvertible { element: self.to_string() });
        }
        let ratio = self.soul().scale(-1.0 / b);
        let mut term = Self::one(self.order());
        let mut sum = term.clone();
        for _ in 0..self.order() {
            term = &term * &ratio;
            if term.is_zero() {
                break;
            }
            sum += &term;
        }
        Ok(sum.scale(1.0 / b))
    }

    /// `f(x)` for any element by Taylor expansion about the body. The soul is
    /// nilpotent so the expansion is finite.
    pub fn analytic(&self, f: &AnalyticFn) -> Result<Self> {
        let b = self.body();
        if matches!(f, AnalyticFn::Sqrt) && b == Complex64::new(0.0, 0.0) {
            return Err(Error::NotInvertible { element: self.to_string() });
        }
        let soul = self.soul();
        let mut power = Self::one(self.order());
        let mut sum = Self::zero(self.order());
        for k in 0..=self.order() {
            if power.is_zero() {
                break;
            }
            sum += &power.scale(f.taylor_coefficient(b, k));
            power = &power * &soul;
        }
        Ok(sum)
    }

    /// Like [`analytic`](Self::analytic) but restricted to even elements.
    pub fn analytic_even(&self, f: &AnalyticFn) -> Result<Self> {
        if !self.is_even() {
            return Err(Error::Parity(format!("analytic function of non-even element {self}")));
        }
        self.analytic(f)
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.analytic(&AnalyticFn::Sqrt)
    }

    pub fn exp(&self) -> Self {
        self.analytic(&AnalyticFn::Exp).expect("exp is entire")
    }

    pub fn cosh(&self) -> Self {
        self.analytic(&AnalyticFn::Cosh).expect("cosh is entire")
    }

    pub fn sinh(&self) -> Self {
        self.analytic(&AnalyticFn::Sinh).expect("sinh is entire")
    }

    /// `sqrt(x x‡)` for even `x`.
    pub fn even_norm(&self) -> Result<Self> {
        if !self.is_even() {
            return Err(Error::Parity(format!("even_norm of non-even element {self}")));
        }
        let prod = self * &self.adjoint();
        let b = prod.body();
        if b.re < 0.0 || b.im.abs() > 1e-12 * b.norm().max(1.0) {
            return Err(Error::Domain(format!("x x‡ has body {b}, not a nonnegative real")));
        }
        if prod.is_zero() {
            return Ok(prod);
        }
        prod.analytic(&AnalyticFn::Sqrt)
    }

    /// Berezin integral `∫ x de_j`: each blade containing `e_j` is reordered
    /// so that `e_j` stands rightmost and contributes its cofactor.
    pub fn berezin_integrate(&self, j: usize) -> Result<Self> {
        if j == 0 || j > self.order() {
            return Err(Error::GeneratorOutOfRange { index: j, order: self.order() });
        }
        let bit = 1u32 << (j - 1);
        let mut out = Self::zero(self.order());
        for (&m, &c) in &self.blades {
            if m & bit != 0 {
                let above = (m >> j).count_ones();
                let sign = if above % 2 == 0 { 1.0 } else { -1.0 };
                out.add_to(m & !bit, c * sign);
            }
        }
        Ok(out)
    }

    /// Left Berezin integral `∫ de_j x`, with `de_j` anticommuting with odd
    /// elements so that `∫ de_j e_j = -1`.
    pub fn berezin_integrate_left(&self, j: usize) -> Result<Self> {
        if j == 0 || j > self.order() {
            return Err(Error::GeneratorOutOfRange { index: j, order: self.order() });
        }
        let bit = 1u32 << (j - 1);
        let mut out = Self::zero(self.order());
        for (&m, &c) in &self.blades {
            if m & bit != 0 {
                let below = (m & (bit - 1)).count_ones();
                let sign = if below % 2 == 0 { -1.0 } else { 1.0 };
                out.add_to(m & !bit, c * sign);
            }
        }
        Ok(out)
    }

    /// Algebra homomorphism sending selected generators to the given odd
    /// images; unlisted generators are kept.
    pub fn substitute(&self, images: &[(usize, GrassmannElement)]) -> Result<Self> {
        for (j, img) in images {
            if *j == 0 || *j > self.order() {
                return Err(Error::GeneratorOutOfRange { index: *j, order: self.order() });
            }
            self.check_same_order(img)?;
            if !img.is_odd() {
                return Err(Error::Parity(format!("generator image {img} is not odd")));
            }
        }
        let mut out = Self::zero(self.order());
        for (&m, &c) in &self.blades {
            let mut term = Self::scalar(self.order(), c);
            let mut rest = m;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize + 1;
                rest &= rest - 1;
                let factor = match images.iter().find(|(g, _)| *g == j) {
                    Some((_, img)) => img.clone(),
                    None => Self::generator(self.order(), j)?,
                };
                term = &term * &factor;
            }
            out += &term;
        }
        Ok(out)
    }
}

/// Coordinates for Berezin integration over odd variables that are linear
/// combinations of a fixed set of generators.
#[derive(Debug, Clone)]
pub struct BerezinFrame {
    order: usize,
    slots: Vec<usize>,
    vars: Vec<GrassmannElement>,
    to_slots: Vec<(usize, GrassmannElement)>,
}

impl BerezinFrame {
    /// `vars[i]` must be degree-one elements spanning exactly the generators
    /// in `slots`, with an invertible coefficient matrix.
    pub fn new(slots: Vec<usize>, vars: Vec<GrassmannElement>) -> Result<Self> {
        let k = slots.len();
        if vars.len() != k || k == 0 {
            return Err(Error::Config("Berezin frame needs one variable per slot".into()));
        }
        let order = vars[0].order();
        let mut coeffs = DMatrix::<Complex64>::zeros(k, k);
        for (i, v) in vars.iter().enumerate() {
            for (m, c) in v.blades() {
                if level(m) != 1 {
                    return Err(Error::Parity(format!("frame variable {v} is not degree one")));
                }
                let g = m.trailing_zeros() as usize + 1;
                let col = slots.iter().position(|&s| s == g).ok_or_else(|| {
                    Error::Config(format!("frame variable {v} leaves the slot generators"))
                })?;
                coeffs[(i, col)] = c;
            }
        }
        let inv = coeffs
            .try_inverse()
            .ok_or_else(|| Error::Config("frame variables are linearly dependent".into()))?;
        // e_{slot j} = sum_i inv[(j, i)] v_i, and v_i is represented by slot i.
        let mut to_slots = Vec::with_capacity(k);
        for (j, &g) in slots.iter().enumerate() {
            let mut img = GrassmannElement::zero(order);
            for (i, &gi) in slots.iter().enumerate() {
                img += &GrassmannElement::generator(order, gi)?.scale(inv[(j, i)]);
            }
            to_slots.push((g, img));
        }
        Ok(Self { order, slots, vars, to_slots })
    }

    fn from_slots(&self) -> Vec<(usize, GrassmannElement)> {
        self.slots.iter().copied().zip(self.vars.iter().cloned()).collect()
    }

    /// `∫ x dv_i` (right integration).
    pub fn integrate(&self, x: &GrassmannElement, i: usize) -> Result<GrassmannElement> {
        if x.order() != self.order {
            return Err(Error::Config("frame and element orders differ".into()));
        }
        let y = x.substitute(&self.to_slots)?;
        let z = y.berezin_integrate(self.slots[i])?;
        z.substitute(&self.from_slots())
    }

    /// `∫ dv_i x` (left integration).
    pub fn integrate_left(&self, x: &GrassmannElement, i: usize) -> Result<GrassmannElement> {
        let y = x.substitute(&self.to_slots)?;
        let z = y.berezin_integrate_left(self.slots[i])?;
        z.substitute(&self.from_slots())
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blades.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&m, &c) in &self.blades {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)", c.re, c.im)?;
            let mut rest = m;
            while rest != 0 {
                let j = rest.trailing_zeros() + 1;
                rest &= rest - 1;
                write!(f, "·e{j}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}[{}]", self.order, self)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&GrassmannElement> for &GrassmannElement {
            type Output = GrassmannElement;
            fn $method(self, rhs: &GrassmannElement) -> GrassmannElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<GrassmannElement> for GrassmannElement {
            type Output = GrassmannElement;
            fn $method(self, rhs: GrassmannElement) -> GrassmannElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&GrassmannElement> for GrassmannElement {
            type Output = GrassmannElement;
            fn $method(self, rhs: &GrassmannElement) -> GrassmannElement {
                (&self).$method(rhs)
            }
        }
        impl $tr<GrassmannElement> for &GrassmannElement {
            type Output = GrassmannElement;
            fn $method(self, rhs: GrassmannElement) -> GrassmannElement {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&GrassmannElement> for GrassmannElement {
    fn add_assign(&mut self, rhs: &GrassmannElement) {
        assert_eq!(self.order, rhs.order, "mismatched Grassmann orders");
        for (&m, &c) in &rhs.blades {
            self.add_to(m, c);
        }
    }
}

impl SubAssign<&GrassmannElement> for GrassmannElement {
    fn sub_assign(&mut self, rhs: &GrassmannElement) {
        assert_eq!(self.order, rhs.order, "mismatched Grassmann orders");
        for (&m, &c) in &rhs.blades {
            self.add_to(m, -c);
        }
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        self.scale(-1.0)
    }
}

impl Neg for GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn e(j: usize) -> GrassmannElement {
        GrassmannElement::generator(6, j).unwrap()
    }

    fn s(v: f64) -> GrassmannElement {
        GrassmannElement::scalar(6, v)
    }

    #[test]
    fn generator_products() {
        let e12 = &e(1) * &e(2);
        assert_eq!(e12.blade(0b11), c(1.0, 0.0));
        assert_eq!(e12.num_blades(), 1);
        let e21 = &e(2) * &e(1);
        assert_eq!(e21.blade(0b11), c(-1.0, 0.0));
        assert!((&e(1) * &e(1)).is_zero());
        assert_eq!(&(&s(1.0) + &e(1)) * &(&s(1.0) - &e(1)), s(1.0));
    }

    #[test]
    fn sign_by_inversions() {
        // e1e3 * e2 = -e1e2e3
        assert_eq!(blade_sign(0b101, 0b010), -1.0);
        // e2 * e1e3 = -e1e2e3
        assert_eq!(blade_sign(0b010, 0b101), -1.0);
        assert_eq!(blade_sign(0b011, 0b100), 1.0);
        assert_eq!(blade_sign(0b011, 0b010), 0.0);
    }

    #[test]
    fn mismatched_orders_rejected() {
        let a = GrassmannElement::one(3);
        let b = GrassmannElement::one(4);
        assert!(matches!(a.checked_mul(&b), Err(Error::Config(_))));
        assert!(matches!(a.checked_add(&b), Err(Error::Config(_))));
    }

    #[test]
    fn involutions() {
        let adj = e(1).adjoint();
        assert_eq!(adj, e(1).scale(c(0.0, -1.0)));
        let e12 = &e(1) * &e(2);
        assert_eq!(e12.adjoint(), e12);
        let x = &s(2.0) + &e(1).scale(3.0);
        assert_eq!(x.star(), &s(2.0) - &e(1).scale(3.0));
        let y = e(1).scale(c(1.0, 2.0));
        assert_eq!(y.bar(), e(1).scale(c(1.0, -2.0)));
    }

    #[test]
    fn parts() {
        let e12 = &e(1) * &e(2);
        let x = &s(5.0) + &e12;
        assert_eq!(x.decompose(Part::Body), s(5.0));
        assert_eq!(x.soul(), e12);
        let y = &(&s(1.0) + &e(1)) + &e12;
        assert_eq!(y.odd(), e(1));
        assert_eq!(&y.even() + &y.odd(), y);
    }

    #[test]
    fn inverses() {
        assert_eq!(s(2.0).inverse().unwrap(), s(0.5));
        let e12 = &e(1) * &e(2);
        assert_eq!((&s(1.0) + &e12).inverse().unwrap(), &s(1.0) - &e12);
        assert!(matches!(e(1).inverse(), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn analytic_functions() {
        let e12 = &e(1) * &e(2);
        assert!(s(4.0).sqrt().unwrap().approx_eq(&s(2.0), 1e-15));
        let r = (&s(1.0) + &e12).analytic_even(&AnalyticFn::Sqrt).unwrap();
        assert!(r.approx_eq(&(&s(1.0) + &e12.scale(0.5)), 1e-15));
        assert!(e12.exp().approx_eq(&(&s(1.0) + &e12), 1e-15));
        assert!(matches!(e(1).analytic_even(&AnalyticFn::Exp), Err(Error::Parity(_))));
        assert!(matches!(e12.analytic_even(&AnalyticFn::Sqrt), Err(Error::NotInvertible { .. })));
        let x = &(&s(0.7) + &e12.scale(0.3)) + &(&e(3) * &e(4)).scale(c(0.1, 0.2));
        let sq = x.sqrt().unwrap();
        assert!((&sq * &sq).approx_eq(&x, 1e-14));
        let ch = x.cosh();
        let sh = x.sinh();
        assert!((&(&ch * &ch) - &(&sh * &sh)).approx_eq(&s(1.0), 1e-14));
        let series = x.analytic(&AnalyticFn::Series(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)])).unwrap();
        let direct = &(&s(1.0) + &x.scale(2.0)) + &(&x * &x).scale(3.0);
        assert!(series.approx_eq(&direct, 1e-14));
    }

    #[test]
    fn berezin_basics() {
        assert!(s(1.0).berezin_integrate(1).unwrap().is_zero());
        assert_eq!(e(1).berezin_integrate(1).unwrap(), s(1.0));
        let e12 = &e(1) * &e(2);
        assert_eq!(e12.berezin_integrate(2).unwrap(), e(1));
        assert_eq!(e12.berezin_integrate(1).unwrap(), -e(2));
        assert_eq!(e(1).berezin_integrate_left(1).unwrap(), s(-1.0));
        assert!(matches!(e(1).berezin_integrate(7), Err(Error::GeneratorOutOfRange { .. })));
    }

    #[test]
    fn berezin_two_generator_table() {
        // Exhaustive over L = 2: ∫ x de_j picks the cofactor of e_j moved right.
        let l = 2;
        let g = |j| GrassmannElement::generator(l, j).unwrap();
        let one = GrassmannElement::one(l);
        let table = [
            (one.clone(), 1, GrassmannElement::zero(l)),
            (one.clone(), 2, GrassmannElement::zero(l)),
            (g(1), 1, one.clone()),
            (g(1), 2, GrassmannElement::zero(l)),
            (g(2), 2, one.clone()),
            (&g(1) * &g(2), 2, g(1)),
            (&g(1) * &g(2), 1, -g(2)),
            (&g(2) * &g(1), 2, -g(1)),
        ];
        for (x, j, expect) in table {
            assert_eq!(x.berezin_integrate(j).unwrap(), expect, "∫ {x} de{j}");
        }
    }

    #[test]
    fn even_norms() {
        assert!(s(3.0).even_norm().unwrap().approx_eq(&s(3.0), 1e-15));
        let i = GrassmannElement::scalar(6, c(0.0, 1.0));
        assert!(i.even_norm().unwrap().approx_eq(&s(1.0), 1e-15));
        let e12 = &e(1) * &e(2);
        let x = &s(1.0) + &e12;
        let n = x.even_norm().unwrap();
        assert!((&n * &n).approx_eq(&(&x * &x.adjoint()), 1e-14));
        assert!(matches!(e(1).even_norm(), Err(Error::Parity(_))));
    }

    #[test]
    fn frame_integration() {
        // z = (e1 + i e2)/√2 and z‡ form a frame; ∫∫ z z‡ dz‡ dz = 1.
        let z = (&e(1) + &e(2).scale(c(0.0, 1.0))).scale(1.0 / 2f64.sqrt());
        let zd = z.adjoint();
        let frame = BerezinFrame::new(vec![1, 2], vec![zd.clone(), z.clone()]).unwrap();
        let zz = &z * &zd;
        let inner = frame.integrate(&zz, 0).unwrap();
        assert!(inner.approx_eq(&z, 1e-14));
        let outer = frame.integrate(&inner, 1).unwrap();
        assert!(outer.approx_eq(&s(1.0), 1e-14));
    }

    #[test]
    fn substitution_is_homomorphism() {
        let x = &(&s(1.0) + &e(1)) * &(&e(2) + &e(3).scale(2.0));
        let y = &e(4) + &(&e(2) * &e(5));
        let imgs = vec![(1, &e(2) + &e(3)), (3, e(6).scale(c(0.0, 1.0)))];
        let lhs = (&x * &y).substitute(&imgs).unwrap();
        let rhs = &x.substitute(&imgs).unwrap() * &y.substitute(&imgs).unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-14));
    }
}
