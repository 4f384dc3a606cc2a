//! Formal operator polynomials in `a, a†, b, b†, I` with Grassmann
//! coefficients standing to the left of each word.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::grassmann::GrassmannElement;

/// One generator of the superalgebra, or the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    Ad,
    B,
    Bd,
    I,
}

impl Letter {
    pub const GENERATORS: [Letter; 5] = [Letter::A, Letter::Ad, Letter::B, Letter::Bd, Letter::I];

    pub fn is_odd(self) -> bool {
        matches!(self, Letter::B | Letter::Bd)
    }

    pub fn adjoint(self) -> Letter {
        match self {
            Letter::A => Letter::Ad,
            Letter::Ad => Letter::A,
            Letter::B => Letter::Bd,
            Letter::Bd => Letter::B,
            Letter::I => Letter::I,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Letter::A => "a",
            Letter::Ad => "a†",
            Letter::B => "b",
            Letter::Bd => "b†",
            Letter::I => "I",
        }
    }
}

/// Number of odd letters in a word, mod 2.
pub fn word_parity(word: &[Letter]) -> usize {
    word.iter().filter(|l| l.is_odd()).count() % 2
}

/// `coeff · word`, the word acting first with its rightmost letter.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: GrassmannElement,
    pub word: Vec<Letter>,
}

impl Term {
    pub fn word_parity(&self) -> usize {
        word_parity(&self.word)
    }

    /// Total parity, or `None` when the coefficient is not homogeneous.
    pub fn parity(&self) -> Option<usize> {
        let c = if self.coeff.is_even() {
            0
        } else if self.coeff.is_odd() {
            1
        } else {
            return None;
        };
        Some((c + self.word_parity()) % 2)
    }
}

/// A sum of terms. Words are kept exactly as written; nothing is normal ordered.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperOperatorExpr {
    order: usize,
    terms: Vec<Term>,
}

impl SuperOperatorExpr {
    pub fn zero(order: usize) -> Self {
        Self { order, terms: Vec::new() }
    }

    pub fn identity(order: usize) -> Self {
        Self::word(order, &[Letter::I])
    }

    pub fn word(order: usize, word: &[Letter]) -> Self {
        Self::term(GrassmannElement::one(order), word)
    }

    pub fn letter(order: usize, l: Letter) -> Self {
        Self::word(order, &[l])
    }

    pub fn term(coeff: GrassmannElement, word: &[Letter]) -> Self {
        let order = coeff.order();
        let mut out = Self::zero(order);
        if !coeff.is_zero() {
            out.terms.push(Term { coeff, word: word.to_vec() });
        }
        out
    }

    pub fn a(order: usize) -> Self {
        Self::letter(order, Letter::A)
    }

    pub fn ad(order: usize) -> Self {
        Self::letter(order, Letter::Ad)
    }

    pub fn b(order: usize) -> Self {
        Self::letter(order, Letter::B)
    }

    pub fn bd(order: usize) -> Self {
        Self::letter(order, Letter::Bd)
    }

    /// `c · I`.
    pub fn scalar(c: GrassmannElement) -> Self {
        Self::term(c, &[Letter::I])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `c · self`.
    pub fn scale_left(&self, c: &GrassmannElement) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: c * &t.coeff, word: t.word.clone() })
            .filter(|t| !t.coeff.is_zero())
            .collect();
        Self { order: self.order, terms }
    }

    /// `self · c`: the coefficient is moved left across each word, picking up
    /// a star when the word is odd.
    pub fn scale_right(&self, c: &GrassmannElement) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let moved = if t.word_parity() == 1 { c.star() } else { c.clone() };
                Term { coeff: &t.coeff * &moved, word: t.word.clone() }
            })
            .filter(|t| !t.coeff.is_zero())
            .collect();
        Self { order: self.order, terms }
    }

    /// Operator product `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "mismatched Grassmann orders");
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for t1 in &self.terms {
            let odd = t1.word_parity() == 1;
            for t2 in &other.terms {
                let passed = if odd { t2.coeff.star() } else { t2.coeff.clone() };
                let coeff = &t1.coeff * &passed;
                if coeff.is_zero() {
                    continue;
                }
                let mut word = t1.word.clone();
                word.extend_from_slice(&t2.word);
                terms.push(Term { coeff, word });
            }
        }
        Self { order: self.order, terms }
    }

    pub fn powi(&self, k: usize) -> Self {
        let mut out = Self::identity(self.order);
        for _ in 0..k {
            out = out.compose(self);
        }
        out
    }

    /// Formal adjoint: reverse each word, swap daggers, adjoint the
    /// coefficient and move it back to the left of the reversed word.
    pub fn adjoint(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let word: Vec<Letter> = t.word.iter().rev().map(|l| l.adjoint()).collect();
                let c = t.coeff.adjoint();
                let coeff = if word_parity(&word) == 1 { c.star() } else { c };
                Term { coeff, word }
            })
            .collect();
        Self { order: self.order, terms }
    }

    /// `[x, y} = xy - (-1)^{p_x p_y} yx` for homogeneous operands.
    pub fn supercommutator(&self, other: &Self) -> Self {
        let sign = match (self.parity(), other.parity()) {
            (Some(1), Some(1)) => -1.0,
            _ => 1.0,
        };
        let yx = other.compose(self);
        &self.compose(other) - &yx.scale_left(&GrassmannElement::scalar(self.order, sign))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &self.compose(other) - &other.compose(self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &self.compose(other) + &other.compose(self)
    }

    /// Common parity of all terms, if there is one.
    pub fn parity(&self) -> Option<usize> {
        let mut p = None;
        for t in &self.terms {
            let tp = t.parity()?;
            match p {
                None => p = Some(tp),
                Some(q) if q != tp => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(0))
    }

    /// `sum_k c_k self^k`, truncated after the given coefficients.
    pub fn polynomial(&self, coeffs: &[f64]) -> Self {
        let mut out = Self::zero(self.order);
        let mut power = Self::identity(self.order);
        for (k, &c) in coeffs.iter().enumerate() {
            if k > 0 {
                power = power.compose(self);
            }
            if c != 0.0 {
                out = &out + &power.scale_left(&GrassmannElement::scalar(self.order, c));
            }
        }
        out
    }
}

impl fmt::Display for SuperOperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{}]", t.coeff)?;
            for l in &t.word {
                write!(f, " {}", l.symbol())?;
            }
        }
        Ok(())
    }
}

impl Add<&SuperOperatorExpr> for &SuperOperatorExpr {
    type Output = SuperOperatorExpr;
    fn add(self, rhs: &SuperOperatorExpr) -> SuperOperatorExpr {
        assert_eq!(self.order, rhs.order, "mismatched Grassmann orders");
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        SuperOperatorExpr { order: self.order, terms }
    }
}

impl Sub<&SuperOperatorExpr> for &SuperOperatorExpr {
    type Output = SuperOperatorExpr;
    fn sub(self, rhs: &SuperOperatorExpr) -> SuperOperatorExpr {
        self + &(-rhs)
    }
}

impl Neg for &SuperOperatorExpr {
    type Output = SuperOperatorExpr;
    fn neg(self) -> SuperOperatorExpr {
        self.scale_left(&GrassmannElement::scalar(self.order, -1.0))
    }
}

impl Mul<&SuperOperatorExpr> for &SuperOperatorExpr {
    type Output = SuperOperatorExpr;
    fn mul(self, rhs: &SuperOperatorExpr) -> SuperOperatorExpr {
        self.compose(rhs)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $method:ident) => {
        impl $tr<SuperOperatorExpr> for SuperOperatorExpr {
            type Output = SuperOperatorExpr;
            fn $method(self, rhs: SuperOperatorExpr) -> SuperOperatorExpr {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&SuperOperatorExpr> for SuperOperatorExpr {
            type Output = SuperOperatorExpr;
            fn $method(self, rhs: &SuperOperatorExpr) -> SuperOperatorExpr {
                (&self).$method(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for SuperOperatorExpr {
    type Output = SuperOperatorExpr;
    fn neg(self) -> SuperOperatorExpr {
        -&self
    }
}
