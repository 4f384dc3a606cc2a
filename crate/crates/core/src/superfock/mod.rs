//! The truncated graded Fock space of the Heisenberg–Weyl superalgebra
//! generated by `a, a†` (even) and `b, b†` (odd).
//!
//! Basis kets are `|n;->` (even) and `|n;+>` (odd) for `0 <= n <= cutoff`.
//! Levels above `cutoff - guard` form the guard band: raising operators
//! corrupt them, so every identity check looks only below it.

mod expr;
mod linalg;
mod state;

pub use expr::{word_parity, Letter, SuperOperatorExpr, Term};
pub use linalg::{GMatrix, GVector};
pub use state::{apply_word, residual, SuperState};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::{level, GrassmannElement, MAX_ORDER};

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    /// `|n;->`, even.
    Minus,
    /// `|n;+>`, odd.
    Plus,
}

impl Sector {
    pub fn parity(self) -> usize {
        match self {
            Sector::Minus => 0,
            Sector::Plus => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sector::Minus => "-",
            Sector::Plus => "+",
        }
    }
}

/// Grassmann order, cutoff and guard shared by the states and operators of
/// one computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    pub order: usize,
    pub cutoff: usize,
    pub guard: usize,
}

impl FockSpace {
    pub fn new(order: usize, cutoff: usize, guard: usize) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::Config(format!("Grassmann order {order} outside 1..={MAX_ORDER}")));
        }
        if guard >= cutoff {
            return Err(Error::Config(format!("guard {guard} must be below cutoff {cutoff}")));
        }
        Ok(Self { order, cutoff, guard })
    }

    pub fn dim(&self) -> usize {
        2 * (self.cutoff + 1)
    }

    /// Highest trusted level, `cutoff - guard`.
    pub fn band(&self) -> usize {
        self.cutoff - self.guard
    }

    pub fn index(&self, n: usize, sector: Sector) -> usize {
        debug_assert!(n <= self.cutoff);
        sector.parity() * (self.cutoff + 1) + n
    }

    pub fn label(&self, i: usize) -> (usize, Sector) {
        if i <= self.cutoff {
            (i, Sector::Minus)
        } else {
            (i - self.cutoff - 1, Sector::Plus)
        }
    }

    pub fn sector_indices(&self, sector: Sector) -> Vec<usize> {
        (0..=self.cutoff).map(|n| self.index(n, sector)).collect()
    }

    /// Indices of both sectors with `n <= band`.
    pub fn band_indices(&self) -> Vec<usize> {
        self.indices_upto(self.band())
    }

    pub fn indices_upto(&self, top: usize) -> Vec<usize> {
        let top = top.min(self.cutoff);
        let mut v: Vec<usize> = (0..=top).map(|n| self.index(n, Sector::Minus)).collect();
        v.extend((0..=top).map(|n| self.index(n, Sector::Plus)));
        v
    }

    pub fn zero_state(&self) -> SuperState {
        SuperState::zero(*self)
    }

    pub fn basis(&self, n: usize, sector: Sector) -> SuperState {
        SuperState::basis(*self, n, sector)
    }

    pub fn vacuum(&self) -> SuperState {
        self.basis(0, Sector::Minus)
    }

    pub fn one(&self) -> GrassmannElement {
        GrassmannElement::one(self.order)
    }

    pub fn scalar(&self, c: impl Into<C>) -> GrassmannElement {
        GrassmannElement::scalar(self.order, c)
    }

    /// Numeric matrix of a single letter.
    pub fn letter_matrix(&self, letter: Letter) -> DMatrix<C> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for sector in [Sector::Minus, Sector::Plus] {
            for n in 0..=self.cutoff {
                let k = self.index(n, sector);
                match letter {
                    Letter::I => m[(k, k)] = C::new(1.0, 0.0),
                    Letter::A if n > 0 => {
                        m[(self.index(n - 1, sector), k)] = C::new((n as f64).sqrt(), 0.0)
                    }
                    Letter::Ad if n < self.cutoff => {
                        m[(self.index(n + 1, sector), k)] = C::new(((n + 1) as f64).sqrt(), 0.0)
                    }
                    Letter::B if sector == Sector::Plus => {
                        m[(self.index(n, Sector::Minus), k)] = C::new(1.0, 0.0)
                    }
                    Letter::Bd if sector == Sector::Minus => {
                        m[(self.index(n, Sector::Plus), k)] = C::new(1.0, 0.0)
                    }
                    _ => {}
                }
            }
        }
        m
    }

    pub fn word_matrix(&self, word: &[Letter]) -> DMatrix<C> {
        let mut m = DMatrix::identity(self.dim(), self.dim());
        for &l in word {
            if l != Letter::I {
                m = m * self.letter_matrix(l);
            }
        }
        m
    }

    /// Realizes an expression as a Grassmann matrix on this truncation.
    pub fn realize(&self, expr: &SuperOperatorExpr) -> OperatorMatrix {
        assert_eq!(expr.order(), self.order, "expression order differs from the space");
        let d = self.dim();
        let mut out = GMatrix::zeros(self.order, d, d);
        let mut plus_sign = DMatrix::<C>::identity(d, d);
        for k in self.sector_indices(Sector::Plus) {
            plus_sign[(k, k)] = C::new(-1.0, 0.0);
        }
        for term in expr.terms() {
            let w = self.word_matrix(&term.word);
            let signed = &plus_sign * &w;
            let mut t = GMatrix::zeros(self.order, d, d);
            for (m, c) in term.coeff.blades() {
                // Term c·W acts on right-standing coefficients as c^(p_row) W.
                let base = if level(m) % 2 == 1 { &signed } else { &w };
                t.set_blade(m, base * c);
            }
            out = out.add(&t);
        }
        OperatorMatrix { space: *self, matrix: out, source: Some(expr.clone()) }
    }

    pub fn identity(&self) -> OperatorMatrix {
        OperatorMatrix {
            space: *self,
            matrix: GMatrix::identity(self.order, self.dim()),
            source: Some(SuperOperatorExpr::identity(self.order)),
        }
    }

    /// `exp(expr)` on this truncation.
    pub fn exp(&self, expr: &SuperOperatorExpr) -> Result<OperatorMatrix> {
        let mut m = self.realize(expr).exp()?;
        m.source = Some(expr.clone());
        Ok(m)
    }
}

/// Realizes `expr` on a fresh space with the given cutoff.
pub fn realize_matrix(expr: &SuperOperatorExpr, space: FockSpace) -> OperatorMatrix {
    space.realize(expr)
}

pub fn operator_exp(expr: &SuperOperatorExpr, space: FockSpace) -> Result<OperatorMatrix> {
    space.exp(expr)
}

const EXP_MAX_TERMS: usize = 200;

/// An operator on the truncated space, stored in the right-standing
/// coefficient picture where it acts as a plain Grassmann matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    space: FockSpace,
    matrix: GMatrix,
    pub source: Option<SuperOperatorExpr>,
}

impl OperatorMatrix {
    pub fn from_matrix(space: FockSpace, matrix: GMatrix) -> Self {
        assert_eq!(matrix.shape(), (space.dim(), space.dim()));
        Self { space, matrix, source: None }
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn matrix(&self) -> &GMatrix {
        &self.matrix
    }

    /// Left-standing coefficient of `|row>` in `self |col>`.
    pub fn entry(&self, row: usize, col: usize) -> GrassmannElement {
        let e = self.matrix.entry(row, col);
        match self.space.label(row).1 {
            Sector::Minus => e,
            Sector::Plus => e.star(),
        }
    }

    pub fn apply(&self, psi: &SuperState) -> SuperState {
        assert_eq!(self.space, psi.space(), "operator and state spaces differ");
        SuperState::from_right(self.space, self.matrix.mul_vec(psi.right()))
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::from_matrix(self.space, self.matrix.mul(&other.matrix))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_matrix(self.space, self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_matrix(self.space, self.matrix.sub(&other.matrix))
    }

    pub fn scale(&self, c: impl Into<C>) -> Self {
        Self::from_matrix(self.space, self.matrix.scale(c.into()))
    }

    /// `c · self` for a Grassmann coefficient `c`.
    pub fn scale_left(&self, c: &GrassmannElement) -> Self {
        let coeff = self.space.realize(&SuperOperatorExpr::scalar(c.clone()));
        coeff.compose(self)
    }

    /// Superadjoint: transpose with adjointed entries.
    pub fn adjoint(&self) -> Self {
        Self::from_matrix(self.space, self.matrix.adjoint())
    }

    pub fn try_inverse(&self) -> Result<Self> {
        Ok(Self::from_matrix(self.space, self.matrix.try_inverse()?))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self.compose(other).add(&other.compose(self))
    }

    /// Largest entry over rows and columns with `n <= top`.
    pub fn max_abs_upto(&self, top: usize) -> f64 {
        let idx = self.space.indices_upto(top);
        self.matrix.select(&idx, &idx).max_abs()
    }

    pub fn band_max_abs(&self) -> f64 {
        self.max_abs_upto(self.space.band())
    }

    /// Largest entry deviation from `other` below the guard band.
    pub fn band_distance(&self, other: &Self) -> f64 {
        self.sub(other).band_max_abs()
    }

    /// Taylor series with scaling and squaring. The scaling is driven by
    /// the Frobenius norm of the body, an upper bound on its spectral norm;
    /// purely nilpotent exponents need no scaling and terminate exactly.
    pub fn exp(&self) -> Result<Self> {
        let body_norm = self.matrix.body().norm();
        let mut squarings = 0;
        while body_norm / 2f64.powi(squarings) > 0.5 {
            squarings += 1;
        }
        let scaled = self.matrix.scale(C::new(0.5f64.powi(squarings), 0.0));
        let d = self.space.dim();
        let mut term = GMatrix::identity(self.space.order, d);
        let mut sum = term.clone();
        let mut converged = false;
        let mut last = 0.0;
        for k in 1..=EXP_MAX_TERMS {
            term = term.mul(&scaled).scale(C::new(1.0 / k as f64, 0.0));
            last = term.max_abs();
            if last == 0.0 {
                converged = true;
                break;
            }
            sum = sum.add(&term);
            if k > self.space.order && last <= 1e-17 * sum.max_abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence { iterations: EXP_MAX_TERMS, last_term: last });
        }
        for _ in 0..squarings {
            sum = sum.mul(&sum);
        }
        Ok(Self { space: self.space, matrix: sum, source: None })
    }
}

/// Per-relation maximal deviation, evaluated below the guard band.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub entries: Vec<(String, f64)>,
}

impl RelationReport {
    pub fn max_deviation(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, (_, d)| m.max(*d))
    }
}

fn supercommutator(x: &OperatorMatrix, px: usize, y: &OperatorMatrix, py: usize) -> OperatorMatrix {
    if px * py == 1 {
        x.anticommutator(y)
    } else {
        x.commutator(y)
    }
}

/// Checks the defining (super)commutation relations, nilpotency of the odd
/// generators and the graded Jacobi identity on all generator triples.
pub fn check_relations(space: FockSpace) -> RelationReport {
    let gens: Vec<(Letter, OperatorMatrix)> = Letter::GENERATORS
        .iter()
        .map(|&l| (l, space.realize(&SuperOperatorExpr::letter(space.order, l))))
        .collect();
    let get = |l: Letter| &gens.iter().find(|(g, _)| *g == l).unwrap().1;
    let id = space.identity();
    let zero = OperatorMatrix::from_matrix(space, GMatrix::zeros(space.order, space.dim(), space.dim()));
    let dev = |m: &OperatorMatrix, target: &OperatorMatrix| m.band_distance(target);
    let (a, ad, b, bd) = (get(Letter::A), get(Letter::Ad), get(Letter::B), get(Letter::Bd));
    let mut entries = vec![
        ("[a,a†] = I".to_string(), dev(&a.commutator(ad), &id)),
        ("{b,b†} = I".to_string(), dev(&b.anticommutator(bd), &id)),
        ("[a,b] = 0".to_string(), dev(&a.commutator(b), &zero)),
        ("[a,b†] = 0".to_string(), dev(&a.commutator(bd), &zero)),
        ("[a†,b] = 0".to_string(), dev(&ad.commutator(b), &zero)),
        ("[a†,b†] = 0".to_string(), dev(&ad.commutator(bd), &zero)),
        ("b² = 0".to_string(), dev(&b.compose(b), &zero)),
        ("(b†)² = 0".to_string(), dev(&bd.compose(bd), &zero)),
    ];
    let p = |l: Letter| usize::from(l.is_odd());
    let mut jacobi: f64 = 0.0;
    for (x, mx) in &gens {
        for (y, my) in &gens {
            for (z, mz) in &gens {
                let t1 = supercommutator(mx, p(*x), &supercommutator(my, p(*y), mz, p(*z)), (p(*y) + p(*z)) % 2);
                let t2 = supercommutator(my, p(*y), &supercommutator(mz, p(*z), mx, p(*x)), (p(*z) + p(*x)) % 2);
                let t3 = supercommutator(mz, p(*z), &supercommutator(mx, p(*x), my, p(*y)), (p(*x) + p(*y)) % 2);
                let sign = |u: usize, v: usize| if u * v == 1 { -1.0 } else { 1.0 };
                let total = t1
                    .scale(sign(p(*x), p(*z)))
                    .add(&t2.scale(sign(p(*y), p(*x))))
                    .add(&t3.scale(sign(p(*z), p(*y))));
                jacobi = jacobi.max(total.band_max_abs());
            }
        }
    }
    entries.push(("graded Jacobi".to_string(), jacobi));
    RelationReport { entries }
}
