//! Dense matrices and vectors with Grassmann entries, stored blade-major:
//! one complex matrix per blade mask. Products use the blade sign rule, so
//! a matrix product here is the ordinary product over the Grassmann ring.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::{blade_sign, level, GrassmannElement};

type C = Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct GMatrix {
    order: usize,
    rows: usize,
    cols: usize,
    blades: BTreeMap<u32, DMatrix<C>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GVector {
    order: usize,
    len: usize,
    blades: BTreeMap<u32, DVector<C>>,
}

fn is_zero_slice(s: &[C]) -> bool {
    s.iter().all(|c| *c == C::new(0.0, 0.0))
}

impl GMatrix {
    pub fn zeros(order: usize, rows: usize, cols: usize) -> Self {
        Self { order, rows, cols, blades: BTreeMap::new() }
    }

    pub fn identity(order: usize, dim: usize) -> Self {
        Self::from_body(order, DMatrix::identity(dim, dim))
    }

    pub fn from_body(order: usize, body: DMatrix<C>) -> Self {
        let (rows, cols) = body.shape();
        let mut out = Self::zeros(order, rows, cols);
        out.set_blade(0, body);
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn blade(&self, mask: u32) -> Option<&DMatrix<C>> {
        self.blades.get(&mask)
    }

    pub fn blades(&self) -> impl Iterator<Item = (u32, &DMatrix<C>)> {
        self.blades.iter().map(|(&m, b)| (m, b))
    }

    pub fn body(&self) -> DMatrix<C> {
        self.blades.get(&0).cloned().unwrap_or_else(|| DMatrix::zeros(self.rows, self.cols))
    }

    pub fn soul(&self) -> Self {
        let mut out = self.clone();
        out.blades.remove(&0);
        out
    }

    pub fn set_blade(&mut self, mask: u32, m: DMatrix<C>) {
        assert_eq!(m.shape(), (self.rows, self.cols));
        if is_zero_slice(m.as_slice()) {
            self.blades.remove(&mask);
        } else {
            self.blades.insert(mask, m);
        }
    }

    fn blade_mut(&mut self, mask: u32) -> &mut DMatrix<C> {
        let (r, c) = (self.rows, self.cols);
        self.blades.entry(mask).or_insert_with(|| DMatrix::zeros(r, c))
    }

    fn clean(&mut self) {
        self.blades.retain(|_, m| !is_zero_slice(m.as_slice()));
    }

    pub fn entry(&self, i: usize, j: usize) -> GrassmannElement {
        let blades = self.blades.iter().map(|(&m, b)| (m, b[(i, j)]));
        GrassmannElement::from_blades(self.order, blades).expect("masks are valid")
    }

    pub fn set_entry(&mut self, i: usize, j: usize, x: &GrassmannElement) {
        for b in self.blades.values_mut() {
            b[(i, j)] = C::new(0.0, 0.0);
        }
        for (m, c) in x.blades() {
            self.blade_mut(m)[(i, j)] = c;
        }
        self.clean();
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(-1.0, other)
    }

    /// `self + s · other`.
    pub fn axpy(&self, s: f64, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix shapes differ");
        let mut out = self.clone();
        for (&m, b) in &other.blades {
            let t = out.blade_mut(m);
            *t += b * C::new(s, 0.0);
        }
        out.clean();
        out
    }

    pub fn scale(&self, c: C) -> Self {
        let mut out = self.clone();
        for b in out.blades.values_mut() {
            *b *= c;
        }
        out.clean();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes incompatible");
        let mut out = Self::zeros(self.order, self.rows, other.cols);
        for (&ma, a) in &self.blades {
            for (&mb, b) in &other.blades {
                let s = blade_sign(ma, mb);
                if s == 0.0 {
                    continue;
                }
                out.blade_mut(ma | mb).gemm(C::new(s, 0.0), a, b, C::new(1.0, 0.0));
            }
        }
        out.clean();
        out
    }

    pub fn mul_vec(&self, v: &GVector) -> GVector {
        assert_eq!(self.cols, v.len, "matrix and vector sizes differ");
        let mut out = GVector::zeros(self.order, self.rows);
        for (&ma, a) in &self.blades {
            for (&mb, b) in &v.blades {
                let s = blade_sign(ma, mb);
                if s == 0.0 {
                    continue;
                }
                out.blade_mut(ma | mb).gemv(C::new(s, 0.0), a, b, C::new(1.0, 0.0));
            }
        }
        out.clean();
        out
    }

    /// Each entry multiplied on the left by `c`.
    pub fn left_scale(&self, c: &GrassmannElement) -> Self {
        let mut out = Self::zeros(self.order, self.rows, self.cols);
        for (mc, cc) in c.blades() {
            for (&mb, b) in &self.blades {
                let s = blade_sign(mc, mb);
                if s != 0.0 {
                    *out.blade_mut(mc | mb) += b * (cc * s);
                }
            }
        }
        out.clean();
        out
    }

    /// Transpose with every entry replaced by its Grassmann adjoint.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.order, self.cols, self.rows);
        for (&m, b) in &self.blades {
            let mut t = b.adjoint();
            if level(m) % 2 == 1 {
                t *= C::new(0.0, -1.0);
            }
            out.blades.insert(m, t);
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.blades.values().flat_map(|b| b.iter()).fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Rows and columns restricted to the given index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.order, rows.len(), cols.len());
        for (&m, b) in &self.blades {
            let t = DMatrix::from_fn(rows.len(), cols.len(), |i, j| b[(rows[i], cols[j])]);
            out.set_blade(m, t);
        }
        out
    }

    /// Inverse via the body inverse and a Neumann series in the nilpotent soul.
    pub fn try_inverse(&self) -> Result<Self> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let body_inv = self
            .body()
            .try_inverse()
            .ok_or_else(|| Error::NotInvertible { element: "operator matrix with singular body".into() })?;
        let b_inv = Self::from_body(self.order, body_inv);
        let step = b_inv.mul(&self.soul()).scale(C::new(-1.0, 0.0));
        let mut term = Self::identity(self.order, self.rows);
        let mut sum = term.clone();
        for _ in 0..self.order {
            term = term.mul(&step);
            if term.blades.is_empty() {
                break;
            }
            sum = sum.add(&term);
        }
        Ok(sum.mul(&b_inv))
    }
}

impl GVector {
    pub fn zeros(order: usize, len: usize) -> Self {
        Self { order, len, blades: BTreeMap::new() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.blades.is_empty()
    }

    pub fn blade(&self, mask: u32) -> Option<&DVector<C>> {
        self.blades.get(&mask)
    }

    pub fn blades(&self) -> impl Iterator<Item = (u32, &DVector<C>)> {
        self.blades.iter().map(|(&m, b)| (m, b))
    }

    pub fn set_blade(&mut self, mask: u32, v: DVector<C>) {
        assert_eq!(v.len(), self.len);
        if is_zero_slice(v.as_slice()) {
            self.blades.remove(&mask);
        } else {
            self.blades.insert(mask, v);
        }
    }

    pub(crate) fn blade_mut(&mut self, mask: u32) -> &mut DVector<C> {
        let len = self.len;
        self.blades.entry(mask).or_insert_with(|| DVector::zeros(len))
    }

    pub(crate) fn clean(&mut self) {
        self.blades.retain(|_, v| !is_zero_slice(v.as_slice()));
    }

    pub fn entry(&self, i: usize) -> GrassmannElement {
        let blades = self.blades.iter().map(|(&m, b)| (m, b[i]));
        GrassmannElement::from_blades(self.order, blades).expect("masks are valid")
    }

    pub fn set_entry(&mut self, i: usize, x: &GrassmannElement) {
        for b in self.blades.values_mut() {
            b[i] = C::new(0.0, 0.0);
        }
        for (m, c) in x.blades() {
            self.blade_mut(m)[i] = c;
        }
        self.clean();
    }

    pub fn axpy(&self, s: C, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "vector sizes differ");
        let mut out = self.clone();
        for (&m, b) in &other.blades {
            *out.blade_mut(m) += b * s;
        }
        out.clean();
        out
    }

    /// Each entry multiplied on the right by `c`.
    pub fn right_scale(&self, c: &GrassmannElement) -> Self {
        let mut out = Self::zeros(self.order, self.len);
        for (&mb, b) in &self.blades {
            for (mc, cc) in c.blades() {
                let s = blade_sign(mb, mc);
                if s != 0.0 {
                    *out.blade_mut(mb | mc) += b * (cc * s);
                }
            }
        }
        out.clean();
        out
    }

    /// Each entry multiplied on the left by `c`.
    pub fn left_scale(&self, c: &GrassmannElement) -> Self {
        let mut out = Self::zeros(self.order, self.len);
        for (mc, cc) in c.blades() {
            for (&mb, b) in &self.blades {
                let s = blade_sign(mc, mb);
                if s != 0.0 {
                    *out.blade_mut(mc | mb) += b * (cc * s);
                }
            }
        }
        out.clean();
        out
    }

    /// `sum_i self_i‡ other_i`.
    pub fn dot_adjoint(&self, other: &Self) -> GrassmannElement {
        let mut acc: BTreeMap<u32, C> = BTreeMap::new();
        for (&ma, a) in &self.blades {
            let phase = if level(ma) % 2 == 1 { C::new(0.0, -1.0) } else { C::new(1.0, 0.0) };
            for (&mb, b) in &other.blades {
                let s = blade_sign(ma, mb);
                if s != 0.0 {
                    *acc.entry(ma | mb).or_default() += a.dotc(b) * phase * s;
                }
            }
        }
        GrassmannElement::from_blades(self.order, acc).expect("masks are valid")
    }

    pub fn max_abs(&self) -> f64 {
        self.blades.values().flat_map(|b| b.iter()).fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Largest coefficient magnitude over the listed indices.
    pub fn max_abs_on(&self, idx: &[usize]) -> f64 {
        let mut m: f64 = 0.0;
        for b in self.blades.values() {
            for &i in idx {
                m = m.max(b[i].norm());
            }
        }
        m
    }
}

#[cfg(test)]
impl GMatrix {
    pub(crate) fn num_blades_for_test(&self) -> usize {
        self.blades.len()
    }
}
