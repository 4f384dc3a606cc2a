//! Independent solver for `(expr - Z) psi = 0`: solve the body system, then
//! lift the solution blade by blade.
//!
//! Writing `M = sum_m M_m e_m` and `x = sum_b x_b e_b` in the right-standing
//! coefficient picture, the blade `k` of `M x` is
//! `M_0 x_k + sum_{b < k} sign(k\b, b) M_(k\b) x_b`. Each level therefore asks
//! `M_0 x_k = r_k` with `r_k` fixed by the lower blades: solvable iff `r_k`
//! is orthogonal to the left null space of `M_0`, in which case
//! `x_k = pinv(M_0) r_k + N e_k` with free `e_k`. All free vectors are
//! collected in one parameter vector and the solvability conditions become
//! linear constraints on it.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::{blade_sign, level, GrassmannElement};
use crate::superfock::{FockSpace, GVector, SuperOperatorExpr, SuperState};

type C = Complex64;

const RANK_TOL: f64 = 1e-9;

/// Orthonormal basis of the null space of `a` (columns).
pub(crate) fn null_space(a: &DMatrix<C>, tol: f64) -> DMatrix<C> {
    let (m, n) = a.shape();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    if m == 0 {
        return DMatrix::identity(n, n);
    }
    // Pad to at least n rows so the SVD returns a full right basis.
    let padded = if m < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cut = tol * smax.max(1.0);
    let keep: Vec<usize> = (0..n).filter(|&i| svd.singular_values[i] <= cut).collect();
    let mut out = DMatrix::zeros(n, keep.len());
    for (c, &i) in keep.iter().enumerate() {
        for r in 0..n {
            out[(r, c)] = vt[(i, r)].conj();
        }
    }
    out
}

/// Moore–Penrose pseudo-inverse with the same rank cut.
fn pinv(a: &DMatrix<C>, tol: f64) -> DMatrix<C> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return DMatrix::zeros(n, m);
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    svd.pseudo_inverse(tol * smax.max(1.0)).expect("both factors computed")
}

fn rank(a: &DMatrix<C>, tol: f64) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let s = a.clone().singular_values();
    let smax = s.iter().cloned().fold(0.0, f64::max);
    s.iter().filter(|&&x| x > tol * smax.max(1.0)).count()
}

/// Result of the lift: a basis of solutions and the levels at which the
/// solvability conditions cut down the admissible body data.
#[derive(Debug, Clone)]
pub struct OracleSolution {
    pub space: FockSpace,
    /// Highest level among the unknowns.
    pub top: usize,
    /// One minimal-norm solution per independent body direction.
    pub states: Vec<SuperState>,
    /// Blade levels whose conditions reduced the body dimension.
    pub constraint_levels: Vec<usize>,
    /// Dimension of the admissible body data.
    pub body_dimension: usize,
    cols: Vec<usize>,
    masks: Vec<u32>,
    /// Every solution, stacked blade by blade, is a combination of these columns.
    span: DMatrix<C>,
}

impl OracleSolution {
    fn stacked(&self, psi: &SuperState) -> DVec {
        let d = self.cols.len();
        let mut v = DVec::zeros(self.masks.len() * d);
        for (bi, &m) in self.masks.iter().enumerate() {
            if let Some(b) = psi.right().blade(m) {
                for (ci, &c) in self.cols.iter().enumerate() {
                    v[bi * d + ci] = b[c];
                }
            }
        }
        v
    }

    /// Closest solution to `psi` over levels `<= top` and the largest
    /// coefficient deviation from it.
    pub fn project(&self, psi: &SuperState) -> (SuperState, f64) {
        let v = self.stacked(psi);
        let fit = if self.span.ncols() == 0 {
            DVec::zeros(v.len())
        } else {
            let coef = pinv(&self.span, 1e-12) * &v;
            &self.span * coef
        };
        let dev = (&fit - &v).iter().map(|c| c.norm()).fold(0.0, f64::max);
        (self.unstack(&fit), dev)
    }

    /// Whether `psi` solves the equation up to `tol` below `top`.
    pub fn contains(&self, psi: &SuperState, tol: f64) -> bool {
        self.project(psi).1 <= tol
    }

    fn unstack(&self, v: &DVec) -> SuperState {
        let d = self.cols.len();
        let mut g = GVector::zeros(self.space.order, self.space.dim());
        for (bi, &m) in self.masks.iter().enumerate() {
            let t = g.blade_mut(m);
            for (ci, &c) in self.cols.iter().enumerate() {
                t[c] = v[bi * d + ci];
            }
        }
        g.clean();
        SuperState::from_right(self.space, g)
    }
}

type DVec = nalgebra::DVector<C>;

/// Solves `(expr - Z) psi = 0` on the levels `n <= band` of `space` by
/// nullspace lifting. Only equations whose support lies inside the retained
/// levels are imposed, so truncation never enters.
pub fn oracle_nullspace_lift(expr: &SuperOperatorExpr, z: &GrassmannElement, space: FockSpace) -> Result<OracleSolution> {
    let top = space.band();
    let shifted = expr - &SuperOperatorExpr::scalar(z.clone());
    let m = space.realize(&shifted);
    let full = m.matrix();
    let dim = space.dim();

    let cols = space.indices_upto(top);
    let mut inside = vec![false; dim];
    for &c in &cols {
        inside[c] = true;
    }
    let rows: Vec<usize> = (0..dim)
        .filter(|&r| full.blades().all(|(_, b)| (0..dim).all(|c| inside[c] || b[(r, c)] == C::new(0.0, 0.0))))
        .collect();
    let pick = |b: &DMatrix<C>| DMatrix::from_fn(rows.len(), cols.len(), |i, j| b[(rows[i], cols[j])]);
    let blades: Vec<(u32, DMatrix<C>)> = full.blades().map(|(mk, b)| (mk, pick(b))).collect();
    let m0 = blades.iter().find(|(mk, _)| *mk == 0).map(|(_, b)| b.clone()).unwrap_or_else(|| DMatrix::zeros(rows.len(), cols.len()));

    let nb = null_space(&m0, RANK_TOL);
    let d0 = nb.ncols();
    if d0 == 0 {
        return Err(Error::NoSolutionAtLevel(0));
    }
    let left_null = null_space(&m0.adjoint(), RANK_TOL);
    let pseudo = pinv(&m0, RANK_TOL);

    let order = space.order;
    let masks: Vec<u32> = (0..1u32 << order).collect();
    let nparams = masks.len() * d0;
    let xdim = cols.len();

    // x_b = T_b theta, built in mask order so every proper subset comes first.
    let mut t: Vec<DMatrix<C>> = Vec::with_capacity(masks.len());
    let mut constraints: Vec<(usize, DMatrix<C>)> = Vec::new();
    for (bi, &k) in masks.iter().enumerate() {
        let mut r = DMatrix::<C>::zeros(rows.len(), nparams);
        for (mk, mb) in &blades {
            if *mk == 0 || mk & !k != 0 {
                continue;
            }
            let b = k & !mk;
            let s = blade_sign(*mk, b);
            r -= mb * &t[b as usize] * C::new(s, 0.0);
        }
        if k != 0 && left_null.ncols() > 0 {
            let c = left_null.adjoint() * &r;
            if c.iter().any(|x| x.norm() > 0.0) {
                constraints.push((level(k) as usize, c));
            }
        }
        let mut tk = &pseudo * &r;
        for i in 0..xdim {
            for j in 0..d0 {
                tk[(i, bi * d0 + j)] += nb[(i, j)];
            }
        }
        t.push(tk);
    }

    // Admissible parameters, refined level by level.
    let mut basis = DMatrix::<C>::identity(nparams, nparams);
    let body_rank = |basis: &DMatrix<C>| rank(&basis.rows(0, d0).into_owned(), RANK_TOL);
    let mut body_dim = d0;
    let mut levels = Vec::new();
    for lv in 1..=order {
        let rows_here: Vec<&DMatrix<C>> = constraints.iter().filter(|(l, _)| *l == lv).map(|(_, c)| c).collect();
        if rows_here.is_empty() || basis.ncols() == 0 {
            continue;
        }
        let total: usize = rows_here.iter().map(|c| c.nrows()).sum();
        let mut stack = DMatrix::<C>::zeros(total, nparams);
        let mut at = 0;
        for c in rows_here {
            stack.view_mut((at, 0), (c.nrows(), nparams)).copy_from(c);
            at += c.nrows();
        }
        let reduced = &stack * &basis;
        let ns = null_space(&reduced, RANK_TOL);
        basis = &basis * ns;
        let now = if basis.ncols() == 0 { 0 } else { body_rank(&basis) };
        if now < body_dim {
            levels.push(lv);
            body_dim = now;
        }
        if body_dim == 0 {
            return Err(Error::NoSolutionAtLevel(lv));
        }
    }

    // Stack every blade's coefficients so solutions become plain vectors.
    let mut stacked_t = DMatrix::<C>::zeros(masks.len() * xdim, nparams);
    for (bi, tk) in t.iter().enumerate() {
        stacked_t.view_mut((bi * xdim, 0), (xdim, nparams)).copy_from(tk);
    }
    let span = &stacked_t * &basis;

    let mut out = OracleSolution {
        space,
        top,
        states: Vec::new(),
        constraint_levels: levels,
        body_dimension: body_dim,
        cols,
        masks,
        span: span.clone(),
    };
    // One minimal-norm lift per orthonormal body direction.
    let body = basis.rows(0, d0).into_owned();
    let dirs = {
        let svd = body.clone().svd(true, false);
        let u = svd.u.expect("requested U");
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let keep: Vec<usize> =
            (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > RANK_TOL * smax.max(1.0)).collect();
        DMatrix::from_fn(d0, keep.len(), |i, j| u[(i, keep[j])])
    };
    let lift = pinv(&body, RANK_TOL);
    for j in 0..dirs.ncols() {
        let e = dirs.column(j).into_owned();
        let theta = &basis * (&lift * e);
        let v = &stacked_t * theta;
        out.states.push(out.unstack(&v));
    }
    Ok(out)
}
