//! Coefficient sequences: the forward recurrence, the alternating-word
//! operators acting on `z^n`, and the combinatorial sums behind the reduced
//! recurrences.

use crate::error::{Error, Result};
use crate::grassmann::{factorial, GrassmannElement};

use super::ReducedCoefficients;

type G = GrassmannElement;

/// `C_n, D_n` for `n <= n_max` from
/// `sqrt(n+1) C_{n+1} = z C_n - gamma D_n* - sqrt(n) beta C_{n-1}` and its
/// mirror with `delta C_n*`.
pub fn forward_recurrence(red: &ReducedCoefficients, c0: &G, d0: &G, n_max: usize) -> (Vec<G>, Vec<G>) {
    let mut c = vec![c0.clone()];
    let mut d = vec![d0.clone()];
    for n in 0..n_max {
        let mut cn = &red.z * &c[n] - &red.gamma * &d[n].star();
        let mut dn = &red.z * &d[n] - &red.delta * &c[n].star();
        if n > 0 {
            let s = (n as f64).sqrt();
            cn -= &(&red.beta * &c[n - 1]).scale(s);
            dn -= &(&red.beta * &d[n - 1]).scale(s);
        }
        let k = 1.0 / ((n + 1) as f64).sqrt();
        c.push(cn.scale(k));
        d.push(dn.scale(k));
    }
    (c, d)
}

/// `n! / (n-k)!`, zero when `k > n`.
pub fn falling(n: usize, k: usize) -> f64 {
    if k > n {
        0.0
    } else {
        ((n - k + 1)..=n).fold(1.0, |acc, i| acc * i as f64)
    }
}

/// Product of `len` factors alternating `first, second, first, ...`,
/// starting at global position `start` (0-based).
pub(crate) fn alternating(order: usize, start: usize, len: usize, first: &G, second: &G) -> G {
    let mut out = G::one(order);
    for i in start..start + len {
        out = &out * if i % 2 == 0 { first } else { second };
    }
    out
}

/// `d^k/dz0^k z^n = n!/(n-k)! z^(n-k)` for `z = z0 + z1`.
fn z_derivative(z: &G, n: usize, k: usize) -> G {
    if k > n {
        return G::zero(z.order());
    }
    z.powi(n - k).scale(falling(n, k))
}

/// The word operator `O(l, first, second, z1)` acting on `z^n`, with the
/// derivative taken in the even part of `z`.
pub fn o_word_on_power(l: usize, first: &G, second: &G, z1: &G, z: &G, n: usize) -> G {
    let order = z.order();
    let word = alternating(order, 0, l, first, second);
    let lead = &(&word * &z_derivative(z, n, l)) - &(&(&word * z1) * &z_derivative(z, n, l + 1));
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
    let tail = (&inserted * &z_derivative(z, n, l + 1)).scale(1.0 / (l + 1) as f64);
    (&lead + &tail).scale(1.0 / factorial(l))
}

/// Brute-force nested sum
/// `sum_k z^(n-l-r_l) f (z*)^(k_l) s z^(k_(l-1)) f (z*)^(k_(l-2)) ...`
/// with `l` alternating factors and `r_l = k_1 + ... + k_l <= n - l`.
pub fn nested_word_sum(l: usize, first: &G, second: &G, z: &G, n: usize) -> G {
    let order = z.order();
    if l > n {
        return G::zero(order);
    }
    let zs = z.star();
    // Walk the word left to right; the exponents after the factors must use
    // up exactly the budget left by the leading power.
    #[allow(clippy::too_many_arguments)]
    fn walk(pos: usize, l: usize, rest: usize, f: &G, s: &G, z: &G, zs: &G, acc: &G, out: &mut G) {
        if pos == l {
            if rest == 0 {
                *out += acc;
            }
            return;
        }
        let factor = if pos % 2 == 0 { f } else { s };
        let base = if pos % 2 == 0 { zs } else { z };
        let head = acc * factor;
        let lo = if pos + 1 == l { rest } else { 0 };
        for k in lo..=rest {
            walk(pos + 1, l, rest - k, f, s, z, zs, &(&head * &base.powi(k)), out);
        }
    }
    let mut out = G::zero(order);
    let budget = n - l;
    for m in 0..=budget {
        walk(0, l, budget - m, first, second, z, &zs, &z.powi(m), &mut out);
    }
    out
}

/// Summand kinds of the combinatorial table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaKind {
    One,
    /// `k_1 + k_3 + ... + k_(l-1)`, even `l`.
    OddSum,
    OddSumSquared,
    /// `k_2 + k_4 + ... + k_(l-1)`, odd `l`.
    EvenSum,
    EvenSumSquared,
}

impl LambdaKind {
    pub const ALL: [LambdaKind; 5] = [
        LambdaKind::One,
        LambdaKind::OddSum,
        LambdaKind::OddSumSquared,
        LambdaKind::EvenSum,
        LambdaKind::EvenSumSquared,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LambdaKind::One => "one",
            LambdaKind::OddSum => "odd-sum",
            LambdaKind::OddSumSquared => "odd-sum-squared",
            LambdaKind::EvenSum => "even-sum",
            LambdaKind::EvenSumSquared => "even-sum-squared",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Whether the kind is defined for this `l`.
    pub fn admits(self, l: usize) -> bool {
        match self {
            LambdaKind::One => l >= 2,
            LambdaKind::OddSum | LambdaKind::OddSumSquared => l >= 2 && l % 2 == 0,
            LambdaKind::EvenSum | LambdaKind::EvenSumSquared => l >= 3 && l % 2 == 1,
        }
    }
}

/// `1 / m!` with `1/(-1)! = 0`.
fn inv_fact(m: isize) -> f64 {
    if m < 0 {
        0.0
    } else {
        1.0 / factorial(m as usize)
    }
}

/// Closed form of `sum_{k_1..k_(l-1), r_(l-1) <= n-l} Lambda(k)`.
pub fn b2_combinatorial_sums(n: usize, l: usize, kind: LambdaKind) -> Result<f64> {
    if l < 2 || l > n || !kind.admits(l) {
        return Err(Error::Domain(format!("sum kind {} undefined for n={n}, l={l}", kind.name())));
    }
    let (nf, lf) = (n as f64, l as f64);
    let f = factorial(n - 1);
    let a = n as isize - l as isize - 1;
    Ok(match kind {
        LambdaKind::One => f * inv_fact((n - l) as isize) * inv_fact(l as isize - 1),
        LambdaKind::OddSum => f / 2.0 * inv_fact(a) * inv_fact(l as isize - 1),
        LambdaKind::OddSumSquared => {
            lf * f / 2.0 * inv_fact(a) * inv_fact(l as isize + 1) * ((nf - lf) + lf / 2.0 * (nf - lf + 1.0))
        }
        LambdaKind::EvenSum => (lf - 1.0) * f / 2.0 * inv_fact(a) * inv_fact(l as isize),
        LambdaKind::EvenSumSquared => {
            (lf - 1.0) * (nf - lf + 1.0) * f / 4.0 * inv_fact(a) * inv_fact(l as isize)
        }
    })
}

/// The same sum by enumerating every admissible `(k_1, ..., k_(l-1))`.
pub fn b2_brute_force(n: usize, l: usize, kind: LambdaKind) -> Result<f64> {
    if l < 2 || l > n || !kind.admits(l) {
        return Err(Error::Domain(format!("sum kind {} undefined for n={n}, l={l}", kind.name())));
    }
    fn rec(ks: &mut Vec<usize>, slots: usize, rest: usize, kind: LambdaKind, acc: &mut f64) {
        if ks.len() == slots {
            let pick = |parity: usize| -> f64 {
                ks.iter().enumerate().filter(|(i, _)| (i + 1) % 2 == parity).map(|(_, &k)| k as f64).sum()
            };
            *acc += match kind {
                LambdaKind::One => 1.0,
                LambdaKind::OddSum => pick(1),
                LambdaKind::OddSumSquared => pick(1).powi(2),
                LambdaKind::EvenSum => pick(0),
                LambdaKind::EvenSumSquared => pick(0).powi(2),
            };
            return;
        }
        for k in 0..=rest {
            ks.push(k);
            rec(ks, slots, rest - k, kind, acc);
            ks.pop();
        }
    }
    let mut acc = 0.0;
    rec(&mut Vec::new(), l - 1, n - l, kind, &mut acc);
    Ok(acc)
}
