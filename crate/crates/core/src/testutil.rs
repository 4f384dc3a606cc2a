//! Random draws shared by the unit tests.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grassmann::GrassmannElement;
use crate::superfock::{FockSpace, Sector, SuperState};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex(rng: &mut impl Rng, scale: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

/// Element with every blade populated with probability `density`.
pub fn element(rng: &mut impl Rng, order: usize, density: f64) -> GrassmannElement {
    let mut blades = Vec::new();
    for m in 0..1u32 << order {
        if rng.gen_bool(density) {
            blades.push((m, complex(rng, 1.0)));
        }
    }
    GrassmannElement::from_blades(order, blades).unwrap()
}

pub fn state(rng: &mut impl Rng, space: FockSpace, top: usize, density: f64) -> SuperState {
    let mut coeffs = Vec::new();
    for sector in [Sector::Minus, Sector::Plus] {
        for n in 0..=top.min(space.cutoff) {
            coeffs.push((n, sector, element(rng, space.order, density)));
        }
    }
    SuperState::from_coefficients(space, coeffs).unwrap()
}

/// State with even coefficients on `|n;->` and odd ones on `|n;+>`.
pub fn even_state(rng: &mut impl Rng, space: FockSpace, top: usize, density: f64) -> SuperState {
    let mut coeffs = Vec::new();
    for n in 0..=top.min(space.cutoff) {
        coeffs.push((n, Sector::Minus, element(rng, space.order, density).even()));
        coeffs.push((n, Sector::Plus, element(rng, space.order, density).odd()));
    }
    SuperState::from_coefficients(space, coeffs).unwrap()
}
