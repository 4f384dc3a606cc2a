use num_complex::Complex64;

use super::*;
use crate::superfock;

const L: usize = 4;
const TOL: f64 = 1e-10;

fn e(j: usize) -> G {
    G::generator(L, j).unwrap()
}

fn c(re: f64, im: f64) -> G {
    G::scalar(L, Complex64::new(re, im))
}

fn space(cutoff: usize, guard: usize) -> FockSpace {
    FockSpace::new(L, cutoff, guard).unwrap()
}

/// Two generators, so `b1‡ b1` does not vanish.
fn beta1() -> G {
    &e(3).scale(0.4) + &e(4).scale(Complex64::new(0.1, 0.3))
}

fn h2() -> IsospectralSystem {
    build_system(IsoParams::H2 { beta1: beta1() }, space(32, 8)).unwrap()
}

fn spin_params() -> IsoParams {
    let gamma0 = &c(0.3, 0.0) + &(&e(1) * &e(2)).scale(0.2);
    let delta0 = gamma0.scale(Complex64::i());
    IsoParams::SpinHalf { gamma0, delta0 }
}

fn spin() -> IsospectralSystem {
    build_system(spin_params(), space(32, 8)).unwrap()
}

fn supersqueeze() -> UnitaryParams {
    UnitaryParams::Supersqueeze {
        beta0: &c(0.1, 0.05) + &(&e(3) * &e(4)).scale(0.1),
        gamma1: e(1).scale(0.3),
        delta1: e(2).scale(0.2),
    }
}

fn assert_checks(checks: &[RelationCheck], tol: f64) {
    for c in checks {
        assert!(c.deviation < tol, "{}: {:e}", c.name, c.deviation);
    }
}

#[test]
fn h2_relations_hold() {
    let sys = h2();
    assert_checks(&sys.checks, TOL);
    assert!(sys.check("N^2").is_some());
    assert!(sys.check("{Q+,Q-} - N").is_some());
}

#[test]
fn single_generator_h2_has_no_quadratic_terms() {
    let b = e(3).scale(0.4);
    assert!((&b.adjoint() * &b).is_zero());
    let sys = build_system(IsoParams::H2 { beta1: b }, space(32, 8)).unwrap();
    assert_checks(&sys.checks, TOL);
    let spec = eigenstates(&sys, 20).unwrap();
    assert_checks(&spec.checks, 1e-9);
}

#[test]
fn h2_needs_odd_beta() {
    let err = build_system(IsoParams::H2 { beta1: c(0.4, 0.0) }, space(16, 4)).unwrap_err();
    assert!(matches!(err, Error::Parity(_)));
}

#[test]
fn h2_spectrum() {
    let sys = h2();
    let spec = eigenstates(&sys, 20).unwrap();
    assert_checks(&spec.checks, 1e-9);
    for name in ["standard form", "vacuum identity", "basis expansion", "completeness"] {
        assert!(spec.check(name).is_some(), "{name}");
    }
    let e0 = spec.state(Sector::Minus, 0).unwrap();
    assert!((e0.get(0, Sector::Minus).body() - 1.0).norm() < 1e-15);
    assert!((e0.get(2, Sector::Minus) + &beta1().scale(std::f64::consts::FRAC_1_SQRT_2)).max_abs() < 1e-15);
}

#[test]
fn spectrum_needs_headroom() {
    let sys = build_system(IsoParams::H2 { beta1: beta1() }, space(16, 4)).unwrap();
    assert!(eigenstates(&sys, 10).is_ok());
    assert!(matches!(eigenstates(&sys, 11).unwrap_err(), Error::Config(_)));
}

#[test]
fn spin_relations_and_spectrum() {
    let sys = spin();
    assert_checks(&sys.checks, TOL);
    let spec = eigenstates(&sys, 20).unwrap();
    assert_checks(&spec.checks, 1e-9);
}

#[test]
fn spin_body_only_example() {
    let p = IsoParams::SpinHalf { gamma0: c(0.3, 0.0), delta0: c(0.0, 0.3) };
    let sys = build_system(p, space(32, 8)).unwrap();
    assert_checks(&sys.checks, TOL);
    assert_checks(&eigenstates(&sys, 12).unwrap().checks, 1e-9);
}

#[test]
fn spin_needs_balanced_couplings() {
    let p = IsoParams::SpinHalf { gamma0: c(0.3, 0.0), delta0: c(0.2, 0.0) };
    assert!(matches!(build_system(p, space(16, 4)).unwrap_err(), Error::Domain(_)));
    let p = IsoParams::SpinHalf { gamma0: e(1), delta0: e(1) };
    assert!(matches!(build_system(p, space(16, 4)).unwrap_err(), Error::Parity(_)));
}

#[test]
fn spin_ground_states_are_zero_modes_on_both_ladders() {
    let sys = spin();
    let spec = eigenstates(&sys, 4).unwrap();
    for j in [Sector::Minus, Sector::Plus] {
        let e0 = spec.state(j, 0).unwrap();
        assert!(superfock::residual(&sys.a0, &G::zero(L), e0) < 1e-12);
    }
    let (m, p) = (spec.state(Sector::Minus, 0).unwrap(), spec.state(Sector::Plus, 0).unwrap());
    assert!(m.graded_inner_product(p).max_abs() < 1e-12);
}

#[test]
fn coherent_states_solve_the_eigen_equation() {
    let z = &c(0.3, 0.1) + &e(1).scale(0.2);
    let sys = h2();
    for j in [Sector::Minus, Sector::Plus] {
        let cs = coherent_states(&sys, &z, j).unwrap();
        assert!(cs.residual < 1e-12, "{:e}", cs.residual);
    }
    // The closed-form constant normalizes when b1 and z1 are single generators.
    let single = build_system(IsoParams::H2 { beta1: e(3) }, space(32, 8)).unwrap();
    for j in [Sector::Minus, Sector::Plus] {
        let cs = coherent_states(&single, &(&c(0.3, 0.1) + &e(4)), j).unwrap();
        assert!(cs.residual < 1e-10, "{:e}", cs.residual);
        let n = cs.state.graded_inner_product(&cs.state);
        assert!((&n - &G::one(L)).max_abs() < 1e-10, "{n}");
    }
    let sys = spin();
    for j in [Sector::Minus, Sector::Plus] {
        let cs = coherent_states(&sys, &z.even(), j).unwrap();
        assert!(cs.residual < 1e-12, "{:e}", cs.residual);
    }
    let cs = coherent_states(&sys, &z.even(), Sector::Minus).unwrap();
    assert!(cs.second_route.unwrap() < 1e-12);
    assert!(matches!(coherent_states(&sys, &z, Sector::Minus).unwrap_err(), Error::Parity(_)));
}

#[test]
fn supersqueezed_conjugates_keep_the_spectrum() {
    for sys in [h2(), spin()] {
        let conj = conjugate_system(&sys, supersqueeze()).unwrap();
        assert!(conj.eta.is_some());
        assert_checks(&conj.checks, 1e-10);
        assert_checks(&eigenstates(&conj, 12).unwrap().checks, 1e-9);
        let z = c(0.2, -0.1);
        assert!(coherent_states(&conj, &z, Sector::Minus).unwrap().residual < 1e-11);
    }
}

#[test]
fn spec_example_conjugator() {
    let g = UnitaryParams::Supersqueeze { beta0: c(0.0, 0.0), gamma1: e(1), delta1: e(2) };
    let conj = conjugate_system(&spin(), g).unwrap();
    assert_checks(&conj.checks, 1e-10);
    assert_checks(&eigenstates(&conj, 8).unwrap().checks, 1e-9);
}

#[test]
fn orthosymplectic_conjugate_keeps_the_spectrum() {
    let u = UnitaryParams::Osp { x0: c(0.1, 0.05), gamma1: e(1).scale(0.3), delta1: e(2).scale(0.2) };
    let conj = conjugate_system(&h2(), u).unwrap();
    assert_checks(&conj.checks, 1e-10);
    assert_checks(&eigenstates(&conj, 8).unwrap().checks, 1e-9);
}

#[test]
fn displacement_is_not_an_isospectral_map() {
    let err = conjugate_system(&h2(), UnitaryParams::Displacement { z: c(0.1, 0.0) }).unwrap_err();
    assert!(matches!(err, Error::UnsupportedRegime(_)));
}

#[test]
fn family_names_round_trip() {
    for f in [IsoFamily::H2, IsoFamily::SpinHalf] {
        assert_eq!(IsoFamily::parse(f.name()).unwrap(), f);
    }
    assert!(IsoFamily::parse("h3").is_err());
}
