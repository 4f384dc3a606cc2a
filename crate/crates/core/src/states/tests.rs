use num_complex::Complex64;
use rand::Rng;

use super::*;
use crate::error::Error;
use crate::saes;
use crate::superfock::{self, Sector};
use crate::testutil;

const L: usize = 4;

fn e(j: usize) -> G {
    G::generator(L, j).unwrap()
}

fn s(x: f64) -> G {
    G::scalar(L, x)
}

fn c(re: f64, im: f64) -> G {
    G::scalar(L, Complex64::new(re, im))
}

fn space(cutoff: usize, guard: usize) -> FockSpace {
    FockSpace::new(L, cutoff, guard).unwrap()
}

fn even_param(rng: &mut impl Rng, body: f64) -> G {
    let b = if body > 0.0 { testutil::complex(rng, body / std::f64::consts::SQRT_2) } else { Complex64::new(0.0, 0.0) };
    let soul = testutil::element(rng, L, 0.5).even().soul().scale(0.3);
    &G::scalar(L, b) + &soul
}

fn odd_param(rng: &mut impl Rng) -> G {
    let mut out = G::zero(L);
    for j in 1..=L {
        out += &e(j).scale(testutil::complex(rng, 0.4));
    }
    out
}

fn unit_distance(u: &OperatorMatrix) -> f64 {
    u.compose(&u.adjoint()).band_distance(&u.space().identity())
}

fn state_distance(a: &SuperState, b: &SuperState) -> f64 {
    a.sub(b).max_abs_in_band()
}

/// `b = a c` for a constant `c` read off the largest coefficient of `a`;
/// returns the band deviation.
fn proportional(a: &SuperState, b: &SuperState) -> f64 {
    let (n, sector, _) = a
        .coefficients()
        .into_iter()
        .max_by(|x, y| x.2.body().norm().total_cmp(&y.2.body().norm()))
        .unwrap();
    let k = &a.get(n, sector).inverse().unwrap() * &b.get(n, sector);
    let k = if sector == Sector::Plus { k.star() } else { k };
    state_distance(&a.scale_right(&k), b)
}

#[test]
fn unitaries_are_unitary() {
    let mut rng = testutil::rng(1);
    let sp = space(24, 8);
    for _ in 0..3 {
        let z = &even_param(&mut rng, 0.5) + &odd_param(&mut rng);
        let cases = [
            UnitaryParams::Displacement { z: z.clone() },
            UnitaryParams::Fermionic { z: z.clone() },
            UnitaryParams::Squeeze { x0: even_param(&mut rng, 0.3) },
            UnitaryParams::Osp { x0: even_param(&mut rng, 0.3), gamma1: odd_param(&mut rng), delta1: odd_param(&mut rng) },
            UnitaryParams::Spin { z0: z.even(), gamma0: even_param(&mut rng, 0.5), delta0: even_param(&mut rng, 0.5) },
        ];
        for p in &cases {
            let u = unitary(p, sp).unwrap();
            assert!(unit_distance(&u) < 1e-9, "{}: {:e}", p.kind(), unit_distance(&u));
        }
    }
}

#[test]
fn unitary_parameters_check_parity() {
    assert!(matches!(UnitaryParams::Squeeze { x0: e(1) }.validate(), Err(Error::Parity(_))));
    let bad = UnitaryParams::Supersqueeze { beta0: s(0.1), gamma1: s(0.1), delta1: e(2) };
    assert!(matches!(unitary(&bad, space(4, 1)), Err(Error::Parity(_))));
}

#[test]
fn zero_displacement_is_identity() {
    let sp = space(10, 2);
    let d = unitary(&UnitaryParams::Displacement { z: G::zero(L) }, sp).unwrap();
    assert_eq!(d.band_distance(&sp.identity()), 0.0);
}

#[test]
fn fermionic_shift_on_the_vacuum() {
    let sp = space(2, 1);
    let psi = apply_unitary(&UnitaryParams::Fermionic { z: e(1) }, &sp.vacuum()).unwrap();
    let expected = sp.vacuum().sub(&sp.basis(0, Sector::Plus).scale_left(&e(1)));
    assert!(state_distance(&psi, &expected) < 1e-15);
    let m = unitary(&UnitaryParams::Fermionic { z: e(1) }, sp).unwrap();
    assert!(state_distance(&m.apply(&sp.vacuum()), &expected) < 1e-15);
}

#[test]
fn supersqueeze_inverts_exactly() {
    let sp = space(12, 4);
    let g = UnitaryParams::Supersqueeze { beta0: G::zero(L), gamma1: e(1), delta1: e(2) };
    let inv: Vec<SuperOperatorExpr> = g.exponents().unwrap().iter().map(|x| -x).collect();
    let mut rng = testutil::rng(2);
    let psi = testutil::state(&mut rng, sp, 4, 0.5);
    let mut out = apply_unitary(&g, &psi).unwrap();
    for x in &inv {
        out = out.exp_apply(x).unwrap();
    }
    assert!(state_distance(&out, &psi) < 1e-14);
}

#[test]
fn word_operator_special_values() {
    let sp = space(10, 3);
    let mut rng = testutil::rng(4);
    let psi = testutil::state(&mut rng, sp, 5, 0.5);
    let z1 = odd_param(&mut rng);
    let zero_l = o_word_operator(0, &e(2), &-&e(1), &z1);
    assert!(state_distance(&psi.apply(&zero_l), &psi) < 1e-15);

    // O(1, d1, -g1, z1) = d1 a† - 2 d1 z1 a†^2
    let (g1, d1) = (e(1), e(2));
    let one = o_word_operator(1, &d1, &-&g1, &z1);
    let expected = &SuperOperatorExpr::term(d1.clone(), &[Letter::Ad])
        - &SuperOperatorExpr::term((&d1 * &z1).scale(2.0), &[Letter::Ad, Letter::Ad]);
    assert!(state_distance(&psi.apply(&one), &psi.apply(&expected)) < 1e-14);
}

#[test]
fn word_operators_vanish_beyond_two_for_odd_parameters() {
    let sp = space(10, 3);
    let mut rng = testutil::rng(6);
    let psi = testutil::state(&mut rng, sp, 5, 0.5);
    for _ in 0..5 {
        let (g1, d1, z1) = (odd_param(&mut rng), odd_param(&mut rng), odd_param(&mut rng));
        for l in 3..7 {
            for (first, second) in [(&g1, d1.star()), (&d1, g1.star())] {
                let op = o_word_operator(l, first, &second, &z1);
                assert!(psi.apply(&op).max_abs() < 1e-15, "l={l}");
            }
        }
        let low = o_word_operator(2, &g1, &d1.star(), &z1);
        assert!(psi.apply(&low).max_abs() > 0.0);
    }
}

#[test]
fn word_split_matches_compact_coefficients() {
    let mut rng = testutil::rng(7);
    let sp = space(20, 6);
    for _ in 0..3 {
        let gamma = testutil::element(&mut rng, L, 0.6).scale(0.5);
        let delta = testutil::element(&mut rng, L, 0.6).scale(0.5);
        let z = &even_param(&mut rng, 0.5) + &odd_param(&mut rng);
        let (one, zero) = (s(1.0), G::zero(L));
        for (sector, c0, d0) in [(Sector::Minus, &one, &zero), (Sector::Plus, &zero, &one)] {
            let state = word_family_state(&gamma, &delta, &z, sector, sp).unwrap();
            let (c, d) = saes::compact_coefficients(&gamma, &delta, &z, c0, d0, 12);
            for n in 0..=12 {
                assert!(state.get(n, Sector::Minus).distance(&c[n]) < 1e-12, "C_{n}");
                assert!(state.get(n, Sector::Plus).distance(&d[n]) < 1e-12, "D_{n}");
            }
        }
    }
}

fn draw(rng: &mut impl Rng, name: &str) -> FamilyParams {
    let p = FamilyParams::new(L);
    let z = &even_param(rng, 0.5) + &odd_param(rng);
    match name {
        "gen_coherent" => p.with("z", z).with("a_minus", &s(1.0) + &even_param(rng, 0.3)),
        "gen_supersqueezed" => p.with("beta", &even_param(rng, 0.5) + &odd_param(rng)).with("z", z),
        "b_saes" => p.with("z", &e(1).scale(testutil::complex(rng, 0.5)) + &(&e(1) * &e(2)).scale(0.3)),
        n if n.starts_with("fermion_squeezed") => {
            p.with("delta0", &s(0.2) + &even_param(rng, 0.2)).with("z1", odd_param(rng))
        }
        "az_supercoherent" => p.with("z0", even_param(rng, 0.5)).with("gamma0", even_param(rng, 0.5)),
        "gen_super_cohe" => p.with("z", z).with("gamma", &even_param(rng, 0.5) + &odd_param(rng)),
        "susy_standard" => p.with("z0", even_param(rng, 0.5)).with("theta1", odd_param(rng)),
        n if n.starts_with("odd") => p.with("gamma1", odd_param(rng)).with("delta1", odd_param(rng)).with("z", z),
        n if n.starts_with("spin_half") => p
            .with("gamma0", &s(rng.gen_range(0.1..0.4)) + &even_param(rng, 0.0))
            .with("delta0", &s(rng.gen_range(0.1..0.4)) + &even_param(rng, 0.0))
            .with("z0", z.even())
            .with("z", z),
        n if n.starts_with("general") => p
            .with("beta", &even_param(rng, 0.3) + &odd_param(rng))
            .with("gamma", &s(rng.gen_range(0.2..0.5)) + &odd_param(rng))
            .with("delta", &s(rng.gen_range(0.2..0.5)) + &odd_param(rng))
            .with("z", if n.contains("z0") { z.even() } else { z }),
        _ => unreachable!(),
    }
}

#[test]
fn every_family_solves_its_equation() {
    let mut rng = testutil::rng(5);
    let sp = space(24, 8);
    for name in family_names() {
        for _ in 0..2 {
            let p = draw(&mut rng, name);
            let f = construct_family(name, &p, sp).unwrap();
            assert!(f.residual < 1e-9, "{name}: {:e}", f.residual);
            assert!(f.state.max_abs_in_band() > 0.5, "{name} vanished");
        }
    }
}

#[test]
fn unknown_family_is_rejected() {
    let err = construct_family("nope", &FamilyParams::new(L), space(4, 1)).unwrap_err();
    assert!(matches!(err, Error::Config(_)));
}

#[test]
fn coherent_family_at_zero_is_the_vacuum() {
    let sp = space(10, 3);
    let f = construct_family("gen_coherent", &FamilyParams::new(L), sp).unwrap();
    assert!(state_distance(&f.state, &sp.vacuum()) < 1e-15);
}

#[test]
fn b_family_needs_square_zero_eigenvalue() {
    let p = FamilyParams::new(L).with("z", &s(0.2) + &e(1));
    let err = construct_family("b_saes", &p, space(4, 1)).unwrap_err();
    assert!(matches!(err, Error::EigenvalueConstraintViolated { level: 0, .. }));
}

fn body(rng: &mut impl Rng, r: f64) -> G {
    G::scalar(L, testutil::complex(rng, r))
}

/// Body-only even parameters and odd parameters on one generator each.
fn restricted(rng: &mut impl Rng, name: &str) -> FamilyParams {
    let p = FamilyParams::new(L);
    match name {
        "gen_super_cohe" => p
            .with("z", &body(rng, 0.35) + &e(1).scale(testutil::complex(rng, 0.5)))
            .with("gamma", &body(rng, 0.35) + &e(2).scale(testutil::complex(rng, 0.5))),
        "gen_supersqueezed" => p
            .with("beta", &body(rng, 0.35) + &e(1).scale(testutil::complex(rng, 0.5)))
            .with("z", &body(rng, 0.35) + &e(2).scale(testutil::complex(rng, 0.5))),
        "fermion_squeezed_plus" | "fermion_squeezed_minus" => {
            p.with("delta0", body(rng, 0.35)).with("z1", e(1).scale(testutil::complex(rng, 0.5)))
        }
        "b_saes" => p.with("z", e(1).scale(testutil::complex(rng, 0.5))),
        _ => unreachable!(),
    }
}

#[test]
fn restricted_families_are_normalized() {
    let mut rng = testutil::rng(8);
    let sp = space(40, 12);
    for name in ["gen_super_cohe", "gen_supersqueezed", "fermion_squeezed_plus", "fermion_squeezed_minus", "b_saes"] {
        for _ in 0..3 {
            let f = construct_family(name, &restricted(&mut rng, name), sp).unwrap();
            let dev = (&f.norm_squared() - &s(1.0)).max_abs();
            assert!(dev < 1e-10, "{name}: {dev:e}");
        }
    }
}

#[test]
fn super_coherent_family_is_orthogonal_to_the_coherent_one() {
    let mut rng = testutil::rng(10);
    let sp = space(40, 12);
    for _ in 0..3 {
        let p = restricted(&mut rng, "gen_super_cohe");
        let f = construct_family("gen_super_cohe", &p, sp).unwrap();
        let base = construct_family("gen_coherent", &FamilyParams::new(L).with("z", p.get("z")), sp).unwrap();
        let overlap = base.state.graded_inner_product(&f.state);
        assert!(overlap.max_abs() < 1e-10, "{overlap}");
    }
}

#[test]
fn super_coherent_reduces_to_the_two_level_form() {
    let mut rng = testutil::rng(11);
    let sp = space(30, 10);
    for _ in 0..3 {
        let (z0, g0) = (even_param(&mut rng, 0.4), even_param(&mut rng, 0.4));
        let general = construct_family("gen_super_cohe", &FamilyParams::new(L).with("z", z0.clone()).with("gamma", g0.clone()), sp).unwrap();
        let az = construct_family("az_supercoherent", &FamilyParams::new(L).with("z0", z0).with("gamma0", g0), sp).unwrap();
        assert!(state_distance(&general.state, &az.state) < 1e-12);
    }
}

#[test]
fn odd_families_match_the_word_sums() {
    let mut rng = testutil::rng(12);
    let sp = space(20, 6);
    for _ in 0..3 {
        let (g1, d1) = (odd_param(&mut rng), odd_param(&mut rng));
        let z = &even_param(&mut rng, 0.5) + &odd_param(&mut rng);
        let p = FamilyParams::new(L).with("gamma1", g1.clone()).with("delta1", d1.clone()).with("z", z.clone());
        for (name, sector) in [("odd_minus", Sector::Minus), ("odd_plus", Sector::Plus)] {
            let f = construct_family(name, &p, sp).unwrap();
            let sums = word_family_state(&g1, &d1, &z, sector, sp).unwrap();
            assert!(proportional(&sums, &f.state) < 1e-12, "{name}");
        }
    }
}

#[test]
fn spin_half_example() {
    let sp = space(24, 8);
    let p = FamilyParams::new(L).with("gamma0", s(0.09)).with("delta0", s(0.04)).with("z0", s(0.1));
    let f = construct_family("spin_half", &p, sp).unwrap();
    assert!(f.residual < 1e-9);
    // exp(0.06 a† - (2/3) b†) e^(0.1 a†)|0;->
    let gen = &SuperOperatorExpr::term(s(0.06), &[Letter::Ad]) - &SuperOperatorExpr::term(s(2.0 / 3.0), &[Letter::Bd]);
    let expected = AdSeries::exp_of(&s(0.1), sp.cutoff).apply(&sp.vacuum()).exp_apply(&gen).unwrap();
    assert!(state_distance(&f.state, &expected) < 1e-14);
}

#[test]
fn spin_half_assemblies_agree() {
    let mut rng = testutil::rng(13);
    let sp = space(24, 8);
    for _ in 0..4 {
        let g0 = &s(rng.gen_range(0.05..0.5)) + &even_param(&mut rng, 0.0);
        let d0 = &s(rng.gen_range(0.05..0.5)) + &even_param(&mut rng, 0.0);
        let z0 = even_param(&mut rng, 0.5);
        for sector in [Sector::Minus, Sector::Plus] {
            let (cosh, sinh) = spin_half_assemblies(&g0, &d0, &z0, sector, sp).unwrap();
            assert!(state_distance(&cosh, &sinh) < 1e-12);
        }
    }
}

#[test]
fn spin_half_roots_give_proportional_states() {
    let mut rng = testutil::rng(14);
    let sp = space(24, 8);
    let p = draw(&mut rng, "spin_half");
    let minus = construct_family("spin_half_minus", &p, sp).unwrap();
    let plus = construct_family("spin_half_plus", &p, sp).unwrap();
    assert!(proportional(&minus.state, &plus.state) < 1e-12);
}

#[test]
fn spin_half_rejects_split_branches() {
    let p = FamilyParams::new(L).with("gamma0", s(-0.2)).with("delta0", s(-0.3));
    let err = construct_family("spin_half", &p, space(6, 2)).unwrap_err();
    assert!(matches!(err, Error::Domain(_)));
}

#[test]
fn density_identities() {
    let r = density_of_algebra((1, 2), Complex64::new(0.3, 0.0), space(24, 8)).unwrap();
    assert_eq!(r.annihilation, 0.0);
    assert_eq!(r.creation, 0.0);
    assert!(r.commutator < 1e-12 && r.anticommutator < 1e-12);
    assert!(r.identity_density < 1e-12);
    assert!(r.energy_density_w2 < 1e-12);
    assert!(r.energy_density > 0.1);
    assert!(r.lowering_anticommutator < 1e-12);
    assert!(r.lowering_creation > 0.5);
    assert!(r.eigen_residual < 1e-9);
    assert!(density_of_algebra((2, 2), Complex64::new(0.0, 0.0), space(4, 1)).is_err());
}

#[test]
fn combined_sectors() {
    let mut rng = testutil::rng(15);
    let sp = space(30, 10);
    let z = &even_param(&mut rng, 0.5) + &odd_param(&mut rng);
    let z1 = z.odd();
    let coherent = construct_family("gen_coherent", &FamilyParams::new(L).with("z", z.clone()), sp).unwrap();
    let plain = combine_sectors(&s(1.0), &G::zero(L), &z, sp).unwrap();
    assert!(state_distance(&plain, &coherent.state) < 1e-13);

    let rho = &s(1.0) - &(&z1.adjoint() * &z1).scale(0.5);
    let combined = combine_sectors(&rho, &-&z1, &z, sp).unwrap();
    let work = widened(sp, DISPLACEMENT_MARGIN);
    let mut direct = apply_unitary(&UnitaryParams::Fermionic { z: z1.clone() }, &work.vacuum()).unwrap();
    direct = apply_unitary(&UnitaryParams::Displacement { z: z1.clone() }, &direct).unwrap();
    direct = apply_unitary(&UnitaryParams::Displacement { z: z.even() }, &direct).unwrap();
    assert!(state_distance(&combined, &narrowed(&direct, sp)) < 1e-12);
    assert!(superfock::residual(&SuperOperatorExpr::a(L), &z, &combined) < 1e-9);

    let theta = odd_param(&mut rng);
    let z0 = z.even();
    let rho = &s(1.0) - &(&theta.adjoint() * &theta).scale(0.5);
    let susy = combine_sectors(&rho, &-&theta, &z0, sp).unwrap();
    let expected = construct_family("susy_standard", &FamilyParams::new(L).with("z0", z0).with("theta1", theta), sp).unwrap();
    assert!(state_distance(&susy, &expected.state) < 1e-12);

    let err = combine_sectors(&s(1.0), &e(3), &(&s(0.1) + &e(1)), sp).unwrap_err();
    assert!(matches!(err, Error::EigenvalueConstraintViolated { .. }));
}

#[test]
fn bogoliubov_forms() {
    let sp = space(48, 12);
    let zero = bogoliubov_check(&G::zero(L), sp).unwrap();
    assert!(zero.max_deviation() < 1e-14);
    for x0 in [c(0.3, 0.0), c(0.1, 0.2), &s(0.1) + &(&e(1) * &e(2)).scale(0.05)] {
        let r = bogoliubov_check(&x0, sp).unwrap();
        assert!(r.series < 1e-9, "{x0}: {:e}", r.series);
        assert!(r.polar.unwrap() < 1e-9, "{x0}: {:?}", r.polar);
    }
}
