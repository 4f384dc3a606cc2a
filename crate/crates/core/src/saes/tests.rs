use num_complex::Complex64;
use rand::Rng;

use super::*;
use crate::superfock::Letter;
use crate::grassmann::factorial;
use crate::testutil;

const L: usize = 4;

fn e(j: usize) -> G {
    G::generator(L, j).unwrap()
}

fn s(x: f64) -> G {
    G::scalar(L, x)
}

fn space(cutoff: usize, guard: usize) -> FockSpace {
    FockSpace::new(L, cutoff, guard).unwrap()
}

/// Even element with a body below `body` and a level-two soul.
fn even_param(rng: &mut impl Rng, body: f64) -> G {
    let b = testutil::complex(rng, body / std::f64::consts::SQRT_2);
    let soul = testutil::element(rng, L, 0.5).even().soul().scale(0.3);
    &G::scalar(L, b) + &soul
}

/// Odd element supported on single generators.
fn odd_param(rng: &mut impl Rng) -> G {
    let mut out = G::zero(L);
    for j in 1..=L {
        out += &e(j).scale(testutil::complex(rng, 0.4));
    }
    out
}

fn max_dev(a: &[G], b: &[G]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.distance(y)).fold(0.0, f64::max)
}

#[test]
fn word_operator_matches_nested_sums() {
    let mut rng = testutil::rng(3);
    for _ in 0..4 {
        let gamma = testutil::element(&mut rng, L, 0.6).scale(0.5);
        let delta = testutil::element(&mut rng, L, 0.6).scale(0.5);
        let z = &even_param(&mut rng, 0.5) + &odd_param(&mut rng);
        for n in 0..=7 {
            for l in 0..=n {
                let brute = nested_word_sum(l, &gamma, &delta.star(), &z, n);
                let op = o_word_on_power(l, &gamma, &delta.star(), &z.odd(), &z, n);
                assert!(brute.distance(&op) < 1e-10, "n={n} l={l}: {}", brute.distance(&op));
            }
        }
    }
}

#[test]
fn combinatorial_table_matches_enumeration() {
    for n in 2..=9 {
        for l in 2..=n {
            for kind in LambdaKind::ALL {
                if !kind.admits(l) {
                    assert!(b2_combinatorial_sums(n, l, kind).is_err());
                    continue;
                }
                let closed = b2_combinatorial_sums(n, l, kind).unwrap();
                let brute = b2_brute_force(n, l, kind).unwrap();
                assert!((closed - brute).abs() < 1e-9 * brute.max(1.0), "n={n} l={l} {}: {closed} vs {brute}", kind.name());
            }
        }
    }
    assert_eq!(b2_brute_force(4, 2, LambdaKind::One).unwrap(), 3.0);
    assert_eq!(b2_brute_force(5, 3, LambdaKind::EvenSum).unwrap(), 4.0);
    assert!(b2_combinatorial_sums(3, 4, LambdaKind::One).is_err());
}

#[test]
fn compact_form_matches_recurrence() {
    let mut rng = testutil::rng(5);
    for _ in 0..4 {
        let gamma = &even_param(&mut rng, 0.5) + &odd_param(&mut rng);
        let delta = &even_param(&mut rng, 0.5) + &odd_param(&mut rng);
        let z = &even_param(&mut rng, 0.5) + &odd_param(&mut rng);
        let c0 = &s(1.0) + &odd_param(&mut rng);
        let d0 = &s(0.5) + &odd_param(&mut rng);
        let red = ReducedCoefficients::new(G::zero(L), gamma.clone(), delta.clone(), z.clone());
        let (fc, fd) = forward_recurrence(&red, &c0, &d0, 10);
        let (cc, cd) = compact_coefficients(&gamma, &delta, &z, &c0, &d0, 10);
        assert!(max_dev(&fc, &cc) < 1e-10, "{}", max_dev(&fc, &cc));
        assert!(max_dev(&fd, &cd) < 1e-10, "{}", max_dev(&fd, &cd));
    }
}

#[test]
fn reduced_sums_match_recurrence() {
    let mut rng = testutil::rng(7);
    for _ in 0..4 {
        let b1 = odd_param(&mut rng);
        let g0 = even_param(&mut rng, 0.5);
        let d0 = even_param(&mut rng, 0.5);
        let z = &even_param(&mut rng, 0.5) + &odd_param(&mut rng);
        let red = ReducedCoefficients::new(b1.clone(), g0.clone(), d0.clone(), z.clone());
        for (c0, dd) in [(s(1.0), s(0.0)), (s(0.0), s(1.0))] {
            let (fc, fd) = forward_recurrence(&red, &c0, &dd, 12);
            let (rc, rd) = reduced_coefficients(&b1, &g0, &d0, &z, &c0, &dd, 12);
            assert!(max_dev(&fc, &rc) < 1e-12 && max_dev(&fd, &rd) < 1e-12);
            let (kc, kd) = reduced_compact_coefficients(&b1, &g0, &d0, &z, &c0, &dd, 12).unwrap();
            assert!(max_dev(&fc, &kc) < 1e-12 && max_dev(&fd, &kd) < 1e-12);
        }
    }
}

#[test]
fn supersqueeze_conjugation() {
    let mut rng = testutil::rng(11);
    let sp = space(20, 6);
    let beta = &even_param(&mut rng, 0.4) + &odd_param(&mut rng);
    let gamma = &even_param(&mut rng, 0.4) + &odd_param(&mut rng);
    let delta = &even_param(&mut rng, 0.4) + &odd_param(&mut rng);
    let red = GeneralReduction::new(&beta, &gamma, &delta);
    let full = ReducedCoefficients::new(beta.clone(), gamma.clone(), delta.clone(), G::zero(L)).expr();
    let reduced =
        ReducedCoefficients::new(red.beta1_hat_general.clone(), gamma.even(), delta.even(), G::zero(L)).expr();
    // O G phi = G O_red phi on random states.
    let phi = testutil::state(&mut rng, sp, 8, 0.4);
    let lhs = red.apply(&phi).unwrap().apply(&full);
    let rhs = red.apply(&phi.apply(&reduced)).unwrap();
    eprintln!("conjugation dev {}", lhs.distance(&rhs));
    assert!(lhs.distance(&rhs) < 1e-10);
}

#[test]
fn oracle_on_plain_annihilator() {
    let sp = space(8, 3);
    let sol = oracle_nullspace_lift(&SuperOperatorExpr::a(L), &G::zero(L), sp).unwrap();
    assert_eq!(sol.body_dimension, 2);
    assert!(sol.constraint_levels.is_empty());
    let vac = sp.basis(0, Sector::Minus);
    assert!(sol.contains(&vac, 1e-12));
    assert!(sol.contains(&sp.basis(0, Sector::Plus).scale_left(&e(2)), 1e-12));
    assert!(!sol.contains(&sp.basis(1, Sector::Minus), 1e-6));
}

#[test]
fn oracle_rejects_body_eigenvalue_of_b() {
    let sp = space(6, 2);
    let err = oracle_nullspace_lift(&SuperOperatorExpr::b(L), &s(0.4), sp).unwrap_err();
    assert!(matches!(err, Error::NoSolutionAtLevel(0)), "{err:?}");
}

#[test]
fn oracle_agrees_with_super_coherent() {
    let sp = space(10, 4);
    let gamma = e(1);
    let z = s(0.3);
    let expr = &SuperOperatorExpr::a(L) + &SuperOperatorExpr::term(gamma.clone(), &[Letter::B]);
    let sol = oracle_nullspace_lift(&expr, &z, sp).unwrap();
    assert_eq!(sol.body_dimension, 2);
    for f in solve_super_coherent(&gamma, &z, sp).unwrap() {
        assert!(f.residual < 1e-12, "{}", f.residual);
        assert!(sol.contains(&f.state, 1e-10));
    }
}

#[test]
fn solver_residuals_on_random_parameters() {
    let mut rng = testutil::rng(13);
    let sp = space(30, 8);
    for _ in 0..2 {
        let beta = &even_param(&mut rng, 0.4) + &odd_param(&mut rng);
        let gamma = &even_param(&mut rng, 0.4) + &odd_param(&mut rng);
        let delta = &even_param(&mut rng, 0.4) + &odd_param(&mut rng);
        let z = &even_param(&mut rng, 0.5) + &odd_param(&mut rng);
        let mut fams = solve_a_gamma_delta(&gamma, &delta, &z, sp).unwrap();
        fams.extend(solve_general(&beta, &gamma, &delta, &z, sp).unwrap());
        fams.extend(solve_super_coherent(&gamma, &z, sp).unwrap());
        let (f, r) = solve_boson_squeezed(&beta, &z, sp).unwrap();
        assert!(r.condition_residual(&beta.even()) < 1e-12);
        fams.push(f);
        for f in fams {
            assert!(f.residual < 1e-10, "{} {}", f.method, f.residual);
        }
    }
}

#[test]
fn dispatch_by_vanishing_coefficients() {
    let sp = space(12, 4);
    let mut c = GeneratorCoefficients::new(L);
    c.z = s(0.5);
    let fams = solve_sh22(&c, sp).unwrap();
    assert_eq!(fams.len(), 2);
    assert_eq!(fams[0].method, Method::CoherentSeries);
    for (n, x) in fams[0].c.iter().enumerate().take(6) {
        assert!((x.body().re - 0.5f64.powi(n as i32) / factorial(n).sqrt()).abs() < 1e-15);
    }

    c.b_minus = e(1);
    let fams = solve_sh22(&c, sp).unwrap();
    assert!(fams.iter().all(|f| f.method == Method::SuperCoherent && f.residual < 1e-12));

    c.a_plus = e(2);
    c.b_plus = s(0.1);
    c.a_minus = &s(2.0) + &(&e(3) * &e(4));
    c.a3 = e(4);
    let fams = solve_sh22(&c, sp).unwrap();
    assert!(fams.iter().all(|f| f.method == Method::GeneralReduction && f.residual < 1e-12));

    c.a_minus = e(3);
    assert!(matches!(solve_sh22(&c, sp), Err(Error::UnsupportedRegime(_))));
}

#[test]
fn degenerate_scaled_boson() {
    let sp = space(12, 4);
    let fams = solve_scaled_boson(&e(1), &e(1).scale(0.3), sp).unwrap();
    assert_eq!(fams[0].method, Method::DegenerateCoherent);
    assert!(fams[0].conditions.iter().all(|c| c.holds(1e-12)));
    for (n, x) in fams[0].c.iter().enumerate() {
        let expect = s(0.3f64.powi(n as i32) / factorial(n).sqrt());
        assert!(x.distance(&expect) < 1e-15);
    }
    let err = solve_scaled_boson(&e(1), &(&e(1) + &s(0.2)), sp).unwrap_err();
    assert!(matches!(err, Error::EigenvalueConstraintViolated { ref condition, level: 0 } if condition == "Z_phi = 0"));
    // Truncated, the system only admits states hanging from the top level;
    // none of them reaches the vacuum.
    let oracle = oracle_nullspace_lift(&SuperOperatorExpr::term(e(1), &[Letter::A]), &(&e(1) + &s(0.2)), space(6, 2)).unwrap();
    for st in &oracle.states {
        assert!(st.get(0, Sector::Minus).is_zero() && st.get(0, Sector::Plus).is_zero());
    }
}

#[test]
fn fermion_branches() {
    let sp = space(2, 0);
    let one = s(1.0);
    let f = solve_fermion_scaled(&one, &G::zero(L), sp).unwrap();
    assert!(f[0].d0.is_zero() && f[0].residual == 0.0);

    let f = solve_fermion_scaled(&e(3), &G::zero(L), sp).unwrap();
    assert_eq!(f.len(), 2);
    assert!(f.iter().all(|f| f.residual == 0.0));

    let f = solve_fermion_scaled(&one, &e(1), sp).unwrap();
    assert!(f[0].residual == 0.0 && f[0].d0.distance(&-&e(1)) == 0.0);
    let f = solve_fermion_scaled(&one, &(&e(1) * &e(2)), sp).unwrap();
    assert!(f[0].residual == 0.0);
    let err = solve_fermion_scaled(&one, &s(0.1), sp).unwrap_err();
    assert!(matches!(err, Error::EigenvalueConstraintViolated { level: 0, .. }));
    let err = solve_fermion_scaled(&one, &(&(&e(1) * &e(2)) + &(&e(3) * &e(4))), sp).unwrap_err();
    assert!(matches!(err, Error::EigenvalueConstraintViolated { ref condition, level: 4 } if condition == "z0^2 = 0"));

    // Odd B without body: B_1 D = -Z* C*.
    let f = solve_fermion_scaled(&e(1), &(&e(1) * &e(2)), sp).unwrap();
    assert!(f[0].residual < 1e-14 && f[0].conditions.iter().all(|c| c.holds(1e-12)));
    // Even B without body: B_0 D = Z* C*.
    let f = solve_fermion_scaled(&(&e(1) * &e(2)), &(&(&e(1) * &e(2)) * &e(3)), sp).unwrap();
    assert!(f[0].residual < 1e-14);
    // The printed conditions hold but the pair has no solution.
    let err = solve_fermion_scaled(&(&e(1) * &e(2)), &e(3), sp).unwrap_err();
    assert!(matches!(err, Error::EigenvalueConstraintViolated { level: 1, .. }));
    let oracle = oracle_nullspace_lift(&SuperOperatorExpr::term(e(1) * &e(2), &[Letter::B]), &e(3), space(1, 0));
    assert!(matches!(oracle, Err(Error::NoSolutionAtLevel(1))), "{oracle:?}");
}

#[test]
fn fermion_squeezed_pairs() {
    let sp = space(2, 0);
    let delta = s(0.25);
    let [zp, zm] = fermion_squeezed_eigenvalues(&delta, &G::zero(L)).unwrap();
    assert!((zp.body().re - 0.5).abs() < 1e-15 && (zm.body().re + 0.5).abs() < 1e-15);
    let f = solve_fermion_squeezed(&delta, &(&zp + &e(2)), sp).unwrap();
    assert_eq!(f.len(), 2);
    assert!(f.iter().all(|f| f.residual < 1e-15));

    let f = solve_fermion_squeezed(&G::zero(L), &e(1), sp).unwrap();
    assert_eq!(f.len(), 1);
    assert!(f[0].residual == 0.0);

    let err = solve_fermion_squeezed(&(&e(1) * &e(2)), &G::zero(L), sp).unwrap_err();
    assert!(matches!(err, Error::EigenvalueConstraintViolated { .. }));
    assert!(matches!(solve_fermion_squeezed(&e(1), &G::zero(L), sp), Err(Error::Parity(_))));
}

#[test]
fn oracle_contains_general_families() {
    let mut rng = testutil::rng(17);
    let sp = space(9, 3);
    let beta = &G::scalar(L, Complex64::new(0.2, 0.1)) + &e(1).scale(0.3);
    let gamma = &s(0.3) + &e(2).scale(0.2);
    let delta = &s(0.2) + &e(3).scale(-0.4);
    let z = &even_param(&mut rng, 0.5) + &e(4).scale(0.3);
    let red = ReducedCoefficients::new(beta.clone(), gamma.clone(), delta.clone(), z.clone());
    let oracle = oracle_nullspace_lift(&red.expr(), &z, sp).unwrap();
    assert_eq!(oracle.body_dimension, 2);
    for f in solve_general(&beta, &gamma, &delta, &z, sp).unwrap() {
        assert!(oracle.contains(&f.state, 1e-9));
    }
}
