use num_complex::Complex64;
use proptest::prelude::*;

use supergrass::cli::{parse_expr, parse_state, serialize_state, StateDocument};
use supergrass::{FockSpace, GrassmannElement, Letter, Sector, SuperOperatorExpr, SuperState};

const ORDER: usize = 5;

fn coeff() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn element(order: usize) -> impl Strategy<Value = GrassmannElement> {
    prop::collection::vec((0..1u32 << order, coeff()), 0..8)
        .prop_map(move |blades| GrassmannElement::from_blades(order, blades).unwrap())
}

fn word() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(prop::sample::select(Letter::GENERATORS.to_vec()), 0..4)
}

fn operator(order: usize) -> impl Strategy<Value = SuperOperatorExpr> {
    prop::collection::vec((element(order), word()), 1..4).prop_map(move |terms| {
        terms.into_iter().fold(SuperOperatorExpr::zero(order), |acc, (c, w)| acc + SuperOperatorExpr::term(c, &w))
    })
}

fn state(space: FockSpace) -> impl Strategy<Value = SuperState> {
    prop::collection::vec((0..=space.cutoff, any::<bool>(), element(space.order)), 0..10).prop_map(move |entries| {
        let coeffs = entries.into_iter().map(|(n, plus, c)| (n, if plus { Sector::Plus } else { Sector::Minus }, c));
        SuperState::from_coefficients(space, coeffs).unwrap()
    })
}

fn sign(p: bool) -> f64 {
    if p {
        -1.0
    } else {
        1.0
    }
}

proptest! {
    #[test]
    fn associative(x in element(ORDER), y in element(ORDER), z in element(ORDER)) {
        prop_assert!((&(&x * &y) * &z).distance(&(&x * &(&y * &z))) < 1e-12);
    }

    #[test]
    fn graded_commutative(x in element(ORDER), y in element(ORDER)) {
        for (xp, px) in [(x.even(), false), (x.odd(), true)] {
            for (yq, qy) in [(y.even(), false), (y.odd(), true)] {
                let swapped = (&yq * &xp).scale(sign(px && qy));
                prop_assert!((&xp * &yq).distance(&swapped) < 1e-12);
            }
        }
    }

    #[test]
    fn odd_elements_move_past_with_a_star(x in element(ORDER), z in element(ORDER)) {
        let z1 = z.odd();
        prop_assert!((&x * &z1).distance(&(&z1 * &x.star())) < 1e-12);
    }

    #[test]
    fn adjoint_reverses_products(x in element(ORDER), y in element(ORDER)) {
        prop_assert!((&x * &y).adjoint().distance(&(&y.adjoint() * &x.adjoint())) < 1e-12);
        prop_assert!(x.adjoint().adjoint().distance(&x) < 1e-15);
    }

    #[test]
    fn invertible_iff_body_nonzero(x in element(ORDER), shift in coeff()) {
        let y = &x.soul() + &GrassmannElement::scalar(ORDER, shift + Complex64::new(2.0, 0.0));
        let inv = y.inverse().unwrap();
        prop_assert!((&y * &inv).distance(&GrassmannElement::one(ORDER)) < 1e-10);
        prop_assert!(x.soul().inverse().is_err());
    }

    #[test]
    fn parsed_sums_match_direct_construction(terms in prop::collection::vec((-9.0..9.0f64, 0..1u32 << ORDER), 1..6)) {
        let mut text = String::new();
        let mut direct = GrassmannElement::zero(ORDER);
        for (k, &(c, mask)) in terms.iter().enumerate() {
            if k > 0 {
                text.push_str(" + ");
            }
            text.push_str(&format!("({c})"));
            for j in 0..ORDER {
                if mask >> j & 1 == 1 {
                    text.push_str(&format!("^e{}", j + 1));
                }
            }
            direct = &direct + &GrassmannElement::from_blades(ORDER, [(mask, Complex64::new(c, 0.0))]).unwrap();
        }
        prop_assert!(parse_expr(&text, ORDER).unwrap().distance(&direct) < 1e-12, "{}", text);
    }

    #[test]
    fn documents_round_trip(psi in state(FockSpace::new(4, 6, 2).unwrap())) {
        let text = serialize_state(&psi).to_text();
        let back = parse_state(&StateDocument::from_text(&text).unwrap()).unwrap();
        prop_assert_eq!(back.sub(&psi).max_abs(), 0.0);
    }

    #[test]
    fn matrices_act_like_words(expr in operator(3), psi in state(FockSpace::new(3, 10, 4).unwrap())) {
        let space = psi.space();
        let by_matrix = space.realize(&expr).apply(&psi);
        let by_words = psi.apply(&expr);
        prop_assert!(by_matrix.sub(&by_words).max_abs_in_band() < 1e-12);
    }
}
