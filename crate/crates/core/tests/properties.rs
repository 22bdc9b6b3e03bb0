use jordanian_core::fock;
use jordanian_core::hopfcheck::{coproduct, counit};
use jordanian_core::ncalg::{normal_form, Generator, NCPoly, Ring, Word};
use jordanian_core::scalar::{rat, RadScalar};
use jordanian_core::{exprio, RadScalar as Reexported};
use proptest::prelude::*;

fn arb_word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(Generator::ALL.to_vec()), 0..=max)
}

fn arb_coef() -> impl Strategy<Value = RadScalar> {
    (-3i64..=3, 0u32..=1, 1i64..=3).prop_map(|(n, hp, d)| RadScalar::h_pow(rat(n, d), hp))
}

fn arb_poly(ring: Ring) -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((arb_word(3), arb_coef()), 0..4).prop_map(move |t| normal_form(&t, ring))
}

fn arb_ring() -> impl Strategy<Value = Ring> {
    prop::sample::select(vec![Ring::Gl, Ring::Sl])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coproduct_is_multiplicative((p, q) in arb_ring().prop_flat_map(|r| (arb_poly(r), arb_poly(r)))) {
        prop_assert_eq!(coproduct(&(&p * &q)), coproduct(&p).mul(&coproduct(&q)));
        prop_assert_eq!(counit(&(&p * &q)), &counit(&p) * &counit(&q));
    }

    #[test]
    fn json_round_trip(ring in arb_ring(), terms in prop::collection::vec((arb_word(4), arb_coef()), 0..5)) {
        let p = normal_form(&terms, ring);
        let back = NCPoly::from_json_str(&p.to_json().to_string()).unwrap();
        prop_assert_eq!(&back, &p);
        for (_, c) in p.terms() {
            prop_assert_eq!(&Reexported::from_json_str(&c.to_json().to_string()).unwrap(), c);
        }
    }

    #[test]
    fn parse_inverts_print(ring in arb_ring(), terms in prop::collection::vec((arb_word(4), arb_coef()), 0..5)) {
        let p = normal_form(&terms, ring);
        prop_assert_eq!(exprio::parse(&exprio::to_text(&p), ring).unwrap(), p);
    }

    #[test]
    fn evaluation_is_multiplicative(a in arb_word(2), b in arb_word(2), n in 0u32..=2) {
        let p = normal_form(&[(a.clone(), RadScalar::one())], Ring::Gl);
        let q = normal_form(&[(b.clone(), RadScalar::one())], Ring::Gl);
        let pq = fock::evaluate(&(&p * &q), n).unwrap();
        let inner = fock::evaluate(&q, n).unwrap();
        let outer = fock::evaluate(&p, inner.target()).unwrap();
        prop_assert_eq!(pq, &outer * &inner);
    }
}
