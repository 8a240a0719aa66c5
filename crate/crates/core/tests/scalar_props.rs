//! Property tests for the exact scalar ring.

use lieosc::scalar::{rat, Rational, Surd};
use proptest::prelude::*;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-1000i64..=1000, 1i64..=40).prop_map(|(n, d)| rat(n, d))
}

fn arb_surd() -> impl Strategy<Value = Surd> {
    prop::collection::vec((1i64..=60, arb_rational(), arb_rational()), 0..=8)
        .prop_map(|raw| Surd::normalize(raw).unwrap())
}

proptest! {
    #[test]
    fn addition_commutes(a in arb_surd(), b in arb_surd()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn addition_associates(a in arb_surd(), b in arb_surd(), c in arb_surd()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_commutes(a in arb_surd(), b in arb_surd()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_associates(a in arb_surd(), b in arb_surd(), c in arb_surd()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn distributivity(a in arb_surd(), b in arb_surd(), c in arb_surd()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn normalize_is_idempotent(a in arb_surd()) {
        let raw: Vec<(i64, Rational, Rational)> = a
            .terms()
            .iter()
            .map(|t| (t.rad as i64, t.re.clone(), t.im.clone()))
            .collect();
        prop_assert_eq!(Surd::normalize(raw).unwrap(), a);
    }

    #[test]
    fn conjugation_is_multiplicative(a in arb_surd(), b in arb_surd()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    /// Numeric evaluation is a ring homomorphism to within 1e−12 relative to
    /// the magnitudes involved.
    #[test]
    fn to_complex_is_homomorphic(a in arb_surd(), b in arb_surd()) {
        let (ar, ai) = a.to_complex();
        let (br, bi) = b.to_complex();
        let (pr, pi) = (&a * &b).to_complex();
        let expected = (ar * br - ai * bi, ar * bi + ai * br);
        let scale = 1.0 + (ar.hypot(ai) * br.hypot(bi)).abs();
        prop_assert!((pr - expected.0).abs() / scale < 1e-12);
        prop_assert!((pi - expected.1).abs() / scale < 1e-12);

        let (sr, si) = (&a + &b).to_complex();
        let sscale = 1.0 + ar.abs() + br.abs() + ai.abs() + bi.abs();
        prop_assert!((sr - (ar + br)).abs() / sscale < 1e-12);
        prop_assert!((si - (ai + bi)).abs() / sscale < 1e-12);
    }

    #[test]
    fn json_round_trip(a in arb_surd()) {
        let js = serde_json::to_string(&a).unwrap();
        let back: Surd = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(a, back);
    }

    #[test]
    fn radicands_stay_squarefree(a in arb_surd(), b in arb_surd()) {
        for t in (&a * &b).terms() {
            let d = t.rad;
            for p in 2u64..=60 {
                prop_assert!(d % (p * p) != 0, "radicand {} not squarefree", d);
            }
        }
    }
}
