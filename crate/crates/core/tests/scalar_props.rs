use nilalg_core::text::parse_scalar;
use nilalg_core::{GaussianRational, Poly, Rational, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| {
        GaussianRational::new(
            Rational::new(BigInt::from(a), BigInt::from(b)),
            Rational::new(BigInt::from(c), BigInt::from(d)),
        )
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(gauss(), 0..=3).prop_map(Poly::new)
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| Scalar::from_parts(n, d).unwrap())
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn point() -> impl Strategy<Value = GaussianRational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| GaussianRational::from_ratio(p, q))
}

fn is_canonical(s: &Scalar) -> bool {
    let coprime = s.numer().gcd(s.denom()).is_one() || s.is_zero();
    s.denom().is_monic() && coprime && (!s.is_zero() || s.denom().is_one())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_is_a_group(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x + &Scalar::zero(), x.clone());
        prop_assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn multiplication_is_a_commutative_monoid(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &Scalar::one(), x.clone());
    }

    #[test]
    fn distributive(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn nonzero_elements_invert(x in nonzero_scalar(), y in scalar()) {
        let inv = x.inv().unwrap();
        prop_assert!((&x * &inv).is_one());
        prop_assert_eq!(&(&y / &x) * &x, y);
    }

    #[test]
    fn results_stay_canonical(x in scalar(), y in nonzero_scalar()) {
        prop_assert!(is_canonical(&x));
        prop_assert!(is_canonical(&(&x + &y)));
        prop_assert!(is_canonical(&(&x - &y)));
        prop_assert!(is_canonical(&(&x * &y)));
        prop_assert!(is_canonical(&(&x / &y)));
    }

    #[test]
    fn common_factors_cancel(n in poly(), d in nonzero_poly(), r in nonzero_poly()) {
        let plain = Scalar::from_parts(n.clone(), d.clone()).unwrap();
        let padded = Scalar::from_parts(&n * &r, &d * &r).unwrap();
        prop_assert_eq!(plain, padded);
    }

    #[test]
    fn specialization_is_a_ring_homomorphism(x in scalar(), y in scalar(), t in point()) {
        let poles = [x.denom(), y.denom()].iter().any(|d| d.eval(&t).is_zero());
        prop_assume!(!poles);
        let (xt, yt) = (x.eval(&t).unwrap(), y.eval(&t).unwrap());
        prop_assert_eq!((&x + &y).eval(&t).unwrap(), &xt + &yt);
        prop_assert_eq!((&x - &y).eval(&t).unwrap(), &xt - &yt);
        prop_assert_eq!((&x * &y).eval(&t).unwrap(), &xt * &yt);
    }

    #[test]
    fn specialization_respects_division(x in scalar(), y in nonzero_scalar(), t in point()) {
        let bad = [x.denom(), y.denom(), y.numer()].iter().any(|p| p.eval(&t).is_zero());
        prop_assume!(!bad);
        let q = x.eval(&t).unwrap().checked_div(&y.eval(&t).unwrap()).unwrap();
        prop_assert_eq!((&x / &y).eval(&t).unwrap(), q);
    }

    #[test]
    fn display_parses_back(x in scalar()) {
        prop_assert_eq!(parse_scalar(&x.to_string(), true).unwrap(), x);
    }

    #[test]
    fn gaussian_field_axioms(x in gauss(), y in gauss(), z in gauss()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
        prop_assert_eq!(x.norm_sqr(), (&x * &x.conj()).re);
    }

    #[test]
    fn gaussian_square_roots(x in gauss()) {
        let sq = &x * &x;
        let r = sq.sqrt().unwrap();
        prop_assert!(r == x || r == -x.clone());
    }
}
