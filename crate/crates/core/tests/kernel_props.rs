use mastercount::kernel::rat::{int, rat};
use mastercount::kernel::{gamma, gamma_rat, Monomial};
use mastercount::{BigFloat, Poly, Precision, Rat, RatFunc};
use proptest::prelude::*;

const DIGITS: u32 = 40;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..3, 0u32..3, -6i64..=6), 0..5).prop_map(|ts| {
        Poly::from_terms(
            ts.into_iter()
                .map(|(a, b, c)| (Monomial::new(a, b), int(c))),
        )
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero_poly()).prop_map(|(a, b)| RatFunc::new(a, b).unwrap())
}

fn nonzero_ratfunc() -> impl Strategy<Value = RatFunc> {
    ratfunc().prop_filter("nonzero", |r| !r.is_zero())
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-40i64..40, 1i64..12).prop_map(|(p, q)| rat(p, q))
}

fn tol(digits: u32) -> BigFloat {
    let p = Precision::from_digits(digits + 10);
    BigFloat::one(p) / BigFloat::from_i64(10, p).powi(u64::from(digits))
}

fn rel_err(a: &BigFloat, b: &BigFloat) -> BigFloat {
    ((a - b) / b.clone()).abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poly_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in nonzero_ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&c * &c.inv().unwrap(), RatFunc::one());
        prop_assert_eq!((&a * &c).try_div(&c).unwrap(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn canonical_form_cancels_common_factors(a in poly(), b in nonzero_poly(), g in nonzero_poly()) {
        let direct = RatFunc::new(a.clone(), b.clone()).unwrap();
        let padded = RatFunc::new(&a * &g, &b * &g).unwrap();
        prop_assert_eq!(padded, direct);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), n0 in small_rat(), z0 in small_rat()) {
        let (Ok(x), Ok(y)) = (a.eval(&n0, &z0), b.eval(&n0, &z0)) else { return Ok(()) };
        prop_assert_eq!((&a * &b).eval(&n0, &z0).unwrap(), &x * &y);
        prop_assert_eq!((&a + &b).eval(&n0, &z0).unwrap(), &x + &y);
        prop_assert_eq!(a.subs_n(&n0).unwrap().eval(&n0, &z0).unwrap(), x);
    }

    #[test]
    fn text_round_trip(a in ratfunc()) {
        prop_assert_eq!(RatFunc::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn gamma_recurrence(x in small_rat()) {
        prop_assume!(!(x.is_integer() && x <= int(0)));
        let p = Precision::from_digits(DIGITS + 10);
        let g = gamma_rat(&x, DIGITS).unwrap();
        let g1 = gamma_rat(&(&x + int(1)), DIGITS).unwrap();
        let want = BigFloat::from_rat(&x, p) * g;
        prop_assert!(rel_err(&g1, &want) < tol(DIGITS - 2), "x = {}", x);
    }

    #[test]
    fn gamma_reflection(x in small_rat()) {
        prop_assume!(!x.is_integer());
        let p = Precision::from_digits(DIGITS + 10);
        let pi = BigFloat::pi(p);
        let lhs = gamma_rat(&x, DIGITS).unwrap() * gamma_rat(&(int(1) - &x), DIGITS).unwrap()
            * (pi.clone() * BigFloat::from_rat(&x, p)).sin();
        prop_assert!(rel_err(&lhs, &pi) < tol(DIGITS - 2), "x = {}", x);
    }

    #[test]
    fn gamma_float_matches_rational(x in small_rat()) {
        prop_assume!(!(x.is_integer() && x <= int(0)));
        let p = Precision::from_digits(DIGITS + 10);
        let a = gamma(&BigFloat::from_rat(&x, p), DIGITS).unwrap();
        let b = gamma_rat(&x, DIGITS).unwrap();
        prop_assert!(rel_err(&a, &b) < tol(DIGITS - 2), "x = {}", x);
    }
}

#[test]
fn gamma_known_values() {
    let p = Precision::from_digits(DIGITS + 10);
    let sqrt_pi = BigFloat::pi(p).sqrt();
    assert!(rel_err(&gamma_rat(&rat(1, 2), DIGITS).unwrap(), &sqrt_pi) < tol(DIGITS - 2));
    let want = sqrt_pi * BigFloat::from_rat(&rat(4, 3), p);
    assert!(rel_err(&gamma_rat(&rat(-3, 2), DIGITS).unwrap(), &want) < tol(DIGITS - 2));
    assert!(gamma_rat(&int(-2), DIGITS).is_err());
}
