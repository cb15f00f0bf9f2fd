use mastercount::hyper::{
    basis_count, cancel_params, eval_reduced, lower_lower, raise_upper, reduce_shifts, series_sum,
    series_theta, Ode, ParamExpr, ThetaPoly, PFQ,
};
use mastercount::kernel::rat::{int, rat};
use mastercount::{BigFloat, Precision, Rat};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const DIGITS: u32 = 30;

fn bf(q: &Rat) -> BigFloat {
    BigFloat::from_rat(q, Precision::from_digits(DIGITS + 10))
}

fn close(a: &BigFloat, b: &BigFloat, scale: &BigFloat, digits: u32) -> bool {
    let p = Precision::from_digits(DIGITS + 10);
    let t = BigFloat::one(p) / BigFloat::from_i64(10, p).powi(u64::from(digits));
    let s = if scale.abs() > BigFloat::one(p) {
        scale.abs()
    } else {
        BigFloat::one(p)
    };
    (a - b).abs() < t * s
}

/// `c0 + c1 n` with small coefficients and a generic constant part.
fn param() -> impl Strategy<Value = ParamExpr> {
    (
        (-20i64..20, 1i64..7),
        prop::sample::select(vec![rat(0, 1), rat(1, 2), rat(-1, 2), int(1), int(-1)]),
    )
        .prop_map(|((p, q), c1)| ParamExpr::new(rat(p, q), c1))
}

fn pfq(q: usize) -> impl Strategy<Value = PFQ> {
    (
        prop::collection::vec(param(), q + 1),
        prop::collection::vec(param(), q),
    )
        .prop_map(|(u, l)| PFQ::new(u, l).unwrap())
}

/// Dimension values away from small integers.
fn dim() -> impl Strategy<Value = Rat> {
    (-30i64..30).prop_map(|k| &int(4) - &rat(2 * k + 1, 37))
}

fn point() -> impl Strategy<Value = Rat> {
    (-9i64..=9).prop_map(|k| rat(k, 20))
}

/// A function whose parameters are not too close to the poles at `n0`.
fn regular(f: &PFQ, n0: &Rat) -> bool {
    let far = |x: Rat| (&x - x.round()).abs() > rat(1, 100) || x > int(0);
    f.lower()
        .iter()
        .all(|b| far(b.eval(n0)) && far(b.eval(n0) - int(3)))
        && f.upper().iter().all(|a| !a.eval(n0).is_integer())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// `θ∏(θ+b-1)F = z∏(θ+a)F` holds numerically.
    #[test]
    fn ode_residual(f in (1usize..=3).prop_flat_map(pfq), n0 in dim(), z0 in point()) {
        prop_assume!(regular(&f, &n0) && !z0.is_zero());
        let ode = Ode::homogeneous(&f);
        let z = bf(&z0);
        let lhs = ode.op.eval_on(&f, &z, &n0, DIGITS).unwrap();
        let scale = series_theta(&f, ode.order() as u32, &z, &n0, DIGITS).unwrap();
        let zero = BigFloat::zero(z.precision());
        prop_assert!(close(&lhs, &zero, &scale, DIGITS - 8), "{} at n = {}, z = {}", f, n0, z0);
    }

    /// The contiguous operators reproduce the shifted function.
    #[test]
    fn contiguous_soundness(f in (1usize..=3).prop_flat_map(pfq), n0 in dim(), z0 in point(), i in 0usize..4) {
        prop_assume!(regular(&f, &n0));
        let z = bf(&z0);
        let iu = i % f.p();
        let (op, base) = raise_upper(&f, iu).unwrap();
        let raised = f.with_upper(iu, f.upper()[iu].shifted(1));
        let want = series_sum(&raised, &z, &n0, DIGITS).unwrap();
        let got = op.eval_on(&base, &z, &n0, DIGITS).unwrap();
        prop_assert!(close(&got, &want, &want, DIGITS - 8), "raise {} in {}", iu, f);

        let jl = i % f.q();
        let lowered = f.with_lower(jl, f.lower()[jl].shifted(-1));
        prop_assume!(regular(&lowered, &n0));
        let (op, base) = lower_lower(&f, jl).unwrap();
        let want = series_sum(&lowered, &z, &n0, DIGITS).unwrap();
        let got = op.eval_on(&base, &z, &n0, DIGITS).unwrap();
        prop_assert!(close(&got, &want, &want, DIGITS - 8), "lower {} in {}", jl, f);
    }

    /// Removing a matching upper/lower pair changes neither value nor count.
    #[test]
    fn cancel_params_invariance(f in (1usize..=2).prop_flat_map(pfq), c in param(), n0 in dim(), z0 in point()) {
        let mut u = f.upper().to_vec();
        let mut l = f.lower().to_vec();
        u.push(c.clone());
        l.push(c);
        let g = PFQ::new(u, l).unwrap();
        prop_assert_eq!(cancel_params(&g), cancel_params(&f));
        prop_assert_eq!(basis_count(&g), basis_count(&f));
        prop_assume!(regular(&g, &n0));
        let z = bf(&z0);
        let a = series_sum(&f, &z, &n0, DIGITS).unwrap();
        let b = series_sum(&g, &z, &n0, DIGITS).unwrap();
        prop_assert!(close(&a, &b, &a, DIGITS - 5));
    }

    /// θ composition agrees with repeated application.
    #[test]
    fn theta_composition(f in pfq(1), n0 in dim(), z0 in point(), a in param()) {
        prop_assume!(regular(&f, &n0));
        let t = ThetaPoly::theta_plus(&a);
        let tt = t.compose(&t);
        let z = bf(&z0);
        let direct = tt.eval_on(&f, &z, &n0, DIGITS).unwrap();
        let na = bf(&a.eval(&n0));
        let th = |k| series_theta(&f, k, &z, &n0, DIGITS).unwrap();
        let want = th(2) + bf(&int(2)) * na.clone() * th(1) + na.clone() * na * th(0);
        prop_assert!(close(&direct, &want, &want, DIGITS - 8));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Reducing a shifted function onto its basis reproduces its value,
    /// uses one composition per unit shift, and stays below the order.
    #[test]
    fn reduction_round_trip(
        basis in (1usize..=2).prop_flat_map(pfq),
        ups in prop::collection::vec(0i64..3, 3),
        downs in prop::collection::vec(0i64..3, 2),
        n0 in dim(),
        z0 in point(),
    ) {
        prop_assume!(basis.upper().iter().all(|a| !a.is_one()));
        prop_assume!(cancel_params(&basis) == basis);
        let u: Vec<ParamExpr> = basis.upper().iter().zip(&ups).map(|(a, k)| a.shifted(*k)).collect();
        let l: Vec<ParamExpr> = basis.lower().iter().zip(&downs).map(|(b, k)| b.shifted(-k)).collect();
        let f = PFQ::new(u, l).unwrap();
        prop_assume!(cancel_params(&f) == f);
        prop_assume!(regular(&basis, &n0) && regular(&f, &n0));
        let shifts: i64 = ups[..basis.p()].iter().sum::<i64>() + downs[..basis.q()].iter().sum::<i64>();

        let r = match reduce_shifts(&f, &basis) {
            Ok(r) => r,
            // A parameter crossing zero along the path is legitimately singular.
            Err(_) => return Ok(()),
        };
        prop_assert_eq!(r.compositions as i64, shifts);
        prop_assert!(r.op.degree().map_or(true, |d| d < basis.ode_order()));
        prop_assert!(r.remainder.is_zero());
        let z = bf(&z0);
        let want = series_sum(&f, &z, &n0, DIGITS).unwrap();
        let got = match eval_reduced(&r, &z, &n0, DIGITS) {
            Ok(v) => v,
            Err(_) => return Ok(()),
        };
        prop_assert!(close(&got, &want, &want, DIGITS - 10), "{} onto {}", f, basis);
    }
}

#[test]
fn basis_counts_of_the_sunset_terms() {
    use mastercount::sunset::{build_representation, MASTERS};
    for m in MASTERS {
        for t in build_representation(m).unwrap().terms {
            assert_eq!(basis_count(&t.pfq), 2, "{m}: {}", t.pfq);
        }
    }
}
