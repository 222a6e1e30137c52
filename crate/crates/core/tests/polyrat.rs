use autlie::moebius::{MoebiusT, SpherePoint};
use autlie::polyrat::{parse_ratl, Poly, RatL};
use autlie::scalars::{Scalar, Tower};
use proptest::prelude::*;

const L: u32 = 4;

fn tower() -> Tower {
    Tower::new(L, &[])
}

/// `c · Π (λ − aₖ)^{eₖ}` with integer roots and signed multiplicities.
fn product(c: i64, factors: &[(i64, i64)]) -> RatL {
    factors.iter().fold(RatL::from_int(L, c), |acc, &(a, e)| {
        let lin = RatL::from_poly(Poly::from_ints(L, &[-a, 1]), L);
        &acc * &lin.pow(e).unwrap()
    })
}

fn arb_fun() -> impl Strategy<Value = (i64, Vec<(i64, i64)>)> {
    (
        prop::sample::select(vec![-3i64, -1, 1, 2, 5]),
        prop::collection::btree_map(-4i64..=4, prop::sample::select(vec![-2i64, -1, 1, 2, 3]), 1..4),
    )
        .prop_map(|(c, m)| (c, m.into_iter().collect()))
}

fn arb_moebius() -> impl Strategy<Value = MoebiusT> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_filter("invertible", |(a, b, c, d)| a * d - b * c != 0)
        .prop_map(|(a, b, c, d)| MoebiusT::from_ints(L, a, b, c, d).unwrap())
}

#[test]
fn parsing_and_canonical_form() {
    let t = tower();
    let a = parse_ratl("(l^2 - 1)/(l - 1)", &t).unwrap();
    assert_eq!(a, parse_ratl("l + 1", &t).unwrap());
    let b = parse_ratl("l^2 + l^-2 - 2", &t).unwrap();
    assert_eq!(b, parse_ratl("(l - l^-1)^2", &t).unwrap());
    assert!(b.den().is_monic());
    let c = parse_ratl("(i*l + 1)*(l - i)", &t).unwrap();
    assert_eq!(c, parse_ratl("i*l^2 + 2*l - i", &t).unwrap());
}

#[test]
fn orders_at_points_including_infinity() {
    let t = tower();
    let f = parse_ratl("(l^4 - 1)/(l^3*(l - 2)^2)", &t).unwrap();
    assert_eq!(f.order_at(&SpherePoint::from_int(L, 0)), Some(-3));
    assert_eq!(f.order_at(&SpherePoint::from_int(L, 2)), Some(-2));
    assert_eq!(f.order_at(&SpherePoint::from_int(L, 1)), Some(1));
    assert_eq!(f.order_at(&SpherePoint::finite(Scalar::root(L, 1))), Some(1));
    assert_eq!(f.order_at(&SpherePoint::infinity(L)), Some(1));
    assert_eq!(f.order_at(&SpherePoint::from_int(L, 3)), Some(0));
}

#[test]
fn pole_profile_rejects_unlisted_poles() {
    let t = tower();
    let f = parse_ratl("1/(l*(l - 3))", &t).unwrap();
    assert!(f.pole_profile(&[SpherePoint::from_int(L, 0)]).is_err());
    let p = f
        .pole_profile(&[SpherePoint::from_int(L, 0), SpherePoint::from_int(L, 3)])
        .unwrap();
    assert_eq!(p.total(), 2);
}

proptest! {
    #[test]
    fn pullback_by_identity(f in arb_fun()) {
        let f = product(f.0, &f.1);
        prop_assert_eq!(f.pullback(&MoebiusT::identity(L)), f);
    }

    #[test]
    fn pullback_is_contravariant(f in arb_fun(), m1 in arb_moebius(), m2 in arb_moebius()) {
        let f = product(f.0, &f.1);
        let lhs = f.pullback(&m1).pullback(&m2);
        let rhs = f.pullback(&m2.compose(&m1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn zeros_and_poles_balance(f in arb_fun()) {
        let g = product(f.0, &f.1);
        let mut total = g.order_at(&SpherePoint::infinity(L)).unwrap();
        for &(a, e) in &f.1 {
            let o = g.order_at(&SpherePoint::from_int(L, a)).unwrap();
            prop_assert_eq!(o, e);
            total += o;
        }
        prop_assert_eq!(total, 0);
    }

    #[test]
    fn laurent_data_determines_the_function(f in arb_fun(), at in -4i64..=4) {
        // Multiply the Laurent prefix by the denominator's expansion and read
        // off the numerator.
        let g = product(f.0, &f.1);
        let p = SpherePoint::from_int(L, at);
        let depth = g.num().degree().unwrap() + g.den().degree().unwrap() + 1;
        let s = g.laurent_at(&p, depth);
        let d = RatL::from_poly(g.den().clone(), L).laurent_at(&p, depth);
        let n = RatL::from_poly(g.num().clone(), L).laurent_at(&p, depth);
        prop_assert_eq!(s.start + d.start, n.start);
        let shifted = g.num().taylor_shift(&Scalar::from_int(L, at));
        for k in 0..depth {
            let mut acc = Scalar::zero(L);
            for j in 0..=k {
                acc = &acc + &(&s.coeffs[j] * &d.coeffs[k - j]);
            }
            let idx = n.start as usize + k;
            let want = shifted.coeff(idx).cloned().unwrap_or_else(|| Scalar::zero(L));
            prop_assert_eq!(acc, want);
        }
    }

    #[test]
    fn arithmetic_matches_evaluation(f in arb_fun(), g in arb_fun(), x in 5i64..9) {
        let (a, b) = (product(f.0, &f.1), product(g.0, &g.1));
        let pt = Scalar::from_int(L, x);
        let (va, vb) = (a.eval(&pt).unwrap(), b.eval(&pt).unwrap());
        prop_assert_eq!((&a * &b).eval(&pt).unwrap(), &va * &vb);
        prop_assert_eq!((&a + &b).eval(&pt).unwrap(), &va + &vb);
        prop_assert_eq!((&a / &b).eval(&pt).unwrap(), va.try_div(&vb).unwrap());
    }
}
