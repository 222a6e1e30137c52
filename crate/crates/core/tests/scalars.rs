use autlie::polyrat::parse_scalar;
use autlie::scalars::{cyclotomic_poly, Bindings, CycNum, Scalar, Tower};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const CONDUCTORS: &[u32] = &[1, 2, 3, 4, 5, 8, 12, 20, 24, 60];

fn cyc(l: u32, cs: &[i64]) -> CycNum {
    cs.iter().enumerate().fold(CycNum::zero(l), |acc, (k, &c)| {
        acc.try_add(&CycNum::root(l, k as i64).try_mul(&CycNum::from_int(l, c)).unwrap())
            .unwrap()
    })
}

fn arb_cyc() -> impl Strategy<Value = CycNum> {
    (prop::sample::select(CONDUCTORS), prop::collection::vec(-5i64..=5, 1..6))
        .prop_map(|(l, cs)| cyc(l, &cs))
}

fn arb_pair() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    (
        prop::sample::select(CONDUCTORS),
        prop::collection::vec(-4i64..=4, 1..5),
        prop::collection::vec(-4i64..=4, 1..5),
        prop::collection::vec(-4i64..=4, 1..5),
    )
        .prop_map(|(l, a, b, c)| (cyc(l, &a), cyc(l, &b), cyc(l, &c)))
}

#[test]
fn roots_of_unity_have_the_right_order() {
    for &l in CONDUCTORS {
        let z = CycNum::root(l, 1);
        assert!(z.pow(l as i64).unwrap().is_one(), "zeta_{l}^{l}");
        // Φ_L(ζ_L) = 0.
        let phi = cyclotomic_poly(l);
        let mut acc = CycNum::zero(l);
        for (k, c) in phi.iter().enumerate() {
            let term = z
                .pow(k as i64)
                .unwrap()
                .try_mul(&CycNum::from_rational(l, &BigRational::from_integer(c.clone())))
                .unwrap();
            acc = acc.try_add(&term).unwrap();
        }
        assert!(acc.is_zero(), "Phi_{l}(zeta_{l})");
        for d in 1..l {
            if l % d == 0 {
                assert!(!z.pow(d as i64).unwrap().is_one());
            }
        }
    }
}

#[test]
fn cyclotomic_polynomials_of_small_conductors() {
    let ints = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    assert_eq!(cyclotomic_poly(4), ints(&[1, 0, 1]));
    assert_eq!(cyclotomic_poly(12), ints(&[1, 0, -1, 0, 1]));
    assert_eq!(cyclotomic_poly(20), ints(&[1, 0, -1, 0, 1, 0, -1, 0, 1]));
    assert_eq!(cyclotomic_poly(8), ints(&[1, 0, 0, 0, 1]));
}

#[test]
fn mixing_conductors_is_an_error() {
    let a = CycNum::root(4, 1);
    let b = CycNum::root(3, 1);
    assert!(a.try_add(&b).is_err());
    // Explicit embedding is allowed.
    let s = a.embed(12).unwrap().try_add(&b.embed(12).unwrap()).unwrap();
    assert_eq!(s.conductor(), 12);
}

#[test]
fn parameter_fractions_are_canonical() {
    let t = Tower::new(4, &["g", "m"]);
    let a = parse_scalar("(g^2 - 1)/(g - 1)", &t).unwrap();
    let b = parse_scalar("g + 1", &t).unwrap();
    assert_eq!(a, b);
    let c = parse_scalar("(m*g - g)/(g*(m - 1))", &t).unwrap();
    assert!(c.is_one());
    let d = parse_scalar("8*g/(1 - g^4)", &t).unwrap();
    let e = parse_scalar("-8*g/((g^2 - 1)*(g^2 + 1))", &t).unwrap();
    assert_eq!(d, e);
}

#[test]
fn evaluation_of_parameters() {
    let t = Tower::new(4, &["g", "m"]);
    let a = parse_scalar("2*m^2*(1-g^4)/(g*(m^2-g^2)*(1-m^2*g^2))", &t).unwrap();
    let b = Bindings::new()
        .with(0, CycNum::from_int(4, 2))
        .with(1, CycNum::from_int(4, 3));
    // 2·9·(1−16)/(2·5·(1−36)) = −270/−350 = 27/35.
    let v = a.eval(&b).unwrap();
    let want = BigRational::new(27.into(), 35.into());
    assert_eq!(v.to_rational(), Some(want));
}

proptest! {
    #[test]
    fn conjugation_is_an_involutive_homomorphism((a, b, _) in arb_pair()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.try_add(&b).unwrap().conj(), a.conj().try_add(&b.conj()).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap().conj(), a.conj().try_mul(&b.conj()).unwrap());
    }

    #[test]
    fn field_axioms((a, b, c) in arb_pair()) {
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(ab.try_mul(&c).unwrap(), a.try_mul(&b.try_mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.try_mul(&b.try_add(&c).unwrap()).unwrap(),
            ab.try_add(&a.try_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(ab.clone(), b.try_mul(&a).unwrap());
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
        if !a.is_zero() {
            prop_assert!(a.try_mul(&a.inv().unwrap()).unwrap().is_one());
        }
    }

    #[test]
    fn embedding_preserves_arithmetic(a in arb_cyc(), k in 1u32..4) {
        let m = a.conductor() * k;
        let e = a.embed(m).unwrap();
        prop_assert_eq!(e.try_mul(&e).unwrap(), a.try_mul(&a).unwrap().embed(m).unwrap());
        prop_assert_eq!(e.conj(), a.conj().embed(m).unwrap());
        prop_assert_eq!(e.is_rational(), a.is_rational());
    }

    #[test]
    fn symbolic_identity_agrees_with_evaluation(p in -6i64..6, q in 1i64..6, x in 2i64..9) {
        // (g^2 − p²)/(g − p) + q/g vs g + p + q/g at g = x.
        let t = Tower::new(4, &["g"]);
        let s = parse_scalar(&format!("(g^2 - ({p})^2)/(g - ({p})) + {q}/g"), &t).unwrap();
        let r = &(&Scalar::param(4, 0) + &Scalar::from_int(4, p))
            + &(&Scalar::from_int(4, q) * &Scalar::param(4, 0).inv().unwrap());
        prop_assert_eq!(s.clone(), r);
        if x != p {
            let b = Bindings::new().with(0, CycNum::from_int(4, x));
            let want = BigRational::new((x * x + p * x + q).into(), x.into());
            prop_assert_eq!(s.eval(&b).unwrap().to_rational(), Some(want));
        }
    }
}
