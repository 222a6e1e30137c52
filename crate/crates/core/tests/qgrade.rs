use autlie::cases::build_case;
use autlie::liealg::MatElem;
use autlie::moebius::SpherePoint;
use autlie::polyrat::parse_ratl;
use autlie::qgrade::{
    binomial_shift, change_basis, decompose, mat_product, poles_separate, structure_table, QError, Vector,
};
use autlie::scalars::{Bindings, CycNum, Scalar};
use proptest::prelude::*;

const CONCRETE: &[&str] = &["D2_sl2_zero", "D2A_hat_sl3", "D2B_sl3", "D3B_sl3", "D3lambda_sl3"];

fn int(l: u32, v: i64) -> Scalar {
    Scalar::from_int(l, v)
}

fn frac(l: u32, p: i64, q: i64) -> Scalar {
    &int(l, p) * &int(l, q).inv().unwrap()
}

#[test]
fn decomposition_of_the_generic_bracket() {
    // [x, y] = h¹ + a·h with a = 2μ²(1−γ⁴)/(γ(μ²−γ²)(1−μ²γ²)); at γ = 2, μ = 3, a = 27/35.
    let c = build_case("D2_sl2", Some((int(2, 2), int(2, 3)))).unwrap();
    let b = &c.basis;
    let v = decompose(&b.gens[0].bracket(&b.gens[1]), b).unwrap();
    let want: Vector = [((2, 1), int(2, 1)), ((2, 0), frac(2, 27, 35))].into_iter().collect();
    assert_eq!(v, want);
}

#[test]
fn non_invariant_elements_are_rejected() {
    let c = build_case("D2_sl2_zero", None).unwrap();
    let t = &c.tower;
    let a = MatElem::unit(2, 0, 1, t.conductor()).scale_fun(&parse_ratl("1/(l-3)", t).unwrap());
    assert!(matches!(decompose(&a, &c.basis), Err(QError::NotInSpan(_))));
}

#[test]
fn tables_are_antisymmetric_and_reconstruct() {
    for id in CONCRETE {
        let c = build_case(id, None).unwrap();
        let t = structure_table(&c.basis).unwrap();
        assert!(t.is_antisymmetric(), "{id}");
        for i in 0..t.len() {
            for j in 0..t.len() {
                let v: Vector = t.terms(i, j).iter().map(|x| ((x.k, x.offset), x.coeff.clone())).collect();
                assert_eq!(c.basis.combine(&v), c.basis.gens[i].bracket(&c.basis.gens[j]), "{id}");
            }
        }
    }
}

#[test]
fn pole_sides_separate() {
    for id in CONCRETE {
        let c = build_case(id, None).unwrap();
        assert!(poles_separate(&c.basis), "{id}");
    }
}

#[test]
fn triangular_change_of_zero_orbit() {
    // f(λ, γ, ν) = f(λ, γ, μ) − f(ν, γ, μ), so x_ν^n = Σ C(n,k)(−f(ν))^k x_μ^{n−k}.
    let (g, mu, nu) = (int(2, 2), int(2, 3), frac(2, 1, 3));
    let old = build_case("D2_sl2", Some((g.clone(), mu))).unwrap();
    let new = build_case("D2_sl2", Some((g, nu.clone()))).unwrap();
    let nmax = 5;
    let tri = change_basis(&old.basis, &SpherePoint::finite(nu), nmax).unwrap();
    for (n, row) in tri.iter().enumerate() {
        for i in 0..3 {
            let v: Vector = (0..=n)
                .map(|k| ((i, k as i64), row[k].clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            assert_eq!(old.basis.combine(&v), new.basis.element(i, n as i64), "n = {n}");
        }
    }
    assert!(tri[0][0].is_one() && tri[0][1..].iter().all(Scalar::is_zero));
}

#[test]
fn change_basis_rejects_the_pole_orbit() {
    let c = build_case("D2_sl2", Some((int(2, 2), int(2, 3)))).unwrap();
    let r = change_basis(&c.basis, &SpherePoint::from_int(2, -2), 3);
    assert!(matches!(r, Err(QError::OrbitClash)));
}

#[test]
fn triangular_round_trip() {
    let s = frac(2, -7, 5);
    let there = binomial_shift(&s, 6);
    let back = binomial_shift(&s.neg_ref(), 6);
    let id = mat_product(&there, &back);
    for (i, row) in id.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            assert_eq!(c.is_one(), i == j);
            assert_eq!(c.is_zero(), i != j);
        }
    }
}

#[test]
fn windows_and_splitting() {
    for id in CONCRETE {
        let c = build_case(id, None).unwrap();
        let t = structure_table(&c.basis).unwrap();
        let w = t.window();
        assert_eq!((w.p, w.q), (1, 0), "{id}");
        let s = t.split_check();
        assert!(s.plus_closed && s.minus_closed, "{id}");
    }
}

#[test]
fn symbolic_table_specializes() {
    let sym = structure_table(&build_case("D2_sl2", None).unwrap().basis).unwrap();
    for (g, m) in [(2, 3), (3, 5), (-2, 7)] {
        let b = Bindings::new().with(0, CycNum::from_int(2, g)).with(1, CycNum::from_int(2, m));
        let direct = build_case("D2_sl2", Some((int(2, g), int(2, m)))).unwrap();
        let concrete = structure_table(&direct.basis).unwrap();
        assert_eq!(sym.evaluate(&b).unwrap().entries, concrete.entries, "({g}, {m})");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn shift_law(n in -2i64..=2, m in -2i64..=2, case in 0usize..CONCRETE.len(), i in 0usize..8, j in 0usize..8) {
        let c = build_case(CONCRETE[case], None).unwrap();
        let b = c.basis.clone().with_range(-8, 8);
        let (i, j) = (i % b.len(), j % b.len());
        let t = structure_table(&b).unwrap();
        let direct = decompose(&b.element(i, n).bracket(&b.element(j, m)), &b).unwrap();
        let shifted: Vector = t
            .bracket(i, n, j, m)
            .into_iter()
            .map(|(k, d, c)| ((k, d), c))
            .collect();
        prop_assert_eq!(direct, shifted);
    }
}
