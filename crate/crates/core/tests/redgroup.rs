mod common;

use std::collections::BTreeMap;

use autlie::cases::{d3lambda_group, twist_matrices};
use autlie::liealg::MatElem;
use autlie::moebius::MoebiusT;
use autlie::polyrat::{parse_ratl, RatL};
use autlie::redgroup::{
    factor_analysis, red_act, red_compose, red_generate, staged_average, AutKind, Automorphism, RedElem,
};
use autlie::scalars::{Scalar, Tower};
use common::{case_groups, raw_coeffs, traceless};
use proptest::prelude::*;

fn diag(l: u32, d: &[i64]) -> MatElem {
    let n = d.len();
    let entries = (0..n * n)
        .map(|k| if k / n == k % n { RatL::from_int(l, d[k / n]) } else { RatL::zero(l) })
        .collect();
    MatElem::general(n, entries)
}

#[test]
fn case_groups_have_expected_orders() {
    let orders: BTreeMap<String, usize> =
        case_groups().iter().map(|g| (g.name().to_string(), g.order())).collect();
    for (name, n) in &orders {
        let want = if name.starts_with("D3") { 6 } else { 4 };
        assert_eq!(*n, want, "{name}");
    }
    assert!(orders.len() >= 6);
}

#[test]
fn group_axioms_and_inverses() {
    for g in case_groups() {
        assert!(g.table_is_group(), "{}", g.name());
        for (i, e) in g.elements().iter().enumerate() {
            let inv = g.element(g.inv(i));
            assert!(red_compose(e, inv).unwrap().is_identity(), "{} element {i}", g.name());
        }
    }
}

#[test]
fn action_respects_composition() {
    // Constant units times 1, λ, λ⁻¹.
    for g in case_groups() {
        let d = g.dim();
        let l = g.element(0).sigma.conductor();
        let mut probes = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                for k in -1..=1 {
                    probes.push(MatElem::unit(d, i, j, l).scale_fun(&RatL::monomial(Scalar::one(l), k)));
                }
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                let ab = red_compose(a, b).unwrap();
                for p in &probes {
                    let lhs = red_act(&ab, p).unwrap();
                    let rhs = red_act(a, &red_act(b, p).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{}", g.name());
                }
            }
        }
    }
}

#[test]
fn factor_subgroups_are_normal_for_untwisted_groups() {
    for g in case_groups() {
        if g.elements().iter().any(|e| !e.phi.is_constant()) {
            continue;
        }
        let fa = factor_analysis(&g);
        assert!(fa.normal, "{}", g.name());
        assert_eq!(fa.k.len() * fa.quotient_order, g.order());
        assert!(fa.diag_witness, "{}", g.name());
    }
}

#[test]
fn twisted_group_relations() {
    let t = Tower::new(12, &[]);
    let g = d3lambda_group(&t).unwrap();
    assert_eq!(g.order(), 6);
    let (tm, ti) = twist_matrices(&t).unwrap();
    assert_eq!(tm.matmul(&ti), diag(12, &[1, 1, 1]).allowing_trace(true));
    let inv = MoebiusT::inversion(12);
    let lhs = tm.matmul(&ti.pullback(&inv).transpose());
    assert_eq!(lhs, diag(12, &[-1, -1, -1]));
    // Descriptive only: the λ-dependent part is not a subgroup of Aut A.
    let fa = factor_analysis(&g);
    assert_eq!(fa.k.len() * fa.quotient_order, 6);
}

#[test]
fn inner_automorphisms_are_projective() {
    let l = 12;
    let t = Tower::new(l, &[]);
    let q = diag(l, &[1, -1, 2]);
    let c = parse_ratl("3*z3", &t).unwrap();
    let a = Automorphism::inner(q.clone()).unwrap();
    let b = Automorphism::inner(q.scale_fun(&c)).unwrap();
    assert_eq!(a, b);
    let x = MatElem::unit(3, 0, 2, l);
    assert_eq!(a.apply(&x), b.apply(&x));
    assert_ne!(a, Automorphism::inner(diag(l, &[1, 1, 2])).unwrap());
}

#[test]
fn outer_composed_with_outer_is_inner() {
    let l = 4;
    let h = diag(l, &[1, -1, 1]);
    let o = Automorphism::outer(h.clone()).unwrap();
    let oo = o.compose(&o);
    assert_eq!(oo.kind(), AutKind::Inner);
    let a = traceless(3, l, &(0..45).map(|k| (k % 5) - 2).collect::<Vec<_>>());
    assert_eq!(oo.apply(&a), o.apply(&o.apply(&a)));
}

#[test]
fn direct_product_example() {
    // ℤ₂ acting on λ only, times ℤ₂ acting on sl(2) only.
    let l = 4;
    let s = RedElem::new(MoebiusT::scaling(Scalar::from_int(l, -1)), Automorphism::identity(2, l));
    let t = RedElem::new(MoebiusT::identity(l), Automorphism::inner(diag(l, &[1, -1])).unwrap());
    let g = red_generate("Z2xZ2", &[s, t], 8, None).unwrap();
    assert_eq!(g.order(), 4);
    let fa = factor_analysis(&g);
    assert_eq!((fa.u1.len(), fa.u2.len(), fa.k.len(), fa.quotient_order), (2, 2, 4, 1));
    assert!(fa.normal);
}

#[test]
fn diagonal_dihedral_example() {
    let g = autlie::cases::d2_sl2_group(4).unwrap();
    let fa = factor_analysis(&g);
    assert_eq!((fa.u1.len(), fa.u2.len(), fa.k.len(), fa.quotient_order), (1, 1, 1, 4));
    assert!(fa.normal && fa.diag_witness);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5))]

    #[test]
    fn staged_average_equals_full_average(raw in raw_coeffs()) {
        for g in case_groups() {
            let fa = factor_analysis(&g);
            if !fa.normal {
                continue;
            }
            let l = g.element(0).sigma.conductor();
            let a = traceless(g.dim(), l, &raw);
            let all: Vec<usize> = (0..g.order()).collect();
            prop_assert_eq!(staged_average(&g, &fa, &a), g.average_over(&all, &a));
        }
    }
}
