use std::collections::BTreeMap;

use autlie::cases::{build_case, parse_rhs, verify_appendix, verify_case, CASE_IDS};
use autlie::scalars::Scalar;

#[test]
fn every_case_passes_its_invariant_checks() {
    for id in CASE_IDS {
        let c = build_case(id, None).unwrap();
        let (r, t) = verify_case(&c).unwrap();
        for line in &r.lines {
            assert!(line.pass, "{id}: {} {}", line.name, line.detail);
        }
        assert!(t.is_antisymmetric(), "{id}");
        for name in ["reconstruction", "jacobi", "antisymmetry", "pole sides"] {
            assert!(r.line(name).is_some(), "{id} lacks {name}");
        }
    }
}

#[test]
fn errata_counts_per_case() {
    let want: BTreeMap<&str, usize> = [
        ("D2_sl2", 0),
        ("D2_sl2_zero", 1),
        ("D2A_sl3", 2),
        ("D2A_hat_sl3", 0),
        ("D3A_sl3_minus", 2),
        ("D3A_sl3_plus", 2),
        ("D2B_sl3", 0),
        ("D3B_sl3", 0),
        ("D3lambda_sl3", 4),
    ]
    .into_iter()
    .collect();
    for id in CASE_IDS {
        let c = build_case(id, None).unwrap();
        let (r, _) = verify_case(&c).unwrap();
        assert_eq!(Some(&r.errata.len()), want.get(id), "{id}");
    }
}

#[test]
fn table_errata_carry_certificates() {
    let c = build_case("D3lambda_sl3", None).unwrap();
    let (r, _) = verify_case(&c).unwrap();
    for e in &r.errata {
        assert_eq!(e.certificate, "reconstruction=true invariance=true jacobi=true", "{}", e.item);
        assert!(e.computed.contains("^{+1}"));
    }
}

#[test]
fn printed_right_hand_sides_parse() {
    let c = build_case("D2_sl2", None).unwrap();
    let t = &c.printed_tower;
    let terms = parse_rhs("2*x^1 + (g/(1-g^4))*x - 3*y", &c.basis.names, t).unwrap();
    let by_key: BTreeMap<(usize, i64), Scalar> =
        terms.into_iter().map(|t| ((t.k, t.offset), t.coeff)).collect();
    let l = t.conductor();
    assert_eq!(by_key.len(), 3);
    assert_eq!(by_key[&(0, 1)], Scalar::from_int(l, 2));
    assert_eq!(by_key[&(1, 0)], Scalar::from_int(l, -3));
    assert!(by_key[&(0, 0)].as_cyc().is_none());
    assert!(parse_rhs("2*w", &c.basis.names, t).is_err());
}

#[test]
fn unknown_case_is_rejected() {
    assert!(build_case("nosuch", None).is_err());
}

#[test]
fn appendix_checks_pass_with_tetrahedral_errata() {
    let r = verify_appendix().unwrap();
    assert!(r.passed());
    let items: Vec<&str> = r.errata.iter().map(|e| e.item.as_str()).collect();
    assert_eq!(items.len(), 3);
    assert!(items.iter().all(|i| i.contains("T(") || i.contains("f_T")));
}
