use autlie::moebius::{catalog, catalog_with, named_point, GroupKind, SpherePoint};
use autlie::polyrat::Poly;
use autlie::scalars::Scalar;

fn relations_hold(kind: GroupKind) -> bool {
    let g = catalog(kind).unwrap();
    let gens: Vec<_> = g.generators().into_iter().cloned().collect();
    kind.relations().iter().all(|(_, word, e)| {
        let w = word
            .iter()
            .fold(gens[0].pow(0), |acc, &k| acc.compose(&gens[k]));
        w.pow(*e as i64).is_identity()
    })
}

#[test]
fn catalog_orders_and_relations() {
    for n in 1..=12 {
        let k = GroupKind::Cyclic(n);
        assert_eq!(catalog(k).unwrap().order(), n as usize);
        assert!(relations_hold(k));
    }
    for n in 2..=6 {
        let k = GroupKind::Dihedral(n);
        assert_eq!(catalog(k).unwrap().order(), 2 * n as usize);
        assert!(relations_hold(k));
    }
    for (k, o) in [
        (GroupKind::Tetrahedral, 12),
        (GroupKind::Octahedral, 24),
        (GroupKind::Icosahedral, 60),
    ] {
        let g = catalog(k).unwrap();
        assert_eq!(g.order(), o);
        assert!(relations_hold(k));
    }
}

#[test]
fn klein_group_is_commutative_and_tables_are_groups() {
    let d2 = catalog(GroupKind::Dihedral(2)).unwrap();
    assert!(d2.is_commutative());
    assert!(!catalog(GroupKind::Dihedral(3)).unwrap().is_commutative());
    assert!(catalog(GroupKind::Octahedral).unwrap().table_is_group());
}

#[test]
fn tetrahedral_edge_orbit() {
    let g = catalog(GroupKind::Tetrahedral).unwrap();
    let o = g.orbit_of(&SpherePoint::from_int(12, 0));
    assert_eq!(o.len(), 6);
    assert_eq!(o.isotropy_order, 2);
    let i = named_point(GroupKind::Tetrahedral, "i", 12).unwrap();
    for p in [
        SpherePoint::from_int(12, 0),
        SpherePoint::infinity(12),
        SpherePoint::from_int(12, 1),
        SpherePoint::from_int(12, -1),
        i.clone(),
        SpherePoint::finite(i.finite_value().unwrap().neg_ref()),
    ] {
        assert!(o.contains(&p));
    }
    assert_eq!(o.polynomial(), Poly::from_ints(12, &[0, -1, 0, 0, 0, 1]));
}

#[test]
fn cyclic_and_generic_dihedral_orbits() {
    let z = catalog(GroupKind::Cyclic(5)).unwrap();
    let o = z.orbit_of(&SpherePoint::from_int(20, 0));
    assert_eq!((o.len(), o.isotropy_order), (1, 5));
    let d3 = catalog(GroupKind::Dihedral(3)).unwrap();
    let o = d3.orbit_of(&SpherePoint::finite(Scalar::param(12, 0)));
    assert_eq!((o.len(), o.isotropy_order), (6, 1));
}

#[test]
fn icosahedral_orbit_polynomials() {
    let g = catalog(GroupKind::Icosahedral).unwrap();
    let o = g.orbit_of(&SpherePoint::from_int(20, 0));
    assert_eq!((o.len(), o.isotropy_order), (12, 5));
    let mut vertex = vec![0i64; 12];
    vertex[11] = 1;
    vertex[6] = 11;
    vertex[1] = -1;
    assert_eq!(o.polynomial(), Poly::from_ints(20, &vertex));

    let edge = g.orbit_of(&named_point(GroupKind::Icosahedral, "i", 20).unwrap());
    assert_eq!((edge.len(), edge.isotropy_order), (30, 2));
    let mut e = vec![0i64; 31];
    e[30] = 1;
    e[25] = 522;
    e[20] = -10005;
    e[10] = -10005;
    e[5] = -522;
    e[0] = 1;
    assert_eq!(edge.polynomial(), Poly::from_ints(20, &e));

    let g15 = catalog_with(GroupKind::Icosahedral, 15).unwrap();
    let face = g15.orbit_of(&named_point(GroupKind::Icosahedral, "face", 15).unwrap());
    assert_eq!((face.len(), face.isotropy_order), (20, 3));
    let mut f = vec![0i64; 21];
    f[20] = 1;
    f[15] = -228;
    f[10] = 494;
    f[5] = 228;
    f[0] = 1;
    assert_eq!(face.polynomial(), Poly::from_ints(15, &f));
}

#[test]
fn orbits_partition() {
    let g = catalog(GroupKind::Octahedral).unwrap();
    let a = g.orbit_of(&SpherePoint::from_int(8, 0));
    let b = g.orbit_of(&named_point(GroupKind::Octahedral, "edge", 8).unwrap());
    assert!(a.points.iter().all(|p| !b.contains(p)));
    let c = g.orbit_of(&SpherePoint::from_int(8, 1));
    assert!(a.points.iter().all(|p| c.contains(p)));
    assert_eq!(b.len() * b.isotropy_order, 24);
}
