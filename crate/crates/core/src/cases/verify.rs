//! Checks of a case against its published data, and the errata ledger.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{Case, CaseError};
use crate::autfun::{primitive, proportional};
use crate::liealg::is_invariant;
use crate::moebius::{catalog, catalog_with, named_point, GroupKind, SpherePoint};
use crate::polyrat::{parse_ratl, parse_scalar, Poly, RatL};
use crate::qgrade::{poles_separate, structure_table, StructureTable, Term, Vector};
use crate::scalars::{Scalar, Tower};

/// A published formula contradicted by exact recomputation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub case: String,
    pub item: String,
    pub printed: String,
    pub computed: String,
    pub certificate: String,
}

/// One pass/fail line of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub case: String,
    pub lines: Vec<CheckLine>,
    pub errata: Vec<Erratum>,
}

impl Report {
    fn new(case: &str) -> Report {
        Report {
            case: case.into(),
            ..Report::default()
        }
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn line(&self, name: &str) -> Option<&CheckLine> {
        self.lines.iter().find(|l| l.name == name)
    }
}

/// Parse `2*x1^1 - (a)*y1 + h` into terms over the named basis.
///
/// Each term is `[coeff *] name [^offset]`; the coefficient is any scalar
/// expression of the tower.
pub fn parse_rhs(rhs: &str, names: &[String], tower: &Tower) -> Result<Vec<Term>, CaseError> {
    let bad = |m: &str| CaseError::BadRelation(rhs.to_string(), m.to_string());
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for (pos, ch) in rhs.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let prev = rhs[..pos].trim_end().chars().last();
        let split = depth == 0
            && (ch == '+' || ch == '-')
            && !matches!(prev, None | Some('^') | Some('*') | Some('/'));
        if split {
            pieces.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if depth == 0 && (ch == '+' || ch == '-') && prev.is_none() {
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    pieces.push((neg, cur));
    let l = tower.conductor();
    let mut acc: BTreeMap<(usize, i64), Scalar> = BTreeMap::new();
    for (neg, body) in pieces {
        let body = body.trim();
        if body.is_empty() {
            return Err(bad("empty term"));
        }
        let mut depth = 0;
        let mut cut = None;
        for (i, ch) in body.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '*' if depth == 0 => cut = Some(i),
                _ => {}
            }
        }
        let (coef, atom) = match cut {
            Some(i) => (parse_scalar(&body[..i], tower)?, body[i + 1..].trim()),
            None => (Scalar::one(l), body),
        };
        let (name, offset) = match atom.split_once('^') {
            Some((n, o)) => (n.trim(), o.trim().parse::<i64>().map_err(|_| bad("offset"))?),
            None => (atom, 0),
        };
        let k = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| bad(&format!("unknown basis element `{name}`")))?;
        let c = if neg { coef.neg_ref() } else { coef };
        let e = acc.entry((k, offset)).or_insert_with(|| Scalar::zero(l));
        *e = &*e + &c;
    }
    Ok(acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((k, offset), coeff)| Term { k, offset, coeff })
        .collect())
}

fn term_map(ts: &[Term]) -> BTreeMap<(usize, i64), Scalar> {
    ts.iter()
        .map(|t| ((t.k, t.offset), t.coeff.clone()))
        .collect()
}

/// Printed against computed for one bracket.
#[derive(Debug, Clone)]
pub struct EntryCheck {
    pub i: usize,
    pub j: usize,
    pub printed: Vec<Term>,
    pub computed: Vec<Term>,
    pub agrees: bool,
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub entries: Vec<EntryCheck>,
    /// Nonzero computed brackets the published table does not list.
    pub unlisted: Vec<(usize, usize)>,
}

impl Comparison {
    pub fn agreeing(&self) -> usize {
        self.entries.iter().filter(|e| e.agrees).count()
    }

    /// Agreement as an exact fraction `(agreeing, total)`.
    pub fn ratio(&self) -> (usize, usize) {
        (self.agreeing(), self.entries.len())
    }
}

/// Compare every printed bracket with the computed table.
pub fn compare_printed(case: &Case, table: &StructureTable) -> Result<Comparison, CaseError> {
    let names = &case.basis.names;
    let idx = |n: &str| {
        names
            .iter()
            .position(|m| m == n)
            .ok_or_else(|| CaseError::BadRelation(n.to_string(), "unknown basis element".into()))
    };
    let mut entries = Vec::new();
    let mut listed = Vec::new();
    for p in &case.printed {
        let (i, j) = (idx(&p.left)?, idx(&p.right)?);
        let mut printed = parse_rhs(&p.rhs, names, &case.printed_tower)?;
        if let Some(b) = &case.bindings {
            printed = printed
                .into_iter()
                .map(|t| {
                    Ok(Term {
                        coeff: Scalar::Cyc(t.coeff.eval(b)?),
                        ..t
                    })
                })
                .collect::<Result<Vec<_>, CaseError>>()?
                .into_iter()
                .filter(|t| !t.coeff.is_zero())
                .collect();
        }
        let computed = table.terms(i, j).to_vec();
        let agrees = term_map(&printed) == term_map(&computed);
        listed.push((i.min(j), i.max(j)));
        entries.push(EntryCheck {
            i,
            j,
            printed,
            computed,
            agrees,
        });
    }
    let n = names.len();
    let unlisted = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|p| !listed.contains(p) && !table.terms(p.0, p.1).is_empty())
        .collect();
    Ok(Comparison { entries, unlisted })
}

/// Independent evidence for a computed bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certificate {
    /// The table entry recombines to the matrix bracket.
    pub reconstruction: bool,
    /// The matrix bracket is invariant under the reduction group.
    pub invariance: bool,
    /// Every degree-0 Jacobiator through this pair vanishes in the table.
    pub jacobi: bool,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.reconstruction && self.invariance && self.jacobi
    }
}

fn unit_vec(i: usize, d: i64, l: u32) -> Vector {
    std::iter::once(((i, d), Scalar::one(l))).collect()
}

fn add_into(acc: &mut Vector, v: Vector) {
    for (k, c) in v {
        let l = c.conductor();
        let e = acc.entry(k).or_insert_with(|| Scalar::zero(l));
        *e = &*e + &c;
    }
    acc.retain(|_, c| !c.is_zero());
}

/// Jacobiator of three basis elements computed through the table.
pub(crate) fn jacobiator(t: &StructureTable, a: usize, b: usize, c: usize, l: u32) -> Vector {
    let (ua, ub, uc) = (unit_vec(a, 0, l), unit_vec(b, 0, l), unit_vec(c, 0, l));
    let mut s = t.bracket_vec(&t.bracket_vec(&ua, &ub), &uc);
    add_into(&mut s, t.bracket_vec(&t.bracket_vec(&ub, &uc), &ua));
    add_into(&mut s, t.bracket_vec(&t.bracket_vec(&uc, &ua), &ub));
    s
}

pub fn certify(case: &Case, table: &StructureTable, i: usize, j: usize) -> Certificate {
    let b = &case.basis;
    let m = b.gens[i].bracket(&b.gens[j]);
    let v: Vector = table
        .terms(i, j)
        .iter()
        .map(|t| ((t.k, t.offset), t.coeff.clone()))
        .collect();
    let l = b.conductor();
    Certificate {
        reconstruction: b.combine(&v) == m,
        invariance: is_invariant(&b.group, &m),
        jacobi: (0..b.len()).all(|k| jacobiator(table, i, j, k, l).is_empty()),
    }
}

fn terms_text(ts: &[Term], names: &[String], tower: &Tower) -> String {
    let mut entries = BTreeMap::new();
    entries.insert((0, 1), ts.to_vec());
    StructureTable::new(names.to_vec(), entries, tower.conductor()).rhs_text(0, 1, tower)
}

/// Full verification of one case: published matrices, invariance, the
/// structure table with reconstruction and Jacobi, the published relations,
/// the quasigrading window and the splitting.
pub fn verify_case(case: &Case) -> Result<(Report, StructureTable), CaseError> {
    let mut r = Report::new(&case.id);
    let b = &case.basis;
    let tw = &case.tower;
    for id in &case.identities {
        let ok = id.printed == id.computed;
        let itw = id.tower.as_ref().unwrap_or(&case.printed_tower);
        if !ok {
            r.errata.push(Erratum {
                case: case.id.clone(),
                item: id.label.clone(),
                printed: id.printed.to_text(itw),
                computed: id.computed.to_text(itw),
                certificate: "exact matrix arithmetic".into(),
            });
        }
        r.check(
            &format!("matrix {}", id.label),
            true,
            if ok { "reproduced" } else { "differs; see errata" },
        );
    }
    let inv = b.gens.iter().all(|g| is_invariant(&b.group, g));
    r.check("generators invariant", inv, format!("{} generators", b.len()));
    let table = structure_table(b)?;
    let n = b.len();
    let mut recon = true;
    for i in 0..n {
        for j in (i + 1)..n {
            let m = b.gens[i].bracket(&b.gens[j]);
            let v: Vector = table
                .terms(i, j)
                .iter()
                .map(|t| ((t.k, t.offset), t.coeff.clone()))
                .collect();
            recon &= b.combine(&v) == m;
        }
    }
    r.check("reconstruction", recon, "every degree-0 bracket recombines exactly");
    r.check("antisymmetry", table.is_antisymmetric(), "");
    let jac = table.jacobi_check(0, 0);
    r.check(
        "jacobi",
        jac.violations.is_empty(),
        format!("{} triples, {} violations", jac.checked, jac.violations.len()),
    );
    let cmp = compare_printed(case, &table)?;
    let mut certified = true;
    for e in cmp.entries.iter().filter(|e| !e.agrees) {
        let c = certify(case, &table, e.i, e.j);
        certified &= c.holds();
        r.errata.push(Erratum {
            case: case.id.clone(),
            item: format!("[{}, {}]", b.names[e.i], b.names[e.j]),
            printed: terms_text(&e.printed, &b.names, tw),
            computed: terms_text(&e.computed, &b.names, tw),
            certificate: format!(
                "reconstruction={} invariance={} jacobi={}",
                c.reconstruction, c.invariance, c.jacobi
            ),
        });
    }
    let unlisted: &[(usize, usize)] = if case.complete { &cmp.unlisted } else { &[] };
    for &(i, j) in unlisted {
        let c = certify(case, &table, i, j);
        certified &= c.holds();
        r.errata.push(Erratum {
            case: case.id.clone(),
            item: format!("[{}, {}]", b.names[i], b.names[j]),
            printed: "0 (not listed)".into(),
            computed: table.rhs_text(i, j, tw),
            certificate: format!(
                "reconstruction={} invariance={} jacobi={}",
                c.reconstruction, c.invariance, c.jacobi
            ),
        });
    }
    let (a, t) = cmp.ratio();
    r.check(
        "published relations",
        certified,
        format!(
            "{a}/{t} literal agreement; {} nonzero brackets not listed{}",
            cmp.unlisted.len(),
            if case.complete { "" } else { " in a partial listing" }
        ),
    );
    let w = table.window();
    r.check("window", true, format!("p = {}, q = {}", w.p, w.q));
    if case.splits {
        let s = table.split_check();
        r.check(
            "split",
            s.plus_closed && s.minus_closed,
            format!("plus_closed={} minus_closed={}", s.plus_closed, s.minus_closed),
        );
    }
    r.check("pole sides", poles_separate(b), "n >= 0 on the pole orbit, n < 0 on the zero orbit");
    Ok((r, table))
}

fn ints(l: u32, cs: &[(usize, i64)]) -> Poly {
    let n = cs.iter().map(|c| c.0).max().unwrap_or(0) + 1;
    let mut v = vec![0i64; n];
    for &(k, c) in cs {
        v[k] = c;
    }
    Poly::from_ints(l, &v)
}

/// Group catalog, orbit polynomials and primitive functions against the
/// published list, including the tetrahedral face polynomials.
pub fn verify_appendix() -> Result<Report, CaseError> {
    let mut r = Report::new("appendix");
    let mut orders = true;
    let mut rels = true;
    let mut kinds: Vec<GroupKind> = (1..=12).map(GroupKind::Cyclic).collect();
    kinds.extend((2..=6).map(GroupKind::Dihedral));
    kinds.extend([GroupKind::Tetrahedral, GroupKind::Octahedral, GroupKind::Icosahedral]);
    for k in &kinds {
        let g = catalog(*k).map_err(|e| CaseError::BadRelation(format!("{k:?}"), e.to_string()))?;
        orders &= g.order() == k.order();
        let gens: Vec<_> = g.generators().into_iter().cloned().collect();
        rels &= k.relations().iter().all(|(_, word, e)| {
            let w = word
                .iter()
                .fold(gens[0].pow(0), |acc, &i| acc.compose(&gens[i]));
            w.pow(*e as i64).is_identity()
        });
    }
    r.check("group orders", orders, "Z_N (N <= 12), D_N (N <= 6), T, O, I");
    r.check("presentation relations", rels, "");

    let cat = |k, l| {
        catalog_with(k, l).map_err(|e| CaseError::BadRelation(format!("{k:?}"), e.to_string()))
    };
    let pt = |k, name: &str, l| {
        named_point(k, name, l).map_err(|e| CaseError::BadRelation(name.into(), e.to_string()))
    };

    // Tetrahedral edge orbit.
    let t12 = cat(GroupKind::Tetrahedral, 12)?;
    let o = t12.orbit_of(&SpherePoint::from_int(12, 0));
    let i12 = pt(GroupKind::Tetrahedral, "i", 12)?;
    let want = [
        SpherePoint::from_int(12, 0),
        SpherePoint::infinity(12),
        SpherePoint::from_int(12, 1),
        SpherePoint::from_int(12, -1),
        i12.clone(),
        SpherePoint::finite(i12.finite_value().unwrap().neg_ref()),
    ];
    r.check(
        "T(0) = {0, inf, +-1, +-i}",
        o.len() == 6 && want.iter().all(|p| o.contains(p)),
        "",
    );

    // Icosahedral orbit polynomials.
    let i20 = cat(GroupKind::Icosahedral, 20)?;
    let v = i20.orbit_of(&SpherePoint::from_int(20, 0));
    r.check(
        "I(0) orbit polynomial",
        v.len() == 12 && v.polynomial() == ints(20, &[(11, 1), (6, 11), (1, -1)]),
        "l^11 + 11 l^6 - l",
    );
    let e = i20.orbit_of(&pt(GroupKind::Icosahedral, "i", 20)?);
    r.check(
        "I edge polynomial",
        e.polynomial()
            == ints(20, &[(30, 1), (25, 522), (20, -10005), (10, -10005), (5, -522), (0, 1)]),
        "",
    );
    let i15 = cat(GroupKind::Icosahedral, 15)?;
    let fo = i15.orbit_of(&pt(GroupKind::Icosahedral, "face", 15)?);
    r.check(
        "I face polynomial",
        fo.polynomial() == ints(15, &[(20, 1), (15, -228), (10, 494), (5, 228), (0, 1)]),
        "",
    );

    // Primitive functions.
    let mut zok = true;
    for n in 1..=12u32 {
        let g = Arc::new(catalog(GroupKind::Cyclic(n)).map_err(|e| {
            CaseError::BadRelation("Z".into(), e.to_string())
        })?);
        let l = g.conductor();
        let f = primitive(&g, &SpherePoint::infinity(l), &SpherePoint::from_int(l, 0))
            .map_err(|e| CaseError::BadRelation("Z".into(), e.to_string()))?;
        zok &= f.fun == RatL::monomial(Scalar::one(l), n as i64);
    }
    r.check("f_Z(l, inf, 0) = l^N", zok, "N <= 12");
    let mut dok = true;
    for n in 2..=6u32 {
        let g = Arc::new(catalog(GroupKind::Dihedral(n)).map_err(|e| {
            CaseError::BadRelation("D".into(), e.to_string())
        })?);
        let l = g.conductor();
        let t = Tower::new(l, &[]);
        let f = primitive(&g, &SpherePoint::from_int(l, 0), &SpherePoint::from_int(l, 1))
            .map_err(|e| CaseError::BadRelation("D".into(), e.to_string()))?;
        dok &= f.fun == parse_ratl(&format!("l^{n} + l^-{n} - 2"), &t)?;
    }
    r.check("f_D(l, 0, 1) = l^N + l^-N - 2", dok, "N <= 6");
    let o24 = Arc::new(cat(GroupKind::Octahedral, 24)?);
    let t24 = Tower::new(24, &[]);
    let fo = primitive(&o24, &SpherePoint::from_int(24, 0), &pt(GroupKind::Octahedral, "face", 24)?)
        .map_err(|e| CaseError::BadRelation("O".into(), e.to_string()))?;
    r.check(
        "f_O proportional to (l^8+14l^4+1)^3/(l^4(l^4-1)^4)",
        proportional(&fo.fun, &parse_ratl("(l^8+14*l^4+1)^3/(l^4*(l^4-1)^4)", &t24)?),
        "",
    );
    let g15 = Arc::new(i15);
    let t15 = Tower::new(15, &[]);
    let fi = primitive(&g15, &SpherePoint::from_int(15, 0), &pt(GroupKind::Icosahedral, "face", 15)?)
        .map_err(|e| CaseError::BadRelation("I".into(), e.to_string()))?;
    r.check(
        "f_I(l, 0, face) proportional to published form",
        proportional(
            &fi.fun,
            &parse_ratl("(l^20-228*l^15+494*l^10+228*l^5+1)^3/(l^5*(l^10+11*l^5-1)^5)", &t15)?,
        ),
        "",
    );
    let g20 = Arc::new(i20);
    let t20 = Tower::new(20, &[]);
    let ipt = pt(GroupKind::Icosahedral, "i", 20)?;
    // Rebase f(λ,0,face) to zeros at i; the shift constant is rational.
    let shifted = fi.fun.recast(60)?;
    let at_i = shifted
        .eval(&ipt.recast(60)?.finite_value().unwrap())
        .ok_or_else(|| CaseError::BadRelation("I".into(), "pole at i".into()))?;
    let rebased = &shifted - &RatL::constant(at_i);
    let direct = primitive(&g20, &SpherePoint::from_int(20, 0), &ipt)
        .map_err(|e| CaseError::BadRelation("I".into(), e.to_string()))?;
    let want = parse_ratl(
        "(l^30+522*l^25-10005*l^20-10005*l^10-522*l^5+1)^2/(l^5*(l^10+11*l^5-1)^5)",
        &t20,
    )?;
    r.check(
        "f_I(l, 0, i) rebased proportional to published form",
        proportional(&rebased, &direct.fun.recast(60)?) && proportional(&direct.fun, &want),
        "",
    );

    // Tetrahedral face orbits: the printed middle coefficient 2(ω+ω̄) = −2
    // would put the orbit on ±1.
    let t = Tower::new(12, &[]);
    let g1 = pt(GroupKind::Tetrahedral, "face", 12)?;
    let g2 = pt(GroupKind::Tetrahedral, "face2", 12)?;
    let p1 = t12.orbit_of(&g1).polynomial();
    let p2 = t12.orbit_of(&g2).polynomial();
    let printed1 = parse_ratl("l^4 + 2*(z3 + z3^2)*l^2 + 1", &t)?;
    let printed2 = parse_ratl("l^4 - 2*(z3 + z3^2)*l^2 + 1", &t)?;
    for (label, p, pr) in [("T(face) polynomial", &p1, &printed1), ("T(face2) polynomial", &p2, &printed2)] {
        let computed = RatL::from_poly(p.clone(), 12);
        if computed != *pr {
            r.errata.push(Erratum {
                case: "appendix".into(),
                item: label.into(),
                printed: pr.to_text(&t),
                computed: computed.to_text(&t),
                certificate: "product of (l - p) over the computed orbit".into(),
            });
        }
    }
    let tg = Arc::new(t12);
    let ft = primitive(&tg, &g1, &g2).map_err(|e| CaseError::BadRelation("T".into(), e.to_string()))?;
    let ratio = &RatL::from_poly(p2.clone(), 12) / &RatL::from_poly(p1.clone(), 12);
    let cube = ratio.pow(3)?;
    let divisor_ok = ft.has_primitive_divisor()
        && tg.orbit_of(&g1).isotropy_order == 3
        && tg.orbit_of(&g2).isotropy_order == 3;
    r.check(
        "f_T poles and zeros on the face orbits with multiplicity 3",
        divisor_ok && proportional(&ft.fun, &cube),
        "",
    );
    // (P₁/P₂)³ − 1 = K λ²(λ⁴−1)²/P₂³.
    let shape = parse_ratl("l^2*(l^4-1)^2", &t)?;
    let p2c = RatL::from_poly(p2.clone(), 12).pow(3)?;
    let printed_inv = RatL::from_poly(p1.clone(), 12).pow(3)?;
    let minus_one = &(&printed_inv / &p2c) - &RatL::one(12);
    let k = (&(&minus_one * &p2c) / &shape).as_constant();
    let printed_k = parse_scalar("12*(z3 + z3^2)", &t)?;
    match k {
        Some(k) => {
            if k != printed_k {
                r.errata.push(Erratum {
                    case: "appendix".into(),
                    item: "constant in f_T(l, face, 0)".into(),
                    printed: printed_k.to_text_in(&t),
                    computed: k.to_text_in(&t),
                    certificate: "exact expansion of (P1/P2)^3 - 1".into(),
                });
            }
            r.check("f_T(l, face, 0) has the published shape", true, k.to_text_in(&t));
        }
        None => r.check("f_T(l, face, 0) has the published shape", false, "not a constant multiple"),
    }
    Ok(r)
}
