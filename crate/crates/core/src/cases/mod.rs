//! Catalog of concrete automorphic Lie algebras: reduction group, degree-0
//! generators, primitive function and the published commutation relations
//! to compare against.

mod verify;

pub use verify::{
    certify, compare_printed, parse_rhs, verify_appendix, verify_case, Certificate, CheckLine,
    Comparison, EntryCheck, Erratum, Report,
};

use std::sync::Arc;

use thiserror::Error;

use crate::liealg::{average_mat, LieError, MatElem};
use crate::moebius::{MoebiusT, SpherePoint};
use crate::polyrat::{parse_ratl, ParseError};
use crate::qgrade::{BasisSpec, QError};
use crate::redgroup::{red_generate, Automorphism, RedElem, RedError, RedGroup, Relation};
use crate::scalars::{Bindings, Scalar, ScalarError, Tower};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("missing parameter `{0}`")]
    MissingParam(String),
    #[error("bad printed relation `{0}`: {1}")]
    BadRelation(String, String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Red(#[from] RedError),
    #[error(transparent)]
    Q(#[from] QError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Every case identifier understood by [`build_case`].
pub const CASE_IDS: &[&str] = &[
    "D2_sl2",
    "D2_sl2_zero",
    "D2A_sl3",
    "D2A_hat_sl3",
    "D3A_sl3_minus",
    "D3A_sl3_plus",
    "D2B_sl3",
    "D3B_sl3",
    "D3lambda_sl3",
];

/// A published bracket `[left, right] = rhs` in the term syntax of
/// [`parse_rhs`].
#[derive(Debug, Clone)]
pub struct Printed {
    pub left: String,
    pub right: String,
    pub rhs: String,
}

/// A published matrix next to the matrix it should equal.
#[derive(Debug, Clone)]
pub struct Identity {
    pub label: String,
    pub printed: MatElem,
    pub computed: MatElem,
    /// Parameters for printing when they differ from the case's.
    pub tower: Option<Tower>,
}

/// One fully specified algebra.
#[derive(Debug, Clone)]
pub struct Case {
    pub id: String,
    /// Tower for printing computed values.
    pub tower: Tower,
    /// Tower in which the printed coefficients are written.
    pub printed_tower: Tower,
    /// Values substituted into printed coefficients, when the case is concrete.
    pub bindings: Option<Bindings>,
    pub basis: BasisSpec,
    pub printed: Vec<Printed>,
    pub identities: Vec<Identity>,
    /// Whether the published text asserts a direct sum of the non-negative
    /// and negative parts.
    pub splits: bool,
    /// Whether the published table lists every nonzero bracket.
    pub complete: bool,
}

impl Case {
    pub fn group(&self) -> &RedGroup {
        &self.basis.group
    }
}

/// Build a case; `params` optionally binds `g` and `m` to concrete values for
/// `D2_sl2`.
pub fn build_case(id: &str, params: Option<(Scalar, Scalar)>) -> Result<Case, CaseError> {
    match id {
        "D2_sl2" | "D2_sl2_gamma" => d2_sl2(params),
        "D2_sl2_zero" => d2_sl2_zero(),
        "D2A_sl3" => d2a(false),
        "D2A_hat_sl3" => d2a(true),
        "D3A_sl3_minus" => d3a(-1),
        "D3A_sl3_plus" => d3a(1),
        "D2B_sl3" => d2b(),
        "D3B_sl3" => d3b(),
        "D3lambda_sl3" => d3lambda(),
        other => Err(CaseError::UnknownCase(other.to_string())),
    }
}

fn pr(left: &str, right: &str, rhs: &str) -> Printed {
    Printed {
        left: left.into(),
        right: right.into(),
        rhs: rhs.into(),
    }
}

fn printed_list(rows: &[(&str, &str, &str)], sign: Option<i64>) -> Vec<Printed> {
    rows.iter()
        .map(|(a, b, r)| {
            let r = match sign {
                Some(s) => r.replace('S', &format!("({s})")),
                None => r.to_string(),
            };
            pr(a, b, &r)
        })
        .collect()
}

/// Square matrix from row-major λ-expressions.
fn mat(t: &Tower, rows: &[&[&str]]) -> Result<MatElem, CaseError> {
    let d = rows.len();
    let mut entries = Vec::with_capacity(d * d);
    for r in rows {
        for s in *r {
            entries.push(parse_ratl(s, t)?);
        }
    }
    Ok(MatElem::general(d, entries))
}

/// `c · e_ij` with 1-based indices and `c` a λ-expression.
fn unit(t: &Tower, d: usize, i: usize, j: usize, c: &str) -> Result<MatElem, CaseError> {
    let l = t.conductor();
    Ok(MatElem::unit(d, i - 1, j - 1, l).scale_fun(&parse_ratl(c, t)?))
}

fn sl(m: MatElem) -> Result<MatElem, CaseError> {
    if !m.trace().is_zero() {
        return Err(LieError::NotTraceless.into());
    }
    Ok(m.allowing_trace(false))
}

fn inv_lambda(l: u32) -> MoebiusT {
    MoebiusT::inversion(l)
}

fn scaling(s: Scalar) -> MoebiusT {
    MoebiusT::scaling(s)
}

fn dihedral(
    name: &str,
    n: usize,
    gs: RedElem,
    gt: RedElem,
) -> Result<Arc<RedGroup>, CaseError> {
    let rels: Vec<Relation> = vec![
        ("g_s^N".into(), vec![0], n),
        ("g_t^2".into(), vec![1], 2),
        ("(g_s g_t)^2".into(), vec![0, 1], 2),
    ];
    Ok(Arc::new(red_generate(name, &[gs, gt], 4 * n, Some(&rels))?))
}

fn named(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn ident(label: &str, printed: MatElem, computed: MatElem) -> Identity {
    Identity {
        label: label.into(),
        printed,
        computed,
        tower: None,
    }
}

/// Specialize every coefficient of a symbolic matrix.
fn specialize(m: &MatElem, b: &Bindings) -> Result<MatElem, CaseError> {
    let entries = m
        .entries()
        .iter()
        .map(|e| e.map_coeffs(|c| c.eval(b).map(Scalar::Cyc)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MatElem::general(m.dim(), entries).allowing_trace(m.allows_trace()))
}

/// The 𝔻₂ action on `sl(2)`: `σ_s = −λ` with `diag(1,−1)`, `σ_t = 1/λ` with
/// the swap matrix.
pub fn d2_sl2_group(l: u32) -> Result<Arc<RedGroup>, CaseError> {
    let t = Tower::new(l, &[]);
    let qs = mat(&t, &[&["1", "0"], &["0", "-1"]])?;
    let qt = mat(&t, &[&["0", "1"], &["1", "0"]])?;
    let gs = RedElem::new(scaling(Scalar::from_int(l, -1)), Automorphism::inner(qs)?);
    let gt = RedElem::new(inv_lambda(l), Automorphism::inner(qt)?);
    dihedral("D2", 2, gs, gt)
}

const D2_CONDUCTOR: u32 = 2;

fn d2_sl2(params: Option<(Scalar, Scalar)>) -> Result<Case, CaseError> {
    let l = D2_CONDUCTOR;
    let st = Tower::new(l, &["g", "m"]);
    let group = d2_sl2_group(l)?;
    let xg = mat(
        &st,
        &[
            &["0", "l/(2*(l^2-g^2))"],
            &["l/(2*(1-l^2*g^2))", "0"],
        ],
    )?;
    let yg = mat(
        &st,
        &[
            &["0", "l/(2*(1-l^2*g^2))"],
            &["l/(2*(l^2-g^2))", "0"],
        ],
    )?;
    let hfun = "g*(1-l^4)/(2*(l^2-g^2)*(1-l^2*g^2))";
    let hg = mat(&st, &[&[hfun, "0"], &["0", &format!("-({hfun})")]])?;
    let f = parse_ratl(
        "2*g*(g^4-1)/((m^2-g^2)*(1-m^2*g^2)) * (l^2-m^2)*(1-m^2*l^2)/((l^2-g^2)*(1-g^2*l^2))",
        &st,
    )?;
    let pole = parse_ratl("1/(l-g)", &st)?;
    let x = MatElem::unit(2, 0, 1, l);
    let y = MatElem::unit(2, 1, 0, l);
    let h = mat(&st, &[&["1", "0"], &["0", "-1"]])?;
    let identities = vec![
        ident("<x/(l-g)>", xg.clone(), average_mat(&group, &x.scale_fun(&pole))?),
        ident("<y/(l-g)>", yg.clone(), average_mat(&group, &y.scale_fun(&pole))?),
        ident("<h/(l-g)>", hg.clone(), average_mat(&group, &h.scale_fun(&pole))?),
    ];
    let four = Scalar::from_int(l, 4);
    let mut gens = vec![xg.scale(&four), yg.scale(&four), hg.scale(&four)];
    let (tower, bindings, pole_point, zero_point, f) = match params {
        None => (
            st.clone(),
            None,
            SpherePoint::finite(st.param(0)),
            SpherePoint::finite(st.param(1)),
            f,
        ),
        Some((gv, mv)) => {
            let b = Bindings::new()
                .with(0, gv.eval(&Bindings::new())?)
                .with(1, mv.eval(&Bindings::new())?);
            for g in gens.iter_mut() {
                *g = specialize(g, &b)?;
            }
            let f = f.map_coeffs(|c| c.eval(&b).map(Scalar::Cyc))?;
            (
                Tower::new(l, &[]),
                Some(b),
                SpherePoint::finite(gv),
                SpherePoint::finite(mv),
                f,
            )
        }
    };
    let gens = gens.into_iter().map(sl).collect::<Result<Vec<_>, _>>()?;
    let basis = BasisSpec::new(group, named(&["x", "y", "h"]), gens, f, pole_point, zero_point);
    let a = "(2*m^2*(1-g^4))/(g*(m^2-g^2)*(1-m^2*g^2))";
    let b = "(4*g*(1+m^4-4*m^2*g^2+g^4+g^4*m^4))/((1-g^4)*(m^2-g^2)*(1-m^2*g^2))";
    let c = "(8*g/(1-g^4))";
    let printed = vec![
        pr("x", "y", &format!("h^1 + {a}*h")),
        pr("h", "x", &format!("2*x^1 + {b}*x - {c}*y")),
        pr("h", "y", &format!("-2*y^1 - {b}*y + {c}*x")),
    ];
    Ok(Case {
        id: "D2_sl2".into(),
        tower,
        printed_tower: st,
        bindings,
        basis,
        printed,
        identities,
        splits: true,
        complete: true,
    })
}

fn d2_sl2_zero() -> Result<Case, CaseError> {
    let l = D2_CONDUCTOR;
    let t = Tower::new(l, &[]);
    let group = d2_sl2_group(l)?;
    let x0 = mat(&t, &[&["0", "l^-1/2"], &["l/2", "0"]])?;
    let y0 = mat(&t, &[&["0", "l/2"], &["l^-1/2", "0"]])?;
    let h0 = mat(
        &t,
        &[&["(1-l^4)/(2*l^2)", "0"], &["0", "-(1-l^4)/(2*l^2)"]],
    )?;
    let x = MatElem::unit(2, 0, 1, l);
    let y = MatElem::unit(2, 1, 0, l);
    let h = mat(&t, &[&["1", "0"], &["0", "-1"]])?;
    let inv = parse_ratl("l^-1", &t)?;
    let inv2 = parse_ratl("l^-2", &t)?;
    let mut identities = vec![
        ident("<x/l>", x0.clone(), average_mat(&group, &x.scale_fun(&inv))?),
        ident("<y/l>", y0.clone(), average_mat(&group, &y.scale_fun(&inv))?),
        ident("<h/l^2>", h0.clone(), average_mat(&group, &h.scale_fun(&inv2))?),
    ];
    identities.extend(hat_zero_identities()?);
    let half = Scalar::from_int(l, 2).inv()?;
    let gens = vec![sl(x0)?, sl(y0)?, sl(h0.scale(&half))?];
    let j = parse_ratl("(l - l^-1)^2/2", &t)?;
    let basis = BasisSpec::new(
        group,
        named(&["x0", "y0", "h0"]),
        gens,
        j,
        SpherePoint::from_int(l, 0),
        SpherePoint::from_int(l, 1),
    );
    let printed = vec![
        pr("x0", "y0", "h0"),
        pr("h0", "x0", "x0^1 + x0 - y0"),
        pr("h0", "y0", "-y0^1 - y0 + x0"),
    ];
    Ok(Case {
        id: "D2_sl2_zero".into(),
        tower: t.clone(),
        printed_tower: t,
        bindings: None,
        basis,
        printed,
        identities,
        splits: true,
        complete: true,
    })
}

/// Generators `4·(x_γ, y_γ, h_γ)/f(λ,γ,0)` against their printed expressions
/// through `x₀, y₀, h₀`, with `γ` symbolic.
fn hat_zero_identities() -> Result<Vec<Identity>, CaseError> {
    let l = D2_CONDUCTOR;
    let t = Tower::new(l, &["g"]);
    let xg = mat(&t, &[&["0", "l/(2*(l^2-g^2))"], &["l/(2*(1-l^2*g^2))", "0"]])?;
    let yg = mat(&t, &[&["0", "l/(2*(1-l^2*g^2))"], &["l/(2*(l^2-g^2))", "0"]])?;
    let hfun = "g*(1-l^4)/(2*(l^2-g^2)*(1-l^2*g^2))";
    let hg = mat(&t, &[&[hfun, "0"], &["0", &format!("-({hfun})")]])?;
    // α at μ = 0 is 2(1 − γ⁴)/γ.
    let f0 = parse_ratl("2*(1-g^4)/g * l^2/((l^2-g^2)*(1-g^2*l^2))", &t)?;
    let scale = f0.inv()?.scale(&Scalar::from_int(l, 4));
    let x0 = mat(&t, &[&["0", "l^-1/2"], &["l/2", "0"]])?;
    let y0 = mat(&t, &[&["0", "l/2"], &["l^-1/2", "0"]])?;
    let h0 = mat(&t, &[&["(1-l^4)/(2*l^2)", "0"], &["0", "-(1-l^4)/(2*l^2)"]])?;
    let c = crate::polyrat::parse_scalar("2*g/(1-g^4)", &t)?;
    let g2 = crate::polyrat::parse_scalar("g^2", &t)?;
    let ch = crate::polyrat::parse_scalar("8*g^2/(1-g^4)", &t)?;
    Ok([
        ident(
            "4 x_g / f(l,g,0)",
            x0.sub(&y0.scale(&g2)).scale(&c),
            xg.scale_fun(&scale),
        ),
        ident(
            "4 y_g / f(l,g,0)",
            y0.sub(&x0.scale(&g2)).scale(&c),
            yg.scale_fun(&scale),
        ),
        ident("4 h_g / f(l,g,0)", h0.scale(&ch), hg.scale_fun(&scale)),
    ]
    .into_iter()
    .map(|i| Identity {
        tower: Some(t.clone()),
        ..i
    })
    .collect())
}

fn d2a(hat: bool) -> Result<Case, CaseError> {
    let l = D2_CONDUCTOR;
    let t = Tower::new(l, &[]);
    let qs = mat(&t, &[&["-1", "0", "0"], &["0", "1", "0"], &["0", "0", "-1"]])?;
    let qt = mat(&t, &[&["1", "0", "0"], &["0", "-1", "0"], &["0", "0", "-1"]])?;
    let gs = RedElem::new(scaling(Scalar::from_int(l, -1)), Automorphism::inner(qs)?);
    let gt = RedElem::new(inv_lambda(l), Automorphism::inner(qt)?);
    let group = dihedral("D2A", 2, gs, gt)?;
    let avg = |i: usize, j: usize| -> Result<MatElem, CaseError> {
        Ok(average_mat(&group, &unit(&t, 3, i, j, "2*l^-1")?)?)
    };
    let x1 = avg(1, 2)?;
    let y1 = avg(2, 1)?;
    let x2 = avg(2, 3)?;
    let y2 = avg(3, 2)?;
    let x3 = x1.bracket(&x2);
    let y3 = y2.bracket(&y1);
    let h1 = mat(&t, &[&["1", "0", "0"], &["0", "-1", "0"], &["0", "0", "0"]])?;
    let h2 = mat(&t, &[&["0", "0", "0"], &["0", "1", "0"], &["0", "0", "-1"]])?;
    let mut identities = vec![
        ident("<2 e12/l>", unit(&t, 3, 1, 2, "l^-1 - l")?, x1.clone()),
        ident("<2 e21/l>", unit(&t, 3, 2, 1, "l^-1 - l")?, y1.clone()),
        ident("<2 e23/l>", unit(&t, 3, 2, 3, "l^-1 + l")?, x2.clone()),
        ident("<2 e32/l>", unit(&t, 3, 3, 2, "l^-1 + l")?, y2.clone()),
        ident("[x1, x2]", unit(&t, 3, 1, 3, "l^-2 - l^2")?, x3.clone()),
        ident("[y2, y1]", unit(&t, 3, 3, 1, "l^-2 - l^2")?, y3.clone()),
    ];
    let j = parse_ratl("l^2 + l^-2 - 2", &t)?;
    let (names, gens, printed, id) = if hat {
        let hh1 = x1.bracket(&y1);
        let hh2 = x2.bracket(&y2);
        identities.push(ident("[x1, y1]", h1.scale_fun(&j), hh1.clone()));
        identities.push(ident(
            "[x2, y2]",
            h2.scale_fun(&parse_ratl("l^2 + l^-2 + 2", &t)?),
            hh2.clone(),
        ));
        let rows: &[(&str, &str, &str)] = &[
            ("H1", "x1", "2*x1^1"),
            ("H1", "y1", "-2*y1^1"),
            ("H1", "x2", "-x2^1"),
            ("H1", "y2", "y2^1"),
            ("H1", "x3", "x3^1"),
            ("H1", "y3", "-y3^1"),
            ("H2", "x1", "-x1^1 - 4*x1"),
            ("H2", "y1", "y1^1 + 4*y1"),
            ("H2", "x2", "2*x2^1 + 8*x2"),
            ("H2", "y2", "-2*y2^1 - 8*y2"),
            ("H2", "x3", "x3^1 + 4*x3"),
            ("H2", "y3", "-y3^1 - 4*y3"),
            ("x1", "x2", "x3"),
            ("y1", "y2", "-y3"),
            ("x1", "y1", "H1"),
            ("x1", "y3", "-y2^1"),
            ("x2", "y2", "H2"),
            ("x2", "y3", "y1^1 + 4*y1"),
            ("x3", "y1", "-x2^1"),
            ("x3", "y2", "x1^1 + 4*x1"),
            ("x3", "y3", "H1^1 + H2^1 + 4*H1"),
        ];
        (
            named(&["x1", "y1", "x2", "y2", "x3", "y3", "H1", "H2"]),
            vec![x1, y1, x2, y2, x3, y3, hh1, hh2],
            printed_list(rows, None),
            "D2A_hat_sl3",
        )
    } else {
        let rows: &[(&str, &str, &str)] = &[
            ("h1", "x1", "2*x1"),
            ("x1", "y1", "h1^1 - 2*h1"),
            ("x3", "y3", "h1^2 + h2^2 - 4*h1 - 4*h2"),
        ];
        (
            named(&["x1", "y1", "x2", "y2", "x3", "y3", "h1", "h2"]),
            vec![x1, y1, x2, y2, x3, y3, h1, h2],
            printed_list(rows, None),
            "D2A_sl3",
        )
    };
    let gens = gens.into_iter().map(sl).collect::<Result<Vec<_>, _>>()?;
    let basis = BasisSpec::new(
        group,
        names,
        gens,
        j,
        SpherePoint::from_int(l, 0),
        SpherePoint::from_int(l, 1),
    );
    Ok(Case {
        id: id.into(),
        tower: t.clone(),
        printed_tower: t,
        bindings: None,
        basis,
        printed,
        identities,
        splits: hat,
        complete: hat,
    })
}

const D3_CONDUCTOR: u32 = 12;

/// `diag(ω, ω², 1)` with `σ_s = ωλ`.
/// `a(λ) ↦ Q a(ω^∓1 λ) Q⁻¹` with `Q = diag(ω, ω², 1)`; `inverse` selects
/// `a(ωλ)`.
fn d3_rotation(t: &Tower, inverse: bool) -> Result<RedElem, CaseError> {
    let l = t.conductor();
    let q = mat(t, &[&["z3", "0", "0"], &["0", "z3^2", "0"], &["0", "0", "1"]])?;
    let k = if inverse { 2 * l / 3 } else { l / 3 };
    Ok(RedElem::new(scaling(Scalar::root(l, k as i64)), Automorphism::inner(q)?))
}

fn d3a(sign: i64) -> Result<Case, CaseError> {
    let l = D3_CONDUCTOR;
    let t = Tower::new(l, &[]);
    let s = sign.to_string();
    let qt = mat(&t, &[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", &s]])?;
    let gt = RedElem::new(inv_lambda(l), Automorphism::inner(qt)?);
    let name = if sign < 0 { "D3A-" } else { "D3A+" };
    let group = dihedral(name, 3, d3_rotation(&t, false)?, gt)?;
    let avg = |i: usize, j: usize, c: &str| -> Result<MatElem, CaseError> {
        Ok(average_mat(&group, &unit(&t, 3, i, j, c)?)?)
    };
    let x1 = avg(1, 2, "2*l^-1")?;
    let y1 = avg(2, 1, "2*l^-2")?;
    let x2 = avg(2, 3, "4*l^-1")?;
    let y2 = avg(3, 2, "4*l^-2")?;
    let x3 = x1.bracket(&x2);
    let y3 = avg(3, 1, "4*l^-1")?;
    let h1 = average_mat(
        &group,
        &mat(&t, &[&["2*l^-3", "0", "0"], &["0", "-2*l^-3", "0"], &["0", "0", "0"]])?,
    )?;
    let h2 = mat(&t, &[&["2/3", "0", "0"], &["0", "2/3", "0"], &["0", "0", "-4/3"]])?;
    let sum = |a: MatElem, b: MatElem| a.add(&b);
    // Printed closed forms; `S` is the (3,3) entry of Q_t.
    let e = |i, j, c: &str| unit(&t, 3, i, j, &c.replace('S', &format!("({s})")));
    let identities = vec![
        ident("<2 e12/l>", sum(e(1, 2, "l^-1")?, e(2, 1, "l")?), x1.clone()),
        ident("<2 e21/l^2>", sum(e(2, 1, "l^-2")?, e(1, 2, "l^2")?), y1.clone()),
        ident("<4 e23/l>", sum(e(2, 3, "2*l^-1")?, e(1, 3, "2*S*l")?), x2.clone()),
        ident("<4 e32/l^2>", sum(e(3, 2, "2*l^-2")?, e(3, 1, "S*l^2")?), y2.clone()),
        ident("[x1, x2]", sum(e(1, 3, "2*l^-2")?, e(2, 3, "-2*S*l^2")?), x3.clone()),
        ident("<4 e31/l>", sum(e(3, 1, "2*l^-1")?, e(3, 2, "2*S*l")?), y3.clone()),
        ident(
            "<2 (e11-e22)/l^3>",
            sum(e(1, 1, "l^-3 - l^3")?, e(2, 2, "l^3 - l^-3")?),
            h1.clone(),
        ),
    ];
    let rows: &[(&str, &str, &str)] = &[
        ("h1", "x1", "2*x1^1 - 4*y1"),
        ("h1", "y1", "-2*y1^1 + 4*x1"),
        ("h1", "x2", "-x2^1 + 2*S*x3"),
        ("h1", "y2", "y2^1 - 2*S*y3"),
        ("h1", "x3", "x3^1 - 2*S*x2"),
        ("h1", "y3", "-y3^1 + 2*S*y2"),
        ("h2", "x2", "2*x2"),
        ("h2", "y2", "-2*y2"),
        ("h2", "x3", "2*x3"),
        ("h2", "y3", "-2*y3"),
        ("x1", "x2", "x3"),
        ("x1", "x3", "x2"),
        ("y1", "y2", "-y3^1 + S*y2"),
        ("y1", "y3", "-S*y3"),
        ("x1", "y1", "h1"),
        ("x1", "y2", "-y3"),
        ("x1", "y3", "-y2"),
        ("x2", "y1", "-S*x2"),
        ("x2", "y2", "3*h2^1 - 2*h1 + 4*S*x1"),
        ("x2", "y3", "6*S*h2 + 4*y1"),
        ("x3", "y1", "-x2^1 + S*x3"),
        ("x3", "y2", "4*x1^1 - 4*y1 + 6*S*h2"),
        ("x3", "y3", "3*h2^1 + 2*h1 + 4*S*x1"),
    ];
    let gens = vec![x1, y1, x2, y2, x3, y3, h1, h2]
        .into_iter()
        .map(sl)
        .collect::<Result<Vec<_>, _>>()?;
    let basis = BasisSpec::new(
        group,
        named(&["x1", "y1", "x2", "y2", "x3", "y3", "h1", "h2"]),
        gens,
        parse_ratl("l^3 + l^-3", &t)?,
        SpherePoint::from_int(l, 0),
        SpherePoint::finite(Scalar::root(l, 1)),
    );
    Ok(Case {
        id: if sign < 0 { "D3A_sl3_minus" } else { "D3A_sl3_plus" }.into(),
        tower: t.clone(),
        printed_tower: t,
        bindings: None,
        basis,
        printed: printed_list(rows, Some(sign)),
        identities,
        splits: true,
        complete: true,
    })
}

/// Generators as averages of `c · e_ij` and the printed closed forms.
type SeedRow<'a> = (&'a str, (usize, usize, &'a str), &'a [(usize, usize, &'a str)]);

fn seeded(
    group: &RedGroup,
    t: &Tower,
    rows: &[SeedRow],
) -> Result<(Vec<MatElem>, Vec<Identity>), CaseError> {
    let mut gens = Vec::new();
    let mut ids = Vec::new();
    for (label, (i, j, c), closed) in rows {
        let seed = if i == j {
            // Diagonal seeds are `c·(e_ii − e_{i+1,i+1})`.
            unit(t, 3, *i, *i, c)?.sub(&unit(t, 3, i + 1, i + 1, c)?)
        } else {
            unit(t, 3, *i, *j, c)?
        };
        let g = average_mat(group, &seed)?;
        let mut p = MatElem::zero(3, t.conductor());
        for (a, b, cc) in *closed {
            p = p.add(&unit(t, 3, *a, *b, cc)?);
        }
        ids.push(ident(label, p, g.clone()));
        gens.push(g);
    }
    Ok((gens, ids))
}

fn d2b() -> Result<Case, CaseError> {
    let l = 8;
    let t = Tower::new(l, &[]);
    let qs = mat(&t, &[&["-1", "0", "0"], &["0", "-1", "0"], &["0", "0", "1"]])?;
    let gs = RedElem::new(scaling(Scalar::from_int(l, -1)), Automorphism::inner(qs)?);
    let gt = RedElem::new(inv_lambda(l), Automorphism::outer(MatElem::identity(3, l))?);
    let group = dihedral("D2B", 2, gs, gt)?;
    let rows: &[SeedRow] = &[
        ("<2 e12>", (1, 2, "2"), &[(1, 2, "1"), (2, 1, "-1")]),
        ("<2 e21/l^2>", (2, 1, "2*l^-2"), &[(2, 1, "l^-2"), (1, 2, "-l^2")]),
        ("<2 e23/l>", (2, 3, "2*l^-1"), &[(2, 3, "l^-1"), (3, 2, "-l")]),
        ("<2 e32/l>", (3, 2, "2*l^-1"), &[(3, 2, "l^-1"), (2, 3, "-l")]),
        ("<2 e13/l>", (1, 3, "2*l^-1"), &[(1, 3, "l^-1"), (3, 1, "-l")]),
        ("<2 e31/l>", (3, 1, "2*l^-1"), &[(3, 1, "l^-1"), (1, 3, "-l")]),
        (
            "<2 (e11-e22)/l^2>",
            (1, 1, "2*l^-2"),
            &[(1, 1, "l^-2 - l^2"), (2, 2, "l^2 - l^-2")],
        ),
        (
            "<2 (e22-e33)/l^2>",
            (2, 2, "2*l^-2"),
            &[(2, 2, "l^-2 - l^2"), (3, 3, "l^2 - l^-2")],
        ),
    ];
    let (gens, identities) = seeded(&group, &t, rows)?;
    let printed: &[(&str, &str, &str)] = &[
        ("h1", "x1", "2*x1^1 + 4*y1"),
        ("h1", "y1", "-2*y1^1 - 4*x1"),
        ("h1", "x2", "-x2^1 - 2*y2"),
        ("h1", "y2", "y2^1 + 2*x2"),
        ("h1", "x3", "x3^1 + 2*y3"),
        ("h1", "y3", "-y3^1 - 2*x3"),
        ("h2", "x1", "-x1^1 - 2*y1"),
        ("h2", "y1", "y1^1 + 2*x1"),
        ("h2", "x2", "2*x2^1 + 4*y2"),
        ("h2", "y2", "-2*y2^1 - 4*x2"),
        ("h2", "x3", "x3^1 + 2*y3"),
        ("h2", "y3", "-y3^1 - 2*x3"),
        ("x1", "y1", "h1"),
        ("x1", "y2", "y3"),
        ("x1", "y3", "-y2"),
        ("x1", "x2", "x3"),
        ("x1", "x3", "-x2"),
        ("x2", "y1", "-y3"),
        ("x2", "y2", "h2"),
        ("x2", "y3", "y1"),
        ("x2", "x3", "x1"),
        ("x3", "y1", "-x2^1 - y2"),
        ("x3", "y2", "x1^1 + y1"),
        ("x3", "y3", "h2 + h1"),
        ("y1", "y2", "-y3^1 - x3"),
        ("y1", "y3", "-x2"),
        ("y2", "y3", "x1"),
    ];
    finish_outer_case("D2B_sl3", group, t, gens, identities, printed, "l^2 + l^-2", 1)
}

fn d3b() -> Result<Case, CaseError> {
    let l = D3_CONDUCTOR;
    let t = Tower::new(l, &[]);
    let gt = RedElem::new(inv_lambda(l), Automorphism::outer(MatElem::identity(3, l))?);
    let group = dihedral("D3B", 3, d3_rotation(&t, true)?, gt)?;
    let rows: &[SeedRow] = &[
        ("<2 e12/l^2>", (1, 2, "2*l^-2"), &[(1, 2, "l^-2"), (2, 1, "-l^2")]),
        ("<2 e21/l>", (2, 1, "2*l^-1"), &[(2, 1, "l^-1"), (1, 2, "-l")]),
        ("<2 e23/l^2>", (2, 3, "2*l^-2"), &[(2, 3, "l^-2"), (3, 2, "-l^2")]),
        ("<2 e32/l>", (3, 2, "2*l^-1"), &[(3, 2, "l^-1"), (2, 3, "-l")]),
        ("<2 e13/l>", (1, 3, "2*l^-1"), &[(1, 3, "l^-1"), (3, 1, "-l")]),
        ("<2 e31/l^2>", (3, 1, "2*l^-2"), &[(3, 1, "l^-2"), (1, 3, "-l^2")]),
        (
            "<2 (e11-e22)/l^3>",
            (1, 1, "2*l^-3"),
            &[(1, 1, "l^-3 - l^3"), (2, 2, "l^3 - l^-3")],
        ),
        (
            "<2 (e22-e33)/l^3>",
            (2, 2, "2*l^-3"),
            &[(2, 2, "l^-3 - l^3"), (3, 3, "l^3 - l^-3")],
        ),
    ];
    let (gens, identities) = seeded(&group, &t, rows)?;
    let printed: &[(&str, &str, &str)] = &[
        ("h1", "x1", "2*x1^1 + 4*y1"),
        ("h1", "y1", "-2*y1^1 - 4*x1"),
        ("h1", "x2", "-x2^1 - 2*y2"),
        ("h1", "y2", "y2^1 + 2*x2"),
        ("h1", "x3", "x3^1 + 2*y3"),
        ("h1", "y3", "-y3^1 - 2*x3"),
        ("h2", "x1", "-x1^1 - 2*y1"),
        ("h2", "y1", "y1^1 + 2*x1"),
        ("h2", "x2", "2*x2^1 + 4*y2"),
        ("h2", "y2", "-2*y2^1 - 4*x2"),
        ("h2", "x3", "x3^1 + 2*y3"),
        ("h2", "y3", "-y3^1 - 2*x3"),
        ("x1", "y1", "h1"),
        ("x1", "y2", "-x3"),
        ("x1", "y3", "-y2^1 - x2"),
        ("x1", "x2", "x3^1 + y3"),
        ("x1", "x3", "y2"),
        ("x2", "y1", "x3"),
        ("x2", "y2", "h2"),
        ("x2", "y3", "y1^1 + x1"),
        ("x2", "x3", "-y1"),
        ("x3", "y1", "-x2"),
        ("x3", "y2", "x1"),
        ("x3", "y3", "h2 + h1"),
        ("y1", "y2", "-y3"),
        ("y1", "y3", "y2"),
        ("y2", "y3", "-y1"),
    ];
    finish_outer_case("D3B_sl3", group, t, gens, identities, printed, "l^3 + l^-3", 1)
}

#[allow(clippy::too_many_arguments)]
fn finish_outer_case(
    id: &str,
    group: Arc<RedGroup>,
    t: Tower,
    gens: Vec<MatElem>,
    identities: Vec<Identity>,
    printed: &[(&str, &str, &str)],
    f: &str,
    zero_root: i64,
) -> Result<Case, CaseError> {
    let l = t.conductor();
    let gens = gens.into_iter().map(sl).collect::<Result<Vec<_>, _>>()?;
    let basis = BasisSpec::new(
        group,
        named(&["x1", "y1", "x2", "y2", "x3", "y3", "h1", "h2"]),
        gens,
        parse_ratl(f, &t)?,
        SpherePoint::from_int(l, 0),
        SpherePoint::finite(Scalar::root(l, zero_root)),
    );
    Ok(Case {
        id: id.into(),
        tower: t.clone(),
        printed_tower: t,
        bindings: None,
        basis,
        printed: printed_list(printed, None),
        identities,
        splits: true,
        complete: true,
    })
}

/// `T(λ)` of the twisted outer automorphism and its printed inverse.
pub fn twist_matrices(t: &Tower) -> Result<(MatElem, MatElem), CaseError> {
    let tm = mat(
        t,
        &[&["1", "l^2", "l^-2"], &["l^-2", "1", "l^2"], &["l^2", "l^-2", "1"]],
    )?
    .scale_fun(&parse_ratl("l^3/(1-l^6)", t)?);
    let ti = mat(
        t,
        &[&["0", "l^-1", "-l"], &["-l", "0", "l^-1"], &["l^-1", "-l", "0"]],
    )?;
    Ok((tm, ti))
}

/// The twisted 𝔻₃ reduction group: `(ωλ, diag(ω, ω², 1))` and
/// `(1/λ, a ↦ −T aᵀ T⁻¹)`.
pub fn d3lambda_group(t: &Tower) -> Result<Arc<RedGroup>, CaseError> {
    let l = t.conductor();
    let (tm, _) = twist_matrices(t)?;
    let gt = RedElem::new(inv_lambda(l), Automorphism::outer(tm)?);
    dihedral("D3lambda", 3, d3_rotation(t, false)?, gt)
}

fn d3lambda() -> Result<Case, CaseError> {
    let l = D3_CONDUCTOR;
    let t = Tower::new(l, &[]);
    let group = d3lambda_group(&t)?;
    let (tm, ti) = twist_matrices(&t)?;
    let x1 = unit(&t, 3, 1, 2, "l^-1")?.sub(&unit(&t, 3, 1, 3, "l")?);
    let x2 = unit(&t, 3, 2, 3, "l^-1")?.sub(&unit(&t, 3, 2, 1, "l")?);
    let x3 = unit(&t, 3, 3, 1, "l^-1")?.sub(&unit(&t, 3, 3, 2, "l")?);
    let y1 = x2.bracket(&x3);
    let y2 = x3.bracket(&x1);
    let y3 = x1.bracket(&x2);
    let h1 = x1.bracket(&y1);
    let h2 = x2.bracket(&y2);
    let id3 = MatElem::identity(3, l);
    let inv = MoebiusT::inversion(l);
    let identities = vec![
        ident("T(l) T^-1(l)", id3.clone(), tm.matmul(&ti)),
        ident(
            "T(l) (T^-1(1/l))^tr",
            id3.neg(),
            tm.matmul(&ti.pullback(&inv).transpose()),
        ),
    ];
    let rows: &[(&str, &str, &str)] = &[
        ("x1", "x2", "y3"),
        ("x2", "x3", "y1"),
        ("x1", "x3", "-y2"),
        ("y1", "y2", "-x3^1 + y1 + y2"),
        ("y2", "y3", "-x1^1 + y2 + y3"),
        ("y1", "y3", "x2^1 - y1 - y3"),
        ("x1", "y2", "-2*x1"),
        ("x1", "y3", "2*x1"),
        ("x2", "y1", "2*x2"),
        ("x2", "y3", "-2*x2"),
        ("x3", "y1", "-2*x3"),
        ("x3", "y2", "2*x3"),
        ("x1", "y1", "h1"),
        ("x2", "y2", "h2"),
        ("x3", "y3", "-h1 - h2"),
        ("h2", "h1", "x1^1 + x2^1 + x3^1 - 2*y1 - 2*y2 - 2*y3"),
        ("h1", "x1", "2*x1^1"),
        ("h2", "x2", "2*x2^1"),
        ("h1", "y1", "-h1 - 2*h2 + 2*x2 + 2*x3 - 2*y1^1"),
        ("h2", "y2", "2*h1 + h2 + 2*x1 + 2*x3 - 2*y2^1"),
        ("h1", "x2", "-x2^1 + y1 - y3"),
        ("h1", "x3", "-x3^1 + y1 - y2"),
        ("h2", "x1", "-x1^1 + y2 - y3"),
        ("h2", "x3", "-x3^1 + y2 - y1"),
        ("h1", "y2", "-y2^1 - 2*x1 - h1"),
        ("h1", "y3", "-y3^1 - 2*x1 + h1"),
        ("h2", "y1", "-y1^1 - 2*x2 + h2"),
        ("h2", "y3", "-y3^1 - 2*x2 - h2"),
    ];
    let gens = vec![x1, y1, x2, y2, x3, y3, h1, h2]
        .into_iter()
        .map(sl)
        .collect::<Result<Vec<_>, _>>()?;
    let basis = BasisSpec::new(
        group,
        named(&["x1", "y1", "x2", "y2", "x3", "y3", "h1", "h2"]),
        gens,
        parse_ratl("l^3 + l^-3", &t)?,
        SpherePoint::from_int(l, 0),
        SpherePoint::finite(Scalar::root(l, 1)),
    );
    Ok(Case {
        id: "D3lambda_sl3".into(),
        tower: t.clone(),
        printed_tower: t,
        bindings: None,
        basis,
        printed: printed_list(rows, None),
        identities,
        splits: true,
        complete: true,
    })
}
