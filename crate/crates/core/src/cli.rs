//! Command-line front end: catalog groups and orbits, primitive functions,
//! group averages, quasigraded bases, structure tables and verification runs.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 success, 1 a
//! failed invariant, 2 bad arguments or unknown names, 3 coinciding orbits,
//! 4 an element outside the span of the basis.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::autfun::{primitive, AutFunError};
use crate::cases::{build_case, verify_appendix, verify_case, Case, CaseError, Erratum, Report, CASE_IDS};
use crate::liealg::{average_mat, MatElem};
use crate::moebius::{catalog_with, default_conductor, named_point, point_conductor, FinGroup, GroupKind, SpherePoint};
use crate::polyrat::{parse_ratl, parse_scalar};
use crate::qgrade::{structure_table, QError, StructureTable};
use crate::scalars::{Scalar, Tower};

/// Environment variable naming the default directory for reports and the
/// errata ledger.
pub const OUT_DIR_VAR: &str = "AUTLIE_OUT";

#[derive(Debug, Parser)]
#[command(name = "autlie", version, about = "Exact automorphic Lie algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Cyclotomic conductor override for group computations.
    #[arg(long, global = true)]
    pub conductor: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, generators and degenerate orbits of a finite Möbius group.
    Group { name: String, n: Option<u32> },
    /// Orbit of a point and its orbit polynomial.
    Orbit { group: String, point: String },
    /// Primitive automorphic function with poles on the first orbit and
    /// zeros on the second.
    Primitive { group: String, g1: String, g2: String },
    /// Group average of a matrix under the reduction group of a case; rows
    /// separated by `;`, entries by `,`.
    Average { case: String, matrix: String },
    /// Degree-0 generators and primitive function of a case.
    Basis {
        case: String,
        #[arg(long)]
        bind: Option<String>,
    },
    /// Structure constants of a case.
    Structure {
        case: String,
        /// Degree range `lo,hi` for the expanded listing.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
        /// Concrete parameters, e.g. `g=2,m=3`.
        #[arg(long)]
        bind: Option<String>,
    },
    /// Verify a case, `appendix`, or `all`.
    Verify {
        target: String,
        /// Directory for reports and the errata ledger.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    BadArgs(String),
    #[error("the pole and zero orbits coincide")]
    SameOrbit,
    #[error("{0}")]
    NotInSpan(String),
    #[error("verification failed")]
    Failed,
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed | CliError::Other(_) => 1,
            CliError::BadArgs(_) => 2,
            CliError::SameOrbit => 3,
            CliError::NotInSpan(_) => 4,
        }
    }
}

impl From<CaseError> for CliError {
    fn from(e: CaseError) -> CliError {
        match e {
            CaseError::UnknownCase(_) | CaseError::Parse(_) => CliError::BadArgs(e.to_string()),
            CaseError::Q(q) => q.into(),
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<QError> for CliError {
    fn from(e: QError) -> CliError {
        match e {
            QError::NotInSpan(m) => CliError::NotInSpan(m),
            other => CliError::Other(other.to_string()),
        }
    }
}

fn bad(e: impl std::fmt::Display) -> CliError {
    CliError::BadArgs(e.to_string())
}

/// Run a parsed command and return what goes to stdout.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Group { name, n } => cmd_group(name, *n, cli.conductor, fmt),
        Command::Orbit { group, point } => cmd_orbit(group, point, cli.conductor, fmt),
        Command::Primitive { group, g1, g2 } => cmd_primitive(group, g1, g2, cli.conductor, fmt),
        Command::Average { case, matrix } => cmd_average(case, matrix, fmt),
        Command::Basis { case, bind } => cmd_basis(case, bind.as_deref(), fmt),
        Command::Structure { case, range, bind } => {
            cmd_structure(case, range.as_deref(), bind.as_deref(), fmt)
        }
        Command::Verify { target, out } => {
            let out = out.clone().or_else(|| std::env::var_os(OUT_DIR_VAR).map(PathBuf::from));
            cmd_verify(target, out, fmt)
        }
    }
}

fn render(v: &Value, text: impl FnOnce() -> String, fmt: Format) -> String {
    match fmt {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Text | Format::Latex => text(),
    }
}

fn kind_of(name: &str, n: Option<u32>) -> Result<GroupKind, CliError> {
    GroupKind::parse(name, n).map_err(bad)
}

fn conductor_for(kind: GroupKind, need: u32, over: Option<u32>) -> Result<u32, CliError> {
    use num_integer::Integer;
    let need = default_conductor(kind).lcm(&need);
    match over {
        Some(l) if l % need == 0 => Ok(l),
        Some(l) => Err(bad(format!("conductor {l} is not a multiple of {need}"))),
        None => Ok(need),
    }
}

fn build_group(kind: GroupKind, l: u32) -> Result<FinGroup, CliError> {
    catalog_with(kind, l).map_err(bad)
}

fn point(kind: GroupKind, s: &str, l: u32) -> Result<SpherePoint, CliError> {
    named_point(kind, s, l).or_else(|_| {
        let t = Tower::new(l, &[]);
        parse_scalar(s, &t).map(SpherePoint::finite).map_err(bad)
    })
}

fn point_need(kind: GroupKind, s: &str) -> u32 {
    use num_integer::Integer;
    // Roots written as `zK` need ζ_K.
    let mut need = point_conductor(kind, s);
    let b = s.as_bytes();
    for (i, &c) in b.iter().enumerate() {
        if c == b'z' {
            let digits: String = s[i + 1..].chars().take_while(|c| c.is_ascii_digit()).collect();
            if let Ok(k) = digits.parse::<u32>() {
                need = need.lcm(&k);
            }
        }
    }
    need
}

/// Representatives of the degenerate orbits.
fn special_points(kind: GroupKind, l: u32) -> Result<Vec<SpherePoint>, CliError> {
    let names: &[&str] = match kind {
        GroupKind::Cyclic(_) => &["0", "inf"],
        GroupKind::Dihedral(_) => &["0", "1"],
        GroupKind::Tetrahedral => &["0", "face", "face2"],
        GroupKind::Octahedral => &["0", "face", "edge"],
        GroupKind::Icosahedral => &["0", "face", "edge"],
    };
    let mut pts = names
        .iter()
        .map(|n| point(kind, n, l))
        .collect::<Result<Vec<_>, _>>()?;
    if let GroupKind::Dihedral(n) = kind {
        pts.push(SpherePoint::finite(Scalar::root(l, (l / (2 * n)) as i64)));
    }
    Ok(pts)
}

fn group_need(kind: GroupKind) -> u32 {
    use num_integer::Integer;
    match kind {
        GroupKind::Dihedral(n) => 2 * n,
        GroupKind::Tetrahedral => 12,
        GroupKind::Octahedral => point_conductor(kind, "face").lcm(&point_conductor(kind, "edge")),
        GroupKind::Icosahedral => point_conductor(kind, "face"),
        GroupKind::Cyclic(_) => 1,
    }
}

fn cmd_group(name: &str, n: Option<u32>, over: Option<u32>, fmt: Format) -> Result<String, CliError> {
    let kind = kind_of(name, n)?;
    let l = conductor_for(kind, group_need(kind), over)?;
    let g = build_group(kind, l)?;
    let t = Tower::new(l, &[]);
    let orbits: Vec<Value> = special_points(kind, l)?
        .iter()
        .map(|p| {
            let o = g.orbit_of(p);
            json!({
                "seed": p.to_text(&t),
                "size": o.len(),
                "isotropy": o.isotropy_order,
            })
        })
        .collect();
    let gens: Vec<String> = g.generators().iter().map(|m| m.to_text(&t)).collect();
    let name = match n {
        Some(k) => format!("{name}{k}"),
        None => name.to_string(),
    };
    let v = json!({
        "group": name,
        "order": g.order(),
        "conductor": l,
        "generators": gens,
        "degenerate_orbits": orbits,
        "generic_orbit_size": g.order(),
    });
    Ok(render(
        &v,
        || {
            let mut s = format!("{name}: order {}\n", g.order());
            for gen in &gens {
                let _ = writeln!(s, "  generator {gen}");
            }
            for o in &orbits {
                let _ = writeln!(s, "  orbit of {}: size {}, isotropy {}", o["seed"].as_str().unwrap_or(""), o["size"], o["isotropy"]);
            }
            s
        },
        fmt,
    ))
}

fn cmd_orbit(group: &str, pt: &str, over: Option<u32>, fmt: Format) -> Result<String, CliError> {
    let kind = kind_of(group, None)?;
    let l = conductor_for(kind, point_need(kind, pt), over)?;
    let g = build_group(kind, l)?;
    let t = Tower::new(l, &[]);
    let p = point(kind, pt, l)?;
    let o = g.orbit_of(&p);
    let pts: Vec<String> = o.points.iter().map(|q| q.to_text(&t)).collect();
    let poly = o.polynomial().to_text_var("l", &t);
    let v = json!({
        "group": group,
        "seed": p.to_text(&t),
        "size": o.len(),
        "isotropy": o.isotropy_order,
        "points": pts,
        "polynomial": poly,
    });
    Ok(render(
        &v,
        || match fmt {
            Format::Latex => format!("{}\n", latex_math(&poly)),
            _ => format!("size {} isotropy {}\npoints {}\npolynomial {poly}\n", o.len(), o.isotropy_order, pts.join(", ")),
        },
        fmt,
    ))
}

fn latex_math(s: &str) -> String {
    format!("${}$", s.replace('*', " ").replace("l", "\\lambda"))
}

fn cmd_primitive(group: &str, g1: &str, g2: &str, over: Option<u32>, fmt: Format) -> Result<String, CliError> {
    use num_integer::Integer;
    let kind = kind_of(group, None)?;
    let l = conductor_for(kind, point_need(kind, g1).lcm(&point_need(kind, g2)), over)?;
    let g = Arc::new(build_group(kind, l)?);
    let t = Tower::new(l, &[]);
    let (p1, p2) = (point(kind, g1, l)?, point(kind, g2, l)?);
    let f = primitive(&g, &p1, &p2).map_err(|e| match e {
        AutFunError::SameOrbit => CliError::SameOrbit,
        other => CliError::Other(other.to_string()),
    })?;
    let profile = |p: &SpherePoint| {
        let o = g.orbit_of(p);
        json!({
            "orbit_size": o.len(),
            "isotropy": o.isotropy_order,
            "order": f.fun.order_at(p),
        })
    };
    let text = f.fun.to_text(&t);
    let v = json!({
        "group": group,
        "function": text,
        "poles": profile(&p1),
        "zeros": profile(&p2),
    });
    Ok(render(
        &v,
        || match fmt {
            Format::Latex => format!("{}\n", latex_math(&text)),
            _ => format!("{text}\n"),
        },
        fmt,
    ))
}

fn parse_bind(case: &str, bind: Option<&str>) -> Result<Case, CliError> {
    let Some(spec) = bind else {
        return Ok(build_case(case, None)?);
    };
    if !matches!(case, "D2_sl2" | "D2_sl2_gamma") {
        return Err(bad(format!("case `{case}` has no parameters")));
    }
    let probe = build_case(case, None)?;
    let t = Tower::new(probe.tower.conductor(), &[]);
    let (mut g, mut m) = (None, None);
    for part in spec.split(',') {
        let (k, v) = part.split_once('=').ok_or_else(|| bad(format!("bad binding `{part}`")))?;
        let val = parse_scalar(v.trim(), &t).map_err(bad)?;
        match k.trim() {
            "g" | "γ" | "gamma" => g = Some(val),
            "m" | "μ" | "mu" => m = Some(val),
            other => return Err(bad(format!("unknown parameter `{other}`"))),
        }
    }
    let (Some(g), Some(m)) = (g, m) else {
        return Err(bad("both g and m must be bound"));
    };
    Ok(build_case(case, Some((g, m)))?)
}

fn cmd_average(case: &str, matrix: &str, fmt: Format) -> Result<String, CliError> {
    let c = build_case(case, None)?;
    let t = &c.tower;
    let rows: Vec<Vec<&str>> = matrix.split(';').map(|r| r.split(',').map(str::trim).collect()).collect();
    let d = c.group().dim();
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(bad(format!("expected a {d}x{d} matrix")));
    }
    let entries = rows
        .iter()
        .flatten()
        .map(|s| parse_ratl(s, t))
        .collect::<Result<Vec<_>, _>>()
        .map_err(bad)?;
    let a = MatElem::new(d, entries).map_err(bad)?;
    let avg = average_mat(c.group(), &a).map_err(bad)?;
    let v = json!({ "case": case, "average": avg.to_json(t) });
    Ok(render(&v, || format!("{}\n", avg.to_text(t)), fmt))
}

fn cmd_basis(case: &str, bind: Option<&str>, fmt: Format) -> Result<String, CliError> {
    let c = parse_bind(case, bind)?;
    let t = &c.tower;
    let b = &c.basis;
    let gens: Vec<Value> = b
        .names
        .iter()
        .zip(&b.gens)
        .map(|(n, g)| json!({ "name": n, "matrix": g.to_json(t) }))
        .collect();
    let v = json!({
        "case": case,
        "f": b.f.to_text(t),
        "pole_orbit": b.pole_orbit.iter().map(|p| p.to_text(t)).collect::<Vec<_>>(),
        "zero_orbit": b.zero_orbit.iter().map(|p| p.to_text(t)).collect::<Vec<_>>(),
        "generators": gens,
    });
    Ok(render(
        &v,
        || {
            let mut s = format!("f = {}\n", b.f.to_text(t));
            for (n, g) in b.names.iter().zip(&b.gens) {
                let _ = writeln!(s, "{n} = {}", g.to_text(t));
            }
            s
        },
        fmt,
    ))
}

fn parse_range(r: Option<&str>) -> Result<(i64, i64), CliError> {
    let Some(r) = r else { return Ok((-2, 2)) };
    let (a, b) = r.split_once(',').or_else(|| r.split_once("..")).ok_or_else(|| bad("range is `lo,hi`"))?;
    let lo = a.trim().parse::<i64>().map_err(bad)?;
    let hi = b.trim().parse::<i64>().map_err(bad)?;
    if lo > hi {
        return Err(bad("empty range"));
    }
    Ok((lo, hi))
}

/// All brackets `[b_iⁿ, b_jᵐ]` with `i < j` and `n, m` in the range.
fn expanded(table: &StructureTable, lo: i64, hi: i64, tower: &Tower) -> Vec<Value> {
    let n = table.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for a in lo..=hi {
                for b in lo..=hi {
                    let terms: Vec<Value> = table
                        .bracket(i, a, j, b)
                        .into_iter()
                        .map(|(k, d, c)| json!({ "k": table.names[k], "degree": d, "coeff": c.to_text_in(tower) }))
                        .collect();
                    if !terms.is_empty() {
                        out.push(json!({
                            "left": [table.names[i], a],
                            "right": [table.names[j], b],
                            "terms": terms,
                        }));
                    }
                }
            }
        }
    }
    out
}

fn cmd_structure(case: &str, range: Option<&str>, bind: Option<&str>, fmt: Format) -> Result<String, CliError> {
    let (lo, hi) = parse_range(range)?;
    let c = parse_bind(case, bind)?;
    let t = &c.tower;
    let table = structure_table(&c.basis)?;
    let mut v = table.to_json(t);
    v["case"] = json!(case);
    v["range"] = json!([lo, hi]);
    if range.is_some() {
        v["expanded"] = Value::Array(expanded(&table, lo, hi, t));
    }
    Ok(match fmt {
        Format::Json => render(&v, String::new, fmt),
        Format::Latex => table.to_latex(t),
        Format::Text => table.to_text(t),
    })
}

fn report_json(r: &Report) -> Value {
    serde_json::to_value(r).expect("serializable")
}

fn report_text(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", r.case);
    for l in &r.lines {
        let mark = if l.pass { "PASS" } else { "FAIL" };
        if l.detail.is_empty() {
            let _ = writeln!(s, "  {mark} {}", l.name);
        } else {
            let _ = writeln!(s, "  {mark} {}: {}", l.name, l.detail);
        }
    }
    for e in &r.errata {
        let _ = writeln!(s, "  erratum {}: printed {} ; computed {} ; {}", e.item, e.printed, e.computed, e.certificate);
    }
    s
}

fn write_outputs(dir: &PathBuf, reports: &[Report]) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Other(e.to_string()))?;
    let errata: Vec<&Erratum> = reports.iter().flat_map(|r| &r.errata).collect();
    let write = |name: &str, v: &Value| {
        let body = serde_json::to_string_pretty(v).expect("serializable") + "\n";
        std::fs::write(dir.join(name), body).map_err(|e| CliError::Other(e.to_string()))
    };
    write("errata.json", &serde_json::to_value(&errata).expect("serializable"))?;
    for r in reports {
        write(&format!("{}.report.json", r.case), &report_json(r))?;
    }
    Ok(())
}

fn cmd_verify(target: &str, out: Option<PathBuf>, fmt: Format) -> Result<String, CliError> {
    let ids: Vec<&str> = match target {
        "all" => std::iter::once("appendix").chain(CASE_IDS.iter().copied()).collect(),
        "appendix" => vec!["appendix"],
        id if CASE_IDS.contains(&id) => vec![id],
        other => return Err(bad(format!("unknown case `{other}`"))),
    };
    let mut reports = Vec::new();
    for id in ids {
        let r = if id == "appendix" {
            verify_appendix()?
        } else {
            verify_case(&build_case(id, None)?)?.0
        };
        reports.push(r);
    }
    if let Some(dir) = &out {
        write_outputs(dir, &reports)?;
    }
    let v = Value::Array(reports.iter().map(report_json).collect());
    let s = render(&v, || reports.iter().map(report_text).collect(), fmt);
    if reports.iter().all(Report::passed) {
        Ok(s)
    } else {
        print!("{s}");
        Err(CliError::Failed)
    }
}
