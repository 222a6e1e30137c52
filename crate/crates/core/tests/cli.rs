use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autlie"))
        .args(args)
        .env_remove("AUTLIE_OUT")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn tetrahedral_group_summary() {
    let v = json(&["group", "T"]);
    assert_eq!(v["order"], 12);
    assert_eq!(v["generic_orbit_size"], 12);
    let sizes: Vec<u64> = v["degenerate_orbits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, vec![6, 4, 4]);
}

#[test]
fn dihedral_and_trivial_orders() {
    assert_eq!(json(&["group", "D", "5"])["order"], 10);
    assert_eq!(json(&["group", "Z", "1"])["order"], 1);
}

#[test]
fn dihedral_primitive_expression() {
    let v = json(&["primitive", "D2", "0", "1"]);
    assert_eq!(v["function"], "l^2 - 2 + l^-2");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["primitive", "Z4", "0", "0"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["group", "Q"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let bad = run(&["verify", "nosuch"]);
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
}

#[test]
fn output_is_deterministic() {
    let a = run(&["structure", "D3lambda_sl3"]);
    let b = run(&["structure", "D3lambda_sl3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bound_structure_matches_hand_evaluation() {
    let v = json(&["structure", "D2_sl2", "--bind", "g=2,m=3"]);
    assert_eq!(v["window"]["p"], 1);
    assert_eq!(v["window"]["q"], 0);
    let xy = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["i"] == "x" && e["j"] == "y")
        .unwrap();
    // a = 2μ²(1−γ⁴)/(γ(μ²−γ²)(1−μ²γ²)) at γ = 2, μ = 3.
    let terms: Vec<(String, i64, String)> = xy["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            (
                t["k"].as_str().unwrap().to_string(),
                t["offset"].as_i64().unwrap(),
                t["coeff"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert!(terms.contains(&("h".into(), 1, "1".into())));
    assert!(terms.contains(&("h".into(), 0, "27/35".into())));
}

#[test]
fn latex_and_text_formats() {
    let out = run(&["--format", "latex", "structure", "D2B_sl3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\\left["));
    let out = run(&["--format", "text", "structure", "D2B_sl3"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("p = 1"));
}

#[test]
fn verify_writes_reports() {
    let dir = std::env::temp_dir().join(format!("autlie-cli-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    let out = run(&["verify", "D2_sl2_zero", "--out", d]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let errata: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("errata.json")).unwrap()).unwrap();
    assert_eq!(errata.as_array().unwrap().len(), 1);
    assert!(dir.join("D2_sl2_zero.report.json").exists());
    std::fs::remove_dir_all(&dir).unwrap();
}
