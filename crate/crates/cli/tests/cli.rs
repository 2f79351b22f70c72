use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn genus4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genus4")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn verify_all_passes() {
    let o = genus4(&["verify", "--all", "--prec", "128"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("type(J₃)=(1,1,3): pass"));
    assert!(out.contains("documented-divergence"));
    assert!(!out.contains(": fail"));
}

#[test]
fn verify_only_restricts_to_one_tag() {
    let o = genus4(&["verify", "--only", "snf"]);
    assert_eq!(o.status.code(), Some(0));
    let checks: Vec<String> = stdout(&o).lines().filter(|l| l.starts_with('[')).map(String::from).collect();
    assert_eq!(checks.len(), 2);
    assert!(checks.iter().all(|l| l.contains(" snf] ")));
}

#[test]
fn verify_json_lists_every_criterion() {
    let o = genus4(&["verify", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut criteria: Vec<u64> =
        v["checks"].as_array().unwrap().iter().map(|c| c["criterion"].as_u64().unwrap()).collect();
    criteria.dedup();
    assert_eq!(criteria, (1..=13).collect::<Vec<_>>());
}

#[test]
fn strict_turns_divergences_into_failures() {
    let o = genus4(&["verify", "--strict", "--only", "homology"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("printed e₁..e₈: XᵀMX = J: fail"));
}

#[test]
fn starved_precision_is_inconclusive() {
    let o = genus4(&["verify", "--prec", "8"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).contains("inconclusive"));
}

#[test]
fn unknown_tag_is_a_usage_error() {
    let o = genus4(&["verify", "--only", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("expected one of snf"));
}

#[test]
fn emit_special_prym_matches_the_fixture() {
    let o = genus4(&["emit", "prym", "--special"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let m = genus4::periods::PeriodMatrix::from_json(&v).unwrap();
    assert!(m.equals_constant(&genus4::fixtures::z3_special()));
}

#[test]
fn decimal_output_is_deterministic() {
    let args = ["emit", "genus4", "--tau", "zeta^3", "--special", "--format", "decimal", "--prec", "64"];
    let a = genus4(&args);
    let b = genus4(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.starts_with("# 4x8 period matrix, 64-bit balls"));
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn emit_at_the_origin() {
    let o = genus4(&["emit", "prym", "--z1", "0", "--z2", "0", "--format", "decimal"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn points_outside_the_ball_are_rejected() {
    let o = genus4(&["emit", "prym", "--z1", "1", "--z2", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("outside the 2-ball"), "{err}");
    assert!(err.contains("= 1.0"), "{err}");

    let o = genus4(&["emit", "genus4", "--special", "--tau", "-zeta^3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("upper half plane"));
}

#[test]
fn bad_literal_reports_the_column() {
    let o = genus4(&["emit", "prym", "--z1", "1/2+*zeta", "--z2", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column"), "{}", stderr(&o));
}

#[test]
fn tools_snf_on_the_prym_polarization() {
    let o = genus4(&["tools", "snf", "--file", &data("J3.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "divisors [1,1,1,1,3,3]");
}

#[test]
fn tools_symplectic_basis() {
    let o = genus4(&["tools", "symplectic-basis", "--file", &data("J3.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["d"], serde_json::json!(["1", "1", "3"]));
}

#[test]
fn tools_covers_from_flags_and_file() {
    let flags = genus4(&["tools", "covers", "--n", "6", "--exponents", "1,1,1,3"]);
    let file = genus4(&["tools", "covers", "--file", &data("cover.json")]);
    for o in [&flags, &file] {
        assert_eq!(o.status.code(), Some(0), "{}", stderr(o));
        let out = stdout(o);
        assert!(out.starts_with("genus 4\n"));
        assert!(out.contains("dims (0,0,1,1,2)"));
        assert!(out.contains("ranks (2,1,2,1,2)"));
    }
}

#[test]
fn tools_riemann_check_on_emitted_family() {
    let o = genus4(&["emit", "genus4"]);
    assert_eq!(o.status.code(), Some(0));
    let path = scratch("genus4_family.json", &stdout(&o));
    let o = genus4(&["tools", "riemann-check", "--file", &path]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "first relation: identically zero");
    let o = genus4(&["tools", "riemann-check", "--file", &data("genus4.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn malformed_json_is_a_usage_error() {
    let path = scratch("broken.json", "{\"rows\": 2, \"cols\": ");
    let o = genus4(&["tools", "snf", "--file", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1 column"), "{}", stderr(&o));
}
