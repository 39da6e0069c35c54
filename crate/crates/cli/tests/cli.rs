use std::path::PathBuf;
use std::process::{Command, Output};

use integra::format::parse_group;
use integra::iso::isomorphic;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../fixtures/{name}.grp"))
}

fn integra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_integra")).args(args).env_remove("INTEGRA_CATALOG").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn bound_lines() {
    assert_eq!(stdout(&integra(&["bound", &path("c2")])).trim(), "bound = 16 (aut=1, z=2, mu=1, d=1)");
    assert!(stdout(&integra(&["bound", &path("s3")])).starts_with("bound = 6 "));
    assert!(stdout(&integra(&["bound", &path("trivial")])).starts_with("bound = 1 "));
}

#[test]
fn decide_exit_codes() {
    let c2 = integra(&["decide", &path("c2")]);
    assert_eq!(c2.status.code(), Some(0));
    assert!(stdout(&c2).contains("witness: order 8"));
    assert_eq!(integra(&["decide", &path("s3")]).status.code(), Some(1));
    assert_eq!(integra(&["decide", &path("c3"), "--cap", "30"]).status.code(), Some(0));
    assert_eq!(integra(&["decide", &path("v4"), "--cap", "10"]).status.code(), Some(2));
    assert_eq!(integra(&["decide", "/nonexistent.grp"]).status.code(), Some(3));
}

#[test]
fn decide_json_round_trips_the_witness() {
    let o = integra(&["decide", &path("c3"), "--json", "--emit-table"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tool"], "integra");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["emit_table"], true);
    let r = &v["result"];
    assert_eq!(r["verdict"], "Integrable");
    assert_eq!(r["bound"], "324");
    assert_eq!(r["witness_order"], 6);
    assert_eq!(r["searched_orders"], serde_json::json!([3, 6]));
    let h = parse_group(r["witness_table"].as_str().unwrap()).unwrap();
    let s3 = parse_group(&std::fs::read_to_string(fixture("s3")).unwrap()).unwrap();
    assert!(isomorphic(&h, &s3).is_some());
}

#[test]
fn reduce_reports_and_tables() {
    let o = integra(&["reduce", &path("m32")]);
    assert!(stdout(&o).contains("Q: order 16, derived C2"), "{}", stdout(&o));
    let o = integra(&["reduce", &path("c12")]);
    assert!(stdout(&o).contains("Q: order 1, derived trivial"));
    let o = integra(&["reduce", &path("d4"), "--json", "--emit-table"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["output_order"], 16);
    let q = parse_group(v["result"]["table"].as_str().unwrap()).unwrap();
    assert_eq!(q.order(), 16);
    assert_eq!(q.commutator_subgroup().len(), 2);
}

#[test]
fn check_enumerate_iso() {
    let o = integra(&["check", &path("m32")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS L3")).count(), 12);
    assert!(!text.contains("FAIL"));

    let o = integra(&["enumerate", "--order", "8"]);
    assert!(stdout(&o).starts_with("5 groups of order 8"));
    let o = integra(&["enumerate", "--order", "60"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("60"));

    let o = integra(&["iso", &path("c4"), &path("v4")]);
    assert_eq!(stdout(&o).trim(), "non-isomorphic (order histogram)");
    assert_eq!(o.status.code(), Some(1));
    let o = integra(&["iso", &path("d4"), &path("d4")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.grp");
    std::fs::write(&bad, "# two by two\n%table 2\n0 1\n1 7\n").unwrap();
    let o = integra(&["bound", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn catalog_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_integra"))
        .args(["enumerate", "--order", "12"])
        .env("INTEGRA_CATALOG", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("12.grp").exists());
    assert!(dir.path().join("6.grp").exists());
}
