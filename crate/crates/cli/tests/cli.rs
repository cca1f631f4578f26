use std::process::{Command, Output};

use serde_json::Value;

fn lcverify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcverify")).args(args).env_remove("LCVERIFY_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/{name}.txt", env!("CARGO_MANIFEST_DIR"))
}

fn json(o: &Output) -> Vec<Value> {
    serde_json::from_slice::<Value>(&o.stdout).unwrap().as_array().unwrap().clone()
}

fn without_timing(mut reports: Vec<Value>) -> String {
    for r in &mut reports {
        r.as_object_mut().unwrap().remove("timing_ms");
    }
    serde_json::to_string(&reports).unwrap()
}

#[test]
fn verify_all_passes() {
    let o = lcverify(&["verify-all"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let passes = out.lines().filter(|l| l.starts_with("PASS")).count();
    assert!(passes >= 14, "{out}");
    assert_eq!(passes, 26);
    assert!(out.ends_with("26 passed, 0 failed, 0 skipped\n"));
}

#[test]
fn repeated_json_is_identical_apart_from_timing() {
    let a = lcverify(&["verify-all", "--format", "json"]);
    let b = lcverify(&["verify-all", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(without_timing(json(&a)), without_timing(json(&b)));
    let checks: Vec<String> = json(&a).iter().map(|r| r["check"].as_str().unwrap().to_string()).collect();
    let mut sorted = checks.clone();
    sorted.sort();
    assert_eq!(checks, sorted);
}

#[test]
fn json_schema() {
    let o = lcverify(&["tower", "ex2", "--depth", "1", "--format", "json"]);
    let r = &json(&o)[0];
    assert_eq!(r["check"], "ex2.A.depth1");
    assert_eq!(r["status"], "PASS");
    assert_eq!(r["degrees"], serde_json::json!(["1/3"]));
    assert!(r["witness"].is_null());
    assert!(r["certificate"].as_array().unwrap().iter().all(|c| c[0].is_string() && c[1].is_u64()));
    assert!(r["timing_ms"].is_number());
    assert!(r["stats"].is_object());
}

#[test]
fn repeated_alpha_is_a_config_error() {
    let o = lcverify(&["verify-all", "--alphas", "0,0,1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alphas not distinct"));
}

#[test]
fn other_alphas() {
    let o = lcverify(&["verify-all", "--alphas", "-1,1/2,5,7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn depth_zero_skips_towers() {
    let o = lcverify(&["verify-all", "--depth", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("SKIP  ex1.A.depth0"));
    assert!(out.contains("SKIP  ex2.A.depth0"));
    assert!(out.contains("PASS  prop21"));
    assert!(out.contains("PASS  remark24"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn tower_levels() {
    let o = lcverify(&["tower", "ex1", "--depth", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("ex1.A.depth1  u = r1 of degree 1/2"));
    assert!(out.contains("ex1.A.depth2  u = p2 of degree 1/4"));
    let o = lcverify(&["tower", "ex2", "--depth", "1"]);
    assert!(stdout(&o).contains("of degree 1/3"));
}

#[test]
fn deep_tower_runs_out_of_budget() {
    let o = lcverify(&["tower", "ex1", "--depth", "50", "--budget", "200000"]);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    assert!(out.contains("PASS  ex1.A.depth1"));
    assert!(out.lines().any(|l| l.starts_with("FAIL") && l.contains("budget")));
    assert!(String::from_utf8_lossy(&o.stderr).contains("first failure"));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_lcverify"))
        .args(["tower", "ex1", "--depth", "50"])
        .env("LCVERIFY_BUDGET", "200000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn cohomology_tables() {
    let o = lcverify(&["cohomology", "--ring", "ex1R", "--window", "-2..2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("kunneth {-2:0, -1:0, 0:1, 1:0, 2:0}"));
    let o = lcverify(&["cohomology", "--ring", "B", "--window", "-3..0"]);
    assert!(stdout(&o).contains("free-basis {-3:2, -2:1, -1:0, 0:0}"));
    let o = lcverify(&["cohomology", "--ring", "ex2A", "--window", "0..0"]);
    assert!(stdout(&o).contains("free-basis {0:1}"));
    assert!(stdout(&o).contains("duality {0:1}"));
}

#[test]
fn cohomology_config_errors() {
    assert_eq!(lcverify(&["cohomology", "--ring", "C"]).status.code(), Some(2));
    assert_eq!(lcverify(&["cohomology", "--ring", "B", "--window", "2..-2"]).status.code(), Some(2));
    assert_eq!(lcverify(&["cohomology", "--ring", "B", "--window", "0"]).status.code(), Some(2));
}

#[test]
fn member_queries() {
    let s = fixture("S");
    let o = lcverify(&["member", "--presentation", &s, "--element", "x*y", "--ideal", "z", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json(&o)[0];
    assert_eq!(r["stats"]["member"], true);
    assert_eq!(r["certificate"], serde_json::json!([["w", 0]]));
    let o = lcverify(&["member", "--presentation", &s, "--element", "x^2*w", "--ideal", "z", "--format", "json"]);
    let r = &json(&o)[0];
    assert_eq!(r["stats"]["member"], false);
    assert_eq!(r["witness"], "x^2*w");
}

#[test]
fn member_config_errors() {
    let s = fixture("S");
    assert_eq!(lcverify(&["member", "--presentation", "/nonexistent", "--element", "x", "--ideal", "y"]).status.code(), Some(2));
    assert_eq!(lcverify(&["member", "--presentation", &s, "--element", "q", "--ideal", "y"]).status.code(), Some(2));
}

#[test]
fn report_to_file() {
    let path = std::env::temp_dir().join(format!("lcverify-cli-test-{}.json", std::process::id()));
    let o = lcverify(&["tower", "ex2", "--depth", "1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written[0]["check"], "ex2.A.depth1");
    std::fs::remove_file(path).unwrap();
}
