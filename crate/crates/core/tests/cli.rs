use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_logfol"));
    c.env_remove("LOGFOL_THREADS");
    c
}

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn logfol")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn strip_timings(mut v: Value) -> Value {
    for c in v["checks"].as_array_mut().expect("checks") {
        c.as_object_mut().unwrap().remove("elapsed_ms");
    }
    v
}

#[test]
fn passing_scenario_exits_zero_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = run(&[
        "check",
        data("scenarios/three-lines.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["schema"], "logfol.report/1");
    assert_eq!(report["passed"], true);
    assert_eq!(report["tolerances"]["residue"], 1e-9);
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn check_error_is_recorded_and_exits_one() {
    let o = run(&[
        "check",
        data("scenarios/first-integral-mismatch.json").to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code(&o), 1);
    let report = stdout_json(&o);
    let fi = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "first_integral")
        .unwrap();
    assert_eq!(fi["status"], "error");
    assert!(fi["error"].as_str().unwrap().contains("r = p + 1"));
    // the remaining checks still ran
    assert_eq!(report["counts"]["passed"], 4);
}

#[test]
fn invalid_scenario_exits_two_listing_violations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"schema": "logfol.scenario/1", "n": 2,
            "poles": [[["1", [1,0,0]]], [["2", [1,0,0]]]],
            "tensor": {"r": 2, "p": 1, "entries": [[[3], "1"], [[1], "1/0"]]},
            "checks": ["closed", "no_such_check"]}"#,
    )
    .unwrap();
    let o = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    for needle in [
        "pairwise non-proportional violated",
        "out of range",
        "malformed scalar literal",
        "unknown check",
    ] {
        assert!(err.contains(needle), "missing {needle:?} in {err}");
    }
    assert_eq!(code(&run(&["check", "/nonexistent/scenario.json"])), 2);
}

#[test]
fn report_is_deterministic_per_seed() {
    let a = run(&["example", "perturbation-family", "--json"]);
    let b = run(&["example", "perturbation-family", "--json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(strip_timings(stdout_json(&a)), strip_timings(stdout_json(&b)));
}

#[test]
fn emitted_scenario_reproduces_the_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fib.json");
    let a = run(&[
        "example",
        "rational-fibration",
        "--json",
        "--emit-scenario",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&a), 0);
    let b = run(&["check", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&b), 0);
    assert_eq!(strip_timings(stdout_json(&a)), strip_timings(stdout_json(&b)));
}

#[test]
fn seed_override_is_reported() {
    let o = run(&[
        "check",
        data("scenarios/three-lines.json").to_str().unwrap(),
        "--seed",
        "99",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["seed"], 99);
}

#[test]
fn unknown_example_is_invalid_input() {
    assert_eq!(code(&run(&["example", "p7-quartics"])), 2);
}

#[test]
fn decompose_exit_codes() {
    let o = run(&["decompose", data("tensors/product-of-three.json").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["rewedge_exact"], true);
    assert_eq!(v["covectors"].as_array().unwrap().len(), 3);

    let o = run(&["decompose", data("tensors/plucker-violation.json").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["plucker_defects"], serde_json::json!(["1"]));
}

#[test]
fn residue_and_degree_subcommands() {
    let s = data("scenarios/three-lines.json");
    let o = run(&["residue", s.to_str().unwrap(), "--index", "3"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["exact"], "-3");
    assert!((v["recovered"][0].as_f64().unwrap() + 3.0).abs() < 1e-9);

    assert_eq!(code(&run(&["residue", s.to_str().unwrap(), "--index", "4"])), 2);
    assert_eq!(code(&run(&["residue", s.to_str().unwrap(), "--index", "1,2"])), 2);
    assert_eq!(code(&run(&["residue", s.to_str().unwrap(), "--index", "x"])), 2);

    let o = run(&["degree", data("scenarios/quadric-pencil.json").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["formula"], 1);
    assert_eq!(v["restriction"], 1);
}

#[test]
fn thread_cap_is_validated() {
    let s = data("scenarios/three-lines.json");
    let ok = bin()
        .args(["check", s.to_str().unwrap()])
        .env("LOGFOL_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&ok), 0);
    let bad = bin()
        .args(["check", s.to_str().unwrap()])
        .env("LOGFOL_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}
