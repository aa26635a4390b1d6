use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use realpi0::cli::{render_json, Report};

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn pi0(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pi0")).args(args).env_remove("PI0_ORACLE_BOUND").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn check_golden(args: &[&str], file: &str) {
    let out = pi0(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let want = std::fs::read_to_string(golden(file)).unwrap();
    assert_eq!(stdout(&out), want, "{args:?} vs {file}");
}

#[test]
fn preset_goldens() {
    check_golden(&["preset", "GL", "--n", "8", "--reps", "--h1", "--oracle"], "gl8.txt");
    check_golden(&["preset", "PSO", "--p", "4", "--q", "4", "--reps", "--h1", "--oracle"], "pso44.txt");
    check_golden(&["preset", "PSO", "--p", "2", "--q", "4"], "pso24.txt");
    check_golden(&["preset", "PSO", "--p", "1", "--q", "3"], "pso13.txt");
    check_golden(&["preset", "SO", "--p", "3", "--q", "4", "--reps"], "so34.txt");
}

#[test]
fn compute_goldens() {
    let weil = golden("weil.json");
    check_golden(&["compute", weil.to_str().unwrap()], "weil.txt");
    let e7 = golden("e7_evii.json");
    check_golden(&["compute", e7.to_str().unwrap()], "e7_evii.out.json");
}

#[test]
fn json_output_round_trips() {
    for args in [
        vec!["preset", "PSO", "--p", "4", "--q", "4", "--h1", "--reps", "--oracle", "--format", "json"],
        vec!["preset", "E7", "--form", "EV", "--h1", "--format", "json"],
        vec!["preset", "TORUS_WEIL", "--format", "json"],
    ] {
        let out = stdout(&pi0(&args));
        let report: Report = serde_json::from_str(&out).unwrap();
        assert_eq!(render_json(&report), out, "{args:?}");
    }
}

#[test]
fn json_keys_and_values() {
    let out = stdout(&pi0(&["preset", "PSO", "--p", "3", "--q", "3", "--reps", "--h1", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 2);
    assert_eq!(v["rank"], 1);
    assert_eq!(v["generators"], serde_json::json!([[0, 0, 1]]));
    let rep = &v["representatives"][0];
    assert_eq!(rep["nu"], serde_json::json!([0, 0, 1]));
    let values: Vec<&str> = rep["evaluations"].as_array().unwrap().iter().map(|e| e[1].as_str().unwrap()).collect();
    assert_eq!(values, ["i", "i", "i", "-i", "-i", "-i"]);
    assert!(rep["note"].is_string());
    assert!(v["h1_order"].is_u64());
    assert!(v.get("oracle").is_none());
}

#[test]
fn output_is_deterministic() {
    let args = ["preset", "SIMPLE", "--type", "E", "--rank", "7", "--isogeny", "adj", "--h1", "--reps"];
    assert_eq!(stdout(&pi0(&args)), stdout(&pi0(&args)));
}

#[test]
fn validation_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("bad_theta.json", r#"{"rank":1,"coroots":[],"theta":[[2]]}"#),
        ("not_json.json", "{ rank: 1"),
        ("unknown.json", r#"{"preset":"SL","n":2}"#),
        ("coroot.json", r#"{"rank":2,"coroots":[[1,0]],"theta":[[0,1],[1,0]]}"#),
    ];
    for (name, body) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        let out = pi0(&["compute", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"), "{name}");
    }
    assert_eq!(pi0(&["compute", "/nonexistent/job.json"]).status.code(), Some(1));
    assert_eq!(pi0(&["preset", "GL"]).status.code(), Some(1));
    assert_eq!(pi0(&["preset", "PSO", "--p", "1", "--q", "2"]).status.code(), Some(1));
    assert_eq!(pi0(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn oracle_bound_from_environment() {
    let run = |bound: &str| {
        Command::new(env!("CARGO_BIN_EXE_pi0"))
            .args(["preset", "TORUS_SPLIT", "--n", "3", "--oracle", "--format", "json"])
            .env("PI0_ORACLE_BOUND", bound)
            .output()
            .unwrap()
    };
    let v: serde_json::Value = serde_json::from_slice(&run("4").stdout).unwrap();
    assert_eq!(v["oracle"], "skipped");
    let v: serde_json::Value = serde_json::from_slice(&run("8").stdout).unwrap();
    assert_eq!(v["oracle"], "agree");
    assert_eq!(run("lots").status.code(), Some(1));
}

#[test]
fn help_exits_0() {
    let out = pi0(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("compute"));
}
