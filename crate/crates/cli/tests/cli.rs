use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> fano_cli::Execution {
    fano_cli::run(std::iter::once("fano").chain(args.iter().copied()))
}

fn report(args: &[&str]) -> (i32, Value) {
    let r = run(args);
    assert!(r.stderr.is_empty(), "{}", r.stderr);
    (r.code, serde_json::from_str(&r.stdout).unwrap())
}

fn residual_args() -> Vec<String> {
    vec![
        "line".into(),
        "residual".into(),
        "--cubic".into(),
        fixture("residual_cubic.json"),
        "--line".into(),
        fixture("residual_line.json"),
        "--plane".into(),
        fixture("residual_plane.json"),
    ]
}

#[test]
fn residual_matches_golden_file() {
    let args = residual_args();
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, r) = report(&args);
    assert_eq!(code, 0);
    let golden: Value = serde_json::from_str(&std::fs::read_to_string(fixture("residual_golden.json")).unwrap()).unwrap();
    assert_eq!(r["result"]["residual"], golden);
    assert_eq!(r["result"]["triple"], false);
}

#[test]
fn report_embeds_command_and_config() {
    let (code, r) = report(&["fermat4", "degrees", "--seed", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r["command"], "fermat4 degrees --seed 4");
    assert_eq!(r["config"]["seed"], 4);
    assert_eq!(r["config"]["tolerances"]["residual"], 1e-10);
    assert_eq!(r["config"]["caps"]["loops"], 200);
    assert_eq!(r["result"]["fourfold_total"], 225);
    assert_eq!(r["result"]["threefold_total"], 90);
}

#[test]
fn identical_invocations_give_identical_bytes() {
    for args in [&["mono", "six-lines", "--seed", "1"][..], &["fermat4", "count360", "--seed", "2"], &["x0", "build", "--nodes", "1"]] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.code, 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn six_lines_group_is_symmetric() {
    let (code, r) = report(&["mono", "six-lines", "--seed", "0"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["order"], 720);
    assert_eq!(r["result"]["verdict"], "symmetric");
}

#[test]
fn component_census_counts_55() {
    let (code, r) = report(&["fermat4", "components", "--samples", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["count"], 55);
    assert_eq!(r["result"]["census"]["second_type"], 165);
    assert_eq!(r["result"]["eckardt_points"], 45);
}

#[test]
fn mismatch_exits_with_two() {
    // a cap of one loop cannot produce all of S6
    let (code, r) = report(&["mono", "six-lines", "--cap", "1"]);
    assert_eq!(code, 2);
    assert_eq!(r["verified"], false);
    assert!(r["result"]["order"].as_u64().unwrap() < 720);
}

#[test]
fn line_off_the_cubic_is_a_computation_failure() {
    let (code, r) = report(&["line", "type", "--fermat", "4", "--line", &fixture("residual_line.json")]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("does not lie on the cubic"));
}

#[test]
fn usage_errors_are_machine_readable() {
    for args in [&["fermat4", "contraction", "--i", "0"][..], &["x0", "build", "--nodes", "3"], &["bogus"]] {
        let r = run(args);
        assert_eq!(r.code, 1, "{args:?}");
        let diag: Value = serde_json::from_str(&r.stderr).unwrap();
        assert!(diag["error"]["kind"].as_str().unwrap().starts_with("usage"));
    }
    let r = run(&["fermat4", "contraction", "--i", "3", "--j", "2", "--mu", "1"]);
    assert_eq!(r.code, 1);
    let r = run(&["line", "type", "--cubic", "/nonexistent.json", "--line", "/nonexistent.json"]);
    assert_eq!(r.code, 1);
    let diag: Value = serde_json::from_str(&r.stderr).unwrap();
    assert_eq!(diag["error"]["kind"], "io");
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let r = run(&["x0", "build", "--nodes", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["fiber"]["second_type"], 2);
    assert_eq!(v["result"]["fiber"]["first_type"], 2);
}

#[test]
fn binary_follows_the_exit_code_contract() {
    let bin = env!("CARGO_BIN_EXE_fano");
    let ok = Command::new(bin).args(residual_args()).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let a: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(a["verified"], true);
    let bad = Command::new(bin).args(["mono", "cl2", "--cone", "30"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let env = Command::new(bin).args(["fermat4", "degrees"]).env("FANO_SEED", "9").output().unwrap();
    let v: Value = serde_json::from_slice(&env.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 9);
}
