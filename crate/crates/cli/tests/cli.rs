use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ctperiod"))
}

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(format!("{name}.json"))
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn run_with_report(name: &str, dir: &TempDir) -> (Output, PathBuf) {
    let report = dir.path().join(format!("{name}.report.json"));
    let o = bin().arg("run").arg(scenario(name)).arg("--report").arg(&report).output().unwrap();
    (o, report)
}

fn verify(report: &PathBuf) -> Output {
    bin().arg("verify-report").arg(report).output().unwrap()
}

#[test]
fn golden_exit_codes() {
    let dir = TempDir::new().unwrap();
    for (name, expected) in [
        ("bikr_three_lines", 0),
        ("truncated_cubic_tor", 0),
        ("truncated_cubic_cy", 0),
        ("truncated_cubic_2_10", 0),
        ("semisimple_control", 0),
        ("path_a2_not_self_injective", 1),
        ("bad_prime", 2),
    ] {
        let (o, _) = run_with_report(name, &dir);
        assert_eq!(code(&o), expected, "{name}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn semisimple_control_is_not_applicable() {
    let dir = TempDir::new().unwrap();
    let (o, path) = run_with_report("semisimple_control", &dir);
    assert!(stdout(&o).contains("semisimple, periodicity not applicable"));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r["status"], "not-applicable");
}

#[test]
fn non_self_injective_reports_the_reason() {
    let o = bin().arg("run").arg(scenario("path_a2_not_self_injective")).output().unwrap();
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("self-injectivity failed"));
}

#[test]
fn expectation_mismatch_fails_the_task() {
    let o = bin().arg("run").arg(scenario("bikr_cusp_line")).output().unwrap();
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("expectation mismatch: period"));
}

#[test]
fn period_beyond_nmax_is_inconclusive() {
    let o = bin().arg("period").arg(scenario("bikr_three_lines")).args(["--nmax", "3"]).output().unwrap();
    assert_eq!(code(&o), 3, "{}", stdout(&o));
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"field": {"p": 5}, "backend": {"type": "plane-curve", "factors": ["x"]}, "tasks": [], "extra": 1}"#)
        .unwrap();
    assert_eq!(code(&bin().arg("run").arg(&bad).output().unwrap()), 2);
    assert_eq!(code(&bin().arg("run").arg(dir.path().join("missing.json")).output().unwrap()), 2);
    let o = bin().arg("run").arg(scenario("bad_prime")).output().unwrap();
    assert!(String::from_utf8_lossy(&o.stderr).contains("not prime"));
}

#[test]
fn reports_verify_and_tampering_is_caught() {
    let dir = TempDir::new().unwrap();
    for name in ["bikr_three_lines", "truncated_cubic", "truncated_cubic_cy"] {
        let (_, path) = run_with_report(name, &dir);
        let o = verify(&path);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
    }
    let (_, path) = run_with_report("truncated_cubic_cy", &dir);
    let mut r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let w = &mut r["tasks"][0]["certificate"]["witness"];
    let x = w[0][0].as_i64().unwrap();
    w[0][0] = Value::from(x + 1);
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, serde_json::to_string(&r).unwrap()).unwrap();
    let o = verify(&tampered);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert!(stdout(&o).contains("FAILED"));
}

#[test]
fn reports_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let (_, a) = run_with_report("truncated_cubic", &dir);
    let first = std::fs::read(&a).unwrap();
    let (_, b) = run_with_report("truncated_cubic", &dir);
    assert_eq!(first, std::fs::read(&b).unwrap());
}

#[test]
fn seed_override_changes_only_the_hash() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("seeded.json");
    let o = bin().arg("run").arg(scenario("truncated_cubic_tor")).args(["--seed", "7", "--report"]).arg(&out).output().unwrap();
    assert_eq!(code(&o), 0);
    let (_, base) = run_with_report("truncated_cubic_tor", &dir);
    let a: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let b: Value = serde_json::from_str(&std::fs::read_to_string(&base).unwrap()).unwrap();
    assert_eq!(a["seed"], 7);
    assert_ne!(a["scenario_hash"], b["scenario_hash"]);
    assert_eq!(a["tasks"][0]["payload"]["dims"], b["tasks"][0]["payload"]["dims"]);
}

#[test]
fn subcommands() {
    let o = bin().args(["bikr", "--factors", "x,y,x+y"]).output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("3 summands"));
    assert!(stdout(&o).contains("2 vertices, 0 loops"));

    let o = bin().arg("stable-end").arg(scenario("truncated_cubic")).output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dim Γ = 4"));

    let o = bin().arg("rigid").arg(scenario("bikr_three_lines")).output().unwrap();
    assert_eq!(code(&o), 0);

    let o = bin().arg("resolve").arg(scenario("bikr_three_lines")).args(["--X", "simple:1"]).output().unwrap();
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("7/7"));

    let o = bin().arg("tor").arg(scenario("truncated_cubic")).args(["--imax", "4"]).output().unwrap();
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("[4, 0, 4, 0, 0]"));

    let o = bin().arg("cy").arg(scenario("truncated_cubic")).args(["--s", "-1"]).output().unwrap();
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let o = bin().arg("period").arg(scenario("bikr_three_lines")).output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("period 4"));

    let o = bin().args(["bikr", "--factors", "x,y", "no-such-task"]).output().unwrap();
    assert_eq!(code(&o), 2);
}
