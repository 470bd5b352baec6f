use std::process::{Command, Output};

use dioph_core::harness::RunReport;

fn dioph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dioph")).args(args).output().expect("binary runs")
}

fn json_report(args: &[&str]) -> (RunReport, Option<i32>) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = dioph(&all);
    let report = RunReport::from_json(&String::from_utf8(out.stdout).unwrap()).expect("valid JSON report");
    (report, out.status.code())
}

#[test]
fn xy_asymptotics_example() {
    let (r, code) = json_report(&["xy-asymptotics", "--curve", "0,1,1", "--nmax", "6"]);
    assert_eq!(code, Some(0));
    assert_eq!(r.checks.len(), 12);
    assert!(r.pass());
    assert_eq!(r.parameters["curve"], "0,1,1");
}

#[test]
fn zxz_example() {
    let (r, code) = json_report(&["zxz-verify", "--range", "12", "--box", "41"]);
    assert_eq!(code, Some(0));
    assert!(r.checks.iter().any(|c| c.description.contains("disagrees") && c.actual == "0"));
    assert_eq!(r.parameters["box"], "41");
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = dioph(&["unknown-cmd"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_parameters_exit_two() {
    for args in [
        &["divform-g", "--m", "2"][..],
        &["divform-ledger", "--lambda", "0"],
        &["divform-g", "--lambda", "x/y"],
        &["cusp-check", "--curve", "0,0,0"],
        &["cusp-check", "--curve", "1,2"],
        &["qf-isotropy", "--seed", "-4"],
    ] {
        assert_eq!(dioph(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn failing_check_exits_one() {
    // a box too small to contain the witnesses (b, b)
    let (r, code) = json_report(&["zxz-verify", "--range", "3", "--box", "2"]);
    assert_eq!(code, Some(1));
    assert!(!r.pass());
}

#[test]
fn seed_is_recorded_and_runs_repeat() {
    let args = ["qf-residue-check", "--seed", "17", "--count", "25"];
    let (mut a, _) = json_report(&args);
    let (mut b, _) = json_report(&args);
    assert_eq!(a.seed, Some(17));
    a.elapsed_ms = 0;
    b.elapsed_ms = 0;
    assert_eq!(a, b);
}

#[test]
fn json_round_trip() {
    let (r, _) = json_report(&["valuation-axioms", "--count", "20"]);
    let again = RunReport::from_json(&r.to_json()).unwrap();
    assert_eq!(again, r);
}

#[test]
fn rational_lambda_and_text_output() {
    let out = dioph(&["divform-g", "--lambda", "1/2", "--m", "1,3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS] m = 1: γ"));
    assert!(text.contains("lambda = 1/2"));
}
