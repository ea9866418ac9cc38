//! The `qaw` binary as a subprocess.

use std::process::{Command, Output};

fn qaw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qaw")).args(args).env_remove("QAW_NMAX_DEFAULT").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn show_prints_first_polynomial() {
    let o = qaw(&["show", "--n", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "x - t\n");
    let o = qaw(&["show", "--n", "0"]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn proposition_base_case_passes() {
    let o = qaw(&["verify", "proposition", "--n-max", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().all(|l| l.contains("status=pass")), "{out}");
}

#[test]
fn nmax_default_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qaw"))
        .args(["verify", "proposition"])
        .env("QAW_NMAX_DEFAULT", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    // Two records per n, then the bandwidth summary and the certificate.
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn parse_error_reports_column_and_exits_two() {
    let o = qaw(&["expand", "--degree-poly", "x^2 + * 3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("column"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qaw(&["verify"]).status.code(), Some(2));
    assert_eq!(qaw(&["eval", "--n", "2", "--q", "0.5"]).status.code(), Some(2));
    assert_eq!(qaw(&["verify", "numeric", "--q", "1.5"]).status.code(), Some(2));
}

#[test]
fn proof_certificates_pass() {
    let o = qaw(&["verify", "proof", "--k-samples", "2,3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.contains("verdict=zero")));
    assert!(!out.contains("verdict=nonzero"));
}

#[test]
fn json_output_is_one_object_per_line() {
    let o = qaw(&["verify", "numeric", "--n-max", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["check"], "numeric");
    assert_eq!(v["status"], "pass");
    assert!(v["max_rel_dev"].as_f64().unwrap() < 1e-9);
}

#[test]
fn expand_round_trips_a_basis_element() {
    let p2 = stdout(&qaw(&["show", "--n", "2"]));
    let o = qaw(&["expand", "--degree-poly", p2.trim()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let coeffs: Vec<&str> =
        out.lines().map(|l| l.rsplit("coefficient=").next().unwrap().split(' ').next().unwrap()).collect();
    assert_eq!(coeffs, ["0", "0", "1"], "{out}");
}

#[test]
fn eval_matches_closed_form() {
    // P_1(x) = x - q^(1/4)
    let o = qaw(&["eval", "--n", "1", "--q", "0.0625", "--x", "2"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 1.5).abs() < 1e-15);
}
