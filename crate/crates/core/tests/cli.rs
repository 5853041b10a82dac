use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lorentz-delta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn matrix_n3() {
    let (code, v) = json(&["matrix", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["matrix"], "[[3,2],[0,1]]");
    for key in ["command", "inputs", "checks", "pass"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn bounds_up_to_40_pass() {
    let (code, v) = json(&["bounds", "--n-max", "40"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 40 * 5);
}

#[test]
fn cg_one_half() {
    let (code, v) = json(&["cg", "--r2", "1", "--s2", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["representations"].as_array().unwrap().len(), 4);
    assert_eq!(v["outputs"]["diagonal_count"], 2);
}

#[test]
fn solve_boost_degree_two() {
    let (code, v) = json(&["solve-boost", "--n", "2", "--u", "p0*p1"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["v0"], "1/2*p0^2");
}

#[test]
fn split_removes_noise() {
    let (code, v) = json(&[
        "split",
        "--plus",
        "d[0,0,0,0] + d[1,0,0,0]",
        "--minus",
        "d[1,0,0,0]",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["outputs"]["w_plus"], "d[0,0,0,0]");
    assert_eq!(v["outputs"]["w_minus"], "0");
}

#[test]
fn extract_box_delta() {
    let (code, v) = json(&[
        "extract",
        "--s2",
        "1",
        "--w",
        "cov(1)*(d[2,0,0,0] - d[0,2,0,0] - d[0,0,2,0] - d[0,0,0,2])",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["outputs"]["ambiguity_orders"], serde_json::json!([0]));
}

#[test]
fn harmonic_and_projection() {
    let (code, v) = json(&["harmonic", "--poly", "p1^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["parts"].as_array().unwrap().len(), 2);
    let (code, v) = json(&["project-so3", "--poly", "p1^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["projection"], "1/3*p1^2 + 1/3*p2^2 + 1/3*p3^2");
}

#[test]
fn kernel_and_covariant() {
    let (code, _) = json(&["kernel-check", "--s2", "3", "--l-max", "5"]);
    assert_eq!(code, 0);
    let (code, v) = json(&["covariant", "--s2", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["reflection_parity"], 1);
    let (code, _) = json(&["cokernel2d", "--n-max", "6"]);
    assert_eq!(code, 0);
}

#[test]
fn lemma3_and_growth() {
    let (code, v) = json(&["lemma3", "--m", "1", "--poly", "x0^3 + x1^3", "--dim", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["parts"], serde_json::json!(["x0", "x1"]));
    let (code, v) = json(&["growth", "--beta", "1", "--coeffs", "d[1] + 1/2*d[2]"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["sequence"].as_array().unwrap().len(), 2);
}

#[test]
fn errors_exit_two() {
    let out = run(&["harmonic", "--poly", "p1 + * p2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:6"));
    let out = run(&["harmonic", "--poly", "x1 + p2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["lemma3", "--m", "1", "--poly", "x0^2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let a = run(&[
        "split",
        "--plus",
        "d[0,0,0,0] + d[0,0,2,0]",
        "--minus",
        "d[0,0,2,0]",
    ]);
    let b = run(&[
        "split",
        "--plus",
        "d[0,0,0,0] + d[0,0,2,0]",
        "--minus",
        "d[0,0,2,0]",
    ]);
    assert_eq!(a.stdout, b.stdout);
}
