//! End-to-end tests of the `ellfgl` binary.

use std::process::{Command, Output};

use ellfgl_core::buchstaber::build_b;
use ellfgl_core::{json, CanonicalSeries, GradedPoly, Params, Rational};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellfgl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn series_b_text() {
    let out = run(&["series", "B", "--order", "3"]);
    assert_eq!(code(&out), 0);
    let lines: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    assert_eq!(
        lines,
        [
            "x^0  1",
            "x^1  -1/2*p1",
            "x^2  -1/4*p2 + 1/16*p1^2",
            "x^3  -1/6*p3"
        ]
    );
}

#[test]
fn series_r_json() {
    let out = run(&["series", "R", "--order", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let r = json::uni_from_str(&stdout(&out)).unwrap();
    assert_eq!(r.coeff(0), GradedPoly::one());
    assert_eq!(r.coeff(1), GradedPoly::p(1).scale(&rat(1, 2)));
}

#[test]
fn every_series_target_round_trips() {
    let cs = CanonicalSeries::build(&Params::generic(), 5).unwrap();
    for (target, series) in cs.named() {
        let out = run(&["series", target, "--order", "5", "--format", "json"]);
        assert_eq!(code(&out), 0, "{target}");
        assert_eq!(
            &json::uni_from_str(&stdout(&out)).unwrap(),
            series,
            "{target}"
        );
    }
    for target in ["logG", "SN"] {
        let out = run(&["series", target, "--order", "5", "--format", "json"]);
        let s = json::uni_from_str(&stdout(&out)).unwrap();
        assert_eq!(s.coeff(1), GradedPoly::one(), "{target}");
    }
    let b = json::uni_from_str(&stdout(&run(&[
        "series", "B", "--order", "7", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(b, build_b(&Params::generic(), 7));
}

#[test]
fn jacobi_sn_is_odd() {
    let out = run(&[
        "series", "SN", "--order", "6", "--jacobi", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let sn = json::uni_from_str(&stdout(&out)).unwrap();
    assert_eq!(sn.coeff(1), GradedPoly::one());
    for n in [0, 2, 4, 6] {
        assert!(sn.coeff(n).is_zero(), "x^{n}");
    }
    assert!(!sn.coeff(3).is_zero());
}

#[test]
fn fgl_low_coefficients() {
    let f = json::bi_from_str(&stdout(&run(&[
        "fgl", "F", "--order", "2", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(f.coeff(1, 1), GradedPoly::p(1).scale(&rat(-1, 2)));
    let g = json::bi_from_str(&stdout(&run(&[
        "fgl", "G", "--order", "2", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(g.coeff(1, 1), GradedPoly::p(1).scale(&rat(1, 2)));
    for law in [&f, &g] {
        assert_eq!(law.coeff(1, 0), GradedPoly::one());
        assert!(law.coeff(2, 0).is_zero());
        assert!(law.coeff(0, 0).is_zero());
    }
}

#[test]
fn g_theorem_matches_g() {
    let g = stdout(&run(&["fgl", "G", "--order", "5", "--format", "json"]));
    let gt = stdout(&run(&[
        "fgl",
        "G-theorem",
        "--order",
        "5",
        "--format",
        "json",
    ]));
    assert_eq!(
        json::bi_from_str(&g).unwrap(),
        json::bi_from_str(&gt).unwrap()
    );
}

#[test]
fn verify_default_passes() {
    let out = run(&["verify"]);
    let text = stdout(&out);
    assert_eq!(code(&out), 0, "{text}");
    assert!(text.contains("17 of 17 checks passed"));
    // Sorted by name.
    let names: Vec<&str> = text
        .lines()
        .filter_map(|l| l.strip_prefix("PASS "))
        .map(|l| l.split(' ').next().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted);
}

#[test]
fn verify_only_hoehn() {
    let out = run(&["verify", "--only", "hoehn", "--order", "12"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("PASS hoehn (order 12)"));
}

#[test]
fn injected_fault_fails_with_first_coefficient() {
    let out = run(&[
        "verify",
        "--inject-fault",
        "b2-sign",
        "--order",
        "6",
        "--bi-order",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], Value::Bool(false));
    let ode = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "b-ode")
        .unwrap();
    assert_eq!(ode["passed"], Value::Bool(false));
    assert_eq!(ode["first_failure"]["powers"], serde_json::json!([2]));
    assert_eq!(ode["first_failure"]["residual"], "-2*p2 + 1/2*p1^2");
}

#[test]
fn verify_respects_thread_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_ellfgl"))
        .args([
            "verify",
            "--only",
            "xi",
            "--only",
            "b-ode",
            "--order",
            "6",
            "--bi-order",
            "3",
        ])
        .env("ELLFGL_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let bad = Command::new(env!("CARGO_BIN_EXE_ellfgl"))
        .args(["verify", "--only", "xi"])
        .env("ELLFGL_THREADS", "none")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn numeric_arcsin() {
    let out = run(&[
        "numeric", "--jacobi", "0", "--x", "0.3", "--y", "0.4", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["residual"].as_f64().unwrap() <= 1e-9);
    let ix = v["I(x)"].as_f64().unwrap();
    assert!((ix - 0.3f64.asin()).abs() < 1e-12);
}

#[test]
fn numeric_general_point() {
    let out = run(&[
        "numeric", "--p", "0.3", "-0.7", "0.11", "0.2", "--x", "0.02", "--y", "0.02", "--tol",
        "1e-8",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("residual"));
}

#[test]
fn numeric_domain_error() {
    let out = run(&[
        "numeric", "--p", "0", "0", "0", "-1", "--x", "2.0", "--y", "0.1",
    ]);
    assert_eq!(code(&out), 3);
    let radius = run(&[
        "numeric", "--p", "0", "0", "0", "-1", "--x", "0.3", "--y", "0.1",
    ]);
    assert_eq!(code(&radius), 3);
}

#[test]
fn numeric_residual_above_tolerance_fails() {
    // Order 2 keeps only x + y, far from the true sum at this radius.
    let out = run(&[
        "numeric", "--jacobi", "0", "--x", "0.3", "--y", "0.4", "--order", "2",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["series", "Q"],
        vec!["series", "B", "--order", "0"],
        vec!["fgl", "H"],
        vec!["verify", "--only", "no-such-check"],
        vec!["verify", "--inject-fault", "other"],
        vec!["numeric", "--x", "0.1", "--y", "0.1"],
        vec![
            "numeric", "--jacobi", "0", "--x", "0.1", "--y", "0.1", "--tol", "1e-15",
        ],
        vec!["series", "B", "--jacobi", "--ochanine"],
        vec![],
    ] {
        assert_eq!(code(&run(&args)), 2, "{args:?}");
    }
}
