//! End-to-end tests of the `epr` binary: exit codes, text and JSON output.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epr"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn epr_of_fixture_matrix() {
    let out = run(&["epr", "../../fixtures/m_naaana.mat"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(stdout(&out).contains("NAAANA"));
}

#[test]
fn epr_with_pr_flag() {
    let out = run(&["epr", "--pr", "../../fixtures/m_naaana.mat"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("r0=1"), "{s}");
    assert!(s.contains("011101"), "{s}");
}

#[test]
fn epr_json_output() {
    let out = run(&["--json", "epr", "../../fixtures/m_aann.mat"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["epr"], "AANN");
}

#[test]
fn construct_and_pipe_format() {
    let out = run(&["construct", "j-minus-ki", "--q", "3", "--n", "5", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.starts_with("3 5\n"), "{s}");
    assert!(s.contains("0 1 1 1 1"), "{s}");
}

#[test]
fn pattern_match_yes_and_no() {
    let out = run(&["pattern", "match", "NAAN(AAN)*A", "NAANAANA"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    // no match is a verification difference: exit 1
    let out = run(&["pattern", "match", "ASA(SA)*N", "AASN"]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    assert!(stdout(&out).contains("no match"));
}

#[test]
fn pattern_expand_catalog() {
    let out = run(&["pattern", "catalog", "f3", "--n", "6", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l.trim() == "NAAANA"));
}

#[test]
fn enumerate_catalog_verification_success() {
    let out = run(&["--json", "enumerate", "--q", "3", "--n", "4", "--alphabet", "AN", "--catalog", "f3"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["q"], 3);
    assert_eq!(v["n"], 4);
    assert_eq!(v["diffs"]["missing"].as_array().unwrap().len(), 0);
    assert_eq!(v["diffs"]["extra"].as_array().unwrap().len(), 0);
    assert!(v["visited"].as_u64().unwrap() > 0);
}

#[test]
fn enumerate_wrong_catalog_is_verification_failure() {
    // the F2 catalog does not describe GF(3): exit 1 with nonempty diffs
    let out = run(&["--json", "enumerate", "--q", "3", "--n", "3", "--catalog", "f2"]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let missing = v["diffs"]["missing"].as_array().unwrap().len();
    let extra = v["diffs"]["extra"].as_array().unwrap().len();
    assert!(missing + extra > 0);
}

#[test]
fn usage_errors_exit_2() {
    // unknown subcommand
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    // enumeration capacity exceeded
    let out = run(&["enumerate", "--q", "3", "--n", "9"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    // malformed matrix file
    let out = run(&["epr", "../../README.md"]);
    assert_eq!(out.status.code(), Some(2));
    // AN prefix is GF(3)-only
    let out = run(&["check", "ramsey", "--prefix", "AN", "--q", "2", "--n", "40"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn check_forbidden() {
    let out = run(&["check", "forbidden", "--p", "3", "NAN"]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let out = run(&["check", "forbidden", "--p", "2", "NAN"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}

#[test]
fn check_ramsey_constraints() {
    let out = run(&["check", "ramsey", "--prefix", "NA", "--q", "3", "--n", "19"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let s = stdout(&out);
    assert!(s.contains('3') && s.contains('4') && s.contains('5'), "{s}");
}

#[test]
fn check_census() {
    let out = run(&["--json", "check", "triangle-free"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 12);
}

#[test]
fn code_analyze_repetition() {
    let out = run(&["--json", "code", "analyze", "--bound", "--spark", "../../fixtures/repetition3.gen"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["min_distance"], 3);
    assert!(v["bound"].as_u64().unwrap() <= 2);
}
