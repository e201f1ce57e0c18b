//! End-to-end tests of the command-line interface, spawning the real binary.

use std::process::{Command, Output};

fn tensq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn compute_s3_json() {
    let out = tensq(&[
        "compute",
        "--presentation",
        "a, b | a^3, b^2, (a b)^2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["tensor_square"]["order"], 6);
    assert_eq!(json["group"]["order"], 6);
    assert_eq!(json["schur_multiplier"]["invariant_factors"], serde_json::json!([]));
    assert_eq!(json["stats"]["nu_order"], 216);
}

#[test]
fn verify_theorem_a_markdown() {
    let out = tensq(&["verify", "--theorem", "A"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("4 passed, 0 failed, 0 degraded"), "{text}");
    assert!(text.contains("| A/S3 | S3 | 6 | 3 | 0 | 6 | Z6 | pass |"), "{text}");
}

#[test]
fn verify_single_case_json() {
    let out = tensq(&[
        "verify",
        "--theorem",
        "B",
        "--case",
        "B.iii/A4",
        "--report",
        "json",
        "--jobs",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["summary"]["pass"], 1);
    assert_eq!(json["cases"][0]["report"]["tensor_square"]["structure"], "Z3 x Q8");
}

#[test]
fn degraded_case_exits_three() {
    let out = tensq(&["verify", "--case", "D.ii/220"]);
    assert_eq!(out.status.code(), Some(3), "{out:?}");
}

#[test]
fn usage_errors_exit_sixty_four() {
    let out = tensq(&["verify", "--bogus-flag"]);
    assert_eq!(out.status.code(), Some(64));
    let out = tensq(&["compute", "--presentation", "a | a^"]);
    assert_eq!(out.status.code(), Some(64), "{out:?}");
    let out = tensq(&["verify", "--case", "no-such-case"]);
    assert_eq!(out.status.code(), Some(64), "{out:?}");
}

#[test]
fn gamma_values() {
    let out = tensq(&["gamma", "--invariants", "2,2", "--report", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["order"], 32);
    assert_eq!(json["exponent"], 4);
}

#[test]
fn order_only_path() {
    let out = tensq(&[
        "order-only",
        "--presentation",
        "a, b | a^3, b^2, (a b)^3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["group_order"], 12);
    assert_eq!(json["tensor_square_order"], 24);
    assert_eq!(json["nu_order"], 3456);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("tensq-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gamma.json");
    let out = tensq(&[
        "gamma",
        "--invariants",
        "3",
        "--report",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"order\": 3"), "{text}");
}

#[test]
fn catalog_order_filter() {
    let out = tensq(&["catalog", "--order", "140"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("D.i/140-cyclic"));
    assert!(text.contains("D.i/140-noncyclic"));
    assert!(!text.contains("A/S3"));
}

#[test]
fn strategy_flag_accepts_felsch() {
    let out = tensq(&[
        "order-only",
        "--presentation",
        "a, b | a^3, b^2, (a b)^2",
        "--strategy",
        "felsch",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["tensor_square_order"], 6);
}
