use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbivol")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn verify_quaternionic() {
    let out = run(&["verify", "--field", "h", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["dim"], 21);
    let suites = v["suites"].as_array().unwrap();
    for name in ["structure_closure", "jacobi", "killing_closed_form", "curvature_dual_path", "holomorphic_normalization"] {
        assert!(suites.iter().any(|s| s["name"] == name && s["passed"] == true), "{name}");
    }
    assert!(v["bracket_identities"]["families"].as_array().unwrap().len() >= 20);
}

#[test]
fn verify_real_and_usage_errors() {
    assert_eq!(code(&["verify", "--field", "r", "--n", "4"]), 0);
    assert_eq!(code(&["verify", "--field", "h", "--n", "0"]), 2);
    assert_eq!(code(&["verify", "--field", "q", "--n", "1"]), 2);
    assert_eq!(code(&["verify", "--n", "1"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
}

#[test]
fn quaternionic_table_cells() {
    let out = run(&["bounds", "--field", "h", "--n-range", "1..2", "--check-table"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let cells = v["table_check"]["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 2);
    assert_eq!(cells[0]["printed"], "3.6221e-11");
    assert_eq!(cells[0]["within_tolerance"], true);
    assert_eq!(cells[1]["printed"], "5.3637e-25");
    // Q(2) evaluates to 5.33393e-25 from the printed formula
    assert_eq!(cells[1]["within_tolerance"], false);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn complex_original_column() {
    let v = json(&["bounds", "--field", "c", "--variant", "original", "--n-range", "1..4"]);
    let values: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["value"]["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["1.67682e-3", "2.91804e-9", "3.63242e-18", "2.23470e-30"]);
    assert_eq!(v["mode"], "PRINTED_FORMULA");
    assert_eq!(v["reports"][0]["spec"]["mode"], "PRINTED_FORMULA");
}

#[test]
fn csv_rows() {
    let out = run(&["bounds", "--field", "h", "--n-range", "1..8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    assert!(lines[0].starts_with("field,variant,n,mantissa,exp10"));
    assert!(lines[1].starts_with("h,original,1,3.62212,-11"));
}

#[test]
fn markdown_layout() {
    let out = run(&["bounds", "--n-range", "1..2", "--format", "md"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("| n | R old | R new | C old | C new | Q |"));
    assert!(text.contains("| 1 |  |  | 1.67682e-3 | 1.74953e-3 | 3.62212e-11 |"));
    assert!(text.contains("mode: PRINTED_FORMULA"));
}

#[test]
fn first_principles_mode_changes_provenance() {
    let v = json(&["bounds", "--field", "h", "--n", "1", "--mode", "first-principles"]);
    assert_eq!(v["mode"], "FIRST_PRINCIPLES");
    let limit = v["reports"][0]["spec"]["integral_limit"].as_f64().unwrap();
    assert!((limit - 0.114 * ((3.0 + 4.0 * 2f64.sqrt()) / 2.0).sqrt()).abs() < 1e-15);
}

#[test]
fn bounds_range_errors() {
    assert_eq!(code(&["bounds", "--n-range", "0..3"]), 2);
    assert_eq!(code(&["bounds", "--n-range", "1..65"]), 2);
    assert_eq!(code(&["bounds", "--n-range", "3..1"]), 2);
    assert_eq!(code(&["bounds", "--field", "r", "--n", "1"]), 2);
    assert_eq!(code(&["bounds", "--field", "h", "--n-range", "5..6", "--check-table"]), 2);
}

#[test]
fn scans_are_deterministic() {
    let args = ["curvature-scan", "--field", "h", "--n", "1", "--samples", "500", "--ascent-iters", "20", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["gap"].as_f64().unwrap() > 0.0);
}

#[test]
fn real_plane_bound() {
    let v = json(&["curvature-scan", "--field", "r", "--n", "2", "--samples", "500"]);
    assert_eq!(v["bound"], 0.25);
    assert_eq!(v["passed"], true);
}

#[test]
fn thread_count_does_not_change_results() {
    let args = ["curvature-scan", "--field", "c", "--n", "2", "--samples", "300", "--ascent-iters", "10"];
    let one = Command::new(env!("CARGO_BIN_EXE_orbivol")).args(args).env("ORBIVOL_THREADS", "1").output().unwrap();
    let two = Command::new(env!("CARGO_BIN_EXE_orbivol")).args(args).env("ORBIVOL_THREADS", "3").output().unwrap();
    assert_eq!(one.stdout, two.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_orbivol")).args(args).env("ORBIVOL_THREADS", "many").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn wang_root_schema() {
    let v = json(&["wang-root", "--c1", "1", "--c2", "1.41421356"]);
    assert_eq!(v["paper_claim"], 0.228);
    assert_eq!(v["agrees"], false);
    assert!(v["residual"].as_f64().unwrap().abs() <= 1e-10);
    assert!((v["root"].as_f64().unwrap() - 0.933022).abs() < 1e-5);
    assert_eq!(code(&["wang-root", "--c1", "1", "--c2", "0", "--t-max", "0.5"]), 3);
    assert_eq!(code(&["wang-root", "--c1", "0"]), 2);
}

#[test]
fn hurwitz_ratios() {
    let v = json(&["hurwitz", "--volume", "1", "--n", "1"]);
    assert_eq!(v["ratio"]["value"], "2.76081e10");
    let v = json(&["hurwitz", "--volume", "3.6221e-11", "--n", "1"]);
    assert!((v["ratio"]["mantissa"].as_f64().unwrap() * 10f64.powi(v["ratio"]["exp10"].as_i64().unwrap() as i32) - 1.0).abs() < 1e-4);
    assert_eq!(code(&["hurwitz", "--volume", "0", "--n", "1"]), 2);
    assert_eq!(code(&["hurwitz", "--volume", "-2", "--n", "1"]), 2);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("orbivol-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q.json");
    let out = run(&["bounds", "--field", "h", "--n", "1", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["reports"][0]["label"], "Q(1)");
    std::fs::remove_dir_all(&dir).unwrap();
}
