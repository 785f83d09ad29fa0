use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn weyr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weyr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn pencil_file(dir: &Path, name: &str, e: &[&[&str]], a: &[&[&str]]) -> PathBuf {
    let path = dir.join(name);
    let body = serde_json::json!({ "n": e.len(), "E": e, "A": a });
    fs::write(&path, body.to_string()).unwrap();
    path
}

fn diag12(dir: &Path) -> PathBuf {
    pencil_file(dir, "diag.json", &[&["1", "0"], &["0", "1"]], &[&["1", "0"], &["0", "2"]])
}

fn zero(dir: &Path) -> PathBuf {
    pencil_file(dir, "zero.json", &[&["0", "0"], &["0", "0"]], &[&["0", "0"], &["0", "0"]])
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_diagonal_pencil() {
    let dir = TempDir::new().unwrap();
    let p = diag12(dir.path());
    let out = weyr(&["analyze", "--pencil", s(&p)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["spectrum"]["finite_eigenvalues"], serde_json::json!([["1", 1], ["2", 1]]));
    assert_eq!(v["spectrum"]["has_infinity"], false);
    for t in v["weyr"].as_array().unwrap() {
        assert_eq!(t["indices"], serde_json::json!([1]));
    }
}

#[test]
fn analyze_nilpotent_e_has_spectrum_at_infinity() {
    let dir = TempDir::new().unwrap();
    let p = pencil_file(dir.path(), "j.json", &[&["0", "1"], &["0", "0"]], &[&["1", "0"], &["0", "1"]]);
    let v = json(&weyr(&["analyze", "--pencil", s(&p)]));
    assert_eq!(v["spectrum"]["finite_eigenvalues"], serde_json::json!([]));
    assert_eq!(v["spectrum"]["infinity_multiplicity"], 2);
    assert_eq!(v["weyr"][0]["at"], "inf");
    assert_eq!(v["weyr"][0]["indices"], serde_json::json!([1, 1]));
}

#[test]
fn analyze_rejects_singular_pencil() {
    let dir = TempDir::new().unwrap();
    let out = weyr(&["analyze", "--pencil", s(&zero(dir.path()))]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("pencil is not regular"));
}

#[test]
fn analyze_markdown_has_k_rows() {
    let dir = TempDir::new().unwrap();
    let p = diag12(dir.path());
    let out = weyr(&["analyze", "--pencil", s(&p), "--points", "0,inf", "--format", "md"]);
    assert_eq!(code(&out), 0);
    let md = String::from_utf8(out.stdout).unwrap();
    assert!(md.contains("| k | w_k | dim R^k |"));
    assert!(md.contains("### at 0"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"n":2,"E":[["1","x"],["0","1"]],"A":[["1","0"],["0","1"]]}"#).unwrap();
    assert_eq!(code(&weyr(&["analyze", "--pencil", s(&bad)])), 2);
    assert_eq!(code(&weyr(&["analyze", "--pencil", "/nonexistent/p.json"])), 2);
    assert_eq!(code(&weyr(&["analyze", "--pencil", s(&bad), "--bogus"])), 2);
    assert_eq!(code(&weyr(&["verify", "--suite", "nope", "--trials", "1", "--seed", "0"])), 2);
}

#[test]
fn repr_check_reports_equal_forms() {
    let dir = TempDir::new().unwrap();
    let p = pencil_file(dir.path(), "d23.json", &[&["1", "0"], &["0", "1"]], &[&["2", "0"], &["0", "3"]]);
    for lam in ["1", "0", "-1/2+3*i"] {
        let out = weyr(&["repr-check", "--pencil", s(&p), "--mu", "0", "--lambda", lam]);
        assert_eq!(code(&out), 0);
        let v = json(&out);
        assert_eq!(v["all_equal"], true);
        assert!(v["checks"].as_object().unwrap().values().all(|x| x == "equal"));
    }
}

#[test]
fn repr_check_preconditions() {
    let dir = TempDir::new().unwrap();
    let p = diag12(dir.path());
    assert_eq!(code(&weyr(&["repr-check", "--pencil", s(&p), "--mu", "2", "--lambda", "0"])), 2);
    let z = zero(dir.path());
    assert_eq!(code(&weyr(&["repr-check", "--pencil", s(&z), "--mu", "0", "--lambda", "1"])), 2);
}

#[test]
fn perturb_off_side_distance_two() {
    let dir = TempDir::new().unwrap();
    let z = zero(dir.path());
    let out = weyr(&[
        "perturb", "--pencil", s(&z), "--type", "u", "--u", "1,0", "--vfunc", "1,0", "--wfunc", "0,1",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["distance"]["range"], 2);
    assert_eq!(v["distance"]["matching_side"], "kernel");
    assert_eq!(v["distance"]["matching_distance"], 1);
    assert!(v["weyr"].is_null());

    let out = weyr(&[
        "perturb", "--pencil", s(&z), "--type", "v", "--u", "1,0", "--w", "0,1", "--vfunc", "1,0",
    ]);
    let v = json(&out);
    assert_eq!(v["distance"]["kernel"], 2);
    assert_eq!(v["distance"]["range"], 1);
}

#[test]
fn perturb_regular_pencil_compares_weyr_tables() {
    let dir = TempDir::new().unwrap();
    let j = pencil_file(dir.path(), "j2.json", &[&["1", "0"], &["0", "1"]], &[&["0", "1"], &["0", "0"]]);
    let out = weyr(&[
        "perturb", "--pencil", s(&j), "--type", "u", "--u", "1,0", "--vfunc", "0,0", "--wfunc", "-1,0",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["weyr"]["violations"], serde_json::json!([]));
    assert!(!v["weyr"]["comparisons"].as_array().unwrap().is_empty());
}

#[test]
fn perturb_rejects_mismatched_slots() {
    let dir = TempDir::new().unwrap();
    let p = diag12(dir.path());
    let out = weyr(&["perturb", "--pencil", s(&p), "--type", "u", "--u", "1,0", "--w", "0,1", "--vfunc", "1,0"]);
    assert_eq!(code(&out), 2);
    let out = weyr(&["perturb", "--pencil", s(&p), "--type", "x", "--u", "1,0", "--vfunc", "1,0"]);
    assert_eq!(code(&out), 2);
    let out = weyr(&[
        "perturb", "--pencil", s(&p), "--type", "v", "--u", "1,0,0", "--w", "0,1", "--vfunc", "1,0",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn gen_round_trips_through_analyze() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("g.json");
    for seed in [None, Some("5")] {
        let mut args = vec!["gen", "--blocks", "2@1/1,1@1,1@inf", "--out", s(&out_path)];
        if let Some(seed) = seed {
            args.extend(["--seed", seed]);
        }
        assert_eq!(code(&weyr(&args)), 0);
        let v = json(&weyr(&["analyze", "--pencil", s(&out_path)]));
        assert_eq!(v["n"], 4);
        assert_eq!(v["spectrum"]["finite_eigenvalues"], serde_json::json!([["1", 3]]));
        assert_eq!(v["spectrum"]["infinity_multiplicity"], 1);
        let tables = v["weyr"].as_array().unwrap();
        assert_eq!(tables[0]["indices"], serde_json::json!([2, 1]));
        assert_eq!(tables[1]["indices"], serde_json::json!([1]));
    }
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    weyr(&["gen", "--blocks", "3@0,1@inf", "--seed", "9", "--out", s(&a)]);
    weyr(&["gen", "--blocks", "3@0,1@inf", "--seed", "9", "--out", s(&b)]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(code(&weyr(&["gen", "--blocks", "2@", "--out", s(&a)])), 2);
}

#[test]
fn verify_passes_and_writes_report() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.json");
    let out = weyr(&[
        "verify", "--suite", "perturbation_bounds", "--trials", "500", "--seed", "42", "--out", s(&report),
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["trials"], 500);
    let written: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(written["passed"], v["passed"]);
}

#[test]
fn verify_all_suites() {
    let out = weyr(&["verify", "--suite", "all", "--trials", "5", "--seed", "3", "--max-dim", "4"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 8);
}

#[test]
fn verify_output_is_deterministic_apart_from_time() {
    let run = || {
        let mut v = json(&weyr(&["verify", "--suite", "weyr_equality", "--trials", "20", "--seed", "11"]));
        v["elapsed_ms"] = Value::Null;
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn relation_command_reports_dimensions() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("r.json");
    // graph of diag(1, 1/2)
    fs::write(
        &path,
        r#"{"dim_x":2,"dim_y":2,"basis":[{"x":["1","0"],"y":["1","0"]},{"x":["0","2"],"y":["0","1"]}]}"#,
    )
    .unwrap();
    let out = weyr(&["relation", "--relation", s(&path)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["multivalued_part"], 0);
    assert_eq!(v["point_spectrum"]["finite"], serde_json::json!(["1/2", "1"]));
    assert_eq!(v["weyr"].as_array().unwrap().len(), 2);
}
