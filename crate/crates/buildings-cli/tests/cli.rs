//! End-to-end checks of the command-line interface: golden outputs for the
//! documented examples, exit codes, and byte-determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_buildings"))
}

fn write(dir: &std::path::Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

#[test]
fn type_of_trivial_filtration() {
    let dir = std::env::temp_dir().join("buildings-cli-type");
    std::fs::create_dir_all(&dir).unwrap();
    let f = write(
        &dir,
        "f.json",
        r#"{"dim": 2, "steps": [{"weight": "0", "basis": [["1","0"],["0","1"]]}]}"#,
    );
    let out = run(&["type", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), r#"{"type":["0","0"]}"#);
}

#[test]
fn cartan_of_diag_pair() {
    let dir = std::env::temp_dir().join("buildings-cli-cartan");
    std::fs::create_dir_all(&dir).unwrap();
    let a = write(
        &dir,
        "a.json",
        r#"{"p": 2, "basis": [["1","0"],["0","1"]], "weights": ["0","0"]}"#,
    );
    let b = write(
        &dir,
        "b.json",
        r#"{"p": 2, "basis": [["2","0"],["0","1"]], "weights": ["0","0"]}"#,
    );
    let out = run(&["cartan", "--p", "2", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), r#"{"cartan":["0","1"]}"#);

    // prime mismatch is malformed input
    let out = run(&["cartan", "--p", "3", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn add_dispatches_on_input_shape() {
    let dir = std::env::temp_dir().join("buildings-cli-add");
    std::fs::create_dir_all(&dir).unwrap();
    let f1 = write(
        &dir,
        "f1.json",
        r#"{"dim": 2, "steps": [{"weight": "0", "basis": [["1","0"],["0","1"]]}, {"weight": "1", "basis": [["1","0"]]}]}"#,
    );
    let f2 = write(
        &dir,
        "f2.json",
        r#"{"dim": 2, "steps": [{"weight": "0", "basis": [["1","0"],["0","1"]]}, {"weight": "1", "basis": [["0","1"]]}]}"#,
    );
    let out = run(&["add", f1.to_str().unwrap(), f2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"steps\""));

    let norm = write(
        &dir,
        "norm.json",
        r#"{"p": 2, "basis": [["1","0"],["0","1"]], "weights": ["0","0"]}"#,
    );
    let out = run(&["add", norm.to_str().unwrap(), f1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"weights\""));
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join("buildings-cli-exit");
    std::fs::create_dir_all(&dir).unwrap();
    // missing file: malformed input
    let out = run(&["type", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    // invalid JSON: malformed input
    let garbage = write(&dir, "garbage.json", "{not json");
    let out = run(&["type", garbage.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // structurally broken filtration: malformed input
    let bad = write(
        &dir,
        "bad.json",
        r#"{"dim": 2, "steps": [{"weight": "0", "basis": [["1","0"]]}]}"#,
    );
    let out = run(&["type", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // a singular basis is not a valid norm object: malformed input
    let singular = write(
        &dir,
        "singular.json",
        r#"{"p": 2, "basis": [["1","1"],["1","1"]], "weights": ["0","0"]}"#,
    );
    let out = run(&[
        "cartan",
        singular.to_str().unwrap(),
        singular.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "rejected while parsing");
    // two valid objects that do not fit together: domain error
    let dim2 = write(
        &dir,
        "dim2.json",
        r#"{"dim": 2, "steps": [{"weight": "0", "basis": [["1","0"],["0","1"]]}]}"#,
    );
    let dim3 = write(
        &dir,
        "dim3.json",
        r#"{"dim": 3, "steps": [{"weight": "0", "basis": [["1","0","0"],["0","1","0"],["0","0","1"]]}]}"#,
    );
    let out = run(&["distance", dim2.to_str().unwrap(), dim3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "ambient mismatch is a domain error");
}

#[test]
fn retract_worked_example() {
    let dir = std::env::temp_dir().join("buildings-cli-retract");
    std::fs::create_dir_all(&dir).unwrap();
    let f = write(
        &dir,
        "f.json",
        r#"{"dim": 2, "steps": [{"weight": "0", "basis": [["1","0"],["0","1"]]}, {"weight": "1", "basis": [["1","1"]]}]}"#,
    );
    let flag = write(
        &dir,
        "flag.json",
        r#"{"chain": [[["1","0"]]]}"#,
    );
    let out = run(&["retract", f.to_str().unwrap(), flag.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["steps"][1]["basis"][0][1], "1");
    assert_eq!(parsed["steps"][1]["basis"][0][0], "0");
}

#[test]
fn loc_and_moy_prasad() {
    let dir = std::env::temp_dir().join("buildings-cli-loc");
    std::fs::create_dir_all(&dir).unwrap();
    let alpha = write(
        &dir,
        "alpha.json",
        r#"{"p": 2, "basis": [["1","0"],["0","1"]], "weights": ["0","1/2"]}"#,
    );
    let lattice = write(
        &dir,
        "m.json",
        r#"{"p": 2, "basis": [["1","0"],["0","1"]], "weights": ["0","0"]}"#,
    );
    let out = run(&["loc", alpha.to_str().unwrap(), lattice.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["p"], 2);
    assert_eq!(parsed["steps"][1]["weight"], "1/2");

    let out = run(&["moy-prasad", "--r", "0", alpha.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let gens = parsed["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 4);
}

#[test]
fn axioms_pass_and_are_deterministic() {
    let args = [
        "axioms",
        "--instance",
        "valnorm",
        "--n",
        "2",
        "--p",
        "2",
        "--trials",
        "10",
        "--seed",
        "7",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "byte-identical reports");
    let reports: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 3);
}

#[test]
fn symdist_runs() {
    let dir = std::env::temp_dir().join("buildings-cli-sym");
    std::fs::create_dir_all(&dir).unwrap();
    let a = write(&dir, "a.json", r#"{"gram": [[1.0, 0.0], [0.0, 1.0]]}"#);
    let b = write(
        &dir,
        "b.json",
        r#"{"gram": [[0.1353352832366127, 0.0], [0.0, 1.0]]}"#,
    );
    let out = run(&["symdist", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let d = parsed["d"].as_array().unwrap();
    assert!((d[0].as_f64().unwrap() - 0.0).abs() < 1e-9);
    assert!((d[1].as_f64().unwrap() - 1.0).abs() < 1e-9);
}
