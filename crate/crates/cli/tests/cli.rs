use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn zakfiber(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zakfiber")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    assert_eq!(code(out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write(dir: &TempDir, name: &str, value: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn delta_function(dir: &TempDir) -> PathBuf {
    write(
        dir,
        "f.json",
        &json!({"schema": "zakfiber/1", "group": {"kind": "abelian", "invariants": [4]}, "values": [[1, 0], [0, 0], [0, 0], [0, 0]]}),
    )
}

fn delta_family(dir: &TempDir) -> PathBuf {
    write(
        dir,
        "fam.json",
        &json!({
            "schema": "zakfiber/1",
            "group": {"kind": "abelian", "invariants": [4]},
            "subgroup": {"generators": [2]},
            "functions": [[[1, 0], [0, 0], [0, 0], [0, 0]]]
        }),
    )
}

fn swap_rep(dir: &TempDir) -> PathBuf {
    write(
        dir,
        "swap.json",
        &json!({
            "schema": "zakfiber/1",
            "group": {"kind": "abelian", "invariants": [2]},
            "dim": 2,
            "generator_images": [[[[0, 0], [1, 0]], [[1, 0], [0, 0]]]],
            "family": [[[1, 0], [0, 0]]]
        }),
    )
}

#[test]
fn zak_dump_with_small_residuals() {
    let dir = TempDir::new().unwrap();
    let f = delta_function(&dir);
    let out = stdout_json(&zakfiber(&["zak", "--group", r#"{"kind":"abelian","invariants":[4]}"#, "--subgroup", "2", "--function", s(&f)]));
    assert_eq!(out["zak"]["values"], json!([[[1.0, 0.0], [0.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]]));
    for key in ["norm_error", "round_trip_error", "intertwining_residual", "fiber_norm_error", "zak_fiber_link_residual"] {
        assert!(out["summary"][key].as_f64().unwrap() <= 1e-12, "{key}");
    }
}

#[test]
fn nonabelian_subgroup_exits_3() {
    let dir = TempDir::new().unwrap();
    let f = delta_function(&dir);
    let out = zakfiber(&["zak", "--group", r#"{"kind":"dihedral","n":3}"#, "--subgroup", "1,3", "--function", s(&f)]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("abelian"));
}

#[test]
fn frames_on_delta_print_unit_bounds_twice() {
    let dir = TempDir::new().unwrap();
    let fam = delta_family(&dir);
    let out = stdout_json(&zakfiber(&["frames", "--family", s(&fam)]));
    for key in ["A_direct", "B_direct", "A_fiber", "B_fiber"] {
        assert!((out[key].as_f64().unwrap() - 1.0).abs() <= 1e-12, "{key}");
    }
    assert!(out["residual"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn random_transversal_reproduces_bounds() {
    let dir = TempDir::new().unwrap();
    let ex = dir.path().join("ex");
    assert_eq!(code(&zakfiber(&["examples", "line", "--N", "12", "--d", "3", "--out", s(&ex)])), 0);
    let fam = ex.join("line.json");
    let a = stdout_json(&zakfiber(&["frames", "--family", s(&fam)]));
    let b = stdout_json(&zakfiber(&["frames", "--family", s(&fam), "--transversal", "random:7"]));
    for key in ["A_direct", "B_direct", "A_fiber", "B_fiber"] {
        let (x, y) = (a[key].as_f64().unwrap(), b[key].as_f64().unwrap());
        assert!((x - y).abs() <= 1e-9 * x.max(1.0), "{key}");
    }
}

#[test]
fn gabor_on_nonabelian_group_exits_3() {
    let dir = TempDir::new().unwrap();
    let ex = dir.path().join("ex");
    assert_eq!(code(&zakfiber(&["examples", "axb", "--p", "7", "--q", "3", "--out", s(&ex)])), 0);
    let out = zakfiber(&["frames", "--family", s(&ex.join("axb_normal.json")), "--mode", "gabor"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn riesz_with_weighted_subgroup_exits_3() {
    let dir = TempDir::new().unwrap();
    let fam = delta_family(&dir);
    let out = zakfiber(&["frames", "--family", s(&fam), "--mode", "riesz", "--subgroup-weight", "2"]);
    assert_eq!(code(&out), 3);
    let ok = stdout_json(&zakfiber(&["frames", "--family", s(&fam), "--mode", "riesz"]));
    assert_eq!(ok["riesz_direct"], json!(true));
    assert_eq!(ok["riesz_fiber"], json!(true));
}

#[test]
fn examples_write_all_files() {
    let dir = TempDir::new().unwrap();
    let ex = dir.path().join("ex");
    for args in [
        vec!["line", "--N", "12", "--d", "3"],
        vec!["lattice"],
        vec!["plane"],
        vec!["padic", "--p", "2", "--k", "4", "--j", "2"],
        vec!["axb", "--p", "7", "--q", "3"],
    ] {
        let mut full = vec!["examples"];
        full.extend(args);
        full.extend(["--out", s(&ex)]);
        assert_eq!(code(&zakfiber(&full)), 0);
    }
    for name in ["line", "lattice", "plane", "padic", "axb_normal", "axb_complement"] {
        let path = ex.join(format!("{name}.json"));
        let out = stdout_json(&zakfiber(&["frames", "--family", s(&path)]));
        assert!(out["residual"].as_f64().unwrap() <= 1e-8, "{name}");
    }
    let padic: Value = serde_json::from_str(&std::fs::read_to_string(ex.join("padic.json")).unwrap()).unwrap();
    assert_eq!(padic["group"]["invariants"], json!([16]));
    assert_eq!(code(&zakfiber(&["examples", "torus", "--out", s(&ex)])), 2);
}

#[test]
fn axb_zak_is_unitary() {
    let dir = TempDir::new().unwrap();
    let ex = dir.path().join("ex");
    assert_eq!(code(&zakfiber(&["examples", "axb", "--p", "7", "--q", "3", "--out", s(&ex)])), 0);
    for name in ["axb_normal", "axb_complement"] {
        let fam: Value = serde_json::from_str(&std::fs::read_to_string(ex.join(format!("{name}.json"))).unwrap()).unwrap();
        let f = write(&dir, "axb_f.json", &json!({"schema": "zakfiber/1", "group": fam["group"], "values": fam["functions"][0]}));
        let gens: Vec<String> = fam["subgroup"]["generators"].as_array().unwrap().iter().map(|g| g.to_string()).collect();
        let out = stdout_json(&zakfiber(&["zak", "--subgroup", &gens.join(","), "--function", s(&f)]));
        assert!(out["summary"]["norm_error"].as_f64().unwrap() <= 1e-12);
        assert!(out["summary"]["round_trip_error"].as_f64().unwrap() <= 1e-12);
        assert!(out["fiberization"].is_null());
    }
}

#[test]
fn swap_rep_report() {
    let dir = TempDir::new().unwrap();
    let rep = swap_rep(&dir);
    let out = stdout_json(&zakfiber(&["rep", "--rep", s(&rep), "--embed"]));
    assert_eq!(out["bracket_table"], json!([[[[1.0, 0.0], [1.0, 0.0]]]]));
    assert_eq!(out["orthonormal_by_bracket"], json!(true));
    assert_eq!(out["orthonormal_direct"], json!(true));
    assert!(out["embedding"]["intertwining_residual"].as_f64().unwrap() <= 1e-9);
    assert_eq!(out["embedding"]["invariant"], json!(true));
    let plain = stdout_json(&zakfiber(&["rep", "--rep", s(&rep)]));
    assert!(plain["embedding"].is_null());
}

#[test]
fn noncommuting_images_exit_3() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        &json!({
            "schema": "zakfiber/1",
            "group": {"kind": "abelian", "invariants": [2, 2]},
            "dim": 2,
            "generator_images": [[[[0, 0], [1, 0]], [[1, 0], [0, 0]]], [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]]
        }),
    );
    assert_eq!(code(&zakfiber(&["rep", "--rep", s(&bad)])), 3);
}

#[test]
fn corrupted_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"schema\": \"zakfiber/1\", \"group\": ").unwrap();
    assert_eq!(code(&zakfiber(&["zak", "--subgroup", "2", "--function", s(&path)])), 2);
    let wrong = write(&dir, "wrong.json", &json!({"schema": "other/1", "group": {"kind": "abelian", "invariants": [4]}, "values": []}));
    assert_eq!(code(&zakfiber(&["zak", "--subgroup", "2", "--function", s(&wrong)])), 2);
    assert_eq!(code(&zakfiber(&["zak", "--subgroup", "2", "--function", s(&dir.path().join("missing.json"))])), 2);
    let f = delta_function(&dir);
    assert_eq!(code(&zakfiber(&["zak", "--subgroup", "2", "--transversal", "sideways", "--function", s(&f)])), 2);
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let ex = dir.path().join("ex");
    assert_eq!(code(&zakfiber(&["examples", "plane", "--out", s(&ex)])), 0);
    let fam = ex.join("plane.json");
    let args = ["frames", "--family", s(&fam), "--transversal", "random:3"];
    assert_eq!(zakfiber(&args).stdout, zakfiber(&args).stdout);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        assert_eq!(code(&zakfiber(&["verify", "--scope", "micro", "--seed", "4", "--output", s(out)])), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn verify_subset_and_csv() {
    let out = stdout_json(&zakfiber(&["verify", "--scope", "micro"]));
    assert_eq!(out["passed"], json!(true));
    assert_eq!(out["criteria"].as_array().unwrap().len(), 1);
    let csv = zakfiber(&["verify", "--scope", "zak", "--format", "csv"]);
    assert_eq!(code(&csv), 0);
    assert_eq!(String::from_utf8_lossy(&csv.stdout).lines().count(), 5);
    assert_eq!(code(&zakfiber(&["verify", "--scope", "everything"])), 2);
}

#[test]
fn threads_variable_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_zakfiber"))
        .args(["verify", "--scope", "micro"])
        .env("ZAKFIBER_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}
