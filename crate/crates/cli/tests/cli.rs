use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

fn k3lat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3lat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_report(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = k3lat(&all);
    let v: Value = serde_json::from_str(&stdout(&o)).expect("report is JSON");
    (v, o.status.code().unwrap())
}

#[test]
fn yz_golden_values() {
    let o = k3lat(&["yz", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("n_1 = 324"));
    assert!(s.contains("n_2 = 3200"));
    let (v, code) = json_report(&["yz", "30", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["counts"][1]["n"], 324);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
}

#[test]
fn cusps_of_degree_eight() {
    let (v, code) = json_report(&["cusps", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "cusps");
    assert_eq!(v["results"]["count"], 2);
    assert_eq!(v["results"]["N"], 2);
    assert_eq!(k3lat(&["cusps", "0"]).status.code(), Some(2));
}

#[test]
fn validate_cube() {
    let cube = fixture("cube");
    let o = k3lat(&["validate", cube.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("total charge 24, triple points 8"));
    let (v, code) = json_report(&["validate", cube.to_str().unwrap(), fixture("typeII_2re").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["results"][0]["report"]["total_charge"], 24);
    assert_eq!(v["results"][1]["report"]["charges"], serde_json::json!([12, 12]));
}

#[test]
fn exit_codes_follow_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("cube")).unwrap();
    let mut doc: Value = serde_json::from_str(&text).unwrap();
    doc["components"][0]["self_ints"][0] = Value::from(-2);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let (v, code) = json_report(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["passed"] == false));
    assert_eq!(k3lat(&["lambda", bad.to_str().unwrap()]).status.code(), Some(1));

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"type\": \"III\", \"components\": [").unwrap();
    assert_eq!(k3lat(&["validate", broken.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(k3lat(&["validate", "/nonexistent/config.json"]).status.code(), Some(2));
    assert_eq!(k3lat(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn lambda_and_quasi_iso() {
    let (v, code) = json_report(&["lambda", fixture("cube").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["lambda"]["rank"], 19);
    assert_eq!(v["results"]["lambda"]["signature"]["positive"], 1);
    let (v, code) = json_report(&["quasi-iso", fixture("cube_toric").to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["results"]["gluing"]["h0_rank"], 24);
    // The plain cube has no toric models.
    assert_eq!(k3lat(&["quasi-iso", fixture("cube").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn base_change_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bc.json");
    let o = k3lat(&["basechange", fixture("cube").to_str().unwrap(), "2", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let (v, code) = json_report(&["validate", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["report"]["triple_points"], 32);
    let (v, _) = json_report(&["basechange", fixture("cube").to_str().unwrap(), "2"]);
    let embedded = dir.path().join("embedded.json");
    std::fs::write(&embedded, v["results"]["config"].to_string()).unwrap();
    assert_eq!(k3lat(&["validate", embedded.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn walls_and_monodromy() {
    let (v, code) = json_report(&["walls", "H(3)", "--bound", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["chamber_count"], 4);
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("m.json");
    std::fs::write(&g, r#"{"gram": [[2, 0], [0, -2]]}"#).unwrap();
    let (v, code) = json_report(&["walls", g.to_str().unwrap(), "--bound", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["assumption"], "assuming ambient realizability");

    let delta = "1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0";
    let lambda = "0,0,1,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0";
    let (v, code) = json_report(&["monodromy", "H^3+E8^2", delta, lambda]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["type"], "III");
    assert_eq!(v["results"]["lambda_squared"], 2);
    assert_eq!(k3lat(&["monodromy", "H", "1,1", "0,1"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let path = fixture("typeII_2re");
    let args = ["lambda", path.to_str().unwrap()];
    let (mut a, _) = json_report(&args);
    let (mut b, _) = json_report(&args);
    a["duration_ms"] = Value::Null;
    b["duration_ms"] = Value::Null;
    assert_eq!(a, b);
    let (c, _) = json_report(&["lambda", fixture("cube").to_str().unwrap()]);
    assert_ne!(a["inputs_digest"], c["inputs_digest"]);
}

#[test]
fn fixture_subcommand_prints_the_shipped_file() {
    let o = k3lat(&["fixture", "cube_toric"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("cube_toric")).unwrap());
    assert_eq!(k3lat(&["fixture", "nope"]).status.code(), Some(2));
}

#[test]
fn thread_count_variable() {
    let o = Command::new(env!("CARGO_BIN_EXE_k3lat"))
        .env("K3LAT_THREADS", "2")
        .args(["validate", fixture("cube").to_str().unwrap()])
        .output()
        .unwrap();
    assert!(o.status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_k3lat")).env("K3LAT_THREADS", "many").args(["yz", "1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
