use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_curvetta"))
}

fn file(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const WIRING: &str = r#"{"strands":4,"events":[{"braid":[]},{"point":[2,3]},{"braid":[]},{"point":[3,4]},{"braid":[-1,-2]},{"point":[3,4]}]}"#;

#[test]
fn star_graph_validates() {
    let d = TempDir::new().unwrap();
    let g = file(&d, "star11.json", r#"{"vertices":[{"id":0,"self_int":-11}],"edges":[]}"#);
    let o = run(&["validate-graph", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("VALID"));
}

#[test]
fn pappus_is_unexpected() {
    let o = run(&["certify-unexpected", "--builtin", "pappus_P"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("UNEXPECTED"));
}

#[test]
fn monodromy_identity_holds() {
    let d = TempDir::new().unwrap();
    let w = file(&d, "wiring.json", WIRING);
    let o = run(&["compare-monodromy", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("IDENTITY HOLDS"));
}

#[test]
fn malformed_json_exits_one_with_position() {
    let d = TempDir::new().unwrap();
    let g = file(&d, "bad.json", "{\"vertices\": [\n  {\"id\": 0,,}\n]}");
    let o = run(&["validate-graph", "--input", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2 column"), "{err}");
}

#[test]
fn validation_failure_exits_two() {
    let d = TempDir::new().unwrap();
    // A doubled edge is rejected outright.
    let g = file(
        &d,
        "g.json",
        r#"{"vertices":[{"id":0,"self_int":-2},{"id":1,"self_int":-2}],"edges":[[0,1],[1,0]]}"#,
    );
    assert_eq!(run(&["validate-graph", g.to_str().unwrap()]).status.code(), Some(2));
    let cycle = file(
        &d,
        "c.json",
        r#"{"vertices":[{"id":0,"self_int":-2},{"id":1,"self_int":-2},{"id":2,"self_int":-2},{"id":3,"self_int":-2}],"edges":[[0,1],[0,2],[0,3]]}"#,
    );
    let o = run(&["validate-graph", cycle.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("INVALID"));
}

#[test]
fn zero_trials_is_inconclusive() {
    let o = run(&["certify-unexpected", "--builtin", "orevkov_Q", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn json_output_is_sorted_and_deterministic() {
    let args = ["certify-unexpected", "--builtin", "pseudo_pappus", "--seed", "5", "--format", "json"];
    let a = stdout(&run(&args));
    assert_eq!(a, stdout(&run(&args)));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["verdict"], "NOT_UNEXPECTED");
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    // Top-level keys appear in sorted order in the text too.
    let pos: Vec<usize> = keys.iter().map(|k| a.find(&format!("\n  \"{k}\"")).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn pipeline_through_files() {
    let d = TempDir::new().unwrap();
    let germ = file(&d, "germ.json", r#"{"m":2,"weights":[2,2],"tangency":[[0,1],[1,0]]}"#);
    let out = d.path().join("scott.json");
    let o = run(&["scott", germ.to_str().unwrap(), "--format", "json", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rows = serde_json::to_string(&v["incidence"]).unwrap();
    let m = file(&d, "m.json", &rows);
    let o = run(&["invariants", m.to_str().unwrap(), "--format", "json"]);
    let inv: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(inv["form"], serde_json::json!([[-3]]));
    assert_eq!(inv["boundary_h1"]["torsion"], serde_json::json!([3]));
    assert_eq!(inv["euler"], 2);

    let w = file(&d, "w.json", WIRING);
    let o = run(&["wiring-to-lefschetz", w.to_str().unwrap(), "--format", "json"]);
    let f: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(f["fibration"]["cycles"].as_array().unwrap().len(), 3);
}

#[test]
fn recognize_gay_mark_and_lantern() {
    let d = TempDir::new().unwrap();
    let chain = file(
        &d,
        "chain.json",
        r#"{"vertices":[{"id":1,"self_int":-3},{"id":2,"self_int":-3},{"id":3,"self_int":-3}],"edges":[[1,2],[2,3]]}"#,
    );
    let o = run(&["gay-mark", chain.to_str().unwrap(), "--slot", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let fam = file(&d, "fam.json", &String::from_utf8_lossy(&o.stdout));
    let o = run(&["artin-recognize", fam.to_str().unwrap(), "--format", "json"]);
    let g: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(g["vertices"].as_array().unwrap().len(), 3);

    let m = file(&d, "m.json", "[[1,1,0,0],[1,0,1,0],[1,0,0,1]]");
    let o = run(&["lantern", m.to_str().unwrap(), "--column", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["euler_before"].as_i64().unwrap() - v["euler_after"].as_i64().unwrap(), 1);
    assert_eq!(v["monodromy_preserved"], true);
    assert_eq!(run(&["lantern", m.to_str().unwrap(), "--column", "2"]).status.code(), Some(2));
}

#[test]
fn germ_extensions_and_bundles() {
    let d = TempDir::new().unwrap();
    let g = file(
        &d,
        "g.json",
        r#"{"vertices":[{"id":0,"self_int":-4},{"id":1,"self_int":-2}],"edges":[[0,1]]}"#,
    );
    let o = run(&["extensions", g.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["extensions"].as_array().unwrap().len(), 4);
    let o = run(&["germ", g.to_str().unwrap(), "--curvettas", "0,0,1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let t = file(
        &d,
        "t.json",
        r#"{"trees":[{"line":4,"graph":{"vertices":[{"id":0,"self_int":-4}],"edges":[],"root":0}}]}"#,
    );
    let o = run(&["bundle-extend", "--builtin", "orevkov_Q", t.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["arrangement"]["curves"], 13);
}
