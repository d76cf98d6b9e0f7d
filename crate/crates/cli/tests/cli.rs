use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lowlight(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lowlight"))
        .args(args)
        .env_remove("LOWLIGHT_CAP")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is json")
}

fn all_hold(report: &Value) -> bool {
    report["bound_checks"].as_array().unwrap().iter().all(|c| c["holds"] == true)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

const SEVEN_STAR: &str = "root 3\n3 0\n3 1\n3 2\n3 4\n3 5\n3 6\n";

#[test]
fn build_on_a_line() {
    let dir = TempDir::new().unwrap();
    let tree = dir.path().join("t.txt");
    let out = lowlight(&["build", "--input", "line_64", "--h", "4", "--out", tree.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["command"], "build");
    assert_eq!(r["plan"]["regime"], "low");
    assert!(r["metrics"]["depth"].as_u64().unwrap() <= 4);
    assert!(r.get("timing").is_none());
    assert!(all_hold(&r));

    let text = fs::read_to_string(&tree).unwrap();
    assert!(text.starts_with("root "));
    assert_eq!(text.lines().count(), 64);
}

#[test]
fn metrics_of_a_centered_star() {
    let dir = TempDir::new().unwrap();
    let t = write(dir.path(), "star.txt", SEVEN_STAR);
    let out = lowlight(&["metrics", "--input", &t, "--metric", "line_7"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["metrics"]["max_covering"], 2);
    assert_eq!(r["metrics"]["depth"], 1);
    assert_eq!(r["metrics"]["weight"], 12.0);
    assert!(all_hold(&r));
}

#[test]
fn deepen_a_centered_star() {
    let dir = TempDir::new().unwrap();
    let t = write(dir.path(), "star.txt", SEVEN_STAR);
    let d = dir.path().join("d.txt");
    let out = lowlight(&[
        "normalize", "--input", &t, "--metric", "line_7", "--mode", "deepen", "--out", d.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["metrics"]["depth"], 2);
    assert_eq!(r["metrics"]["max_covering"], 2);
    assert!(fs::read_to_string(&d).unwrap().starts_with("root 2\n"));
}

#[test]
fn normalize_modes() {
    let dir = TempDir::new().unwrap();
    let tree = dir.path().join("t.txt");
    let t = tree.to_str().unwrap();
    assert!(lowlight(&["build", "--input", "line_40", "--h", "2", "--out", t]).status.success());
    for (mode, arity) in [("4ary", 4), ("binary", 2)] {
        let out = lowlight(&["normalize", "--input", t, "--metric", "line_40", "--mode", mode]);
        assert_eq!(out.status.code(), Some(0), "{mode}");
        let r = json(&out);
        assert!(r["metrics"]["max_arity"].as_u64().unwrap() <= arity);
        assert!(r["metrics"]["depth"].as_u64().unwrap() >= 2);
        assert!(all_hold(&r));
    }
}

#[test]
fn sllt_checks_hold() {
    let out = lowlight(&["sllt", "--input", "line_50", "--h", "3", "--epsilon", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["inputs"]["theta"], "0.5");
    assert!(r["bound_checks"].as_array().unwrap().len() >= 7);
    assert!(all_hold(&r));
}

#[test]
fn oracle_values() {
    let r = json(&lowlight(&["oracle", "--n", "7", "--h", "2", "--stat", "hamming"]));
    assert_eq!(r["details"]["value"], 5);
    assert_eq!(r["details"]["hamming"]["r"], 1);
    assert_eq!(r["details"]["hamming"]["remainder"], 1);

    let r = json(&lowlight(&["oracle", "--n", "7", "--h", "1", "--stat", "covering"]));
    assert_eq!(r["details"]["value"], 2);

    let r = json(&lowlight(&["oracle", "--n", "5", "--h", "4", "--stat", "weight"]));
    assert_eq!(r["details"]["value"], 4);

    let r = json(&lowlight(&["oracle", "--n", "7", "--h", "2", "--stat", "cost"]));
    assert_eq!(r["details"]["value"], 5);
}

#[test]
fn oracle_respects_the_cap() {
    let out = lowlight(&["oracle", "--n", "9", "--h", "3", "--stat", "weight", "--cap", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn tradeoff_csv() {
    let out = lowlight(&["tradeoff", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("h,regime,"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn hard_graph_scan() {
    let r = json(&lowlight(&["hardgraph", "--n", "5", "--W", "50"]));
    assert_eq!(r["details"]["min_product"], serde_json::json!([3, 1]));
    assert_eq!(r["details"]["mst_weight"], 53);
    assert!(all_hold(&r));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lowlight(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lowlight(&["build", "--input", "line_8"]).status.code(), Some(2));
    assert_eq!(lowlight(&["build", "--input", "/no/such/file", "--h", "2"]).status.code(), Some(2));
    assert_eq!(lowlight(&["sllt", "--input", "line_8", "--h", "2", "--theta", "0"]).status.code(), Some(2));

    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.txt", "root 0\n0 1\n1 0\n");
    assert_eq!(lowlight(&["metrics", "--input", &bad, "--metric", "line_2"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let metric = write(
        dir.path(),
        "points.txt",
        "points 2\n0 0\n3 1\n1 4\n5 5\n2 2\n7 1\n6 3\n4 0\n0 6\n3 3\n",
    );
    let run = |name: &str| {
        let p = dir.path().join(name);
        let out = lowlight(&["sllt", "--input", &metric, "--h", "3", "--report", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        fs::read(p).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn timing_is_opt_in() {
    let r = json(&lowlight(&["--timing", "build", "--input", "line_16", "--h", "3"]));
    assert!(r["timing"].as_f64().unwrap() >= 0.0);
}

#[test]
fn selftest_subset_passes() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("st.json");
    let out = lowlight(&["selftest", "--only", "2,13,14", "--report", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().filter(|l| l.starts_with("PASS")).count(), 3);
    let r: Value = serde_json::from_slice(&fs::read(p).unwrap()).unwrap();
    assert_eq!(r["details"].as_array().unwrap().len(), 3);
    assert_eq!(lowlight(&["selftest", "--only", "99"]).status.code(), Some(2));
}
