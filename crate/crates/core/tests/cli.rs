use std::path::Path;
use std::process::{Command, Output};

use csbm_core::graph_io::read_graph;

const SYMMETRIC: &str = r#"{"params": {"rho": [0.5, 0.5], "p": [[0.7, 0.3], [0.3, 0.7]]}, "n": 300, "trials": 2, "t_grid": [1.0, 2.0], "algos": ["genie", "spec2"], "base_seed": 3}"#;

fn csbm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csbm")).args(args).output().unwrap()
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn threshold_prints_report_json() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SYMMETRIC);
    let out = csbm(&["threshold", "--config", &cfg]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["t_c"].as_f64().unwrap() - 1.0 / (1.0 - 2.0 * 0.21f64.sqrt())).abs() < 1e-8);
    assert_eq!(v["argmin_pair"], serde_json::json!([1, 2]));
    assert_eq!(v["per_pair"][0]["w_star"].as_array().unwrap().len(), 4);
}

#[test]
fn sample_then_recover() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SYMMETRIC);
    let graph = dir.path().join("g.txt");
    assert!(csbm(&["sample", "--config", &cfg, "--t-mult", "3", "--seed", "5", "--out", s(&graph)]).status.success());
    let file = read_graph(&graph).unwrap();
    assert_eq!(file.graph.n(), 300);

    for algo in ["genie", "spec1", "spec2", "spec2k"] {
        let labels = dir.path().join(format!("{algo}.csv"));
        let out = csbm(&["recover", "--algo", algo, "--graph", s(&graph), "--config", &cfg, "--seed", "1", "--out", s(&labels)]);
        assert!(out.status.success(), "{algo}: {}", String::from_utf8_lossy(&out.stderr));
        let text = std::fs::read_to_string(&labels).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("vertex,label"));
        let got: Vec<usize> = lines.map(|l| l.split_once(',').unwrap().1.parse::<usize>().unwrap() - 1).collect();
        assert_eq!(got.len(), 300);
        let same = got.iter().zip(file.labels.labels()).filter(|(a, b)| a == b).count();
        assert!(same.max(300 - same) >= 297, "{algo}: {same}");
    }
    let labels = dir.path().join("y.csv");
    let out = csbm(&["recover", "--algo", "spec1y", "--graph", s(&graph), "--config", &cfg, "--y1", "0.5", "--out", s(&labels)]);
    assert!(out.status.success());
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SYMMETRIC);
    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    assert!(csbm(&["sweep", "--config", &cfg, "--out", s(&out_a)]).status.success());
    assert!(csbm(&["sweep", "--config", &cfg, "--out", s(&out_b)]).status.success());
    let a = std::fs::read(&out_a).unwrap();
    assert_eq!(a, std::fs::read(&out_b).unwrap());
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 1 + 2 * 2 * 2);
}

#[test]
fn geometry_writes_boundaries() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SYMMETRIC);
    for delta in ["0.05", "0.2"] {
        let out = dir.path().join("geo.csv");
        let run = csbm(&["geometry", "--config", &cfg, "--pair", "1,2", "--delta", delta, "--resolution", "16", "--out", s(&out)]);
        assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
        let text = std::fs::read_to_string(&out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("community,ray_index,coord1,coord2"));
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 32);
        assert!(rows[0].starts_with("1,0,") && rows[16].starts_with("2,0,"));
    }
}

#[test]
fn errors_exit_with_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"params": {"rho": [0.7, 0.7], "p": [[0.7, 0.3], [0.3, 0.7]]}}"#);
    let out = csbm(&["threshold", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NonStochasticPrior"));

    let missing = csbm(&["recover", "--algo", "genie", "--graph", "/nonexistent/g.txt", "--config", &cfg, "--out", "/dev/null"]);
    assert!(!missing.status.success());
    assert!(!csbm(&["geometry", "--config", &cfg, "--pair", "0,1", "--out", "/dev/null"]).status.success());
}
