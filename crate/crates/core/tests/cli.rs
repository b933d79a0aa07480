use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn qudit_prep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qudit-prep")).args(args).output().expect("binary runs")
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn prepare_then_verify_ghz() {
    let dir = TempDir::new().unwrap();
    let (state, circuit, dot) = (path(&dir, "ghz.json"), path(&dir, "c.json"), path(&dir, "dd.dot"));

    let out = qudit_prep(&["generate", "--generator", "ghz", "--dims", "3,3", "--out", s(&state)]);
    assert_eq!(out.status.code(), Some(0));
    let out = qudit_prep(&["prepare", "--state", s(&state), "--out", s(&circuit), "--dot", s(&dot)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let out = qudit_prep(&["verify", "--circuit", s(&circuit), "--state", s(&state)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1.000000000000");

    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("digraph"));
}

#[test]
fn verify_rejects_register_mismatch() {
    let dir = TempDir::new().unwrap();
    let (state, other, circuit) = (path(&dir, "a.json"), path(&dir, "b.json"), path(&dir, "c.json"));
    qudit_prep(&["generate", "--generator", "w", "--dims", "3,2", "--out", s(&state)]);
    qudit_prep(&["generate", "--generator", "w", "--dims", "2,3", "--out", s(&other)]);
    qudit_prep(&["prepare", "--state", s(&state), "--out", s(&circuit)]);

    let out = qudit_prep(&["verify", "--circuit", s(&circuit), "--state", s(&other)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn approximate_circuit_below_min_fidelity() {
    let dir = TempDir::new().unwrap();
    let (state, circuit, stats) = (path(&dir, "r.json"), path(&dir, "c.json"), path(&dir, "stats.json"));
    qudit_prep(&["generate", "--generator", "random", "--dims", "9,5,6,3", "--seed", "7", "--out", s(&state)]);

    let out = qudit_prep(&[
        "prepare", "--state", s(&state), "--fidelity", "0.98", "--out", s(&circuit), "--stats", s(&stats),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stats: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(stats).unwrap()).unwrap();
    let f = stats["fidelity"].as_f64().unwrap();
    assert!((0.98..1.0).contains(&f), "fidelity {f}");
    assert_eq!(stats["dims"], serde_json::json!([9, 5, 6, 3]));

    let out = qudit_prep(&["verify", "--circuit", s(&circuit), "--state", s(&state), "--min-fidelity", "0.999"]);
    assert_eq!(out.status.code(), Some(1));
    let reported: f64 = stdout(&out).trim().parse().unwrap();
    assert!((reported - f).abs() < 1e-9);
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let circuit = path(&dir, "c.json");
    let base = ["prepare", "--generator", "ghz", "--dims", "3,3", "--out", s(&circuit)];

    let out = qudit_prep(&[&base[..], &["--fidelity", "1.5"]].concat());
    assert_eq!(out.status.code(), Some(2));
    let out = qudit_prep(&[&base[..], &["--fidelity", "0"]].concat());
    assert_eq!(out.status.code(), Some(2));
    let out = qudit_prep(&["prepare", "--generator", "nope", "--dims", "3", "--out", s(&circuit)]);
    assert_eq!(out.status.code(), Some(2));
    let out = qudit_prep(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!circuit.exists());
}

#[test]
fn malformed_input_exits_three() {
    let dir = TempDir::new().unwrap();
    let (state, circuit) = (path(&dir, "bad.json"), path(&dir, "c.json"));
    std::fs::write(&state, "{\"dims\": [2], \"amplitudes\": [[1, 0]]}").unwrap();
    let out = qudit_prep(&["prepare", "--state", s(&state), "--out", s(&circuit)]);
    assert_eq!(out.status.code(), Some(3));

    std::fs::write(&state, "{\"dims\": [2], \"amplitudes\": [[0, 0], [0, 0]]}").unwrap();
    let out = qudit_prep(&["prepare", "--state", s(&state), "--out", s(&circuit)]);
    assert_eq!(out.status.code(), Some(3));

    let out = qudit_prep(&["verify", "--circuit", s(&path(&dir, "missing.json")), "--state", s(&state)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bench_markdown_is_reproducible_without_time() {
    let dir = TempDir::new().unwrap();
    let spec = path(&dir, "spec.json");
    std::fs::write(
        &spec,
        r#"{"threshold": 0.98, "benchmarks": [
            {"family": "ghz", "dims": [3, 6, 2]},
            {"family": "random", "dims": [3, 6, 2], "seed": 11}
        ]}"#,
    )
    .unwrap();
    let args = ["bench", "--spec", s(&spec), "--runs", "1", "--format", "md", "--no-time"];
    let first = qudit_prep(&args);
    let second = qudit_prep(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let text = stdout(&first);
    assert_eq!(text.lines().count(), 2 + 4);
    assert!(text.lines().nth(2).unwrap().contains("| ghz |"));
}

#[test]
fn bench_csv_rows() {
    let dir = TempDir::new().unwrap();
    let spec = path(&dir, "spec.json");
    std::fs::write(&spec, r#"[{"family": "w", "dims": [3, 6, 2]}]"#).unwrap();
    let out = qudit_prep(&["bench", "--spec", s(&spec), "--runs", "2", "--no-time"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "name,n_qudits,dims,mode,nodes_tree,distinct_c,operations,controls_median,time_s,fidelity");
    assert!(lines[1].starts_with("w,3,3x6x2,exact,58.00,"));
    assert!(lines[1].contains(",37.00,"));
    assert!(lines[2].starts_with("w,3,3x6x2,approx,"));
}
