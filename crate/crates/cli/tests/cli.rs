use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn hlouvain(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hlouvain"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn workspace() -> TempDir {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("toy.txt"), "a,b,c\nd,e,f\n").unwrap();
    dir
}

fn generated(dir: &Path, seed: &str, extra: &[&str]) {
    let mut args = vec![
        "--seed",
        seed,
        "generate",
        "--n",
        "120",
        "--community-min",
        "20",
        "--community-max",
        "30",
        "--out-prefix",
        "g",
    ];
    args.extend_from_slice(extra);
    let out = hlouvain(&args, dir);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn toy_cluster_finds_both_triples() {
    let dir = workspace();
    let out = hlouvain(&["cluster", "toy.txt", "--strict", "--pb", "0.5", "--pc", "0.5"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q_h=0.75 runs=10"));
    let labels: Vec<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(labels, ["0", "0", "0", "1", "1", "1"]);
}

#[test]
fn cluster_is_deterministic() {
    let dir = workspace();
    generated(dir.path(), "4", &["--noise", "0.3"]);
    let run = || stdout(&hlouvain(&["--seed", "9", "cluster", "g.hyper", "--runs", "3"], dir.path()));
    assert_eq!(run(), run());
}

#[test]
fn tau_zero_is_accepted() {
    let dir = workspace();
    let out = hlouvain(&["cluster", "toy.txt", "--tau", "0"], dir.path());
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("q_h="));
}

#[test]
fn tune_writes_trace_and_is_reproducible() {
    let dir = workspace();
    generated(dir.path(), "5", &["--noise", "0.2"]);
    let args = ["tune", "g.hyper", "--init", "10", "--min-evals", "10", "--out", "p.txt"];
    let first = hlouvain(&args, dir.path());
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    let trace = fs::read_to_string(dir.path().join("p.txt.trace.csv")).unwrap();
    assert!(trace.lines().count() > 10);
    let partition = fs::read(dir.path().join("p.txt")).unwrap();
    let second = hlouvain(&args, dir.path());
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(trace, fs::read_to_string(dir.path().join("p.txt.trace.csv")).unwrap());
    assert_eq!(partition, fs::read(dir.path().join("p.txt")).unwrap());
}

#[test]
fn eda_recommends_strict_on_pure_instance() {
    let dir = workspace();
    generated(dir.path(), "3", &["--noise", "0", "--wcd", "strict"]);
    let out = hlouvain(&["eda", "g.hyper", "--partition", "g.truth"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("d,c,purity,frequency\n"));
    assert!(text.contains("suggested=strict"));
}

#[test]
fn eda_without_larger_edges_lacks_signal() {
    let dir = workspace();
    fs::write(dir.path().join("pairs.txt"), "a,b\nc,d\nb,c\n").unwrap();
    let out = hlouvain(&["eda", "pairs.txt"], dir.path());
    assert!(out.status.success());
    assert!(stdout(&out).contains("rationale=insufficient signal"));
}

#[test]
fn generate_then_score_truth_against_itself() {
    let dir = workspace();
    generated(dir.path(), "8", &["--inject-local-noise", "5,4"]);
    for ext in ["hyper", "truth", "json"] {
        assert!(dir.path().join(format!("g.{ext}")).exists());
    }
    let sidecar: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("g.json")).unwrap()).unwrap();
    assert_eq!(sidecar["params"]["n"], 120);
    assert_eq!(sidecar["inject_local_noise"], serde_json::json!([5, 4]));
    let out = hlouvain(&["score", "g.truth", "g.truth"], dir.path());
    assert_eq!(stdout(&out), "ami=1\n");
}

#[test]
fn cluster_output_round_trips_through_score() {
    let dir = workspace();
    generated(dir.path(), "6", &["--noise", "0.1"]);
    let out = hlouvain(&["cluster", "g.hyper", "--strict", "--out", "p.txt"], dir.path());
    assert!(out.status.success());
    let out = hlouvain(&["score", "p.txt", "p.txt", "--contingency"], dir.path());
    let text = stdout(&out);
    assert!(text.starts_with("ami=1\nrow,col,count\n"));
    let out = hlouvain(&["score", "g.truth", "p.txt"], dir.path());
    let ami: f64 = stdout(&out).trim().strip_prefix("ami=").unwrap().parse().unwrap();
    assert!(ami > 0.5 && ami <= 1.0);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = workspace();
    fs::write(
        dir.path().join("cfg.json"),
        r#"{"objective": {"strict": true}, "cluster": {"runs": 2, "p_b": 0.5, "p_c": 0.5}}"#,
    )
    .unwrap();
    let out = hlouvain(&["--config", "cfg.json", "cluster", "toy.txt"], dir.path());
    assert!(stdout(&out).starts_with("q_h=0.75 runs=2\n"));
    let out = hlouvain(&["--config", "cfg.json", "cluster", "toy.txt", "--runs", "4"], dir.path());
    assert!(stdout(&out).starts_with("q_h=0.75 runs=4\n"));
    fs::write(dir.path().join("bad.json"), r#"{"clusterr": {}}"#).unwrap();
    assert_eq!(hlouvain(&["--config", "bad.json", "cluster", "toy.txt"], dir.path()).status.code(), Some(3));
}

#[test]
fn exit_codes() {
    let dir = workspace();
    fs::write(dir.path().join("bad.txt"), "a,b;-1\n").unwrap();
    fs::write(dir.path().join("other.part"), "x,0\ny,1\n").unwrap();
    fs::write(dir.path().join("mine.part"), "a,0\nb,1\n").unwrap();
    let code = |args: &[&str]| hlouvain(args, dir.path()).status.code();
    assert_eq!(code(&["cluster", "missing.txt"]), Some(2));
    assert_eq!(code(&["cluster", "bad.txt"]), Some(2));
    assert_eq!(code(&["score", "mine.part", "other.part"]), Some(2));
    assert_eq!(code(&["cluster", "toy.txt", "--pb", "2"]), Some(3));
    assert_eq!(code(&["cluster", "toy.txt", "--pc", "1"]), Some(3));
    assert_eq!(code(&["cluster", "toy.txt", "--tau", "1", "--strict"]), Some(3));
    assert_eq!(code(&["bogus"]), Some(3));
    assert_eq!(code(&["--help"]), Some(0));
}
