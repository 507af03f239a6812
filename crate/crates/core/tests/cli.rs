//! The binary end to end.

use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamorient")).args(args).output().expect("binary runs")
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn generate_partition_embed_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("G.edges");
    let part = dir.path().join("partition.json");
    let emb = dir.path().join("embedding.json");
    let s = |p: &Path| p.to_str().unwrap().to_string();

    let o = bin(&["generate", "--family", "g1", "--sizes", "20,20,20", "--intra", "0.95", "--noise", "0.001", "--seed", "7", "--out", &s(&g)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&g).unwrap();
    assert!(text.starts_with("# {\"family\":\"g1\""));

    let o = bin(&["partition", "--input", &s(&g), "--k", "3", "--out", &s(&part)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let p = json(&part);
    assert_eq!(p["partition"]["classes"].as_array().unwrap().len(), 3);
    assert_eq!(p["report"]["clause1"]["pass"], true);

    let o = bin(&["embed", "--input", &s(&g), "--pattern", "antidirected", "--partition", &s(&part), "--out", &s(&emb)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let e = json(&emb);
    assert_eq!(e["check"]["valid"], true);
    assert_eq!(e["map"].as_array().unwrap().len(), 60);
    assert!(e["audit"]["case"].is_object());

    let o = bin(&["verify", "embedding", "--input", &s(&g), "--embedding", &s(&emb)]);
    assert!(o.status.success());
    let o = bin(&["verify", "partition", "--input", &s(&g), "--partition", &s(&part), "--k", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn certificates_follow_the_schema() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("K.edges");
    let gs = g.to_str().unwrap();
    assert!(bin(&["generate", "--family", "complete", "--n", "10", "--out", gs]).status.success());
    let o = bin(&["verify", "expander", "--input", gs, "--nu", "0.05", "--tau", "0.2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["outcome"], "expander");
    assert_eq!(v["mode"], "exact");
    assert!(v["params"]["nu"].is_number() && v["counts"].is_object());

    let b = dir.path().join("B.edges");
    let bs = b.to_str().unwrap();
    assert!(bin(&["generate", "--family", "g1", "--sizes", "6,6", "--out", bs]).status.success());
    let o = bin(&["verify", "dichotomy", "--input", bs, "--eta", "0.3", "--alpha", "0.1", "--tau", "0.25"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["outcome"], "sparse_cut");
    assert_eq!(v["cut"].as_array().unwrap().len(), 6);
}

#[test]
fn oracle_mode_reports_absence() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("X.edges");
    let gs = g.to_str().unwrap();
    assert!(bin(&["generate", "--family", "bipartite-extremal", "--n", "8", "--out", gs]).status.success());
    let o = bin(&["embed", "--input", gs, "--pattern", "++++++++", "--mode", "oracle"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["audit"]["result"], "none");
}

#[test]
fn experiment_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("suite.json");
    std::fs::write(
        &cfg,
        r#"{"name":"t","suites":[{"suite":"two_factor","n_grid":[10],"k_grid":[1],"trials":3,"seed":5},
            {"suite":"ghouila_houri","max_n":8,"mode":{"kind":"sampled","trials":4,"seed":1},"control":true}]}"#,
    )
    .unwrap();
    let out = dir.path().join("results");
    let o = bin(&["experiment", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(out.join("two_factor.csv")).unwrap();
    assert!(csv.starts_with("suite,n,params,seed,outcome,millis,artifact"));
    assert_eq!(csv.lines().count(), 1 + 3 + 1);
    assert!(out.join("ghouila_houri.csv").exists());
    let summary = json(&out.join("summary.json"));
    assert_eq!(summary["failed"], false);

    let mut rdr = csv::Reader::from_reader(csv.as_bytes());
    let row = rdr.records().next().unwrap().unwrap();
    let o = bin(&["experiment", "--trial", &row[2]]);
    assert!(o.status.success());
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["outcome"], row[4].to_string());
}

#[test]
fn bad_config_fails_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"name":"t","suites":[{"suite":"pancyclicity","n_grid":[],"k_grid":[1],"gamma":0.1,"instances":1,"seed":0}]}"#).unwrap();
    let o = bin(&["experiment", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("suites[0].n_grid"));
}
