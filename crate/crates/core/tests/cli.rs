//! End-to-end runs of the `specgraph` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use specgraph::fixtures;
use specgraph::graph::WeightedGraph;
use specgraph::io::{parse_graph, serialize_graph};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specgraph")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn save(dir: &Path, name: &str, g: &WeightedGraph) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serialize_graph(g)).unwrap();
    p
}

fn gen_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success());
    let p = dir.join(name);
    std::fs::write(&p, &out.stdout).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn spectrum_reports() {
    let dir = tempfile::tempdir().unwrap();
    let ring = gen_to(dir.path(), "ring.txt", &["gen", "ring", "12"]);
    let v = json(&["spectrum", "--graph", &ring, "--k", "3"]);
    let values = v["laplacian"]["values"].as_array().unwrap();
    assert_eq!(values[1].as_f64().unwrap(), 0.267949192431);
    assert_eq!(values[2].as_f64().unwrap(), 0.267949192431);
    assert!(v.get("symmetric_normalized").is_none());

    let k2 = gen_to(dir.path(), "k2.txt", &["gen", "path", "2"]);
    let v = json(&["spectrum", "--graph", &k2, "--normalized"]);
    assert_eq!(v["laplacian"]["values"][1].as_f64().unwrap(), 2.0);
    assert!(v["laplacian"]["values"][0].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(v["random_walk"]["values"][1].as_f64().unwrap(), 2.0);

    let iso = dir.path().join("iso.txt");
    std::fs::write(&iso, "nodes 3\n0 1\n").unwrap();
    let iso = iso.to_string_lossy();
    assert_eq!(run(&["spectrum", "--graph", &iso, "--normalized"]).status.code(), Some(3));
    assert!(run(&["spectrum", "--graph", &iso]).status.success());

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "0 1\n1 x\n").unwrap();
    let out = run(&["spectrum", "--graph", &bad.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn draw_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let ring = gen_to(dir.path(), "ring.txt", &["gen", "ring", "12"]);
    let v = json(&["draw", "--graph", &ring, "--dims", "2", "--format", "json"]);
    assert!((v["energy"].as_f64().unwrap() - 0.535898384862).abs() < 1e-11);
    assert_eq!(v["energy"], v["eigenvalue_sum"]);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 12);
    assert_eq!(v["edges"].as_array().unwrap().len(), 12);

    let bucky = gen_to(dir.path(), "bucky.txt", &["gen", "bucky"]);
    let v = json(&["draw", "--graph", &bucky, "--dims", "3", "--format", "json"]);
    assert!((v["energy"].as_f64().unwrap() - 0.7302).abs() < 3e-3);

    let svg_path = dir.path().join("ring.svg");
    let out = run(&["draw", "--graph", &ring, "--format", "svg", "--out", &svg_path.to_string_lossy()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg.matches("<line").count(), 12);

    let k2 = gen_to(dir.path(), "k2.txt", &["gen", "path", "2"]);
    assert_eq!(run(&["draw", "--graph", &k2, "--dims", "2", "--format", "json"]).status.code(), Some(4));
    let split = save(dir.path(), "split.txt", &WeightedGraph::from_unit_edges(4, &[(0, 1), (2, 3)]).unwrap());
    assert_eq!(run(&["draw", "--graph", &split.to_string_lossy()]).status.code(), Some(4));
}

#[test]
fn cluster_and_oracle_agree() {
    let dir = tempfile::tempdir().unwrap();
    let bridged = save(dir.path(), "bridged.txt", &fixtures::bridged_triangles(0.1));
    let bridged = bridged.to_string_lossy();
    let c = json(&["cluster", "--graph", &bridged, "--k", "2"]);
    let o = json(&["oracle", "--graph", &bridged, "--k", "2"]);
    assert_eq!(c["partition"], serde_json::json!([[0, 1, 2], [3, 4, 5]]));
    assert_eq!(c["partition"], o["best_partition"]);
    assert_eq!(c["ncut"], o["value"]);
    assert!(c["relaxed_bound"].as_f64().unwrap() <= c["ncut"].as_f64().unwrap());
    assert_eq!(o["count"].as_u64().unwrap(), 31);

    let tri = save(dir.path(), "tri.txt", &fixtures::three_triangles(0.01));
    let tri = tri.to_string_lossy();
    let c = json(&["cluster", "--graph", &tri, "--k", "3", "--seed", "5"]);
    let o = json(&["oracle", "--graph", &tri, "--k", "3"]);
    assert_eq!(c["partition"], o["best_partition"]);
    assert_eq!(c["seed"].as_u64().unwrap(), 5);
    let raw = String::from_utf8(run(&["cluster", "--graph", &tri, "--k", "3"]).stdout).unwrap();
    let pos: Vec<usize> = ["\"partition\"", "\"ncut\"", "\"relaxed_bound\"", "\"iterations\"", "\"seed\""]
        .iter()
        .map(|k| raw.find(k).unwrap())
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));

    assert_eq!(run(&["cluster", "--graph", &tri, "--k", "1"]).status.code(), Some(2));
    assert_eq!(run(&["cluster", "--graph", &tri, "--k", "9"]).status.code(), Some(4));
    assert_eq!(run(&["cluster", "--graph", &tri, "--k", "3", "--repair", "bogus"]).status.code(), Some(2));

    let k2 = gen_to(dir.path(), "k2.txt", &["gen", "path", "2"]);
    assert_eq!(json(&["oracle", "--graph", &k2, "--k", "2"])["value"].as_f64().unwrap(), 2.0);
    let big = gen_to(dir.path(), "ring15.txt", &["gen", "ring", "15"]);
    assert_eq!(run(&["oracle", "--graph", &big, "--k", "2"]).status.code(), Some(5));
}

#[test]
fn gen_round_trips() {
    for args in [vec!["gen", "ring", "12"], vec!["gen", "path", "5"], vec!["gen", "complete", "4"], vec!["gen", "bucky", "3"]] {
        let out = run(&args);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        let g = parse_graph(&text).unwrap();
        assert_eq!(serialize_graph(&g), text);
    }
    assert_eq!(run(&["gen", "star", "4"]).status.code(), Some(2));
    let bucky = String::from_utf8(run(&["gen", "bucky"]).stdout).unwrap();
    assert_eq!(bucky.lines().filter(|l| !l.starts_with("nodes") && !l.starts_with('#')).count(), 90);
}
