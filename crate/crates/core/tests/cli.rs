use std::process::{Command, Output};

use serde_json::Value;
use switchlab::io::parse_graph;
use switchlab::Graph;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_switchlab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn write_graph(name: &str, g: &Graph) -> String {
    let path = std::env::temp_dir().join(format!("switchlab-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, switchlab::io::to_json_string(&switchlab::io::graph_json(g))).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn degree_of_files() {
    let p4 = write_graph("p4", &Graph::path(4));
    assert_eq!(json(&["deg", &p4])["deg"], 1);
    let empty = write_graph("empty", &Graph::new(0));
    assert_eq!(json(&["deg", &empty])["deg"], 0);
}

#[test]
fn delta_certificate() {
    let v = json(&["delta", "24"]);
    assert_eq!(v["member"], true);
    assert_eq!(v["witness"], serde_json::json!([2, 3, 3]));
    let out = run(&["delta", "--sieve", "1", "110", "--primitive"]);
    let lines: Vec<Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.first().unwrap()["n"], 24);
    assert!(lines.iter().any(|l| l["n"] == 105));
}

#[test]
fn emitted_graphs_reparse() {
    let s = json(&["switch", "catalog:P4", "0", "2", "3", "1"]);
    let g = parse_graph(&s.to_string()).unwrap();
    assert_eq!(g.order(), 4);
    let q = json(&["quotient", "catalog:C4"]);
    assert_eq!(parse_graph(&q["graph"].to_string()).unwrap(), Graph::complete(2));
    assert_eq!(q["index"], 2);
    let b = json(&["delta-build", "24", "2", "3", "3", "3"]);
    assert_eq!(b["k_size"], 18);
    assert_eq!(parse_graph(&b["graph"].to_string()).unwrap().order(), 21);
}

#[test]
fn classification_listing() {
    let v = json(&["classify", "--degree", "2"]);
    assert_eq!(v["count"], 5);
    let names: Vec<&str> = v["graphs"].as_array().unwrap().iter().map(|g| g["name"].as_str().unwrap()).collect();
    for n in ["C4", "2K2", "D5", "co-D5", "P4^2"] {
        assert!(names.contains(&n), "{n}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--degree", "3", "--split-primes"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--degree", "9"]).status.code(), Some(1));
    assert_eq!(run(&["deg", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(run(&["switch", "catalog:P4", "0", "1", "2", "3"]).status.code(), Some(1));
}

#[test]
fn dot_output() {
    let out = run(&["phi", "catalog:D5", "--format", "dot"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("graph G {") && s.contains("label=\"2\""));
}
