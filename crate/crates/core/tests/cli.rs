use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn cocrit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cocrit")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn construct_emits_graph_and_roles() {
    let out = cocrit(&["construct", "--t", "4", "--k", "3", "--n", "13"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "construct");
    assert_eq!(v["results"]["edges"], 44);
    assert_eq!(v["results"]["roles"].as_array().unwrap().len(), 13);
    assert!(v["timings"].is_object());

    let g6 = cocrit(&["construct", "--t", "4", "--k", "3", "--n", "13", "--emit", "graph6"]);
    assert_eq!(String::from_utf8(g6.stdout).unwrap().trim(), v["results"]["graph6"].as_str().unwrap());
}

#[test]
fn construct_rejects_small_order_and_warns_outside_range() {
    assert_eq!(cocrit(&["construct", "--t", "4", "--k", "3", "--n", "12"]).status.code(), Some(2));
    let out = cocrit(&["construct", "--t", "6", "--k", "4", "--n", "40"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!json(&out)["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn verify_exit_codes() {
    let ok = cocrit(&["verify", "--construct", "4,3,13", "--t", "4", "--k", "3", "--structure"]);
    assert_eq!(ok.status.code(), Some(0));
    let v = json(&ok);
    assert_eq!(v["results"]["report"]["is_cocritical"], true);

    assert_eq!(cocrit(&["verify", "--complete", "5", "--t", "3", "--k", "3"]).status.code(), Some(1));
    let cut = cocrit(&["--time-cap", "0.000001", "verify", "--construct", "4,3,13", "--t", "4", "--k", "3"]);
    assert_eq!(cut.status.code(), Some(3));
}

#[test]
fn arrows_on_complete_graphs() {
    let yes = cocrit(&["arrows", "--complete", "5", "--t", "3", "--k", "3"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(json(&yes)["results"]["arrows"], true);
    assert_eq!(cocrit(&["arrows", "--graph", "Cr", "--t", "3", "--k", "3"]).status.code(), Some(1));
}

#[test]
fn malformed_graph6_is_a_usage_error() {
    assert_eq!(cocrit(&["arrows", "--graph", "C~~~~", "--t", "3", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn percolate_writes_trace() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.jsonl");
    let out = cocrit(&["percolate", "--construct", "4,3,13", "--q", "3", "--trace", trace.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let run = &json(&out)["results"]["run"];
    assert_eq!(run["certificate"]["holds"], true);
    let lines = std::fs::read_to_string(&trace).unwrap();
    let iterations = run["certificate"]["iterations"].as_u64().unwrap() as usize;
    assert_eq!(lines.lines().count(), iterations + 1);
    for l in lines.lines() {
        serde_json::from_str::<Value>(l).unwrap();
    }
}

#[test]
fn minsearch_finds_five_vertex_witness() {
    let out = cocrit(&["minsearch", "--t", "3", "--k", "3", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"];
    assert_eq!(r["min_edges"], 8);
    assert_eq!(r["witnesses"], serde_json::json!(["DN{"]));
}

#[test]
fn props_over_corpus_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "DN{{\nEK~w\nFKNNg\n").unwrap();
    let out = cocrit(&["props", "--corpus", f.path().to_str().unwrap(), "--random", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"];
    assert_eq!(r["all_pass"], true);
    assert_eq!(r["graphs"], 8);
}

#[test]
fn emitted_graph6_feeds_verify() {
    let g6 = cocrit(&["construct", "--t", "4", "--k", "3", "--n", "13", "--emit", "graph6"]);
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(&g6.stdout).unwrap();
    let out = cocrit(&["verify", "--input", f.path().to_str().unwrap(), "--t", "4", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["edges"], 44);
}
