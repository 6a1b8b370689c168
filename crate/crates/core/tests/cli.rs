//! End-to-end runs of the `fiberfan` binary on the fixtures.

use std::path::PathBuf;
use std::process::{Command, Output};

use fiberfan::io::{Document, Kind};
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"));
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fiberfan")).args(args).output().unwrap()
}

fn report(args: &[&str]) -> (i32, Value) {
    let o = run(args);
    let code = o.status.code().unwrap();
    let v = serde_json::from_slice(&o.stdout).unwrap_or(Value::Null);
    (code, v)
}

#[test]
fn every_fixture_round_trips_through_canonical_json() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let doc = Document::read(&path).unwrap();
        assert_eq!(Document::parse(&doc.to_json()).unwrap(), doc, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 10);
}

#[test]
fn fixtures_parse_to_the_expected_objects() {
    let sq = Document::read(fixture("SQ").as_ref()).unwrap();
    assert_eq!(sq.kind().unwrap(), Kind::Projection);
    assert_eq!(sq.polytope().unwrap().num_vertices(), 4);
    let p2 = Document::read(fixture("P2FAN").as_ref()).unwrap().lattice_fan().unwrap();
    assert_eq!((p2.rays().len(), p2.maximal_cones().len()), (3, 3));
}

#[test]
fn fiber_fan_of_the_square_lists_three_cones_with_witnesses() {
    let (code, v) = report(&["fiberfan", &fixture("SQ")]);
    assert_eq!(code, 0);
    let cones = v["result"]["cones"].as_array().unwrap();
    assert_eq!(cones.len(), 3);
    assert!(cones.iter().all(|c| c["witness"].as_array().unwrap().len() == 1));
    assert_eq!(v["schema"], 1);
}

#[test]
fn square_chamber_poset_has_three_cells_and_two_hasse_edges() {
    let (code, v) = report(&["chambers", &fixture("SQ")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cells"].as_array().unwrap().len(), 3);
    assert_eq!(v["result"]["hasse_edges"].as_array().unwrap().len(), 2);
}

#[test]
fn quotient_flags_from_the_command_line() {
    let (code, v) = report(&["quotient", &fixture("C2FAN"), "--delta", "σ12,σ2", "--sublattice", "(0,1)"]);
    assert_eq!(code, 0);
    let q = &v["result"]["quotients"][0];
    assert_eq!(q["categorical"], true);
    assert_eq!(q["geometric"], false);
}

#[test]
fn pentagon_flip_graph_dot_has_five_nodes_and_edges() {
    let dot = std::env::temp_dir().join(format!("fiberfan-pent-{}.dot", std::process::id()));
    let o = run(&["flips", &fixture("PENT"), "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    std::fs::remove_file(&dot).ok();
    assert_eq!(text.lines().filter(|l| l.contains("[label=")).count(), 5);
    assert_eq!(text.lines().filter(|l| l.contains(" -- ")).count(), 5);
}

#[test]
fn pentagon_verify_all_summary() {
    let (code, v) = report(&["verify-all", &fixture("PENT")]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["result"]["triangulations"]["triangulations"], 5);
    assert_eq!(v["result"]["duality"]["chambers"], 11);
}

#[test]
fn failed_predicates_exit_with_two() {
    let (code, v) = report(&["check-lcs", &fixture("SQ"), "--faces", "0,1;1,2"]);
    assert_eq!(code, 2);
    assert_eq!(v["pass"], false);
    assert!(v["result"]["verdict"]["reason"].is_string());
    let (code, _) = report(&["check-lcs", &fixture("SQ"), "--faces", "0;1;0,1"]);
    assert_eq!(code, 0);
}

#[test]
fn errors_exit_with_one() {
    let o = run(&["faces", "/nonexistent/input.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("io error"));
    let bad = std::env::temp_dir().join(format!("fiberfan-bad-{}.json", std::process::id()));
    std::fs::write(&bad, r#"{"schema": 1, "vertices": [["1/0", 0]]}"#).unwrap();
    let o = run(&["faces", bad.to_str().unwrap()]);
    std::fs::remove_file(&bad).ok();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    // Options are validated against the command before any work.
    let o = run(&["cox", &fixture("P2FAN"), "--dot", "/tmp/never.dot"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["secondary", &fixture("P2FAN")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cap_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_fiberfan"))
        .args(["enumerate", &fixture("HEXAGON"), "--what", "triangulations"])
        .env("FIBERFAN_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn empty_graph_renders_a_valid_dot_body() {
    let g = fiberfan::graph::Graph::new(Vec::new(), Vec::new());
    assert_eq!(g.to_dot("empty"), "graph \"empty\" {\n}\n");
}

#[test]
fn output_is_identical_across_thread_counts() {
    for cmd in ["secondary", "flips"] {
        let a = run(&[cmd, &fixture("MOAE"), "--threads", "1"]);
        let b = run(&[cmd, &fixture("MOAE"), "--threads", "3"]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn remaining_commands_run_on_their_fixtures() {
    let cases: &[&[&str]] = &[
        &["faces", "SQ"],
        &["normalfan", "SQ"],
        &["costring", "SQ", "--point", "1/2"],
        &["string", "PENT", "--witness", "3,-1"],
        &["check-lcc", "SQ", "--faces", "1;2;1,2"],
        &["check-vcell", "SQ", "--faces", "0;1;0,1"],
        &["check-vcone", "SQ", "--faces", "0;1;0,1"],
        &["enumerate", "SQ", "--what", "costrings"],
        &["enumerate", "PENT", "--what", "virtual-cells"],
        &["cox", "SQUARECONE"],
        &["projective", "P2FAN"],
        &["signvectors", "P2FAN"],
        &["secondary", "QUAD"],
    ];
    for case in cases {
        let mut args: Vec<String> = case.iter().map(|s| s.to_string()).collect();
        args[1] = fixture(case[1]);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, v) = report(&refs);
        assert!(code == 0 || code == 2, "{case:?} exited {code}");
        assert_eq!(v["command"], case[0], "{case:?}");
    }
}
