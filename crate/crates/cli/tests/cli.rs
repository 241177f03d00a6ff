use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn idom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idom")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_lines(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn family_prints_graph6() {
    let out = idom(&["family", "tkl", "--k", "3", "--l", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let line = stdout(&out);
    let g = idom_core::parse_graph6(line.trim()).unwrap();
    assert_eq!(g.order(), 16);

    let out = idom(&["family", "tkl", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_petersen() {
    let out = idom(&["solve", "--param", "both", "--family", "petersen"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&stdout(&out));
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["n"], 10);
    assert_eq!(lines[0]["i"]["value"], 3);
    assert_eq!(lines[0]["gamma"]["value"], 3);

    let out = idom(&["solve", "--param", "i", "--family", "cycle", "--n", "7"]);
    let lines = json_lines(&stdout(&out));
    assert_eq!(lines[0]["i"]["value"], 3);
    assert!(lines[0].get("gamma").is_none());
}

#[test]
fn enumerate_matches_known_counts() {
    let out = idom(&["enumerate", "--n", "10", "--class", "cubic", "--connected", "--workers", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 19);
    let par = idom(&["enumerate", "--n", "10", "--class", "cubic", "--connected", "--workers", "3"]);
    assert_eq!(stdout(&par), stdout(&out));

    let out = idom(&["enumerate", "--n", "7", "--class", "cubic"]);
    assert_eq!(out.status.code(), Some(2));
    let out = idom(&["enumerate", "--n", "18", "--class", "cubic"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_writes_report_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.jsonl");
    let summary = dir.path().join("summary.csv");
    let out = idom(&[
        "verify",
        "--theorem",
        "T15",
        "--enum",
        "n=8,subcubic,no-c4",
        "--report",
        report.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PASS T15: 179 graphs"), "{}", stdout(&out));

    let reports = json_lines(&fs::read_to_string(&report).unwrap());
    assert_eq!(reports.len(), 179);
    for r in &reports {
        assert_eq!(r["violation"], false);
        let i = r["i_value"].as_i64().unwrap();
        assert!(14 * i <= r["weight_total"].as_i64().unwrap());
    }
    let csv = fs::read_to_string(&summary).unwrap();
    let mut rows = csv.lines();
    assert_eq!(rows.next(), Some("n,count,max_i,max_ratio_num,max_ratio_den,tight_count"));
    assert!(rows.next().unwrap().starts_with("8,179,"));
}

#[test]
fn exit_codes() {
    let out = idom(&["verify", "--theorem", "T17", "--enum", "n=10,cubic,connected,no-c4", "--inject-violation"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("VIOLATION"));

    let out = idom(&["verify", "--theorem", "T99", "--enum", "n=8,subcubic"]);
    assert_eq!(out.status.code(), Some(2));

    let out = idom(&["verify", "--theorem", "T15", "--in", "/nonexistent/graphs.g6"]);
    assert_eq!(out.status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let k4 = dir.path().join("k4.g6");
    fs::write(&k4, "C~\n").unwrap();
    let path = k4.to_str().unwrap();
    let out = idom(&["verify", "--theorem", "T14", "--in", path]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("1 flagged out of scope"));
    let out = idom(&["verify", "--theorem", "T14", "--in", path, "--strict"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn search_and_analyze() {
    let out = idom(&["search", "--objective", "tight_5_14", "--enum", "n=14,cubic,connected,no-c4"]);
    assert_eq!(out.status.code(), Some(0));
    let s: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(s["objective"], "tight_5_14");
    assert!(!s["witnesses"].as_array().unwrap().is_empty());

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.g6");
    fs::write(&file, "FhCKG\nC~\n").unwrap();
    let out = idom(&["analyze", "--in", file.to_str().unwrap(), "--what", "keylemma", "--set", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&stdout(&out));
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[1]["graph6"], "C~");
    assert_eq!(lines[1]["sides"]["lhs"], 14);
    assert_eq!(lines[1]["sides"]["rhs"], 20);
    let out = idom(&["analyze", "--in", file.to_str().unwrap(), "--what", "weights"]);
    for l in json_lines(&stdout(&out)) {
        assert!(l.get("weights").is_some() || l.get("error").is_some());
    }
}
