//! The `strongconn` binary end to end: outputs, exit codes and error messages.

mod common;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use strongconn::cli::AnalysisReport;

use common::{BITRI, CYCLE5, FIG8};

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("strongconn-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_strongconn"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(text) = stdin {
        pipe.write_all(text.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn query(graph: &str, queries: &str) -> Vec<String> {
    let g = scratch("query-graph.txt", graph);
    let q = scratch("queries.txt", queries);
    let o = run(
        &[
            "query",
            g.to_str().unwrap(),
            "--queries",
            q.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o).lines().map(str::to_string).collect()
}

#[test]
fn query_goldens() {
    let fig8 = query(FIG8, "sep-vertices 1 2\nsep-edges 1 2\n2ec 1 2\n");
    assert_eq!(fig8[..2], ["0", "(0,1) (1,2) (2,0)"]);
    assert!(
        ["no (0,1)", "no (1,2)", "no (2,0)"].contains(&fig8[2].as_str()),
        "{}",
        fig8[2]
    );
    assert_eq!(query(BITRI, "2vc 0 1\n2ec 1 2\n"), vec!["yes", "yes"]);
    assert_eq!(
        query(CYCLE5, "vertex-separates 1 0 2\nedge-separates 4 0 0 2\n"),
        vec!["yes", "yes"]
    );
}

#[test]
fn cycle_witness_is_a_cycle_edge() {
    let answer = query(CYCLE5, "2ec 0 2\n").remove(0);
    let edges = ["(0,1)", "(1,2)", "(2,3)", "(3,4)", "(4,0)"];
    assert!(
        edges.iter().any(|e| answer == format!("no {e}")),
        "{answer}"
    );
}

#[test]
fn analyze_reads_stdin_and_round_trips() {
    let o = run(&["analyze", "-"], Some(FIG8));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let report = AnalysisReport::from_json(&text).unwrap();
    assert_eq!(report.scc_count, 1);
    let c = &report.components[0];
    assert!(c.scc_count_after_edge.values().all(|&k| k == 3));
    assert_eq!(
        c.scc_count_after_vertex
            .values()
            .copied()
            .collect::<Vec<_>>(),
        vec![4, 2, 2, 2, 2]
    );
    assert_eq!(
        c.largest_scc_after_vertex
            .values()
            .copied()
            .collect::<Vec<_>>(),
        vec![1, 3, 3, 3, 3]
    );
    assert_eq!(c.strong_articulation_points, vec![0, 1, 2, 3, 4]);
    assert_eq!(report.to_json().trim_end(), text.trim_end());
}

#[test]
fn analyze_splits_components_and_ignores_the_start() {
    let g = scratch("two.txt", "5 5\n0 1\n1 0\n1 2\n2 3\n3 2\n");
    let path = g.to_str().unwrap();
    let base = run(&["analyze", path], None);
    assert_eq!(base.status.code(), Some(0));
    let report = AnalysisReport::from_json(&stdout(&base)).unwrap();
    assert_eq!(report.scc_count, 3);
    for s in 0..5 {
        let o = run(&["analyze", path, "--start-vertex", &s.to_string()], None);
        assert_eq!(o.stdout, base.stdout, "start {s}");
    }
    let text = run(&["analyze", path, "--format", "text"], None);
    assert_eq!(text.status.code(), Some(0));
    assert!(!text.stdout.is_empty());
}

#[test]
fn check_exit_codes() {
    let ok = run(&["check", "--seeds", "20"], None);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let fault = run(&["check", "--seeds", "5", "--inject-fault"], None);
    assert_eq!(fault.status.code(), Some(1));
    let too_big = run(&["check", "--n", "13", "--seeds", "1"], None);
    assert_eq!(too_big.status.code(), Some(2));
    let skipped = run(
        &[
            "check",
            "--n",
            "13",
            "--m",
            "30",
            "--seeds",
            "2",
            "--skip-blocks",
        ],
        None,
    );
    assert_eq!(skipped.status.code(), Some(0));
}

#[test]
fn errors_exit_with_usage_code() {
    let missing = run(&["analyze", "/nonexistent/graph.txt"], None);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));
    let malformed = run(&["analyze", "-"], Some("3 2\n0 1\n"));
    assert_eq!(malformed.status.code(), Some(2));
    let start = run(&["analyze", "-", "--start-vertex", "9"], Some(FIG8));
    assert_eq!(start.status.code(), Some(2));
    let g = scratch("bad-query-graph.txt", FIG8);
    let q = scratch("bad-queries.txt", "2ec 0 1\n2ec 3 3\n");
    let bad = run(
        &[
            "query",
            g.to_str().unwrap(),
            "--queries",
            q.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn bench_prints_every_batch() {
    let o = run(&["bench", "--n", "200", "--repeat", "1"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in [
        "build_index",
        "count_sccs_all_edges",
        "lscc_all_edges",
        "count_sccs_all_vertices",
        "lscc_all_vertices",
    ] {
        assert!(text.contains(name), "{text}");
    }
}
