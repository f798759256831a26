use std::path::Path;
use std::process::{Command, Output};

fn linforest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linforest")).args(args).env_remove("LINFOREST_BUDGET_MS").output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("not json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn complete(n: usize) -> String {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push(format!("{u} {v}"));
        }
    }
    format!("{n} {}\n{}\n", edges.len(), edges.join("\n"))
}

#[test]
fn gen_is_deterministic_and_parses_back() {
    let a = linforest(&["gen", "--family", "random_regular", "--n", "8", "--r", "3", "--seed", "4", "--format", "edgelist"]);
    let b = linforest(&["gen", "--family", "random_regular", "--n", "8", "--r", "3", "--seed", "4", "--format", "edgelist"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let g = linforest::io::read_edge_list(&String::from_utf8(a.stdout).unwrap()).unwrap();
    assert_eq!(g.regular_degree(), Some(3));
}

#[test]
fn decompose_reports_count_bound_and_route() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write(dir.path(), "k5.txt", &complete(5));
    let out = linforest(&["decompose", &k5]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["count"], 3);
    assert_eq!(v["bound"], 3);
    assert_eq!(v["status"], "success");
    assert!(v["route"].is_string());
    let forests = v["forests"].as_array().unwrap();
    let edges: usize = forests.iter().map(|f| f.as_array().unwrap().len()).sum();
    assert_eq!(edges, 10);
}

#[test]
fn la_of_k6_is_three() {
    let dir = tempfile::tempdir().unwrap();
    let k6 = write(dir.path(), "k6.txt", &complete(6));
    let v = stdout_json(&linforest(&["la", &k6]));
    assert_eq!(v["count"], 3);
    assert_eq!(v["optimal"], true);
}

#[test]
fn negative_expander_verdict_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // two disjoint triangles
    let g = write(dir.path(), "tt.txt", "6 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n");
    let out = linforest(&["check-expander", &g, "--nu", "1/10", "--tau", "1/4"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["holds"], false);
    assert!(v["witness"].is_array());
    let k = write(dir.path(), "k8.txt", &complete(8));
    assert_eq!(linforest(&["check-expander", &k, "--nu", "1/10", "--tau", "1/4", "--mode", "exact"]).status.code(), Some(0));
}

#[test]
fn deficiency_certificate_fields() {
    let dir = tempfile::tempdir().unwrap();
    // star with three leaves: X = {centre}, three odd singletons
    let g = write(dir.path(), "s.txt", "4 3\n0 1\n0 2\n0 3\n");
    let v = stdout_json(&linforest(&["deficiency", &g]));
    assert_eq!(v["df"], 2);
    assert_eq!(v["X"], serde_json::json!([0]));
    assert_eq!(v["components"].as_array().unwrap().len(), 3);
}

#[test]
fn realize_graphic_and_not() {
    let out = linforest(&["realize", "3,3,2,2,2", "--format", "edgelist"]);
    assert!(out.status.success());
    let g = linforest::io::read_edge_list(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let mut d = g.degrees();
    d.sort_unstable();
    assert_eq!(d, vec![2, 2, 2, 3, 3]);
    assert_eq!(linforest(&["realize", "3", "1"]).status.code(), Some(1));
    let multi = stdout_json(&linforest(&["realize", "--multi", "2", "2"]));
    assert_eq!(multi["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn hamilton_modes() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write(dir.path(), "k5.txt", &complete(5));
    let v = stdout_json(&linforest(&["hamilton", &k5, "--mode", "decompose"]));
    assert_eq!(v["status"], "found");
    assert_eq!(v["cycles"].as_array().unwrap().len(), 2);
    let v = stdout_json(&linforest(&["hamilton", &k5, "--mode", "path", "--from", "0", "--to", "4"]));
    assert_eq!(v["path"].as_array().unwrap().len(), 5);
    let layout = write(dir.path(), "l.json", r#"{"paths": [[0, 1]], "isolated": [2]}"#);
    let v = stdout_json(&linforest(&["hamilton", &k5, "--mode", "linkage", "--layout", &layout]));
    assert_eq!(v["status"], "found");
    let path = write(dir.path(), "p.txt", "4 3\n0 1\n1 2\n2 3\n");
    assert_eq!(linforest(&["hamilton", &path, "--mode", "cycle"]).status.code(), Some(1));
    assert_eq!(linforest(&["hamilton", &path, "--mode", "path"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(linforest(&["gen", "--family", "nope", "--n", "5"]).status.code(), Some(2));
    assert_eq!(linforest(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(linforest(&["la", "/nonexistent/graph.txt"]).status.code(), Some(2));
}

#[test]
fn over_cap_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(dir.path(), "k14.txt", &complete(14));
    assert_eq!(linforest(&["la", &k, "--cap", "8"]).status.code(), Some(3));
}

#[test]
fn bench_then_summarize() {
    let dir = tempfile::tempdir().unwrap();
    let records = dir.path().join("r.jsonl");
    let r = records.to_str().unwrap();
    let out = linforest(&["bench", "--family", "gnp", "--n", "9", "--p", "7/10", "--count", "6", "--records", r, "--format", "csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv_path = dir.path().join("s.csv");
    let out = linforest(&["summarize", r, "--format", "csv", "--out", csv_path.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(csv_path).unwrap();
    let total: usize = csv.lines().skip(1).map(|l| l.split(',').nth(4).unwrap().parse::<usize>().unwrap()).sum();
    assert_eq!(total, 6);
    assert!(csv.lines().skip(1).all(|l| l.split(',').nth(9) == Some("0")));
}

#[test]
fn graph6_input_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    // K4
    let g = write(dir.path(), "k4.g6", "C~\n");
    let v = stdout_json(&linforest(&["la", &g]));
    assert_eq!(v["count"], 2);
}
