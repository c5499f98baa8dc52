use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn dynmatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynmatch")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON record per line"))
        .collect()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn solve_fix_a() {
    let out = dynmatch(&["--json", "solve", path(&data("fix_a.txt"))]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r["weight"], 2);
    let edges: Vec<u64> = r["matching"].as_array().unwrap().iter().map(|e| e["edge"].as_u64().unwrap()).collect();
    assert_eq!(edges, vec![0, 3]);
    assert_eq!(r["potential"]["left"].as_array().unwrap().len(), 2);
}

#[test]
fn solve_single_edge() {
    let out = dynmatch(&["--json", "solve", path(&data("single_edge.txt"))]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r["weight"], -7);
    assert_eq!(r["matching"][0]["edge"], 0);
}

#[test]
fn isolated_vertex_is_infeasible() {
    let out = dynmatch(&["solve", path(&data("isolated.txt"))]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("infeasible"));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "2 2 2\n0 0 1\n1 x 3\n").unwrap();
    let out = dynmatch(&["solve", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    std::fs::write(&bad, "L 0 1 0 5\n").unwrap();
    let out = dynmatch(&["update", path(&data("fix_a.txt")), path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_an_io_error() {
    let out = dynmatch(&["solve", "/definitely/not/here.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn update_fix_a_reports_each_event() {
    let out = dynmatch(&["--json", "update", path(&data("fix_a.txt")), path(&data("fix_a_events.txt")), "--verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let recs = records(&out);
    let weights: Vec<i64> = recs.iter().map(|r| r["weight"].as_i64().unwrap()).collect();
    assert_eq!(weights, vec![2, 3]);
    assert_eq!(recs[1]["event"], 0);
    assert_eq!(recs[1]["searches"], 1);
    assert_eq!(recs[1]["verified"], true);
    assert!(recs[1]["micros"].as_f64().unwrap() >= 0.0);
}

#[test]
fn empty_event_file_gives_initial_solve_only() {
    let out = dynmatch(&["--json", "update", path(&data("fix_a.txt")), path(&data("empty_events.txt"))]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 1);
    assert!(recs[0]["event"].is_null());
}

#[test]
fn random_stream_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let instance = dir.path().join("instance.txt");
    let events = dir.path().join("events.txt");
    let gen = dynmatch(&["generate", "instance", "--left", "10", "--right", "10", "--seed", "5"]);
    assert_eq!(gen.status.code(), Some(0));
    std::fs::write(&instance, &gen.stdout).unwrap();
    let gen = dynmatch(&["generate", "events", path(&instance), "--count", "100", "--seed", "6"]);
    assert_eq!(gen.status.code(), Some(0));
    std::fs::write(&events, &gen.stdout).unwrap();

    let out = dynmatch(&["--json", "update", path(&instance), path(&events), "--verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let recs = records(&out);
    assert_eq!(recs.len(), 101);
    assert!(recs[1..].iter().all(|r| r["verified"] == true && r["searches"] == 1));
}

#[test]
fn generated_files_are_seeded() {
    let a = dynmatch(&["generate", "valuations", "--agents", "3", "--items", "7", "--seed", "9"]);
    let b = dynmatch(&["generate", "valuations", "--agents", "3", "--items", "7", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    let c = dynmatch(&["generate", "instance", "--left", "4", "--right", "4", "--density", "0.3"]);
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn allocate_fix_b_ascending() {
    let out = dynmatch(&["--json", "allocate", path(&data("fix_b.txt")), "--algorithm", "assignment", "--order", "ascending"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = &records(&out)[0];
    let mut bundles: Vec<Vec<u64>> = r["bundles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect())
        .collect();
    bundles.sort();
    assert_eq!(bundles, vec![vec![0], vec![1, 2]]);
    assert_eq!(r["ef1"], true);
    assert_eq!(r["efx"], true);
    assert_eq!(r["welfare"], 6);
    assert_eq!(r["item_micros"].as_array().unwrap().len(), 3);
}

#[test]
fn allocate_single_agent_takes_everything() {
    for algorithm in ["assignment", "original", "round-robin"] {
        let out = dynmatch(&["--json", "allocate", path(&data("single_agent.txt")), "--algorithm", algorithm]);
        assert_eq!(out.status.code(), Some(0), "{algorithm}");
        let r = &records(&out)[0];
        assert_eq!(r["bundles"], serde_json::json!([[0, 1, 2, 3]]));
        assert_eq!(r["ef1"], true);
    }
}

#[test]
fn allocate_every_algorithm_and_engine_is_ef1() {
    let dir = tempfile::tempdir().unwrap();
    let vals = dir.path().join("vals.txt");
    let gen = dynmatch(&["generate", "valuations", "--agents", "6", "--items", "40", "--seed", "3"]);
    std::fs::write(&vals, &gen.stdout).unwrap();
    for args in [
        vec!["--algorithm", "original"],
        vec!["--algorithm", "round-robin"],
        vec!["--algorithm", "assignment", "--engine", "dijkstra", "--checks"],
        vec!["--algorithm", "assignment", "--engine", "dag", "--checks"],
        vec!["--algorithm", "assignment", "--order", "ascending"],
    ] {
        let mut full = vec!["--json", "allocate", path(&vals)];
        full.extend(&args);
        let out = dynmatch(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
        assert_eq!(records(&out)[0]["ef1"], true);
    }
}

#[test]
fn human_output_has_columns() {
    let out = dynmatch(&["allocate", path(&data("fix_b.txt"))]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("welfare    6"));
    assert!(text.contains("EF1        yes"));
    let out = dynmatch(&["update", path(&data("fix_a.txt")), path(&data("fix_a_events.txt"))]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().nth(1).unwrap().starts_with("event 0"));
}

fn bench_counts(seed: &str) -> Vec<(u64, u64, u64)> {
    let out = dynmatch(&[
        "--json", "bench", "--agents", "5", "--items", "40", "--size", "8", "--events", "10", "--seed", seed,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = &records(&out)[0];
    let mut measures: Vec<&Value> = r["allocators"].as_array().unwrap().iter().collect();
    measures.push(&r["dynamic"]);
    measures.push(&r["resolve"]);
    measures
        .iter()
        .map(|m| {
            (
                m["searches"].as_u64().unwrap(),
                m["pops"].as_u64().unwrap(),
                m["relaxations"].as_u64().unwrap(),
            )
        })
        .collect()
}

#[test]
fn bench_is_deterministic() {
    assert_eq!(bench_counts("11"), bench_counts("11"));
}

#[test]
fn bench_allocators_are_ef1_at_30_by_300() {
    let out = dynmatch(&["--json", "bench", "--agents", "30", "--items", "300", "--size", "20", "--events", "20"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = &records(&out)[0];
    for m in r["allocators"].as_array().unwrap() {
        assert_eq!(m["ef1"], true, "{}", m["name"]);
    }
    assert!(r["relaxations_per_resolve"].as_f64().unwrap() > r["relaxations_per_update"].as_f64().unwrap());
}

#[test]
fn json_errors_are_records() {
    let out = dynmatch(&["--json", "solve", path(&data("isolated.txt"))]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(records(&out)[0]["code"], 3);
}
