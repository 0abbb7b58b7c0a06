use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use wsne_core::io::GameFile;
use wsne_core::{approximate_wsne, Config};

fn wsne(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wsne")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

const PENNIES: &str = r#"{"rows":2,"cols":2,"R":[[1,0],[0,1]],"C":[[0,1],[1,0]]}"#;

#[test]
fn solve_then_verify_pennies() {
    let dir = TempDir::new().unwrap();
    let game = write(dir.path(), "mp.json", PENNIES);
    let out = wsne(&["solve", "--game", &game, "--delta", "0.5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["branch"], "3a");
    let eps = report["certified_epsilon"].as_f64().unwrap();
    assert!(eps < 1e-12);

    let profile = write(dir.path(), "out.json", std::str::from_utf8(&out.stdout).unwrap());
    let out = wsne(&["verify", "--game", &game, "--profile", &profile, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let verify: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(verify["wsne_epsilon"].as_f64().unwrap(), eps);
}

#[test]
fn malformed_inputs_exit_one() {
    let dir = TempDir::new().unwrap();
    let corpus = [
        r#"{"rows":2,"cols":2,"R":[[1,0]],"C":[[0,1],[1,0]]}"#,
        r#"{"rows":2,"cols":2,"R":[[1,0],[0,1]],"C":[[0,1],[1]]}"#,
        r#"{"rows":1,"cols":1,"R":[[NaN]],"C":[[0]]}"#,
        r#"{"rows":1,"cols":1,"R":[[1e999]],"C":[[0]]}"#,
        r#"{"rows":1,"cols":1,"R":[[0.5]]}"#,
        r#"{"rows":0,"cols":0,"R":[],"C":[]}"#,
        "[1, 2, 3]",
        "",
    ];
    for (i, text) in corpus.iter().enumerate() {
        let game = write(dir.path(), &format!("bad{i}.json"), text);
        let out = wsne(&["solve", "--game", &game, "--delta", "0.5"]);
        assert_eq!(out.status.code(), Some(1), "{text}");
    }
    let game = write(dir.path(), "mp.json", PENNIES);
    assert_eq!(wsne(&["solve", "--game", "/nonexistent.json", "--delta", "0.5"]).status.code(), Some(1));
    assert_eq!(wsne(&["solve", "--game", &game, "--delta", "0"]).status.code(), Some(1));
    assert_eq!(wsne(&["solve", "--game", &game, "--delta", "1.5"]).status.code(), Some(1));
    let bad_profile = write(dir.path(), "p.json", r#"{"x":[0.7,0.7],"y":[1,0]}"#);
    assert_eq!(wsne(&["verify", "--game", &game, "--profile", &bad_profile]).status.code(), Some(1));
    let wrong_dims = write(dir.path(), "q.json", r#"{"x":[1],"y":[1,0]}"#);
    assert_eq!(wsne(&["verify", "--game", &game, "--profile", &wrong_dims]).status.code(), Some(1));
}

#[test]
fn guarantee_breach_exits_two() {
    let dir = TempDir::new().unwrap();
    let game = write(dir.path(), "mp.json", PENNIES);
    let pure = write(dir.path(), "p.json", r#"{"x":[1,0],"y":[1,0]}"#);
    let out = wsne(&["verify", "--game", &game, "--profile", &pure, "--delta", "0.25"]);
    assert_eq!(out.status.code(), Some(2));
    let out = wsne(&["verify", "--game", &game, "--profile", &pure]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn generated_files_round_trip_bit_identically() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("g.json");
    let p = path.to_str().unwrap();
    let out = wsne(&["generate", "--kind", "uniform", "--rows", "5", "--cols", "4", "--seed", "11", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    let first = fs::read(&path).unwrap();
    wsne(&["generate", "--kind", "uniform", "--rows", "5", "--cols", "4", "--seed", "11", "--out", p]);
    assert_eq!(first, fs::read(&path).unwrap());

    let in_memory = wsne_core::generate::generate(wsne_core::generate::GameKind::Uniform, 5, 4, 11).unwrap();
    let from_disk = GameFile::read(&path).unwrap().to_game().unwrap();
    assert_eq!(in_memory, from_disk);

    let direct = approximate_wsne(&in_memory, 0.5, &Config::default()).unwrap();
    let out = wsne(&["solve", "--game", p, "--delta", "0.5", "--json"]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["certified_epsilon"].as_f64().unwrap(), direct.certified_epsilon);
    assert_eq!(report["branch"], direct.branch.label());
    let x: Vec<f64> = serde_json::from_value(report["x"].clone()).unwrap();
    assert_eq!(x, direct.profile.row.to_vec());
}

#[test]
fn generator_examples() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("c.json");
    let p = p.to_str().unwrap();
    wsne(&["generate", "--kind", "constant", "--rows", "3", "--cols", "3", "--value", "0.3", "--out", p]);
    let out = wsne(&["solve", "--game", p, "--delta", "0.5", "--json"]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["branch"], "3a");

    wsne(&["generate", "--kind", "force-3c", "--rows", "4", "--cols", "4", "--seed", "7", "--out", p]);
    let out = wsne(&["solve", "--game", p, "--delta", "0.5", "--json"]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let branch = report["branch"].as_str().unwrap();
    assert!(branch == "3c" || branch == "4c", "{branch}");
}

#[test]
fn raw_payoffs_are_rescaled() {
    let dir = TempDir::new().unwrap();
    let game = write(dir.path(), "raw.json", r#"{"rows":2,"cols":2,"R":[[3,-1],[-1,3]],"C":[[-1,3],[3,-1]]}"#);
    let out = wsne(&["solve", "--game", &game, "--delta", "0.5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["normalized"], true);
    assert_eq!(report["branch"], "3a");
}

#[test]
fn solve_query_reports_counts() {
    let dir = TempDir::new().unwrap();
    let game = write(dir.path(), "mp.json", PENNIES);
    let out = wsne(&[
        "solve-query", "--game", &game, "--epsilon", "0.1", "--delta", "0.5", "--seed", "3", "--audit", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["branch"], "3a");
    assert_eq!(report["queries"]["phase_zero_sum_r"], 4);
    assert_eq!(report["queries"]["phase_zero_sum_c"], 4);
    assert_eq!(report["queries"]["phase_audit"], 4);
    assert!(report["audited_epsilon"].as_f64().unwrap() < 1e-12);
}

#[test]
fn bench_rows_are_ordered_and_within_guarantee() {
    let out = wsne(&[
        "bench", "--kind", "uniform", "--sizes", "5,10", "--count", "100", "--delta", "0.5", "--seed", "1",
        "--no-timing",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header = reader.headers().unwrap().clone();
    assert_eq!(
        header.iter().collect::<Vec<_>>(),
        [
            "instance_id", "m", "n", "delta", "epsilon", "branch", "certified_epsilon", "wall_time_ms",
            "queries_total", "queries_zero_sum_r", "queries_zero_sum_c", "queries_subgame", "queries_audit", "seed",
            "mode"
        ]
    );
    let rows: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 200);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row[0].parse::<usize>().unwrap(), i);
        let eps: f64 = row[6].parse().unwrap();
        assert!(eps <= 1.0 + 1e-6);
    }
}
