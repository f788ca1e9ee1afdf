use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use motionsimp::io::load_motion;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motionsimp")).args(args).output().expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fixtures(dir: &Path, kinds: &str, seed: &str) {
    let out = run(&["gen-fixtures", "--kind", kinds, "--seed", seed, "--frames", "120", "-o", s(dir)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn gen_fixtures_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    fixtures(a.path(), "all", "11");
    fixtures(b.path(), "all", "11");
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 9);
    for n in names {
        assert_eq!(fs::read(a.path().join(&n)).unwrap(), fs::read(b.path().join(&n)).unwrap(), "{n:?}");
    }
}

#[test]
fn analyze_output_ignores_job_count() {
    let dir = tempfile::tempdir().unwrap();
    fixtures(dir.path(), "random,walker,spinner,desync", "3");
    let inputs: Vec<String> = ["random-3", "walker-3", "spinner-3", "desync-3"]
        .iter()
        .map(|n| s(&dir.path().join(format!("{n}.json"))).to_string())
        .collect();
    let one = tempfile::tempdir().unwrap();
    let four = tempfile::tempdir().unwrap();
    let mut lines = Vec::new();
    for (jobs, out) in [("1", one.path()), ("4", four.path())] {
        let mut args = vec!["analyze", "--jobs", jobs, "-o", s(out)];
        args.extend(inputs.iter().map(String::as_str));
        let res = run(&args);
        assert!(res.status.success());
        lines.push(String::from_utf8(res.stdout).unwrap().replace(s(out), "OUT"));
    }
    assert_eq!(lines[0], lines[1]);
    for n in ["random-3", "walker-3", "spinner-3", "desync-3"] {
        let f = format!("{n}.profile.json");
        assert_eq!(fs::read(one.path().join(&f)).unwrap(), fs::read(four.path().join(&f)).unwrap());
    }
}

#[test]
fn spin_scores_above_stillness() {
    let dir = tempfile::tempdir().unwrap();
    fixtures(dir.path(), "static,spinner", "0");
    let out = run(&["analyze", s(&dir.path().join("static-0.json")), s(&dir.path().join("spinner-0.json"))]);
    assert!(out.status.success());
    let rows: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows[0]["scores"]["c3"], 0.0);
    assert!(rows[1]["scores"]["c3"].as_f64().unwrap() > 0.0);
}

#[test]
fn disabled_pipeline_echoes_input() {
    let dir = tempfile::tempdir().unwrap();
    fixtures(dir.path(), "random", "5");
    let input = dir.path().join("random-5.json");
    let out = run(&["simplify", "--criteria", "none", "--output-format", "bin", s(&input)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let back = load_motion(dir.path().join("random-5.simplified.bin")).unwrap();
    assert_eq!(back, load_motion(&input).unwrap());
    let report: Value = serde_json::from_slice(&fs::read(dir.path().join("random-5.result.json")).unwrap()).unwrap();
    assert_eq!(report["before"], report["after"]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"fps": 60, "joints": [], "frames": []}"#).unwrap();
    assert_eq!(run(&["analyze", s(&bad)]).status.code(), Some(3));
    assert_eq!(run(&["analyze", s(&dir.path().join("missing.json"))]).status.code(), Some(2));
    assert_eq!(run(&["simplify", "--k", "3", s(&bad)]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    fixtures(dir.path(), "walker", "1");
    let walker = dir.path().join("walker-1.json");
    assert_eq!(run(&["eval", "--fid", s(&walker)]).status.code(), Some(1));
}
