use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use cubeiso_core::Rat;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cubeiso"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn origin_box(sides: &[&str]) -> String {
    let zeros: Vec<&str> = sides.iter().map(|_| "0").collect();
    format!(r#"{{"dim": {}, "boxes": [{{"lo": {:?}, "hi": {:?}}}]}}"#, sides.len(), zeros, sides)
}

const TRIPOD: &str = r#"{"dim": 3, "boxes": [
    {"lo": ["0", "0", "0"], "hi": ["1/5", "1", "1/5"]},
    {"lo": ["0", "0", "0"], "hi": ["1", "1/5", "1/5"]},
    {"lo": ["0", "0", "0"], "hi": ["1/5", "1/5", "1"]}
]}"#;

fn rat(v: &Value) -> Rat {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn profile_table_has_fifty_rows_and_switches_after_row_eight() {
    let text = stdout(&run(&["profile", "--range", "1/100,1/2", "--step", "1/100"]));
    let rows: Vec<csv::StringRecord> =
        csv::Reader::from_reader(text.as_bytes()).records().collect::<Result<_, _>>().unwrap();
    assert_eq!(rows.len(), 50);
    assert_eq!(&rows[7][3], "cube");
    assert_eq!(&rows[8][3], "tube");
    assert!(rows[7][1].starts_with('['), "{:?}", rows[7]);
    assert_eq!(&rows[8][1], "3/5");
    assert_eq!(rows[49], vec!["1/2", "1/1", "1.000000000000", "slab", ""]);
}

#[test]
fn profile_at_the_thresholds() {
    let text = stdout(&run(&["profile", "--volume", "64/729"]));
    assert_eq!(text.lines().nth(1), Some("64/729,16/27,0.592592592592,cube+tube,V1"));
    let text = stdout(&run(&["profile", "--volume", "1/4"]));
    assert_eq!(text.lines().nth(1), Some("1/4,1/1,1.000000000000,tube+slab,V2"));
}

#[test]
fn search_sweep_covers_every_cell_count() {
    let text = stdout(&run(&["search", "--dim", "3", "--res", "4", "--jobs", "2"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,m,k,V,discrete_min,continuous_bound,n_minimizers,kinds"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 33);
    assert!(rows[8].starts_with("3,4,8,1/8,3/4,"), "{}", rows[8]);
    let serial = stdout(&run(&["search", "--dim", "3", "--res", "4"]));
    assert_eq!(serial, text);
    let single = stdout(&run(&["search", "--dim", "2", "--res", "4", "--k", "4"]));
    assert_eq!(single.lines().nth(1), Some("2,4,4,1/4,1/1,1/1,2,square+strip"));
}

#[test]
fn tripod_is_not_a_minimizer() {
    let path = temp_file("tripod.json", TRIPOD);
    let out = run(&["classify", path.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "not-minimizer");
    assert_eq!(v["family"]["kind"], "tripod");
    assert_eq!(v["competitor"]["delta_vol"], "0/1");
    assert_eq!(v["competitor"]["delta_relper"], "-4/25");
}

#[test]
fn cube_first_variation_is_two_over_a() {
    let path = temp_file("cube.json", &origin_box(&["1/4", "1/4", "1/4"]));
    let v: Value = serde_json::from_str(&stdout(&run(&["firstvar", path.to_str().unwrap()]))).unwrap();
    let slices = v["slices"].as_array().unwrap();
    assert_eq!(slices.len(), 3);
    assert!(slices.iter().all(|s| s["first_var"] == "8/1"));
    assert_eq!(v["stationary"], true);
}

#[test]
fn half_cube_mesh() {
    let path = temp_file("half.json", &origin_box(&["1/2", "1/2", "1/2"]));
    let count = |text: &str, p: &str| text.lines().filter(|l| l.starts_with(p)).count();
    let quads = stdout(&run(&["export-mesh", path.to_str().unwrap()]));
    assert_eq!(count(&quads, "f "), 3);
    assert_eq!(count(&quads, "l "), 12);
    let tris = stdout(&run(&["export-mesh", "--triangulate", path.to_str().unwrap()]));
    assert_eq!(count(&tris, "f "), 6);
    let flat = temp_file("flat.json", &origin_box(&["1/2", "1"]));
    assert_eq!(run(&["export-mesh", flat.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn reduce_logs_volume_preserving_steps() {
    let voxels = r#"{"dim": 3, "res": 3, "cells": [1, 4, 5, 9, 13, 17, 20, 22, 26]}"#;
    let path = temp_file("voxels.json", voxels);
    let log = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("steps.jsonl");
    let text = stdout(&run(&["reduce", path.to_str().unwrap(), "--log", log.to_str().unwrap()]));
    let set: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(set["dim"], 3);
    let steps = std::fs::read_to_string(&log).unwrap();
    assert!(steps.lines().count() > 0);
    for line in steps.lines() {
        let step: Value = serde_json::from_str(line).unwrap();
        assert_eq!(step["delta_vol"], "0/1");
        assert!(!rat(&step["delta_relper"]).is_positive());
    }
}

#[test]
fn symmetrize_output_round_trips_through_stdin() {
    let path = temp_file("scatter.json", r#"{"dim": 2, "res": 3, "cells": [2, 6]}"#);
    let once = stdout(&run(&["symmetrize", path.to_str().unwrap()]));
    let mut child = bin().args(["symmetrize", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(once.as_bytes()).unwrap();
    let twice = stdout(&child.wait_with_output().unwrap());
    assert_eq!(once, twice);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["profile", "--volume", "1/0"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "/nonexistent/set.json"]).status.code(), Some(1));
    let bad = temp_file("bad.json", "{\"dim\": 3, \"boxes\": [");
    assert_eq!(run(&["classify", bad.to_str().unwrap()]).status.code(), Some(2));
    let flat = temp_file("flat2.json", &origin_box(&["1/2", "1"]));
    assert_eq!(run(&["classify", flat.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["profile", "--range", "1/4,3/4"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--only", "1,2"]).status.code(), Some(0));
}

#[test]
fn verify_reports_the_literal_equality_case() {
    let out = run(&["verify", "--only", "5", "--verbose"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ok equality iff every column is an end interval and columns nest"), "{text}");
    assert!(text.contains("FAILED equality only for isometric images"), "{text}");
}
