use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn atlas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_systolic-atlas")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = atlas(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    atlas(args).status.code()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

fn assert_valid(name: &str, doc: &Value) {
    let v = schema(name);
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(text.as_bytes()).records().map(Result::unwrap).collect()
}

#[test]
fn tree_stats() {
    let v: Value = serde_json::from_str(&ok(&["tree", "--n", "2"])).unwrap();
    assert_eq!(v["stats"]["vertices"], 10);
    assert_eq!(v["stats"]["leaves"], 6);
    assert_valid("tree", &v);

    let v: Value = serde_json::from_str(&ok(&["tree", "--genus", "7"])).unwrap();
    assert_eq!(v["stats"]["leaves"], 7);
    assert_eq!(v["stats"]["surface_genus"], 7);
    assert_valid("tree", &v);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&["tree", "--n", "0"]), Some(2));
    assert_eq!(code(&["tree"]), Some(2));
    assert_eq!(code(&["tree", "--n", "1", "--genus", "3"]), Some(2));
    assert_eq!(code(&["systole", "--family", "tree", "--genus", "3"]), Some(2));
    assert_eq!(code(&["systole", "--family", "rot", "--genus", "2", "--param", "c1", "--c", "2"]), Some(2));
    assert_eq!(code(&["bounds", "--which", "small", "--genus-range", "5..2"]), Some(2));
    assert_eq!(code(&["bounds", "--which", "small", "--genus-range", "x"]), Some(2));
    assert_eq!(code(&["thresholds", "--points", "0"]), Some(2));
    assert_eq!(code(&["bogus"]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn thread_cap_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_systolic-atlas"))
        .args(["tree", "--n", "1"])
        .env("SYSTOLIC_ATLAS_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_systolic-atlas"))
        .args(["tree", "--n", "1"])
        .env("SYSTOLIC_ATLAS_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn systole_tree_genus_three() {
    let out = atlas(&["systole", "--family", "tree", "--genus", "3", "--cutoff", "1.4"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("length,word\n"));
    let rows = csv_rows(&stdout);
    assert_eq!(rows.len(), 3);
    for r in &rows {
        assert_eq!(&r[0], "1.31695789692482");
    }
    let words: Vec<&str> = rows.iter().map(|r| r.get(1).unwrap()).collect();
    let mut sorted = words.clone();
    sorted.sort();
    assert_eq!(words, sorted);
    assert_eq!(String::from_utf8(out.stderr).unwrap().trim(), "systole 1.31695789692482 count 3");
}

#[test]
fn systole_rotation_family_json() {
    let text = ok(&["systole", "--family", "rot", "--genus", "2", "--param", "c1", "--format", "json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_valid("systole", &v);
    assert_eq!(v["count"], 6);
    let c1 = 4.0 * (std::f64::consts::FRAC_PI_3.cos().sqrt()).asinh();
    assert!((v["systole"].as_f64().unwrap() - c1).abs() < 1e-9);
}

#[test]
fn systole_budget_exceeded_exits_three_without_output() {
    let out = atlas(&["systole", "--family", "tree", "--genus", "3", "--cutoff", "3.0", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn bounds_small() {
    let rows = csv_rows(&ok(&["bounds", "--which", "small", "--genus-range", "2..10"]));
    assert_eq!(rows.len(), 9);
    for r in &rows {
        let total: f64 = r[2].parse().unwrap();
        assert!(total <= 2.3);
        assert_eq!(&r[4], "false");
    }
}

#[test]
fn bounds_large_turns_positive_at_66() {
    let rows = csv_rows(&ok(&["bounds", "--which", "large", "--genus-range", "13..100"]));
    assert_eq!(rows.len(), 88);
    let first = rows.iter().find(|r| &r[4] == "false").unwrap();
    assert_eq!(&first[1], "66");
    assert!(rows.iter().filter(|r| &r[4] == "true").all(|r| r[1].parse::<usize>().unwrap() < 66));
}

#[test]
fn bounds_hole_trivial() {
    let rows = csv_rows(&ok(&["bounds", "--which", "hole", "--genus-range", "3..3"]));
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][2], "0");
}

#[test]
fn bounds_json_validates() {
    for which in ["hole", "small", "large", "wp", "teich"] {
        let range = if which == "large" { "13..15" } else { "3..5" };
        let text = ok(&["bounds", "--which", which, "--genus-range", range, "--format", "json"]);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_valid("bounds", &v);
        assert_eq!(v.as_array().unwrap().len(), 3);
    }
}

#[test]
fn bounds_range_below_minimum_genus_is_usage_error() {
    assert_eq!(code(&["bounds", "--which", "hole", "--genus-range", "2..3"]), Some(2));
    assert_eq!(code(&["bounds", "--which", "large", "--genus-range", "12..20"]), Some(2));
    assert_eq!(code(&["bounds", "--which", "small", "--genus-range", "1..2"]), Some(2));
}

#[test]
fn thresholds_and_constants() {
    let text = ok(&["thresholds", "--points", "5", "--mp-B", "2"]);
    assert!(text.starts_with("log_g,teich_threshold,teich_margin,wp_rounded,wp_recomputed,epsilon,mp_tail\n"));
    assert_eq!(csv_rows(&text).len(), 5);

    let rows = csv_rows(&ok(&["constants"]));
    let get = |k: &str| rows.iter().find(|r| &r[0] == k).unwrap()[1].to_string();
    assert_eq!(get("large_closed_form_crossover_g"), "66");
    assert_eq!(get("wp_coefficient_rounded"), "0.6521");
}

#[test]
fn plot_dilatation() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("k.svg");
    ok(&["plot-dilatation", "--genus", "2", "--out", svg.to_str().unwrap()]);
    let picture = std::fs::read_to_string(&svg).unwrap();
    assert!(picture.starts_with("<svg") && picture.contains("<polyline"));
    let rows = csv_rows(&std::fs::read_to_string(svg.with_extension("csv")).unwrap());
    assert_eq!(rows.len(), 2001);
    let max = rows.iter().map(|r| r[1].parse::<f64>().unwrap()).fold(0.0, f64::max);
    assert!(max.is_finite() && max >= 1.0);
    assert!(0.5 * max.ln() <= 1.6450);

    let flat = dir.path().join("flat.svg");
    ok(&["plot-dilatation", "--genus", "2", "--t2", "0", "--points", "101", "--out", flat.to_str().unwrap()]);
    let rows = csv_rows(&std::fs::read_to_string(flat.with_extension("csv")).unwrap());
    assert_eq!(rows.len(), 101);
    assert!(rows.iter().all(|r| r[1].parse::<f64>().unwrap() == 1.0));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tree.json");
    let stdout = ok(&["tree", "--n", "1", "--out", path.to_str().unwrap()]);
    assert!(stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), ok(&["tree", "--n", "1"]));
}

#[test]
fn shipped_golden_file_validates() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden/rotation_family.json");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_valid("golden", &v);
}

#[test]
fn systole_chain_family() {
    let out = atlas(&["systole", "--family", "chain", "--genus", "3", "--cutoff", "2.5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stderr).unwrap().trim(), "systole 1.00830982617356 count 4");
    assert_eq!(csv_rows(&String::from_utf8(out.stdout).unwrap()).len(), 4);
}
