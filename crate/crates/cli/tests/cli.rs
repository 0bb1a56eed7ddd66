use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nilham(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilham"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

/// Writes a group table file through `export` and returns its path.
fn export(name: &str, dir: &Path) -> String {
    let file = format!("{}.json", name.replace([':', ','], "_"));
    let out = nilham(
        &[
            "export",
            "--group",
            &format!("builtin:{name}"),
            "--out",
            &file,
        ],
        dir,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    file
}

#[test]
fn q8_two_generator_path_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let q8 = export("q8", dir.path());
    let out = nilham(
        &[
            "hampath",
            "--group",
            &q8,
            "--gens",
            "i,j",
            "--algorithm",
            "2gen",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let w = json(&out);
    assert_eq!(w["steps"].as_array().unwrap().len(), 7);
    assert_eq!(w["verified"], true);
    assert_eq!(w["kind"], "path");
}

#[test]
fn z4_pgroup_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let z4 = export("z4", dir.path());
    let out = nilham(
        &[
            "hamcycle",
            "--group",
            &z4,
            "--gens",
            "1",
            "--algorithm",
            "pgroup",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["steps"], serde_json::json!(["1", "1", "1", "1"]));
}

#[test]
fn non_nilpotent_group_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("s3.json"),
        r#"{"name": "s3", "degree": 3, "perm_gens": [[1, 0, 2], [1, 2, 0]]}"#,
    )
    .unwrap();
    let out = nilham(
        &[
            "hampath",
            "--group",
            "s3.json",
            "--gens",
            "(0 1),(0 1 2)",
            "--algorithm",
            "2gen",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotNilpotent"));
}

#[test]
fn walk_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let out = nilham(
        &[
            "hampath",
            "--group",
            "builtin:product:q8,z3",
            "--gens",
            "(i,1),(j,0)",
            "--out",
            "w.json",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = nilham(&["verify", "--walk", "w.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verified"], true);

    let text = std::fs::read_to_string(dir.path().join("w.json")).unwrap();
    let mut w: Value = serde_json::from_str(&text).unwrap();
    w["steps"].as_array_mut().unwrap().pop();
    w["vertices"].as_array_mut().unwrap().pop();
    std::fs::write(dir.path().join("short.json"), w.to_string()).unwrap();
    let out = nilham(&["verify", "--walk", "short.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verified"], false);
}

#[test]
fn format_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = nilham(
        &["hampath", "--group", "missing.json", "--gens", "1"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(
        dir.path().join("bad.json"),
        r#"{"name": "x", "labels": [], "extra": 1}"#,
    )
    .unwrap();
    let out = nilham(&["analyze", "--group", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = nilham(
        &["hampath", "--group", "builtin:q8", "--gens", "i,x"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let out = nilham(
        &[
            "hampath",
            "--group",
            "builtin:q8",
            "--gens",
            "i,j",
            "--algorithm",
            "magic",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn auto_selection() {
    let dir = tempfile::tempdir().unwrap();
    let out = nilham(
        &["hampath", "--group", "builtin:z6", "--gens", "2,3"],
        dir.path(),
    );
    assert_eq!(
        json(&out)["steps"],
        serde_json::json!(["2", "2", "3", "2", "2"])
    );
    let out = nilham(
        &["hamcycle", "--group", "builtin:q8", "--gens", "i,j"],
        dir.path(),
    );
    assert_eq!(
        json(&out)["steps"],
        serde_json::json!(["i", "j", "i", "j", "i", "j", "i", "j"])
    );
    let out = nilham(
        &["hamcycle", "--group", "builtin:z6", "--gens", "2,3"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Unsupported"));
}

#[test]
fn coset_and_arcforcing_algorithms() {
    let dir = tempfile::tempdir().unwrap();
    let out = nilham(
        &[
            "hamcycle",
            "--group",
            "builtin:z4",
            "--gens",
            "1,3",
            "--algorithm",
            "coset",
        ],
        dir.path(),
    );
    assert_eq!(json(&out)["steps"], serde_json::json!(["1", "1", "1", "1"]));
    let out = nilham(
        &[
            "hampath",
            "--group",
            "builtin:z6",
            "--gens",
            "2,5",
            "--algorithm",
            "arcforcing",
        ],
        dir.path(),
    );
    assert_eq!(
        json(&out)["steps"],
        serde_json::json!(["2", "2", "5", "2", "2"])
    );
}

#[test]
fn analyze_reports_structure() {
    let dir = tempfile::tempdir().unwrap();
    let out = nilham(
        &["analyze", "--group", "builtin:q8", "--gens", "i,j"],
        dir.path(),
    );
    let a = json(&out);
    assert_eq!(a["order"], 8);
    assert_eq!(a["nilpotent"], true);
    assert_eq!(a["gens"]["arc_forcing"]["order"], 4);
    assert_eq!(a["gens"]["series"]["orders"], serde_json::json!([4]));
}

#[test]
fn oracle_and_dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let out = nilham(
        &[
            "oracle",
            "--group",
            "builtin:q8",
            "--gens",
            "i,j",
            "--kind",
            "cycle",
            "--out",
            "o.json",
        ],
        dir.path(),
    );
    assert_eq!(json(&out)["result"], "found");
    let out = nilham(
        &[
            "export",
            "--group",
            "builtin:q8",
            "--gens",
            "i,j",
            "--walk",
            "o.json",
            "--dot",
            "q8.dot",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let dot = std::fs::read_to_string(dir.path().join("q8.dot")).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 16);
    assert_eq!(dot.matches("bold").count(), 8);

    let out = nilham(
        &[
            "oracle",
            "--group",
            "builtin:z4",
            "--gens",
            "1",
            "--budget",
            "0",
        ],
        dir.path(),
    );
    assert_eq!(json(&out)["result"], "timeout");
}

#[test]
fn harness_on_a_small_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out = nilham(
        &[
            "harness",
            "--group",
            "z4",
            "--group",
            "builtin:s3",
            "--seed",
            "7",
            "--out",
            "r.jsonl",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = std::fs::read_to_string(dir.path().join("r.jsonl")).unwrap();
    let records: Vec<Value> = report
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(records
        .iter()
        .any(|r| r["group"] == "s3" && r["outcome"] == "rejected"));
    assert!(records.iter().all(|r| r["outcome"] != "fail"));
}
