//! End-to-end runs of the `asgen` binary.

use std::path::Path;
use std::process::{Command, Output};

fn asgen(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asgen"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn generate_single_file_with_region_table() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("regions.csv"),
        asgraph_cli::regions::DEFAULT_REGIONS_CSV,
    )
    .unwrap();
    let out = asgen(
        dir.path(),
        &[
            "generate",
            "--model",
            "geodined",
            "--nodes",
            "15000",
            "--m",
            "2.11",
            "--p",
            "0.07",
            "--alpha",
            "0.5",
            "--regions",
            "regions.csv",
            "--seed",
            "1",
            "--out",
            "g.el",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(dir.path().join("g.el")).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("N ")).count(), 15_000);
    assert!(text.contains("# seed=1\n") && text.contains("# regions=26\n"));
}

#[test]
fn runs_write_numbered_files_with_offset_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = asgen(
        dir.path(),
        &[
            "generate", "--model", "dined", "--nodes", "200", "--seed", "5", "--runs", "10",
            "--out", "g.el",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    for r in 0..10 {
        let text = std::fs::read_to_string(dir.path().join(format!("g.{r}.el"))).unwrap();
        assert!(text.contains(&format!("# seed={}\n", 5 + r)));
    }
    assert!(!dir.path().join("g.el").exists());
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let ba = asgen(
        dir.path(),
        &["generate", "--model", "ba", "--m", "2.5", "--out", "g.el"],
    );
    assert_eq!(ba.status.code(), Some(1));
    assert!(stderr(&ba).contains("integer m"), "{}", stderr(&ba));
    let predict = asgen(dir.path(), &["predict", "--m", "1", "--p", "0"]);
    assert_eq!(predict.status.code(), Some(1));
    let unknown = asgen(dir.path(), &["generate", "--bogus"]);
    assert_eq!(unknown.status.code(), Some(1));
    let help = asgen(dir.path(), &["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("generate"));
}

#[test]
fn unwritable_output_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = asgen(
        dir.path(),
        &["generate", "--nodes", "50", "--out", "missing/dir/g.el"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn predict_prints_theory() {
    let dir = tempfile::tempdir().unwrap();
    let out = asgen(dir.path(), &["predict", "--m", "2.11", "--p", "0.07"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let gamma = json["prediction"]["gamma"].as_f64().unwrap();
    let leaves = json["prediction"]["leaf_fraction"].as_f64().unwrap();
    assert!((gamma - 2.37).abs() < 0.005, "{gamma}");
    assert!((leaves - 0.481).abs() < 0.0005, "{leaves}");
    assert!(json["prediction"]["max_in_degree"].is_null());
}

#[test]
fn analyze_small_symmetric_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("tiny.el"),
        "# note: hand written\nN 0 0\nN 1 0\nN 2 0\nE 0 1\nE 1 0\nE 2 1\n",
    )
    .unwrap();
    let out = asgen(
        dir.path(),
        &["analyze", "--graph", "tiny.el", "--symmetric"],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["graphs"][0]["symmetric_fraction"].as_f64(), Some(0.5));
    assert_eq!(json["graphs"][0]["file"].as_str(), Some("tiny.el"));
}

#[test]
fn corrupted_line_is_named() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.el"), "N 0 0\nN 1 0\nE 0 1\nE 1 zero\n").unwrap();
    let out = asgen(dir.path(), &["analyze", "--graph", "bad.el", "--all"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));
}

#[test]
fn analyze_needs_a_section() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("g.el"), "N 0 0\nN 1 0\nE 0 1\n").unwrap();
    let out = asgen(dir.path(), &["analyze", "--graph", "g.el"]);
    assert_eq!(out.status.code(), Some(1));
    let missing = asgen(
        dir.path(),
        &["analyze", "--graph", "nothing.*.el", "--leaves"],
    );
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn glob_analysis_is_deterministic_and_aggregated() {
    let dir = tempfile::tempdir().unwrap();
    let gen = asgen(
        dir.path(),
        &[
            "generate", "--nodes", "1500", "--runs", "3", "--seed", "1", "--out", "g.el",
        ],
    );
    assert!(gen.status.success());
    let args = [
        "analyze",
        "--graph",
        "g.*.el",
        "--all",
        "--inflation-samples",
        "100",
        "--inflation-seed",
        "9",
    ];
    let a = asgen(dir.path(), &args);
    let b = asgen(dir.path(), &args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let graphs = json["aggregate"]["graphs"].as_array().unwrap();
    assert_eq!(graphs.len(), 3);
    assert_eq!(graphs[2]["seed"].as_u64(), Some(3));
    assert_eq!(json["graphs"][1]["inflation"]["seed"].as_u64(), Some(10));
    assert_eq!(
        json["aggregate"]["metrics"]["leaf_fraction"]["count"].as_u64(),
        Some(3)
    );
    assert!(
        json["theory"]["prediction"]["max_in_degree"]
            .as_f64()
            .unwrap()
            > 1.0
    );
    assert_eq!(
        json["settings"]["peer_policy"].as_str(),
        Some("single-peak")
    );
}
