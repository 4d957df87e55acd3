use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn affprox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affprox"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn solve_golden_instances() {
    for (file, d, c) in [
        ("square.json", "1/2", "1"),
        ("identity_segment.json", "0", "0"),
        ("triangle.json", "1", "2"),
    ] {
        let out = affprox(&["solve", data(file).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        let report = json(&out);
        assert_eq!(report["status"], "verified");
        assert_eq!(report["d"], d, "{file}");
        assert_eq!(report["c"], c, "{file}");
        assert!(report["timing"]["elapsed_us"].is_u64());
    }
}

#[test]
fn envelope_gap_and_check() {
    let square = data("square.json");
    let square = square.to_str().unwrap();

    let env = json(&affprox(&["envelope", square, "--at", "1/2"]));
    assert_eq!(env["f_lower"], "0");
    assert_eq!(env["f_upper"], "1");
    assert_eq!(env["r"], "1");

    let gap = json(&affprox(&[
        "gap",
        data("identity_segment.json").to_str().unwrap(),
    ]));
    assert_eq!(gap["c"], "0");

    let check = json(&affprox(&["check", square, "--h", "0", "0"]));
    assert_eq!(check["norm"], "1");
    assert_eq!(check["bound"], "1/2");
    assert_eq!(check["holds"], true);
    assert_eq!(check["optimal"], false);

    let check = json(&affprox(&["check", square, "--h", "0", "1/2"]));
    assert_eq!(check["norm"], "1/2");
    assert_eq!(check["optimal"], true);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = affprox(&[
        "gap",
        data("triangle.json").to_str().unwrap(),
        "--output",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(target).unwrap(), stdout(&out));
}

#[test]
fn gen_is_deterministic_and_solvable() {
    let args = [
        "gen",
        "--seed",
        "7",
        "--dim-c",
        "3",
        "--dim-d",
        "2",
        "--vertices",
        "6",
    ];
    let a = affprox(&args);
    let b = affprox(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "gen.json", &stdout(&a));
    let report = json(&affprox(&["solve", &path]));
    assert_eq!(report["status"], "verified");
}

#[test]
fn oracle_reports_upper_bound() {
    let out = affprox(&[
        "oracle",
        data("square.json").to_str().unwrap(),
        "--depth",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let approx: f64 = report["d_decimal"].as_str().unwrap().parse().unwrap();
    assert!((approx - 0.5).abs() <= 1e-3);
    assert!(approx >= 0.5);
}

#[test]
fn invalid_instances_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let square = std::fs::read_to_string(data("square.json")).unwrap();
    let widened = square.replace(r#"[["0"], ["1"]]"#, r#"[["0"], ["2"]]"#);
    assert_ne!(square, widened);
    let path = write_temp(&dir, "wide.json", &widened);
    let out = affprox(&["solve", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("D_vertices") && err.contains("#1"), "{err}");

    let ragged = square.replace(r#"["1", "1"]"#, r#"["1"]"#);
    let path = write_temp(&dir, "ragged.json", &ragged);
    assert_eq!(affprox(&["solve", &path]).status.code(), Some(2));

    let bad_gen = affprox(&[
        "gen",
        "--seed",
        "1",
        "--dim-c",
        "1",
        "--dim-d",
        "2",
        "--vertices",
        "3",
    ]);
    assert_eq!(bad_gen.status.code(), Some(2));
}

#[test]
fn malformed_files_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let square = std::fs::read_to_string(data("square.json")).unwrap();
    let zero_denominator = square.replacen(r#""1", "0""#, r#""1/0", "0""#, 1);
    let path = write_temp(&dir, "zero.json", &zero_denominator);
    let out = affprox(&["solve", &path]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("C_vertices[1][0]") && err.contains("1/0"),
        "{err}"
    );

    let path = write_temp(
        &dir,
        "float.json",
        &square.replace(r#""constant": "0""#, r#""constant": 0.5"#),
    );
    assert_eq!(affprox(&["solve", &path]).status.code(), Some(3));

    let path = write_temp(&dir, "junk.json", "not json");
    assert_eq!(affprox(&["solve", &path]).status.code(), Some(3));

    let out = affprox(&[
        "envelope",
        data("square.json").to_str().unwrap(),
        "--at",
        "x",
    ]);
    assert_eq!(out.status.code(), Some(3));
}
