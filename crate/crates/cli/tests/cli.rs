use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jacobi-cross"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn last_line(o: &Output) -> String {
    stdout(o).lines().last().unwrap_or_default().to_string()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn assert_usage_error(o: &Output) {
    assert_eq!(o.status.code(), Some(2), "stdout: {}", stdout(o));
    assert!(o.stdout.is_empty());
    let err = stderr(o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn spaces_matches_golden() {
    let o = run(&["spaces"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("spaces.txt"));
}

#[test]
fn eval_endpoint_value() {
    let o = run(&["eval", "--alpha", "1", "--beta", "0", "--degree", "3", "--x", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-1\nRESULT: PASS\n");
    let o = run(&["eval", "--alpha", "0", "--beta", "0", "--degree", "2", "--x", "0"]);
    assert_eq!(stdout(&o), "-0.5\nRESULT: PASS\n");
}

#[test]
fn eval_rejects_bad_parameters() {
    assert_usage_error(&run(&["eval", "--alpha", "-1", "--beta", "0", "--degree", "3", "--x", "0"]));
    assert_usage_error(&run(&["eval", "--alpha", "0", "--beta", "0", "--degree", "3", "--x", "nan"]));
    assert_usage_error(&run(&["eval", "--alpha", "0", "--beta", "0", "--degree", "-3", "--x", "0"]));
}

#[test]
fn verify_cutlocus_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let o = run(&[
        "verify-cutlocus",
        "--space",
        "cp:3",
        "--m-schedule",
        "10,100,1000",
        "--tol",
        "1e-2",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("cutlocus_cp3.txt"));
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), golden("cutlocus_cp3.csv"));
}

#[test]
fn verify_cutlocus_default_tolerance_fails_small_m() {
    let o = run(&["verify-cutlocus", "--space", "cp:2", "--m-schedule", "100"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(last_line(&o), "RESULT: FAIL rel_err=3.0200000000000005e-2 tol=5.0000000000000001e-3");
}

#[test]
fn verify_cutlocus_rejects_spheres() {
    assert_usage_error(&run(&["verify-cutlocus", "--space", "sphere:3", "--m-schedule", "10"]));
}

#[test]
fn verify_identity_circle_passes() {
    let o = run(&["verify-identity", "--alpha", "-0.5", "--beta", "-0.5", "--x", "0", "--m-schedule", "1000", "--tol", "3e-3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(last_line(&o), "RESULT: PASS");
}

#[test]
fn verify_identity_accepts_space_names() {
    let by_space = run(&["verify-identity", "--space", "cp:2", "--x", "0.5", "--m-schedule", "geo:100:2:4"]);
    let by_params = run(&["verify-identity", "--alpha", "1", "--beta", "0", "--x", "0.5", "--m-schedule", "100,200,400,800"]);
    assert_eq!(by_space.status.code(), Some(0));
    assert_eq!(stdout(&by_space), stdout(&by_params));
    assert!(stdout(&by_space).contains("fitted_rate=-1.0"));
}

#[test]
fn verify_identity_usage_errors() {
    let base = ["verify-identity", "--m-schedule", "10"];
    let cases: Vec<Vec<&str>> = vec![
        vec!["--alpha", "1", "--beta", "0", "--x", "1"],
        vec!["--alpha", "1", "--beta", "0", "--x", "-1.5"],
        vec!["--space", "cp:2", "--alpha", "1", "--beta", "0", "--x", "0"],
        vec!["--alpha", "1", "--x", "0"],
        vec!["--x", "0"],
        vec!["--space", "torus:2", "--x", "0"],
        vec!["--space", "cp:1", "--x", "0"],
        vec!["--alpha", "1", "--beta", "0", "--x", "0", "--tol", "0"],
    ];
    for extra in cases {
        let args: Vec<&str> = base.iter().copied().chain(extra.iter().copied()).collect();
        assert_usage_error(&run(&args));
    }
    for sched in ["5,5", "10,2", "0", "geo:10:1:3", "geo:10:2", "x"] {
        assert_usage_error(&run(&["verify-identity", "--alpha", "0", "--beta", "0", "--x", "0", "--m-schedule", sched]));
    }
}

#[test]
fn kuznecov_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("k.csv");
    let o = run(&[
        "kuznecov",
        "--space",
        "sphere:1",
        "--target",
        "sphere:1.0",
        "--t-max",
        "1e4",
        "--steps",
        "4",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("T,empirical,predicted,ratio"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 4);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row[0], 1e4 * (i + 1) as f64 / 4.0);
        assert_eq!(row[3], row[1] / row[2]);
    }
}

#[test]
fn kuznecov_usage_errors() {
    assert_usage_error(&run(&["kuznecov", "--space", "sphere:2", "--target", "cutlocus", "--t-max", "100"]));
    assert_usage_error(&run(&["kuznecov", "--space", "cp:2", "--target", "sphere:2.0", "--t-max", "100"]));
    assert_usage_error(&run(&["kuznecov", "--space", "cp:2", "--target", "ball", "--t-max", "100"]));
    assert_usage_error(&run(&["kuznecov", "--space", "cp:2", "--target", "cutlocus", "--t-max", "0"]));
    assert_usage_error(&run(&["kuznecov", "--space", "cp:2", "--target", "cutlocus", "--t-max", "10", "--steps", "0"]));
}

#[test]
fn kuznecov_fails_outside_window() {
    let o = run(&["kuznecov", "--space", "cp:2", "--target", "cutlocus", "--t-max", "400", "--steps", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(last_line(&o).starts_with("RESULT: FAIL rel_err="));
}

#[test]
fn orthogonality_csv_is_full_gram_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("g.csv");
    let o = run(&[
        "orthogonality",
        "--alpha",
        "-0.5",
        "--beta",
        "-0.5",
        "--max-degree",
        "5",
        "--nodes",
        "8",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("i,j,gram_entry,abs_error"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 36);
    for row in rows {
        let f: Vec<&str> = row.split(',').collect();
        let (i, j): (usize, usize) = (f[0].parse().unwrap(), f[1].parse().unwrap());
        let g: f64 = f[2].parse().unwrap();
        let e: f64 = f[3].parse().unwrap();
        assert_eq!(e, (g - if i == j { 1.0 } else { 0.0 }).abs());
        assert!(e <= 1e-13);
    }
}

#[test]
fn orthogonality_underresolved_rule_fails() {
    let o = run(&["orthogonality", "--alpha", "0", "--beta", "0", "--max-degree", "10", "--nodes", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert_usage_error(&run(&["orthogonality", "--alpha", "0", "--beta", "0", "--max-degree", "3", "--nodes", "0"]));
    assert_usage_error(&run(&["orthogonality", "--alpha", "0", "--beta", "0", "--max-degree", "3", "--nodes", "4096"]));
}

#[test]
fn normalization_passes_on_all_families() {
    for space in ["sphere:3", "cp:2", "hp:2", "cap2"] {
        let o = run(&["normalization", "--space", space, "--max-degree", "30"]);
        assert_eq!(o.status.code(), Some(0), "{space}");
        assert_eq!(last_line(&o), "RESULT: PASS");
        assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("l=")).count(), 31);
    }
}

#[test]
fn missing_subcommand_and_unknown_flags() {
    assert_usage_error(&run(&[]));
    assert_usage_error(&run(&["spaces", "--bogus"]));
    assert_usage_error(&run(&["frobnicate"]));
    assert_usage_error(&run(&["spaces", "--threads", "0"]));
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn csv_write_failure_is_reported() {
    let o = run(&["verify-cutlocus", "--space", "cp:2", "--m-schedule", "10", "--csv", "/nonexistent-dir/x.csv"]);
    assert_usage_error(&o);
}
