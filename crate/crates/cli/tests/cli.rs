use std::path::PathBuf;
use std::process::{Command, Output};

use torus_radon_cli::{read_csv, OracleStatus, Table, VerifyReport};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-radon")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn catalog_lists_bundled_entries() {
    let o = run(&["catalog"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let sphere4: Vec<&str> = text.lines().find(|l| l.starts_with("sphere-4 ")).unwrap().split_whitespace().collect();
    // name system rank dim-a |Sigma+| flavor
    assert_eq!(sphere4[4], "1");
    assert!(text.lines().any(|l| l.starts_with("sphere-2 ")));
}

#[test]
fn malformed_catalog_reports_line() {
    let path = fixture("malformed.toml");
    let o = run(&["--catalog", path.to_str().unwrap(), "catalog"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 6"), "{}", stderr(&o));
    let path = fixture("not_involution.toml");
    let o = run(&["--catalog", path.to_str().unwrap(), "catalog"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 10"), "{}", stderr(&o));
    let o = run(&["--catalog", "/definitely/missing.toml", "catalog"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn analyze_reports_lattices_and_injectivity() {
    let o = run(&["analyze", "sphere-2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("index [Lambda hat : Lambda]: 2"));
    assert!(text.contains("injective: no"));
    assert!(stdout(&run(&["analyze", "rp-2"])).contains("injective: yes"));
    assert!(stdout(&run(&["analyze", "group-su2"])).contains("Lambda rank: 1"));
    assert_eq!(code(&run(&["analyze", "no-such-space"])), 2);
}

#[test]
fn test_weight_verdicts_and_input_errors() {
    let o = run(&["test-weight", "sphere-2", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdict: InKernel"));
    assert!(stdout(&run(&["test-weight", "sphere-2", "0"])).contains("verdict: DescendsToAdjoint"));
    assert!(stdout(&run(&["test-weight", "su3-mod-so3", "2", "0"])).contains("verdict: InKernel"));
    assert!(stdout(&run(&["test-weight", "su3-mod-so3", "1", "1"])).contains("verdict: NotSpherical"));
    for bad in [&["sphere-2", "-2"][..], &["sphere-2", "1"], &["sphere-2", "x"], &["sphere-2", "2", "2"]] {
        let mut args = vec!["test-weight"];
        args.extend_from_slice(bad);
        let o = run(&args);
        assert_eq!(code(&o), 3, "{bad:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn enumerate_tables_are_deterministic_and_round_trip() {
    let o = run(&["enumerate", "sphere-2", "--bound", "6", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let table: Table = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(table.schema, 1);
    assert_eq!(table.rows.len(), 4);
    assert_eq!(table.rows.iter().map(|r| r.omega[0]).collect::<Vec<_>>(), vec![0, 2, 4, 6]);
    assert_eq!(stdout(&run(&["enumerate", "sphere-2", "--bound", "6", "--format", "json"])), stdout(&o));

    let csv = run(&["enumerate", "sphere-2", "--bound", "6", "--format", "csv"]);
    assert_eq!(read_csv(&stdout(&csv)).unwrap(), table.rows);
    let csv = run(&["enumerate", "su3-mod-so3", "--bound", "6", "--format", "csv"]);
    let json: Table = serde_json::from_str(&stdout(&run(&["enumerate", "su3-mod-so3", "--bound", "6"]))).unwrap();
    assert_eq!(read_csv(&stdout(&csv)).unwrap(), json.rows);

    let zero: Table = serde_json::from_str(&stdout(&run(&["enumerate", "sphere-2", "--bound", "0"]))).unwrap();
    assert_eq!(zero.rows.len(), 1);
    assert_eq!(code(&run(&["enumerate", "sphere-2", "--bound", "-1"])), 3);
    assert_eq!(code(&run(&["enumerate", "sphere-2", "--bound", "1000"])), 3);
    assert_eq!(code(&run(&["enumerate", "sphere-2", "--bound", "2", "--format", "xml"])), 3);
}

#[test]
fn verify_confirms_and_catches_faults() {
    let o = run(&["verify", "sphere-2", "--bound", "4", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.oracles.len(), 2);
    assert!(report.rows.iter().all(|r| r.row.oracle == OracleStatus::Confirmed));

    let o = run(&["verify", "cp-2", "--bound", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("warning"));
    assert!(stdout(&o).contains("unchecked"));

    let path = fixture("faulty_theta.toml");
    let o = run(&["--catalog", path.to_str().unwrap(), "verify", "su3-mod-so3", "--bound", "2"]);
    assert_eq!(code(&o), 1);
    let err = stderr(&o);
    assert!(err.contains("omega = ["), "{err}");
    assert!(err.contains("symbolic") && err.contains("matrix oracle"), "{err}");
}

#[test]
fn funk_table_and_flags() {
    let o = run(&["--seed", "7", "funk", "--l", "4", "--samples", "12", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 25);
    assert_eq!(code(&run(&["funk", "--l", "2", "--samples", "2"])), 3);
    assert_eq!(code(&run(&["--tolerance=-1", "catalog"])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
}
