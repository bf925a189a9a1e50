use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn gtrs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtrs"))
        .args(args)
        .output()
        .expect("run gtrs")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(report: &Value) {
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{report:#}");
}

#[test]
fn decide_single_property_text() {
    let out = gtrs(&["decide", "--property", "cr", &fixture("U.trs")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "CR: NO\n");
}

#[test]
fn decide_all_text_lists_four_verdicts() {
    let out = gtrs(&["decide", &fixture("V.trs")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for p in ["CR", "NFP", "UNC", "UNR"] {
        assert!(text.contains(&format!("{p}: YES")), "{text}");
    }
}

#[test]
fn json_reports_match_schema() {
    for (file, answer) in [("U.trs", "NO"), ("V.trs", "YES")] {
        let out = gtrs(&["decide", "--format", "json", "--witness", "--timings", &fixture(file)]);
        assert_eq!(out.status.code(), Some(0));
        let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_valid(&report);
        for p in ["cr", "nfp", "unc", "unr"] {
            assert_eq!(report["verdicts"][p], answer, "{file} {p}");
        }
        assert!(report["timings_ms"]["total"].is_number());
        let witnesses = report["witnesses"].as_object().unwrap();
        assert_eq!(witnesses.len(), if answer == "NO" { 4 } else { 0 });
    }
}

#[test]
fn deterministic_output_is_byte_identical() {
    let args = ["decide", "--format", "json", "--witness", "--timings", "--deterministic"];
    let run = || stdout(&gtrs(&[&args[..], &[fixture("U.trs").as_str()]].concat()));
    let first = run();
    assert!(!first.contains("timings_ms"));
    assert_eq!(first, run());
}

#[test]
fn missing_file_exits_1() {
    let out = gtrs(&["decide", "/definitely/not/here.trs"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn parse_error_exits_1_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.trs");
    std::fs::write(&path, "(VAR x)\n(RULES f(x) -> a)").unwrap();
    let out = gtrs(&["decide", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("2:10"), "{err}");
}

#[test]
fn unknown_flag_value_is_rejected() {
    let out = gtrs(&["decide", "--property", "sn", &fixture("U.trs")]);
    assert_ne!(out.status.code(), Some(0));
}

fn batch_dir(files: &[(&str, &str)]) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, contents) in files {
        std::fs::write(dir.path().join(name), contents).unwrap();
    }
    dir
}

fn copy_fixture(dir: &Path, name: &str) -> PathBuf {
    let to = dir.join(name);
    std::fs::copy(fixture(name), &to).unwrap();
    to
}

#[test]
fn batch_lists_one_row_per_file() {
    let dir = batch_dir(&[("notes.txt", "ignored")]);
    copy_fixture(dir.path(), "U.trs");
    copy_fixture(dir.path(), "V.trs");
    let out = gtrs(&["batch", "--jobs", "2", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| l.contains(".trs")).collect();
    assert_eq!(rows.len(), 2, "{text}");
    assert!(rows[0].contains("U.trs") && rows[0].contains("NO"));
    assert!(rows[1].contains("V.trs") && !rows[1].contains("NO"));
}

#[test]
fn batch_reports_parse_errors_without_failing() {
    let dir = batch_dir(&[("broken.trs", "(RULES f( -> a)")]);
    copy_fixture(dir.path(), "V.trs");
    let out = gtrs(&["batch", "--format", "json", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let summary: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["files"], 2);
    assert_eq!(summary["decided"], 1);
    assert_eq!(summary["yes"]["cr"], 1);
    let errors = summary["parse_errors"].as_array().unwrap();
    assert_eq!(errors.len(), 1);
    assert!(errors[0]["file"].as_str().unwrap().ends_with("broken.trs"));
    for report in summary["reports"].as_array().unwrap() {
        assert_valid(report);
    }
}

#[test]
fn batch_on_empty_directory() {
    let dir = batch_dir(&[]);
    let out = gtrs(&["batch", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 files"));
}

#[test]
fn batch_on_missing_directory_exits_1() {
    let out = gtrs(&["batch", "/definitely/not/here"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_witness_accepts_own_report() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["U.trs", "fork.trs"] {
        let out = gtrs(&["decide", "--format", "json", "--witness", &fixture(name)]);
        let report = dir.path().join(format!("{name}.json"));
        std::fs::write(&report, &out.stdout).unwrap();
        let out = gtrs(&["check-witness", &fixture(name), report.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).contains("witness verified"));
    }
}

#[test]
fn check_witness_rejects_tampered_report() {
    let out = gtrs(&["decide", "--format", "json", "--witness", "--property", "unc", &fixture("U.trs")]);
    let mut report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    // b and f(b) are convertible; b and b are not two distinct normal forms.
    report["witnesses"]["unc"]["terms"] = serde_json::json!(["b", "b"]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    std::fs::write(&path, report.to_string()).unwrap();
    let out = gtrs(&["check-witness", &fixture("U.trs"), path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}
