use std::process::{Command, Output};

use serde_json::Value;

fn flateta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flateta"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_rows(args: &[&str]) -> Vec<csv::StringRecord> {
    let out = flateta(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    csv::Reader::from_reader(out.stdout.as_slice())
        .records()
        .map(Result::unwrap)
        .collect()
}

#[test]
fn tricosm_invariants_csv() {
    let out = flateta(&[
        "invariants",
        "--p",
        "3",
        "--a",
        "1",
        "--b",
        "0",
        "--c",
        "1",
        "--format",
        "csv",
    ]);
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "p,a,b,c,n,exceptional,structure,h,ell,eta,dim_ker,eta_bar,eta_bar_mod_Z,relative_mod_Z"
    );
    let rows = csv_rows(&[
        "invariants",
        "--p",
        "3",
        "--a",
        "1",
        "--b",
        "0",
        "--c",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(rows.len(), 6);
    let etas: Vec<&str> = rows.iter().map(|r| r.get(9).unwrap()).collect();
    assert_eq!(etas, ["-2/3", "1/3", "1/3", "4/3", "-2/3", "-2/3"]);
    assert!(rows
        .iter()
        .all(|r| r.get(12) == Some("2/3") && r.get(13) == Some("0")));
}

#[test]
fn non_exceptional_rows_have_zero_eta() {
    let rows = csv_rows(&[
        "invariants",
        "--p",
        "5",
        "--a",
        "1",
        "--b",
        "1",
        "--c",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(rows.len(), 40);
    assert!(rows.iter().all(|r| r.get(9) == Some("0")));
}

#[test]
fn csv_and_json_agree() {
    let base = ["invariants", "--p", "7", "--a", "1", "--b", "0", "--c", "3"];
    let rows = csv_rows(&[&base[..], &["--format", "csv"]].concat());
    let json: Value = serde_json::from_str(&stdout(&flateta(
        &[&base[..], &["--format", "json"]].concat(),
    )))
    .unwrap();
    let items = json.as_array().unwrap();
    assert_eq!(items.len(), rows.len());
    for (row, item) in rows.iter().zip(items) {
        for (i, key) in [
            "eta",
            "dim_ker",
            "eta_bar",
            "eta_bar_mod_Z",
            "relative_mod_Z",
        ]
        .iter()
        .enumerate()
        {
            assert_eq!(Some(item[key].as_str().unwrap()), row.get(9 + i));
        }
    }
}

#[test]
fn table_output_has_header_and_rows() {
    let out = flateta(&["invariants", "--p", "3", "--a", "1", "--b", "0", "--c", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().next().unwrap().contains("eta_bar_mod_Z"));
}

#[test]
fn invalid_prime_exits_2() {
    let out = flateta(&["invariants", "--p", "4", "--a", "1", "--b", "0", "--c", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p must be an odd prime"));
}

#[test]
fn verify_integrality_flags_tricosm() {
    let out = flateta(&[
        "verify",
        "--suite",
        "integrality",
        "--p-max",
        "13",
        "--n-max",
        "60",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["suite"], "integrality");
    assert!(report["failures"].as_array().unwrap().is_empty());
    assert_eq!(
        report["expected_exceptions"],
        serde_json::json!(["(3,1,0,1)"])
    );
}

#[test]
fn verify_reports_identical_across_jobs() {
    let args = [
        "verify", "--suite", "dimker", "--p-max", "7", "--n-max", "30",
    ];
    let one = flateta(&[&args[..], &["--jobs", "1"]].concat());
    let four = flateta(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn verify_oracles_and_appendix_pass() {
    assert_eq!(
        flateta(&["verify", "--suite", "oracles", "--p-max", "31"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        flateta(&["verify", "--suite", "appendix", "--p-max", "31"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn unknown_suite_exits_2() {
    assert_eq!(
        flateta(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
}

fn series_delta(args: &[&str]) -> f64 {
    let out = flateta(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let line = text.lines().find(|l| l.starts_with("delta")).unwrap();
    line.split_whitespace().nth(1).unwrap().parse().unwrap()
}

#[test]
fn series_matches_spectral_sum() {
    let d = series_delta(&[
        "series", "--p", "3", "--a", "1", "--h", "1", "--ell", "0", "--s", "4", "--terms", "10000",
    ]);
    assert!(d < 1e-6);
    let d = series_delta(&[
        "series", "--p", "7", "--a", "1", "--h", "2", "--ell", "3", "--s", "4", "--terms", "10000",
    ]);
    assert!(d < 1e-6);
}

#[test]
fn series_rejects_bad_input() {
    let non_exc = [
        "series", "--p", "5", "--a", "1", "--b", "1", "--c", "2", "--h", "1", "--ell", "0", "--s",
        "4",
    ];
    assert_eq!(flateta(&non_exc).status.code(), Some(2));
    let low_s = [
        "series", "--p", "3", "--a", "1", "--h", "1", "--ell", "0", "--s", "1",
    ];
    assert_eq!(flateta(&low_s).status.code(), Some(2));
}

#[test]
fn class_numbers() {
    let out = flateta(&["classnumber", "--p", "23"]);
    assert_eq!(stdout(&out).trim(), "3");
    assert_eq!(
        flateta(&["classnumber", "--p", "13"]).status.code(),
        Some(2)
    );
}

#[test]
fn tricosm_holonomy_json() {
    let out = flateta(&["holonomy", "--p", "3", "--a", "1", "--b", "0", "--c", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["p"], 3);
    assert_eq!(doc["blocks"], serde_json::json!(["C_3", "1"]));
    assert_eq!(
        doc["matrix"],
        serde_json::json!([[0, -1, 0], [1, -1, 0], [0, 0, 1]])
    );
    assert_eq!(doc["checks"]["char_poly_ok"], true);
}

#[test]
fn holonomy_writes_file() {
    let path = std::env::temp_dir().join(format!("flateta-holonomy-{}.json", std::process::id()));
    let out = flateta(&[
        "holonomy",
        "--p",
        "5",
        "--a",
        "2",
        "--b",
        "1",
        "--c",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(doc["matrix"].as_array().unwrap().len(), 16);
}
