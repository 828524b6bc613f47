mod common;

use std::path::Path;
use std::process::{Command, Output};

use moore_l::arith::parse_rational;
use moore_l_cli::report::ReportDocument;
use serde_json::Value;

const APPENDIX: [(u64, [&str; 8]); 3] = [
    (3, ["0", "4/3", "0", "796/3", "0", "1409884/3", "0", "10595003836/3"]),
    (
        5,
        [
            "0",
            "1136",
            "0",
            "607045659856/5",
            "0",
            "1293561684322985119376",
            "0",
            "1280828318043498475058726863755856/5",
        ],
    ),
    (
        7,
        [
            "0",
            "17624384",
            "0",
            "60081275301219900531392",
            "0",
            "1448428968939581787932808098954336691322688/7",
            "0",
            "58235259522755629726600502123583976556247364608948281462604992",
        ],
    ),
];

fn moore_l(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moore-l"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_doc(args: &[&str]) -> (ReportDocument, Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = moore_l(&all);
    let text = stdout(&out);
    let doc: ReportDocument = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    let raw: Value = serde_json::from_str(&text).unwrap();
    (doc, raw, out.status.code().unwrap())
}

fn validator() -> common::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    common::Validator::new(serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap())
}

#[test]
fn golden_value_tables() {
    for (p, expected) in APPENDIX {
        let out = moore_l(&["values", "--p", &p.to_string(), "--n-max", "8"]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        let golden_path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/values_p{p}.txt"));
        assert_eq!(text, std::fs::read_to_string(golden_path).unwrap(), "p={p}");
        let column: Vec<&str> = text
            .lines()
            .skip(2)
            .take(8)
            .map(|l| l.split_whitespace().nth(1).unwrap())
            .collect();
        assert_eq!(column, expected.to_vec(), "p={p}");
    }
}

#[test]
fn factorization_column() {
    let (doc, _, _) = json_doc(&["values", "--p", "3", "--n-max", "6", "--factor-bound", "1171"]);
    assert_eq!(doc.rows[5]["factorization"], "2^2·7·43·1171");
    assert_eq!(doc.rows[5]["fully_factored"], true);
    let (doc, _, _) = json_doc(&["values", "--p", "3", "--n-max", "6", "--factor-bound", "10"]);
    assert_eq!(doc.rows[5]["factorization"], "2^2·7·C(50353)");
    assert_eq!(doc.rows[5]["fully_factored"], false);
}

#[test]
fn json_round_trips_and_matches_schema() {
    let v = validator();
    let runs: Vec<Vec<&str>> = vec![
        vec!["values", "--p", "5", "--n-max", "8"],
        vec!["verify", "--p", "3", "--n-max", "12"],
        vec!["carlitz", "--p", "3", "--n-max", "6"],
        vec!["euler", "--p", "3", "--s", "2", "--prime-bound", "10000"],
        vec!["functional", "--p", "3", "--n", "2", "--prime-bound", "100000"],
        vec!["probability", "--p", "3", "--prime-bound", "100000", "--samples", "5000", "--seed", "3"],
        vec!["congruence", "--p", "3", "--j-max", "2"],
        vec!["homotopy", "--p", "3", "--n", "4"],
    ];
    for args in runs {
        let (doc, raw, code) = json_doc(&args);
        assert_eq!(code, 0, "{args:?}");
        let errors = v.errors(&raw);
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        assert_eq!(serde_json::to_value(&doc).unwrap(), raw);
        assert_eq!(doc.command.timestamp, "2023-11-14T22:13:20Z");
    }
}

#[test]
fn exact_values_are_strings() {
    let (doc, _, _) = json_doc(&["values", "--p", "7", "--n-max", "8"]);
    for (row, expected) in doc.rows.iter().zip(APPENDIX[2].1) {
        let s = row["value"].as_str().expect("string value");
        assert_eq!(parse_rational(s).unwrap(), parse_rational(expected).unwrap());
    }
}

#[test]
fn documented_examples() {
    let (doc, _, _) = json_doc(&["homotopy", "--p", "3", "--n", "4"]);
    assert_eq!(doc.rows[0]["order"], 3);
    let (doc, _, _) = json_doc(&["values", "--p", "7", "--n-max", "2"]);
    assert_eq!(doc.rows[1]["value"], "17624384");
    let (doc, _, code) = json_doc(&["probability", "--p", "3", "--samples", "0", "--prime-bound", "100000"]);
    assert_eq!(code, 0);
    assert_eq!(doc.rows[0]["exact"], "59049/(64π^6)");
    assert!((doc.rows[0]["value"].as_f64().unwrap() - 0.9597).abs() < 1e-4);
    let (doc, _, code) = json_doc(&["congruence", "--p", "3", "--j-max", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc.rows[1]["a_difference_valuation"], "0");
}

#[test]
fn verify_sweeps() {
    for (p, n) in [("3", "40"), ("5", "40"), ("13", "30")] {
        let (doc, _, code) = json_doc(&["verify", "--p", p, "--n-max", n]);
        assert_eq!(code, 0, "p={p}");
        assert!(doc.rows.iter().all(|r| r["consistent"] == true));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(moore_l(&["values", "--p", "4"]).status.code(), Some(2));
    assert_eq!(moore_l(&["values"]).status.code(), Some(2));
    assert_eq!(moore_l(&["bogus"]).status.code(), Some(2));
    assert_eq!(moore_l(&["euler", "--p", "3", "--s", "1"]).status.code(), Some(2));
    // A tolerance no truncated product can meet is a mathematical mismatch.
    let out = moore_l(&["probability", "--p", "3", "--prime-bound", "100", "--tol", "0", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).ends_with("status: fail\n"));
}

#[test]
fn deterministic_output() {
    let args = ["probability", "--p", "3", "--prime-bound", "50000", "--samples", "20000", "--seed", "9", "--format", "json"];
    let a = stdout(&moore_l(&args));
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "1"]);
    let b = stdout(&moore_l(&threaded));
    assert_eq!(a, b);
}

#[test]
fn cache_never_changes_results() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("bernoulli.json");
    let cache_arg = cache.to_str().unwrap();
    let plain = stdout(&moore_l(&["values", "--p", "5", "--n-max", "8"]));
    let first = stdout(&moore_l(&["values", "--p", "5", "--n-max", "8", "--cache-path", cache_arg]));
    assert!(cache.exists());
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(&cache).unwrap()).unwrap();
    assert!(stored.get("5:4:2").is_some());
    let second = stdout(&moore_l(&["values", "--p", "5", "--n-max", "8", "--cache-path", cache_arg]));
    std::fs::remove_file(&cache).unwrap();
    let third = stdout(&moore_l(&["values", "--p", "5", "--n-max", "8", "--cache-path", cache_arg]));
    assert_eq!(plain, first);
    assert_eq!(first, second);
    assert_eq!(second, third);
    let leftovers: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 1);
}

#[test]
fn schema_rejects_malformed_documents() {
    let v = validator();
    let (_, raw, _) = json_doc(&["homotopy", "--p", "3", "--n", "4"]);
    assert!(v.errors(&raw).is_empty());
    let mut bad = raw.clone();
    bad["status"] = Value::from("maybe");
    assert!(!v.errors(&bad).is_empty());
    let mut bad = raw.clone();
    bad["rows"][0]["value"] = Value::from("1.5");
    assert!(!v.errors(&bad).is_empty());
    let mut bad = raw;
    bad["command"].as_object_mut().unwrap().remove("timestamp");
    assert!(!v.errors(&bad).is_empty());
}
