//! End-to-end tests driving the compiled `clf` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn clf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clf"))
        .args(args)
        // Keep the ambient environment from influencing tests.
        .env_remove("CLF_CACHE")
        .output()
        .expect("binary runs")
}

fn clf_with_cache_env(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clf"))
        .args(args)
        .env("CLF_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn json_rows(out: &Output) -> Vec<Value> {
    serde_json::from_str::<Value>(&stdout(out))
        .expect("stdout is JSON")
        .as_array()
        .expect("JSON array")
        .clone()
}

/// Parse the csv writer's output into (header, rows of fields).
fn csv_rows(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let text = stdout(out);
    let mut lines = text.lines();
    let header = lines
        .next()
        .expect("csv header")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

#[test]
fn verify_single_check_json_schema() {
    let out = clf(&["verify", "--checks", "C-MORLEY", "--primes", "7", "--format", "json"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let rows = json_rows(&out);
    assert_eq!(rows.len(), 2);
    // Field order is part of the report format; check it in the raw text
    // (parsed maps don't preserve order).
    let text = stdout(&out);
    let positions: Vec<usize> = ["\"check\"", "\"p\"", "\"exponent\"", "\"lhs\"", "\"rhs\"", "\"valuation\"", "\"pass\""]
        .iter()
        .map(|k| text.find(k).unwrap_or_else(|| panic!("missing key {k}")))
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "key order: {positions:?}");
    assert_eq!(rows[0]["p"], 5);
    assert_eq!(rows[1]["p"], 7);
    for row in &rows {
        assert_eq!(row["check"], "C-MORLEY");
        assert_eq!(row["exponent"], 3);
        assert_eq!(row["pass"], true);
        // Big residues travel as decimal strings, never as JSON numbers.
        assert!(row["lhs"].is_string());
        assert_eq!(row["lhs"], row["rhs"]);
    }
}

#[test]
fn verify_rejects_unknown_check_id() {
    let out = clf(&["verify", "--checks", "C-XX"]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("C-XX"), "stderr: {err}");
    assert!(err.contains("C-MORLEY"), "should list known ids: {err}");
}

#[test]
fn verify_rejects_bad_prime_specs() {
    let out = clf(&["verify", "--primes", "2"]);
    assert_eq!(code(&out), 2, "bound below 3 is unusable");
    let out = clf(&["verify", "--primes", "5,6"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("6 is not prime"));
    let out = clf(&["verify", "--primes", "abc"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_explicit_prime_list_in_ascending_order() {
    let out = clf(&[
        "verify", "--checks", "C-1-4", "--primes", "11,5,7", "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["check", "p", "exponent", "lhs", "rhs", "valuation", "pass"]);
    let ps: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(ps, ["5", "7", "11"], "schedule sorts primes ascending");
}

#[test]
fn verify_all_covers_every_registered_check() {
    let out = clf(&["verify", "--primes", "20", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let (_, rows) = csv_rows(&out);
    let mut ids: Vec<String> = rows.iter().map(|r| r[0].clone()).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), 19, "all registered checks produce rows: {ids:?}");
    for row in &rows {
        assert_eq!(row[6], "true", "row failed: {row:?}");
    }
}

#[test]
fn sequence_catalan_larcombe_french_values() {
    let out = clf(&["sequence", "P", "0..4", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let (_, rows) = csv_rows(&out);
    let values: Vec<&str> = rows.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(values, ["1", "8", "80", "896", "10816"]);
}

#[test]
fn sequence_names_are_case_insensitive() {
    let upper = clf(&["sequence", "E", "0..6", "--format", "csv"]);
    let lower = clf(&["sequence", "e", "0..6", "--format", "csv"]);
    assert_eq!(code(&upper), 0);
    assert_eq!(stdout(&upper), stdout(&lower));
    let (_, rows) = csv_rows(&upper);
    let values: Vec<&str> = rows.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(values, ["1", "0", "-1", "0", "5", "0", "-61"]);
}

#[test]
fn sequence_harmonic_prints_exact_rationals() {
    let out = clf(&["sequence", "H", "0..3", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let (_, rows) = csv_rows(&out);
    let values: Vec<&str> = rows.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(values, ["0", "1", "3/2", "11/6"]);
}

#[test]
fn sequence_single_index_and_bad_specs() {
    let out = clf(&["sequence", "S", "5", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let (_, rows) = csv_rows(&out);
    assert_eq!(rows, [["S", "5", "4304"]]);
    assert_eq!(code(&clf(&["sequence", "Q", "0..3"])), 2, "unknown name");
    assert_eq!(code(&clf(&["sequence", "P", "4..1"])), 2, "empty range");
    assert_eq!(code(&clf(&["sequence", "P", "a..b"])), 2);
}

#[test]
fn identities_flag_and_bound_alias_agree() {
    let a = clf(&["identities", "--identities", "5"]);
    let b = clf(&["identities", "--bound", "5"]);
    assert_eq!(code(&a), 0, "stderr: {}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(code(&clf(&["identities", "--identities", "0"])), 2);
}

#[test]
fn identities_json_reports_case_counts() {
    let out = clf(&["identities", "--identities", "10", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let rows = json_rows(&out);
    let total: u64 = rows.iter().map(|r| r["cases"].as_u64().unwrap()).sum();
    assert_eq!(total, 108);
    for row in &rows {
        assert_eq!(row["failures"], 0);
        assert_eq!(row["pass"], true);
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let one = clf(&[
        "verify", "--primes", "50", "--format", "json", "--workers", "1",
    ]);
    let three = clf(&[
        "verify", "--primes", "50", "--format", "json", "--workers", "3",
    ]);
    assert_eq!(code(&one), 0);
    assert_eq!(code(&three), 0);
    assert_eq!(stdout(&one), stdout(&three));
}

#[test]
fn cache_roundtrip_and_env_var() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tables.json");
    let path_str = path.to_str().unwrap();

    let out = clf(&["cache-write", path_str, "--entries", "64"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));

    let out = clf(&["sequence", "B", "12", "--cache", path_str, "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let (_, rows) = csv_rows(&out);
    assert_eq!(rows, [["B", "12", "-691/2730"]]);

    let out = clf_with_cache_env(&["verify", "--checks", "C-1-5", "--primes", "7"], &path);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
}

#[test]
fn corrupt_cache_is_rejected_before_any_work() {
    let dir = tempfile::tempdir().unwrap();

    // A single wrong entry deep in an otherwise-correct table.
    let sneaky = dir.path().join("sneaky.json");
    std::fs::write(
        &sneaky,
        r#"{"format":"clf-cache-v1","bernoulli":["1","-1/2","1/6","0","-1/31"],"euler":["1","0","-1"]}"#,
    )
    .unwrap();
    let out = clf(&["sequence", "B", "2", "--cache", sneaky.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("failed validation"), "stderr: {}", stderr(&out));

    // Wrong format tag.
    let tagged = dir.path().join("tagged.json");
    std::fs::write(&tagged, r#"{"format":"clf-cache-v0","bernoulli":[],"euler":[]}"#).unwrap();
    let out = clf(&["sequence", "B", "2", "--cache", tagged.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    // Not JSON at all.
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "not json").unwrap();
    let out = clf(&["sequence", "B", "2", "--cache", garbage.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    // Missing file.
    let out = clf(&["sequence", "B", "2", "--cache", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn formats_carry_the_same_data() {
    let json = clf(&["verify", "--checks", "C-1-3", "--primes", "15", "--format", "json"]);
    let csv = clf(&["verify", "--checks", "C-1-3", "--primes", "15", "--format", "csv"]);
    let text = clf(&["verify", "--checks", "C-1-3", "--primes", "15", "--format", "text"]);
    assert_eq!(code(&json), 0);
    assert_eq!(code(&csv), 0);
    assert_eq!(code(&text), 0);

    let jrows = json_rows(&json);
    let (_, crows) = csv_rows(&csv);
    assert_eq!(jrows.len(), crows.len());
    for (j, c) in jrows.iter().zip(&crows) {
        assert_eq!(j["p"].to_string(), c[1]);
        assert_eq!(j["lhs"].as_str().unwrap(), c[3]);
        assert_eq!(j["valuation"].to_string(), c[5]);
        // The text table carries the same residue somewhere on the row for p.
        let line = stdout(&text)
            .lines()
            .find(|l| l.split_whitespace().nth(1) == Some(c[1].as_str()))
            .expect("text row for prime")
            .to_string();
        assert!(line.contains(c[3].as_str()), "text row {line:?} lacks lhs {}", c[3]);
    }
}

#[test]
fn failing_summary_goes_to_stderr_not_stdout() {
    let out = clf(&["verify", "--checks", "C-1-1", "--primes", "30"]);
    assert_eq!(code(&out), 0);
    let err = stderr(&out);
    assert!(err.contains("passed"), "summary on stderr: {err}");
    let text = stdout(&out);
    assert!(
        !text.contains("verified"),
        "stdout stays machine-friendly: {text}"
    );
}
