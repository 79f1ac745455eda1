use std::process::{Command, Output};

use tmwords::table::ComplexityTable;

fn tmwords(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tmwords"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = tmwords(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    tmwords(args).status.code().unwrap()
}

#[test]
fn generate() {
    assert_eq!(stdout(&["generate", "--m", "3", "--len", "9"]), "012120201\n");
    assert_eq!(stdout(&["generate", "--m", "2", "--len", "4"]), "0110\n");
    assert_eq!(stdout(&["generate", "--m", "3", "--len", "0"]), "");
    assert_eq!(stdout(&["generate", "--m", "12", "--len", "3"]), "0,1,2\n");
    assert_eq!(code(&["generate", "--m", "1", "--len", "3"]), 2);
    assert_eq!(code(&["generate", "--len", "3"]), 2);
}

#[test]
fn binom() {
    assert_eq!(stdout(&["binom", "101000", "110"]), "3\n");
    assert_eq!(stdout(&["binom", "01", "012"]), "0\n");
    assert_eq!(stdout(&["binom", "0110", "--empty-v"]), "1\n");
    assert_eq!(code(&["binom", "0110", ""]), 2);
    assert_eq!(code(&["binom", "abc", ""]), 2);
    let zeros = |n| "0".repeat(n);
    assert_eq!(code(&["binom", &zeros(300), &zeros(150)]), 3);
}

#[test]
fn psi_and_factors() {
    assert_eq!(stdout(&["psi", "010001", "--k", "2"]), "4 2 6 5 3 1\n");
    assert_eq!(stdout(&["psi", "001010", "--k", "2", "--m", "2"]), "4 2 6 5 3 1\n");
    let csv = stdout(&["psi", "01", "--k", "2", "--format", "csv"]);
    assert_eq!(csv, "v,value\n0,1\n1,1\n00,0\n01,1\n10,0\n11,0\n");
    assert_eq!(stdout(&["factors", "--m", "2", "--n", "2"]), "00\n01\n10\n11\n");
    assert_eq!(stdout(&["factors", "--m", "3", "--n", "3"]).lines().count(), 15);
}

#[test]
fn complexity_tables() {
    assert_eq!(
        stdout(&["complexity", "--m", "3", "--k", "2", "--n", "9..12"]),
        "n,value,provenance\n9,49,oracle\n10,45,oracle\n11,45,oracle\n12,48,oracle\n"
    );
    assert_eq!(stdout(&["complexity", "--m", "3", "--k", "2", "--n", "0..0"]), "n,value,provenance\n0,1,oracle\n");
    assert_eq!(
        stdout(&["complexity", "--m", "2", "--k", "2", "--n-range", "4..5", "--check"]),
        "n,value,provenance\n4,9,oracle\n5,8,oracle\n"
    );
    assert_eq!(code(&["complexity", "--m", "3", "--k", "2", "--n", "12..9"]), 2);
}

#[test]
fn tables_round_trip_through_the_cli() {
    let args = ["complexity", "--m", "4", "--k", "2", "--n", "1..40"];
    let csv = stdout(&[&args[..], &["--format", "csv"]].concat());
    let json = stdout(&[&args[..], &["--format", "json", "--check"]].concat());
    let from_csv = ComplexityTable::from_csv(&csv, 2).unwrap();
    let (from_json, meta) = ComplexityTable::from_json(&json).unwrap();
    assert_eq!(from_csv, from_json);
    assert_eq!(from_csv.to_csv(), csv);
    assert_eq!((meta.m, meta.k, meta.generator.as_str(), meta.oracle_checked), (4, 2, "morphism", true));
}

#[test]
fn output_does_not_depend_on_jobs() {
    let args = ["complexity", "--m", "3", "--k", "3", "--n", "1..60", "--format", "json"];
    let one = stdout(&[&args[..], &["--jobs", "1"]].concat());
    let four = stdout(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one, four);
}

#[test]
fn prefix_strategy_and_stabilization_failure() {
    assert_eq!(
        stdout(&["complexity", "--m", "3", "--k", "2", "--n", "9..12", "--prefix-K", "40"]),
        "n,value,provenance\n9,49,oracle\n10,45,oracle\n11,45,oracle\n12,48,oracle\n"
    );
    let out = tmwords(&["complexity", "--m", "6", "--k", "1", "--n", "16", "--prefix-K", "1", "--max-doublings", "1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("n = 16"));
}

#[test]
fn output_file_is_written_whole() {
    let dir = std::env::temp_dir().join(format!("tmwords-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let path_str = path.to_str().unwrap();
    assert_eq!(stdout(&["complexity", "--m", "3", "--k", "1", "--n", "3..5", "-o", path_str]), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "n,value,provenance\n3,7,oracle\n4,6,oracle\n5,6,oracle\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_suites() {
    let out = stdout(&["verify", "thm13", "--m", "3"]);
    assert!(out.ends_with("PASS thm13\n"), "{out}");
    let out = stdout(&["verify", "thm12", "--m", "3", "--n", "15"]);
    assert!(out.contains("structural-m3-n15"));
    assert!(out.contains("factor pairs"));
    let json = stdout(&["verify", "eq31", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["records"][0]["verdict"], "pass");
    assert_eq!(code(&["verify", "nonsense"]), 2);
}

#[test]
fn verify_failure_exits_one_with_the_record() {
    let out = tmwords(&["verify", "counterexample"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL stated-pair"));
}

#[test]
fn scan() {
    let json: serde_json::Value = serde_json::from_str(&stdout(&["scan", "--m", "2", "--k", "3", "--n-max", "32"])).unwrap();
    assert_eq!(json["report"]["verdict"]["status"], "consistent");
    assert_eq!(json["report"]["period_tested"], 8);
    let json: serde_json::Value = serde_json::from_str(&stdout(&["scan", "--m", "3", "--k", "3", "--n-max", "81"])).unwrap();
    assert!(json["report"]["verdict"]["status"].is_string());
    assert_eq!(code(&["scan", "--m", "5", "--k", "4"]), 5);
    assert_eq!(code(&["scan", "--m", "3", "--k", "2"]), 2);
}
