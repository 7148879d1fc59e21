use std::path::Path;
use std::process::{Command, Output};

fn reinhardt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reinhardt"))
        .args(args)
        .env_remove("REINHARDT_CACHE")
        .output()
        .expect("spawn reinhardt")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = reinhardt(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn row<'a>(csv: &'a str, prefix: &str) -> &'a str {
    csv.lines()
        .find(|l| l.starts_with(prefix))
        .unwrap_or_else(|| panic!("no row starting {prefix:?} in\n{csv}"))
}

#[test]
fn set_prints_members() {
    assert_eq!(stdout_ok(&["set", "--n", "4"]), "4 6 8 10 16\n");
    assert_eq!(stdout_ok(&["set", "--n", "2"]), "2 4\n");
    assert_eq!(stdout_ok(&["set", "--n", "5"]), "5 7 9 11 13 17 25\n");
}

#[test]
fn table_rows() {
    let out = stdout_ok(&["table", "--max-n", "5", "--min-n", "4"]);
    assert_eq!(
        out,
        "n,c,c_over_n2,h,h_over_n\n4,4,0.2500,1,0.2500\n5,6,0.2400,,\n"
    );
    let out = stdout_ok(&["table", "--max-n", "101", "--min-n", "100"]);
    assert_eq!(row(&out, "100,"), "100,3880,0.3880,81,0.8100");
    let out = stdout_ok(&["table", "--max-n", "21", "--min-n", "20"]);
    assert_eq!(row(&out, "20,"), "20,117,0.2925,11,0.5500");
}

#[test]
fn table_rejects_bad_range() {
    assert!(!reinhardt(&["table", "--max-n", "5", "--min-n", "6"]).status.success());
    assert!(!reinhardt(&["table", "--max-n", "5", "--min-n", "1"]).status.success());
}

#[test]
fn table_json_matches_csv() {
    let csv = stdout_ok(&["table", "--max-n", "12"]);
    let json = stdout_ok(&["table", "--max-n", "12", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    let lines: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), lines.len());
    for (r, line) in rows.iter().zip(lines) {
        let cells: Vec<String> = ["n", "c", "c_over_n2", "h", "h_over_n"]
            .iter()
            .map(|k| match &r[*k] {
                serde_json::Value::Null => String::new(),
                serde_json::Value::String(s) => s.clone(),
                v => v.to_string(),
            })
            .collect();
        assert_eq!(cells.join(","), line);
    }
}

#[test]
fn table_refuses_over_memory_limit() {
    let out = reinhardt(&["table", "--max-n", "2000", "--memory-limit", "1MiB"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("refused"));
}

#[test]
fn large_build_needs_force() {
    let out = reinhardt(&["set", "--n", "5000"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));
}

#[test]
fn cache_is_written_reused_and_checked() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("dims.rdim");
    let cache_s = cache.to_str().unwrap();
    let first = stdout_ok(&["table", "--max-n", "30", "--cache", cache_s]);
    assert!(cache.exists());
    let len = std::fs::metadata(&cache).unwrap().len();

    // A smaller request is served from the cache and the output ignores its extra rows.
    let small = stdout_ok(&["table", "--max-n", "10", "--cache", cache_s]);
    assert_eq!(small.lines().last().unwrap(), "10,26,0.2600,,");
    assert_eq!(std::fs::metadata(&cache).unwrap().len(), len);
    assert_eq!(stdout_ok(&["table", "--max-n", "30", "--cache", cache_s]), first);

    // A larger request rebuilds and rewrites.
    stdout_ok(&["set", "--n", "40", "--cache", cache_s]);
    assert!(std::fs::metadata(&cache).unwrap().len() > len);

    corrupt(&cache);
    let out = reinhardt(&["table", "--max-n", "10", "--cache", cache_s]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupt"));
    assert_eq!(
        stdout_ok(&["table", "--max-n", "10", "--cache", cache_s, "--no-cache"]),
        small
    );
}

fn corrupt(path: &Path) {
    let mut bytes = std::fs::read(path).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0x10;
    std::fs::write(path, bytes).unwrap();
}

#[test]
fn cache_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("env.rdim");
    let out = Command::new(env!("CARGO_BIN_EXE_reinhardt"))
        .args(["set", "--n", "6"])
        .env("REINHARDT_CACHE", &cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(cache.exists());
}

#[test]
fn table_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let stdout = stdout_ok(&["table", "--max-n", "8", "--out", path.to_str().unwrap()]);
    assert!(stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        stdout_ok(&["table", "--max-n", "8"])
    );
}

#[test]
fn classify_statuses() {
    let out = stdout_ok(&["classify", "--n", "5", "--dim", "35"]);
    assert!(row(&out, "5,35,").starts_with("5,35,ball,"));

    let out = stdout_ok(&["classify", "--n", "4", "--dim", "12"]);
    assert!(out.contains("4,12,noncompact_good,realization,\"(2,2) marks=[2x1] l=2 m=1\""));

    let out = stdout_ok(&["classify", "--n", "4", "--dim", "15"]);
    assert!(row(&out, "4,15,").starts_with("4,15,unrealizable,note,parity"));

    let out = stdout_ok(&["classify", "--n", "4", "--dim", "16"]);
    assert!(out.contains("n_squared,family"));
    assert!(out.contains("ProductB2B2"));

    let out = stdout_ok(&["classify", "--n", "3", "--dim", "-1", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["rows"][0]["status"], "unrealizable");
}

#[test]
fn classify_rejects_small_n() {
    let out = reinhardt(&["classify", "--n", "1", "--dim", "1"]);
    assert!(!out.status.success());
}

#[test]
fn witness_inequalities() {
    let out = stdout_ok(&["witness", "--n", "4", "--dim", "12"]);
    assert_eq!(out.lines().next(), Some("|z¹|²+|z²|⁴<1"));
    assert!(out.contains("not formally verified"));
    let out = stdout_ok(&["witness", "--n", "4", "--dim", "10"]);
    assert_eq!(out.lines().next(), Some("|z¹|⁴+|z²|⁶<1"));

    let out = stdout_ok(&["witness", "--n", "4", "--dim", "12", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["rows"][0]["ascii"], "|z1|^2+|z2|^4<1");
    assert_eq!(doc["rows"][0]["claimed_dimension"], 12);
}

#[test]
fn witness_errors() {
    let out = reinhardt(&["witness", "--n", "4", "--dim", "14"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("no smooth-bounded witness"), "{err}");
    assert!(err.contains("m in {0, 1}"), "{err}");

    assert!(!reinhardt(&["witness", "--n", "4", "--dim", "13"]).status.success());
    assert!(!reinhardt(&["witness", "--n", "4", "--dim", "12", "--index", "9"]).status.success());
}

#[test]
fn verify_suites() {
    let out = stdout_ok(&["verify", "--suite", "brute", "--max-n", "40"]);
    assert!(row(&out, "brute,").starts_with("brute,pass,1,40,summary"));

    let out = stdout_ok(&["verify", "--suite", "sequences", "--max-n", "500"]);
    assert!(out.contains("sequences,pass"));
    assert!(out.contains("observation,18,7,k(18) = 7"));

    let out = stdout_ok(&["verify", "--suite", "numh", "--max-n", "200"]);
    assert!(row(&out, "numh,").starts_with("numh,report-only"));

    for suite in ["bounds", "prop7", "arms", "consistency"] {
        let out = stdout_ok(&["verify", "--suite", suite, "--max-n", "20"]);
        assert!(out.contains(&format!("{suite},pass")), "{out}");
    }
    let out = stdout_ok(&["verify", "--suite", "lemma-largest", "--max-n", "14"]);
    assert!(out.contains("lemma-largest,pass"), "{out}");
}

#[test]
fn verify_usage_errors() {
    let out = reinhardt(&["verify", "--suite", "nonsense", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = reinhardt(&["verify", "--suite", "lemma-largest", "--max-n", "20", "--min-n", "3"]);
    assert!(!out.status.success());
}

#[test]
fn sequence_rows() {
    let out = stdout_ok(&["sequence", "--max-n", "20"]);
    assert_eq!(out.lines().next(), Some("n,f,two_g,k"));
    assert_eq!(row(&out, "0,"), "0,0,4,");
    assert_eq!(row(&out, "4,"), "4,10,18,1");
    assert!(row(&out, "18,").ends_with(",7"));
    assert!(!reinhardt(&["sequence", "--max-n", "0"]).status.success());
}
