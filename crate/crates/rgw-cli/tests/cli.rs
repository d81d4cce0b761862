//! End-to-end checks of the command-line surface: exit codes, output
//! formats, determinism, and the cache file lifecycle.

use std::path::PathBuf;
use std::process::{Command, Output};

fn rgw(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rgw"));
    cmd.args(args).env_remove("RGW_CACHE");
    for (key, value) in envs {
        cmd.env(key, value);
    }
    cmd.output().expect("spawn rgw")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("rgw-cli-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn complex_prints_exact_value() {
    let out = rgw(
        &["complex", "-m", "3", "-d", "2", "-c", "2,2,2,2,2,2,2,2"],
        &[],
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "92");

    let out = rgw(&["complex", "-m", "3", "-d", "1", "-c", "3,3"], &[]);
    assert_eq!(stdout(&out).trim(), "1");

    let out = rgw(&["complex", "-m", "3", "-d", "1", "-c", "3,3,3"], &[]);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn real_prints_bracket_and_count() {
    let out = rgw(
        &["real", "-n", "2", "-d", "1", "--phi", "tau", "-c", "3"],
        &[],
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "bracket = -1\nN = -1\n");

    let out = rgw(
        &["real", "-n", "2", "-d", "3", "--phi", "tau", "-c", "3,3,3"],
        &[],
    );
    assert_eq!(stdout(&out), "bracket = 1\nN = 1\n");

    let out = rgw(
        &["real", "-n", "2", "-d", "2", "--phi", "tau", "-c", "3,1"],
        &[],
    );
    assert_eq!(stdout(&out), "bracket = 0\nN = 0\n");
}

#[test]
fn insertion_order_is_irrelevant_and_output_canonical() {
    let a = rgw(
        &[
            "real", "-n", "2", "-d", "3", "-c", "1,3,3,3", "--format", "jsonl",
        ],
        &[],
    );
    let b = rgw(
        &[
            "real", "-n", "2", "-d", "3", "-c", "3,3,1,3", "--format", "jsonl",
        ],
        &[],
    );
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("[3,3,3,1]"));
}

#[test]
fn malformed_arguments_exit_two() {
    let out = rgw(&["complex", "-m", "3", "-d", "x", "-c", "3,3"], &[]);
    assert_eq!(out.status.code(), Some(2));

    let out = rgw(&["complex", "-m", "3"], &[]);
    assert_eq!(out.status.code(), Some(2));

    // negative insertions are a domain error surfaced before computing
    let out = rgw(&["complex", "-m", "3", "-d", "1", "-c", "3,-3"], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("negative"));
}

#[test]
fn verify_and_signcheck_exit_zero() {
    let out = rgw(
        &[
            "verify",
            "--n-max",
            "2",
            "--d-max",
            "3",
            "--samples",
            "20",
            "--seed",
            "0",
        ],
        &[],
    );
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("VERIFY PASS"));

    let out = rgw(
        &[
            "signcheck",
            "--n-max",
            "1",
            "--d1-max",
            "2",
            "--d2-max",
            "2",
            "--samples",
            "5",
            "--json",
        ],
        &[],
    );
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["passed"], serde_json::json!(true));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "table", "-n", "2", "--d-max", "5", "--k-max", "5", "--format", "csv",
    ];
    let first = rgw(&args, &[]);
    let second = rgw(&args, &[]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn cache_lifecycle_round_trip() {
    let cache = temp_path("cache.rgw");
    let copy = temp_path("copy.rgw");
    let merged = temp_path("merged.rgw");
    for path in [&cache, &copy, &merged] {
        let _ = std::fs::remove_file(path);
    }
    let cache_str = cache.to_str().unwrap();

    let out = rgw(
        &[
            "--cache", cache_str, "table", "-n", "2", "--d-max", "5", "--k-max", "5",
        ],
        &[],
    );
    assert!(out.status.success());
    let saved = std::fs::read_to_string(&cache).unwrap();
    assert!(saved.starts_with("RGWCACHE 1\n"));

    // export reproduces the saved file byte for byte
    let out = rgw(
        &[
            "--cache",
            cache_str,
            "cache",
            "export",
            "-o",
            copy.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success());
    assert_eq!(saved, std::fs::read_to_string(&copy).unwrap());

    // importing into a fresh cache reproduces it as well
    let out = rgw(
        &[
            "--cache",
            merged.to_str().unwrap(),
            "cache",
            "import",
            cache_str,
        ],
        &[],
    );
    assert!(out.status.success());
    assert_eq!(saved, std::fs::read_to_string(&merged).unwrap());

    // the environment variable configures the cache; warm run still correct
    let out = rgw(
        &["real", "-n", "2", "-d", "3", "-c", "3,3,3"],
        &[("RGW_CACHE", cache_str)],
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "bracket = 1\nN = 1\n");

    for path in [&cache, &copy, &merged] {
        let _ = std::fs::remove_file(path);
    }
}

#[test]
fn corrupt_cache_is_reported_with_line_number() {
    let cache = temp_path("corrupt.rgw");
    std::fs::write(&cache, "RGWCACHE 1\nC|3|1|3,3|one\n").unwrap();
    let out = rgw(
        &[
            "--cache",
            cache.to_str().unwrap(),
            "complex",
            "-m",
            "3",
            "-d",
            "1",
            "-c",
            "3,3",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 2"), "stderr: {stderr}");
    let _ = std::fs::remove_file(&cache);
}

#[test]
fn conflicting_import_is_rejected() {
    let cache = temp_path("conflict-base.rgw");
    let other = temp_path("conflict-other.rgw");
    std::fs::write(&cache, "RGWCACHE 1\nC|3|1|3,3|1\n").unwrap();
    std::fs::write(&other, "RGWCACHE 1\nC|3|1|3,3|2\n").unwrap();
    let out = rgw(
        &[
            "--cache",
            cache.to_str().unwrap(),
            "cache",
            "import",
            other.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("conflicting value"));
    for path in [&cache, &other] {
        let _ = std::fs::remove_file(path);
    }
}

// A cached value with the base-case sign flipped must surface as identity
// failures and a nonzero exit, not be silently trusted.
#[test]
fn verify_fails_on_sign_flipped_cache() {
    let cache = temp_path("poisoned.rgw");
    std::fs::write(&cache, "RGWCACHE 1\nR|2|1|tau|3|1\n").unwrap();
    let out = rgw(
        &[
            "--cache",
            cache.to_str().unwrap(),
            "verify",
            "--n-max",
            "2",
            "--d-max",
            "3",
            "--samples",
            "40",
            "--seed",
            "0",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("VERIFY FAIL"));
    assert!(stdout(&out).contains("FAIL"));
    let _ = std::fs::remove_file(&cache);
}

#[test]
fn verify_json_reports_suites() {
    let out = rgw(
        &[
            "verify",
            "--n-max",
            "2",
            "--d-max",
            "3",
            "--samples",
            "10",
            "--seed",
            "7",
            "--json",
        ],
        &[],
    );
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["passed"], serde_json::json!(true));
    assert_eq!(report["seed"], serde_json::json!(7));
    assert!(report["suites"].as_array().unwrap().len() >= 4);
}

#[test]
fn table_matches_degree_one_closed_form() {
    let out = rgw(
        &["table", "-n", "2", "--d-max", "1", "--format", "csv"],
        &[],
    );
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    for (i, line) in lines.iter().enumerate() {
        let k = i + 1;
        let mut tuple = vec!["3".to_string()];
        tuple.extend(std::iter::repeat_n("1".to_string(), k - 1));
        let expected = format!("real,2,1,tau,\"{}\",-1,-1", tuple.join(","));
        assert_eq!(*line, expected);
    }
}

#[test]
fn table_contains_twisted_cubic_count() {
    let out = rgw(
        &["table", "-n", "2", "--d-max", "3", "--format", "csv"],
        &[],
    );
    assert!(stdout(&out).contains("real,2,3,tau,\"3,3,3\",1,1"));
}

#[test]
fn empty_table_range_prints_nothing() {
    let out = rgw(
        &["table", "-n", "2", "--d-max", "0", "--format", "csv"],
        &[],
    );
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
}
