//! End-to-end checks of the `qsieve` binary: output shapes, exit codes, and
//! byte-level determinism.

use std::process::{Command, Output};

fn qsieve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsieve"))
        .args(args)
        .env_remove("QSIEVE_TABLE_PATH")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn kreweras_pretty_polynomial() {
    let out = qsieve(&["kreweras", "A", "4", "[3,1]", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("q^7 + q^8 + q^9 + q^10"), "{text}");
    assert!(text.contains("value at q=1: 4"), "{text}");
}

#[test]
fn kreweras_d4_coefficients() {
    let out = qsieve(&["kreweras", "D", "4", "[3,3,1,1]", "9"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("2*q^14 + 4*q^16 + 6*q^18 + 7*q^20 + 5*q^22 + 3*q^24 + q^26"),
        "{text}"
    );
}

#[test]
fn usage_errors_exit_2() {
    let out = qsieve(&["catalan", "B", "2", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qsieve(&["kreweras", "A", "4", "[3,2]", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qsieve(&["csp", "A", "14", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("guard"), "{err}");
    let out = qsieve(&["csp", "A", "4", "1", "--max-ground", "20"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verifiers_exit_0() {
    for args in [
        vec!["csp", "A", "4", "1"],
        vec!["sieve", "A", "4", "[2,2]", "1", "2"],
        vec!["nilcount", "A", "2", "3"],
        vec!["exceptional", "G2", "5"],
        vec!["selftest"],
    ] {
        let out = qsieve(&args);
        assert!(
            out.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn json_output_is_deterministic_and_schema_stable() {
    let strip_elapsed = |s: &str| -> String {
        s.lines()
            .filter(|l| !l.contains("elapsed_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = qsieve(&["catalan", "G2", "-", "5", "--format", "json"]);
    let b = qsieve(&["catalan", "G2", "-", "5", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(strip_elapsed(&stdout(&a)), strip_elapsed(&stdout(&b)));

    let parsed: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    for key in ["command", "parameters", "verdict", "items", "elapsed_ms"] {
        assert!(parsed.get(key).is_some(), "missing {key}");
    }
    // Polynomials serialize as [[exponent, coefficient], ...] ascending.
    let poly = &parsed["items"][0]["value"];
    let exps: Vec<u64> = poly
        .as_array()
        .unwrap()
        .iter()
        .map(|pair| pair[0].as_u64().unwrap())
        .collect();
    assert_eq!(exps, vec![0, 2, 4, 6, 8]);
}

#[test]
fn csv_output_has_rows() {
    let out = qsieve(&["kreweras", "B", "2", "[2,2,1]", "5", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("key,value,status"), "{text}");
    assert!(text.lines().count() >= 3);
}

#[test]
fn table_path_override() {
    let dir = std::env::temp_dir().join("qsieve-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.txt");
    std::fs::write(&path, "G2 | 0 | 1 | 1 | [m-1\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qsieve"))
        .args(["exceptional", "G2", "5"])
        .env("QSIEVE_TABLE_PATH", path.to_str().unwrap())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_qsieve"))
        .args(["exceptional", "G2", "5", "--table", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
