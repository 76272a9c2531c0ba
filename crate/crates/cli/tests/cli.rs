//! End-to-end tests of the `ramapi` binary: exit codes, text output and the
//! JSON line format.

use std::process::{Command, Output};

fn ramapi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramapi"))
        .args(args)
        .env_remove("RAMAPI_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn field<'a>(text: &'a str, name: &str) -> &'a str {
    text.lines()
        .find_map(|l| {
            let mut parts = l.split_whitespace();
            (parts.next() == Some(name)).then(|| parts.next()).flatten()
        })
        .unwrap_or_else(|| panic!("no field {name} in:\n{text}"))
}

fn parse(x: &str) -> f64 {
    x.parse().unwrap_or_else(|_| panic!("not a number: {x}"))
}

#[test]
fn pi_matches_known_digits() {
    let out = ramapi(&["pi", "--r", "2", "--digits", "50"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out)
        .trim()
        .starts_with("3.14159265358979323846264338327950288419716939937"));
}

#[test]
fn pi_at_large_r_needs_few_terms() {
    let out = ramapi(&["pi", "--r", "1728", "--digits", "500"]);
    assert_eq!(out.status.code(), Some(0));
    let err = stderr(&out);
    let terms: u64 = err
        .split_once("terms: ")
        .and_then(|(_, rest)| rest.split(',').next())
        .and_then(|t| t.trim().parse().ok())
        .unwrap_or_else(|| panic!("no term count in {err}"));
    assert!(terms <= 7, "{terms} terms");
}

#[test]
fn pi_outside_domain_is_a_computation_error() {
    let out = ramapi(&["pi", "--r", "0.5", "--digits", "50"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error"));
}

#[test]
fn modulus_values() {
    let out = ramapi(&["modulus", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in ["m", "m_complement", "alpha", "beta"] {
        assert!((parse(field(&text, name)) - 0.5).abs() < 1e-15, "{name}");
    }

    let text = stdout(&ramapi(&["modulus", "--r", "3"]));
    assert!((parse(field(&text, "alpha")) - 0.049_038_105_676_658).abs() < 1e-12);

    let text = stdout(&ramapi(&["modulus", "--r", "6"]));
    assert!((parse(field(&text, "alpha")) - 0.003_727_553_889_708_38).abs() < 1e-15);
}

#[test]
fn params_report_the_series_constants() {
    let out = ramapi(&["params", "--r", "4", "--digits", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!((parse(field(&text, "T")) - 11.0 / 21.0).abs() < 1e-15);
    assert!((parse(field(&text, "j_invariant")) - 287_496.0).abs() < 1e-9);
}

#[test]
fn verify_alpha_table() {
    let out = ramapi(&["verify", "--filter", "alpha_*"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("alpha_")).collect();
    assert_eq!(rows.len(), 41);
    let pass = rows.iter().filter(|l| l.contains(" pass ")).count();
    let errata: Vec<&str> = rows
        .iter()
        .filter(|l| l.contains("known-erratum-confirmed"))
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(pass, 39);
    assert_eq!(errata, ["alpha_28", "alpha_37"]);
    assert!(text.contains("total 41: 39 pass, 0 fail, 2 known-erratum-confirmed"));
}

#[test]
fn verify_reports_misprint_and_correction() {
    let out = ramapi(&["verify", "--filter", "eq36*"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let printed = text.lines().find(|l| l.starts_with("eq36_as_printed")).unwrap();
    assert!(printed.contains("known-erratum-confirmed"));
    let corrected = text.lines().find(|l| l.starts_with("eq36_corrected")).unwrap();
    assert!(corrected.contains(" pass "));
}

#[test]
fn verify_with_no_matches_reports_an_empty_summary() {
    let out = ramapi(&["verify", "--filter", "no_such_entry*"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "total 0: 0 pass, 0 fail, 0 known-erratum-confirmed");
}

#[test]
fn json_lines_carry_precision_and_string_numbers() {
    let out = ramapi(&["--output", "json", "verify", "--filter", "alpha_2"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid JSON line"))
        .collect();
    assert_eq!(lines.len(), 2);
    for line in &lines {
        assert_eq!(line["precision"], 60);
    }
    assert_eq!(lines[0]["id"], "alpha_2");
    assert_eq!(lines[0]["status"], "pass");
    assert!(lines[0]["lhs"].is_string());
    assert!(lines[0]["rel_residual"].is_string());
    assert_eq!(lines[1]["summary"]["pass"], 1);

    let out = ramapi(&["--output", "json", "modulus", "--r", "2"]);
    let obj: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let m = obj["m"].as_str().expect("numbers are strings");
    assert!((parse(m) - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-15);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["pi", "--r", "abc"][..],
        &["pi", "--r", "-3"],
        &["pi", "--r", "0"],
        &["--digits", "5", "pi", "--r", "2"],
        &["pi", "--bogus"],
        &["frobnicate"],
    ] {
        let out = ramapi(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(ramapi(&["--help"]).status.code(), Some(0));
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ramapi"))
        .args(["pi", "--r", "4"])
        .env("RAMAPI_PRECISION", "20")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "3.1415926535897932385");
}
