//! End-to-end tests of the `powsum` binary: exit codes, JSON stability,
//! argument parsing, and the bundled verification suite.

use std::io::Write;
use std::process::{Command, Output};

use powsum::report::Report;

fn powsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn analyze_exit_codes_follow_the_verdict() {
    // insoluble
    let out = powsum(&["analyze", "--n", "6", "--m", "3", "--rhs", "233280"]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");

    // solvable (trivial witness)
    let out = powsum(&["analyze", "--n", "2", "--m", "2", "--b", "0", "--c", "7"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    // unknown: solvable instance beyond the oracle budget, no criterion fires
    let out = powsum(&["analyze", "--n", "2", "--m", "2", "--rhs", "1000000009"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    // raising the budget resolves it
    let out = powsum(&[
        "analyze",
        "--n",
        "2",
        "--m",
        "2",
        "--rhs",
        "1000000009",
        "--oracle-budget",
        "10000000000",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}

#[test]
fn exit_code_ignores_formatting_flags() {
    let plain = powsum(&["analyze", "--n", "6", "--m", "3", "--rhs", "233280"]);
    let json = powsum(&[
        "analyze", "--n", "6", "--m", "3", "--rhs", "233280", "--json",
    ]);
    assert_eq!(plain.status.code(), json.status.code());
}

#[test]
fn analyze_json_round_trips_and_names_the_theorem() {
    let out = powsum(&[
        "analyze", "--n", "2", "--m", "2", "--b", "7", "--c", "6", "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let line = stdout(&out);
    let report = Report::from_json(line.trim()).expect("valid JSON report");
    assert_eq!(report.verdict, "insoluble");
    let cert = report.certificate.as_ref().expect("certificate present");
    assert_eq!(cert.theorem, "Theorem 5");
    // round trip
    assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
}

#[test]
fn analyze_accepts_power_notation() {
    // 4^2 * 23 = 368, a three-squares obstruction
    let out = powsum(&[
        "analyze", "--n", "2", "--m", "3", "--rhs", "4^2*23", "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = Report::from_json(stdout(&out).trim()).unwrap();
    let trace = report.trace.expect("reduction trace");
    assert_eq!(trace.original, "368");
    assert_eq!(trace.reduced, "23");
}

#[test]
fn analyze_natural_mode() {
    let out = powsum(&[
        "analyze",
        "--n",
        "4",
        "--m",
        "2",
        "--b",
        "1",
        "--c",
        "2^3*3^2",
        "--natural",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = Report::from_json(stdout(&out).trim()).unwrap();
    assert_eq!(report.certificate.unwrap().theorem, "Theorem 11");
}

#[test]
fn count_exact_values_and_budget_exit() {
    let out = powsum(&["count", "--n", "4", "--m", "7", "--rhs", "73728", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = Report::from_json(stdout(&out).trim()).unwrap();
    assert_eq!(report.count.as_deref(), Some("105"));

    let out = powsum(&["count", "--n", "2", "--m", "2", "--rhs", "25"]);
    assert!(stdout(&out).contains("count: 4"));

    let out = powsum(&["count", "--n", "3", "--m", "3", "--rhs", "9005"]);
    assert!(stdout(&out).contains("count: 0"));

    // over budget: distinct exit code 3
    let out = powsum(&["count", "--n", "15", "--m", "127", "--rhs", "23607"]);
    assert_eq!(out.status.code(), Some(3), "{out:?}");
}

#[test]
fn count_lists_small_solution_sets() {
    let out = powsum(&[
        "count", "--n", "2", "--m", "2", "--rhs", "25", "--list", "--json",
    ]);
    let report = Report::from_json(stdout(&out).trim()).unwrap();
    let solutions = report.solutions.expect("listed");
    assert_eq!(solutions.len(), 4);
    assert!(solutions.contains(&vec![3, 4]));
}

#[test]
fn reduce_prints_the_trace() {
    let out = powsum(&["reduce", "--n", "4", "--m", "7", "--rhs", "73728", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = Report::from_json(stdout(&out).trim()).unwrap();
    let trace = report.trace.expect("trace");
    assert_eq!(trace.original, "73728");
    assert_eq!(trace.reduced, "18");
    assert_eq!(trace.stripped.len(), 1);
    assert_eq!(trace.stripped[0].p, 2);
    assert_eq!(trace.stripped[0].steps, 3);
}

#[test]
fn phidiv_tables() {
    let out = powsum(&["phidiv", "--n", "120", "--json"]);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let pairs: Vec<(u64, u64)> = value["phi_divisors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| (d["p"].as_u64().unwrap(), d["degree"].as_u64().unwrap()))
        .collect();
    for expected in [(2, 4), (3, 2), (5, 2), (7, 1), (11, 1), (13, 1)] {
        assert!(pairs.contains(&expected), "missing {expected:?}");
    }

    let out = powsum(&["phidiv", "--n", "3"]);
    assert!(stdout(&out).contains("no phi-divisors"));
}

#[test]
fn usage_errors_use_a_distinct_exit_code() {
    let out = powsum(&["analyze", "--n", "1", "--m", "3", "--rhs", "10"]);
    assert_eq!(out.status.code(), Some(64));

    let out = powsum(&["analyze", "--n", "2", "--m", "1", "--rhs", "10"]);
    assert_eq!(out.status.code(), Some(64));

    let out = powsum(&["analyze", "--n", "2", "--m", "2"]);
    assert_eq!(out.status.code(), Some(64));

    let out = powsum(&["analyze", "--n", "2", "--m", "2", "--rhs", "12x"]);
    assert_eq!(out.status.code(), Some(64));

    let out = powsum(&["count", "--n", "2", "--m", "2", "--rhs", "10", "--b", "1"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn verify_paper_suite_passes() {
    let out = powsum(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("pass sixth-powers-233280-analyze"));
    assert!(text.contains("0 failure(s)"));
}

#[test]
fn verify_paper_filter_subsets() {
    let out = powsum(&["verify-paper", "--filter", "thm9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("standard-n2-residue"));
    assert!(!text.contains("fourth-powers-73728-count"));
}

#[test]
fn verify_paper_rejects_corrupted_expectations() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{{\"sixth-powers-233280-count\": \"count:7\"}}").unwrap();
    let out = powsum(&["verify-paper", "--expect", file.path().to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("FAIL sixth-powers-233280-count"));

    // unparseable file: usage error
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "not json").unwrap();
    let out = powsum(&["verify-paper", "--expect", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
}
