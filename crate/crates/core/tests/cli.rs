//! End-to-end checks of the command line binary: exit codes per the
//! contract (0 verified, 1 verified false, 2 usage), report shapes, and
//! byte determinism of the JSON output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockdual"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf8")
}

fn temp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("fockdual-cli-{}-{name}", std::process::id()));
    p
}

#[test]
fn verified_decomposition_exits_zero() {
    let out = run(&["duality", "--group", "gl", "--l", "1", "--emax", "3"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("sector (0) at doubled energy 0 mult 1: ok"), "{text}");
    assert!(text.contains("completeness: 7 of 7 energies exact"), "{text}");
    assert!(!text.contains("MISMATCH"), "{text}");
}

#[test]
fn relation_run_summarizes_each_suite() {
    let out = run(&["relations", "--l", "1", "--emax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in ["anticommutators", "virasoro-w", "locality", "cocycle-compatibility"] {
        assert!(text.contains(&format!("suite {name}: ok")), "{text}");
    }
}

#[test]
fn zero_pairs_is_a_usage_error() {
    let out = run(&["relations", "--l", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_group_is_a_usage_error() {
    let out = run(&["duality", "--group", "so3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn partition_for_the_reflection_group_is_a_usage_error() {
    let out = run(&["labels", "--group", "o1", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unreachable_label_exits_one_with_a_witness() {
    // The lowest vector for partition (3) sits at doubled energy 9, past
    // this window, so the search verifies false and says so on stdout.
    let out = run(&["labels", "--group", "gl", "--lambda", "3", "--emax", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("match: NO"), "{text}");
    assert!(text.contains("\"match\": false"), "{text}");
    assert!(text.contains("\"found\": 0"), "{text}");
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let a = temp("duality-a.json");
    let b = temp("duality-b.json");
    for p in [&a, &b] {
        let out = run(&[
            "duality", "--group", "o2l", "--l", "1", "--emax", "4",
            "--json", p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b);
    assert_eq!(bytes_a.last(), Some(&b'\n'));
    let _ = std::fs::remove_file(a);
    let _ = std::fs::remove_file(b);
}

#[test]
fn character_csv_lists_both_sides() {
    let p = temp("v1plus.csv");
    let out = run(&[
        "characters", "--id", "v1plus", "--order", "4",
        "--csv", p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("characters v1plus: ok, coefficients 0..=4 agree"));
    let csv = std::fs::read_to_string(&p).unwrap();
    assert_eq!(csv, "k,lhs,rhs\n0,1,1\n1,0,0\n2,1,1\n3,1,1\n4,3,3\n");
    let _ = std::fs::remove_file(p);
}

#[test]
fn label_prediction_matches_the_found_vector() {
    let out = run(&["labels", "--group", "o2l", "--lambda", "2", "--emax", "4"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("match: yes"), "{text}");
    assert!(
        text.contains("found 2 highest weight vector(s) at doubled energy 4"),
        "{text}"
    );
}
