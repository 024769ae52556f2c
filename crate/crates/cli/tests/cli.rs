use std::process::{Command, Output};

use deformed_voa_cli::render::{from_json, to_json};
use deformed_voa_cli::Report;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deformed-voa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Report, String, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = bin(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    (from_json(&text).unwrap(), text, out.status.code().unwrap())
}

#[test]
fn verify_rank_two_passes_with_central_charge_2r() {
    let (report, _, code) = json(&["verify", "--d", "2", "--max-weight", "4"]);
    assert_eq!(code, 0);
    assert!(report.passed);
    assert_eq!(report.central_charge.as_deref(), Some("2*r"));
    assert!(report
        .checks
        .iter()
        .any(|c| c.identity.starts_with("3-4-5 rotation")));
}

#[test]
fn verify_virasoro_case_passes() {
    let out = bin(&["verify", "--d", "1", "--max-weight", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).ends_with("PASS\n"));
}

#[test]
fn corrupted_bracket_fails_with_witness() {
    let (report, _, code) = json(&[
        "verify",
        "--d",
        "1",
        "--max-weight",
        "2",
        "--inject-fault",
        "2",
    ]);
    assert_eq!(code, 1);
    assert!(!report.passed);
    let failure = report.first_failure().unwrap();
    assert_eq!(failure.identity, "diagonal Virasoro relation");
    let witness = failure.witness.as_ref().unwrap();
    assert_ne!(witness.lhs, witness.rhs);

    let out = bin(&[
        "verify",
        "--d",
        "1",
        "--max-weight",
        "2",
        "--inject-fault",
        "2",
    ]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("diagonal Virasoro relation failed"));
}

#[test]
fn dims_csv_for_virasoro() {
    let out = bin(&["dims", "--d", "1", "--max-weight", "6", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = "weight,dim_M,dim_VJ\n0,1,1\n1,0,0\n2,1,1\n3,1,1\n4,3,2\n5,3,2\n6,7,4\n";
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);
}

#[test]
fn dims_small_ranks() {
    let (report, _, _) = json(&["dims", "--d", "2", "--max-weight", "2"]);
    let rows = report.dimensions.unwrap();
    assert_eq!((rows[2].dim_m, rows[2].dim_vj), (3, 3));
    let (report, _, _) = json(&["dims", "--d", "3", "--max-weight", "3"]);
    assert_eq!(report.dimensions.unwrap()[3].dim_m, 9);
}

#[test]
fn gram_weight_two_virasoro() {
    let (report, _, code) = json(&["gram", "--d", "1", "--max-weight", "2"]);
    assert_eq!(code, 0);
    let gram = report.gram.unwrap();
    assert_eq!(gram[2].matrix, vec![vec!["1/2*r".to_string()]]);
    assert_eq!(gram[2].labels, vec!["L[1,1](-2)1".to_string()]);
}

#[test]
fn gram_specialized() {
    let (report, _, _) = json(&["gram", "--d", "1", "--max-weight", "4", "--r", "-22/5"]);
    let gram = report.gram.unwrap();
    assert_eq!(gram[4].determinant, "0");
    assert_eq!(gram[4].matrix[0][0], "-22");
}

#[test]
fn radical_nullities() {
    let (report, _, code) = json(&["radical", "--d", "1", "--max-weight", "4", "--r=-22/5"]);
    assert_eq!(code, 0);
    let nullities: Vec<usize> = report.radical.unwrap().iter().map(|r| r.nullity).collect();
    assert_eq!(nullities, vec![0, 0, 0, 0, 1]);
    let (report, _, _) = json(&["radical", "--d", "1", "--max-weight", "4", "--r", "1"]);
    assert!(report.radical.unwrap().iter().all(|r| r.nullity == 0));
}

#[test]
fn json_round_trip_is_byte_identical() {
    for args in [
        &[
            "verify",
            "--d",
            "1",
            "--max-weight",
            "2",
            "--inject-fault",
            "3",
        ][..],
        &["gram", "--d", "2", "--max-weight", "3"][..],
        &["griess", "--d", "2"][..],
        &["dims", "--d", "1", "--max-weight", "5"][..],
    ] {
        let (report, text, _) = json(args);
        assert_eq!(to_json(&report), text);
    }
}

#[test]
fn report_content_does_not_depend_on_jobs() {
    let (one, _, _) = json(&["verify", "--d", "2", "--max-weight", "3", "--jobs", "1"]);
    let (three, _, _) = json(&["verify", "--d", "2", "--max-weight", "3", "--jobs", "3"]);
    assert_eq!(one.without_timings(), three.without_timings());
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dims.json");
    let out = bin(&[
        "dims",
        "--d",
        "1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report = from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.command, "dims");
}

#[test]
fn automorphisms_rank_three() {
    let (report, _, code) = json(&["auto", "--d", "3", "--max-weight", "3"]);
    assert_eq!(code, 0);
    // six permutations, -I and the rotation
    let labels: std::collections::BTreeSet<&str> = report
        .checks
        .iter()
        .map(|c| c.identity.split(':').next().unwrap())
        .collect();
    assert_eq!(labels.len(), 8);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["radical", "--d", "1"][..],
        &["gram", "--format", "csv"][..],
        &["dims", "--max-weight", "1"][..],
        &["dims", "--d", "0"][..],
        &["dims", "--r", "0.5"][..],
        &["verify", "--jobs", "0"][..],
        &["frobnicate"][..],
    ] {
        assert_eq!(bin(args).status.code(), Some(2), "{args:?}");
    }
}
