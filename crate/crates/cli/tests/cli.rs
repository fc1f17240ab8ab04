//! End-to-end runs of the `blockdet` binary: flags, JSON output, exit codes.

use std::io::Write;
use std::process::{Command, Output};

use blockdet::generators::FamilySpec;
use blockdet_cli::report::RunReport;

fn blockdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockdet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_report(out: &Output) -> RunReport {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("bad report '{text}': {e}"))
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn closed_form_mixed_complete() {
    let out = blockdet(&["det", "--family", "mixed-complete:5", "--method", "closed-form"]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_report(&out);
    assert_eq!(report.value, "3");
    assert_eq!(report.method, "closed-form");
    assert_eq!(report.quantity, "det");
    assert_eq!(report.cross_check, "ok");
}

#[test]
fn dense_permanent_of_k4() {
    let out = blockdet(&["per", "--family", "complete:4", "--method", "dense"]);
    assert_eq!(exit_code(&out), 0);
    let report = stdout_report(&out);
    assert_eq!(report.value, "9");
    assert_eq!(report.method, "dense");
}

#[test]
fn bpartition_determinant_from_a_file() {
    let bowtie = FamilySpec::BlockGraph {
        sizes: vec![3, 3],
        attach: vec![0],
    }
    .generate()
    .unwrap();
    let mut file = tempfile::Builder::new().suffix(".sdg").tempfile().unwrap();
    file.write_all(bowtie.to_sdg().as_bytes()).unwrap();
    let path = file.path().to_str().unwrap().to_owned();
    let out = blockdet(&["det", "--file", &path, "--method", "bpartition"]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_report(&out);
    assert_eq!(report.value, "-4");
    assert_eq!(report.input, path);
    assert_eq!(report.cross_check, "ok");
}

#[test]
fn report_json_round_trips() {
    let out = blockdet(&["det", "--family", "neg-mixed-complete:5"]);
    assert_eq!(exit_code(&out), 0);
    let printed = String::from_utf8(out.stdout).unwrap();
    let report: RunReport = serde_json::from_str(printed.trim()).unwrap();
    assert_eq!(serde_json::to_string(&report).unwrap(), printed.trim());
    assert_eq!(report.value, "11");
    let float = report.float_check.expect("spectral family carries a float leg");
    assert!(float.relative_error < 1e-9);
}

#[test]
fn auto_resolves_by_block_structure() {
    let report = stdout_report(&blockdet(&["det", "--family", "block-graph:3,3@0"]));
    assert_eq!(report.method, "bpartition");
    assert_eq!(report.value, "-4");
    let report = stdout_report(&blockdet(&["per", "--family", "complete:4"]));
    assert_eq!(report.method, "dense");
    assert_eq!(report.value, "9");
}

#[test]
fn parse_failures_exit_2() {
    let out = blockdet(&["det", "--family", "complete:zero"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    // Unknown family name.
    assert_eq!(exit_code(&blockdet(&["det", "--family", "hypercube:4"])), 2);
    // clap usage errors share the code.
    assert_eq!(exit_code(&blockdet(&["det"])), 2);
    assert_eq!(
        exit_code(&blockdet(&[
            "det", "--family", "complete:3", "--file", "x.sdg"
        ])),
        2
    );
    // Unreadable file.
    assert_eq!(
        exit_code(&blockdet(&["det", "--file", "/no/such/file.sdg"])),
        2
    );
}

#[test]
fn method_preconditions_exit_3() {
    // Cover census refuses more than ten vertices.
    let out = blockdet(&["det", "--family", "complete:12", "--method", "cycle-cover"]);
    assert_eq!(exit_code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("at most 10"));
    // Dense permanents refuse more than twenty.
    assert_eq!(
        exit_code(&blockdet(&["per", "--family", "complete:25", "--method", "dense"])),
        3
    );
    // Closed permanent forms do not cover the mixed families.
    assert_eq!(
        exit_code(&blockdet(&[
            "per", "--family", "mixed-complete:5", "--method", "closed-form"
        ])),
        3
    );
}

#[test]
fn check_passes_at_reduced_scale() {
    let out = blockdet(&[
        "check", "--cases", "20", "--max-n", "7", "--seed", "7",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.iter().all(|l| l.starts_with("ok    ")));
    assert!(text.contains("oracle-triangle"));
    assert!(text.contains("neg-mixed-formulas"));
}

#[test]
fn injected_fault_fails_with_a_counterexample() {
    let out = blockdet(&[
        "check",
        "--suite",
        "block-graph-formulas",
        "--cases",
        "5",
        "--max-n",
        "8",
        "--inject-fault",
    ]);
    assert_eq!(exit_code(&out), 1);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"), "{text}");
    assert!(text.contains("counterexample block-graph:"), "{text}");
}

#[test]
fn unknown_suite_exits_2() {
    assert_eq!(exit_code(&blockdet(&["check", "--suite", "everything"])), 2);
}

#[test]
fn bench_emits_the_fixed_csv_schema() {
    let out = blockdet(&[
        "bench",
        "--block-size",
        "3",
        "--blocks",
        "2",
        "--dense-max-n",
        "8",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,n,method,ms"));
    // Two chain lengths, both small enough for the dense scan.
    assert_eq!(lines.count(), 4);
}

#[test]
fn thread_cap_env_is_honored_or_rejected() {
    let ok = Command::new(env!("CARGO_BIN_EXE_blockdet"))
        .args(["per", "--family", "complete:6"])
        .env("BLOCKDET_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_blockdet"))
        .args(["per", "--family", "complete:6"])
        .env("BLOCKDET_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
