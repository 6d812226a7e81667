//! End-to-end tests of the `entmax` binary: flags, formats, exit codes,
//! and the emit/re-ingest round trip.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn entmax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entmax"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn entmax_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_entmax"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("stdin writable");
    child.wait_with_output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn bound_emits_closed_form_json() {
    let v = stdout_json(&entmax(&["bound", "--n", "4", "--r", "2"]));
    let cf = entmax_core::ClosedForm::new(4, 2).unwrap();
    assert_eq!(v["w0"].as_f64().unwrap(), cf.w0);
    assert_eq!(v["bound_bits"].as_f64().unwrap(), cf.bound_bits);
}

#[test]
fn sum_defaults_to_csv_rows() {
    let out = entmax_stdin(&["sum"], r#"{"r": 2, "pmfs": [[0.5, 0.0, 0.5], [0.5, 0.0, 0.5]]}"#);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "value,probability");
    assert_eq!(lines[1], "0,0.25");
    assert_eq!(lines[3], "2,0.5");
    assert_eq!(lines.len(), 6);
}

#[test]
fn sum_rational_backend_emits_fractions() {
    let out = entmax_stdin(
        &["sum", "--backend", "rational", "--output", "json"],
        r#"{"r": 2, "pmfs": [["1/3", "1/3", "1/3"], ["1/3", "1/3", "1/3"]]}"#,
    );
    let v = stdout_json(&out);
    assert_eq!(v["law"][0], "1/9");
    assert_eq!(v["law"][2], "1/3");
}

#[test]
fn emitted_config_round_trips_through_entropy() {
    let attain = entmax(&["attain", "--n", "5"]);
    let attain_json = stdout_json(&attain);
    let reported = attain_json["entropy_bits"].as_f64().unwrap();

    let entropy = entmax_stdin(&["entropy"], &String::from_utf8_lossy(&attain.stdout));
    let recomputed = stdout_json(&entropy)["entropy_bits"].as_f64().unwrap();
    assert!(
        (reported - recomputed).abs() <= 1e-12,
        "round trip drift: {reported} vs {recomputed}"
    );
}

#[test]
fn optimize_report_config_round_trips() {
    let opt = entmax(&["optimize", "--n", "2", "--starts", "4", "--seed", "1"]);
    let report = stdout_json(&opt);
    let best = report["numeric_best"].as_f64().unwrap();
    let config = report["numeric_config"].to_string();
    let entropy = entmax_stdin(&["entropy"], &config);
    let recomputed = stdout_json(&entropy)["entropy_bits"].as_f64().unwrap();
    assert!((best - recomputed).abs() <= 1e-12);
}

#[test]
fn optimize_with_grid_oracle() {
    let v = stdout_json(&entmax(&[
        "optimize",
        "--n",
        "1",
        "--r",
        "2",
        "--starts",
        "2",
        "--grid-step",
        "0.05",
    ]));
    let numeric = v["numeric_best"].as_f64().unwrap();
    let grid = v["grid_best_bits"].as_f64().unwrap();
    assert!(grid <= numeric + 1e-9, "grid {grid} must not beat optimum {numeric}");
    assert!(v["grid_evaluated"].as_u64().unwrap() > 0);
}

#[test]
fn split_reports_parity_structure() {
    let out = entmax_stdin(
        &["split", "--output", "json"],
        r#"{"r": 2, "pmfs": [[0.25, 0.5, 0.25]]}"#,
    );
    let v = stdout_json(&out);
    assert_eq!(v["r_mod"], 2);
    assert_eq!(v["parts"][0][0].as_f64().unwrap(), 0.25);
    assert_eq!(v["parts"][1][0].as_f64().unwrap(), 0.5);
    assert!(v["parity_report"]["h_even"].as_f64().unwrap() <= 1.0 + 1e-9);
}

#[test]
fn split_csv_carries_residue_column() {
    let out = entmax_stdin(
        &["split", "--output", "csv", "--r-mod", "3"],
        r#"{"r": 3, "pmfs": [["0.15", "0.06", "0.70", "0.09"]]}"#,
    );
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("value,probability,residue_class\n"));
    assert!(text.lines().nth(4).unwrap().ends_with(",0")); // value 3 mod 3
}

#[test]
fn check_ulc_flags_the_counterexample_part() {
    let out = entmax_stdin(
        &["check-ulc"],
        r#"{"coeffs": ["0.003375", "0.044091", "0.369325", "0.000729"]}"#,
    );
    let v = stdout_json(&out);
    assert_eq!(v["backend"], "rational");
    assert_eq!(v["is_ulc"], false);
    assert_eq!(v["ulc_violations"][0], 1);
    assert_eq!(v["is_log_concave"], true);
    assert_eq!(v["real_rooted"], false);
    assert_eq!(v["hurwitz_stable"], true);
}

#[test]
fn check_ulc_on_config_checks_both_parts() {
    let out = entmax_stdin(
        &["check-ulc"],
        r#"{"r": 2, "pmfs": [["1/3", "1/3", "1/3"], ["1/2", "0", "1/2"]]}"#,
    );
    let v = stdout_json(&out);
    assert_eq!(v["even_part"]["is_ulc"], true);
    assert_eq!(v["odd_part"]["is_ulc"], true);
}

#[test]
fn figure_emits_plot_ready_csv() {
    let out = entmax(&["figure", "--n", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "value,probability,residue_class");
    assert_eq!(lines.len(), 10); // header + values 0..=8
    assert!(lines[1].starts_with("0,") && lines[1].ends_with(",0"));
    assert!(lines[2].starts_with("1,") && lines[2].ends_with(",1"));
}

#[test]
fn verify_single_claim_exits_zero() {
    let out = entmax(&["verify", "--claim", "example-r3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["claim_id"], "example-r3");
    assert_eq!(v[0]["passed"], true);
}

#[test]
fn verify_csv_summarizes_claims() {
    let out = entmax(&[
        "verify", "--claim", "fig-1", "--output", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text, "claim_id,passed\nfig-1,true\n");
}

#[test]
fn verify_all_claims_exit_zero() {
    // Reduced corpus; the full-scale run is the acceptance suite's job.
    let out = entmax(&[
        "verify", "--trials", "50", "--n-max", "2", "--starts", "4",
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let claims: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["claim_id"].as_str().unwrap())
        .collect();
    assert_eq!(claims, ["example-r3", "fig-1", "prop-parity", "thm-main-n1", "thm-main-n2"]);
    assert!(v.as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn unknown_claim_is_a_usage_error() {
    let out = entmax(&["verify", "--claim", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown claim"));
}

#[test]
fn malformed_json_exits_two_with_location() {
    let out = entmax_stdin(&["sum"], r#"{"r": 2, "pmfs": [[0.5, 0.5"#);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "diagnostic missing location: {err}");
}

#[test]
fn infeasible_grid_exits_two() {
    let out = entmax(&[
        "optimize", "--n", "4", "--r", "4", "--starts", "1", "--grid-step", "0.002",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid too large"));
}

#[test]
fn bad_pmf_exits_two() {
    let out = entmax_stdin(&["entropy"], r#"{"r": 1, "pmfs": [[0.9, 0.2]]}"#);
    assert_eq!(out.status.code(), Some(2));
}
