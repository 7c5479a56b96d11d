//! Contract tests driving the compiled binary: exit codes, text renderings,
//! and the shape of the JSON objects.

use std::process::{Command, Output};

use serde_json::Value;

fn dualcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process not killed by signal")
}

/// Runs with `--json` prepended and parses the single emitted object.
fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = dualcalc(&full);
    let value = serde_json::from_str(&stdout(&out)).expect("stdout is one JSON object");
    (code(&out), value)
}

#[test]
fn eval_prints_the_dual_value_in_text_mode() {
    let out = dualcalc(&["eval", "x^2", "--at", "1+1eps"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1+2eps\n");
}

#[test]
fn eval_echoes_inputs_alongside_the_result_in_json_mode() {
    let (exit, v) = json(&["eval", "x^2 + 1", "--at", "2-1eps"]);
    assert_eq!(exit, 0);
    assert_eq!(v["command"], "eval");
    assert_eq!(v["expr"], "x^2 + 1");
    assert_eq!(v["at"]["re"], 2.0);
    assert_eq!(v["at"]["ze"], -1.0);
    assert_eq!(v["value"]["re"], 5.0);
    assert_eq!(v["value"]["ze"], -4.0);
    assert_eq!(v["value"]["literal"], "5-4eps");
}

#[test]
fn diff_uses_the_exact_rule_by_default() {
    let (exit, v) = json(&["diff", "x^3", "--at", "2"]);
    assert_eq!(exit, 0);
    assert_eq!(v["method"], "exact lifted");
    assert_eq!(v["differentiable"], true);
    assert_eq!(v["derivative"]["re"], 12.0);
    assert_eq!(v["residuals"][0], 0.0);
    assert_eq!(v["residuals"][1], 0.0);
}

#[test]
fn diff_switches_to_central_differences_on_request() {
    let (exit, v) = json(&["diff", "x^3", "--at", "2", "--finite-difference"]);
    assert_eq!(exit, 0);
    assert_eq!(v["method"], "finite difference");
    assert_eq!(v["step"], 1e-5);
    let d = v["derivative"]["re"].as_f64().unwrap();
    assert!((d - 12.0).abs() < 1e-6);
}

#[test]
fn diff_echoes_the_requested_order() {
    let (exit, v) = json(&["diff", "sin(x)", "--at", "0.5", "--theta", "2"]);
    assert_eq!(exit, 0);
    assert_eq!(v["theta"], 2);
    assert_eq!(v["differentiable"], true);
}

#[test]
fn check_cr_reports_satisfied_residuals_for_an_analytic_expression() {
    let out = dualcalc(&["check-cr", "x * sin(x)", "--at", "1+0.5eps"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("satisfied: residuals"));
}

#[test]
fn limit_check_passes_with_the_exact_candidate() {
    let out = dualcalc(&["limit-check", "x^2", "--at", "1+1eps", "--seed", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("pass: worst ratio"), "unexpected output: {text}");
    assert!(text.contains("candidate 2+2eps"));
}

#[test]
fn limit_check_fails_with_a_displaced_candidate() {
    let out = dualcalc(&["limit-check", "x^2", "--at", "1+1eps", "--candidate", "2.1+2eps"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("fail: worst ratio"));
}

#[test]
fn limit_check_json_carries_sampling_provenance() {
    let (exit, v) = json(&["limit-check", "sin(x)", "--at", "0.4", "--seed", "11"]);
    assert_eq!(exit, 0);
    assert_eq!(v["seed"], 11);
    assert_eq!(v["samples"], 1000);
    assert_eq!(v["eps"], 1e-3);
    assert_eq!(v["delta"], 1e-4);
    assert!(v["worst_ratio"].as_f64().unwrap() < 1.0);
}

#[test]
fn compare_renders_both_orders_for_equal_real_parts() {
    let out = dualcalc(&["compare", "3+2eps", "3-1eps"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "greater (type 1); less (type 2)\n");
}

#[test]
fn compare_renders_one_order_when_the_other_does_not_apply() {
    // Real parts differ and the dual part moves against the type-1 cone.
    let out = dualcalc(&["compare", "1", "2-1eps"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "less (type 2)\n");
}

#[test]
fn compare_prints_equal_for_identical_values() {
    let out = dualcalc(&["compare", "1.5+2eps", "1.5+2eps"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "equal\n");
}

#[test]
fn compare_json_carries_all_five_flags() {
    let (exit, v) = json(&["compare", "0", "1+3eps"]);
    assert_eq!(exit, 0);
    assert_eq!(v["greater1"], false);
    assert_eq!(v["less1"], true);
    assert_eq!(v["greater2"], false);
    assert_eq!(v["less2"], false);
    assert_eq!(v["equal"], false);
    assert_eq!(v["rendered"], "less (type 1)");
}

#[test]
fn integrate_reports_bracket_and_provenance() {
    let (exit, v) =
        json(&["integrate", "x^2", "--from", "0", "--to", "1", "--tol", "1e-3"]);
    assert_eq!(exit, 0);
    let value = v["value"]["re"].as_f64().unwrap();
    assert!((value - 1.0 / 3.0).abs() < 1e-3);
    assert!(v["gap_norm"].as_f64().unwrap() < 1e-3);
    assert!(v["depth"].as_u64().unwrap() > 0);
    assert!(v["cells"].as_u64().unwrap() > 0);
    assert_eq!(v["extrema"], "lattice 8");
    let lo = v["lower"]["re"].as_f64().unwrap();
    let hi = v["upper"]["re"].as_f64().unwrap();
    assert!(lo <= value && value <= hi);
}

#[test]
fn integrate_accepts_the_certified_extrema_switch() {
    let (exit, v) = json(&[
        "integrate", "sin(x)", "--from", "0", "--to", "1", "--tol", "1e-3", "--certified",
    ]);
    assert_eq!(exit, 0);
    assert_eq!(v["extrema"], "certified");
}

#[test]
fn integrate_rejects_unordered_endpoints() {
    let (exit, v) = json(&["integrate", "x", "--from", "1+1eps", "--to", "0"]);
    assert_eq!(exit, 3);
    assert_eq!(v["error"]["code"], "E_INVALID_INTERVAL");
}

#[test]
fn gap_witness_found_at_a_reachable_tolerance() {
    let out = dualcalc(&[
        "integrate", "x", "--from", "0", "--to", "1+1eps", "--gap-below", "1e-2+1e-2eps",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("gap witness: found"));
}

#[test]
fn missing_gap_witness_exits_with_verification_failure() {
    let out = dualcalc(&[
        "integrate", "sin(x)", "--from", "0", "--to", "2+1eps", "--tol", "1e-1",
        "--depth", "10", "--gap-below", "1e-9+1e-9eps",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("gap witness: not found"));
}

#[test]
fn gap_below_requires_an_order_positive_dual_tolerance() {
    let (exit, v) =
        json(&["integrate", "x", "--from", "0", "--to", "1+1eps", "--gap-below", "1e-3"]);
    assert_eq!(exit, 3);
    assert_eq!(v["error"]["code"], "E_INVALID_EPSILON");
}

#[test]
fn ftc_part_two_passes_on_a_polynomial() {
    let out = dualcalc(&["ftc-check", "x^2", "--from", "0", "--to", "1+0.5eps"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("pass:"));
}

#[test]
fn ftc_part_one_passes_on_a_real_interval() {
    let (exit, v) =
        json(&["ftc-check", "x^2", "--from", "0", "--to", "1", "--part", "1", "--seed", "7"]);
    assert_eq!(exit, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["part"], 1);
    assert_eq!(v["seed"], 7);
    // Default base point is the interval midpoint.
    assert_eq!(v["at"]["re"], 0.5);
    assert!(v["worst_error"].as_f64().unwrap() < 5e-2);
}

#[test]
fn ftc_part_one_accepts_an_explicit_base_point() {
    let (exit, v) = json(&[
        "ftc-check", "sin(x)", "--from", "0", "--to", "1+0.5eps", "--part", "1",
        "--at", "0.25+0.1eps",
    ]);
    assert_eq!(exit, 0);
    assert_eq!(v["at"]["literal"], "0.25+0.1eps");
}

#[test]
fn parse_errors_carry_code_and_offset_in_json_mode() {
    let (exit, v) = json(&["eval", "x +", "--at", "1"]);
    assert_eq!(exit, 3);
    assert_eq!(v["error"]["code"], "E_PARSE");
    assert_eq!(v["error"]["offset"], 3);
    assert!(v["error"]["message"].as_str().unwrap().contains("parse error"));
}

#[test]
fn parse_errors_go_to_stderr_in_text_mode() {
    let out = dualcalc(&["eval", "x", "--at", "bogus"]);
    assert_eq!(code(&out), 3);
    assert_eq!(stdout(&out), "");
    assert!(stderr(&out).starts_with("error[E_PARSE]:"));
}

#[test]
fn domain_errors_map_to_exit_three() {
    let (exit, v) = json(&["eval", "1/x", "--at", "0+1eps"]);
    assert_eq!(exit, 3);
    assert_eq!(v["error"]["code"], "E_DOMAIN");
}

#[test]
fn missing_required_flags_exit_two() {
    let out = dualcalc(&["eval", "x"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn out_of_range_order_exits_two() {
    let out = dualcalc(&["integrate", "x", "--from", "0", "--to", "1", "--type", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_flags_exit_two() {
    let out = dualcalc(&["eval", "x", "--at", "1", "--frobnicate"]);
    assert_eq!(code(&out), 2);
}
