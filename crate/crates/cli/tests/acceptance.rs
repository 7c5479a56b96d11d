//! Acceptance check for the command-line contract: the three documented
//! invocations produce their pinned outputs in JSON mode, the emitted
//! numbers round-trip, and output is byte-stable under a fixed seed.

use std::process::Command;

use dualcalc::DualReal;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_dualcalc"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().expect("exit code"), out.stdout)
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, stdout) = run(&full);
    assert_eq!(code, 0, "expected success for {args:?}");
    serde_json::from_slice(&stdout).expect("stdout is one JSON object")
}

/// The printed literal must parse back to the exact numbers in the object.
fn assert_literal_round_trips(dual: &Value) {
    let literal = dual["literal"].as_str().expect("literal field");
    let parsed: DualReal = literal.parse().expect("literal parses");
    assert_eq!(parsed.re(), dual["re"].as_f64().unwrap(), "re drifts through {literal}");
    assert_eq!(parsed.ze(), dual["ze"].as_f64().unwrap(), "ze drifts through {literal}");
}

fn assert_byte_stable(args: &[&str]) {
    let first = run(args);
    let second = run(args);
    assert_eq!(first, second, "output not byte-stable for {args:?}");
}

#[test]
fn criterion_10_cli_contract() {
    let eval = json(&["eval", "x^2", "--at", "1+1eps"]);
    assert_eq!(eval["value"]["literal"], "1+2eps");
    assert_eq!(eval["value"]["re"], 1.0);
    assert_eq!(eval["value"]["ze"], 2.0);
    assert_literal_round_trips(&eval["value"]);

    let integrate = json(&[
        "integrate", "x", "--from", "0", "--to", "1+1eps", "--type", "1", "--tol", "1e-4",
    ]);
    assert_eq!(integrate["value"]["literal"], "0.5+1eps");
    assert!(integrate["gap_norm"].as_f64().unwrap() < 1e-4);
    assert_literal_round_trips(&integrate["value"]);
    assert_literal_round_trips(&integrate["lower"]);
    assert_literal_round_trips(&integrate["upper"]);

    let compare = json(&["compare", "1", "1+1eps"]);
    assert_eq!(compare["rendered"], "less (type 1); greater (type 2)");

    // Text mode prints the same pinned values.
    let (code, stdout) = run(&["eval", "x^2", "--at", "1+1eps"]);
    assert_eq!((code, stdout.as_slice()), (0, "1+2eps\n".as_bytes()));
    let (code, stdout) = run(&["compare", "1", "1+1eps"]);
    assert_eq!(
        (code, stdout.as_slice()),
        (0, "less (type 1); greater (type 2)\n".as_bytes())
    );

    // Identical seed and flags give byte-identical output, including for
    // the sampling subcommands.
    let seed = "42";
    assert_byte_stable(&["--json", "eval", "x^2", "--at", "1+1eps"]);
    assert_byte_stable(&[
        "--json", "integrate", "x", "--from", "0", "--to", "1+1eps", "--type", "1",
        "--tol", "1e-4",
    ]);
    assert_byte_stable(&["--json", "compare", "1", "1+1eps"]);
    assert_byte_stable(&["--json", "limit-check", "x^2", "--at", "1+1eps", "--seed", seed]);
    assert_byte_stable(&[
        "--json", "ftc-check", "sin(x)", "--from", "0", "--to", "1+0.5eps", "--part", "1",
        "--seed", seed,
    ]);

    println!(
        "[criterion 10] CLI contract examples in json mode, byte-stable under fixed seed: PASS"
    );
}
