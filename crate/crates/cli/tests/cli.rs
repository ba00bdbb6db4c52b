//! End-to-end tests of the `tropicheck` binary: exit codes, report shape,
//! determinism, and the documented example values.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::OnceLock;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropicheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn stderr_text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Report from a command expected to succeed at the process level.
fn report(args: &[&str], expected_code: i32) -> Value {
    let out = run(args);
    assert_eq!(
        code(&out),
        expected_code,
        "args {args:?}; stderr: {}",
        stderr_text(&out)
    );
    let json = stdout_json(&out);
    assert_eq!(json["schema_version"], 1, "schema version");
    assert!(
        json["digest"].as_str().map_or(false, |d| d.len() == 16),
        "digest is a 16-hex-digit string"
    );
    json
}

/// Directory for files the tests generate, unique per test process.
fn scratch_dir() -> &'static PathBuf {
    static DIR: OnceLock<PathBuf> = OnceLock::new();
    DIR.get_or_init(|| {
        let dir = std::env::temp_dir().join(format!("tropicheck-cli-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).expect("scratch dir");
        dir
    })
}

fn write_file(name: &str, contents: &str) -> String {
    let path = scratch_dir().join(name);
    std::fs::write(&path, contents).expect("write test file");
    path.to_string_lossy().into_owned()
}

// ---------------------------------------------------------------------------
// eval / runs
// ---------------------------------------------------------------------------

#[test]
fn eval_documented_examples() {
    let r = report(&["eval", "W1", "baa"], 0);
    assert_eq!(r["command"], "eval");
    assert_eq!(r["result"]["value"], "2");
    assert_eq!(r["result"]["semiring"], "min-plus");

    let r = report(&["eval", "W1", ""], 0);
    assert_eq!(r["result"]["value"], "inf");

    let r = report(&["eval", "W2", "ab"], 0);
    assert_eq!(r["result"]["value"], "1");
}

#[test]
fn eval_reads_automaton_files() {
    let emitted = run(&["corpus", "emit", "w3"]);
    assert_eq!(code(&emitted), 0);
    let text = String::from_utf8(emitted.stdout).expect("emit is UTF-8");
    assert!(text.starts_with("semiring: min-plus"), "raw format: {text}");
    let path = write_file("w3.wa", &text);

    let r = report(&["eval", &path, "bbbaaabbbaaabbbaaa"], 0);
    assert_eq!(r["result"]["value"], "6");
}

#[test]
fn eval_rejects_bad_input() {
    let out = run(&["eval", "no-such-machine", "a"]);
    assert_eq!(code(&out), 1);
    assert!(stderr_text(&out).contains("not a corpus machine"));

    let path = write_file("bad.wa", "semiring: nope\n");
    let out = run(&["eval", &path, "a"]);
    assert_eq!(code(&out), 1);
    let err = stderr_text(&out);
    assert!(err.contains("line 1"), "diagnostic names the line: {err}");

    // An unknown letter is an input error, not a crash.
    let out = run(&["eval", "w1", "xyz"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn runs_documented_examples() {
    let r = report(&["runs", "W3", "aa"], 0);
    assert_eq!(r["result"]["count"], "3");
    let runs = r["result"]["runs"].as_array().expect("runs array");
    assert_eq!(runs.len(), 3);
    for run in runs {
        assert_eq!(run["states"].as_array().expect("states").len(), 3);
    }
    // The fold of the listed run weights is the evaluation: min(2, 1, 0).
    assert_eq!(r["result"]["value"], "0");

    let r = report(&["runs", "W1", ""], 0);
    assert_eq!(r["result"]["count"], "0");
    assert_eq!(r["result"]["runs"].as_array().expect("runs").len(), 0);
    assert_eq!(r["result"]["value"], "inf");
}

#[test]
fn runs_over_limit_is_a_usage_error() {
    let word = "a".repeat(13);
    let out = run(&["runs", "w3", &word]);
    assert_eq!(code(&out), 2, "default limit is 12");
    assert!(stderr_text(&out).contains("--limit"));

    let r = report(&["runs", "w3", &word, "--limit", "13"], 0);
    assert_eq!(r["result"]["count"], "14");
    assert_eq!(r["inputs"]["limit"], 13);
}

// ---------------------------------------------------------------------------
// classify / factorize
// ---------------------------------------------------------------------------

#[test]
fn classify_reports_degree_and_certificates() {
    let r = report(&["classify", "w1"], 0);
    assert_eq!(r["result"]["degree"], "unambiguous");

    let r = report(&["classify", "w5"], 0);
    assert_eq!(r["result"]["degree"], "exponentially-ambiguous");
    assert!(
        r["result"]["doubling_cycle"].is_object(),
        "exponential classification carries its cycle certificate"
    );

    let r = report(&["classify", "w3"], 0);
    assert_eq!(r["result"]["degree"], "polynomially-ambiguous");
    assert!(r["result"]["drift_pattern"].is_object());
}

#[test]
fn factorize_finds_an_idempotent_infix() {
    let r = report(&["factorize", "w3", "bbb"], 0);
    assert_eq!(r["result"]["start"], 0);
    assert_eq!(r["result"]["end"], 1);
    assert_eq!(r["result"]["infix"], "b");
}

#[test]
fn factorize_without_idempotent_infix_is_an_input_error() {
    // The empty word has no infix at all.
    let out = run(&["factorize", "w1", ""]);
    assert_eq!(code(&out), 1);
    assert!(stderr_text(&out).contains("empty word"));

    // A pure swap action is never idempotent, so a single letter cannot be
    // factorized; its square can (the identity action).
    let swap = "semiring: min-plus\nstates: p q\nalphabet: a\n\
                init: p 0\nfinal: p 0\ntrans: p a 0 q\ntrans: q a 0 p\n";
    let path = write_file("swap.wa", swap);
    let out = run(&["factorize", &path, "a"]);
    assert_eq!(code(&out), 1);
    assert!(stderr_text(&out).contains("no infix"));
    let r = report(&["factorize", &path, "aa"], 0);
    assert_eq!(r["result"]["infix"], "aa");
}

// ---------------------------------------------------------------------------
// pump checks: exit codes and payloads
// ---------------------------------------------------------------------------

#[test]
fn pump_nat_violation_exits_three() {
    let r = report(
        &[
            "pump",
            "nat",
            "aaaaaaaaaaaaaaaa [bbb]",
            "--oracle",
            "f2",
            "--threshold",
            "3",
            "--horizon",
            "40",
        ],
        3,
    );
    assert_eq!(r["command"], "pump-nat");
    assert_eq!(r["result"]["outcome"], "violated");
    let verdict = &r["result"]["verdict"];
    assert_eq!(verdict["verdict"], "violated");
    assert_eq!(verdict["refinements_checked"], 3);
    assert_eq!(verdict["refinements_exhausted"], true);
    assert_eq!(verdict["witnesses_truncated"], false);
    assert_eq!(verdict["witnesses"].as_array().expect("witnesses").len(), 3);

    // Value table along the single factor. The canonical refinement keeps
    // the infix `b` of `bbb`, so exponent i yields a^16 b^i bb and the
    // value min(16, i + 2).
    let tables = r["result"]["tables"].as_array().expect("tables");
    assert_eq!(tables.len(), 1);
    assert_eq!(tables[0]["label"], "factor 1");
    let values = tables[0]["values"].as_array().expect("values");
    assert_eq!(values.len(), 41);
    let expected: Vec<String> = (0..=40u64).map(|i| (i + 2).min(16).to_string()).collect();
    let got: Vec<String> = values
        .iter()
        .map(|v| v.as_str().expect("string value").to_string())
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn pump_nat_hold_exits_zero() {
    let r = report(
        &[
            "pump",
            "nat",
            "a [bbb] a",
            "--wa",
            "w1p",
            "--horizon",
            "12",
            "--window",
            "4",
        ],
        0,
    );
    assert_eq!(r["result"]["outcome"], "holds");
    assert_eq!(r["result"]["verdict"]["verdict"], "holds-equal");
    // The number of trailing a's stays 1 however often the b-block pumps.
    let values = r["result"]["tables"][0]["values"]
        .as_array()
        .expect("values");
    assert!(values.iter().all(|v| v == "1"));
}

#[test]
fn pump_nat_strict_growth_via_max_of() {
    // g4 as the only max-of component: the longest b-block grows with i.
    let r = report(
        &[
            "pump",
            "nat",
            "a [bb] a",
            "--max-of",
            "g4",
            "--horizon",
            "10",
        ],
        0,
    );
    assert_eq!(r["result"]["verdict"]["verdict"], "holds-strict");
    assert_eq!(r["inputs"]["function"]["kind"], "max-of");
}

#[test]
fn pump_finite_min_violation() {
    let r = report(
        &[
            "pump",
            "finite-min",
            "[bbb] [aaa] [bbb] [aaa] [bbb] [aaa]",
            "--sets",
            "1,2;3,4;5,6",
            "--oracle",
            "f3",
            "--horizon",
            "32",
        ],
        3,
    );
    assert_eq!(r["result"]["outcome"], "violated");
    assert_eq!(r["inputs"]["threshold"], 3, "defaults to the set count");
    let witness = &r["result"]["verdict"]["witnesses"][0];
    assert_eq!(witness["unions"].as_array().expect("unions").len(), 3);
    // Three per-set tables were rendered.
    assert_eq!(r["result"]["tables"].as_array().expect("tables").len(), 3);
    assert_eq!(r["result"]["tables"][0]["set"], serde_json::json!([1, 2]));
}

#[test]
fn pump_finite_min_from_component_files() {
    // min(#a, #b) as a pointwise min of two one-state counters; equivalent
    // to the f2 oracle, so the same representation is violated.
    let count_a = "semiring: min-plus\nstates: s\nalphabet: a b\n\
                   init: s 0\nfinal: s 0\ntrans: s a 1 s\ntrans: s b 0 s\n";
    let count_b = "semiring: min-plus\nstates: s\nalphabet: a b\n\
                   init: s 0\nfinal: s 0\ntrans: s a 0 s\ntrans: s b 1 s\n";
    let pa = write_file("count_a.wa", count_a);
    let pb = write_file("count_b.wa", count_b);
    let r = report(
        &[
            "pump",
            "nat",
            "aaaaaaaaaaaaaaaa [bbb]",
            "--min-of",
            &format!("{pa},{pb}"),
            "--threshold",
            "3",
            "--horizon",
            "40",
        ],
        3,
    );
    assert_eq!(r["result"]["outcome"], "violated");
    assert_eq!(r["inputs"]["function"]["kind"], "min-of");
    assert_eq!(
        r["inputs"]["function"]["names"]
            .as_array()
            .expect("names")
            .len(),
        2
    );
}

#[test]
fn pump_pa_min_hold_exits_zero() {
    let r = report(
        &[
            "pump",
            "pa-min",
            "[aaa] [bbb]",
            "--partition",
            "1;2",
            "--wa",
            "w3",
            "--horizon",
            "20",
        ],
        0,
    );
    assert_eq!(r["result"]["outcome"], "holds");
    assert_eq!(r["result"]["tables"].as_array().expect("tables").len(), 2);
}

#[test]
fn pump_fa_max_violation_lists_cross_failures() {
    let r = report(
        &[
            "pump",
            "fa-max",
            "[bbb] a [bbb] a [bbb]",
            "--sets",
            "1;2;3",
            "--oracle",
            "g4",
            "--horizon",
            "32",
        ],
        3,
    );
    assert_eq!(r["result"]["outcome"], "violated");
    let witness = &r["result"]["verdict"]["witnesses"][0];
    assert_eq!(witness["sets"].as_array().expect("sets").len(), 3);
    assert_eq!(
        witness["cross_failures"]
            .as_array()
            .expect("cross failures")
            .len(),
        3,
        "every pair of the three singleton sets fails"
    );
}

#[test]
fn pump_pa_max_violation() {
    let r = report(
        &[
            "pump",
            "pa-max",
            "[aaa] [bbb] # [aaa] [bbb] # [aaa] [bbb] # [aaa] [bbb]",
            "--partition",
            "1,2;3,4;5,6;7,8",
            "--oracle",
            "g5",
            "--horizon",
            "32",
        ],
        3,
    );
    assert_eq!(r["result"]["outcome"], "violated");
    let witness = &r["result"]["verdict"]["witnesses"][0];
    assert_eq!(witness["blocks"].as_array().expect("blocks").len(), 4);
}

#[test]
fn pump_input_errors_exit_one() {
    // No factor in the representation.
    let out = run(&["pump", "nat", "abc", "--oracle", "f1"]);
    assert_eq!(code(&out), 1);
    assert!(stderr_text(&out).contains("at least one [factor]"));

    // The nat check wants exactly one factor.
    let out = run(&["pump", "nat", "[a] [b]", "--oracle", "f1"]);
    assert_eq!(code(&out), 1);
    assert!(stderr_text(&out).contains("exactly one factor"));

    // Unbalanced brackets.
    let out = run(&["pump", "nat", "[bbb", "--oracle", "f1"]);
    assert_eq!(code(&out), 1);
    assert!(stderr_text(&out).contains("unclosed"));

    // Set index out of range.
    let out = run(&[
        "pump",
        "finite-min",
        "[a] [b]",
        "--sets",
        "1;3",
        "--oracle",
        "f2",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr_text(&out).contains("out of range"));

    // A partition must cover every factor.
    let out = run(&[
        "pump",
        "pa-min",
        "[a] [b]",
        "--partition",
        "1",
        "--oracle",
        "f3",
    ]);
    assert_eq!(code(&out), 1);

    // Semiring gate: finite-min on a max-plus function.
    let out = run(&[
        "pump",
        "finite-min",
        "[a] [b]",
        "--sets",
        "1;2",
        "--oracle",
        "g3",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr_text(&out).contains("min-plus"));

    // Threshold longer than the factor.
    let out = run(&[
        "pump",
        "nat",
        "[bb]",
        "--oracle",
        "f1",
        "--threshold",
        "5",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr_text(&out).contains("threshold"));
}

#[test]
fn usage_errors_exit_two() {
    // Unknown subcommand.
    assert_eq!(code(&run(&["frobnicate"])), 2);
    // Pump without a function source.
    assert_eq!(code(&run(&["pump", "nat", "[bbb]"])), 2);
    // Two function sources at once.
    assert_eq!(
        code(&run(&[
            "pump", "nat", "[bbb]", "--oracle", "f1", "--wa", "w1"
        ])),
        2
    );
    // Non-numeric horizon.
    assert_eq!(code(&run(&["eval", "w1", "a", "--horizon", "many"])), 2);
}

#[test]
fn all_refinements_lists_the_universe() {
    let r = report(
        &[
            "pump",
            "nat",
            "aa [bbbb] a",
            "--oracle",
            "f1",
            "--horizon",
            "12",
            "--all-refinements",
        ],
        0,
    );
    let universe = &r["result"]["refinement_universe"];
    assert_eq!(universe["total"], "4");
    assert_eq!(universe["truncated"], false);
    let listing = universe["refinements"].as_array().expect("listing");
    assert_eq!(listing.len(), 4);
    assert_eq!(listing[0]["index"], 0);
    assert_eq!(listing[0]["kept"], serde_json::json!(["b"]));

    // Without the flag only the summary appears.
    let r = report(
        &[
            "pump", "nat", "aa [bbbb] a", "--oracle", "f1", "--horizon", "12",
        ],
        0,
    );
    assert!(r["result"]["refinement_universe"]["refinements"].is_null());
    assert_eq!(r["result"]["refinement_universe"]["kept"], 4);
}

// ---------------------------------------------------------------------------
// corpus / hierarchy
// ---------------------------------------------------------------------------

#[test]
fn corpus_list_enumerates_everything() {
    let r = report(&["corpus", "list"], 0);
    let machines = r["result"]["machines"].as_array().expect("machines");
    let oracles = r["result"]["oracles"].as_array().expect("oracles");
    assert_eq!(machines.len(), 11);
    assert_eq!(oracles.len(), 10);
    assert_eq!(machines[0]["name"], "w1");
    assert_eq!(machines[0]["degree"], "unambiguous");
    assert_eq!(machines[0]["oracle"], "f1");

    let out = run(&["corpus", "emit", "no-such"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn hierarchy_separates_all_classes() {
    let out = run(&["hierarchy", "--horizon", "32", "--pretty"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let r = stdout_json(&out);
    assert_eq!(r["result"]["all_separate"], true);
    assert_eq!(r["result"]["separations"], 10);
    let rows = r["result"]["rows"].as_array().expect("rows");
    assert_eq!(rows.len(), 10);
    for row in rows {
        assert_eq!(row["outcome"], "violated", "row {}", row["function"]);
        assert_eq!(row["membership_verified"], true);
    }
    // The pretty table lands on stderr with one line per row plus a header.
    let table = stderr_text(&out);
    assert!(table.contains("function"));
    assert!(table.contains("f2"));
    assert!(table.contains("g6"));
}

// ---------------------------------------------------------------------------
// report invariants
// ---------------------------------------------------------------------------

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut()
        .expect("report object")
        .remove("timing_ms")
        .expect("timing field present");
    v
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    for args in [
        vec!["classify", "w4"],
        vec!["runs", "w3", "aba"],
        // min(4, #b) plateaus before the threshold, so this one holds.
        vec![
            "pump", "nat", "aaaa [bb]", "--oracle", "f2", "--horizon", "12",
        ],
    ] {
        let first = without_timing(report(&args, 0));
        let second = without_timing(report(&args, 0));
        assert_eq!(first, second, "args {args:?}");
    }
}

#[test]
fn pretty_tables_go_to_stderr_not_stdout() {
    let out = run(&["eval", "W1", "baa", "--pretty"]);
    assert_eq!(code(&out), 0);
    stdout_json(&out); // stdout stays pure JSON
    assert!(stderr_text(&out).contains("W1"));

    let out = run(&[
        "pump", "nat", "a [bbb] a", "--wa", "w1", "--horizon", "8", "--pretty",
    ]);
    assert_eq!(code(&out), 0);
    stdout_json(&out);
    let err = stderr_text(&out);
    assert!(err.contains("factor 1"), "table header on stderr: {err}");
}
