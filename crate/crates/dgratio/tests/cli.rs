//! The command surface, driven in-process through `run` and, for exit
//! statuses and environment handling, through the built binary.

use std::process::Command;

use dgratio::{run, Outcome, EXIT_CAP, EXIT_INEXACT, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, TABLE_HEADER};
use serde_json::Value;

fn go(args: &[&str]) -> Outcome {
    run(std::iter::once("dgratio").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut v: Vec<&str> = args.to_vec();
    v.push("--json");
    let out = go(&v);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn compute_text() {
    let out = go(&["compute", "--set", "1,4,7"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("alpha-bar = 3/8 (exact)\n"), "{}", out.stdout);
    assert!(out.stdout.contains("witness: "));
    assert!(out.stdout.contains("known: 1-4-k (theorem) k=7 alpha-bar = 3/8"));
}

#[test]
fn compute_json_is_stable() {
    let a = go(&["compute", "--set", "2,5,9", "--json"]);
    let b = go(&["compute", "--set", "2,5,9", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"][0], "compute");
    assert_eq!(v["result"]["status"], "exact");
    assert_eq!(v["result"]["set"], serde_json::json!([2, 5, 9]));
}

#[test]
fn methods_agree() {
    for m in ["auto", "search", "stategraph"] {
        let v = json(&["compute", "--set", "1,2,6", "--method", m]);
        assert_eq!(v["result"]["value"], "2/7", "{m}");
    }
}

#[test]
fn search_on_all_odd_set_uses_shortcut() {
    let v = json(&["compute", "--set", "3,5,9", "--method", "search"]);
    assert_eq!(v["result"]["value"], "1/2");
    assert_eq!(v["result"]["method"], "shortcut");
    assert!(v["result"]["notes"][0].as_str().unwrap().contains("shortcut"));
}

#[test]
fn small_budget_reports_bounds() {
    let out = go(&["compute", "--set", "5,6,9", "--method", "search", "--budget", "1000"]);
    assert_eq!(out.code, EXIT_INEXACT);
    assert!(out.stdout.starts_with("alpha-bar in ["), "{}", out.stdout);
}

#[test]
fn zero_budget_is_registry_only() {
    let v = json(&["compute", "--set", "1,4,12", "--budget", "0"]);
    assert_eq!(v["result"]["status"], "registry_only");
    assert_eq!(v["result"]["value"], "5/13");
    // The lower bound comes from a verified witness.
    assert_eq!(v["result"]["lower"], "5/13");
}

#[test]
fn state_cap_is_exit_four() {
    let out = go(&["compute", "--set", "1,30,61", "--method", "stategraph"]);
    assert_eq!(out.code, EXIT_CAP, "{}", out.stderr);
}

#[test]
fn blocks() {
    let out = go(&["blocks", "--set", "1,3,6", "--blocks", "2^2 5"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "independent; density 1/3\n"));
    let out = go(&["blocks", "--set", "1,4", "--blocks", "2 2"]);
    assert_eq!(out.code, EXIT_MISMATCH);
    assert!(out.stdout.starts_with("not independent"));
    let out = go(&["blocks", "--set", "1,4", "--blocks", "(2 3"]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn verify_theorem() {
    let out = go(&["verify", "--family", "1-4-k", "--range", "5..12"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("8 match, 0 mismatch"));
    let v = json(&["verify", "--family", "1-k-kp3", "--range", "3..8"]);
    assert_eq!(v["result"]["matches"], 6);
    assert_eq!(v["result"]["verdicts"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_with_fixed_parameter() {
    let v = json(&["verify", "--family", "lz04-2", "--range", "2..5", "--param", "a=1"]);
    assert_eq!(v["result"]["matches"], 4);
}

#[test]
fn verify_reports_exclusions() {
    let v = json(&["verify", "--family", "1-k-kp5", "--range", "7"]);
    assert_eq!(v["result"]["skipped"], 1);
    assert_eq!(v["result"]["verdicts"][0]["skipped"], "excluded");
}

#[test]
fn conjecture_counterexample_is_a_finding() {
    // {1,2,6} has ratio 2/7, not the conjectured 1/4.
    let v = json(&["verify", "--family", "1-2k-2kp2l-conj", "--range", "1", "--param", "l=2"]);
    assert_eq!(v["result"]["findings"], 1);
    assert_eq!(v["result"]["failures"], 0);
    let out = go(&["verify", "--family", "1-2k-2kp2l-conj", "--range", "1", "--param", "l=2"]);
    assert_eq!(out.code, EXIT_OK);
}

#[test]
fn usage_errors() {
    for args in [
        &["compute", "--set", "1,x"][..],
        &["compute"],
        &["verify", "--family", "nope", "--range", "1..2"],
        &["verify", "--family", "1-4-k", "--range", "9..2"],
        &["verify", "--family", "1-4-k", "--range", "5", "--param", "zz=1"],
        &["frobnicate"],
    ] {
        assert_eq!(go(args).code, EXIT_USAGE, "{args:?}");
    }
}

#[test]
fn families_listing() {
    let out = go(&["families"]);
    assert!(out.stdout.contains("1-4-k"));
    let v = json(&["families"]);
    let ids: Vec<&str> = v["result"].as_array().unwrap().iter().map(|f| f["id"].as_str().unwrap()).collect();
    assert_eq!(ids[0], "all-odd");
    assert!(ids.contains(&"zhu-7-lower"));
}

#[test]
fn stategraph_subcommands() {
    assert_eq!(go(&["chi-f", "--set", "1,2,3"]).stdout, "4\n");
    assert!(go(&["domination", "--set", "1,2"]).stdout.starts_with("dominating density = 1/5\n"));
    assert!(go(&["idcode", "--set", "1"]).stdout.starts_with("1-identifying code density = 1/2\n"));
    assert!(go(&["coloring", "--set", "1,2", "--k", "3"]).stdout.starts_with("3-colorable"));
    assert!(go(&["coloring", "--set", "1,2,3", "--k", "3"]).stdout.starts_with("no proper 3-coloring"));
}

#[test]
fn table_csv_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let out = go(&["table", "--k", "1..3", "--i", "1..4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("0 disagree"), "{}", out.stderr);
    let mut r = csv::Reader::from_path(&path).unwrap();
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), TABLE_HEADER);
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 12);
    assert_eq!((&rows[0][0], &rows[0][1], &rows[0][2]), ("1", "1", "{1,2,3}"));
    assert_eq!((&rows[0][3], &rows[0][4], &rows[0][5]), ("exact", "1", "4"));
    // Row-major order.
    assert_eq!((&rows[4][0], &rows[4][1]), ("2", "1"));
}

#[test]
fn table_with_tiny_budget_keeps_bounds() {
    let out = go(&["table", "--k", "20", "--i", "7", "--budget", "10"]);
    let mut r = csv::Reader::from_reader(out.stdout.as_bytes());
    let row = r.records().next().unwrap().unwrap();
    assert!(["exact", "lower_bound"].contains(&&row[3]), "{row:?}");
    if &row[3] == "lower_bound" {
        assert!(row[4].is_empty() && !row[6].is_empty());
    }
}

#[test]
fn binary_exit_codes_and_env_budget() {
    let bin = env!("CARGO_BIN_EXE_dgratio");
    let st = Command::new(bin).args(["compute", "--set", "1,4,7"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&st.stdout).lines().next(), Some("alpha-bar = 3/8 (exact)"));
    let st = Command::new(bin).args(["compute", "--set", "0"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    let st = Command::new(bin)
        .args(["compute", "--set", "5,6,9", "--method", "search"])
        .env("DGRATIO_BUDGET", "500")
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(3));
    let st = Command::new(bin).args(["--help"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
}

#[test]
fn timeout_stops_search() {
    let out = go(&["compute", "--set", "5,6,9", "--method", "search", "--timeout", "0.2", "--budget", "100000000000"]);
    assert_eq!(out.code, EXIT_INEXACT);
    let v = json(&["compute", "--set", "5,6,9", "--method", "search", "--timeout", "0.2"]);
    assert_eq!(v["result"]["lower"], "4/11");
}
