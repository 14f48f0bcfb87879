use std::process::Command;

use degree_trees_cli::{run, EXIT_ARITHMETIC, EXIT_GUARD, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("degree-trees").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = invoke(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    out
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&ok(&all)).unwrap()
}

#[test]
fn cayley_count_with_empty_forbidden_set() {
    assert_eq!(ok(&["count", "--forbidden", "", "--n", "5"]), "125\n");
}

#[test]
fn plain_sequence_layout() {
    let out = ok(&["seq", "--forbidden", "2,3,5", "--terms", "12"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "# rule=forbidden{2,3,5} n_start=2");
    assert_eq!(lines.len(), 1 + 11);
    assert_eq!(lines[1..5], ["1", "0", "0", "5"]);
}

#[test]
fn sequence_json_annotates_indices_and_stringifies() {
    let v = json(&["seq", "--allowed", "1,2", "--terms", "6"]);
    let terms = v["result"]["terms"].as_array().unwrap();
    assert_eq!(terms[0]["n"], 2);
    assert_eq!(terms[4]["value"], "360");
    assert_eq!(v["config"]["command"], "seq");
    assert_eq!(v["config"]["args"]["rule"], "allowed{1,2}");
}

#[test]
fn json_round_trips_byte_identically() {
    for args in [
        vec!["seq", "--allowed", "1,3,4", "--terms", "30"],
        vec!["moments", "--d1", "1", "--d2", "2", "--n", "9", "--k1", "2", "--k2", "2"],
        vec!["normality", "--d", "2", "--n-list", "20,40,80"],
        vec!["report", "--max-degree", "3", "--terms", "35"],
        vec!["dist", "--allowed", "1,2", "--n", "30"],
    ] {
        let mut all = args.clone();
        all.extend(["--format", "json"]);
        let text = ok(&all);
        let value: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", text, "{args:?}");
    }
}

#[test]
fn report_sections_in_graded_order() {
    let out = ok(&["report", "--max-degree", "3", "--terms", "10"]);
    let heads: Vec<&str> = out.lines().filter(|l| l.starts_with("## ")).collect();
    assert_eq!(heads, ["## P = {1}", "## P = {1,2}", "## P = {1,3}", "## P = {1,2,3}"]);
    assert!(out.contains("Counts for n = 2..10: 1, 3, 12, 60, 360"));
}

#[test]
fn forbidden_report_covers_subsets_of_two_to_m() {
    let v = json(&["report", "--forbidden-upto", "3", "--terms", "40"]);
    let rules: Vec<&str> =
        v["result"]["sections"].as_array().unwrap().iter().map(|s| s["rule"].as_str().unwrap()).collect();
    assert_eq!(rules, ["forbidden{}", "forbidden{2}", "forbidden{3}", "forbidden{2,3}"]);
    let cayley = &v["result"]["sections"][0]["growth"]["c"];
    assert!((cayley.as_f64().unwrap() - std::f64::consts::E).abs() < 1e-9);
}

#[test]
fn recurrence_for_paths() {
    let out = ok(&["rec", "--allowed", "1,2", "--terms", "40", "--extend", "80"]);
    assert!(out.lines().any(|l| l == "(-n - 1)*a(n) + (1)*a(n+1) = 0 for n >= 2"), "{out}");
    let none = ok(&["rec", "--forbidden", "", "--terms", "60", "--max-order", "2", "--max-degree", "2"]);
    assert_eq!(none.lines().last(), Some("none"));
}

#[test]
fn moments_report_exact_values() {
    let v = json(&["moments", "--d1", "1", "--d2", "2", "--n", "4", "--k1", "1", "--k2", "1"]);
    assert_eq!(v["result"]["exact"]["mean_1"], "9/4");
    assert_eq!(v["result"]["exact"]["covariance"], "-3/8");
}

#[test]
fn oracle_commands() {
    assert_eq!(ok(&["oracle", "count", "--allowed", "1,3", "--n", "8"]), "5040\n");
    let stats = json(&["oracle", "stats", "--n", "5", "--degrees", "1,2,3"]);
    assert_eq!(stats["result"]["trees"], 125);
    let a = ok(&["oracle", "sample", "--n", "12", "--samples", "3", "--seed", "5"]);
    assert_eq!(a, ok(&["oracle", "sample", "--n", "12", "--samples", "3", "--seed", "5"]));
    assert_ne!(a, ok(&["oracle", "sample", "--n", "12", "--samples", "3", "--seed", "6"]));
}

#[test]
fn exit_codes() {
    assert_eq!(invoke(&["oracle", "count", "--allowed", "1,2", "--n", "10"]).0, EXIT_GUARD);
    assert_eq!(invoke(&["oracle", "count", "--allowed", "1,2", "--n", "6", "--max-oracle-n", "5"]).0, EXIT_GUARD);
    assert_eq!(invoke(&["seq", "--allowed", "1,2", "--terms", "20", "--max-terms", "10"]).0, EXIT_GUARD);
    assert_eq!(invoke(&["seq", "--terms", "5"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["seq", "--allowed", "1", "--forbidden", "2", "--terms", "5"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["count", "--allowed", "", "--n", "5"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["count", "--allowed", "0,1", "--n", "5"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["rec", "--allowed", "1,2", "--terms", "10"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["moments", "--d1", "2", "--d2", "2", "--n", "5"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["--help"]).0, EXIT_OK);
    assert_ne!(EXIT_ARITHMETIC, EXIT_USAGE);
}

#[test]
fn binary_honours_worker_env() {
    let bin = env!("CARGO_BIN_EXE_degree-trees");
    let output = |workers: &str| {
        let o = Command::new(bin)
            .args(["report", "--max-degree", "4", "--terms", "40", "--format", "json"])
            .env("DEGREE_TREES_WORKERS", workers)
            .output()
            .unwrap();
        assert!(o.status.success());
        serde_json::from_slice::<Value>(&o.stdout).unwrap()
    };
    let (one, four) = (output("1"), output("4"));
    assert_eq!(one["config"]["workers"], 1);
    assert_eq!(four["config"]["workers"], 4);
    assert_eq!(one["result"], four["result"]);
}
