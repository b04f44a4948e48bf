use std::path::{Path, PathBuf};

use fiberprod::cli::report::parse_output;
use fiberprod::cli::scenario::list_corpus;
use fiberprod::cli::{default_corpus, run, run_corpus, Outcome};
use serde_json::{json, Value};

fn docs_scenarios() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/scenarios"))
}

fn run_args(args: &[&str]) -> Outcome {
    run(std::iter::once("fiberprod").chain(args.iter().copied()))
}

fn write_temp(name: &str, value: &Value) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fiberprod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

fn run_file(command: &str, path: &Path, extra: &[&str]) -> Outcome {
    let p = path.to_str().unwrap();
    let mut args = vec![command, "--scenario", p];
    args.extend_from_slice(extra);
    run_args(&args)
}

fn good_depth() -> Value {
    json!({
        "R": {"dim": 1, "depth": 1, "edim": 2},
        "S": {"dim": 1, "depth": 1, "edim": 2},
        "T": {"dim": 0, "depth": 0, "edim": 1},
        "grade_mR": 1, "grade_mS": 1, "grade_mT": 0,
        "beta1_T_over_S": 1, "beta1_T_over_R": 1
    })
}

#[test]
fn examples_lists_the_corpus() {
    let out = run_args(&["examples"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    for id in ["ex-paper-4x", "lescot-xy", "amalg-dup-x", "ci-xy-z2"] {
        assert!(out.stdout.contains(id), "{id} missing from\n{}", out.stdout);
    }
    let ids: Vec<String> = list_corpus(&default_corpus())
        .unwrap()
        .into_iter()
        .map(|e| e.id)
        .collect();
    assert_eq!(ids, ["amalg-dup-x", "ci-xy-z2", "ex-paper-4x", "lescot-xy"]);
}

#[test]
fn lescot_verify_by_id_and_by_path() {
    let by_id = run_args(&["verify", "--scenario", "lescot-xy"]);
    assert_eq!(by_id.code, 0, "{}", by_id.stderr);
    assert!(by_id.stdout.contains("relation: equal"), "{}", by_id.stdout);
    let path = default_corpus().join("lescot-xy.json");
    let by_path = run_file("verify", &path, &[]);
    assert_eq!(by_id, by_path);
}

#[test]
fn every_scenario_round_trips_through_its_output_schema() {
    let corpus = default_corpus();
    for e in list_corpus(&corpus).unwrap() {
        let out = run_corpus(e.kind.name(), &e.id, &corpus, &[]);
        assert_eq!(out.code, 0, "{}: {}", e.id, out.stderr);
        parse_output(e.kind.name(), &out.stdout).unwrap_or_else(|err| panic!("{}: {err}", e.id));
    }
    for entry in std::fs::read_dir(docs_scenarios()).unwrap() {
        let path = entry.unwrap().path();
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let kind = v["kind"].as_str().unwrap();
        let out = run_file(kind, &path, &["--json"]);
        assert_eq!(out.code, 0, "{}: {}", path.display(), out.stderr);
        parse_output(kind, &out.stdout).unwrap_or_else(|err| panic!("{}: {err}", path.display()));
        let text = run_file(kind, &path, &[]);
        assert_eq!(text.code, 0);
        assert!(!text.stdout.is_empty());
    }
    let out = run_args(&["examples", "--json"]);
    parse_output("examples", &out.stdout).unwrap();
}

#[test]
fn json_integers_are_strings() {
    fn walk(v: &Value, path: &str) {
        match v {
            Value::Number(_) if !path.ends_with("schema_version") => panic!("number at {path}"),
            Value::Array(a) => a
                .iter()
                .enumerate()
                .for_each(|(i, x)| walk(x, &format!("{path}[{i}]"))),
            Value::Object(o) => o.iter().for_each(|(k, x)| walk(x, &format!("{path}.{k}"))),
            _ => {}
        }
    }
    let corpus = default_corpus();
    for e in list_corpus(&corpus).unwrap() {
        let out = run_corpus(e.kind.name(), &e.id, &corpus, &[]);
        walk(&serde_json::from_str(&out.stdout).unwrap(), "$");
    }
    let out = run_file(
        "resolve",
        &docs_scenarios().join("resolve-xy2.json"),
        &["--json"],
    );
    walk(&serde_json::from_str(&out.stdout).unwrap(), "$");
}

#[test]
fn golden_verify_report_is_current() {
    let out = run_corpus("verify", "ex-paper-4x", &default_corpus(), &[]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let golden =
        std::fs::read_to_string(default_corpus().join("golden/ex-paper-4x.verify.json")).unwrap();
    let a: Value = serde_json::from_str(&out.stdout).unwrap();
    let b: Value = serde_json::from_str(&golden).unwrap();
    assert_eq!(a, b);
    assert_eq!(a["first_divergence"], "1");
    assert_eq!(a["formula_series"][1], "3");
    assert_eq!(a["oracle_series"][1], "2");
}

#[test]
fn grade_above_depth_is_a_validation_error() {
    let mut bad = good_depth();
    bad["grade_mR"] = json!(2);
    let path = write_temp("bad-grade.json", &bad);
    let out = run_file("depth", &path, &[]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("grade_mR"), "{}", out.stderr);
    assert!(out.stderr.contains("exceeds"), "{}", out.stderr);
}

#[test]
fn malformed_fields_are_named() {
    let mut bad = good_depth();
    bad["R"]["depth"] = json!("one");
    let out = run_file("depth", &write_temp("bad-type.json", &bad), &[]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("payload.R.depth"), "{}", out.stderr);

    let series = json!({"kind": "series", "payload": {
        "p_M_over_R": [1, 1], "p_T_over_R": [1, 1], "p_T_over_S": [1, -1]}});
    let out = run_file("series", &write_temp("neg.json", &series), &[]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("p_T_over_S"), "{}", out.stderr);

    let verify = json!({"vars": ["x", "y"], "I": ["x"], "J": ["w"]});
    let out = run_file("verify", &write_temp("badvar.json", &verify), &[]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("payload.J[0]"), "{}", out.stderr);
}

#[test]
fn kind_mismatch_and_missing_scenario() {
    let out = run_args(&["depth", "--scenario", "lescot-xy"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("kind"));
    let out = run_args(&["verify"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("--scenario"));
    let out = run_args(&["verify", "--scenario", "no-such-thing"]);
    assert_eq!(out.code, 1);
}

#[test]
fn clap_errors_exit_1_and_help_exits_0() {
    assert_eq!(run_args(&["frobnicate"]).code, 1);
    assert_eq!(run_args(&["series", "--order", "many"]).code, 1);
    let help = run_args(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("verify"));
    assert_eq!(run_args(&["--version"]).code, 0);
}

#[test]
fn budget_exhaustion_exits_2() {
    // β_i of k over k[x,y]/(x^2,y^2) needs internal degree i; a budget of
    // 3 cannot finish β_3 under the cutoff rule.
    let scenario =
        json!({"vars": ["x", "y"], "ideal": ["x^2", "y^2"], "module": "k", "max_hom": 3});
    let path = write_temp("budget.json", &scenario);
    let out = run_file("resolve", &path, &["--max-internal", "3"]);
    assert_eq!(out.code, 2, "{}\n{}", out.stdout, out.stderr);
    assert!(out.stderr.contains("budget"), "{}", out.stderr);
    assert!(
        out.stdout.contains('?'),
        "partial table expected:\n{}",
        out.stdout
    );

    let verify = json!({"vars": ["x", "y"], "I": ["x"], "J": ["y"], "is_large": true, "order": 6});
    let out = run_file(
        "verify",
        &write_temp("budget-verify.json", &verify),
        &["--max-internal", "6"],
    );
    assert_eq!(out.code, 2, "{}", out.stderr);
}

#[test]
fn false_largeness_claim_exits_3() {
    // The fiber product k[x,y]/(xy^2) is not large; claiming it is must
    // be caught as an inconsistency.
    let scenario = json!({"vars": ["x", "y"], "I": ["y^2"], "J": ["x^2", "x*y"], "is_large": true, "order": 4});
    let out = run_file(
        "verify",
        &write_temp("false-large.json", &scenario),
        &["--json"],
    );
    assert_eq!(out.code, 3, "{}", out.stderr);
    assert!(out.stderr.contains("inconsistency"));
    parse_output("verify", &out.stdout).unwrap();
}

#[test]
fn trivial_fiber_product_is_rejected() {
    let scenario = json!({"vars": ["x", "y"], "I": ["x"], "J": ["x", "y"]});
    let out = run_file("verify", &write_temp("trivial.json", &scenario), &[]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("trivial"), "{}", out.stderr);
}

#[test]
fn order_flag_overrides_scenario() {
    let out = run_args(&[
        "verify",
        "--scenario",
        "lescot-xy",
        "--order",
        "3",
        "--json",
    ]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["oracle_series"], json!(["1", "2", "2", "2"]));
}

#[test]
fn disjoint_variable_large_instances_are_equal() {
    // R ×_k S with I, J in disjoint variables is large: the formula is exact.
    for (vars, i, j) in [
        (vec!["x", "y"], vec!["x^2"], vec!["y^3"]),
        (vec!["x", "y", "z"], vec!["x", "y^2"], vec!["z^2"]),
        (vec!["x", "y", "z"], vec!["x*y"], vec!["z^2"]),
    ] {
        // Same ambient with T = k needs each ring's variables killed in the other.
        let mut i_full: Vec<String> = i.iter().map(|s| s.to_string()).collect();
        let mut j_full: Vec<String> = j.iter().map(|s| s.to_string()).collect();
        for v in &vars {
            let in_i = i.iter().any(|g| g.contains(v));
            let in_j = j.iter().any(|g| g.contains(v));
            if in_i && !in_j {
                j_full.push(v.to_string());
            } else if in_j && !in_i {
                i_full.push(v.to_string());
            }
        }
        let scenario =
            json!({"vars": vars, "I": i_full, "J": j_full, "is_large": true, "order": 6});
        let out = run_file(
            "verify",
            &write_temp("disjoint.json", &scenario),
            &["--json"],
        );
        assert_eq!(out.code, 0, "{scenario}: {}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["relation"], "equal", "{scenario}");
    }
}
