mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use common::*;
use sigaudit::audit::{parse_instance, run_audit, AuditOptions};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn sigaudit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigaudit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sigaudit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn audit_json_for_the_example() {
    let path = fixture("phelps.json");
    let out = sigaudit(&["--json", "audit", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["identified"], false);
    assert_eq!(report["fair_valuations"][0]["alpha"], Value::Null);
    assert_eq!(report["affinity"][0]["affine"], false);
    assert_eq!(report["affinity"][0]["witness"]["mixture_value"], "4/3");
    assert_eq!(report["affinity"][0]["witness"]["envelope_value"], "3/2");
    let pair = &report["comparisons"][0]["payoffs"][0];
    assert_eq!(
        (pair["payoff_pi"].as_str(), pair["payoff_pi_prime"].as_str()),
        (Some("3/2"), Some("4/3"))
    );
}

#[test]
fn audit_for_the_identity_fixture() {
    let path = fixture("identity.json");
    let out = sigaudit(&["--json", "audit", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["identified"], true);
    assert_eq!(report["witness"], Value::Null);
    assert_eq!(
        report["fair_valuations"][0]["alpha"],
        json!(["1", "1/2", "3"])
    );
    assert_eq!(report["affinity"][0]["affine"], true);
}

#[test]
fn seed_changes_only_the_sampled_menus() {
    let path = fixture("phelps.json");
    let p = path.to_str().unwrap();
    let a = sigaudit(&["--json", "audit", p, "--seed", "1"]);
    let b = sigaudit(&["--json", "audit", p, "--seed", "1"]);
    let c = sigaudit(&["--json", "audit", p, "--seed", "2", "--samples", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let c: Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(c["corroboration"]["binary_menus"], 4);
    assert_eq!(c["corroboration"]["larger_menus"], 2);
}

#[test]
fn witness_subcommand() {
    let out = sigaudit(&["witness", fixture("phelps.json").to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("not identified"));
    let out = sigaudit(&[
        "--json",
        "witness",
        fixture("identity.json").to_str().unwrap(),
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, json!({"identified": true, "witness": null}));
}

#[test]
fn fairval_subcommand() {
    let out = sigaudit(&[
        "fairval",
        fixture("identity.json").to_str().unwrap(),
        "--actions",
        "A",
    ]);
    assert_eq!(stdout(&out), "A: (1, 1/2, 3)\n");
    let out = sigaudit(&["fairval", fixture("phelps.json").to_str().unwrap()]);
    assert_eq!(stdout(&out), "A: none\n");
    let out = sigaudit(&[
        "fairval",
        fixture("phelps.json").to_str().unwrap(),
        "--actions",
        "B",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no action set named `B`"));
}

#[test]
fn concavify_with_queries_and_csv() {
    let csv = std::env::temp_dir().join(format!("sigaudit-envelope-{}.csv", std::process::id()));
    let out = sigaudit(&[
        "--json",
        "concavify",
        fixture("phelps.json").to_str().unwrap(),
        "--query",
        "1/3,1/3,1/3",
        "--envelope-csv",
        csv.to_str().unwrap(),
        "--from",
        "1,0,0",
        "--to",
        "0,0,1",
        "--steps",
        "2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["queries"][0]["value"], "3/2");
    assert_eq!(v["queries"][0]["dominating_value"], "3/2");
    assert_eq!(
        v["queries"][0]["optimal_pi"],
        json!({"t1": "1/3", "t3": "2/3"})
    );
    assert_eq!(
        std::fs::read_to_string(&csv).unwrap(),
        "t,W\n0,1\n1/2,2\n1,3\n"
    );
    std::fs::remove_file(csv).ok();
}

#[test]
fn concavify_rejects_decimal_queries() {
    let out = sigaudit(&[
        "concavify",
        fixture("phelps.json").to_str().unwrap(),
        "--query",
        "0.5,0.5,0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("decimal literals not accepted; use p/q"));
}

#[test]
fn wage_shift_subcommand() {
    let path = fixture("identity.json");
    let out = sigaudit(&[
        "--json",
        "wage-shift",
        path.to_str().unwrap(),
        "--pi",
        "pi",
        "--pi-prime",
        "pi_prime",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_ne!(
        v["wage_shift"]["shifted_payoff_pi"],
        v["wage_shift"]["shifted_payoff_pi_prime"]
    );

    let out = sigaudit(&[
        "wage-shift",
        fixture("phelps.json").to_str().unwrap(),
        "--pi",
        "pi",
        "--pi-prime",
        "pi_prime",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("same skill distribution"));
}

#[test]
fn compare_info_subcommand() {
    let path = fixture("phelps.json");
    let out = sigaudit(&[
        "--json",
        "compare-info",
        path.to_str().unwrap(),
        "--pi",
        "pi",
        "--pi-prime",
        "pi_prime",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["same_skill"], true);
    assert_eq!(v["payoffs"][0]["discriminates"], true);
    let out = sigaudit(&[
        "compare-info",
        path.to_str().unwrap(),
        "--pi",
        "pi",
        "--pi-prime",
        "nope",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_one() {
    let bad = temp_file(
        "decimal.json",
        "{\n  \"states\": [\"a\", \"b\"],\n  \"signals\": {\"s\": [0.5, \"1/2\"]}\n}\n",
    );
    let out = sigaudit(&["audit", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(
        err.contains("decimal literals not accepted; use p/q"),
        "{err}"
    );
    assert!(err.contains("line 3"), "{err}");

    let sum = temp_file(
        "sum.json",
        r#"{"states": ["a", "b"], "signals": {"s": ["1/2", "1/3"]}}"#,
    );
    let out = sigaudit(&["audit", sum.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("signals.s"));

    let out = sigaudit(&["audit", "/definitely/not/here.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(sigaudit(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(sigaudit(&["audit"]).status.code(), Some(1));
    let help = sigaudit(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("compare-info"));
}

/// A random instance as JSON text, with named signals, a few menus, info
/// structures and queries.
fn random_instance_json(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=4);
    let set = random_signal_set(&mut rng, n, 6);
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let names: Vec<String> = (0..set.len()).map(|i| format!("t{i}")).collect();
    let vec_json =
        |v: &[sigaudit::Rational]| Value::from(v.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    let mut signals = serde_json::Map::new();
    for (name, s) in names.iter().zip(set.signals()) {
        signals.insert(name.clone(), vec_json(s.probs()));
    }
    let mut actions = serde_json::Map::new();
    for m in 0..rng.gen_range(1..=2) {
        let size = rng.gen_range(1..=3);
        let menu = random_action_set(&mut rng, n, size);
        let rows: Vec<Value> = menu
            .actions()
            .iter()
            .map(|a| vec_json(a.payoffs()))
            .collect();
        actions.insert(format!("A{m}"), Value::from(rows));
    }
    let mut infos = serde_json::Map::new();
    for p in 0..rng.gen_range(0..=3) {
        let pi = random_info(&mut rng, set.len());
        let mut w = serde_json::Map::new();
        for (name, x) in names.iter().zip(pi.weights()) {
            if !num_traits::Zero::is_zero(x) {
                w.insert(name.clone(), Value::from(x.to_string()));
            }
        }
        infos.insert(format!("pi{p}"), Value::Object(w));
    }
    let mut queries = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let point = if rng.gen_bool(0.5) {
            random_hull_point(&mut rng, &set).probs().to_vec()
        } else {
            random_simplex_point(&mut rng, n, 6)
        };
        queries.push(vec_json(&point));
    }
    serde_json::to_string_pretty(&json!({
        "states": states,
        "signals": signals,
        "actions": actions,
        "info_structures": infos,
        "queries": queries,
    }))
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fuzzed_audits_are_self_consistent(seed in any::<u64>()) {
        let text = random_instance_json(seed);
        let inst = parse_instance(text.as_bytes()).unwrap();
        let opts = AuditOptions { seed, samples: 6 };
        let report = run_audit(&inst, opts).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(report.identified, report.witness.is_none());
        prop_assert_eq!(report.identified, affinely_independent(&inst.signals));
        for (f, a) in report.fair_valuations.iter().zip(&report.affinity) {
            prop_assert_eq!(f.alpha.is_some(), a.affine && a.envelope_gaps.is_empty());
        }
        prop_assert_eq!(report.persuasion.is_none(), inst.queries.is_empty());
        prop_assert_eq!(run_audit(&inst, opts).unwrap(), report);
    }
}
