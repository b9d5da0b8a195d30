use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sp6")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(&a);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().expect("exit code"), v)
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("sp6-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn projector_report() {
    let (code, v) = run_json(&["projector", "--target", "2,2,-4"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "projector");
    assert_eq!(v["mode"], "exact");
    assert_eq!(v["results"]["step1"], "64");
    assert_eq!(v["results"], json!({"alpha": "1/5760", "step1": "64", "step2": "368640"}));
}

#[test]
fn ktypes_three_three() {
    let (code, v) = run_json(&["ktypes", "--p", "3", "--q", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["dimension"], 400);
    let rows = v["results"]["decomposition"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0], json!({"hw": [4, -2, -2], "mult": 1}));
    assert!(rows.contains(&json!({"hw": [2, 0, -2], "mult": 4})));
    assert!(rows.contains(&json!({"hw": [0, 0, 0], "mult": 2})));
}

#[test]
fn packets_and_errors() {
    let (code, v) = run_json(&["packets", "--lambda", "0,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][3], json!({"index": 4, "hc_param": [2, 1, -3], "min_ktype": [2, 2, -4], "hodge": [3, 3]}));
    let (code, v) = run_json(&["packets", "--lambda", "0,1,0"]);
    assert_eq!(code, 1);
    assert!(v["error"]["message"].as_str().unwrap().contains("not dominant"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["packets", "--lambda", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["ktypes", "--p", "3"]).status.code(), Some(2));
}

#[test]
fn hwv_check_reports_annihilation() {
    let (code, v) = run_json(&["hwv-check", "--target", "4,-2,-2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["highest_weight"], true);
    assert_eq!(v["results"]["weights"], json!([[4, -2, -2]]));
    let (code, _) = run_json(&["hwv-check", "--target", "1,0,-1"]);
    assert_eq!(code, 1);
}

#[test]
fn gamma_pole_orders() {
    let zero = temp_file("zero.json", r#"{"h":[0,0,0,0,0,0,0],"h3plus":0,"h3minus":0}"#);
    let (code, v) = run_json(&["gamma", "--hodge", zero.to_str().unwrap(), "--at", "99"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["pole_order"], 0);
    let hodge33 = temp_file("hodge33.json", r#"{"h":[1,1,1,1,1,1,1],"h3plus":1,"h3minus":0}"#);
    let (_, v) = run_json(&["gamma", "--hodge", hodge33.to_str().unwrap(), "--at", "3"]);
    assert_eq!(v["results"]["pole_order"], 1);
    let (_, v) = run_json(&["gamma", "--hodge", hodge33.to_str().unwrap(), "--at", "-3"]);
    assert_eq!(v["results"]["pole_order"], 4);
    let (_, v) = run_json(&["gamma", "--hodge", hodge33.to_str().unwrap(), "--at", "-4"]);
    assert_eq!(v["results"]["pole_order"], 3);
    let bad = temp_file("bad_hodge.json", r#"{"h":[1,0,0,0,0,0,0],"h3plus":0,"h3minus":0}"#);
    let (code, v) = run_json(&["gamma", "--hodge", bad.to_str().unwrap(), "--at", "0"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "schema");
}

#[test]
fn lfactor_trivial_prime() {
    let f = temp_file(
        "trivial.json",
        r#"{"prime":2,"chi":[{"value":"1","label":{"m":1,"r":0}},{"value":"1"},{"value":"1"},{"value":"1"}]}"#,
    );
    let (code, v) = run_json(&["lfactor", "--satake", f.to_str().unwrap(), "--s", "2", "--terms", "1000000000000"]);
    assert_eq!(code, 0);
    assert_eq!(v["mode"], "float");
    let val = v["results"]["value"][0].as_f64().unwrap();
    assert!((val - (4.0f64 / 3.0).powi(8)).abs() < 1e-12);
    let dir = v["results"]["dirichlet"]["value"][0].as_f64().unwrap();
    assert!((dir - val).abs() < 1e-9);
    assert_eq!(v["results"]["factors"][0]["degree"], 8);
    assert_eq!(v["results"]["factors"][0]["denominator"][1], "-8");
}

#[test]
fn lfactor_errors() {
    let pole = temp_file("pole.json", r#"{"prime":2,"chi":[{"value":"8"},{"value":"1"},{"value":"1"},{"value":"1"}]}"#);
    let (code, v) = run_json(&["lfactor", "--satake", pole.to_str().unwrap(), "--s", "3"]);
    assert_eq!(code, 1);
    assert!(v["error"]["message"].as_str().unwrap().contains("prime 2"));
    let broken = temp_file("broken.json", "[1, 2");
    let (code, v) = run_json(&["lfactor", "--satake", broken.to_str().unwrap(), "--s", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "malformed-json");
}

#[test]
fn deterministic_output() {
    let a = run(&["ktypes", "--p", "4", "--q", "2", "--json"]);
    let b = run(&["ktypes", "--p", "4", "--q", "2", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let timed: Value = serde_json::from_slice(&run(&["ktypes", "--p", "4", "--q", "2", "--json", "--timing"]).stdout).unwrap();
    assert!(timed["elapsed_ms"].is_number());
    let plain: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(plain.get("elapsed_ms").is_none());
}

#[test]
fn table_mode_carries_the_same_data() {
    let out = run(&["projector", "--target", "4,-2,-2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for needle in ["alpha", "1/5760", "step1", "64", "step2", "368640"] {
        assert!(text.contains(needle), "{text}");
    }
    let text = String::from_utf8(run(&["packets", "--lambda", "1,0,0"]).stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with('[')).count(), 8);
}

#[test]
fn bm_verify_report() {
    let (code, v) = run_json(&["bm-verify", "--N", "4", "--grid", "8", "--levels", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["mode"], "float");
    let r = &v["results"];
    assert_eq!(r["bump"].as_array().unwrap().len(), 2);
    assert_eq!(r["form_ratios"].as_array().unwrap().len(), 1);
    let e = r["decay"]["exponent"].as_f64().unwrap();
    assert!((e - 3.0).abs() < 0.1, "{e}");
}
