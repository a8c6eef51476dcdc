use std::process::{Command, Output};

use serde_json::Value;

fn bzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bzeta"))
        .args(args)
        .env_remove("BZETA_CACHE")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = bzeta(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn prefix_of(v: &Value, want: &str) -> bool {
    v.as_str().is_some_and(|s| s.starts_with(want))
}

#[test]
fn eval_positive_even() {
    let (code, v) = json(&["eval", "--nu", "0", "--s", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"]["re"], "0.25");
    assert_eq!(v["value"]["im"], "0");
    assert_eq!(v["exact"], "1/4");
    assert_eq!(v["classification"], "PosEven(1)");
    assert_eq!(v["arithmetic"], "exact");
    for key in ["error_estimate", "alpha_terms_used", "beta_terms_used", "method", "nu", "s", "prec", "split"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn residue_at_one_is_one_over_pi() {
    let (code, v) = json(&["residue", "--nu", "1/2", "--pole", "1"]);
    assert_eq!(code, 0);
    assert!(prefix_of(&v["value"]["re"], "0.3183098861837906715377675267450287"), "{v}");
    assert_eq!(v["classification"], "PoleAtOne");
}

#[test]
fn riemann_minus_one() {
    let (code, v) = json(&["riemann", "--s", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["exact"], "-1/12");
    assert_eq!(v["branch"], "bernoulli");
    assert!(prefix_of(&v["value"]["re"], "-0.08333333333333333333333"));
}

#[test]
fn generic_point_matches_riemann_zeta() {
    // ζ_{1/2}(3) = ζ(3)/π³
    let (code, v) = json(&["eval", "--nu", "1/2", "--s", "3", "--prec", "128"]);
    assert_eq!(code, 0);
    assert_eq!(v["classification"], "Generic");
    assert!(prefix_of(&v["value"]["re"], "0.038768179602916"), "{v}");
    let (_, r) = json(&["riemann", "--s", "3", "--prec", "128"]);
    assert!(prefix_of(&r["value"]["re"], "1.2020569031595942853997381"), "{r}");
}

#[test]
fn complex_argument_and_float_order() {
    let (code, v) = json(&["eval", "--nu", "0.5", "--s", "2.5,1", "--prec", "96", "--split", "auto"]);
    assert_eq!(code, 0);
    assert_eq!(v["arithmetic"], "float");
    assert_ne!(v["value"]["im"], "0");
    assert_eq!(v["s"], "2.5,1");
}

#[test]
fn exit_codes() {
    let (code, v) = json(&["eval", "--nu", "0", "--s", "1"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "pole");
    assert_eq!(v["error"]["exit_code"], 2);
    let (code, v) = json(&["eval", "--nu", "-1", "--s", "2"]);
    assert_eq!((code, &v["error"]["kind"]), (2, &Value::from("domain")));
    let (code, v) = json(&["eval", "--nu", "0", "--s", "2.5", "--alpha-terms", "5"]);
    assert_eq!((code, &v["error"]["kind"]), (3, &Value::from("nonconvergence")));
    assert_eq!(bzeta(&["eval", "--nu", "0"]).status.code(), Some(1));
    assert_eq!(bzeta(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bzeta(&["eval", "--nu", "0", "--s", "2", "--split", "-3"]).status.code(), Some(1));
    assert_eq!(bzeta(&["coeffs", "--family", "c", "--nu", "0.5", "--count", "3", "--exact"]).status.code(), Some(1));
    let plain = bzeta(&["eval", "--nu", "0", "--s", "-1"]);
    assert_eq!(plain.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&plain.stderr).contains("pole"));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["eval", "--nu", "1/3", "--s", "0.7", "--prec", "96", "--format", "json"];
    assert_eq!(bzeta(&args).stdout, bzeta(&args).stdout);
}

#[test]
fn csv_has_schema_columns() {
    let out = bzeta(&["eval", "--nu", "0", "--s", "4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    for col in ["value_re", "value_im", "error_estimate", "classification", "alpha_terms_used", "beta_terms_used", "method", "nu", "s", "prec", "split"] {
        assert!(header.contains(&col), "missing {col}");
    }
    assert_eq!(lines.count(), 1);
}

#[test]
fn coeffs_and_zeros() {
    let (code, v) = json(&["coeffs", "--family", "c", "--nu", "0", "--count", "3", "--exact"]);
    assert_eq!(code, 0);
    let values: Vec<&str> = v["coefficients"].as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap()).collect();
    assert_eq!(values.len(), 3);
    assert!(values.iter().all(|x| !x.contains('.')), "{values:?}");
    let (_, v) = json(&["coeffs", "--family", "beta", "--nu", "1/2", "--count", "3"]);
    assert!(v["beta0"].is_string());
    assert_eq!(v["coefficients"][0]["index"], 0);
    let (code, v) = json(&["zeros", "--nu", "0", "--count", "2", "--prec", "64"]);
    assert_eq!(code, 0);
    assert!(prefix_of(&v["zeros"][0]["value"], "2.404825557695772768"));
    assert_eq!(v["zeros"][1]["n"], 2);
}

#[test]
fn prod_roots_at_half() {
    // Π j_{1/2,n} = Π nπ regularized = √2
    let (code, v) = json(&["prod-roots", "--nu", "1/2"]);
    assert_eq!(code, 0);
    assert!(prefix_of(&v["value"], "1.41421356237309504880168872"));
}

#[test]
fn cache_is_used_and_survives_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let p = path.to_str().unwrap();
    let args = ["coeffs", "--family", "d", "--nu", "2/3", "--count", "6", "--exact", "--cache", p];
    let (_, first) = json(&args);
    assert_eq!(first["cached"], false);
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("{\"format\""));
    let (_, second) = json(&args);
    assert_eq!(second["cached"], true);
    assert_eq!(first["coefficients"], second["coefficients"]);

    // the environment variable works too
    let out = Command::new(env!("CARGO_BIN_EXE_bzeta"))
        .args(["coeffs", "--family", "d", "--nu", "2/3", "--count", "4", "--exact", "--format", "json"])
        .env("BZETA_CACHE", p)
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["cached"], true);

    std::fs::write(&path, "{\"format\":\"bzeta-coefficient-cache\",\"version\":999}\n").unwrap();
    let out = bzeta(&[&args[..], &["--format", "json"]].concat());
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ignoring cache"));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["cached"], false);
    assert_eq!(v["coefficients"], first["coefficients"]);
}

#[test]
fn verify_reports_per_criterion() {
    let (code, v) = json(&["verify", "--suite", "stolarsky"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 1);
    assert_eq!(v["criteria"][0]["id"], "12");
    assert_eq!(v["criteria"][0]["passed"], true);
    assert_eq!(bzeta(&["verify", "--suite", "nope"]).status.code(), Some(1));
}

#[test]
fn library_entry_point() {
    let out = bessel_zeta_cli::run(["bzeta", "eval", "--nu", "0", "--s", "0", "--format", "csv"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("-0.25,0,-1/4"), "{}", out.stdout);
    let help = bessel_zeta_cli::run(["bzeta", "--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("riemann"));
}
