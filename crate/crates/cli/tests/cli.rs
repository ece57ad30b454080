use std::process::{Command, Output};

use serde_json::Value;

fn coulomb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coulomb")).args(args).env_remove("COULOMB_MAX_X").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn eval_sine() {
    let out = coulomb(&["eval", "--ell", "0", "--eta", "0", "--x", "1", "--function", "F"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "eval");
    assert!((v["results"]["value"].as_f64().unwrap() - 1f64.sin()).abs() < 1e-12);

    let out = coulomb(&["eval", "--ell", "0", "--eta", "0", "--x", "3.14159265358979"]);
    assert!(json(&out)["results"]["value"].as_f64().unwrap().abs() < 1e-13);
}

#[test]
fn eval_half_integer_pole_is_a_regime_error() {
    let out = coulomb(&["eval", "--ell", "-1.5", "--eta", "1", "--x", "2", "--function", "phi"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Regime"));
}

#[test]
fn output_is_deterministic_with_sorted_keys() {
    let args = ["eval", "--ell", "1/5", "--eta", "-1/3", "--x", "7.25", "--function", "Fprime"];
    let a = coulomb(&args);
    let b = coulomb(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let keys: Vec<usize> = ["\"command\"", "\"diagnostics\"", "\"inputs\"", "\"results\"", "\"schema_version\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["inputs"]["ell"].as_f64().unwrap(), 1.0 / 5.0);
    assert_eq!(serde_json::to_string_pretty(&v).unwrap(), text.trim_end());
}

#[test]
fn zeros_of_sine() {
    let v = json(&coulomb(&["zeros", "--ell", "0", "--eta", "0", "--count", "3"]));
    let z = floats(&v["results"]["zeros"]);
    for (k, z) in z.iter().enumerate() {
        assert!((z - (k + 1) as f64 * std::f64::consts::PI).abs() < 1e-10);
    }
}

#[test]
fn first_zero_exceeds_lower_bound() {
    let v = json(&coulomb(&["zeros", "--ell", "0", "--eta", "1", "--count", "1"]));
    assert!(floats(&v["results"]["zeros"])[0] > 1.0 + 2f64.sqrt());
}

#[test]
fn zeros_interlace_with_next_order_below_minus_three_halves() {
    let a = floats(&json(&coulomb(&["zeros", "--ell", "-5/3", "--eta", "1/3", "--count", "5"]))["results"]["zeros"]);
    let b = floats(&json(&coulomb(&["zeros", "--ell", "-2/3", "--eta", "1/3", "--count", "5"]))["results"]["zeros"]);
    for k in 0..5 {
        assert!(b[k] < a[k]);
        if k + 1 < 5 {
            assert!(a[k] < b[k + 1]);
        }
    }
}

#[test]
fn negative_zeros_and_csv() {
    let out = coulomb(&["zeros", "--ell", "0", "--eta", "1", "--count", "2", "--sign", "neg", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,zero,residual"));
    let zs: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(zs.len(), 2);
    assert!(zs[0] < 0.0 && zs[1] < zs[0]);
}

#[test]
fn truncated_zero_list_exits_two_with_partial_output() {
    let out = coulomb(&["zeros", "--ell", "0", "--eta", "0", "--count", "40"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["results"]["truncated"], true);
    assert_eq!(floats(&v["results"]["zeros"]).len(), 15);
}

#[test]
fn dini_target_needs_h() {
    assert_eq!(
        coulomb(&["zeros", "--ell", "0", "--eta", "1", "--count", "2", "--target", "dini"]).status.code(),
        Some(64)
    );
    let out = coulomb(&["zeros", "--ell", "0", "--eta", "1", "--count", "2", "--target", "dini", "--H", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn trace_is_monotone_in_eta() {
    let out = coulomb(&[
        "trace", "--axis", "eta", "--from", "-5", "--to", "5", "--steps", "200", "--k", "1", "--ell", "0.2",
        "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("axis_value,zero_value,continuity_ok"));
    let z: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(z.len(), 201);
    assert!(z.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn trace_in_ell() {
    let v = json(&coulomb(&[
        "trace", "--axis", "ell", "--from", "-0.4", "--to", "3", "--steps", "100", "--k", "1", "--eta", "-0.2",
    ]));
    assert_eq!(v["results"]["monotone_increasing"], true);
    assert!(
        coulomb(&["trace", "--axis", "ell", "--from", "-0.4", "--to", "3", "--steps", "10", "--k", "1"]).status.code()
            == Some(64)
    );
}

#[test]
fn poly_low_degrees() {
    let v = json(&coulomb(&["poly", "--n", "1", "--ell", "0", "--eta", "1"]));
    assert_eq!(floats(&v["results"]["coeffs"]), vec![0.25, 1.0]);
    let v = json(&coulomb(&["poly", "--n", "0", "--ell", "2", "--eta", "-1"]));
    assert_eq!(floats(&v["results"]["coeffs"]), vec![1.0]);
}

#[test]
fn poly_explicit_matches_recurrence() {
    let a = floats(&json(&coulomb(&["poly", "--n", "10", "--ell", "0.5", "--eta", "2"]))["results"]["coeffs"]);
    let b = floats(
        &json(&coulomb(&["poly", "--n", "10", "--ell", "0.5", "--eta", "2", "--explicit"]))["results"]["coeffs"],
    );
    let scale = a.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= 1e-10 * scale));
}

#[test]
fn poly_with_h_has_one_more_zero() {
    let v = json(&coulomb(&["poly", "--n", "6", "--ell", "0.2", "--eta", "0.5", "--H", "1"]));
    assert_eq!(v["results"]["polynomial"], "D");
    assert_eq!(floats(&v["results"]["zeros"]).len(), 7);
}

#[test]
fn verify_common_zero_suite() {
    let out = coulomb(&["verify", "--suite", "common-zero"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let reports = v["results"]["reports"].as_array().unwrap();
    let star = reports.iter().find(|r| r["claim_id"] == "ell-star-bracket").unwrap();
    assert_eq!(star["passed"], true);
    let ell = star["worst_point"]["ell"].as_f64().unwrap();
    assert!(-0.103 < ell && ell < -0.102);
    let ids: Vec<&str> = reports.iter().map(|r| r["claim_id"].as_str().unwrap()).collect();
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn verify_all_passes() {
    let out = coulomb(&["verify", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(2) == Some("true")));
}

#[test]
fn verify_with_bad_grid_file() {
    let dir = std::env::temp_dir().join(format!("coulomb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"ell\": [0.5]").unwrap();
    let out = coulomb(&["verify", "--suite", "bounds", "--grid", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        coulomb(&["verify", "--suite", "bounds", "--grid", dir.join("missing.json").to_str().unwrap()]).status.code(),
        Some(2)
    );
    let small = dir.join("small.json");
    std::fs::write(&small, r#"{"ell":[0.2,1],"eta":[0.5],"x":{"min":0.01,"max":20,"points":50,"spacing":"lin"}}"#)
        .unwrap();
    assert_eq!(coulomb(&["verify", "--suite", "laguerre", "--grid", small.to_str().unwrap()]).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(coulomb(&["eval", "--ell", "0"]).status.code(), Some(64));
    assert_eq!(coulomb(&["eval", "--ell", "1/0", "--eta", "0", "--x", "1"]).status.code(), Some(64));
    assert_eq!(coulomb(&["verify", "--suite", "nope"]).status.code(), Some(64));
    assert_eq!(coulomb(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(coulomb(&["--help"]).status.code(), Some(0));
}

#[test]
fn raised_domain_warns() {
    let out = Command::new(env!("CARGO_BIN_EXE_coulomb"))
        .args(["eval", "--ell", "0", "--eta", "0", "--x", "70"])
        .env("COULOMB_MAX_X", "80")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let v = json(&out);
    assert_eq!(v["diagnostics"]["warnings"].as_array().unwrap().len(), 1);
    assert!((v["results"]["value"].as_f64().unwrap() - 70f64.sin()).abs() < 1e-10);
    assert_eq!(coulomb(&["eval", "--ell", "0", "--eta", "0", "--x", "70"]).status.code(), Some(2));
}
