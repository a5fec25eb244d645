use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(args)
        .env_remove("SPECTRA_PRECISION")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(code(o), 0, "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spectra-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn golden_ratio_literal() {
    let v = json(&spectra(&["cf", "0;:(1)*"]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "cf");
    assert!(v["value"]["decimal"].as_str().unwrap().starts_with("0.6180339887"));
    assert_eq!(v["value"]["exact"], "(-1 + √5)/2");
}

#[test]
fn eventually_periodic_literal() {
    let v = json(&spectra(&["cf", "0;2:(2,1)*"]));
    assert!(v["value"]["decimal"].as_str().unwrap().starts_with("0.4226497"));
}

#[test]
fn convergent_csv() {
    let o = spectra(&["cf", "0;:(1)*", "--terms", "5", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.starts_with("k,p,q\n-2,0,1\n-1,1,0\n0,0,1\n"));
    assert!(s.ends_with("5,5,8\n"));
}

#[test]
fn third_markov_value() {
    let v = json(&spectra(&["markov", "(2,2,1,1)*"]));
    assert_eq!(v["markov"]["value"]["exact"], "√221/5");
    assert_eq!(v["lagrange"]["value"]["exact"], "√221/5");
}

#[test]
fn binary_dimension() {
    let v = json(&spectra(&["dim", "--N", "2", "--depth", "12"]));
    let (lo, hi) = (v["bound"]["lo"].as_f64().unwrap(), v["bound"]["hi"].as_f64().unwrap());
    assert!(lo <= 0.5313 && 0.5313 <= hi, "[{lo}, {hi}]");
}

#[test]
fn golden_mean_graph() {
    let g = scratch("golden.txt", "1: 1 2\n2: 1\n");
    let v = json(&spectra(&["scc", "--graph", g.to_str().unwrap()]));
    assert_eq!(v["components"], 1);
    assert_eq!(v["transient_states"], 0);
}

#[test]
fn verify_single_checks() {
    let o = spectra(&["verify-paper", "--only", "freiman"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "PASS freiman c_F: 4.52782956616 vs 4.52782956616\n");
    let v = json(&spectra(&["verify-paper", "--only", "eq32", "--m", "1", "--format", "json"]));
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks[0]["computed"].as_str().unwrap().starts_with("0.411"));
    assert!(checks[3]["computed"].as_str().unwrap().starts_with("0.411"));
    assert!(checks[4]["computed"].as_str().unwrap().starts_with("0.578"));
    assert!(checks.iter().all(|c| c["pass"] == true && c["margin"].as_f64().unwrap() > 0.0));
    assert_eq!(v["failed"], 0);
}

#[test]
fn verify_everything() {
    let o = spectra(&["verify-paper"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn scan_lower_ends_increase() {
    let o = spectra(&["scan", "--N", "2", "--grid", "2.9,3.1,3.3,3.46", "--depth", "10", "--threads", "4"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("t,D_lo,D_hi,d_lo,d_hi"));
    let lo: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(lo.len(), 4);
    assert!(lo.windows(2).all(|w| w[0] <= w[1]), "{s}");
}

#[test]
fn scan_output_ignores_thread_count() {
    let run = |t: &str| stdout(&spectra(&["scan", "--N", "2", "--grid", "2.9,3.1,3.3", "--ell", "4", "--depth", "6", "--threads", t]));
    let one = run("1");
    assert!(one.starts_with("t,D_lo"));
    assert_eq!(one, run("3"));
}

#[test]
fn splice_prefix() {
    let v = json(&spectra(&["splice", "--length", "10000"]));
    assert_eq!(v["window"]["violations"], 0);
    assert_eq!(v["theta"]["length"], 10000);
    assert!(!v["theta"]["insertions"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes() {
    // bad literal, unknown group, unsorted grid, bad clap usage
    assert_eq!(code(&spectra(&["cf", "0;x"])), 2);
    assert_eq!(code(&spectra(&["verify-paper", "--only", "nope"])), 2);
    assert_eq!(code(&spectra(&["scan", "--N", "2", "--grid", "3.1,2.9"])), 2);
    assert_eq!(code(&spectra(&["dim"])), 2);
    assert_eq!(code(&spectra(&["frobnicate"])), 2);
    // nothing survives below √5
    let empty = spectra(&["prune", "--N", "2", "--t", "2"]);
    assert_eq!(code(&empty), 3);
    assert!(!empty.stdout.is_empty(), "report is still printed");
    // output path is a directory
    let dir = std::env::temp_dir();
    assert_eq!(code(&spectra(&["cf", "0;:(1)*", "--out", dir.to_str().unwrap()])), 4);
}

#[test]
fn out_file() {
    let p = scratch("out.json", "");
    assert_eq!(code(&spectra(&["markov", "(1)*", "--out", p.to_str().unwrap()])), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["markov"]["value"]["exact"], "√5");
}

fn places(o: &Output) -> usize {
    let v = json(o);
    v["value"]["decimal"].as_str().unwrap().split('.').nth(1).unwrap().len()
}

#[test]
fn precision_sources() {
    let cfg = scratch("run.conf", "# test run\nprecision = 64\nformat = json\n");
    let c = cfg.to_str().unwrap();
    assert_eq!(places(&spectra(&["cf", "0;:(1)*"])), 38);
    assert_eq!(places(&spectra(&["--config", c, "cf", "0;:(1)*"])), 19);
    assert_eq!(places(&spectra(&["--config", c, "--precision", "100", "cf", "0;:(1)*"])), 30);
    let env = Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(["--config", c, "--precision", "100", "cf", "0;:(1)*"])
        .env("SPECTRA_PRECISION", "256")
        .output()
        .unwrap();
    assert_eq!(places(&env), 76);
    let bad = scratch("bad.conf", "colour = red\n");
    assert_eq!(code(&spectra(&["--config", bad.to_str().unwrap(), "cf", "0;:(1)*"])), 2);
}
