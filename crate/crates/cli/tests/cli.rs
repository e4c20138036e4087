use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pinchflow"));
    c.env_remove("PINCHFLOW_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn verify_reports_and_exit_codes() {
    let out = run(&["verify", "--lemma", "L3.1", "--n", "7"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["verified"], true);
    assert_eq!(v["lemma"], "L3.1");
    assert!(v.get("wall_time_ms").is_none());

    let out = run(&["verify", "--lemma", "L3.1", "--n", "7", "--max-cells", "1"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["verified"], false);

    let out = run(&["verify", "--lemma", "L5.2", "--n", "4-6", "--timing"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert!(v[2]["wall_time_ms"].is_u64());
}

#[test]
fn extrema_reproduce_quoted_values() {
    let v = json(&run(&["extrema", "--expr", "L3.1.delta", "--n", "7"]));
    assert!((v["x_star"].as_f64().unwrap() - 20.399).abs() < 0.05);
    assert!((v["f_star"].as_f64().unwrap() + 0.264).abs() < 0.005);
    assert_eq!(v["mode"], "Max");
    let v = json(&run(&["extrema", "--expr", "L3.1.n8cubic", "--n", "8"]));
    assert!((v["f_star"].as_f64().unwrap() - 86.697).abs() < 0.01);
}

#[test]
#[allow(clippy::approx_constant)] // the value passed on the command line
fn sphere_flow_csv() {
    let out = run(&["flow", "--kind", "sphere", "--n", "7", "--rho0", "1.0472", "--kbar", "1"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,max_A2,min_H2,max_H2,sup_U,sup_f_sigma,roundness,sup_gradH2,sup_Aring2_over_H2"
    );
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("# outcome=RoundPoint extinction_time="), "{last}");
    let t: f64 = last.rsplit('=').next().unwrap().parse().unwrap();
    // cos(1.0472) e^{7T} = 1
    assert!((t + 1.0472f64.cos().ln() / 7.0).abs() < 1e-6);
    // 17 significant digits: one leading digit and 16 after the point
    let first = text.lines().nth(1).unwrap().split(',').nth(1).unwrap();
    assert_eq!(first.split('e').next().unwrap().split('.').nth(1).unwrap().len(), 16, "{first}");
}

#[test]
fn other_subcommands() {
    let out = run(&["thresholds", "--n", "7", "--profiles", "alpha,sqrt-a", "--xmax", "10", "--steps", "4"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert_eq!(text.lines().next().unwrap(), "x,alpha,sqrt-a");
    let row: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(row, vec![0.0, 7.0, 14f64.sqrt()]);

    let v = json(&run(&["classify", "--model", "torus:0.9", "--profile", "sqrt-a", "--n", "4"]));
    assert_eq!(v["classification"], "Outside");
    let v = json(&run(&["classify", "--model", "sphere:0.7", "--n", "5"]));
    assert_eq!(v["classification"], "StrictlyInside");

    let r = |f: &str| {
        let v = json(&run(&["consistency", "--kind", "clifford", "--which", "A2", "--r1-factor", f, "--n", "7"]));
        v["residual"].as_f64().unwrap()
    };
    assert!(r("1") <= 1e-6 && r("2") > 0.1);
}

#[test]
fn usage_and_runtime_errors_exit_one() {
    for args in [
        vec!["verify", "--lemma", "L3.1", "--n", "7", "--bogus"],
        vec!["frobnicate"],
        vec!["verify", "--lemma", "L9.9", "--n", "7"],
        vec!["flow", "--kind", "sphere", "--n", "7", "--rho0", "4"],
        vec!["flow", "--kind", "clifford", "--n", "7"],
        vec!["thresholds", "--n", "5", "--profiles", "gamma"],
        vec!["classify", "--model", "cube:1", "--n", "3"],
        vec!["verify", "--lemma", "L3.1", "--n", "9-7"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 1, "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        assert!(out.stdout.is_empty());
    }
    let out = bin().args(["verify", "--lemma", "L3.1", "--n", "7"]).env("PINCHFLOW_THREADS", "zero").output().unwrap();
    assert_eq!(code(&out), 1);
}

#[test]
fn malformed_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"context\": {\"n\": \"seven\"}}").unwrap();
    let out = run(&["--config", p.to_str().unwrap(), "extrema", "--expr", "L3.1.delta"]);
    assert_eq!(code(&out), 1);
    std::fs::write(&p, "{\"contxt\": {}}").unwrap();
    assert_eq!(code(&run(&["--config", p.to_str().unwrap(), "extrema", "--expr", "L3.1.delta"])), 1);
}

fn axisym(dir: &Path, seed: &str, name: &str, threads: &str) -> Vec<u8> {
    let out = dir.join(name);
    let status = bin()
        .env("PINCHFLOW_THREADS", threads)
        .args(["flow", "--kind", "axisym", "--n", "4", "--grid-size", "33", "--noise", "0.02", "--t-max", "0.01"])
        .args(["--seed", seed, "--output", out.to_str().unwrap()])
        .status()
        .unwrap();
    assert!(status.success());
    std::fs::read(out).unwrap()
}

#[test]
fn seeded_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = axisym(dir.path(), "7", "a.csv", "1");
    let b = axisym(dir.path(), "7", "b.csv", "3");
    let c = axisym(dir.path(), "8", "c.csv", "1");
    assert_eq!(a, b);
    assert_ne!(a, c);
    // only the requested files remain, so temporaries were renamed into place
    let mut names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names, ["a.csv", "b.csv", "c.csv"]);

    let v = |t: &str| {
        bin().env("PINCHFLOW_THREADS", t).args(["verify", "--lemma", "L2.3", "--n", "3-12"]).output().unwrap().stdout
    };
    assert_eq!(v("1"), v("4"));
}

#[test]
fn config_round_trips_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"context": {"n": 7, "kbar": 1.0}, "seed": 3,
            "flow": {"kind": "sphere", "rho0": 1.0, "config": {"dt_policy": {"fixed": 1e-4}, "blowup_threshold": 1e6}}}"#,
    )
    .unwrap();
    let saved = dir.path().join("saved.json");
    let again = dir.path().join("again.json");
    let c = cfg.to_str().unwrap();
    let out = run(&["--config", c, "--save-config", saved.to_str().unwrap(), "flow", "--rho0", "0.8"]);
    assert_eq!(code(&out), 0);
    let eff: Value = serde_json::from_slice(&std::fs::read(&saved).unwrap()).unwrap();
    assert_eq!(eff["flow"]["rho0"].as_f64(), Some(0.8));
    assert_eq!(eff["flow"]["config"]["blowup_threshold"].as_f64(), Some(1e6));
    assert_eq!(eff["seed"], 3);

    let s = saved.to_str().unwrap();
    let out2 = run(&["--config", s, "--save-config", again.to_str().unwrap(), "flow"]);
    assert_eq!(std::fs::read(&saved).unwrap(), std::fs::read(&again).unwrap());
    assert_eq!(out.stdout, out2.stdout);
}
