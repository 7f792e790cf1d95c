use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ultrarad")).args(args).env_remove("ULTRARAD_FORMAT").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn radius_examples() {
    let r = json(&["radius", "--a", "5", "--b", "2"]);
    assert!((num(&r["results"][0]["R"]) - 0.3920298).abs() < 5e-4);
    assert!((num(&r["results"][0]["R"]) - 1.5f64.powf(0.4) / 3.0).abs() < 1e-15);
    let r = json(&["radius", "--a", "0", "--b", "1"]);
    assert!((num(&r["results"][0]["R"]) - 0.3678794412).abs() < 1e-10);
    assert_eq!(r["results"][0]["kind"], "a=0");
    assert_eq!(json(&["radius", "--a", "2", "--b", "2"])["results"][0]["kind"], "b=a");
    assert_eq!(r["schema_version"], "1");
    assert_eq!(r["command"], "radius");
}

#[test]
fn ultra_examples() {
    let r = &json(&["ultra", "-n", "0", "--a", "2", "--b", "1", "--x", "0.5"])["results"][0];
    assert!((num(&r["value_re"]) - 1.6180339887).abs() < 1e-10);
    assert_eq!(r["J"], "direct");
    let r = &json(&["ultra", "-n", "2", "--a", "5", "--b", "2", "--x", "7"])["results"][0];
    assert_eq!((r["J"].as_str().unwrap(), r["N"].as_i64().unwrap()), ("h", 2));
    let r = &json(&["ultra", "-n", "0", "--a", "2", "--b", "2", "--x", "0.1"])["results"][0];
    assert_eq!(r["route"], "closed-form");
    let r = &json(&["ultra", "-n", "-1", "--a", "3", "--b", "1", "--x", "-0.1+0.2i"])["results"][0];
    assert!(num(&r["residual"]) < 1e-12);
}

#[test]
fn solve_examples() {
    let r = json(&["solve", "--A", "1", "--a", "2/3", "--B", "0.01", "--b", "1/2", "--C", "1", "-n", "0"]);
    let y = &r["results"][0];
    assert!((num(&y["value_re"]) - 0.010457452422).abs() < 1e-9);
    assert!((num(&y["value_im"]) + 0.989394240851).abs() < 1e-9);
    assert_eq!(y["u"], 1);

    let r = json(&["solve", "--A", "1", "--a", "2", "--B", "-1", "--b", "1", "--C", "-1", "-n", "0..1"]);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut got: Vec<f64> = r["results"].as_array().unwrap().iter().map(|y| num(&y["value_re"])).collect();
    got.sort_by(f64::total_cmp);
    assert!((got[0] + 1.0 / phi).abs() < 1e-12 && (got[1] - phi).abs() < 1e-12);

    let base = ["solve", "--A", "1", "--a", "2/3", "--B", "0.01", "--b", "1/2", "--C", "1", "-n", "0..3"];
    let abc = json(&base);
    let aabbc = json(&[&base[..], &["--pipeline", "aabbc"]].concat());
    for k in 0..4 {
        let (x, y) = (&abc["results"][k], &aabbc["results"][k]);
        let d = (num(&x["value_re"]) - num(&y["value_re"])).hypot(num(&x["value_im"]) - num(&y["value_im"]));
        assert!(d < 1e-9, "n={k}");
    }
}

#[test]
fn solve_reports_missing_branches() {
    let r = json(&["solve", "--A", "1", "--a", "2/3", "--B", "0.01", "--b", "1/2", "--C", "1", "-n", "3..4"]);
    assert_eq!(r["results"][1]["status"], "failed");
    assert!(r["warnings"][0].as_str().unwrap().contains("period 4"));
    let out = run(&["solve", "--A", "1", "--a", "2/3", "--B", "0.01", "--b", "1/2", "--C", "1", "-n", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn trajectory_examples() {
    let out = run(&[
        "trajectory",
        "--a",
        "5",
        "--b",
        "2",
        "-n",
        "1,2,-2,-1",
        "--from",
        "-2",
        "--to",
        "2",
        "--steps",
        "101",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x_re,x_im,n,y_re,y_im,J,N,u,status");
    assert_eq!(lines.count(), 404);

    let r = json(&["trajectory", "--a", "4", "--b", "1", "--arc", "P=0.9", "Q=0.9"]);
    let rows = r["results"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|x| x["J"] == "direct" && x["status"] == "converged"));

    let r = json(&["trajectory", "--a", "3", "--b", "1", "--from", "0.5", "--to", "1", "--steps", "1"]);
    assert_eq!(r["results"].as_array().unwrap().len(), 3);

    let r = json(&["trajectory", "--a", "4", "--b", "1", "--arc", "P=2", "Q=8", "--steps", "9"]);
    assert_eq!(r["results"].as_array().unwrap().len(), 36);
}

#[test]
fn series_examples() {
    let v = |args: &[&str]| num(&json(args)["results"][0]["value_re"]);
    assert!((v(&["series", "--m", "1", "--a", "0", "--b", "0", "--x", "1"]) - std::f64::consts::E).abs() < 1e-15);
    assert!((v(&["series", "--m", "0", "--a", "2", "--b", "1", "--x", "0.25"]) - 0.25f64.asinh()).abs() < 1e-15);
    assert!((v(&["series", "--m", "1", "--a", "0.5", "--b", "0", "--x", "6"]) - 16.0).abs() < 1e-12);
    assert!((v(&["series", "--m", "1", "--a", "1/2", "--bs", "0,0", "--xs", "1,1"]) - 4.0).abs() < 1e-15);
    // d = 1 integrates e^x from 0
    assert!(
        (v(&["series", "--m", "1", "--a", "0", "--b", "0", "--x", "1", "-d", "1"]) - (std::f64::consts::E - 1.0)).abs()
            < 1e-14
    );
    assert!(
        (v(&["series", "--m", "1", "--a", "0", "--b", "0", "--x", "1", "--c", "1"]) - std::f64::consts::E).abs()
            < 1e-15
    );
}

#[test]
fn deterministic_output() {
    for args in [
        &["solve", "--A", "1", "--a", "2/3", "--B", "0.01", "--b", "1/2", "--C", "1", "-n", "0..3"][..],
        &["trajectory", "--a", "5", "--b", "2", "--from", "-2", "--to", "2", "--steps", "21"][..],
        &["ultra", "-n", "2", "--a", "5", "--b", "2", "--x", "7"][..],
    ] {
        let (x, y) = (run(args), run(args));
        assert!(x.status.success());
        assert_eq!(x.stdout, y.stdout);
    }
}

#[test]
fn inputs_round_trip() {
    let args = ["solve", "--A", "1", "--a", "2/3", "--B", "0.01", "--b", "1/2", "--C", "1", "-n", "0..1"];
    let first = run(&args);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    let inp = &v["inputs"];
    let s = |k: &str| inp[k].as_str().unwrap().to_string();
    let rebuilt = [
        "solve".to_string(),
        "--A".into(),
        s("A"),
        "--a".into(),
        s("a"),
        "--B".into(),
        s("B"),
        "--b".into(),
        s("b"),
        "--C".into(),
        s("C"),
        "-n".into(),
        s("n"),
        "--pipeline".into(),
        s("pipeline"),
        "--max-terms".into(),
        inp["max_terms"].to_string(),
        "--u-max".into(),
        inp["u_max"].to_string(),
        "--tol".into(),
        inp["tol"].to_string(),
        "--rel-tol".into(),
        inp["rel_tol"].to_string(),
    ];
    let refs: Vec<&str> = rebuilt.iter().map(String::as_str).collect();
    let second = run(&refs);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["radius", "--a", "5", "--b", "2"]).status.code(), Some(0));
    assert_eq!(run(&["radius", "--a", "five", "--b", "2"]).status.code(), Some(2));
    assert_eq!(run(&["radius", "--a", "5"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["ultra", "--a", "0", "--b", "1", "--x", "0.1"]).status.code(), Some(2));
    assert_eq!(
        run(&["series", "--m", "1", "--a", "1", "--b", "1", "--x", "0.1", "--max-terms", "0"]).status.code(),
        Some(2)
    );
    let out = run(&["series", "--m", "1", "--a", "5", "--b", "2", "--x", "0.6"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["status"], "diverged");
}

#[test]
fn environment_overrides() {
    let out = Command::new(env!("CARGO_BIN_EXE_ultrarad"))
        .args(["radius", "--a", "5", "--b", "2"])
        .env("ULTRARAD_FORMAT", "csv")
        .output()
        .unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("R,kind\n"));
    let out = Command::new(env!("CARGO_BIN_EXE_ultrarad"))
        .args(["series", "--m", "1", "--a", "0", "--b", "0", "--x", "1"])
        .env("ULTRARAD_MAX_TERMS", "4")
        .env_remove("ULTRARAD_FORMAT")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["inputs"]["max_terms"], 4);
    assert_eq!(v["results"][0]["status"], "truncated");
}
