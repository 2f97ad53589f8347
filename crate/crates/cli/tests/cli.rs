use std::process::{Command, Output};

use serde_json::Value;

fn lambdag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambdag"))
        .args(args)
        .env_remove("LAMBDAG_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value, Vec<u8>) {
    let mut full = args.to_vec();
    full.extend(["--format", "json", "--no-timing"]);
    let out = lambdag(&full);
    let v = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().unwrap(), v, out.stdout)
}

#[test]
fn bazlov_g2_three_ways() {
    let (code, v, _) = json(&["bazlov", "--type", "G", "--rank", "2"]);
    assert_eq!(code, 0);
    let expected = serde_json::json!([[5, 1], [6, 1], [8, 1], [9, 1]]);
    assert_eq!(v["results"]["gm"], expected);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert_eq!(checks[0]["lhs"], expected);
    assert_eq!(checks[0]["rhs"], expected);
}

#[test]
fn verify_sl_n2() {
    let (code, v, _) = json(&["verify-sl", "--n", "2", "--trials", "50", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["measured_constant"], "-1/2");
    assert_eq!(v["seed"], 7);
}

#[test]
fn gm_sl2() {
    let out = lambdag(&["gm", "--type", "A", "--rank", "1", "--weight", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("gm: q + q^2"));
}

#[test]
fn report_schema() {
    let (_, v, _) = json(&["roots", "--type", "F", "--rank", "4"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in [
        "command",
        "inputs",
        "results",
        "checks",
        "runtime_ms",
        "seed",
    ] {
        assert!(keys.contains(&k), "missing {k}");
    }
    for c in v["checks"].as_array().unwrap() {
        for k in ["name", "status", "lhs", "rhs"] {
            assert!(c.get(k).is_some());
        }
    }
    assert_eq!(v["results"]["weyl_order"], 1152);
}

#[test]
fn deterministic_reports() {
    for args in [
        &["verify-sl", "--n", "3", "--trials", "3", "--seed", "11"][..],
        &["census", "--type", "C", "--rank", "3"][..],
        &["stembridge", "--partition", "3,1"][..],
    ] {
        let (_, _, a) = json(args);
        let (_, _, b) = json(args);
        assert_eq!(a, b, "{args:?}");
    }
    let (_, _, one) = json(&["census", "--type", "B", "--rank", "3", "--jobs", "1"]);
    let (_, _, many) = json(&["census", "--type", "B", "--rank", "3", "--jobs", "3"]);
    assert_eq!(one, many);
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (_, _, uncached) = json(&["census", "--type", "A", "--rank", "3"]);
    let (_, _, cold) = json(&["census", "--type", "A", "--rank", "3", "--cache-dir", d]);
    let file = dir.path().join("A3.full.v1.json");
    assert!(file.exists());
    let written = std::fs::metadata(&file).unwrap().modified().unwrap();
    let (_, _, warm) = json(&["census", "--type", "A", "--rank", "3", "--cache-dir", d]);
    assert_eq!(
        std::fs::metadata(&file).unwrap().modified().unwrap(),
        written
    );
    assert_eq!(cold, uncached);
    assert_eq!(warm, cold);

    let env_dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_lambdag"))
        .args([
            "gm",
            "--type",
            "B",
            "--rank",
            "2",
            "--weight",
            "0,2",
            "--no-timing",
        ])
        .env("LAMBDAG_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(env_dir.path().join("B2.full.v1.json").exists());
}

#[test]
fn corrupt_cache_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (_, _, cold) = json(&["bazlov", "--type", "B", "--rank", "3", "--cache-dir", d]);
    let file = dir.path().join("B3.full.v1.json");
    std::fs::write(&file, "{\"truncated\": ").unwrap();
    let (code, _, again) = json(&["bazlov", "--type", "B", "--rank", "3", "--cache-dir", d]);
    assert_eq!(code, 0);
    assert_eq!(again, cold);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(v["version"], 1);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bazlov", "--type", "D", "--rank", "4"][..],
        &["gm", "--type", "A", "--rank", "2", "--weight", "1"][..],
        &["roots", "--type", "H", "--rank", "3"][..],
        &["verify-sl", "--n", "7"][..],
        &["scan-a", "--n", "3"][..],
        &["census", "--type", "A", "--rank", "5", "--full"][..],
        &["frobnicate"][..],
    ] {
        assert_eq!(lambdag(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn selftest_passes() {
    let (code, v, _) = json(&["selftest"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().len() > 40);
}

#[test]
fn latex_output() {
    let out = lambdag(&["bazlov", "--type", "C", "--rank", "3", "--format", "latex"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("\\begin{align*}"));
    assert!(s.contains("q^{"));
}
