use std::path::Path;
use std::process::{Command, Output};

use anomex::config::parse_config;

fn anomex(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anomex")).current_dir(dir).args(args).output().unwrap()
}

fn write_config(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn exponent_heat_all_methods() {
    let tmp = tempfile::tempdir().unwrap();
    write_config(tmp.path(), "heat.toml", "operator = \"heat\"\nn = 2\n[grid]\nR_max = 12\nN = 600\n");
    let out = anomex(tmp.path(), &["exponent", "--config", "heat.toml"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("agreement") && stdout.contains("within"), "{stdout}");
    for method in ["shooting", "power_iteration", "rescaled_flow"] {
        let v = json(&tmp.path().join(format!("out/exponent_{method}.json")));
        assert!((v["alpha"].as_f64().unwrap() - 1.0).abs() < 1e-3, "{v}");
        assert_eq!(v["method"], method);
        assert_eq!(v["grid"]["N"], 600);
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys, ["Lambda", "alpha", "grid", "iterations", "lambda", "method", "n", "operator", "residual"]);
    }
}

#[test]
fn flags_override_config_and_sidecar_names_hash() {
    let tmp = tempfile::tempdir().unwrap();
    write_config(tmp.path(), "c.toml", "operator = \"heat\"\nn = 1\nmethod = \"power\"\n[grid]\nN = 300\n");
    let out = anomex(
        tmp.path(),
        &["profile", "--config", "c.toml", "--operator", "pucci- lambda=1 Lambda=2", "--n", "2", "--r-max", "12", "--output-dir", "res"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(tmp.path().join("res/profile.csv")).unwrap();
    assert!(csv.starts_with("r,phi\n"));
    assert_eq!(csv.lines().count(), 302);
    let meta = json(&tmp.path().join("res/profile.csv.meta.json"));
    assert_eq!(meta["config"]["operator"], "pucci- lambda=1 Lambda=2");
    assert_eq!(meta["config"]["n"], 2);
    assert_eq!(meta["config"]["grid"]["R_max"], 12.0);
    let expected = parse_config(
        "operator = \"pucci- lambda=1 Lambda=2\"\nn = 2\nmethod = \"power\"\noutput_dir = \"res\"\n[grid]\nR_max = 12\nN = 300\n",
    )
    .unwrap();
    assert_eq!(meta["config_hash"], expected.hash());
}

#[test]
fn verify_default_suite_passes() {
    let tmp = tempfile::tempdir().unwrap();
    write_config(tmp.path(), "v.toml", "operator = \"pucci+ lambda=1 Lambda=2\"\nn = 2\n[grid]\nR_max = 12\nN = 600\n");
    let out = anomex(tmp.path(), &["verify", "--config", "v.toml"]);
    assert!(out.status.success(), "{}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr));
    let checks = json(&tmp.path().join("out/verify.json"));
    let checks = checks.as_array().unwrap();
    assert!(checks.len() >= 6);
    assert!(checks.iter().all(|c| c["passed"] == true), "{checks:?}");
}

#[test]
fn evolve_writes_trace_and_report() {
    let tmp = tempfile::tempdir().unwrap();
    write_config(
        tmp.path(),
        "e.toml",
        "operator = \"barenblatt gamma=0.5\"\nn = 1\nmethod = \"shooting\"\n[grid]\nR_max = 16\n[evolve]\nsigmas = [4, 16, 64, 256]\n",
    );
    let out = anomex(tmp.path(), &["evolve", "--config", "e.toml"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&tmp.path().join("out/convergence.json"));
    let errs: Vec<f64> = report["sup_rel_err"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert_eq!(errs.len(), 4);
    assert!(errs.windows(2).all(|w| w[1] < w[0]) && errs[3] < 0.02, "{errs:?}");
    let trace = std::fs::read_to_string(tmp.path().join("out/trace.csv")).unwrap();
    assert!(trace.starts_with("t,u0,cstar_est\n"));
    for t in ["4", "16", "64", "256"] {
        assert!(tmp.path().join(format!("out/profile_t{t}.csv")).exists());
        assert!(tmp.path().join(format!("out/profile_t{t}.csv.meta.json")).exists());
    }
}

#[test]
fn identical_config_gives_identical_files() {
    let tmp = tempfile::tempdir().unwrap();
    let text = "operator = \"barenblatt gamma=0.5\"\nn = 2\n[grid]\nR_max = 10\nN = 250\n";
    write_config(tmp.path(), "a.toml", &format!("output_dir = \"a\"\n{text}"));
    write_config(tmp.path(), "b.toml", &format!("output_dir = \"a\"\n{text}"));
    assert!(anomex(tmp.path(), &["exponent", "--config", "a.toml"]).status.success());
    let first: Vec<(String, Vec<u8>)> = read_dir_sorted(&tmp.path().join("a"));
    std::fs::remove_dir_all(tmp.path().join("a")).unwrap();
    assert!(anomex(tmp.path(), &["exponent", "--config", "b.toml"]).status.success());
    assert_eq!(first, read_dir_sorted(&tmp.path().join("a")));
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn errors_are_json_with_nonzero_status() {
    let tmp = tempfile::tempdir().unwrap();
    write_config(tmp.path(), "bad.toml", "operator = \"heat\"\nn = 1\ntol = 0.5\n");
    let out = anomex(tmp.path(), &["exponent", "--config", "bad.toml"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "validation_error");
    assert!(err["message"].as_str().unwrap().contains("tol"));

    write_config(tmp.path(), "syntax.toml", "operator = \"heat\"\nn = = 1\n");
    let out = anomex(tmp.path(), &["exponent", "--config", "syntax.toml"]);
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "parse_error");
    assert!(err["message"].as_str().unwrap().contains("line 2"));

    let out = anomex(tmp.path(), &["exponent", "--operator", "linear c=1", "--n", "1", "--intervals", "4"]);
    assert_eq!(out.status.code(), Some(2));

    let out = anomex(tmp.path(), &["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "usage");
}

#[test]
fn solver_failure_exits_one() {
    let tmp = tempfile::tempdir().unwrap();
    // After s = 20 the flow defect is ~1e-9, far above the requested 1e-12.
    let out = anomex(
        tmp.path(),
        &["exponent", "--operator", "heat", "--n", "1", "--method", "flow", "--tol", "1e-12", "--r-max", "10", "--intervals", "40"],
    );
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "no_convergence");
}
