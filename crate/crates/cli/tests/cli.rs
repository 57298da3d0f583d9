use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn cqed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cqed"))
        .args(args)
        .output()
        .expect("failed to launch cqed")
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn header(path: &Path) -> String {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .to_string()
}

#[test]
fn simulate_writes_trajectory_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = cqed(&[
        "simulate",
        config("fig2.json").to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(
        header(&dir.path().join("trajectory.csv")),
        "t_ns,rho_ee,rho_e1_re,rho_e1_im,alpha_re,alpha_im,\
         sigma_e0_re,sigma_e0_im,sigma_10_re,sigma_10_im,S_t"
    );
    let rows = std::fs::read_to_string(dir.path().join("trajectory.csv"))
        .unwrap()
        .lines()
        .count();
    assert_eq!(rows, 2002);
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("report.json")).unwrap()).unwrap();
    let theta = report["theta"].as_f64().unwrap();
    assert!((theta / -0.01353 - 1.0).abs() < 0.01);
    for key in ["alpha_final_re", "loss_fraction", "d", "rho10_mag", "F_r", "F_i", "F"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn bad_config_exits_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"alpha": 10, "r": -1}"#).unwrap();
    let out = cqed(&["approx", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    std::fs::write(&cfg, r#"{"alpha": 10, "unknown_field": 1}"#).unwrap();
    let out = cqed(&["approx", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_config_exits_with_code_4() {
    let out = cqed(&["approx", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn guard_violation_exits_with_code_3() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(config("fig2.json"))
        .unwrap()
        .replace("\"g_over_2pi_GHz\": 0.17", "\"g_over_2pi_GHz\": 1.0");
    let cfg = dir.path().join("strong.json");
    std::fs::write(&cfg, text).unwrap();
    let out = cqed(&[
        "simulate",
        cfg.to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn approx_prints_json() {
    let out = cqed(&["approx", config("baseline_a.json").to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let theta = v["theta_approx"].as_f64().unwrap();
    assert!((theta / -5.78e-3 - 1.0).abs() < 0.02);
}

#[test]
fn sweep_honours_grid_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = cqed(&[
        "sweep",
        config("fig3.json").to_str().unwrap(),
        "--figure",
        "3",
        "--grid-override",
        "log:0.001:1:4",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("fig3_sweep.csv")).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("swept_name,swept_value,"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].starts_with("Gamma_over_2pi_GHz,0.001,"));
}

#[test]
fn unknown_figure_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = cqed(&[
        "sweep",
        config("fig3.json").to_str().unwrap(),
        "--figure",
        "9",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
