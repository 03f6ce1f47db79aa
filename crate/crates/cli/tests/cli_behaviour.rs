use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hyrobin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyrobin")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn disk_eigen_reports_discrete_value() {
    let out = hyrobin(&["disk-eigen", "--alpha", "-2", "--radius", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], "hyrobin.report/1");
    assert_eq!(v["kind"], "discrete_eigenvalue");
    assert!((v["lambda"].as_f64().unwrap() + 1.650_297_249_38).abs() < 1e-10);
    assert_eq!(v["config"]["numerics"]["grid_points"], 8000);
    assert_eq!(v["config"]["parameters"]["alpha"], -2.0);
}

#[test]
fn alpha_star_at_unit_radius() {
    let v = json(&hyrobin(&["alpha-star", "--radius", "1"]));
    let (star, bound) = (v["alpha_star"].as_f64().unwrap(), v["upper_bound"].as_f64().unwrap());
    assert!((bound + 0.472_577_9).abs() < 1e-7);
    assert!(star <= bound);
    assert_eq!(v["bound_holds"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(hyrobin(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(hyrobin(&["disk-eigen", "--alpha", "-2", "--radius", "1", "--bogus"]).status.code(), Some(1));
    assert_eq!(hyrobin(&["disk-eigen", "--alpha", "-2"]).status.code(), Some(1));
    assert_eq!(hyrobin(&["disk-eigen", "--alpha", "-2", "--radius", "0"]).status.code(), Some(1));
    assert_eq!(hyrobin(&["disk-eigen", "--alpha", "-2", "--radius", "1", "--precision", "0"]).status.code(), Some(1));
    assert_eq!(hyrobin(&["--help"]).status.code(), Some(0));
    // the alpha-star bound is violated at R = 0.25
    let v = hyrobin(&["verify", "--suite", "alpha-star-bounds"]);
    assert_eq!(v.status.code(), Some(3));
    assert_eq!(json(&v)["pass"], false);
    assert_eq!(hyrobin(&["verify", "--suite", "monotonicity"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let out = hyrobin(&["disk-eigen", "--alpha", "-2", "--radius", "1", "--out", "/nonexistent/dir/x.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.cfg", "# unit disk\nalpha = -2\nradius = 1\ntruncation = 60\nprecision = 6\n");
    let v = json(&hyrobin(&["disk-eigen", "--config", &cfg, "--truncation", "50"]));
    assert_eq!(v["config"]["numerics"]["truncation"], 50.0);
    assert_eq!(v["config"]["output"]["precision"], 6);
    assert_eq!(v["lambda"], -1.6503);
    let v = json(&hyrobin(&["disk-eigen", "--config", &cfg, "--radius", "2"]));
    assert_eq!(v["config"]["parameters"]["radius"], 2.0);
}

#[test]
fn malformed_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    for text in ["alpha -2\n", "alpha = -2\nalpha = -1\n", "colour = red\n", "grid_points = lots\n"] {
        let cfg = write(dir.path(), "bad.cfg", text);
        let out = hyrobin(&["disk-eigen", "--config", &cfg, "--alpha", "-2", "--radius", "1"]);
        assert_eq!(out.status.code(), Some(1), "{text:?}");
    }
    assert_eq!(hyrobin(&["disk-eigen", "--config", "/no/such/file"]).status.code(), Some(1));
}

#[test]
fn csv_sweep_layout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let status = hyrobin(&["sweep", "--alphas", "-2,0", "--radii", "0.5,1", "--out", out.to_str().unwrap()]);
    assert_eq!(status.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha,R,lambda,nu,kind");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("-2.0,0.5,") && lines[1].ends_with(",discrete_eigenvalue"));
    assert_eq!(lines[3], "0.0,0.5,0.25,,essential_bottom");
    let meta: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("sweep.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["rows"], 4);
    assert_eq!(meta["config"]["parameters"]["radii"], serde_json::json!([0.5, 1.0]));
}

#[test]
fn json_sweep_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "sweep.cfg", "alphas = -5, -1\nradii = 2\nformat = json\n");
    let v = json(&hyrobin(&["sweep", "--config", &cfg]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["alpha"], -5.0);
    assert_eq!(rows[1]["kind"], "discrete_eigenvalue");
}

#[test]
fn equal_configs_give_equal_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let p = dir.path().join(name);
        hyrobin(&["verify", "--suite", "main-theorem", "--out", p.to_str().unwrap()]);
        std::fs::read(p).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
    let a = hyrobin(&["sweep", "--alphas", "-3,-1,0", "--radii", "0.5,2", "--format", "json"]).stdout;
    let b = hyrobin(&["sweep", "--alphas", "-3,-1,0", "--radii", "0.5,2", "--format", "json"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn verify_report_schema() {
    let v = json(&hyrobin(&["verify", "--suite", "corollaries"]));
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    for c in checks {
        assert_eq!(c["check_name"], "corollaries");
        assert!(c["tolerance"].is_number() && c["outcomes"].is_array());
        assert_eq!(c["pass"], true);
    }
    assert_eq!(v["pass"], true);
    assert_eq!(v["config"]["parameters"]["suite"], "corollaries");
}

#[test]
fn geometry_queries() {
    let v = json(&hyrobin(&["geometry", "disk", "--radius", "1"]));
    assert!((v["area"].as_f64().unwrap() - 3.412_276).abs() < 1e-5);
    let v = json(&hyrobin(&["geometry", "comparison", "--perimeter", "10", "--area", "3"]));
    assert!(v["matching_radius"].is_null());
    assert!(v["area_radius"].as_f64().unwrap() < v["perimeter_radius"].as_f64().unwrap());
    let v = json(&hyrobin(&["geometry", "parallel", "--perimeter", "10", "--area", "3", "--t", "0"]));
    assert_eq!(v["parallel_perimeter"], 10.0);
    assert_eq!(hyrobin(&["geometry", "comparison", "--perimeter", "3", "--area", "3"]).status.code(), Some(1));
}

#[test]
fn oracle_compare_and_poincare_defaults() {
    let v = json(&hyrobin(&["oracle-compare", "--alphas", "-2,-1", "--radii", "0.5,1,2"]));
    assert_eq!(v["pass"], true);
    let p = hyrobin(&["poincare-check"]);
    assert_eq!(p.status.code(), Some(0));
    assert_eq!(json(&p)["checks"][0]["outcomes"].as_array().unwrap().len(), 10);
}
