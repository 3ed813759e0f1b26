use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const P2: &str =
    "theta = 0.5\ntheta_x = 0.6\nr = 0.55\neta = 0.4\nalpha = 0.33\na = 15\ndelta = 0.2\n";
const P3: &str =
    "theta = 0.2\ntheta_x = 0.6\nmu = 0.5\neta = 0.4\nalpha = 0.33\na = 15\ndelta = 0.9\n";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_landspec"));
    c.env_remove("LANDSPEC_OUTDIR");
    c
}

fn scenario(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str], scen: &Path, out: &Path) -> Output {
    bin()
        .args(args)
        .arg("--scenario")
        .arg(scen)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], row: &[String], name: &str) -> f64 {
    let i = header.iter().position(|h| h == name).unwrap();
    row[i].parse().unwrap()
}

#[test]
fn solve_open_writes_bgp_assumptions_and_manifest() {
    let dir = TempDir::new().unwrap();
    let scen = scenario(&dir, "p2.cfg", P2);
    let out = dir.path().join("out");
    let o = run(&["solve", "--economy", "open"], &scen, &out);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let (h, rows) = read_csv(&out.join("bgp.csv"));
    assert_eq!(rows.len(), 1);
    assert!((column(&h, &rows[0], "phi_star") - 3.827589316665221).abs() < 1e-12);
    assert!(out.join("assumptions.csv").exists());
    let (_, map) = read_csv(&out.join("phi_map.csv"));
    assert_eq!(map.len(), 201);
    let manifest = fs::read_to_string(out.join("manifest.txt")).unwrap();
    assert!(manifest.contains("command = solve"));
    assert!(manifest.contains("seedless = true"));
}

#[test]
fn solve_monetary_reports_rate() {
    let dir = TempDir::new().unwrap();
    let scen = scenario(&dir, "p3.cfg", P3);
    let out = dir.path().join("out");
    let o = run(&["solve"], &scen, &out);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = read_csv(&out.join("bgp.csv"));
    assert!((column(&h, &rows[0], "gross_r") - 0.7084422261352255).abs() < 1e-12);
    assert!(out.join("determinacy.csv").exists());
}

#[test]
fn assumption_failure_exits_three_and_still_reports() {
    let dir = TempDir::new().unwrap();
    let scen = scenario(&dir, "bad.cfg", &P2.replace("theta = 0.5", "theta = 0.56"));
    let out = dir.path().join("out");
    let o = run(&["solve"], &scen, &out);
    assert_eq!(o.status.code(), Some(3));
    let text = fs::read_to_string(out.join("assumptions.csv")).unwrap();
    assert!(text.contains("open,A1,false"));
}

#[test]
fn check_passes_on_baselines() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [("p2.cfg", P2), ("p3.cfg", P3)] {
        let scen = scenario(&dir, name, text);
        let out = dir.path().join(name.replace(".cfg", ""));
        let o = run(&["check"], &scen, &out);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let (h, rows) = read_csv(&out.join("propositions.csv"));
        assert_eq!(h, ["id", "claim", "value", "pass", "error"]);
        assert!(rows.iter().all(|r| r[3] == "true"));
    }
}

#[test]
fn check_fails_with_exit_four_when_theta_too_high() {
    let dir = TempDir::new().unwrap();
    let scen = scenario(&dir, "bad.cfg", &P2.replace("theta = 0.5", "theta = 0.56"));
    let o = run(&["check"], &scen, &dir.path().join("out"));
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn scenario_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let empty = scenario(&dir, "empty.cfg", "");
    assert_eq!(run(&["solve"], &empty, &out).status.code(), Some(1));
    let unknown = scenario(&dir, "unknown.cfg", &format!("{P2}gamma = 1\n"));
    assert_eq!(run(&["solve"], &unknown, &out).status.code(), Some(1));
    let missing = dir.path().join("nope.cfg");
    assert_eq!(run(&["solve"], &missing, &out).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(
        bin().arg("frobnicate").output().unwrap().status.code(),
        Some(1)
    );
    assert_eq!(bin().arg("--help").output().unwrap().status.code(), Some(0));
    let dir = TempDir::new().unwrap();
    let scen = scenario(&dir, "p2.cfg", P2);
    let o = run(&["sweep", "--wrt", "mu"], &scen, &dir.path().join("out"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sweep_schema_and_monetary_extra_file() {
    let dir = TempDir::new().unwrap();
    let scen = scenario(&dir, "p3.cfg", P3);
    let out = dir.path().join("out");
    let o = run(&["sweep", "--wrt", "theta", "--steps", "5"], &scen, &out);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = read_csv(&out.join("sweep.csv"));
    assert_eq!(
        h,
        [
            "epsilon",
            "g_star",
            "phi_star",
            "gross_r",
            "derivative",
            "sign",
            "feasible",
            "reason"
        ]
    );
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r[5] == "pos"));
    let (h, _) = read_csv(&out.join("monetary_sweep.csv"));
    assert_eq!(
        h,
        [
            "epsilon",
            "theta",
            "theta_x",
            "mu",
            "phi_star",
            "gross_r",
            "gross_growth",
            "credit_gdp"
        ]
    );
}

#[test]
fn outdir_from_environment() {
    let dir = TempDir::new().unwrap();
    let scen = scenario(&dir, "p2.cfg", P2);
    let out = dir.path().join("env-out");
    let o = bin()
        .args(["solve", "--scenario"])
        .arg(&scen)
        .env("LANDSPEC_OUTDIR", &out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(out.join("bgp.csv").exists());
}

#[test]
fn simulate_path_and_shock_branches() {
    let dir = TempDir::new().unwrap();
    let scen = scenario(&dir, "p2.cfg", P2);
    let out = dir.path().join("plain");
    assert_eq!(
        run(&["simulate", "--periods", "5"], &scen, &out)
            .status
            .code(),
        Some(0)
    );
    let (h, rows) = read_csv(&out.join("path.csv"));
    assert_eq!(h, ["t", "K", "P", "phi", "g", "w", "Y"]);
    assert_eq!(rows.len(), 6);

    let out = dir.path().join("shock");
    let o = run(
        &[
            "simulate",
            "--periods",
            "8",
            "--shock-eps",
            "0.5",
            "--shock-at",
            "3",
        ],
        &scen,
        &out,
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let (h, rows) = read_csv(&out.join("path.csv"));
    assert_eq!(h[0], "branch");
    assert_eq!(rows.iter().filter(|r| r[0] == "baseline").count(), 9);
    assert_eq!(rows.iter().filter(|r| r[0] == "shocked").count(), 9);
}

#[test]
fn simulate_unbalanced_writes_price_over_value() {
    let dir = TempDir::new().unwrap();
    let scen = scenario(&dir, "p2.cfg", P2);
    let out = dir.path().join("out");
    let o = run(&["simulate", "--d", "0.02", "--periods", "40"], &scen, &out);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = read_csv(&out.join("unbalanced.csv"));
    assert_eq!(h, ["t", "phi", "n", "g", "P_over_V"]);
    assert_eq!(rows.len(), 41);
    assert!(rows.iter().all(|r| r[4].parse::<f64>().unwrap() > 1.0));
}
