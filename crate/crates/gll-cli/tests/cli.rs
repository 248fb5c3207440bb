//! Integration tests of the command-line surface.

use gll::sample::{sample_gll, RngState};
use gll::GllParams;
use gll_cli::output::{parse_fit, parse_kv};
use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_gll")
}

fn run_ok(args: &[&str]) -> String {
    let out = Command::new(bin()).args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn temp_csv(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("gll-cli-test-{}-{name}", std::process::id()));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

#[test]
fn table1_has_eleven_rows() {
    let out = run_ok(&["premium", "table1"]);
    let lines: Vec<&str> = out.lines().collect();
    // header + 3 family section rows + 8 data rows
    assert_eq!(lines.len() - 1, 11, "expected 11 table rows, got:\n{out}");
    // premiums are printed to 3 decimals
    assert!(lines.iter().any(|l| l.contains("5.000") && l.contains("19.535")));
}

#[test]
fn eval_moment_and_entropy() {
    let out = run_ok(&["eval", "--theta", "1", "--lambda", "0", "--p", "0", "--what", "moment"]);
    assert_eq!(out, "quantity,value\nmoment[1],0.250000\n");
    let out = run_ok(&[
        "eval", "--theta", "1", "--lambda", "1", "--p", "0", "--what", "entropy", "--format",
        "structured",
    ]);
    let kv = parse_kv(&out).unwrap();
    let get = |k: &str| kv.iter().find(|(key, _)| key == k).map(|(_, v)| v.clone()).unwrap();
    // the p = 0 printed closed form is discrepant: quadrature wins
    assert_eq!(get("closed_form_diagnostic"), "shannon-entropy-p0");
    let value: f64 = get("entropy").parse().unwrap();
    assert!((value - -0.105026500601652).abs() < 1e-6);
}

#[test]
fn fit_structured_round_trip() {
    let truth = GllParams::new(2.0, 1.0, 1.0).unwrap();
    let mut rng = RngState::new(99);
    let draws = sample_gll(&truth, 400, &mut rng).unwrap();
    let mut contents = String::from("y\n");
    for d in &draws {
        contents.push_str(&format!("{d}\n"));
    }
    let path = temp_csv("fit.csv", &contents);
    let out = run_ok(&["fit", path.to_str().unwrap(), "--format", "structured"]);
    let parsed = parse_fit(&out).unwrap();
    assert!(parsed.converged);
    // round trip: the document parses back to exactly the same numbers
    let again = parse_fit(&out).unwrap();
    assert_eq!(parsed, again);
    // and the estimates are sane for this sample size
    assert!(parsed.theta > 0.5 && parsed.theta < 8.0);
    assert!(parsed.loglik.is_finite());
    std::fs::remove_file(path).ok();
}

#[test]
fn fit_rejects_out_of_range_data() {
    let path = temp_csv("bad.csv", "y\n0.5\n1.5\n0.2\n0.3\n0.4\n");
    let out = Command::new(bin()).args(["fit", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("(0, 1)"), "unexpected message: {err}");
    std::fs::remove_file(path).ok();
}

#[test]
fn regress_runs_on_simulated_file() {
    // simulate a small θ-link dataset, write it as CSV, fit via the CLI
    let mut rng = RngState::new(7);
    let mut contents = String::from("y,x1\n");
    for i in 0..200 {
        let x1 = (i as f64 / 200.0) * 2.0 - 1.0;
        let eta = 1.0 - 0.8 * x1;
        let th = 1.0 / (1.0 + (-eta as f64).exp());
        let params = GllParams::new(th, 0.5, 1.0).unwrap();
        let y = sample_gll(&params, 1, &mut rng).unwrap()[0];
        contents.push_str(&format!("{y},{x1}\n"));
    }
    let path = temp_csv("regress.csv", &contents);
    let out = run_ok(&[
        "regress",
        path.to_str().unwrap(),
        "--model",
        "theta",
        "--response",
        "y",
        "--covariates",
        "x1",
    ]);
    assert!(out.contains("beta[intercept]"));
    assert!(out.contains("beta[x1]"));
    assert!(out.contains("loglik"));
    // complement run also works and differs
    let out2 = run_ok(&[
        "regress",
        path.to_str().unwrap(),
        "--model",
        "theta",
        "--response",
        "y",
        "--covariates",
        "x1",
        "--complement",
    ]);
    assert_ne!(out, out2);
    std::fs::remove_file(path).ok();
}

#[test]
fn premium_single_cells() {
    let out = run_ok(&["premium", "--risk", "exponential:rate=0.5", "--ph", "0.4"]);
    assert_eq!(out, "premium,value\nph[n=0.4],5.000\n");
    let out = run_ok(&[
        "premium", "--risk", "weibull:shape=1.5,scale=0.5", "--theta", "0.7", "--lambda", "1.5",
        "--p", "2",
    ]);
    assert!(out.contains("1.482"), "{out}");
    // exit 1 when nothing is requested
    let out = Command::new(bin())
        .args(["premium", "--risk", "exponential:rate=0.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn grid_emits_plot_ready_values() {
    let out = run_ok(&["grid", "--theta", "2", "--lambda", "1", "--p", "1", "--what", "hazard", "-n", "16"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "x,hazard");
    assert_eq!(lines.len(), 17);
    for line in &lines[1..] {
        let (x, v) = line.split_once(',').unwrap();
        let x: f64 = x.parse().unwrap();
        let v: f64 = v.parse().unwrap();
        assert!(x > 0.0 && x < 1.0 && v >= 0.0);
    }
}

#[test]
fn check_suite_passes() {
    let out = run_ok(&["check", "--grid-size", "512"]);
    assert!(out.lines().count() > 10);
    assert!(out.lines().all(|l| l.starts_with("PASS") || l.starts_with("N/A")), "{out}");
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("gll-out-{}.csv", std::process::id()));
    run_ok(&[
        "eval", "--theta", "1", "--lambda", "0", "--p", "0", "--x", "0.5", "--what", "pdf",
        "--out", path.to_str().unwrap(),
    ]);
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("x,pdf"));
    std::fs::remove_file(path).ok();
}
