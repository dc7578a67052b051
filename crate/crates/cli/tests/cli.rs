use std::process::{Command, Output};

use lumpcheck::commands::{resolve_tau, TauArgs};
use lumpcheck::report::RunReport;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lumpcheck")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> RunReport {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad report ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("lumpcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_lump_is_exact() {
    let out = run(&["verify", "--tau", "lump2", "--form", "standard"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.command, "verify");
    assert!(r.exact);
    assert_eq!(r.results["is_solution"], true);
    assert_eq!(r.inputs["tau"], "lump2");
}

#[test]
fn verify_failure_exits_one_and_lists_terms() {
    let out = run(&["verify", "--tau", "lump2", "--form", "yang"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r.results["is_solution"], false);
    assert!(r.results["residual_term_count"].as_u64().unwrap() > 0);
    assert!(!r.results["residual_terms"].as_array().unwrap().is_empty());
}

#[test]
fn verify_accepts_custom_forms_and_files() {
    let path = tmp("lump.json");
    std::fs::write(&path, r#"{"basis":"xy","terms":[[2,0,"1"],[0,2,"1"],[0,0,"3"]]}"#).unwrap();
    let p = path.to_str().unwrap();
    let out = run(&["verify", "--tau", p, "--form", "1:4:0,-1:2:0,-1:0:2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(report(&out).results["form"], "custom");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "--tau", "no-such-tau"],
        vec!["verify", "--tau", "yang6", "--param", "a=1"],
        vec!["verify", "--tau", "yang6", "--param", "a=x", "--param", "b=0"],
        vec!["verify", "--tau", "lump2", "--form", "nonsense"],
        vec!["certify", "--n", "14"],
        vec!["scan-jn", "--max-n", "5", "--routes", "J,bogus"],
        vec!["lax-probe", "--point", "k3"],
        vec!["energy", "--tau", "yang6", "--param", "a=0", "--param", "b=0"],
        vec!["bogus-subcommand"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn malformed_polynomial_file_is_a_usage_error() {
    let path = tmp("broken.json");
    std::fs::write(&path, r#"{"basis":"xy","terms":[[1,0,"1/0"]]}"#).unwrap();
    assert_eq!(run(&["verify", "--tau", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn scan_writes_csv_with_triangular_zeros() {
    let path = tmp("scan.csv");
    let out = run(&["scan-jn", "--max-n", "10", "--routes", "J", "--jobs", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.results["zeros_J"], serde_json::json!([1, 3, 6, 10]));
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let headers: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(&headers[..6], ["n", "J_n", "sigma_obstruction", "is_zero", "is_triangular", "gamma_all_nonzero"]);
    let zeros: Vec<u64> =
        rdr.records().map(|r| r.unwrap()).filter(|r| &r[3] == "true").map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(zeros, vec![1, 3, 6, 10]);
}

#[test]
fn scan_without_out_prints_csv() {
    let out = run(&["scan-jn", "--max-n", "4", "--routes", "J,sigma,gamma"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,J_n,"));
    assert!(text.contains("\n2,-384,"));
    assert!(text.contains("\n3,0,0,true,true,true,"));
}

#[test]
fn unordered_counting_breaks_the_law() {
    let out = run(&[
        "scan-jn",
        "--max-n",
        "12",
        "--routes",
        "J",
        "--counting",
        "unordered",
        "--out",
        tmp("u.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn certify_fifteen() {
    let out = run(&["certify", "--n", "15"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.results["gammas"][6]["gamma"], "-5460/17");
    assert_eq!(r.results["all_nonzero"], true);
}

#[test]
fn cm_check_passes_for_the_lump() {
    let out = run(&["cm-check", "--tau", "lump2", "--y", "0,0.5,1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(!r.exact);
    assert_eq!(r.results["rows"].as_array().unwrap().len(), 4);
    assert_eq!(r.results["rows"][0]["n_poles"], 2);
}

#[test]
fn cm_check_without_rescaling_fails_the_locus() {
    // The unscaled lump has its poles at ±i√(y²+3), off the locus of the rescaled equation.
    let out = run(&["cm-check", "--tau", "lump2", "--y", "1", "--no-rescale"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lax_table_reports_the_mismatch() {
    let out = run(&["lax-table"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r.results["matching"], 10);
    assert_eq!(r.results["singular_points"].as_array().unwrap().len(), 4);
    assert_eq!(r.results["singular_points"][0]["k_over_i"], "√6/3");
}

#[test]
fn lax_probe_converges() {
    let out = run(&["lax-probe", "--point", "k2-", "--x", "0.5", "--eps", "1e-2,1e-3,1e-4"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = report(&out).results["rows"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 3);
    let s1 = rows[1]["step"].as_f64().unwrap();
    let s2 = rows[2]["step"].as_f64().unwrap();
    assert!(s2 < s1);
}

#[test]
fn energy_and_degree() {
    let out = run(&["energy", "--tau", "lump2", "--R", "20", "--h", "0.1"]);
    assert_eq!(out.status.code(), Some(0));
    let e = report(&out).results["energy"]["value"].as_f64().unwrap();
    assert!(e > 0.0);

    let out = run(&["degree", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.results["m"], "-18");
    assert_eq!(r.results["balance"]["balanced"], true);
}

#[test]
fn reports_round_trip_and_are_reproducible() {
    let path = tmp("report.json");
    let a = run(&["certify", "--n", "10", "--report", path.to_str().unwrap()]);
    let b = run(&["certify", "--n", "10"]);
    let (ra, rb) = (report(&a), report(&b));
    let from_file: RunReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(from_file, ra);
    let back: RunReport = serde_json::from_value(serde_json::to_value(&ra).unwrap()).unwrap();
    assert_eq!(back, ra);
    assert_eq!(ra.results, rb.results);
    assert_eq!(ra.inputs, rb.inputs);
    // exact rationals are strings, never floats
    assert!(ra.results["gammas"].as_array().unwrap().iter().all(|g| g["gamma"].is_string()));
}

#[test]
fn resolve_tau_prefers_the_catalog() {
    let args = TauArgs { tau: "pelin6".into(), params: vec![], scale_c: "2".into() };
    let rec = resolve_tau(&args).unwrap();
    assert_eq!(rec.id, "pelin6");
    let missing = TauArgs { tau: "/nonexistent/tau.json".into(), params: vec![], scale_c: "2".into() };
    assert!(resolve_tau(&missing).is_err());
    let _: Value = serde_json::to_value(&args).unwrap();
}
