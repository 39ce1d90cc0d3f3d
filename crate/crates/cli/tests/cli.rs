use std::process::{Command, Output};

use serde_json::Value;

fn mcf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcf"))
        .args(args)
        .env_remove("MCF_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// CSV rows after the `#` tag line and the header.
fn rows(out: &Output) -> Vec<Vec<String>> {
    let text = stdout(out);
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()).collect()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

const GOLDEN: &str = "surd:(1+1*sqrt5)/2";

#[test]
fn golden_spectra() {
    let out = mcf(&["spectra", "--alpha", GOLDEN]);
    assert!(out.status.success());
    let rows = rows(&out);
    let get = |q: &str| rows.iter().find(|r| r[0] == q).unwrap().clone();
    assert_eq!(get("lambda")[1], "(0+1*sqrt5)/5");
    assert_eq!(get("dirichlet")[1], "(5+1*sqrt5)/10");
    assert_eq!(get("m")[1], "(5+2*sqrt5)/20");
    assert!(get("m")[2].starts_with("0.4736067977499789696"));
    assert_eq!(get("m")[3], "true");
}

#[test]
fn finite_expansion_ends_above_one() {
    let out = mcf(&["expand", "--alpha", "rat:355/113"]);
    let row = &rows(&out)[0];
    assert_eq!(row[1], "cf:[3;7,16]");
    assert_eq!(row[5], "finite");
}

#[test]
fn verify_half_sqrt3() {
    let out = mcf(&["verify", "--alpha", "surd:(1+1*sqrt3)/2", "--horizon", "100", "--grid", "40"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = rows(&out);
    assert!(rows.iter().all(|r| r[4] == "pass"));
    assert!(rows.iter().any(|r| r[0] == "lemma3.m1=G" && r[1] == "surd:(1+1*sqrt3)/2" && r[2] != "0"));
}

#[test]
fn module_errors_have_their_own_codes() {
    let bad_literal = mcf(&["expand", "--alpha", "rat:1/0"]);
    assert_eq!(bad_literal.status.code(), Some(10));
    assert!(String::from_utf8_lossy(&bad_literal.stderr).contains("[exact-numbers]"));

    let rational_chain = mcf(&["mu", "--alpha", "rat:1/3", "--t-min", "1", "--t-max", "5"]);
    assert_eq!(rational_chain.status.code(), Some(12));
    assert!(String::from_utf8_lossy(&rational_chain.stderr).contains("[legendre-chain]"));

    let flat = mcf(&["spectra", "--alpha-minus", "arith:2,0"]);
    assert_eq!(flat.status.code(), Some(14));

    let same = mcf(&["compare", "--alpha", GOLDEN, "--beta", "surd:(3+1*sqrt5)/2", "--t-min", "1", "--t-max", "100"]);
    assert_eq!(same.status.code(), Some(15));
}

#[test]
fn usage_errors() {
    assert_eq!(mcf(&["--horizon", "5", "expand", "--alpha", "rat:1/2"]).status.code(), Some(2));
    assert_eq!(mcf(&["--precision-bits", "32", "expand", "--alpha", "rat:1/2"]).status.code(), Some(2));
    assert_eq!(
        mcf(&["--refinement-cap-bits", "100", "expand", "--alpha", "rat:1/2"]).status.code(),
        Some(2)
    );
    assert_eq!(mcf(&["spectra"]).status.code(), Some(2));
}

#[test]
fn help_documents_exit_codes() {
    let help = stdout(&mcf(&["--help"]));
    for code in ["10", "11", "12", "13", "14", "15", "20"] {
        assert!(help.contains(&format!("  {code}  ")), "exit code {code} missing");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "compare", "--alpha", GOLDEN, "--beta", "surd:(0+1*sqrt2)/1",
                "--t-min", "10", "--t-max", "1e5", "--breakpoints", "-"];
    let a = mcf(&args);
    let b = mcf(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_carries_schema_and_precision() {
    let out = mcf(&["--format", "json", "--precision-bits", "128", "spectra", "--alpha", "cf:[0;(2)]"]);
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["precision_bits"], 128);
    assert_eq!(v["m"]["exact"], "(2+1*sqrt2)/8");
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_mcf"))
        .args(["expand", "--alpha", "rat:1/2"])
        .env("MCF_PRECISION_BITS", "512")
        .output()
        .unwrap();
    assert!(stdout(&out).starts_with("# mcf expand schema=1 decimal_digits=30 precision_bits=512"));
}

#[test]
fn prefix_spectra_flag_missing_guarantee() {
    let out = mcf(&["--format", "json", "spectra", "--alpha-minus", "geom:2,2", "--terms", "40"]);
    let v = json(&out);
    assert_eq!(v["exact"], false);
    assert_eq!(v["convergence_guaranteed"], false);
    assert!(v["running"]["lambda"].as_array().unwrap().len() > 10);
}

#[test]
fn sample_lists_every_word() {
    let out = mcf(&["sample", "--max-period", "2", "--max-quotient", "2", "--word", "cf:[0;(1,1,2)]"]);
    let rows = rows(&out);
    let words: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert!(words.contains(&"cf:[0;(1)]"));
    assert!(words.contains(&"cf:[0;(1,2)]"));
    assert!(words.contains(&"cf:[0;(1,1,2)]"));
    let third = rows.iter().find(|r| r[0] == "cf:[0;(1,2)]").unwrap();
    assert_eq!(third[1], "(0+1*sqrt3)/4");
}

#[test]
fn mu_rows_include_peaks() {
    let out = mcf(&["mu", "--alpha", "surd:(0+1*sqrt2)/1", "--t-min", "1", "--t-max", "100", "--samples", "5"]);
    let rows = rows(&out);
    assert_eq!(rows.iter().filter(|r| r[0] == "sample").count(), 5);
    let peaks: Vec<f64> = rows.iter().filter(|r| r[0] == "peak").map(|r| r[3].parse().unwrap()).collect();
    assert!(peaks.len() >= 4);
    // the peaks approach 1/4 + 1/(4√2)
    let limit = 0.25 + 0.25 / 2f64.sqrt();
    assert!((peaks.last().unwrap() - limit).abs() < 1e-3);
}

#[test]
fn breakpoints_to_file() {
    let path = std::env::temp_dir().join(format!("mcf-breakpoints-{}.csv", std::process::id()));
    let out = mcf(&["compare", "--alpha", GOLDEN, "--beta", "surd:(1+1*sqrt3)/2", "--t-min", "10",
                    "--t-max", "1e4", "--breakpoints", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("# mcf compare-breakpoints"));
    assert!(text.lines().nth(1).unwrap() == "t,mu_alpha,mu_beta,sign");
    assert!(text.lines().count() > 5);
}
