use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_stieltjes"));
    c.env_remove("STIELTJES_PREC");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn num(v: &serde_json::Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("stieltjes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

#[test]
fn gamma_table() {
    let o = run(&["compute", "gamma", "--j", "0..5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    let e = v["entries"].as_array().unwrap();
    assert_eq!(e.len(), 6);
    assert_eq!(e[0]["j"], 0);
    assert!((num(&e[0]["value"]) - 0.5772156649).abs() < 1e-10);
    assert!(e[0]["value"].as_str().unwrap().starts_with("0.57721566490153286060651209008"));
}

#[test]
fn tail_constants_near_quoted_values() {
    let o = run(&["compute", "c", "--j", "1..3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let e = v["entries"].as_array().unwrap();
    for (row, (want, tol)) in e.iter().zip([(-0.334, 2e-3), (-0.433, 2e-3), (-0.93, 2e-2)]) {
        assert!((num(&row["value"]) - want).abs() < tol, "{row}");
    }
}

#[test]
fn sgamma_single_term() {
    let o = run(&["compute", "sgamma", "--n", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8(o.stdout).unwrap();
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("n,value,error,shifted"));
    assert!(lines.next().unwrap().starts_with("1,-0.57721566490153286060651209008"));
}

#[test]
fn verify_quoted_log_sum() {
    let o = run(&["verify", "eq44a", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let r = &v["records"][0];
    assert_eq!(r["verdict"], "pass");
    assert!(num(&r["discrepancy"]) <= 1e-10);
    assert!(v.get("timestamp").is_none());
}

#[test]
fn verify_glob_group() {
    let o = run(&["verify", "prop2*", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 15);
    for a in ["0.5", "1", "2"] {
        assert!(recs.iter().any(|r| r["id"] == format!("prop2b-a{a}")));
    }
    assert!(recs.iter().all(|r| r["verdict"] == "pass"));
}

#[test]
fn unknown_id_is_a_usage_error() {
    let o = run(&["verify", "nonexistent-id"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        &["compute", "gamma", "--j", "5..1"][..],
        &["compute", "zeta"],
        &["compute", "gamma-a", "--j", "0..1"],
        &["compute", "gamma-a", "--a", "-2"],
        &["compute", "c", "--j", "0..2"],
        &["compute", "sgamma", "--k", "1"],
        &["verify", "--prec", "12"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = run(&["verify", "lemma4*", "--no-timestamp"]);
    let b = run(&["verify", "lemma4*", "--no-timestamp"]);
    assert_eq!(a.stdout, b.stdout);
    let t = json(&run(&["verify", "lemma4*"]));
    assert!(t["timestamp"].as_u64().is_some());
}

#[test]
fn csv_report_quotes_fields() {
    let o = run(&["verify", "lemma4-recursion", "--format", "csv", "--no-timestamp"]);
    let s = String::from_utf8(o.stdout).unwrap();
    let row = s.lines().nth(1).unwrap();
    assert!(row.starts_with("lemma4-recursion,90;87;88,\"m_j(j=6, k=3, a=1) closed form\""), "{row}");
}

#[test]
fn precision_precedence() {
    let cfg = scratch("prec.toml");
    std::fs::write(&cfg, "precision_bits = 96\n").unwrap();
    let c = cfg.to_str().unwrap();
    let bits = |o: Output| json(&o)["precision_bits"].as_u64().unwrap();
    assert_eq!(bits(run(&["--config", c, "compute", "gamma", "--j", "0"])), 96);
    let env = bin().args(["--config", c, "compute", "gamma", "--j", "0"]).env("STIELTJES_PREC", "112").output().unwrap();
    assert_eq!(bits(env), 112);
    let flag = bin()
        .args(["--config", c, "compute", "gamma", "--j", "0", "--prec", "160"])
        .env("STIELTJES_PREC", "112")
        .output()
        .unwrap();
    assert_eq!(bits(flag), 160);
    assert_eq!(bits(run(&["compute", "gamma", "--j", "0"])), 128);
}

#[test]
fn bad_config_is_rejected() {
    let cfg = scratch("bad.toml");
    std::fs::write(&cfg, "precison_bits = 96\n").unwrap();
    assert_eq!(run(&["--config", cfg.to_str().unwrap(), "compute", "gamma"]).status.code(), Some(2));
}

#[test]
fn accuracy_failure_exits_three_with_partial_table() {
    let cfg = scratch("short.toml");
    std::fs::write(&cfg, "max_terms = 64\n").unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "compute", "gamma", "--j", "0..40"]);
    assert_eq!(o.status.code(), Some(3));
    let v = json(&o);
    assert_eq!(v["complete"], false);
    assert!(v["error"].as_str().unwrap().contains("accuracy"));
    let n = v["entries"].as_array().unwrap().len();
    assert!(n > 0 && n < 41);
}

#[test]
fn output_file_and_logsum_rows() {
    let out = scratch("logsum.csv");
    let o = run(&["compute", "logsum", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let s = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<_> = s.lines().collect();
    assert_eq!(lines[0], "variant_id,value,error,terms,seconds");
    assert_eq!(lines.len(), 15);
    assert!(lines.iter().skip(1).all(|l| l.split(',').nth(1).unwrap().starts_with("1.257746886944369630")));
}

#[test]
fn list_prints_registry() {
    let o = run(&["list"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.lines().count() >= 60);
    assert!(s.lines().any(|l| l.starts_with("eq44a\t")));
}

#[test]
fn failing_identity_exits_one() {
    let cfg = scratch("tight.toml");
    std::fs::write(&cfg, "[tolerances]\n\"eq44a\" = 1e-15\n").unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "verify", "eq44a", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["records"][0]["verdict"], "fail");
    assert_eq!(v["summary"]["fail"], 1);
}
