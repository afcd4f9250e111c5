use rug::Float;
use std::collections::HashSet;
use stieltjes_core::harness::compute::{compute, ComputeParams, IndexRange, Target};
use stieltjes_core::harness::*;
use stieltjes_core::{NumError, SeriesValue};

fn sv(x: f64, err: f64) -> SeriesValue {
    let mut v = SeriesValue::exact(Float::with_val(160, x));
    v.error_bound = err;
    v
}

#[test]
fn registry_shape() {
    let r = registry();
    assert!(r.len() >= 60, "{} records", r.len());
    let ids: HashSet<_> = r.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids.len(), r.len(), "duplicate ids");
    assert!(r.iter().all(|c| !c.equation_refs.is_empty()));
    let mut required: Vec<String> = (1..=5).map(|j| format!("prop1a-j{j}")).collect();
    required.extend((2..=15).map(|n| format!("prop1c-n{n}")));
    required.extend((1..=3).map(|j| format!("prop3-j{j}")));
    for id in [
        "eq10a",
        "eq10b-a1",
        "eq10b-a2",
        "eq42",
        "eq44a",
        "eq44b",
        "lemma4-recursion",
        "eta-eta0",
        "prop6-c1",
        "s2-decomposition",
    ] {
        required.push(id.into());
    }
    for id in &required {
        assert!(ids.contains(id.as_str()), "missing {id}");
    }
    for prefix in ["prop1b-", "logsum-", "corollary1-", "prop2a-", "prop2b-", "prop2c-", "prop4-", "prop5-"] {
        assert!(ids.iter().any(|i| i.starts_with(prefix)), "no {prefix} records");
    }
    assert_eq!(ids.iter().filter(|i| i.starts_with("logsum-")).count(), 14);
    assert_eq!(ids.iter().filter(|i| i.starts_with("prop5-")).count(), 12);
}

#[test]
fn selection_by_glob() {
    let r = registry();
    let s = select(&r, "prop2*").unwrap();
    assert_eq!(s.len(), 15);
    assert!(s.iter().all(|c| c.id.starts_with("prop2")));
    assert!(select(&r, "nonexistent-id").is_err());
    assert!(select(&r, "[").is_err());
}

#[test]
fn verdict_rules() {
    let cfg = RunConfig::default();
    let within = IdentityCheck::new("t", &["1"], "l", "r", Tolerance::Anchor(1e-3), |_| Ok(Evaluation::pair(sv(1.0, 0.0), sv(1.0005, 0.0))));
    assert_eq!(within.run(&cfg).verdict, Verdict::Pass);
    let off = IdentityCheck::new("t", &["1"], "l", "r", Tolerance::Anchor(1e-3), |_| Ok(Evaluation::pair(sv(1.0, 0.0), sv(1.01, 0.0))));
    assert_eq!(off.run(&cfg).verdict, Verdict::Fail);
    // a heuristic bound larger than the tolerance makes a miss inconclusive
    let vague = IdentityCheck::new("t", &["1"], "l", "r", Tolerance::Anchor(1e-3), |_| {
        let mut l = sv(1.0, 0.1);
        l.heuristic = true;
        Ok(Evaluation::pair(l, sv(1.01, 0.0)))
    });
    assert_eq!(vague.run(&cfg).verdict, Verdict::Inconclusive);
    // cross-checks scale with the bounds
    let cross = IdentityCheck::new("t", &["1"], "l", "r", Tolerance::CrossCheck, |_| Ok(Evaluation::pair(sv(1.0, 1e-6), sv(1.0 + 7e-6, 1e-6))));
    let rec = cross.run(&cfg);
    assert_eq!(rec.verdict, Verdict::Pass);
    assert_eq!(rec.tolerance, "8.000e-6");
    let broken = IdentityCheck::new("t", &["1"], "l", "r", Tolerance::CrossCheck, |_| Err(NumError::Domain("x".into())));
    let rec = broken.run(&cfg);
    assert_eq!(rec.verdict, Verdict::Fail);
    assert!(rec.note.unwrap().contains("domain"));
}

#[test]
fn tolerance_overrides() {
    let mut cfg = RunConfig::default();
    cfg.tolerances.insert("t*".into(), 0.1);
    let off = IdentityCheck::new("t1", &["1"], "l", "r", Tolerance::Anchor(1e-3), |_| Ok(Evaluation::pair(sv(1.0, 0.0), sv(1.01, 0.0))));
    assert_eq!(off.run(&cfg).verdict, Verdict::Pass);
}

#[test]
fn config_round_trip() {
    let mut cfg = RunConfig::default();
    cfg.precision_bits = 192;
    cfg.filter = "prop5-*".into();
    cfg.format = OutputFormat::Csv;
    cfg.output = Some("out/report.csv".into());
    cfg.tolerances.insert("eq44a".into(), 1e-10);
    cfg.max_terms = Some(4096);
    let s = serde_json::to_string(&cfg).unwrap();
    let back: RunConfig = serde_json::from_str(&s).unwrap();
    assert_eq!(back, cfg);
    let partial: RunConfig = serde_json::from_str(r#"{"precision_bits": 96}"#).unwrap();
    assert_eq!(partial.precision_bits, 96);
    assert_eq!(partial.filter, "*");
    assert!(serde_json::from_str::<RunConfig>(r#"{"precison_bits": 96}"#).is_err());
}

#[test]
fn report_is_deterministic_and_ordered() {
    let cfg = RunConfig {
        filter: "lemma4*".into(),
        ..RunConfig::default()
    };
    let a = verify(&cfg, None).unwrap();
    let b = verify(&cfg, None).unwrap();
    assert_eq!(a.render(OutputFormat::Json), b.render(OutputFormat::Json));
    let ids: Vec<_> = a.records.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["lemma4-recursion", "lemma4-recursion-t0.75", "lemma4-hypergeometric"]);
    let j = a.to_json();
    assert_eq!(j["schema"], 1);
    assert!(j.get("timestamp").is_none());
    assert!(verify(&cfg, Some(7)).unwrap().to_json()["timestamp"] == 7);
    let csv = a.to_csv();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("id,equation_refs,lhs_route"));
    assert!(lines.next().unwrap().starts_with("lemma4-recursion,90;87;88,\"m_j(j=6, k=3, a=1) closed form\""));
}

#[test]
fn index_ranges() {
    assert_eq!("0..5".parse::<IndexRange>().unwrap(), IndexRange::new(0, 5));
    assert_eq!("2..=4".parse::<IndexRange>().unwrap(), IndexRange::new(2, 4));
    assert_eq!("7".parse::<IndexRange>().unwrap(), IndexRange::new(7, 7));
    assert!("5..1".parse::<IndexRange>().is_err());
    assert!("a..b".parse::<IndexRange>().is_err());
}

#[test]
fn compute_tables() {
    let ctx = RunConfig::default().context();
    let p = ComputeParams {
        j: Some(IndexRange::new(0, 2)),
        ..Default::default()
    };
    let t = compute(Target::Gamma, &p, &ctx).unwrap();
    assert_eq!(t.rows.len(), 3);
    assert!(t.complete());
    let j = t.to_json();
    assert!(j["entries"][0]["value"].as_str().unwrap().starts_with("0.5772156649015328606"));
    let p = ComputeParams {
        n: Some(IndexRange::new(1, 3)),
        ..Default::default()
    };
    let t = compute(Target::SGamma, &p, &ctx).unwrap();
    let csv = t.to_csv();
    assert!(csv.lines().nth(1).unwrap().starts_with("1,-0.5772156649015328606"));
    assert!(csv.lines().nth(3).unwrap().starts_with("3,-1.94524934955919259715"));
    let p = ComputeParams {
        k: Some(IndexRange::new(0, 1)),
        ..Default::default()
    };
    let t = compute(Target::Eta, &p, &ctx).unwrap();
    assert!(t.to_json()["entries"][1]["value"].as_str().unwrap().starts_with("0.18754623284036522459"));
    // usage errors
    let bad_a = ComputeParams {
        a: Some("-1".into()),
        ..Default::default()
    };
    assert!(compute(Target::GammaA, &bad_a, &ctx).is_err());
    assert!(compute(Target::GammaA, &ComputeParams::default(), &ctx).is_err());
    assert!(compute(Target::LogSum, &p, &ctx).is_err());
}

#[test]
fn sgamma_tabulation_frozen() {
    let ctx = RunConfig::default().context();
    let p = ComputeParams {
        n: Some(IndexRange::new(30, 50)),
        ..Default::default()
    };
    let j = compute(Target::SGamma, &p, &ctx).unwrap().to_json();
    let rows = j["entries"].as_array().unwrap();
    assert_eq!(rows.len(), 21);
    assert!(rows[0]["value"].as_str().unwrap().starts_with("-29.638703661155729275497908996617052"));
    assert!(rows[20]["value"].as_str().unwrap().starts_with("-48.048605285582807463314965736166572"));
    assert!(rows[20]["shifted"].as_str().unwrap().starts_with("1.9513947144171925366850342638"));
}

#[test]
fn accuracy_failure_keeps_partial_rows() {
    let cfg = RunConfig {
        max_terms: Some(64),
        ..RunConfig::default()
    };
    let p = ComputeParams {
        j: Some(IndexRange::new(0, 40)),
        ..Default::default()
    };
    let t = compute(Target::Gamma, &p, &cfg.context()).unwrap();
    assert!(!t.complete());
    assert!(!t.rows.is_empty() && t.rows.len() < 41);
    assert_eq!(t.to_json()["complete"], false);
    assert!(t.to_csv().lines().last().unwrap().starts_with("# incomplete:"));
}
