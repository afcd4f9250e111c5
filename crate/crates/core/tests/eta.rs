use rug::Float;
use stieltjes_core::binomial::s_gamma;
use stieltjes_core::eta::*;
use stieltjes_core::sieve::VonMangoldtTable;
use stieltjes_core::stieltjes::{GammaRoute, StieltjesTable};
use stieltjes_core::PrecisionContext;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(128)
}

fn parse(s: &str) -> Float {
    Float::with_val(256, Float::parse(s).unwrap())
}

fn diff(a: &Float, b: &Float) -> f64 {
    Float::with_val(256, a - b).abs().to_f64()
}

const ETA: [&str; 12] = [
    "-0.5772156649015328606065120900824024310422",
    "0.1875462328403652245972033846054415883839",
    "-0.0516886320331928938020082230836041634454",
    "0.01475165882545374406458023681437551036264",
    "-0.00452447788849537874124611609916498275662",
    "0.001446795204525183140216980422296918529584",
    "-0.0004715440781854050503395203289026325266606",
    "0.0001551802941642302537479683082756147646769",
    "-0.00005134521211814414337677143584897446058394",
    "0.0000170413570471106410320277049383979261832",
    "-0.000005666050921040475372307519090024004092469",
    "0.000001885848611857727209764288178553822643752",
];

#[test]
fn quotient_matches_frozen_coefficients() {
    let t = EtaTable::build(11, &ctx()).unwrap();
    for (k, want) in ETA.iter().enumerate() {
        let v = t.require(k as u32).unwrap();
        assert!(diff(&v.value, &parse(want)) < 1e-36, "η_{k}");
    }
    let euler = Float::with_val(256, rug::float::Constant::Euler);
    assert!(diff(&t.require(0).unwrap().value, &(-euler)) < 1e-38);
}

#[test]
fn quotient_inverts_at_256_bits() {
    let c = PrecisionContext::new(256);
    let one = Float::with_val(288, 1);
    let table = StieltjesTable::build(&one, 0..=10, GammaRoute::LimitOracle, &c).unwrap();
    let gammas: Vec<_> = (0..=10).map(|i| table.require(i).unwrap().clone()).collect();
    let etas = eta_series_from_gammas(&gammas, c.work());
    assert!(laurent_inverse_residual(&etas, &gammas, c.work()) < 1e-30);
    let single = eta_from_gamma(4, &table, &c).unwrap();
    assert!(diff(&single.value, &etas[4].value) == 0.0);
}

#[test]
fn missing_gamma_is_a_dependency_error() {
    let one = Float::with_val(160, 1);
    let table = StieltjesTable::build(&one, 0..=2, GammaRoute::LimitOracle, &ctx()).unwrap();
    assert!(matches!(eta_from_gamma(3, &table, &ctx()), Err(stieltjes_core::NumError::Dependency(_))));
}

#[test]
fn limit_route_tracks_the_quotient() {
    let c = ctx();
    let sieve = VonMangoldtTable::new(100_000);
    let e0 = eta_limit_table(0, &sieve, &c).unwrap();
    assert!(diff(&e0.value, &parse(ETA[0])) < 2e-3);
    assert!(e0.heuristic);
    let e1 = eta_limit_table(1, &sieve, &c).unwrap();
    assert!(diff(&e1.value, &parse(ETA[1])) < 2e-2);
    assert!(e1.value > 0);
    assert!(eta_limit(0, 50, &c).is_err());
}

#[test]
fn first_contribution_values() {
    let c = ctx();
    let want = [
        "0.24194885147030577570579069374134815",
        "-0.39555799487721630952838291598531914",
        "0.45617670312708006039297792750161126",
    ];
    for (j, w) in want.iter().enumerate() {
        let v = prop6_c1(j as u32, &c).unwrap();
        assert!(diff(&v.value, &parse(w)) < 1e-33, "C₁ for j = {j}");
    }
}

#[test]
fn log_derivative_routes() {
    let c = ctx();
    let two = Float::with_val(160, 2);
    let d = zeta_log_derivative(0, &two, &c).unwrap();
    assert!(diff(&(d.value / 2u32), &parse("-0.284980496547266403199932180009865")) < 1e-33);
    let sieve = VonMangoldtTable::new(20_000);
    for (j, m) in [(0u32, 8u32), (1, 8), (2, 10)] {
        let s = Float::with_val(160, m);
        let a = zeta_log_derivative(j, &s, &c).unwrap();
        let b = zeta_log_derivative_dirichlet(j, &s, &sieve, 160);
        assert!(diff(&a.value, &b.value) <= b.error_bound, "j {j} m {m}");
    }
}

#[test]
fn decomposition_closes_with_cutoff() {
    let c = ctx();
    let p = prop6_decomposition(0, 100_000, &c).unwrap();
    assert!(p.residual() < 2e-3);
    assert!(diff(&p.eta_reference.value, &parse(ETA[0])) < 1e-36);
    // C₂ at a cutoff equals the limit-route estimate minus C₁ up to the
    // 1/k − ln(1 + 1/k) tail beyond N
    let sieve = VonMangoldtTable::new(100_000);
    let e = eta_limit_table(0, &sieve, &c).unwrap();
    assert!(diff(&p.total, &e.value) < 1e-4);
}

#[test]
fn binomial_sum_over_eta() {
    let c = ctx();
    let etas = EtaTable::build(5, &c).unwrap();
    let one = s_gamma(1, false, &c).unwrap();
    let r = s2_sum(1, &etas, &one, &c).unwrap();
    let euler = Float::with_val(256, rug::float::Constant::Euler);
    assert!(diff(&r.s2.value, &euler) < 1e-36);
    let five = s_gamma(5, false, &c).unwrap();
    let r = s2_sum(5, &etas, &five, &c).unwrap();
    let sum = Float::with_val(256, &r.s_gamma.value + &r.s_lambda.value);
    assert!(diff(&sum, &r.s2.value) < 1e-36);
    assert!(s2_sum(2, &etas, &one, &c).is_err());
    let limit_only = EtaTable::from_limit(4, 1000, &c).unwrap();
    assert!(s2_sum(5, &limit_only, &five, &c).is_err());
}

#[test]
fn table_json_shape() {
    let t = EtaTable::build(2, &ctx()).unwrap();
    let v = t.to_json(128);
    assert_eq!(v["entries"][1]["route"], "recurrence-from-gamma");
    assert!(v["entries"][0]["value"].as_str().unwrap().starts_with("-0.577215664901532860606512090082"));
}
