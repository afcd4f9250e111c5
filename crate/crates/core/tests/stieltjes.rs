use rug::Float;
use stieltjes_core::stieltjes::*;
use stieltjes_core::PrecisionContext;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(128)
}

fn f(x: f64) -> Float {
    Float::with_val(160, x)
}

fn close(v: &Float, want: &str, tol: f64) -> bool {
    let w = Float::with_val(160, Float::parse(want).unwrap());
    let d = Float::with_val(160, v - &w).abs().to_f64();
    if d > tol {
        eprintln!("got {v}, want {want}, diff {d:e}");
    }
    d <= tol
}

const GAMMA: [&str; 6] = [
    "0.5772156649015328606065120900824024310422",
    "-0.07281584548367672486058637587490131913774",
    "-0.009690363192872318484530386035212529359066",
    "0.002053834420303345866160046542753384285716",
    "0.002325370065467300057468170177526068000904",
    "0.0007933238173010627017533348774444448307315",
];

#[test]
fn limit_oracle_matches_frozen_constants() {
    for (j, want) in GAMMA.iter().enumerate() {
        let v = gamma_limit_oracle(j as u32, &f(1.0), &ctx()).unwrap();
        assert!(close(&v.value, want, 1e-34), "j = {j}");
    }
}

#[test]
fn limit_oracle_at_zero_is_minus_digamma() {
    for a in [0.25, 0.5, 2.0, 7.5] {
        let v = gamma_limit_oracle(0, &f(a), &ctx()).unwrap();
        let w = gamma0_closed(&f(a), &ctx()).unwrap();
        assert!((v.value - w.value).abs().to_f64() < 1e-34, "a = {a}");
    }
}

#[test]
fn zeta_derivative_series_matches_oracle() {
    for j in 1..=3u32 {
        let v = gamma_series(j, &ctx()).unwrap();
        assert!(close(&v.value, GAMMA[j as usize], 1e-30), "j = {j}");
    }
}

#[test]
fn m_sum_restates_the_series() {
    // Σ_m (−1)^m (−1)^j ζ^{(j)}(m)/m = γ_j + j c_j + j!(1 − 2^{−j}) ζ(j+1)
    let j = 2;
    let s = alternating_zeta_derivative_sum(j, &f(1.0), &ctx()).unwrap();
    let c = tail_constant(j, &f(1.0), &ctx()).unwrap();
    let g = Float::with_val(160, Float::parse(GAMMA[2]).unwrap());
    let z3 = Float::with_val(160, Float::zeta_u(3));
    let rhs = g + c.value.value * 2u32 + z3 * 2u32 * 0.75f64;
    assert!((s.value - rhs).abs().to_f64() < 1e-30);
}

#[test]
fn hurwitz_series_matches_oracle() {
    let cases = [
        (1, 0.5, "-1.353459680804941517708687169178064403591"),
        (2, 0.5, "0.9688644752202907114217110623237806541826"),
        (3, 0.5, "-0.667424273711380739555989196796920837465"),
        (1, 2.0, GAMMA[1]),
        (2, 2.0, GAMMA[2]),
    ];
    for (j, a, want) in cases {
        let v = gamma_series_general(j, &f(a), &ctx()).unwrap();
        assert!(close(&v.value, want, 1e-28), "j = {j}, a = {a}");
    }
}

#[test]
fn hurwitz_series_reduces_at_one() {
    for j in 1..=3 {
        let a = gamma_series_general(j, &f(1.0), &ctx()).unwrap();
        let b = gamma_series(j, &ctx()).unwrap();
        assert!((a.value - b.value).abs().to_f64() < 1e-20, "j = {j}");
    }
}

#[test]
fn tail_constants_frozen_and_negative() {
    let want = [
        "-0.333872441789644941",
        "-0.432975343761043801",
        "-0.931356933380389459",
        "-2.89042088625168993",
    ];
    for (i, w) in want.iter().enumerate() {
        let c = tail_constant(i as u32 + 1, &f(1.0), &ctx()).unwrap();
        assert!(close(&c.value.value, w, 1e-17));
    }
    for j in 1..=8 {
        assert!(tail_constant(j, &f(1.0), &ctx()).unwrap().value.value < 0);
    }
}

#[test]
fn tail_constant_routes_agree() {
    let cases = [
        (1, 2.0, "-0.2000461222482786375476728"),
        (2, 0.5, "-0.4181081396990893813134049"),
        (3, 2.0, "-0.8985582925906160635414561"),
        (2, 1.0, "-0.432975343761043801"),
    ];
    for (j, a, want) in cases {
        let q = tail_constant_route(j, &f(a), TailRoute::FloorSplit, &ctx()).unwrap();
        let s = tail_constant_route(j, &f(a), TailRoute::SummationForm, &ctx()).unwrap();
        assert!(close(&q.value.value, want, 1e-17), "quadrature j = {j}, a = {a}");
        let d = (q.value.value - s.value.value).abs().to_f64();
        assert!(d < 1e-30, "routes differ by {d:e} at j = {j}, a = {a}");
    }
}

#[test]
fn weighted_c_sum_three_routes() {
    let w = weighted_tail_sum_c(&ctx()).unwrap();
    let want = "-0.128547474175520988";
    assert!(close(&w.by_log_sum.value, want, 1e-17));
    assert!((w.by_log_sum.value.clone() - &w.by_euler_maclaurin.value).abs().to_f64() < 1e-30);
    assert!((w.by_log_sum.value.clone() - &w.by_tail_constants.value).abs().to_f64() < 1e-25);
    assert!(close(&w.p1_part.value, "0.0217665514211693721", 1e-17));
}

#[test]
fn weighted_d_sum_routes() {
    for (a, want) in [
        (2.0, "-0.04359795577782225237435198"),
        (0.5, "-0.3168495933536827160888461"),
        (1.0, "-0.128547474175520988"),
    ] {
        let w = weighted_tail_sum_d(&f(a), &ctx()).unwrap();
        assert!(close(&w.by_g_sum.value, want, 1e-17), "a = {a}");
        assert!((w.by_g_sum.value.clone() - &w.by_euler_maclaurin.value).abs().to_f64() < 1e-30);
        assert!((w.by_g_sum.value.clone() - &w.by_generating_integral.value).abs().to_f64() < 1e-30);
    }
}

#[test]
fn table_serializes_in_order() {
    let t = StieltjesTable::build(&f(1.0), 0..=3, GammaRoute::LimitOracle, &ctx()).unwrap();
    let js: Vec<u32> = t.entries.iter().map(|e| e.j).collect();
    assert_eq!(js, vec![0, 1, 2, 3]);
    let v = t.to_json(128);
    assert_eq!(v["entries"][0]["route"], "limit-oracle");
    assert!(v["entries"][0]["value"].as_str().unwrap().starts_with("0.57721566490153286060651209008"));
}

#[test]
fn domain_errors() {
    assert!(gamma_limit_oracle(1, &f(0.0), &ctx()).is_err());
    assert!(gamma_series(0, &ctx()).is_err());
    assert!(tail_constant(0, &f(1.0), &ctx()).is_err());
}
