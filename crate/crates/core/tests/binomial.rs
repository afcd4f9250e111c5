use rug::Float;
use stieltjes_core::binomial::*;
use stieltjes_core::special::gamma::ln_gamma_f;
use stieltjes_core::special::laguerre::laguerre;
use stieltjes_core::PrecisionContext;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(128)
}

fn f(x: f64) -> Float {
    Float::with_val(192, x)
}

fn parse(s: &str) -> Float {
    Float::with_val(192, Float::parse(s).unwrap())
}

fn diff(a: &Float, b: &Float) -> f64 {
    Float::with_val(192, a - b).abs().to_f64()
}

const LOG_SUM: &str = "1.25774688694436963000989983049588";
const EULER: &str = "0.5772156649015328606065120900824024310422";
const GAMMA1: &str = "-0.07281584548367672486058637587490131913774";

const S_GAMMA: [(u32, &str); 5] = [
    (3, "-1.9452493495591925971590302048543"),
    (5, "-3.5641703251158783084963667472901"),
    (10, "-8.4185565943192145587351083298416"),
    (15, "-13.888463391372171313090904063239"),
    (2, "-1.2272471752867424460736105560397"),
];

#[test]
fn single_term_is_minus_euler() {
    let r = s_gamma(1, true, &ctx()).unwrap();
    let want = -parse(EULER);
    assert!(diff(&r.by_definition.value, &want) < 1e-35);
    assert!(diff(&r.by_integral.value, &want) < 1e-33);
    assert!(r.by_decomposition.is_none());
}

#[test]
fn two_terms_expand() {
    let r = s_gamma(2, false, &ctx()).unwrap();
    let want = parse(GAMMA1) - parse(EULER) * 2u32;
    assert!(diff(&r.by_definition.value, &want) < 1e-35);
    assert!(diff(&r.by_integral.value, &want) < 1e-30);
}

#[test]
fn definition_matches_frozen_values() {
    for (n, want) in S_GAMMA {
        let r = s_gamma(n, false, &ctx()).unwrap();
        assert!(diff(&r.by_definition.value, &parse(want)) < 1e-30, "n = {n}");
        assert!(diff(&r.by_integral.value, &parse(want)) < 1e-28, "n = {n}");
        assert!(diff(&r.shifted, &(parse(want) + n)) < 1e-30);
    }
}

#[test]
fn three_routes_agree() {
    for n in 2..=15 {
        let r = s_gamma(n, true, &ctx()).unwrap();
        let d = r.by_decomposition.as_ref().unwrap();
        let budget = r.by_definition.error_bound + r.by_integral.error_bound + d.error_bound;
        let gap = r.max_disagreement();
        assert!(gap <= budget.max(1e-25), "n = {n}: gap {gap:e}, budget {budget:e}");
    }
}

#[test]
fn jump_part_bookkeeping() {
    let prec = 192;
    for n in [1, 3, 6] {
        let k = 25;
        let mut want = Float::new(prec);
        for t in 1..=k {
            let tf = Float::with_val(prec, t);
            want -= laguerre(n - 1, 1, &Float::with_val(prec, tf.ln_ref())) / tf;
        }
        assert!(diff(&dp1_jump_part(n, k, prec), &want) < 1e-45);
    }
}

#[test]
fn affine_component_at_two() {
    let c = s_gamma_decomposition(2, &ctx()).unwrap();
    let l2 = Float::with_val(192, rug::float::Constant::Log2);
    let g = parse(EULER);
    // −(1 − ln 2) + 2(2 ln 2 − γ − 1)
    let want = Float::with_val(192, &l2 - 1u32) + (Float::with_val(192, &l2 * 2u32) - g - 1u32) * 2u32;
    assert!(diff(&c.affine.value, &want) < 1e-40);
}

#[test]
fn m_sum_frozen_and_shrinking() {
    let want = [
        (2, "-0.02956323049550394768441727"),
        (5, "0.00126486237182395558227984"),
        (10, "0.0001996998703071298454151901"),
        (15, "-0.0000500373779277797041054658"),
    ];
    for (n, w) in want {
        let v = s_gamma_m_sum(n, &ctx());
        assert!(diff(&v.value, &parse(w)) < 1e-26, "n = {n}");
    }
    // envelope: small for large n
    let big = s_gamma_m_sum(40, &ctx()).value.to_f64().abs();
    assert!(big < 1e-5, "{big:e}");
}

#[test]
fn laguerre_difference_routes() {
    for n in [2, 5, 9] {
        let q = laguerre_difference_integral(n, &ctx());
        let c = laguerre_difference_closed(n, 192);
        assert!(diff(&q.value, &c) < 1e-30, "n = {n}");
    }
}

#[test]
fn log_sum_variants_agree() {
    let c = parse(LOG_SUM);
    for id in LogSumVariantId::ALL {
        if id == LogSumVariantId::Eq42 {
            continue;
        }
        let v = logsum_variant(id, &ctx()).unwrap();
        let d = diff(&v.value.value, &c);
        assert!(d < 1e-25, "{id}: off by {d:e}");
    }
}

#[test]
fn abel_route_agrees() {
    let v = logsum_variant(LogSumVariantId::Eq42, &ctx()).unwrap();
    assert!(diff(&v.value.value, &parse(LOG_SUM)) < 1e-20);
}

#[test]
fn euler_maclaurin_variant_near_published_value() {
    let v = logsum_variant(LogSumVariantId::Eq43, &ctx()).unwrap();
    assert!((v.value.to_f64() - 1.25774688694).abs() < 1e-11);
    let w = logsum_variant(LogSumVariantId::Eq46aInt2, &ctx()).unwrap();
    assert!(diff(&v.value.value, &w.value.value) < 1e-9);
}

#[test]
fn harmonic_partial_sums() {
    let prec = 192;
    let g = Float::with_val(prec, rug::float::Constant::Euler);
    for nmax in [1u32, 7, 40] {
        let p46 = partial_sum_harmonic_difference(nmax, prec);
        let mut direct = Float::new(prec);
        let mut h = Float::new(prec);
        for n in 1..=nmax {
            h += Float::with_val(prec, n).recip();
            let n1 = Float::with_val(prec, n + 1);
            direct += Float::with_val(prec, n1.ln_ref()) / (n1 * n);
        }
        let n2 = Float::with_val(prec, nmax + 2);
        let edge = Float::with_val(prec, &h * Float::with_val(prec, n2.ln_ref())) / &n2;
        assert!(diff(&p46, &(direct - edge)) < 1e-50);
        // the termwise integral differs by γ(1/(N+1) + H_N/(N+2))
        let p48 = partial_sum_termwise_integral(nmax, prec);
        let shift = (Float::with_val(prec, nmax + 1).recip() + h / n2) * &g;
        assert!(diff(&p48, &(p46 - shift)) < 1e-50);
    }
}

#[test]
fn lngamma_ratio_trivial_cases() {
    let c = ctx();
    assert!(lngamma_ratio_corollary1(&f(1.5), &f(1.5), &c).unwrap().value.is_zero());
    assert!(lngamma_ratio_corollary1(&f(1.0), &f(2.0), &c).unwrap().value.to_f64().abs() < 1e-30);
    let v = lngamma_ratio_corollary1(&f(0.5), &f(1.5), &c).unwrap();
    let ln2 = Float::with_val(192, rug::float::Constant::Log2);
    assert!(diff(&v.value, &(-ln2)) < 1e-30);
}

#[test]
fn lngamma_ratio_matches_mpfr_and_standard_sum() {
    let c = ctx();
    for (a, b) in [(2.0, 5.0), (0.3, 4.7), (3.25, 0.75), (0.1, 0.2)] {
        let want = ln_gamma_f(&f(b), 192) - ln_gamma_f(&f(a), 192);
        let v = lngamma_ratio_corollary1(&f(a), &f(b), &c).unwrap();
        let s = lngamma_ratio_standard_sum(&f(a), &f(b), &c).unwrap();
        assert!(diff(&v.value, &want) < 1e-30, "corollary ({a}, {b}) off by {:e}", diff(&v.value, &want));
        assert!(diff(&s.value, &want) < 1e-30, "standard ({a}, {b})");
    }
}

#[test]
fn domain_errors() {
    let c = ctx();
    assert!(s_gamma_decomposition(1, &c).is_err());
    assert!(s_gamma_integral(0, &c).is_err());
    assert!(lngamma_ratio_corollary1(&f(0.0), &f(1.0), &c).is_err());
    assert!(lngamma_ratio_standard_sum(&f(1.0), &f(-1.0), &c).is_err());
}
