use rug::ops::Pow;
use rug::Float;
use stieltjes_core::hurwitz_sums::*;
use stieltjes_core::special::gamma::{digamma_f, polygamma_f};
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

fn euler() -> Float {
    Float::with_val(192, rug::float::Constant::Euler)
}

#[test]
fn alternating_harmonic_weight_at_one() {
    let r = prop2a(&f(1.0), &ctx()).unwrap();
    let l2 = Float::with_val(192, rug::float::Constant::Log2);
    let want = l2 + euler() - 1u32;
    assert!(diff(&r.lhs.value, &want) < 1e-35);
    assert!(diff(&r.rhs.value, &want) < 1e-35);
}

#[test]
fn alternating_harmonic_weight_routes() {
    for a in [0.5, 2.0, 3.75] {
        let r = prop2a(&f(a), &ctx()).unwrap();
        assert!(r.gap() < 1e-33, "a = {a}: {:e}", r.gap());
        let q = prop2a_integral(&f(a), &ctx()).unwrap();
        assert!(diff(&q.value, &r.rhs.value) < 1e-30, "integral route at a = {a}");
    }
    let r = prop2a(&f(2.0), &ctx()).unwrap();
    let three = f(3.0);
    let want = Float::with_val(192, three.ln_ref()) - digamma_f(&f(2.0), 192) - 0.5f64;
    assert!(diff(&r.rhs.value, &want) < 1e-40);
}

#[test]
fn shifted_weight_closed_form() {
    let r = prop2b(&f(1.0), &ctx()).unwrap();
    let two_pi = Float::with_val(192, rug::float::Constant::Pi) * 2u32;
    let want = euler() / 2u32 + 1u32 - Float::with_val(192, two_pi.ln_ref()) / 2u32;
    assert!(diff(&r.rhs.value, &want) < 1e-35);
    assert!(diff(&r.lhs.value, &want) < 1e-33);
    for a in [0.3, 1.5, 2.0, 6.0] {
        let r = prop2b(&f(a), &ctx()).unwrap();
        assert!(r.gap() < 1e-33, "a = {a}: {:e}", r.gap());
    }
}

#[test]
fn log_gamma_generating_function() {
    let c = ctx();
    let zero = prop2c(&f(1.0), &f(0.0), &c).unwrap();
    assert!(zero.lhs.value.is_zero() && zero.rhs.value.to_f64().abs() < 1e-40);
    let cases = [
        (2.0, 0.5, "0.0529278574622074199120065031833241407235578932"),
        (1.0, -1.0, "0.27036284546147817002374421154057899911765947"),
    ];
    for (a, z, want) in cases {
        let r = prop2c(&f(a), &f(z), &c).unwrap();
        assert!(diff(&r.lhs.value, &parse(want)) < 1e-33, "lhs ({a}, {z})");
        assert!(diff(&r.rhs.value, &parse(want)) < 1e-33, "rhs ({a}, {z})");
    }
    // direct series, k-sum and alternating branches
    for (a, z) in [(1.0, 0.9), (0.5, 0.45), (3.0, -2.5), (4.0, 2.0)] {
        let r = prop2c(&f(a), &f(z), &c).unwrap();
        assert!(r.gap() < 1e-30, "({a}, {z}): {:e}", r.gap());
    }
    assert!(prop2c(&f(1.0), &f(1.0), &c).is_err());
    assert!(prop2c(&f(1.0), &f(-2.0), &c).is_err());
}

#[test]
fn m0_structure_and_brute_force() {
    let c = ctx();
    let a = f(1.0);
    for k in [0u64, 3, 9] {
        let v = m_j(0, k, &a, None, &c).unwrap();
        let u = Float::with_val(192, k + 1).recip();
        let want = Float::with_val(192, &u) - Float::with_val(192, u.ln_1p_ref());
        assert!(diff(&v.value, &want) < 1e-40);
    }
    let v = m_j(2, 5, &a, None, &c).unwrap();
    let s = m_j_series(2, 5, &a, None, 200, 192).unwrap();
    assert!(diff(&v.value, &s) < 1e-40);
}

#[test]
fn recursion_and_hypergeometric_form() {
    let c = ctx();
    for (k, a, t) in [(3u64, 1.0, None), (0, 2.5, None), (4, 0.5, Some(0.75)), (1, 1.0, Some(-0.4))] {
        let tf = t.map(f);
        let z = match &tf {
            Some(t) => Float::with_val(160, t / Float::with_val(160, a + k as f64)),
            None => Float::with_val(160, a + k as f64).recip(),
        };
        for j in 0..6 {
            let mj = m_j(j, k, &f(a), tf.as_ref(), &c).unwrap().value;
            let next = m_j(j + 1, k, &f(a), tf.as_ref(), &c).unwrap().value;
            let step = m_j_step(&mj, j, &z);
            assert!(diff(&step, &next) <= 1e-36 * (1.0 + mj.to_f64().abs() / z.to_f64().abs()), "k {k} j {j}");
            let h = m_j_hypergeometric(j, k, &f(a), tf.as_ref(), &c).unwrap();
            assert!(diff(&h, &mj) < 1e-38, "hypergeometric k {k} j {j}");
        }
    }
}

#[test]
fn m_j_domain() {
    let c = ctx();
    assert!(m_j(1, 0, &f(0.0), None, &c).is_err());
    assert!(m_j(1, 2, &f(1.0), Some(&f(1.0)), &c).is_err());
    // analytic continuation below k + a = 1
    assert!(m_j(1, 0, &f(0.5), None, &c).is_ok());
    assert!(m_j_hypergeometric(1, 0, &f(0.5), None, &c).is_err());
}

#[test]
fn weighted_sum_two_routes() {
    let c = ctx();
    let two_pi = Float::with_val(192, rug::float::Constant::Pi) * 2u32;
    let j1 = euler() / 2u32 + 1u32 - Float::with_val(192, two_pi.ln_ref()) / 2u32;
    let cases = [
        (1, 1.0, j1.to_string_radix(10, Some(45))),
        (2, 1.0, "0.270975642496740070183013614107411122680728399".to_string()),
        (3, 1.0, "0.213616776280216782005636008763193899583583384".to_string()),
        (1, 0.5, "0.788607832450766430303256045041201215521079668".to_string()),
        (2, 2.5, "0.103772581351677595493913506809668724998749774".to_string()),
    ];
    for (j, a, want) in cases {
        let r = prop3_sum(j, &f(a), &c).unwrap();
        let w = parse(&want);
        assert!(diff(&r.lhs.value, &w) < 1e-33, "lhs j {j} a {a}: {:e}", diff(&r.lhs.value, &w));
        assert!(diff(&r.rhs.value, &w) < 1e-25, "rhs j {j} a {a}: {:e}", diff(&r.rhs.value, &w));
    }
    let s = prop3_series(2, &f(2.5), &c).unwrap();
    assert!(diff(&s.value, &parse("0.103772581351677595493913506809668724998749774")) < 1e-33);
    assert!(prop3_sum(4, &f(1.0), &c).is_err());
    assert!(prop3_sum(0, &f(1.0), &c).is_err());
}

#[test]
fn power_sums_telescope() {
    let prec = 192;
    let a = f(0.75);
    for x in [0u64, 5, 40] {
        for e in [-3, -2, -1, 0, 1, 3] {
            let mut direct = Float::new(prec);
            for k in 0..=x {
                let b = Float::with_val(prec, &a + k);
                direct += Float::with_val(prec, (&b).pow(e));
            }
            let v = power_sum(e, &a, x, prec);
            assert!(diff(&v, &direct) < 1e-40 * (1.0 + direct.to_f64().abs()), "x {x} e {e}");
        }
    }
    // the polygamma tail −ψ′(x+a+1) behaves like −1/(x+a+1)
    for x in [1e3, 1e6] {
        let big = f(x + 1.75);
        let r = polygamma_f(1, &big, 192) * &big;
        assert!((r.to_f64() - 1.0).abs() < 2.0 / x);
    }
}

#[test]
fn derivative_weighted_routes() {
    let c = ctx();
    let r = prop4(&f(1.0), 1, &f(0.5), &f(1.0), &c).unwrap();
    let want = parse("0.0665895337314948219340216165485");
    assert!(diff(&r.lhs.value, &want) < 1e-30);
    assert!(r.gap() < 1e-30, "{:e}", r.gap());
    let z = prop4_zeta_route(&f(1.0), 1, &f(0.5), &f(1.0), &c).unwrap();
    assert!(diff(&z.value, &r.rhs.value) < 1e-30);
    for (j, m, t, a) in [(0.0, 0, 0.5, 1.0), (0.5, 2, 0.3, 1.5), (-0.5, 0, 0.25, 2.0), (2.0, 1, -0.4, 0.8)] {
        let r = prop4(&f(j), m, &f(t), &f(a), &c).unwrap();
        assert!(r.gap() < 1e-28, "({j}, {m}, {t}, {a}): {:e}", r.gap());
        if m > 0 {
            let z = prop4_zeta_route(&f(j), m, &f(t), &f(a), &c).unwrap();
            assert!(diff(&z.value, &r.rhs.value) < 1e-28);
        }
    }
    let zero = prop4(&f(1.0), 2, &f(0.0), &f(1.0), &c).unwrap();
    assert!(zero.lhs.value.is_zero() && zero.rhs.value.is_zero());
    assert!(prop4(&f(1.0), 0, &f(1.0), &f(2.0), &c).is_err());
    assert!(prop4(&f(0.5), 0, &f(-0.2), &f(2.0), &c).is_err());
}

#[test]
fn three_integral_routes() {
    let c = ctx();
    let cases = [
        (0, 0.5, 1.0, "0.1678255948155212079577376"),
        (2, 0.25, 2.0, "0.009494589317920737491786739"),
        (1, 0.5, 2.0, "0.04829894367439111796332943"),
    ];
    for (j, t, a, want) in cases {
        let r = prop5(j, &f(t), &f(a), &c).unwrap();
        let w = parse(want);
        for (name, v) in [("p1", &r.by_p1_integral), ("hermite", &r.by_hermite), ("binet", &r.by_binet)] {
            assert!(diff(&v.value, &w) < 1e-25, "{name} at ({j}, {t}, {a}): {:e}", diff(&v.value, &w));
        }
        assert!(r.spread() <= r.budget().max(1e-28), "spread {:e}", r.spread());
        let s = prop5_series(j, &f(t), &f(a), &c).unwrap();
        assert!(diff(&s.value, &r.by_hermite.value) < 1e-28);
    }
    let r = prop5(1, &f(-0.6), &f(0.7), &c).unwrap();
    assert!(r.spread() < 1e-28, "negative t spread {:e}", r.spread());
    let z = prop5(3, &f(0.0), &f(1.0), &c).unwrap();
    assert!(z.by_binet.value.is_zero());
}
