use super::{Evaluation, IdentityCheck, Tolerance};
use crate::binomial::{
    lngamma_ratio_corollary1, logsum_reference, logsum_variant, s_gamma, LogSumVariantId,
};
use crate::context::{NumResult, PrecisionContext, SeriesValue};
use crate::eta::{eta_from_gamma, prop6_c1, s2_sum, zeta_log_derivative, EtaTable};
use crate::hurwitz_sums::*;
use crate::special::gamma::{euler_gamma, ln_gamma_f};
use crate::stieltjes::{
    gamma_limit_oracle, gamma_series, gamma_series_general, tail_constant, tail_constant_route,
    weighted_tail_sum_c, weighted_tail_sum_d, GammaRoute, StieltjesTable, TailRoute,
};
use rug::Float;

use Tolerance::{Anchor, CrossCheck};

fn fl(ctx: &PrecisionContext, x: f64) -> Float {
    Float::with_val(ctx.work(), x)
}

fn pair(p: IdentityPair) -> Evaluation {
    Evaluation::pair(p.lhs, p.rhs)
}

/// Every identity the `verify` command knows, in report order.
pub fn registry() -> Vec<IdentityCheck> {
    let mut r = Vec::new();
    stieltjes_checks(&mut r);
    logsum_checks(&mut r);
    hurwitz_checks(&mut r);
    eta_checks(&mut r);
    r
}

fn stieltjes_checks(r: &mut Vec<IdentityCheck>) {
    for j in 1..=5u32 {
        r.push(IdentityCheck::new(
            format!("prop1a-j{j}"),
            &["7"],
            format!("gamma_series(j={j})"),
            format!("gamma_limit_oracle(j={j}, a=1)"),
            CrossCheck,
            move |ctx| {
                let one = fl(ctx, 1.0);
                Ok(Evaluation::pair(gamma_series(j, ctx)?, gamma_limit_oracle(j, &one, ctx)?))
            },
        ));
    }
    for j in 1..=3u32 {
        for a in [0.5, 2.0] {
            r.push(IdentityCheck::new(
                format!("prop1b-j{j}-a{a}"),
                &["8"],
                format!("gamma_series_general(j={j}, a={a})"),
                format!("gamma_limit_oracle(j={j}, a={a})"),
                CrossCheck,
                move |ctx| {
                    let a = fl(ctx, a);
                    Ok(Evaluation::pair(gamma_series_general(j, &a, ctx)?, gamma_limit_oracle(j, &a, ctx)?))
                },
            ));
        }
        r.push(IdentityCheck::new(
            format!("prop1b-j{j}-a1"),
            &["8", "7"],
            format!("gamma_series_general(j={j}, a=1)"),
            format!("gamma_series(j={j})"),
            Anchor(1e-20),
            move |ctx| Ok(Evaluation::pair(gamma_series_general(j, &fl(ctx, 1.0), ctx)?, gamma_series(j, ctx)?)),
        ));
    }
    for n in 2..=15u32 {
        r.push(IdentityCheck::new(
            format!("prop1c-n{n}"),
            &["9", "4"],
            format!("s_gamma_definition(n={n})"),
            format!("s_gamma_decomposition(n={n}) + dp1_integral(n={n})"),
            CrossCheck,
            move |ctx| {
                let s = s_gamma(n, true, ctx)?;
                let d = s.by_decomposition.clone().expect("n ≥ 2");
                Ok(Evaluation {
                    discrepancy: Some(s.max_disagreement()),
                    extra_error: s.by_integral.error_bound,
                    lhs: s.by_definition,
                    rhs: d,
                })
            },
        ));
    }
    let quoted_c = [(1u32, "-0.334", 2e-3), (2, "-0.433", 2e-3), (3, "-0.93", 2e-2)];
    for (j, q, tol) in quoted_c {
        r.push(IdentityCheck::new(
            format!("tail-c{j}"),
            &["5"],
            format!("tail_constant(j={j}, a=1)"),
            format!("quoted {q}"),
            Anchor(tol),
            move |ctx| Ok(Evaluation::anchor(tail_constant(j, &fl(ctx, 1.0), ctx)?.value, q)),
        ));
    }
    for (j, a) in [(1u32, 1.0), (2, 1.0), (2, 2.0)] {
        r.push(IdentityCheck::new(
            format!("eq72-j{j}-a{a}"),
            &["72", "5"],
            format!("tail_constant_route(j={j}, a={a}, summation)"),
            format!("tail_constant_route(j={j}, a={a}, floor-split)"),
            CrossCheck,
            move |ctx| {
                let a = fl(ctx, a);
                Ok(Evaluation::pair(
                    tail_constant_route(j, &a, TailRoute::SummationForm, ctx)?.value,
                    tail_constant_route(j, &a, TailRoute::FloorSplit, ctx)?.value,
                ))
            },
        ));
    }
    r.push(IdentityCheck::new(
        "eq10a",
        &["10a"],
        "weighted_tail_sum_c: euler-maclaurin",
        "weighted_tail_sum_c: abel-summed tail constants",
        CrossCheck,
        |ctx| {
            let w = weighted_tail_sum_c(ctx)?;
            Ok(Evaluation::pair(w.by_euler_maclaurin, w.by_tail_constants))
        },
    ));
    for a in [1.0, 2.0] {
        r.push(IdentityCheck::new(
            format!("eq10b-a{a}"),
            &["10b"],
            format!("weighted_tail_sum_d(a={a}): euler-maclaurin"),
            format!("weighted_tail_sum_d(a={a}): g-sum"),
            CrossCheck,
            move |ctx| {
                let w = weighted_tail_sum_d(&fl(ctx, a), ctx)?;
                Ok(Evaluation::pair(w.by_euler_maclaurin, w.by_g_sum))
            },
        ));
    }
    r.push(IdentityCheck::new(
        "eq42",
        &["42", "40"],
        "weighted_tail_sum_c: log sum − 2 ln 2",
        "weighted_tail_sum_c: abel-summed tail constants",
        CrossCheck,
        |ctx| {
            let w = weighted_tail_sum_c(ctx)?;
            Ok(Evaluation::pair(w.by_log_sum, w.by_tail_constants))
        },
    ));
}

fn logsum_checks(r: &mut Vec<IdentityCheck>) {
    r.push(IdentityCheck::new(
        "eq44a",
        &["44a", "43"],
        "logsum_variant(eq43)",
        "quoted 1.25774688694",
        Anchor(1e-10),
        |ctx| Ok(Evaluation::anchor(logsum_variant(LogSumVariantId::Eq43, ctx)?.value, "1.25774688694")),
    ));
    r.push(IdentityCheck::new(
        "eq44b",
        &["44b", "10a", "42"],
        "weighted_tail_sum_c: euler-maclaurin",
        "weighted_tail_sum_c: log sum − 2 ln 2",
        CrossCheck,
        |ctx| {
            let w = weighted_tail_sum_c(ctx)?;
            Ok(Evaluation::pair(w.by_euler_maclaurin, w.by_log_sum))
        },
    ));
    for id in LogSumVariantId::ALL {
        let name = id.as_str();
        let eq = name.trim_start_matches("eq").split('-').next().unwrap_or(name);
        r.push(IdentityCheck::new(
            format!("logsum-{name}"),
            &[eq],
            format!("logsum_variant({name})"),
            "logsum_reference",
            CrossCheck,
            move |ctx| Ok(Evaluation::pair(logsum_variant(id, ctx)?.value, logsum_reference(ctx))),
        ));
    }
    for (a, b) in [(1.0, 2.0), (0.5, 1.5), (2.0, 5.0)] {
        r.push(IdentityCheck::new(
            format!("corollary1-a{a}-b{b}"),
            &["66", "68"],
            format!("lngamma_ratio_corollary1(a={a}, b={b})"),
            format!("ln_gamma(b={b}) − ln_gamma(a={a})"),
            CrossCheck,
            move |ctx| {
                let (fa, fb) = (fl(ctx, a), fl(ctx, b));
                let p = ctx.work();
                let direct = SeriesValue::closed(ln_gamma_f(&fb, p) - ln_gamma_f(&fa, p));
                Ok(Evaluation::pair(lngamma_ratio_corollary1(&fa, &fb, ctx)?, direct))
            },
        ));
    }
}

const GRID_A: [f64; 3] = [0.5, 1.0, 2.0];

fn hurwitz_checks(r: &mut Vec<IdentityCheck>) {
    for a in GRID_A {
        r.push(IdentityCheck::new(
            format!("prop2a-a{a}"),
            &["73", "77"],
            format!("alternating hurwitz m-sum (a={a})"),
            format!("ln(1+a) − ψ(a) − 1/a (a={a})"),
            CrossCheck,
            move |ctx| Ok(pair(prop2a(&fl(ctx, a), ctx)?)),
        ));
        r.push(IdentityCheck::new(
            format!("prop2a-integral-a{a}"),
            &["78"],
            format!("prop2a_integral(a={a})"),
            format!("ln(1+a) − ψ(a) − 1/a (a={a})"),
            CrossCheck,
            move |ctx| {
                let a = fl(ctx, a);
                let q = prop2a_integral(&a, ctx)?;
                Ok(Evaluation::pair(q, prop2a(&a, ctx)?.rhs))
            },
        ));
        r.push(IdentityCheck::new(
            format!("prop2b-a{a}"),
            &["74"],
            format!("shifted hurwitz m-sum (a={a})"),
            format!("−a ln a + lnΓ(a+1) − ψ(a)/2 − ln(2π)/2 + a (a={a})"),
            CrossCheck,
            move |ctx| Ok(pair(prop2b(&fl(ctx, a), ctx)?)),
        ));
        for z in [-0.25, 0.25] {
            r.push(IdentityCheck::new(
                format!("prop2c-a{a}-z{z}"),
                &["75"],
                format!("z-weighted hurwitz m-sum (a={a}, z={z})"),
                format!("log-gamma generating function (a={a}, z={z})"),
                CrossCheck,
                move |ctx| Ok(pair(prop2c(&fl(ctx, a), &fl(ctx, z), ctx)?)),
            ));
        }
    }
    r.push(IdentityCheck::new(
        "lemma4-recursion",
        &["90", "87", "88"],
        "m_j(j=6, k=3, a=1) closed form",
        "m_0 stepped six times by the recursion",
        Tolerance::WorkingPrecision { slack_bits: 16 },
        |ctx| lemma4_recursion(3, 1.0, None, ctx),
    ));
    r.push(IdentityCheck::new(
        "lemma4-recursion-t0.75",
        &["90", "107", "108"],
        "m_j(j=6, k=4, a=0.5, t=0.75) closed form",
        "m_0 stepped six times by the recursion",
        Tolerance::WorkingPrecision { slack_bits: 16 },
        |ctx| lemma4_recursion(4, 0.5, Some(0.75), ctx),
    ));
    r.push(IdentityCheck::new(
        "lemma4-hypergeometric",
        &["86", "87"],
        "m_j(j=3, k=2, a=1) closed form",
        "m_j_hypergeometric(j=3, k=2, a=1)",
        Tolerance::WorkingPrecision { slack_bits: 16 },
        |ctx| {
            let a = fl(ctx, 1.0);
            let c = m_j(3, 2, &a, None, ctx)?.value;
            let h = m_j_hypergeometric(3, 2, &a, None, ctx)?;
            Ok(Evaluation::pair(SeriesValue::closed(c), SeriesValue::closed(h)))
        },
    ));
    for j in 1..=3u32 {
        r.push(IdentityCheck::new(
            format!("prop3-j{j}"),
            &["84", "92", "93"],
            format!("Σ_k m_j(k) (j={j}, a=1)"),
            format!("limit of polygamma and log-power partial sums (j={j}, a=1)"),
            CrossCheck,
            move |ctx| Ok(pair(prop3_sum(j, &fl(ctx, 1.0), ctx)?)),
        ));
    }
    for j in [0.0, 0.5, 1.0] {
        for m in [0u32, 1, 2] {
            r.push(IdentityCheck::new(
                format!("prop4-j{j}-m{m}-t0.5-a1"),
                &["99", "100"],
                format!("k-series (j={j}, m={m}, t=0.5, a=1)"),
                format!("polygamma integral (j={j}, m={m}, t=0.5, a=1)"),
                CrossCheck,
                move |ctx| Ok(pair(prop4(&fl(ctx, j), m, &fl(ctx, 0.5), &fl(ctx, 1.0), ctx)?)),
            ));
        }
    }
    for (j, m) in [(1.0, 1u32), (0.5, 2)] {
        r.push(IdentityCheck::new(
            format!("prop4-zeta-j{j}-m{m}"),
            &["101", "96"],
            format!("polygamma integral (j={j}, m={m}, t=0.5, a=1)"),
            format!("hurwitz zeta integral (j={j}, m={m}, t=0.5, a=1)"),
            CrossCheck,
            move |ctx| {
                let (jf, t, a) = (fl(ctx, j), fl(ctx, 0.5), fl(ctx, 1.0));
                let p = prop4(&jf, m, &t, &a, ctx)?;
                Ok(Evaluation::pair(p.rhs, prop4_zeta_route(&jf, m, &t, &a, ctx)?))
            },
        ));
    }
    for j in 0..=2u32 {
        for t in [0.25, 0.5] {
            for a in [1.0, 2.0] {
                r.push(IdentityCheck::new(
                    format!("prop5-j{j}-t{t}-a{a}"),
                    &["109", "110", "111"],
                    format!("P₁ integral (j={j}, t={t}, a={a})"),
                    format!("Hermite and Binet integrals (j={j}, t={t}, a={a})"),
                    CrossCheck,
                    move |ctx| {
                        let p = prop5(j, &fl(ctx, t), &fl(ctx, a), ctx)?;
                        Ok(Evaluation {
                            discrepancy: Some(p.spread()),
                            extra_error: p.by_binet.error_bound,
                            lhs: p.by_p1_integral,
                            rhs: p.by_hermite,
                        })
                    },
                ));
            }
        }
    }
}

fn lemma4_recursion(k: u64, a: f64, t: Option<f64>, ctx: &PrecisionContext) -> NumResult<Evaluation> {
    let p = ctx.work();
    let af = fl(ctx, a);
    let tf = t.map(|t| fl(ctx, t));
    let z = match &tf {
        Some(t) => Float::with_val(p, t / Float::with_val(p, &af + k)),
        None => Float::with_val(p, &af + k).recip(),
    };
    let mut m = m_j(0, k, &af, tf.as_ref(), ctx)?.value;
    for j in 0..6 {
        m = m_j_step(&m, j, &z);
    }
    let closed = m_j(6, k, &af, tf.as_ref(), ctx)?.value;
    Ok(Evaluation::pair(SeriesValue::closed(closed), SeriesValue::closed(m)))
}

fn eta_checks(r: &mut Vec<IdentityCheck>) {
    r.push(IdentityCheck::new(
        "eta-eta0",
        &["118"],
        "eta_from_gamma(k=0)",
        "−γ",
        CrossCheck,
        |ctx| {
            let one = fl(ctx, 1.0);
            let t = StieltjesTable::build(&one, 0..=0, GammaRoute::LimitOracle, ctx)?;
            let e = eta_from_gamma(0, &t, ctx)?;
            Ok(Evaluation::pair(e, SeriesValue::closed(-euler_gamma(ctx.work()))))
        },
    ));
    r.push(IdentityCheck::new(
        "prop6-c1",
        &["119"],
        "prop6_c1(j=0)",
        "quoted 0.2419488514703058",
        Anchor(1e-12),
        |ctx| Ok(Evaluation::anchor(prop6_c1(0, ctx)?, "0.2419488514703058")),
    ));
    r.push(IdentityCheck::new(
        "prop6-zeta-log-derivative",
        &["119"],
        "zeta_log_derivative(j=0, s=2) / 2",
        "quoted -0.2849804965472664",
        Anchor(1e-12),
        |ctx| {
            let d = zeta_log_derivative(0, &fl(ctx, 2.0), ctx)?;
            Ok(Evaluation::anchor(d.scale(&fl(ctx, 0.5)), "-0.2849804965472664"))
        },
    ));
    r.push(IdentityCheck::new(
        "s2-n1",
        &["122"],
        "S₂(1) from recurrence-route η",
        "γ",
        CrossCheck,
        |ctx| {
            let etas = EtaTable::build(0, ctx)?;
            let s = s2_sum(1, &etas, &s_gamma(1, false, ctx)?, ctx)?;
            Ok(Evaluation::pair(s.s2, SeriesValue::closed(euler_gamma(ctx.work()))))
        },
    ));
    r.push(IdentityCheck::new(
        "s2-decomposition",
        &["122"],
        "S₂(6) from recurrence-route η",
        "S_γ(6) by the dP₁ integral + S_Λ(6)",
        CrossCheck,
        |ctx| {
            let n = 6;
            let etas = EtaTable::build(n - 1, ctx)?;
            let sg = s_gamma(n, false, ctx)?;
            let s = s2_sum(n, &etas, &sg, ctx)?;
            let rhs = sg.by_integral.add(&s.s_lambda);
            Ok(Evaluation {
                lhs: s.s2,
                rhs,
                discrepancy: None,
                extra_error: sg.by_definition.error_bound,
            })
        },
    ));
}
