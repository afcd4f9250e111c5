use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use stieltjes_bench::{arg, ctx, BITS};
use stieltjes_core::binomial::{logsum_variant, LogSumVariantId};
use stieltjes_core::hurwitz_sums::{m_j, prop5};
use stieltjes_core::special::laguerre::laguerre;
use stieltjes_core::special::polylog::polylog_f;
use stieltjes_core::special::zeta::{hurwitz_zeta_route, ZetaRoute};
use stieltjes_core::stieltjes::gamma_series;

fn hurwitz(c: &mut Criterion) {
    let mut g = c.benchmark_group("hurwitz_zeta");
    for bits in BITS {
        let cx = ctx(bits);
        let (s, a) = (arg(&cx, 2.5), arg(&cx, 0.75));
        for route in [ZetaRoute::EulerMaclaurin, ZetaRoute::Hermite] {
            g.bench_with_input(BenchmarkId::new(format!("{route:?}"), bits), &bits, |b, _| {
                b.iter(|| hurwitz_zeta_route(black_box(&s), black_box(&a), route, &cx).unwrap())
            });
        }
    }
    g.finish();
}

fn polylog_and_laguerre(c: &mut Criterion) {
    let cx = ctx(128);
    let x = arg(&cx, -7.5);
    c.bench_function("polylog_f(4, -7.5)", |b| b.iter(|| polylog_f(4, black_box(&x), cx.work())));
    let w = arg(&cx, 3.0);
    c.bench_function("laguerre(20, 3)", |b| b.iter(|| laguerre(20, 3, black_box(&w))));
}

fn sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("sums");
    g.sample_size(10);
    let cx = ctx(128);
    let (t, a) = (arg(&cx, 0.5), arg(&cx, 1.0));
    g.bench_function("m_j(3, k=2, t=0.5)", |b| b.iter(|| m_j(3, 2, &a, Some(&t), &cx).unwrap()));
    g.bench_function("prop5(1, 0.5, 1)", |b| b.iter(|| prop5(1, &t, &a, &cx).unwrap()));
    g.bench_function("gamma_series(3)", |b| b.iter(|| gamma_series(3, &cx).unwrap()));
    g.bench_function("logsum eq43", |b| b.iter(|| logsum_variant(LogSumVariantId::Eq43, &cx).unwrap()));
    g.finish();
}

criterion_group!(benches, hurwitz, polylog_and_laguerre, sums);
criterion_main!(benches);
