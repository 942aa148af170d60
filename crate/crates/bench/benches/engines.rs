use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use starkres_bench::{context, field, ground_point};
use starkres_core::crlm::{assemble_blocks, rotate_and_solve};
use starkres_core::numerics::quadrature::laguerre_nodes;
use starkres_core::pt::{optimal_truncation, pt_series};
use starkres_core::rpm::{hankel_det, riccati_coefficients, Channel, HankelSpec};
use starkres_core::StateLabel;

fn quadrature(c: &mut Criterion) {
    let ctx = context(60);
    let mut g = c.benchmark_group("laguerre_nodes");
    for m in [16, 32, 64] {
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| b.iter(|| laguerre_nodes(black_box(m), &ctx)));
    }
    g.finish();
}

fn riccati_pade(c: &mut Criterion) {
    let ctx = context(160);
    let f = field(&ctx);
    let (e, a) = ground_point(&ctx);
    let mut g = c.benchmark_group("hankel");
    for dim in [10, 20] {
        let spec = HankelSpec::new(dim, 0).unwrap();
        g.bench_with_input(BenchmarkId::new("series_and_det", dim), &spec, |b, spec| {
            b.iter(|| {
                let s = riccati_coefficients(&e, &a, &f, Channel::eta(0), spec.series_len(), &ctx).unwrap();
                hankel_det(&s, spec, &ctx).unwrap()
            })
        });
    }
    g.finish();
}

fn perturbation(c: &mut Criterion) {
    let ctx = context(120);
    let f = field(&ctx);
    c.bench_function("pt_series/130", |b| b.iter(|| pt_series(StateLabel::ground(), black_box(130), &ctx)));
    let s = pt_series(StateLabel::ground(), 160, &ctx).unwrap();
    c.bench_function("optimal_truncation/160", |b| b.iter(|| optimal_truncation(&s, &f)));
}

fn mesh(c: &mut Criterion) {
    let ctx = context(30);
    let mut g = c.benchmark_group("crlm");
    g.sample_size(10);
    for n in [8, 12] {
        g.bench_with_input(BenchmarkId::new("assemble", n), &n, |b, &n| b.iter(|| assemble_blocks(n, 0, &ctx, 2 * n + 6)));
        let blocks = assemble_blocks(n, 0, &ctx, 2 * n + 6).unwrap();
        g.bench_with_input(BenchmarkId::new("eigenvalues", n), &blocks, |b, blocks| {
            b.iter(|| rotate_and_solve(blocks, 0.4, 0.005))
        });
    }
    g.finish();
}

criterion_group!(benches, quadrature, riccati_pade, perturbation, mesh);
criterion_main!(benches);
