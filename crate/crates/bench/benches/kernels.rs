//! Hot-path benchmarks: map iteration, residual evaluation, root finding,
//! group closure, and Newton-basin pixels.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use icosa_core::context::Context;
use icosa_core::dynamics::converge_to_cycle;
use icosa_core::group::{IcosaGroup, ProjectivePoint};
use icosa_core::poly::aberth_roots;
use icosa_core::search::basins::newton_from;
use icosa_core::RunConfig;

fn bench_kernels(c: &mut Criterion) {
    let ctx = Context::build(RunConfig::default()).expect("pipeline builds");
    let targets = ctx.newton_targets();

    c.bench_function("map_iterate_100", |b| {
        let p = ProjectivePoint::from_affine(Complex64::new(0.31, 0.24));
        b.iter(|| black_box(ctx.soccer.map.iterate(black_box(&p), 100)))
    });

    c.bench_function("converge_to_cycle", |b| {
        let p = ProjectivePoint::from_affine(Complex64::new(0.47, -0.19));
        b.iter(|| {
            black_box(converge_to_cycle(
                &ctx.soccer.map,
                &ctx.soccer_cycles,
                black_box(&p),
                400,
                1e-12,
                1e-6,
            ))
        })
    });

    c.bench_function("residual_eval", |b| {
        let z = Complex64::new(0.62, 0.18);
        b.iter(|| black_box(ctx.search.critical_residual(black_box(z), z.conj())))
    });

    c.bench_function("newton_basin_pixel", |b| {
        let z = Complex64::new(-0.21, 0.09);
        b.iter(|| black_box(newton_from(&ctx.residual, &targets, black_box(z), 200)))
    });

    c.bench_function("aberth_degree_30", |b| {
        let t = ctx.inv.t.to_complex().dense_by_x();
        b.iter(|| black_box(aberth_roots(black_box(&t))))
    });

    c.bench_function("group_closure", |b| {
        b.iter(|| black_box(IcosaGroup::build(1e-10).unwrap().elements.len()))
    });
}

criterion_group!(benches, bench_kernels);
criterion_main!(benches);
