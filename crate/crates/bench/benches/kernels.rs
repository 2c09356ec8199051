use criterion::{black_box, criterion_group, criterion_main, Criterion};
use neareuclid::{
    bracket, build_isometry_2d, distortion_estimate, estimate_vnj, norm_eval, orthogonal_nd, Space,
};
use neareuclid_bench::{blend_l2_l4, hexagon};

fn bench_norm_eval(c: &mut Criterion) {
    let mut group = c.benchmark_group("norm_eval");
    let x2 = [0.7, -1.3];
    let x4 = [0.7, -1.3, 0.2, 2.1];

    let l15 = Space::pnorm(1.5, 4).unwrap();
    group.bench_function("pnorm_1.5_d4", |b| {
        b.iter(|| norm_eval(&l15, black_box(&x4)).unwrap())
    });

    let hex = hexagon();
    group.bench_function("hexagon_gauge", |b| {
        b.iter(|| norm_eval(&hex, black_box(&x2)).unwrap())
    });

    let blend = blend_l2_l4(0.1, 4);
    group.bench_function("blend_l2_l4_d4", |b| {
        b.iter(|| norm_eval(&blend, black_box(&x4)).unwrap())
    });
    group.finish();
}

fn bench_bracket(c: &mut Criterion) {
    let l1 = Space::pnorm(1.0, 4).unwrap();
    let a = [1.0, -0.5, 2.0, 0.25];
    let b = [0.1, 1.5, -1.0, 0.75];
    c.bench_function("bracket_l1_d4", |bch| {
        bch.iter(|| bracket(&l1, black_box(&a), black_box(&b)).unwrap())
    });
}

fn bench_estimators(c: &mut Criterion) {
    let mut group = c.benchmark_group("estimators");
    group.sample_size(10);

    let l4 = Space::pnorm(4.0, 2).unwrap();
    group.bench_function("estimate_vnj_l4_budget_2000", |b| {
        b.iter(|| estimate_vnj(&l4, 2000, black_box(7)))
    });

    let linf = Space::pnorm(f64::INFINITY, 3).unwrap();
    let id: Vec<Vec<f64>> = (0..3)
        .map(|i| (0..3).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    group.bench_function("distortion_identity_linf_d3", |b| {
        b.iter(|| distortion_estimate(&linf, black_box(&id), 2000, 3).unwrap())
    });
    group.finish();
}

fn bench_builders(c: &mut Criterion) {
    let mut group = c.benchmark_group("builders");
    group.sample_size(10);

    let hex = hexagon();
    group.bench_function("build_isometry_2d_hexagon", |b| {
        b.iter(|| build_isometry_2d(&hex, 1e-8).unwrap())
    });

    let blend = blend_l2_l4(0.05, 3);
    let xs = neareuclid::sphere_sample(&blend, 1, 5);
    group.bench_function("orthogonal_nd_blend_d3_k1", |b| {
        b.iter(|| orthogonal_nd(&blend, black_box(&xs), 1e-8, 20, 11).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_norm_eval,
    bench_bracket,
    bench_estimators,
    bench_builders
);
criterion_main!(benches);
