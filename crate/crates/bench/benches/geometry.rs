use criterion::{black_box, criterion_group, criterion_main, Criterion};
use sasaki_core::{
    builtin_distribution, christoffel_coord, default_samples, integrate_bundle_geodesic, natural_lift_curve,
    sasaki_connection, totally_geodesic_check, BaseGeodesicParams, BasePoint, BundlePoint, BundleVector, CoordVector,
    IntegratorConfig, LiftInitialData, SampledCurve, DEFAULT_SEED, DEFAULT_TOLERANCE,
};

fn pointwise(c: &mut Criterion) {
    let p = BasePoint::new(0.3, -1.1, 0.8);
    c.bench_function("christoffel_coord", |b| b.iter(|| christoffel_coord(black_box(&p))));

    let at = BundlePoint::new(p, CoordVector::new(1.0, 0.5, -0.2));
    let (x, y) = (BundleVector::h(0) + BundleVector::v(2), BundleVector::h(1) - BundleVector::v(0));
    c.bench_function("sasaki_connection", |b| {
        b.iter(|| sasaki_connection(black_box(&at), black_box(&x), black_box(&y)))
    });
}

fn integration(c: &mut Criterion) {
    let init = LiftInitialData::new(1.0, 2.0, 0.5, 0.3, -0.2, 0.1).initial_state();
    let cfg = IntegratorConfig::new(1e-3, 1.0);
    c.bench_function("bundle_geodesic_1000_steps", |b| {
        b.iter(|| integrate_bundle_geodesic(black_box(&init), &cfg).unwrap())
    });

    let g = BaseGeodesicParams::new(1.0, 2.0, 0.5);
    let base = SampledCurve::from_fn(0.0, 1e-3, 1001, |t| (g.position(t), g.velocity(t))).unwrap();
    c.bench_function("natural_lift_1001_samples", |b| b.iter(|| natural_lift_curve(black_box(&base)).unwrap()));
}

fn distributions(c: &mut Criterion) {
    let samples = default_samples(DEFAULT_SEED);
    let d = builtin_distribution("ker-omega-h").unwrap();
    c.bench_function("totally_geodesic_check_102_samples", |b| {
        b.iter(|| totally_geodesic_check(&d, black_box(&samples), DEFAULT_TOLERANCE).unwrap())
    });
}

criterion_group!(benches, pointwise, integration, distributions);
criterion_main!(benches);
