//! The closed-form base geodesic fixes its integration constants by the
//! initial data. Variants with other constants must be rejected by the same
//! residuals that accept the real solution.

use sasaki_core::BaseGeodesicParams;

const P: BaseGeodesicParams = BaseGeodesicParams::new(1.0, 2.0, 0.5);

/// `(x1, x2, x3)` and velocity for constants `c2` (in `x2`) and `k3` (the
/// sine coefficient in `x3`).
fn variant(p: &BaseGeodesicParams, t: f64, c2: f64, k3: f64) -> ([f64; 3], [f64; 3]) {
    let BaseGeodesicParams { u, v, w } = *p;
    let s = u * u + v * v;
    let (sz, cz) = (2.0 * w * t).sin_cos();
    let x = [
        v / (2.0 * w) * cz + u / (2.0 * w) * sz - v / (2.0 * w),
        -u / (2.0 * w) * cz + v / (2.0 * w) * sz + c2,
        w * t + s / (2.0 * w) * t - k3 * sz,
    ];
    let dx = [u * cz - v * sz, u * sz + v * cz, w + s / (2.0 * w) - 2.0 * w * k3 * cz];
    (x, dx)
}

fn residuals(p: &BaseGeodesicParams, c2: f64, k3: f64) -> f64 {
    let BaseGeodesicParams { u, v, w } = *p;
    (0..=400)
        .map(|k| {
            let t = 4.0 * std::f64::consts::PI * k as f64 / 400.0;
            let (x, d) = variant(p, t, c2, k3);
            [
                (d[2] + x[1] * d[0] - x[0] * d[1] - w).abs(),
                (d[0] + 2.0 * w * x[1] - u).abs(),
                (d[1] - 2.0 * w * x[0] - v).abs(),
                x.iter().map(|c| c.abs()).fold(0.0, f64::max) * (t == 0.0) as u8 as f64,
            ]
            .into_iter()
            .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

#[test]
fn correct_constants_accepted() {
    let BaseGeodesicParams { u, v, w } = P;
    let r = residuals(&P, u / (2.0 * w), (u * u + v * v) / (4.0 * w * w));
    assert!(r < 1e-12, "{r}");
    for k in 0..50 {
        let t = 0.2 * k as f64;
        let (x, _) = variant(&P, t, u / (2.0 * w), (u * u + v * v) / (4.0 * w * w));
        let y = P.position(t).to_array();
        assert!(x.iter().zip(y).all(|(a, b)| (a - b).abs() < 1e-12));
    }
}

#[test]
fn x2_constant_v_over_2w_rejected() {
    let BaseGeodesicParams { u, v, w } = P;
    assert!(residuals(&P, v / (2.0 * w), (u * u + v * v) / (4.0 * w * w)) > 1e-2);
}

#[test]
fn x3_sine_coefficient_over_2w_rejected() {
    // the two coefficients agree when 2w = 1
    let p = BaseGeodesicParams::new(1.0, 2.0, 1.0);
    let BaseGeodesicParams { u, v, w } = p;
    assert!(residuals(&p, u / (2.0 * w), (u * u + v * v) / (4.0 * w * w)) < 1e-12);
    assert!(residuals(&p, u / (2.0 * w), (u * u + v * v) / (2.0 * w)) > 1e-2);
}
