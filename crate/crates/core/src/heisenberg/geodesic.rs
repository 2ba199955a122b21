use serde::{Deserialize, Serialize};

use super::connection::christoffel_coord;
use super::types::{BasePoint, CoordVector};

/// Below this `|w|` the closed form switches to the straight-line branch.
pub const W_EPS: f64 = 1e-12;

/// Initial velocity `(u, v, w)` at the origin, coordinate components.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BaseGeodesicParams {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

/// `z - sin z`, accurate for small `z`.
fn z_minus_sin(z: f64) -> f64 {
    if z.abs() < 0.1 {
        let z2 = z * z;
        // z^3/3! - z^5/5! + z^7/7! - z^9/9! + z^11/11!
        z * z2
            * (1.0 / 6.0
                - z2 * (1.0 / 120.0
                    - z2 * (1.0 / 5040.0 - z2 * (1.0 / 362_880.0 - z2 / 39_916_800.0))))
    } else {
        z - z.sin()
    }
}

impl BaseGeodesicParams {
    pub const fn new(u: f64, v: f64, w: f64) -> Self {
        Self { u, v, w }
    }

    fn is_straight(&self) -> bool {
        self.w.abs() <= W_EPS
    }

    /// Position at time `t` of the geodesic leaving the origin with velocity `(u, v, w)`.
    ///
    /// For `|w| > W_EPS`:
    ///
    /// ```text
    /// x1 = (v/2w) cos 2wt + (u/2w) sin 2wt - v/2w
    /// x2 = -(u/2w) cos 2wt + (v/2w) sin 2wt + u/2w
    /// x3 = wt + ((u^2+v^2)/2w) t - ((u^2+v^2)/4w^2) sin 2wt
    /// ```
    ///
    /// evaluated in cancellation-free form. The constant in `x2` and the sine
    /// coefficient in `x3` are re-derived from the initial conditions. Otherwise
    /// the straight line `(ut, vt, wt)`.
    pub fn position(&self, t: f64) -> BasePoint {
        let Self { u, v, w } = *self;
        if self.is_straight() {
            return BasePoint::new(u * t, v * t, w * t);
        }
        let z = 2.0 * w * t;
        let (sz, half) = (z.sin(), (w * t).sin());
        let one_minus_cos = 2.0 * half * half;
        let s = u * u + v * v;
        BasePoint::new(
            (u * sz - v * one_minus_cos) / (2.0 * w),
            (u * one_minus_cos + v * sz) / (2.0 * w),
            w * t + s / (4.0 * w * w) * z_minus_sin(z),
        )
    }

    /// Velocity `dx/dt` at time `t`.
    pub fn velocity(&self, t: f64) -> CoordVector {
        let Self { u, v, w } = *self;
        if self.is_straight() {
            return CoordVector::new(u, v, w);
        }
        let z = 2.0 * w * t;
        let (sz, cz) = z.sin_cos();
        let half = (w * t).sin();
        let s = u * u + v * v;
        CoordVector::new(u * cz - v * sz, u * sz + v * cz, w + s * half * half / w)
    }

    /// Acceleration `d^2x/dt^2` at time `t`.
    pub fn acceleration(&self, t: f64) -> CoordVector {
        let Self { u, v, w } = *self;
        if self.is_straight() {
            return CoordVector::default();
        }
        let z = 2.0 * w * t;
        let (sz, cz) = z.sin_cos();
        let s = u * u + v * v;
        CoordVector::new(
            -2.0 * w * (u * sz + v * cz),
            2.0 * w * (u * cz - v * sz),
            s * sz,
        )
    }
}

/// Closed-form base geodesic through the origin, see [`BaseGeodesicParams::position`].
pub fn base_geodesic_closed_form(params: &BaseGeodesicParams, t: f64) -> BasePoint {
    params.position(t)
}

/// First-order form of `x'' + Gamma(x)(x', x') = 0`: returns `(dx/dt, dv/dt)`.
pub fn base_geodesic_rhs(x: &BasePoint, v: &CoordVector) -> (CoordVector, CoordVector) {
    let acc = -christoffel_coord(x).contract(v, v);
    (*v, acc)
}

/// RK4 integration of the base geodesic equation from `(x0, v0)` at `t = 0`.
pub fn integrate_base_geodesic(
    x0: &BasePoint,
    v0: &CoordVector,
    cfg: &crate::ode::IntegratorConfig,
) -> crate::error::Result<super::curve::SampledCurve> {
    let mut y0 = [0.0; 6];
    y0[..3].copy_from_slice(&x0.to_array());
    y0[3..].copy_from_slice(&v0.to_array());
    let out = crate::ode::rk4(
        |_, s| {
            let x = BasePoint::new(s[0], s[1], s[2]);
            let v = CoordVector::new(s[3], s[4], s[5]);
            let (dx, dv) = base_geodesic_rhs(&x, &v);
            [dx.c1, dx.c2, dx.c3, dv.c1, dv.c2, dv.c3]
        },
        0.0,
        y0,
        cfg,
    )?;
    let traj = out.trajectory;
    let (points, velocities) = traj
        .samples
        .iter()
        .map(|s| (BasePoint::new(s[0], s[1], s[2]), CoordVector::new(s[3], s[4], s[5])))
        .unzip();
    super::curve::SampledCurve::new(traj.t0, traj.h, points, velocities)
}
