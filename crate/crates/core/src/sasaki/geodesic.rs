use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::heisenberg::{christoffel_coord, coord_to_frame, curvature_frame, frame_to_coord, BasePoint, CoordVector};
use crate::ode::{rk4, IntegratorConfig, Trajectory};

/// Phase-space state of a curve in `TH3`: base point, base velocity
/// `dx/dt`, fiber `y` and its covariant derivative `Dy/dt`, all in
/// coordinate components.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BundleState {
    pub x: BasePoint,
    pub v: CoordVector,
    pub y: CoordVector,
    pub yp: CoordVector,
}

pub type BundleTrajectory = Trajectory<BundleState>;

impl BundleState {
    pub fn to_array(&self) -> [f64; 12] {
        let mut a = [0.0; 12];
        a[0..3].copy_from_slice(&self.x.to_array());
        a[3..6].copy_from_slice(&self.v.to_array());
        a[6..9].copy_from_slice(&self.y.to_array());
        a[9..12].copy_from_slice(&self.yp.to_array());
        a
    }

    pub fn from_array(a: &[f64; 12]) -> Self {
        Self {
            x: BasePoint::new(a[0], a[1], a[2]),
            v: CoordVector::new(a[3], a[4], a[5]),
            y: CoordVector::new(a[6], a[7], a[8]),
            yp: CoordVector::new(a[9], a[10], a[11]),
        }
    }

    /// Largest componentwise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `dy/dt` recovered from `Dy/dt`.
    pub fn fiber_rate(&self) -> CoordVector {
        self.yp - christoffel_coord(&self.x).contract(&self.y, &self.v)
    }
}

/// Initial velocity `(u, v, w, l, m, n)` of a curve leaving the origin of `TH3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LiftInitialData {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

impl LiftInitialData {
    pub const fn new(u: f64, v: f64, w: f64, l: f64, m: f64, n: f64) -> Self {
        Self { u, v, w, l, m, n }
    }

    /// State at the bundle origin with `dx/dt = (u, v, w)` and `Dy/dt = (l, m, n)`.
    pub fn initial_state(&self) -> BundleState {
        BundleState {
            x: BasePoint::ORIGIN,
            v: CoordVector::new(self.u, self.v, self.w),
            y: CoordVector::default(),
            yp: CoordVector::new(self.l, self.m, self.n),
        }
    }

    /// Reads `(u, v, w)` and `(l, m, n)` off a state's velocities.
    pub fn from_state(s: &BundleState) -> Self {
        Self::new(s.v.c1, s.v.c2, s.v.c3, s.yp.c1, s.yp.c2, s.yp.c3)
    }
}

/// Time derivative of the state along a geodesic of the Sasaki metric:
///
/// ```text
/// dx/dt  = v
/// dv/dt  = -Gamma(v, v) - R(y, Dy/dt) v
/// dy/dt  = Dy/dt - Gamma(y, v)
/// d(Dy/dt)/dt = -Gamma(Dy/dt, v)
/// ```
///
/// which is `D^2x/dt^2 + R(y, Dy/dt) dx/dt = 0`, `D^2y/dt^2 = 0`. The
/// curvature term is evaluated on the constant frame table.
pub fn bundle_geodesic_rhs(s: &BundleState) -> BundleState {
    let gamma = christoffel_coord(&s.x);
    let x = &s.x;
    let r = curvature_frame().apply(
        &coord_to_frame(x, &s.y),
        &coord_to_frame(x, &s.yp),
        &coord_to_frame(x, &s.v),
    );
    BundleState {
        x: BasePoint::from_array(s.v.to_array()),
        v: -gamma.contract(&s.v, &s.v) - frame_to_coord(x, &r),
        y: s.yp - gamma.contract(&s.y, &s.v),
        yp: -gamma.contract(&s.yp, &s.v),
    }
}

/// Largest component of `rhs(state) - rate`, for curves with a known
/// analytic state derivative.
pub fn bundle_geodesic_defect(state: &BundleState, rate: &BundleState) -> f64 {
    bundle_geodesic_rhs(state).max_abs_diff(rate)
}

/// RK4 integration of [`bundle_geodesic_rhs`] from `init` at `t = 0`.
pub fn integrate_bundle_geodesic(init: &BundleState, cfg: &IntegratorConfig) -> Result<BundleTrajectory> {
    let out = rk4(
        |_, a| bundle_geodesic_rhs(&BundleState::from_array(a)).to_array(),
        0.0,
        init.to_array(),
        cfg,
    )?;
    Ok(out.trajectory.map(|a| BundleState::from_array(&a)))
}

/// Lagrangian of the Sasaki metric:
///
/// ```text
/// L = (x1')^2 + (x2')^2 + (x3' + x2 x1' - x1 x2')^2
///   + (Dy1)^2 + (Dy2)^2 + (Dy3 + x2 Dy1 - x1 Dy2)^2
/// ```
pub fn lagrangian(s: &BundleState) -> f64 {
    let (x1, x2) = (s.x.x1, s.x.x2);
    let (v, d) = (&s.v, &s.yp);
    let th = v.c3 + x2 * v.c1 - x1 * v.c2;
    let thy = d.c3 + x2 * d.c1 - x1 * d.c2;
    v.c1 * v.c1 + v.c2 * v.c2 + th * th + d.c1 * d.c1 + d.c2 * d.c2 + thy * thy
}

/// Per-sample values of the six first-integral forms of the Euler–Lagrange
/// equations for a curve leaving the origin with velocity `(u, v, w, l, m, n)`:
///
/// ```text
/// r1 = x3' + x2 x1' - x1 x2' - w
/// r2 = x1' + 2 w x2 - u
/// r3 = x2' - 2 w x1 - v
/// r4 = Dy3 + x2 Dy1 - x1 Dy2 - n
/// r5 = Dy1 + x2 n - l
/// r6 = Dy2 - x1 n - m
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElResiduals {
    pub t0: f64,
    pub h: f64,
    pub series: [Vec<f64>; 6],
}

impl ElResiduals {
    /// Max absolute value of each residual.
    pub fn max_abs(&self) -> [f64; 6] {
        std::array::from_fn(|i| self.series[i].iter().fold(0.0, |m: f64, r| m.max(r.abs())))
    }

    /// Max over all six residuals.
    pub fn overall_max(&self) -> f64 {
        self.max_abs().into_iter().fold(0.0, f64::max)
    }
}

/// Tolerance on `|x(0)|` for a trajectory to count as anchored at the origin.
const ANCHOR_TOL: f64 = 1e-12;

pub fn euler_lagrange_residuals(traj: &BundleTrajectory, init: &LiftInitialData) -> Result<ElResiduals> {
    let first = traj
        .samples
        .first()
        .ok_or(GeometryError::InsufficientSamples { needed: 1, got: 0 })?;
    let offset = first.x.to_array().iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if !(offset <= ANCHOR_TOL) {
        return Err(GeometryError::NotAnchored { offset });
    }
    let LiftInitialData { u, v, w, l, m, n } = *init;
    let mut series: [Vec<f64>; 6] = Default::default();
    for s in &traj.samples {
        let (x1, x2) = (s.x.x1, s.x.x2);
        let (dx, dy) = (&s.v, &s.yp);
        let r = [
            dx.c3 + x2 * dx.c1 - x1 * dx.c2 - w,
            dx.c1 + 2.0 * w * x2 - u,
            dx.c2 - 2.0 * w * x1 - v,
            dy.c3 + x2 * dy.c1 - x1 * dy.c2 - n,
            dy.c1 + x2 * n - l,
            dy.c2 - x1 * n - m,
        ];
        for (dst, ri) in series.iter_mut().zip(r) {
            dst.push(ri);
        }
    }
    Ok(ElResiduals { t0: traj.t0, h: traj.h, series })
}

/// Right-hand side `dy/dt` of the fiber system along the straight base
/// geodesic `(ut, vt, 0)`, transcribed term by term:
///
/// ```text
/// y1' = l - v n t - [t v^2 y1 - t u v y2 + v y3]
/// y2' = m + u n t - [-t u v y1 + t u^2 y2 - u y3]
/// y3' = n - [v(1 - t^2 u^2 - t^2 v^2) y1 + u(1 + t^2 u^2 + t^2 v^2) y2
///            - t (u^2 + v^2) y3 + t v (l - v n t) - t u (m + u n t)]
/// ```
pub fn sist_rhs(y: &CoordVector, t: f64, init: &LiftInitialData) -> CoordVector {
    let LiftInitialData { u, v, l, m, n, .. } = *init;
    let (y1, y2, y3) = (y.c1, y.c2, y.c3);
    let t2 = t * t;
    let d1 = l - v * n * t - (t * v * v * y1 - t * u * v * y2 + v * y3);
    let d2 = m + u * n * t - (-t * u * v * y1 + t * u * u * y2 - u * y3);
    let d3 = n
        - (v * (1.0 - t2 * u * u - t2 * v * v) * y1 + u * (1.0 + t2 * u * u + t2 * v * v) * y2
            - t * (u * u + v * v) * y3
            + t * v * (l - v * n * t)
            - t * u * (m + u * n * t));
    CoordVector::new(d1, d2, d3)
}

/// The fiber curve `(0, 0, 0, lt, mt, nt)` at time `t`.
pub fn fiber_geodesic(l: f64, m: f64, n: f64, t: f64) -> BundleState {
    BundleState {
        x: BasePoint::ORIGIN,
        v: CoordVector::default(),
        y: CoordVector::new(l * t, m * t, n * t),
        yp: CoordVector::new(l, m, n),
    }
}

/// Time derivative of [`fiber_geodesic`].
pub fn fiber_geodesic_rate(l: f64, m: f64, n: f64, _t: f64) -> BundleState {
    BundleState { y: CoordVector::new(l, m, n), ..Default::default() }
}

/// The curve `(ut, vt, 0, lt, 0, -lvt^2)` at time `t`, with `Dy/dt` computed
/// from the Christoffel symbols along it.
pub fn special_geodesic(u: f64, v: f64, l: f64, t: f64) -> BundleState {
    let x = BasePoint::new(u * t, v * t, 0.0);
    let vel = CoordVector::new(u, v, 0.0);
    let y = CoordVector::new(l * t, 0.0, -l * v * t * t);
    let dy = CoordVector::new(l, 0.0, -2.0 * l * v * t);
    let yp = dy + christoffel_coord(&x).contract(&y, &vel);
    BundleState { x, v: vel, y, yp }
}

/// Time derivative of [`special_geodesic`]. Along this curve
/// `Gamma(y, dx/dt)` vanishes identically, so `Dy/dt = (l, 0, -2lvt)`.
pub fn special_geodesic_rate(u: f64, v: f64, l: f64, t: f64) -> BundleState {
    BundleState {
        x: BasePoint::new(u, v, 0.0),
        v: CoordVector::default(),
        y: CoordVector::new(l, 0.0, -2.0 * l * v * t),
        yp: CoordVector::new(0.0, 0.0, -2.0 * l * v),
    }
}
