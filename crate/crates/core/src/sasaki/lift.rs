use crate::error::{GeometryError, Result};
use crate::heisenberg::{christoffel_coord, covariant_deriv_along, BasePoint, CoordVector, SampledCurve};
use crate::ode::Trajectory;
use crate::stencil;

use super::geodesic::{BundleState, BundleTrajectory};

/// Default bound on `|Dy/dt|` accepted from [`horizontal_lift_curve`].
pub const HORIZONTAL_LIFT_TOL: f64 = 1e-6;

fn transport_rate(x: &BasePoint, v: &CoordVector, y: &CoordVector) -> CoordVector {
    -christoffel_coord(x).contract(y, v)
}

/// Parallel transport of `y0` along a sampled base curve, on the curve's own
/// grid.
///
/// RK4 needs the base curve between samples; positions and velocities at
/// half steps are taken from a cubic through the four nearest samples. The
/// returned `yp` is `Dy/dt` recomputed by finite differences, and the lift
/// is rejected with [`GeometryError::LiftResidual`] if it exceeds `tol`.
pub fn horizontal_lift_curve(base: &SampledCurve, y0: CoordVector, tol: f64) -> Result<BundleTrajectory> {
    let n = base.len();
    if n < 3 {
        return Err(GeometryError::InsufficientSamples { needed: 3, got: n });
    }
    let h = base.h;
    let xs: Vec<[f64; 3]> = base.points.iter().map(|p| p.to_array()).collect();
    let vs: Vec<[f64; 3]> = base.velocities.iter().map(|v| v.to_array()).collect();

    let mut ys = Vec::with_capacity(n);
    let mut y = y0;
    ys.push(y);
    for i in 0..n - 1 {
        let (x0, v0) = (base.points[i], base.velocities[i]);
        let (x1, v1) = (base.points[i + 1], base.velocities[i + 1]);
        let xm = BasePoint::from_array(stencil::midpoint(&xs, i));
        let vm = CoordVector::from_array(stencil::midpoint(&vs, i));
        let k1 = transport_rate(&x0, &v0, &y);
        let k2 = transport_rate(&xm, &vm, &(y + k1 * (0.5 * h)));
        let k3 = transport_rate(&xm, &vm, &(y + k2 * (0.5 * h)));
        let k4 = transport_rate(&x1, &v1, &(y + k3 * h));
        y += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        if !y.is_finite() {
            return Err(GeometryError::NonFinite { t: base.time(i + 1) });
        }
        ys.push(y);
    }

    let yp = covariant_deriv_along(base, &ys)?;
    let max_residual = yp.iter().map(|d| d.max_abs()).fold(0.0, f64::max);
    if !(max_residual <= tol) {
        return Err(GeometryError::LiftResidual { max_residual, tolerance: tol });
    }
    Ok(assemble(base, ys, yp))
}

/// The curve `(x(t), dx/dt)` over a sampled base curve, with
/// `Dy/dt = d^2x/dt^2 + Gamma(dx/dt, dx/dt)` from finite differences of the
/// sampled velocities.
pub fn natural_lift_curve(base: &SampledCurve) -> Result<BundleTrajectory> {
    let acc = base.accelerations()?;
    let yp = acc
        .iter()
        .zip(base.points.iter().zip(&base.velocities))
        .map(|(a, (x, v))| *a + christoffel_coord(x).contract(v, v))
        .collect();
    Ok(assemble(base, base.velocities.clone(), yp))
}

fn assemble(base: &SampledCurve, ys: Vec<CoordVector>, yp: Vec<CoordVector>) -> BundleTrajectory {
    let samples = base
        .points
        .iter()
        .zip(&base.velocities)
        .zip(ys.into_iter().zip(yp))
        .map(|((x, v), (y, yp))| BundleState { x: *x, v: *v, y, yp })
        .collect();
    Trajectory { t0: base.t0, h: base.h, samples }
}
