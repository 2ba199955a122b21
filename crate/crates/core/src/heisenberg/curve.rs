use serde::{Deserialize, Serialize};

use super::connection::christoffel_coord;
use super::types::{BasePoint, CoordVector};
use crate::error::{GeometryError, Result};
use crate::stencil;

/// A curve in `H3` sampled on the uniform grid `t_k = t0 + k h`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledCurve {
    pub t0: f64,
    pub h: f64,
    pub points: Vec<BasePoint>,
    pub velocities: Vec<CoordVector>,
}

impl SampledCurve {
    /// Curve with known velocities.
    pub fn new(
        t0: f64,
        h: f64,
        points: Vec<BasePoint>,
        velocities: Vec<CoordVector>,
    ) -> Result<Self> {
        if !(h > 0.0) {
            return Err(GeometryError::InvalidConfig(format!("step must be positive, got {h}")));
        }
        if points.len() != velocities.len() {
            return Err(GeometryError::LengthMismatch {
                curve: points.len(),
                field: velocities.len(),
            });
        }
        if points.is_empty() {
            return Err(GeometryError::InsufficientSamples { needed: 1, got: 0 });
        }
        Ok(Self { t0, h, points, velocities })
    }

    /// Curve from positions only; velocities by finite differences.
    pub fn from_points(t0: f64, h: f64, points: Vec<BasePoint>) -> Result<Self> {
        let raw: Vec<[f64; 3]> = points.iter().map(|p| p.to_array()).collect();
        let vel = stencil::derivative(&raw, h)?
            .into_iter()
            .map(CoordVector::from_array)
            .collect();
        Self::new(t0, h, points, vel)
    }

    /// Samples `n` points of an analytic curve given as `t -> (x(t), x'(t))`.
    pub fn from_fn(
        t0: f64,
        h: f64,
        n: usize,
        f: impl Fn(f64) -> (BasePoint, CoordVector),
    ) -> Result<Self> {
        let (points, velocities) = (0..n).map(|k| f(t0 + k as f64 * h)).unzip();
        Self::new(t0, h, points, velocities)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.h
    }

    /// Finite-difference acceleration of the sampled velocities.
    pub fn accelerations(&self) -> Result<Vec<CoordVector>> {
        let raw: Vec<[f64; 3]> = self.velocities.iter().map(|v| v.to_array()).collect();
        Ok(stencil::derivative(&raw, self.h)?
            .into_iter()
            .map(CoordVector::from_array)
            .collect())
    }
}

/// `Dy^i/dt = dy^i/dt + Gamma^i_kj y^k dx^j/dt` for a field `y` sampled on the
/// same grid as `curve`.
pub fn covariant_deriv_along(curve: &SampledCurve, y: &[CoordVector]) -> Result<Vec<CoordVector>> {
    if y.len() != curve.len() {
        return Err(GeometryError::LengthMismatch { curve: curve.len(), field: y.len() });
    }
    let raw: Vec<[f64; 3]> = y.iter().map(|v| v.to_array()).collect();
    let dy = stencil::derivative(&raw, curve.h)?;
    Ok(dy
        .into_iter()
        .zip(y)
        .zip(curve.points.iter().zip(&curve.velocities))
        .map(|((d, yk), (p, v))| CoordVector::from_array(d) + christoffel_coord(p).contract(yk, v))
        .collect())
}
