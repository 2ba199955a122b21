use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::heisenberg::{
    christoffel_coord, coord_to_frame, curvature_frame, frame_connection, frame_to_coord, BasePoint,
    CoordVector, FrameVector,
};

/// A point `(x, y)` of `TH3`; `fiber` holds the coordinate components `y^i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BundlePoint {
    pub base: BasePoint,
    pub fiber: CoordVector,
}

impl BundlePoint {
    pub const fn new(base: BasePoint, fiber: CoordVector) -> Self {
        Self { base, fiber }
    }

    /// Point over `base` whose fiber vector has the given frame components.
    pub fn from_frame_fiber(base: BasePoint, fiber: FrameVector) -> Self {
        Self { base, fiber: frame_to_coord(&base, &fiber) }
    }

    /// Fiber vector in frame components.
    pub fn fiber_frame(&self) -> FrameVector {
        coord_to_frame(&self.base, &self.fiber)
    }

    pub fn is_finite(&self) -> bool {
        self.base.is_finite() && self.fiber.is_finite()
    }
}

/// Tangent vector of `TH3` split as `X^H + Y^V`, both parts in frame components.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BundleVector {
    pub horizontal: FrameVector,
    pub vertical: FrameVector,
}

impl BundleVector {
    pub const fn new(horizontal: FrameVector, vertical: FrameVector) -> Self {
        Self { horizontal, vertical }
    }

    /// `E_i^H`, zero-based.
    pub fn h(i: usize) -> Self {
        Self::new(FrameVector::basis(i), FrameVector::default())
    }

    /// `E_i^V`, zero-based.
    pub fn v(i: usize) -> Self {
        Self::new(FrameVector::default(), FrameVector::basis(i))
    }

    pub fn to_array(self) -> [f64; 6] {
        let (h, v) = (self.horizontal.to_array(), self.vertical.to_array());
        [h[0], h[1], h[2], v[0], v[1], v[2]]
    }

    pub fn from_array(a: [f64; 6]) -> Self {
        Self::new(FrameVector::new(a[0], a[1], a[2]), FrameVector::new(a[3], a[4], a[5]))
    }

    /// Sasaki inner product; the adapted frame is orthonormal.
    pub fn dot(&self, other: &Self) -> f64 {
        self.horizontal.dot(&other.horizontal) + self.vertical.dot(&other.vertical)
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.horizontal.max_abs().max(self.vertical.max_abs())
    }

    /// Splits a coordinate tangent vector `dx^i d/dx^i + dy^i d/dy^i` at `at`
    /// into horizontal and vertical frame parts (`Dy = dy + Gamma(y, dx)`).
    pub fn from_coord_tangent(at: &BundlePoint, dx: &CoordVector, dy: &CoordVector) -> Self {
        let dy_cov = *dy + christoffel_coord(&at.base).contract(&at.fiber, dx);
        Self::new(coord_to_frame(&at.base, dx), coord_to_frame(&at.base, &dy_cov))
    }

    /// Inverse of [`BundleVector::from_coord_tangent`]: `(dx, dy)`.
    pub fn to_coord_tangent(&self, at: &BundlePoint) -> (CoordVector, CoordVector) {
        let dx = frame_to_coord(&at.base, &self.horizontal);
        let dy_cov = frame_to_coord(&at.base, &self.vertical);
        let dy = dy_cov - christoffel_coord(&at.base).contract(&at.fiber, &dx);
        (dx, dy)
    }
}

impl Add for BundleVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.horizontal + o.horizontal, self.vertical + o.vertical)
    }
}

impl Sub for BundleVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.horizontal - o.horizontal, self.vertical - o.vertical)
    }
}

impl Mul<f64> for BundleVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.horizontal * s, self.vertical * s)
    }
}

/// `g^s(U, V) = g(U_H, V_H) + g(U_V, V_V)`. The value does not depend on `at`
/// in the frame representation; the argument is kept for the coordinate form.
pub fn sasaki_metric(_at: &BundlePoint, u: &BundleVector, v: &BundleVector) -> f64 {
    u.dot(v)
}

/// The Sasaki quadratic form written in coordinates,
///
/// ```text
/// (dx1)^2 + (dx2)^2 + (dx3 + x2 dx1 - x1 dx2)^2
///   + (Dy1)^2 + (Dy2)^2 + (Dy3 + x2 Dy1 - x1 Dy2)^2,
/// ```
///
/// applied to the coordinate tangent vector `(dx, dy)` at `at`.
pub fn sasaki_quadratic_coords(at: &BundlePoint, dx: &CoordVector, dy: &CoordVector) -> f64 {
    let (x1, x2) = (at.base.x1, at.base.x2);
    let d = *dy + christoffel_coord(&at.base).contract(&at.fiber, dx);
    let th = dx.c3 + x2 * dx.c1 - x1 * dx.c2;
    let thy = d.c3 + x2 * d.c1 - x1 * d.c2;
    dx.c1 * dx.c1 + dx.c2 * dx.c2 + th * th + d.c1 * d.c1 + d.c2 * d.c2 + thy * thy
}

/// Levi-Civita connection of the Sasaki metric on fields whose frame-lift
/// coefficients are constant, at the point `at = (p, y)`:
///
/// ```text
/// nabla_{X^H} Y^H = (nabla_X Y)^H - 1/2 (R(X, Y) y)^V
/// nabla_{X^H} Y^V = (nabla_X Y)^V - 1/2 (R(Y, y) X)^H
/// nabla_{X^V} Y^H = -1/2 (R(X, y) Y)^H
/// nabla_{X^V} Y^V = 0
/// ```
pub fn sasaki_connection(at: &BundlePoint, u: &BundleVector, v: &BundleVector) -> BundleVector {
    let conn = frame_connection();
    let curv = curvature_frame();
    let y = at.fiber_frame();
    let (xh, xv) = (u.horizontal, u.vertical);
    let (yh, yv) = (v.horizontal, v.vertical);
    let horizontal =
        conn.covariant(&xh, &yh) - curv.apply(&yv, &y, &xh) * 0.5 - curv.apply(&xv, &y, &yh) * 0.5;
    let vertical = conn.covariant(&xh, &yv) - curv.apply(&xh, &yh, &y) * 0.5;
    BundleVector::new(horizontal, vertical)
}
