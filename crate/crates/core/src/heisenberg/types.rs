use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point of `H3` in the global chart `(x1, x2, x3)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BasePoint {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

/// Tangent vector components on the coordinate basis `d/dx^i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CoordVector {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

/// Tangent vector components on the invariant orthonormal frame `{E1, E2, E3}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FrameVector {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

macro_rules! triple {
    ($ty:ident, $f1:ident, $f2:ident, $f3:ident) => {
        impl $ty {
            pub const fn new($f1: f64, $f2: f64, $f3: f64) -> Self {
                Self { $f1, $f2, $f3 }
            }

            pub const fn from_array(a: [f64; 3]) -> Self {
                Self::new(a[0], a[1], a[2])
            }

            pub const fn to_array(self) -> [f64; 3] {
                [self.$f1, self.$f2, self.$f3]
            }

            pub fn is_finite(&self) -> bool {
                self.$f1.is_finite() && self.$f2.is_finite() && self.$f3.is_finite()
            }

            /// Largest absolute component.
            pub fn max_abs(&self) -> f64 {
                self.$f1.abs().max(self.$f2.abs()).max(self.$f3.abs())
            }
        }

        impl From<[f64; 3]> for $ty {
            fn from(a: [f64; 3]) -> Self {
                Self::from_array(a)
            }
        }

        impl From<$ty> for [f64; 3] {
            fn from(v: $ty) -> Self {
                v.to_array()
            }
        }
    };
}

macro_rules! vector_ops {
    ($ty:ident, $f1:ident, $f2:ident, $f3:ident) => {
        impl $ty {
            /// Euclidean dot product of the components.
            pub fn dot(&self, other: &Self) -> f64 {
                self.$f1 * other.$f1 + self.$f2 * other.$f2 + self.$f3 * other.$f3
            }
        }

        impl Add for $ty {
            type Output = Self;
            fn add(self, o: Self) -> Self {
                Self::new(self.$f1 + o.$f1, self.$f2 + o.$f2, self.$f3 + o.$f3)
            }
        }

        impl AddAssign for $ty {
            fn add_assign(&mut self, o: Self) {
                *self = *self + o;
            }
        }

        impl Sub for $ty {
            type Output = Self;
            fn sub(self, o: Self) -> Self {
                Self::new(self.$f1 - o.$f1, self.$f2 - o.$f2, self.$f3 - o.$f3)
            }
        }

        impl Neg for $ty {
            type Output = Self;
            fn neg(self) -> Self {
                Self::new(-self.$f1, -self.$f2, -self.$f3)
            }
        }

        impl Mul<f64> for $ty {
            type Output = Self;
            fn mul(self, s: f64) -> Self {
                Self::new(self.$f1 * s, self.$f2 * s, self.$f3 * s)
            }
        }

        impl Mul<$ty> for f64 {
            type Output = $ty;
            fn mul(self, v: $ty) -> $ty {
                v * self
            }
        }
    };
}

triple!(BasePoint, x1, x2, x3);
triple!(CoordVector, c1, c2, c3);
triple!(FrameVector, a1, a2, a3);
vector_ops!(CoordVector, c1, c2, c3);
vector_ops!(FrameVector, a1, a2, a3);

impl BasePoint {
    pub const ORIGIN: BasePoint = BasePoint::new(0.0, 0.0, 0.0);

    /// Moves the point along a coordinate displacement.
    pub fn offset(self, d: CoordVector) -> BasePoint {
        BasePoint::new(self.x1 + d.c1, self.x2 + d.c2, self.x3 + d.c3)
    }

    /// Coordinate difference `self - other`.
    pub fn diff(self, other: BasePoint) -> CoordVector {
        CoordVector::new(self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3)
    }
}

impl FrameVector {
    /// `E_i` for `i` in `0..3`.
    pub fn basis(i: usize) -> FrameVector {
        let mut a = [0.0; 3];
        a[i] = 1.0;
        FrameVector::from_array(a)
    }

    /// Squared `g`-norm. The frame is orthonormal, so this is the Euclidean norm
    /// of the coefficients.
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

impl CoordVector {
    pub fn basis(i: usize) -> CoordVector {
        let mut a = [0.0; 3];
        a[i] = 1.0;
        CoordVector::from_array(a)
    }
}

/// Components `g_ij(p)` of the metric in the coordinate basis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricMatrix(pub [[f64; 3]; 3]);

impl MetricMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    /// `g(u, v)` for coordinate vectors.
    pub fn inner(&self, u: &CoordVector, v: &CoordVector) -> f64 {
        let (u, v) = (u.to_array(), v.to_array());
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += self.0[i][j] * u[i] * v[j];
            }
        }
        s
    }

    /// Leading principal minors, in order of size.
    pub fn leading_minors(&self) -> [f64; 3] {
        let g = &self.0;
        let m1 = g[0][0];
        let m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        let m3 = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
            - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
        [m1, m2, m3]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.0[i][j] == self.0[j][i]))
    }

    pub fn is_positive_definite(&self) -> bool {
        self.leading_minors().iter().all(|m| *m > 0.0)
    }
}
