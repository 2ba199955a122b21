use serde::{Deserialize, Serialize};

use super::types::{BasePoint, CoordVector, FrameVector};

/// Levi-Civita connection in the invariant frame: `nabla_{E_i} E_j = c[k][i][j] E_k`.
///
/// The frame is left-invariant, so the coefficients are constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectionTable {
    pub c: [[[f64; 3]; 3]; 3],
}

impl ConnectionTable {
    /// `nabla_X Y` for fields with constant frame coefficients.
    pub fn covariant(&self, x: &FrameVector, y: &FrameVector) -> FrameVector {
        let (x, y) = (x.to_array(), y.to_array());
        let mut out = [0.0; 3];
        for (k, o) in out.iter_mut().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    *o += self.c[k][i][j] * x[i] * y[j];
                }
            }
        }
        FrameVector::from_array(out)
    }

    /// `nabla_{E_i} E_j` as a frame vector.
    pub fn basis(&self, i: usize, j: usize) -> FrameVector {
        FrameVector::new(self.c[0][i][j], self.c[1][i][j], self.c[2][i][j])
    }

    /// Largest violation of `c[k][i][j] + c[j][i][k] = 0`.
    pub fn metric_compatibility_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    worst = worst.max((self.c[k][i][j] + self.c[j][i][k]).abs());
                }
            }
        }
        worst
    }
}

/// The constant connection table of `(H3, g)` in the frame `{E1, E2, E3}`:
///
/// ```text
/// nabla_E1 E1 = 0     nabla_E1 E2 = E3    nabla_E1 E3 = -E2
/// nabla_E2 E1 = -E3   nabla_E2 E2 = 0     nabla_E2 E3 = E1
/// nabla_E3 E1 = -E2   nabla_E3 E2 = E1    nabla_E3 E3 = 0
/// ```
pub fn frame_connection() -> ConnectionTable {
    let mut c = [[[0.0; 3]; 3]; 3];
    // c[k][i][j], zero-based
    c[2][0][1] = 1.0;
    c[1][0][2] = -1.0;
    c[2][1][0] = -1.0;
    c[0][1][2] = 1.0;
    c[1][2][0] = -1.0;
    c[0][2][1] = 1.0;
    ConnectionTable { c }
}

/// Coordinate Christoffel symbols, `gamma[h][i][j] = Gamma^h_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Christoffel(pub [[[f64; 3]; 3]; 3]);

impl Christoffel {
    /// `Gamma^h_ij a^i b^j`.
    pub fn contract(&self, a: &CoordVector, b: &CoordVector) -> CoordVector {
        let (a, b) = (a.to_array(), b.to_array());
        let mut out = [0.0; 3];
        for (h, o) in out.iter_mut().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    *o += self.0[h][i][j] * a[i] * b[j];
                }
            }
        }
        CoordVector::from_array(out)
    }

    pub fn get(&self, h: usize, i: usize, j: usize) -> f64 {
        self.0[h][i][j]
    }
}

/// Christoffel symbols of `g` at `p`, in closed form (polynomial in `x1`, `x2`).
pub fn christoffel_coord(p: &BasePoint) -> Christoffel {
    let (x1, x2) = (p.x1, p.x2);
    let mut g = [[[0.0; 3]; 3]; 3];
    let mut set = |h: usize, i: usize, j: usize, v: f64| {
        g[h][i][j] = v;
        g[h][j][i] = v;
    };
    set(0, 0, 1, x2);
    set(0, 1, 1, -2.0 * x1);
    set(0, 1, 2, 1.0);
    set(1, 0, 0, -2.0 * x2);
    set(1, 0, 1, x1);
    set(1, 0, 2, -1.0);
    set(2, 0, 0, -2.0 * x1 * x2);
    set(2, 0, 1, x1 * x1 - x2 * x2);
    set(2, 0, 2, -x1);
    set(2, 1, 1, 2.0 * x1 * x2);
    set(2, 1, 2, -x2);
    Christoffel(g)
}
