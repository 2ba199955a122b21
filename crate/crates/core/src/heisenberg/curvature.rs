use serde::{Deserialize, Serialize};

use super::connection::ConnectionTable;
use super::types::FrameVector;

type Rank4 = [[[[f64; 3]; 3]; 3]; 3];

/// Curvature of `(H3, g)` in the frame, with the conventions
/// `R(E_a, E_b) E_c = R^i_{cab} E_i` and `R(X, Y, Z, W) = g(R(X, Y) W, Z)`.
///
/// `r_up[i][c][a][b] = R^i_{cab}`, `r_down[a][b][c][d] = R_{abcd}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureTable {
    pub r_up: Rank4,
    pub r_down: Rank4,
}

impl CurvatureTable {
    /// Builds the table from `R^i_{cab}` alone; the frame is orthonormal so
    /// `R_{abcd} = R^c_{dab}`.
    pub fn from_r_up(r_up: Rank4) -> Self {
        let mut r_down = [[[[0.0; 3]; 3]; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        r_down[a][b][c][d] = r_up[c][d][a][b];
                    }
                }
            }
        }
        CurvatureTable { r_up, r_down }
    }

    /// `R(X, Y) Z`.
    pub fn apply(&self, x: &FrameVector, y: &FrameVector, z: &FrameVector) -> FrameVector {
        let (x, y, z) = (x.to_array(), y.to_array(), z.to_array());
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            for c in 0..3 {
                if z[c] == 0.0 {
                    continue;
                }
                for a in 0..3 {
                    for b in 0..3 {
                        *o += self.r_up[i][c][a][b] * x[a] * y[b] * z[c];
                    }
                }
            }
        }
        FrameVector::from_array(out)
    }

    /// Sectional curvature of the plane spanned by the orthonormal pair `E_a, E_b`.
    pub fn sectional(&self, a: usize, b: usize) -> f64 {
        self.r_down[a][b][a][b]
    }

    /// Largest violation among `R_abcd = -R_bacd`, `R_abcd = -R_abdc`, `R_abcd = R_cdab`.
    pub fn symmetry_defect(&self) -> f64 {
        let r = &self.r_down;
        let mut worst = 0.0f64;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let v = r[a][b][c][d];
                        worst = worst
                            .max((v + r[b][a][c][d]).abs())
                            .max((v + r[a][b][d][c]).abs())
                            .max((v - r[c][d][a][b]).abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest component of `R(X,Y)Z + R(Y,Z)X + R(Z,X)Y` over frame triples.
    pub fn bianchi_defect(&self) -> f64 {
        let e = |i| FrameVector::basis(i);
        let mut worst = 0.0f64;
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    let s = self.apply(&e(x), &e(y), &e(z))
                        + self.apply(&e(y), &e(z), &e(x))
                        + self.apply(&e(z), &e(x), &e(y));
                    worst = worst.max(s.max_abs());
                }
            }
        }
        worst
    }
}

/// The curvature table of `(H3, g)`, populated from its non-vanishing
/// components
///
/// ```text
/// R^2_112 = 3,  R^3_113 = -1,  R^1_212 = -3,
/// R^1_313 = 1,  R^3_223 = -1,  R^2_323 = 1
/// ```
///
/// and antisymmetry in the last two indices.
pub fn curvature_frame() -> CurvatureTable {
    let mut r = [[[[0.0; 3]; 3]; 3]; 3];
    // (i, c, a, b) one-based, value
    let entries = [
        (2, 1, 1, 2, 3.0),
        (3, 1, 1, 3, -1.0),
        (1, 2, 1, 2, -3.0),
        (1, 3, 1, 3, 1.0),
        (3, 2, 2, 3, -1.0),
        (2, 3, 2, 3, 1.0),
    ];
    for (i, c, a, b, v) in entries {
        r[i - 1][c - 1][a - 1][b - 1] = v;
        r[i - 1][c - 1][b - 1][a - 1] = -v;
    }
    CurvatureTable::from_r_up(r)
}

/// `R(X, Y) Z` with the table of [`curvature_frame`].
pub fn curvature_apply(x: &FrameVector, y: &FrameVector, z: &FrameVector) -> FrameVector {
    curvature_frame().apply(x, y, z)
}

/// `R(E_a,E_b)E_c = D_a D_b E_c - D_b D_a E_c - D_[E_a,E_b] E_c` evaluated on
/// the connection table, with `[E1,E2] = 2 E3` and the other brackets zero.
pub fn curvature_from_connection(conn: &ConnectionTable) -> CurvatureTable {
    let e = FrameVector::basis;
    let bracket = |a: usize, b: usize| match (a, b) {
        (0, 1) => e(2) * 2.0,
        (1, 0) => e(2) * -2.0,
        _ => FrameVector::default(),
    };
    let mut r = [[[[0.0; 3]; 3]; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let v = conn.covariant(&e(a), &conn.covariant(&e(b), &e(c)))
                    - conn.covariant(&e(b), &conn.covariant(&e(a), &e(c)))
                    - conn.covariant(&bracket(a, b), &e(c));
                for (i, vi) in v.to_array().into_iter().enumerate() {
                    r[i][c][a][b] = vi;
                }
            }
        }
    }
    CurvatureTable::from_r_up(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::connection::frame_connection;
    use proptest::prelude::*;

    fn e(i: usize) -> FrameVector {
        FrameVector::basis(i)
    }

    #[test]
    fn stored_constants() {
        let t = curvature_frame();
        assert_eq!(t.r_up[1][0][0][1], 3.0);
        assert_eq!(t.r_up[2][0][0][2], -1.0);
        assert_eq!(t.r_up[0][1][0][1], -3.0);
        assert_eq!(t.r_up[0][2][0][2], 1.0);
        assert_eq!(t.r_up[2][1][1][2], -1.0);
        assert_eq!(t.r_up[1][2][1][2], 1.0);
        assert_eq!(t.r_down[0][1][0][1], -3.0);
        assert_eq!(t.r_down[0][2][0][2], 1.0);
        assert_eq!(t.r_down[1][2][1][2], 1.0);
    }

    #[test]
    fn symmetries_and_bianchi_exact() {
        let t = curvature_frame();
        assert_eq!(t.symmetry_defect(), 0.0);
        assert_eq!(t.bianchi_defect(), 0.0);
    }

    #[test]
    fn sectional_curvatures() {
        let t = curvature_frame();
        assert_eq!(t.sectional(0, 1), -3.0);
        assert_eq!(t.sectional(0, 2), 1.0);
        assert_eq!(t.sectional(1, 2), 1.0);
    }

    #[test]
    fn apply_examples() {
        assert_eq!(curvature_apply(&e(0), &e(1), &e(1)), e(0) * -3.0);
        assert_eq!(curvature_apply(&e(0), &e(2), &e(2)), e(0));
    }

    /// `R(E_a,E_b)E_c = nabla_a nabla_b E_c - nabla_b nabla_a E_c - nabla_[E_a,E_b] E_c`
    /// with constant coefficients, `[E1,E2] = 2 E3`, other brackets zero.
    #[test]
    fn library_recomputation_matches() {
        assert_eq!(curvature_from_connection(&frame_connection()), curvature_frame());
    }

    #[test]
    fn recomputed_from_connection() {
        let conn = frame_connection();
        let bracket = |a: usize, b: usize| -> FrameVector {
            match (a, b) {
                (0, 1) => e(2) * 2.0,
                (1, 0) => e(2) * -2.0,
                _ => FrameVector::default(),
            }
        };
        let t = curvature_frame();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let inner_b = conn.covariant(&e(b), &e(c));
                    let inner_a = conn.covariant(&e(a), &e(c));
                    let r = conn.covariant(&e(a), &inner_b)
                        - conn.covariant(&e(b), &inner_a)
                        - conn.covariant(&bracket(a, b), &e(c));
                    assert_eq!(r, t.apply(&e(a), &e(b), &e(c)), "R(E{a},E{b})E{c}");
                }
            }
        }
    }

    #[test]
    fn sign_flip_breaks_bianchi() {
        let mut t = curvature_frame();
        t.r_up[1][0][0][1] = -t.r_up[1][0][0][1];
        assert!(t.bianchi_defect() > 1.0);
    }

    fn comp() -> impl Strategy<Value = f64> {
        -5.0..5.0f64
    }

    proptest! {
        #[test]
        fn antisymmetric_in_first_pair(
            x in prop::array::uniform3(comp()),
            z in prop::array::uniform3(comp()),
        ) {
            let x = FrameVector::from_array(x);
            let z = FrameVector::from_array(z);
            prop_assert!(curvature_apply(&x, &x, &z).max_abs() < 1e-12);
        }
    }
}
