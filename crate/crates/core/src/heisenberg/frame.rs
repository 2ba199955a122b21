use super::types::{BasePoint, CoordVector, FrameVector, MetricMatrix};

/// Coefficients of the contact form `theta3 = dx3 + x2 dx1 - x1 dx2` at `p`.
#[inline]
fn theta3(p: &BasePoint) -> [f64; 3] {
    [p.x2, -p.x1, 1.0]
}

/// `g_ij(p)` expanded from `(dx1)^2 + (dx2)^2 + theta3^2`.
pub fn metric_at(p: &BasePoint) -> MetricMatrix {
    let t = theta3(p);
    let mut g = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            g[i][j] = t[i] * t[j];
        }
    }
    g[0][0] += 1.0;
    g[1][1] += 1.0;
    MetricMatrix(g)
}

/// The invariant frame `E1 = d1 - x2 d3`, `E2 = d2 + x1 d3`, `E3 = d3` at `p`.
pub fn frame_at(p: &BasePoint) -> [CoordVector; 3] {
    [
        CoordVector::new(1.0, 0.0, -p.x2),
        CoordVector::new(0.0, 1.0, p.x1),
        CoordVector::new(0.0, 0.0, 1.0),
    ]
}

/// Frame components of a coordinate vector: `(c1, c2, theta3(c))`.
pub fn coord_to_frame(p: &BasePoint, x: &CoordVector) -> FrameVector {
    FrameVector::new(x.c1, x.c2, x.c3 + p.x2 * x.c1 - p.x1 * x.c2)
}

/// Inverse of [`coord_to_frame`].
pub fn frame_to_coord(p: &BasePoint, a: &FrameVector) -> CoordVector {
    CoordVector::new(a.a1, a.a2, a.a3 - p.x2 * a.a1 + p.x1 * a.a2)
}
