//! Finite-difference and interpolation stencils on uniformly sampled series.
//!
//! Derivatives use five-point fourth-order stencils (one-sided at the two
//! samples nearest each end) when at least five samples exist, and the
//! three-point second-order stencils otherwise.

use crate::error::{GeometryError, Result};

/// Derivative of a uniformly sampled vector series with spacing `h`.
pub fn derivative<const N: usize>(values: &[[f64; N]], h: f64) -> Result<Vec<[f64; N]>> {
    let n = values.len();
    if n < 3 {
        return Err(GeometryError::InsufficientSamples { needed: 3, got: n });
    }
    let combine = |idx: [usize; 5], w: [f64; 5], scale: f64| -> [f64; N] {
        let mut out = [0.0; N];
        for (k, o) in out.iter_mut().enumerate() {
            let mut s = 0.0;
            for (i, wi) in idx.iter().zip(w.iter()) {
                s += wi * values[*i][k];
            }
            *o = s / scale;
        }
        out
    };
    let mut out = Vec::with_capacity(n);
    if n < 5 {
        let h2 = 2.0 * h;
        for i in 0..n {
            let d = if i == 0 {
                combine([0, 1, 2, 0, 0], [-3.0, 4.0, -1.0, 0.0, 0.0], h2)
            } else if i == n - 1 {
                combine([n - 1, n - 2, n - 3, 0, 0], [3.0, -4.0, 1.0, 0.0, 0.0], h2)
            } else {
                combine([i - 1, i + 1, 0, 0, 0], [-1.0, 1.0, 0.0, 0.0, 0.0], h2)
            };
            out.push(d);
        }
        return Ok(out);
    }
    let h12 = 12.0 * h;
    for i in 0..n {
        let d = match i {
            0 => combine([0, 1, 2, 3, 4], [-25.0, 48.0, -36.0, 16.0, -3.0], h12),
            1 => combine([0, 1, 2, 3, 4], [-3.0, -10.0, 18.0, -6.0, 1.0], h12),
            _ if i == n - 1 => combine(
                [n - 1, n - 2, n - 3, n - 4, n - 5],
                [25.0, -48.0, 36.0, -16.0, 3.0],
                h12,
            ),
            _ if i == n - 2 => combine(
                [n - 1, n - 2, n - 3, n - 4, n - 5],
                [3.0, 10.0, -18.0, 6.0, -1.0],
                h12,
            ),
            _ => combine(
                [i - 2, i - 1, i + 1, i + 2, i],
                [1.0, -8.0, 8.0, -1.0, 0.0],
                h12,
            ),
        };
        out.push(d);
    }
    Ok(out)
}

/// Value halfway between samples `i` and `i + 1`, by cubic interpolation
/// through four neighbouring samples (shifted inward at the ends). Falls back
/// to the linear midpoint when fewer than four samples exist.
pub fn midpoint<const N: usize>(values: &[[f64; N]], i: usize) -> [f64; N] {
    let n = values.len();
    debug_assert!(i + 1 < n);
    let mut out = [0.0; N];
    if n < 4 {
        for (k, o) in out.iter_mut().enumerate() {
            *o = 0.5 * (values[i][k] + values[i + 1][k]);
        }
        return out;
    }
    // Lagrange weights for the point halfway between the middle two nodes of
    // four, or between nodes 0-1 / 2-3 when shifted to an end.
    let (start, w): (usize, [f64; 4]) = if i == 0 {
        (0, [5.0, 15.0, -5.0, 1.0])
    } else if i + 2 >= n {
        (n - 4, [1.0, -5.0, 15.0, 5.0])
    } else {
        (i - 1, [-1.0, 9.0, 9.0, -1.0])
    };
    for (k, o) in out.iter_mut().enumerate() {
        let mut s = 0.0;
        for (j, wj) in w.iter().enumerate() {
            s += wj * values[start + j][k];
        }
        *o = s / 16.0;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_needs_three_samples() {
        let err = derivative(&[[0.0], [1.0]], 0.1).unwrap_err();
        assert_eq!(err, GeometryError::InsufficientSamples { needed: 3, got: 2 });
    }

    #[test]
    fn fourth_order_stencils_are_exact_on_quartics() {
        let h = 0.1;
        let f = |t: f64| [t.powi(4) - 2.0 * t.powi(3) + t - 1.0];
        let df = |t: f64| 4.0 * t.powi(3) - 6.0 * t * t + 1.0;
        let vals: Vec<_> = (0..9).map(|i| f(i as f64 * h)).collect();
        let d = derivative(&vals, h).unwrap();
        for (i, di) in d.iter().enumerate() {
            assert!((di[0] - df(i as f64 * h)).abs() < 1e-12, "i = {i}");
        }
    }

    #[test]
    fn short_series_uses_second_order() {
        let h = 0.5;
        let vals: Vec<_> = (0..4).map(|i| [(i as f64 * h).powi(2)]).collect();
        let d = derivative(&vals, h).unwrap();
        for (i, di) in d.iter().enumerate() {
            assert!((di[0] - 2.0 * i as f64 * h).abs() < 1e-12);
        }
    }

    #[test]
    fn midpoint_exact_on_cubics() {
        let h = 0.25;
        let f = |t: f64| [t * t * t - t, 2.0 * t * t];
        let vals: Vec<_> = (0..6).map(|i| f(i as f64 * h)).collect();
        for i in 0..5 {
            let m = midpoint(&vals, i);
            let e = f((i as f64 + 0.5) * h);
            assert!((m[0] - e[0]).abs() < 1e-13 && (m[1] - e[1]).abs() < 1e-13, "i = {i}");
        }
    }
}
