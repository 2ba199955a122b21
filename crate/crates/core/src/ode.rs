//! Fixed-step classical Runge–Kutta integration and residual scans.

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};

/// Step, horizon and optional step-halving error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub h: f64,
    pub t_max: f64,
    pub error_check: bool,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self { h: 1e-3, t_max: 10.0, error_check: false }
    }
}

impl IntegratorConfig {
    pub fn new(h: f64, t_max: f64) -> Self {
        Self { h, t_max, error_check: false }
    }

    pub fn with_error_check(mut self, on: bool) -> Self {
        self.error_check = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(GeometryError::InvalidConfig(format!("step must be positive, got {}", self.h)));
        }
        if !(self.t_max >= 0.0 && self.t_max.is_finite()) {
            return Err(GeometryError::InvalidConfig(format!(
                "horizon must be non-negative, got {}",
                self.t_max
            )));
        }
        Ok(())
    }

    /// Number of steps: `t_max / h` rounded to the nearest integer.
    pub fn steps(&self) -> usize {
        (self.t_max / self.h).round() as usize
    }
}

/// Samples on the uniform grid `t_k = t0 + k h`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory<S> {
    pub t0: f64,
    pub h: f64,
    pub samples: Vec<S>,
}

impl<S> Trajectory<S> {
    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.h
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &S)> {
        self.samples.iter().enumerate().map(move |(k, s)| (self.time(k), s))
    }

    pub fn map<T>(self, f: impl FnMut(S) -> T) -> Trajectory<T> {
        Trajectory { t0: self.t0, h: self.h, samples: self.samples.into_iter().map(f).collect() }
    }
}

/// Output of [`rk4`].
#[derive(Clone, Debug, PartialEq)]
pub struct Integration<const N: usize> {
    pub trajectory: Trajectory<[f64; N]>,
    /// Max componentwise difference against the same run at `h / 2`, when requested.
    pub halving_error: Option<f64>,
}

fn axpy<const N: usize>(y: &[f64; N], a: f64, k: &[f64; N]) -> [f64; N] {
    let mut out = *y;
    for (o, ki) in out.iter_mut().zip(k) {
        *o += a * ki;
    }
    out
}

fn run<const N: usize, F>(rhs: &F, t0: f64, y0: [f64; N], h: f64, steps: usize) -> Result<Vec<[f64; N]>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = y0;
    if y.iter().any(|c| !c.is_finite()) {
        return Err(GeometryError::NonFinite { t: t0 });
    }
    out.push(y);
    for k in 0..steps {
        let t = t0 + k as f64 * h;
        let k1 = rhs(t, &y);
        let k2 = rhs(t + 0.5 * h, &axpy(&y, 0.5 * h, &k1));
        let k3 = rhs(t + 0.5 * h, &axpy(&y, 0.5 * h, &k2));
        let k4 = rhs(t + h, &axpy(&y, h, &k3));
        for i in 0..N {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if y.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite { t: t0 + (k + 1) as f64 * h });
        }
        out.push(y);
    }
    Ok(out)
}

/// Classical fourth-order Runge–Kutta with a fixed step from `t0` over
/// `cfg.t_max`. The result has `cfg.steps() + 1` samples.
pub fn rk4<const N: usize, F>(rhs: F, t0: f64, y0: [f64; N], cfg: &IntegratorConfig) -> Result<Integration<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    cfg.validate()?;
    let steps = cfg.steps();
    let samples = run(&rhs, t0, y0, cfg.h, steps)?;
    let halving_error = if cfg.error_check {
        let fine = run(&rhs, t0, y0, 0.5 * cfg.h, 2 * steps)?;
        let worst = samples
            .iter()
            .zip(fine.iter().step_by(2))
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max);
        Some(worst)
    } else {
        None
    };
    Ok(Integration { trajectory: Trajectory { t0, h: cfg.h, samples }, halving_error })
}

/// Maximum of `|f(t, s)|` over a trajectory and where it occurs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    pub max_abs: f64,
    pub t_at_max: f64,
}

/// A scalar residual of a sample at time `t`.
pub type ResidualFn<'a, S> = &'a dyn Fn(f64, &S) -> f64;

/// Evaluates each residual function over every sample.
pub fn residual_scan<S>(
    trajectory: &Trajectory<S>,
    functions: &[ResidualFn<'_, S>],
) -> Vec<ResidualSummary> {
    functions
        .iter()
        .map(|f| {
            let mut best = ResidualSummary { max_abs: 0.0, t_at_max: trajectory.t0 };
            for (t, s) in trajectory.iter() {
                let r = f(t, s).abs();
                // NaN counts as worst
                if r > best.max_abs || r.is_nan() {
                    best = ResidualSummary { max_abs: r, t_at_max: t };
                    if r.is_nan() {
                        break;
                    }
                }
            }
            best
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rhs_keeps_state() {
        let out = rk4(|_, _| [0.0; 3], 0.0, [1.0, -2.0, 3.5], &IntegratorConfig::new(0.1, 1.0)).unwrap();
        assert_eq!(out.trajectory.len(), 11);
        assert!(out.trajectory.samples.iter().all(|s| *s == [1.0, -2.0, 3.5]));
    }

    #[test]
    fn exponential_growth() {
        let out = rk4(|_, y| [y[0]], 0.0, [1.0], &IntegratorConfig::new(1e-3, 1.0)).unwrap();
        let last = out.trajectory.samples.last().unwrap()[0];
        assert!((last - std::f64::consts::E).abs() < 1e-12, "{last}");
    }

    #[test]
    fn convergence_order() {
        let err = |h: f64| {
            let out = rk4(|_, y| [y[0]], 0.0, [1.0], &IntegratorConfig::new(h, 1.0)).unwrap();
            (out.trajectory.samples.last().unwrap()[0] - std::f64::consts::E).abs()
        };
        let e: Vec<f64> = [1e-1, 5e-2, 2.5e-2].iter().map(|h| err(*h)).collect();
        for w in e.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!(order >= 3.8, "order {order}");
        }
    }

    #[test]
    fn time_dependent_rhs() {
        // y' = 2t, y(1) = 1  =>  y = t^2
        let out = rk4(|t, _| [2.0 * t], 1.0, [1.0], &IntegratorConfig::new(0.25, 2.0)).unwrap();
        for (t, y) in out.trajectory.iter() {
            assert!((y[0] - t * t).abs() < 1e-12);
        }
    }

    #[test]
    fn blow_up_is_reported() {
        let err = rk4(|_, y| [y[0] * y[0]], 0.0, [1.0], &IntegratorConfig::new(0.1, 5.0)).unwrap_err();
        match err {
            GeometryError::NonFinite { t } => assert!(t > 0.9 && t < 5.0, "{t}"),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn invalid_config() {
        assert!(rk4(|_, y| *y, 0.0, [1.0], &IntegratorConfig::new(0.0, 1.0)).is_err());
        assert!(rk4(|_, y| *y, 0.0, [1.0], &IntegratorConfig::new(0.1, -1.0)).is_err());
    }

    #[test]
    fn halving_error_is_small_and_deterministic() {
        let cfg = IntegratorConfig::new(1e-2, 1.0).with_error_check(true);
        let a = rk4(|_, y| [y[1], -y[0]], 0.0, [1.0, 0.0], &cfg).unwrap();
        let b = rk4(|_, y| [y[1], -y[0]], 0.0, [1.0, 0.0], &cfg).unwrap();
        assert_eq!(a, b);
        let e = a.halving_error.unwrap();
        assert!(e > 0.0 && e < 1e-9, "{e}");
    }

    #[test]
    fn residual_scan_basics() {
        let traj = Trajectory { t0: 0.0, h: 0.5, samples: vec![1.0, -3.0, 2.0] };
        assert!(residual_scan(&traj, &[]).is_empty());
        let zero = |_: f64, _: &f64| 0.0;
        let ident = |_: f64, s: &f64| *s;
        let r = residual_scan(&traj, &[&zero, &ident]);
        assert_eq!(r[0], ResidualSummary { max_abs: 0.0, t_at_max: 0.0 });
        assert_eq!(r[1], ResidualSummary { max_abs: 3.0, t_at_max: 0.5 });
    }

    #[test]
    fn residual_grows_with_perturbation() {
        // residual of y' = y on a perturbed exact solution e^t (1 + eps t)
        let resid = |eps: f64| {
            let traj = Trajectory {
                t0: 0.0,
                h: 0.01,
                samples: (0..=100).map(|k| {
                    let t = k as f64 * 0.01;
                    (t.exp() * (1.0 + eps * t), t.exp() * (1.0 + eps * t + eps))
                }).collect(),
            };
            let f = |_: f64, s: &(f64, f64)| s.1 - s.0;
            residual_scan(&traj, &[&f])[0].max_abs
        };
        let r: Vec<f64> = [0.0, 1e-6, 1e-4, 1e-2].iter().map(|e| resid(*e)).collect();
        assert!(r[0] == 0.0);
        assert!(r.windows(2).all(|w| w[1] > w[0]), "{r:?}");
    }
}
