//! The verification suite: every numeric property of `(H3, g)` and
//! `(TH3, g^s)` that this crate certifies, as a list of named checks in
//! fixed groups.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::distribution::{
    builtin_distribution, default_samples, isocline_check, totally_geodesic_check, witness_points, CheckReport,
    Verdict,
};
use crate::error::Result;
use crate::heisenberg::{
    christoffel_coord, curvature_frame, curvature_from_connection, frame_connection,
    integrate_base_geodesic, metric_at, BaseGeodesicParams, BasePoint, CoordVector, CurvatureTable, SampledCurve,
};
use crate::ode::{rk4, IntegratorConfig};
use crate::sasaki::{
    bundle_geodesic_defect, euler_lagrange_residuals, fiber_geodesic, fiber_geodesic_rate, horizontal_lift_curve,
    integrate_bundle_geodesic, lagrangian, natural_lift_curve, sist_rhs, special_geodesic, special_geodesic_rate,
    LiftInitialData, HORIZONTAL_LIFT_TOL,
};

/// Summary keys, in report order.
pub const GROUPS: [&str; 7] = ["core", "prop3", "prop4", "prop5", "thm-lifts", "thm-fiber", "thm-special"];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub tol: f64,
    pub curvature: CurvatureTable,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: crate::distribution::DEFAULT_SEED, tol: crate::distribution::DEFAULT_TOLERANCE, curvature: curvature_frame() }
    }
}

impl VerifyOptions {
    /// Replaces the curvature table with one whose `R^2_112` has the wrong
    /// sign. Used to confirm that the suite notices a corrupted table.
    pub fn with_curvature_sign_flip(mut self) -> Self {
        let mut r = self.curvature.r_up;
        r[1][0][0][1] = -r[1][0][0][1];
        self.curvature = CurvatureTable::from_r_up(r);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bound {
    #[serde(rename = "<")]
    Below,
    #[serde(rename = ">")]
    Above,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyCheck {
    pub name: String,
    pub group: String,
    pub measured: f64,
    pub bound: Bound,
    pub threshold: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub summary: BTreeMap<String, Verdict>,
    pub failures: Vec<String>,
    pub checks: Vec<VerifyCheck>,
    pub distributions: Vec<CheckReport>,
}

#[derive(Default)]
struct Suite {
    checks: Vec<VerifyCheck>,
    distributions: Vec<CheckReport>,
}

impl Suite {
    fn push(&mut self, group: &str, name: &str, measured: f64, bound: Bound, threshold: f64) {
        let ok = match bound {
            Bound::Below => measured < threshold,
            Bound::Above => measured > threshold,
        };
        self.checks.push(VerifyCheck {
            name: name.to_string(),
            group: group.to_string(),
            measured,
            bound,
            threshold,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        });
    }

    fn below(&mut self, group: &str, name: &str, measured: f64, threshold: f64) {
        self.push(group, name, measured, Bound::Below, threshold);
    }

    fn finish(self) -> VerifyReport {
        let mut summary = BTreeMap::new();
        for g in GROUPS {
            let ok = self.checks.iter().filter(|c| c.group == g).all(|c| c.verdict == Verdict::Pass);
            summary.insert(g.to_string(), if ok { Verdict::Pass } else { Verdict::Fail });
        }
        let failures: Vec<String> =
            self.checks.iter().filter(|c| c.verdict != Verdict::Pass).map(|c| c.name.clone()).collect();
        VerifyReport { passed: failures.is_empty(), summary, failures, checks: self.checks, distributions: self.distributions }
    }
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m: f64, x| if x.is_nan() { f64::NAN } else { m.max(x) })
}

fn grid(t_max: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..=n).map(move |k| t_max * k as f64 / n as f64)
}

fn inverse3(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let c = |r: usize, s: usize| {
        let (r1, r2, s1, s2) = ((r + 1) % 3, (r + 2) % 3, (s + 1) % 3, (s + 2) % 3);
        m[r1][s1] * m[r2][s2] - m[r1][s2] * m[r2][s1]
    };
    let det = m[0][0] * c(0, 0) + m[0][1] * c(0, 1) + m[0][2] * c(0, 2);
    std::array::from_fn(|i| std::array::from_fn(|j| c(j, i) / det))
}

/// `Gamma^h_ij = g^hk (d_i g_kj + d_j g_ki - d_k g_ij) / 2` with central
/// differences of the metric.
fn koszul_christoffel(p: &BasePoint, step: f64) -> [[[f64; 3]; 3]; 3] {
    let dg: [[[f64; 3]; 3]; 3] = std::array::from_fn(|k| {
        let mut a = p.to_array();
        let mut b = p.to_array();
        a[k] += step;
        b[k] -= step;
        let (ga, gb) = (metric_at(&BasePoint::from_array(a)).0, metric_at(&BasePoint::from_array(b)).0);
        std::array::from_fn(|i| std::array::from_fn(|j| (ga[i][j] - gb[i][j]) / (2.0 * step)))
    });
    let ginv = inverse3(&metric_at(p).0);
    std::array::from_fn(|h| {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).map(|k| 0.5 * ginv[h][k] * (dg[i][k][j] + dg[j][k][i] - dg[k][i][j])).sum()
            })
        })
    })
}

fn max_table_diff(a: &CurvatureTable, b: &CurvatureTable) -> f64 {
    max_of(a.r_up.iter().flatten().flatten().flatten().zip(b.r_up.iter().flatten().flatten().flatten()).map(|(x, y)| (x - y).abs()))
}

fn core_checks(s: &mut Suite, opts: &VerifyOptions) -> Result<()> {
    let table = &opts.curvature;
    let reference = curvature_from_connection(&frame_connection());
    let mut expected = [[[[0.0; 3]; 3]; 3]; 3];
    for (i, c, a, b, v) in [(1, 0, 0, 1, 3.0), (2, 0, 0, 2, -1.0), (0, 1, 0, 1, -3.0), (0, 2, 0, 2, 1.0), (2, 1, 1, 2, -1.0), (1, 2, 1, 2, 1.0)] {
        expected[i][c][a][b] = v;
        expected[i][c][b][a] = -v;
    }
    let expected = CurvatureTable::from_r_up(expected);
    s.below("core", "curvature-constants", max_table_diff(table, &expected), f64::EPSILON);
    s.below("core", "curvature-from-connection", max_table_diff(table, &reference), f64::EPSILON);
    let sectional = max_of([(0, 1, -3.0), (0, 2, 1.0), (1, 2, 1.0)].map(|(a, b, k)| (table.sectional(a, b) - k).abs()));
    s.below("core", "curvature-sectional", sectional, f64::EPSILON);
    s.below("core", "curvature-symmetries", table.symmetry_defect(), f64::EPSILON);
    s.below("core", "curvature-bianchi", table.bianchi_defect(), f64::EPSILON);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut koszul: f64 = 0.0;
    for _ in 0..20 {
        let p = BasePoint::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let fd = koszul_christoffel(&p, 1e-5);
        let an = christoffel_coord(&p);
        for h in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    koszul = koszul.max((fd[h][i][j] - an.get(h, i, j)).abs());
                }
            }
        }
    }
    s.below("core", "christoffel-koszul", koszul, 1e-6);

    let p = BaseGeodesicParams::new(1.0, 2.0, 0.5);
    let el = max_of(grid(4.0 * std::f64::consts::PI, 4000).map(|t| {
        let (x, v) = (p.position(t), p.velocity(t));
        let (u, vv, w) = (p.u, p.v, p.w);
        max_of([
            (v.c3 + x.x2 * v.c1 - x.x1 * v.c2 - w).abs(),
            (v.c1 + 2.0 * w * x.x2 - u).abs(),
            (v.c2 - 2.0 * w * x.x1 - vv).abs(),
        ])
    }));
    s.below("core", "base-closed-form-residuals", el, 1e-8);
    let cfg = IntegratorConfig::new(1e-3, 1.0);
    let curve = integrate_base_geodesic(&BasePoint::ORIGIN, &CoordVector::new(1.0, 2.0, 0.5), &cfg)?;
    let end = curve.points[curve.len() - 1];
    s.below("core", "base-rk4-vs-closed-form", end.diff(p.position(1.0)).max_abs(), 1e-6);

    let cfg = IntegratorConfig::new(1e-3, 10.0);
    let mut first_integral: f64 = 0.0;
    for (u, v, w) in [(1.0, 2.0, 0.5), (0.3, -0.7, 1.5), (-1.0, 0.5, -0.25), (0.8, 0.1, 0.0)] {
        let c = integrate_base_geodesic(&BasePoint::ORIGIN, &CoordVector::new(u, v, w), &cfg)?;
        for (x, dx) in c.points.iter().zip(&c.velocities) {
            first_integral = first_integral.max((dx.c3 + x.x2 * dx.c1 - x.x1 * dx.c2 - w).abs());
        }
    }
    s.below("core", "base-first-integral", first_integral, 1e-8);

    let mut drift: f64 = 0.0;
    for _ in 0..5 {
        let d: [f64; 6] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let init = LiftInitialData::new(d[0], d[1], d[2], d[3], d[4], d[5]).initial_state();
        let traj = integrate_bundle_geodesic(&init, &cfg)?;
        let l0 = lagrangian(&init);
        drift = drift.max(max_of(traj.samples.iter().map(|s| (lagrangian(s) - l0).abs() / l0)));
    }
    s.below("core", "lagrangian-conservation", drift, 1e-6);

    let init = LiftInitialData::new(1.0, 2.0, 0.5, 0.0, 0.0, 0.0);
    let traj = integrate_bundle_geodesic(&init.initial_state(), &IntegratorConfig::new(1e-3, 5.0))?;
    s.below("core", "bundle-first-integrals", euler_lagrange_residuals(&traj, &init)?.overall_max(), 1e-7);

    let errs: Vec<f64> = [1e-1, 5e-2, 2.5e-2]
        .iter()
        .map(|&h| {
            let out = rk4(|_, y: &[f64; 1]| [y[0]], 0.0, [1.0], &IntegratorConfig::new(h, 1.0))?;
            Ok((out.trajectory.samples[out.trajectory.len() - 1][0] - 1f64.exp()).abs())
        })
        .collect::<Result<_>>()?;
    let order = ((errs[0] / errs[1]).log2()).min((errs[1] / errs[2]).log2());
    s.push("core", "rk4-order", order, Bound::Above, 3.8);
    Ok(())
}

fn lift_checks(s: &mut Suite) -> Result<()> {
    let p = BaseGeodesicParams::new(1.0, 2.0, 0.5);
    let h = 1e-3;
    let n = (10.0 / h) as usize + 1;
    let base = SampledCurve::from_fn(0.0, h, n, |t| (p.position(t), p.velocity(t)))?;
    let init = LiftInitialData::new(p.u, p.v, p.w, 0.0, 0.0, 0.0);
    let hor = horizontal_lift_curve(&base, CoordVector::new(1.0, -1.0, 0.5), HORIZONTAL_LIFT_TOL)?;
    s.below("thm-lifts", "horizontal-lift-residuals", euler_lagrange_residuals(&hor, &init)?.overall_max(), 1e-6);
    let nat = natural_lift_curve(&base)?;
    s.below("thm-lifts", "natural-lift-residuals", euler_lagrange_residuals(&nat, &init)?.overall_max(), 1e-6);

    let h = 1e-2;
    let n = (2.0 * std::f64::consts::PI / h) as usize + 1;
    let circle = SampledCurve::from_fn(0.0, h, n, |t| {
        (BasePoint::new(t.cos() - 1.0, t.sin(), 0.0), CoordVector::new(-t.sin(), t.cos(), 0.0))
    })?;
    let nat = natural_lift_curve(&circle)?;
    let init = LiftInitialData::from_state(&nat.samples[0]);
    let r = euler_lagrange_residuals(&nat, &init)?.max_abs();
    s.push("thm-lifts", "circle-natural-lift-not-geodesic", max_of(r[..3].iter().copied()), Bound::Above, 1e-2);
    Ok(())
}

fn fiber_checks(s: &mut Suite) -> Result<()> {
    let (l, m, n) = (1.0, 2.0, 3.0);
    let defect = max_of(grid(2.0, 200).map(|t| bundle_geodesic_defect(&fiber_geodesic(l, m, n, t), &fiber_geodesic_rate(l, m, n, t))));
    s.below("thm-fiber", "fiber-geodesic-defect", defect, 1e-12);
    let traj = integrate_bundle_geodesic(&fiber_geodesic(l, m, n, 0.0), &IntegratorConfig::new(1e-3, 2.0))?;
    let gap = max_of(traj.iter().map(|(t, st)| st.max_abs_diff(&fiber_geodesic(l, m, n, t))));
    s.below("thm-fiber", "fiber-geodesic-rk4", gap, 1e-6);
    Ok(())
}

fn special_checks(s: &mut Suite) -> Result<()> {
    let (u, v, l) = (1.0, 2.0, 3.0);
    let defect = max_of(grid(2.0, 200).map(|t| bundle_geodesic_defect(&special_geodesic(u, v, l, t), &special_geodesic_rate(u, v, l, t))));
    s.below("thm-special", "special-geodesic-defect", defect, 1e-10);
    let traj = integrate_bundle_geodesic(&special_geodesic(u, v, l, 0.0), &IntegratorConfig::new(1e-3, 2.0))?;
    let gap = max_of(traj.iter().map(|(t, st)| st.max_abs_diff(&special_geodesic(u, v, l, t))));
    s.below("thm-special", "special-geodesic-rk4", gap, 1e-6);

    // dyadic times and data keep every intermediate value exact
    let (fl, fm, fn_) = (0.75, -1.25, 2.125);
    let fiber = LiftInitialData::new(0.0, 0.0, 0.0, fl, fm, fn_);
    let special = LiftInitialData::new(u, v, 0.0, l, 0.0, 0.0);
    let sist = max_of((0..=128).flat_map(|k| {
        let t = k as f64 / 64.0;
        let a = sist_rhs(&CoordVector::new(fl * t, fm * t, fn_ * t), t, &fiber) - CoordVector::new(fl, fm, fn_);
        let b = sist_rhs(&CoordVector::new(l * t, 0.0, -l * v * t * t), t, &special) - CoordVector::new(l, 0.0, -2.0 * l * v * t);
        [a.max_abs(), b.max_abs()]
    }));
    s.below("thm-special", "sist-particular-solutions", sist, 1e-14);

    let d = LiftInitialData::new(1.0, -1.0, 0.0, 0.5, 0.2, 0.3);
    let cfg = IntegratorConfig::new(1e-3, 2.0);
    let general = integrate_bundle_geodesic(&d.initial_state(), &cfg)?;
    let fiber_sys = rk4(|t, y: &[f64; 3]| sist_rhs(&CoordVector::from_array(*y), t, &d).to_array(), 0.0, [0.0; 3], &cfg)?;
    let gap = max_of(
        general.samples.iter().zip(&fiber_sys.trajectory.samples).map(|(g, y)| (g.y - CoordVector::from_array(*y)).max_abs()),
    );
    s.below("thm-special", "sist-vs-general-system", gap, 1e-6);
    Ok(())
}

fn distribution_checks(s: &mut Suite, opts: &VerifyOptions) -> Result<()> {
    let samples = default_samples(opts.seed);
    let witnesses = witness_points();
    let (e3, e1) = (&witnesses[0..1], &witnesses[1..2]);
    let tol = opts.tol;

    for name in ["htm", "vtm"] {
        let d = builtin_distribution(name)?;
        let tg = totally_geodesic_check(&d, &samples, tol)?;
        s.below("prop3", &format!("{name}-totally-geodesic"), tg.global_max, tol);
        s.distributions.push(tg);
        let iso = isocline_check(&d, &samples, tol)?;
        s.below("prop3", &format!("{name}-isocline"), iso.global_max, tol);
        s.distributions.push(iso);
    }

    for (name, at, expected) in [("ker-omega-h", e3, 0.5), ("ker-omega-v", e1, 1.0)] {
        let d = builtin_distribution(name)?;
        let tg = totally_geodesic_check(&d, &samples, tol)?;
        s.push("prop4", &format!("{name}-not-totally-geodesic"), tg.global_max, Bound::Above, 10.0 * tol);
        s.distributions.push(tg);
        let w = totally_geodesic_check(&d, at, tol)?;
        s.below("prop4", &format!("{name}-witness"), (w.witness.residual.abs() - expected).abs(), 1e-10);
    }

    for (name, at) in [("f-h", e3), ("f-v", e1)] {
        let d = builtin_distribution(name)?;
        let tg = totally_geodesic_check(&d, &samples, tol)?;
        s.below("prop5", &format!("{name}-totally-geodesic"), tg.global_max, tol);
        s.distributions.push(tg);
        match isocline_check(&d, &samples, tol) {
            Ok(iso) => {
                s.push("prop5", &format!("{name}-not-isocline"), iso.global_max, Bound::Above, 10.0 * tol);
                s.distributions.push(iso);
                let w = isocline_check(&d, at, tol)?;
                s.below("prop5", &format!("{name}-isocline-witness"), (w.witness.residual.abs() - 0.5).abs(), 1e-10);
            }
            Err(_) => {
                s.push("prop5", &format!("{name}-not-isocline"), f64::NAN, Bound::Above, 10.0 * tol);
                s.push("prop5", &format!("{name}-isocline-witness"), f64::NAN, Bound::Below, 1e-10);
            }
        }
    }
    Ok(())
}

/// Runs every check. Errors only on failures of the numerical machinery
/// itself; failed checks are reported in the result.
pub fn run_all(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut s = Suite::default();
    core_checks(&mut s, opts)?;
    distribution_checks(&mut s, opts)?;
    lift_checks(&mut s)?;
    fiber_checks(&mut s)?;
    special_checks(&mut s)?;
    Ok(s.finish())
}
