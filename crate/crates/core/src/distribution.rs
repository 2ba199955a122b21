//! Totally geodesic and isocline criteria for distributions on `(TH3, g^s)`.
//!
//! With `{X_i, N_a}` an adapted orthonormal frame (`X_i` spanning the
//! distribution, `N_a` its normal bundle), the distribution is totally
//! geodesic iff
//!
//! ```text
//! g^s(D_{X_i} X_j + D_{X_j} X_i, N_a) = 0    for all i <= j, a
//! ```
//!
//! and a totally geodesic distribution is isocline iff
//!
//! ```text
//! g^s(D_{N_a} N_b + D_{N_b} N_a, X_i) = 0    for all a <= b, i
//! ```
//!
//! Both expressions are tensorial, so they are evaluated pointwise on the
//! frame-lift coefficients of the fields.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::heisenberg::{BasePoint, FrameVector};
use crate::sasaki::{sasaki_connection, sasaki_metric, BundlePoint, BundleVector};

pub const DEFAULT_SEED: u64 = 1958;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_SAMPLE_COUNT: usize = 100;

pub const BUILTIN_NAMES: [&str; 6] = ["htm", "vtm", "ker-omega-h", "ker-omega-v", "f-h", "f-v"];

/// Relative norm below which Gram–Schmidt treats a vector as dependent.
const RANK_TOL: f64 = 1e-10;

type FieldFn = dyn Fn(&BundlePoint) -> BundleVector + Send + Sync;

/// A vector field on `TH3`, given by its coefficients in the adapted frame.
#[derive(Clone)]
pub struct LiftField {
    label: String,
    f: Arc<FieldFn>,
}

impl LiftField {
    pub fn new(label: impl Into<String>, f: impl Fn(&BundlePoint) -> BundleVector + Send + Sync + 'static) -> Self {
        Self { label: label.into(), f: Arc::new(f) }
    }

    pub fn constant(label: impl Into<String>, v: BundleVector) -> Self {
        Self::new(label, move |_| v)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, at: &BundlePoint) -> BundleVector {
        (self.f)(at)
    }
}

impl fmt::Debug for LiftField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("LiftField").field(&self.label).finish()
    }
}

/// A distribution `F` of rank `p` on `TH3` and a complement of rank `q = 6 - p`.
#[derive(Clone, Debug)]
pub struct DistributionSpec {
    pub name: String,
    pub generators: Vec<LiftField>,
    pub complement: Vec<LiftField>,
}

impl DistributionSpec {
    pub fn new(name: impl Into<String>, generators: Vec<LiftField>, complement: Vec<LiftField>) -> Result<Self> {
        let (p, q) = (generators.len(), complement.len());
        if p == 0 || q == 0 || p + q != 6 {
            return Err(GeometryError::InvalidConfig(format!(
                "a distribution needs p, q >= 1 with p + q = 6, got p = {p}, q = {q}"
            )));
        }
        Ok(Self { name: name.into(), generators, complement })
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn codim(&self) -> usize {
        self.complement.len()
    }

    /// Orthonormal `(X_i, N_a)` at `at`: Gram–Schmidt over the generators
    /// followed by the complement, so the `N_a` span the normal bundle.
    pub fn adapted_frame(&self, at: &BundlePoint) -> Result<(Vec<BundleVector>, Vec<BundleVector>)> {
        let raw: Vec<_> = self.generators.iter().chain(&self.complement).map(|f| f.eval(at)).collect();
        let mut frame = orthonormalize(&raw)?;
        let normals = frame.split_off(self.dim());
        Ok((frame, normals))
    }
}

/// Gram–Schmidt with respect to `g^s`, with a second projection pass for
/// stability. Fails on the first vector that is (numerically) in the span
/// of its predecessors.
pub fn orthonormalize(vectors: &[BundleVector]) -> Result<Vec<BundleVector>> {
    let at = BundlePoint::default();
    let mut out: Vec<BundleVector> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        let scale = v.norm();
        if !scale.is_finite() || scale == 0.0 {
            return Err(GeometryError::RankDeficient { index });
        }
        let mut w = *v;
        for _ in 0..2 {
            for e in &out {
                w = w - *e * sasaki_metric(&at, &w, e);
            }
        }
        let n = w.norm();
        if !(n > RANK_TOL * scale) {
            return Err(GeometryError::RankDeficient { index });
        }
        out.push(if n == 1.0 { w } else { w * (1.0 / n) });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    TotallyGeodesic,
    Isocline,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::TotallyGeodesic => "totally_geodesic",
            Criterion::Isocline => "isocline",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Pass below `tol`, fail above `10 tol`, inconclusive in between.
    pub fn classify(global_max: f64, tol: f64) -> Self {
        if global_max < tol {
            Verdict::Pass
        } else if global_max > 10.0 * tol || global_max.is_nan() {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Worst sample of a check. `residual` keeps its sign.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub point: BundlePoint,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub criterion: Criterion,
    pub tolerance: f64,
    pub global_max: f64,
    pub verdict: Verdict,
    pub witness: Witness,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    /// Per-sample `max |residual|`.
    #[serde(skip)]
    pub samples: Vec<(BundlePoint, f64)>,
}

impl CheckReport {
    fn from_samples(name: &str, criterion: Criterion, tol: f64, samples: Vec<(BundlePoint, f64, f64)>) -> Self {
        let mut witness = Witness { point: samples[0].0, residual: samples[0].2 };
        let mut global_max = samples[0].1;
        for &(p, m, r) in &samples[1..] {
            if m > global_max || m.is_nan() {
                global_max = m;
                witness = Witness { point: p, residual: r };
            }
        }
        let verdict = Verdict::classify(global_max, tol);
        let note = (verdict == Verdict::Inconclusive).then(|| {
            format!("max residual {global_max:.3e} lies between tol and 10 tol; rerun with a tighter tolerance")
        });
        Self {
            name: name.to_string(),
            criterion,
            tolerance: tol,
            global_max,
            verdict,
            witness,
            note,
            samples: samples.into_iter().map(|(p, m, _)| (p, m)).collect(),
        }
    }
}

/// Largest symmetrized residual `g^s(D_A B + D_B A, C)` over `a <= b` in
/// `pair_side` and `c` in `test_side`, returned as `(|r|, r)`.
fn worst_symmetric(at: &BundlePoint, pair_side: &[BundleVector], test_side: &[BundleVector]) -> (f64, f64) {
    let mut worst = (0.0, 0.0);
    for (i, a) in pair_side.iter().enumerate() {
        for b in &pair_side[i..] {
            let s = sasaki_connection(at, a, b) + sasaki_connection(at, b, a);
            for c in test_side {
                let r = sasaki_metric(at, &s, c);
                if r.abs() > worst.0 || r.is_nan() {
                    worst = (r.abs(), r);
                }
            }
        }
    }
    worst
}

fn run(dist: &DistributionSpec, criterion: Criterion, samples: &[BundlePoint], tol: f64) -> Result<CheckReport> {
    if samples.is_empty() {
        return Err(GeometryError::InsufficientSamples { needed: 1, got: 0 });
    }
    let mut rows = Vec::with_capacity(samples.len());
    for (k, at) in samples.iter().enumerate() {
        if !at.is_finite() {
            return Err(GeometryError::DegenerateFrame { sample: k, reason: "non-finite sample point".into() });
        }
        let (xs, ns) = dist
            .adapted_frame(at)
            .map_err(|e| GeometryError::DegenerateFrame { sample: k, reason: e.to_string() })?;
        let (m, r) = match criterion {
            Criterion::TotallyGeodesic => worst_symmetric(at, &xs, &ns),
            Criterion::Isocline => worst_symmetric(at, &ns, &xs),
        };
        rows.push((*at, m, r));
    }
    Ok(CheckReport::from_samples(&dist.name, criterion, tol, rows))
}

pub fn totally_geodesic_check(dist: &DistributionSpec, samples: &[BundlePoint], tol: f64) -> Result<CheckReport> {
    run(dist, Criterion::TotallyGeodesic, samples, tol)
}

/// Isocline criterion; the distribution must first pass
/// [`totally_geodesic_check`] on the same samples.
pub fn isocline_check(dist: &DistributionSpec, samples: &[BundlePoint], tol: f64) -> Result<CheckReport> {
    let tg = totally_geodesic_check(dist, samples, tol)?;
    if tg.verdict != Verdict::Pass {
        return Err(GeometryError::NotTotallyGeodesic { name: dist.name.clone() });
    }
    run(dist, Criterion::Isocline, samples, tol)
}

fn lifts(kind: &[(char, usize)]) -> Vec<LiftField> {
    kind.iter()
        .map(|&(k, i)| {
            let label = format!("E{}^{}", i + 1, k);
            let v = if k == 'H' { BundleVector::h(i) } else { BundleVector::v(i) };
            LiftField::constant(label, v)
        })
        .collect()
}

/// One of the six distributions in [`BUILTIN_NAMES`].
pub fn builtin_distribution(name: &str) -> Result<DistributionSpec> {
    const H1: (char, usize) = ('H', 0);
    const H2: (char, usize) = ('H', 1);
    const H3: (char, usize) = ('H', 2);
    const V1: (char, usize) = ('V', 0);
    const V2: (char, usize) = ('V', 1);
    const V3: (char, usize) = ('V', 2);
    let (g, c): (&[_], &[_]) = match name {
        "htm" => (&[H1, H2, H3], &[V1, V2, V3]),
        "vtm" => (&[V1, V2, V3], &[H1, H2, H3]),
        "ker-omega-h" => (&[H1, H2, V1, V2, V3], &[H3]),
        "ker-omega-v" => (&[H1, H2, H3, V1, V2], &[V3]),
        "f-h" => (&[H1, H2], &[H3, V1, V2, V3]),
        "f-v" => (&[V1, V2], &[V3, H1, H2, H3]),
        _ => return Err(GeometryError::UnknownDistribution(name.to_string())),
    };
    DistributionSpec::new(name, lifts(g), lifts(c))
}

/// `count` seeded points: base uniform in `[-2, 2]^3`, fiber uniform in the
/// `g`-ball of radius 2.
pub fn sample_points(seed: u64, count: usize) -> Vec<BundlePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let base = BasePoint::new(rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0));
            let fiber = loop {
                let f = FrameVector::new(rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0));
                if f.norm() <= 2.0 {
                    break f;
                }
            };
            BundlePoint::from_frame_fiber(base, fiber)
        })
        .collect()
}

/// `(origin, E3)` and `(origin, E1)`, where the curvature terms of the
/// criteria do not vanish.
pub fn witness_points() -> Vec<BundlePoint> {
    vec![
        BundlePoint::from_frame_fiber(BasePoint::ORIGIN, FrameVector::basis(2)),
        BundlePoint::from_frame_fiber(BasePoint::ORIGIN, FrameVector::basis(0)),
    ]
}

/// Seeded samples followed by [`witness_points`].
pub fn default_samples(seed: u64) -> Vec<BundlePoint> {
    let mut s = sample_points(seed, DEFAULT_SAMPLE_COUNT);
    s.extend(witness_points());
    s
}
