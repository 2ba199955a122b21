use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use sasaki_core::{BundleState, BundleTrajectory, CheckReport};
use serde::Serialize;

pub const BUNDLE_HEADER: &str = "t,x1,x2,x3,y1,y2,y3,v1,v2,v3,yp1,yp2,yp3";
pub const CHECK_HEADER: &str =
    "name,criterion,tolerance,global_max,verdict,witness_x1,witness_x2,witness_x3,witness_y1,witness_y2,witness_y3,witness_residual";

/// 17 significant digits, enough to round-trip an `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn row(values: impl IntoIterator<Item = f64>) -> String {
    values.into_iter().map(num).collect::<Vec<_>>().join(",")
}

pub fn bundle_row(t: f64, s: &BundleState) -> String {
    let a = s.to_array();
    // state order is x, v, y, yp; the file order is x, y, v, yp
    row([t, a[0], a[1], a[2], a[6], a[7], a[8], a[3], a[4], a[5], a[9], a[10], a[11]])
}

pub fn bundle_csv(traj: &BundleTrajectory) -> String {
    let mut out = String::from(BUNDLE_HEADER);
    out.push('\n');
    for (t, s) in traj.iter() {
        out.push_str(&bundle_row(t, s));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
pub struct BundleSample {
    pub t: f64,
    #[serde(flatten)]
    pub state: BundleState,
}

pub fn bundle_samples(traj: &BundleTrajectory) -> Vec<BundleSample> {
    traj.iter().map(|(t, s)| BundleSample { t, state: *s }).collect()
}

pub fn check_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from(CHECK_HEADER);
    out.push('\n');
    for r in reports {
        let p = &r.witness.point;
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.name,
            r.criterion,
            num(r.tolerance),
            num(r.global_max),
            r.verdict,
            row([p.base.x1, p.base.x2, p.base.x3, p.fiber.c1, p.fiber.c2, p.fiber.c3, r.witness.residual]),
        ));
    }
    out
}

pub fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Writes `data` to `out` (or stdout) and `summary` to stdout (or stderr).
pub fn emit(out: Option<&Path>, data: &str, summary: &str) -> Result<()> {
    match out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            let mut w = BufWriter::new(file);
            w.write_all(data.as_bytes())
                .and_then(|_| w.flush())
                .with_context(|| format!("cannot write {}", path.display()))?;
            io::stdout().write_all(summary.as_bytes())?;
        }
        None => {
            io::stdout().write_all(data.as_bytes())?;
            io::stderr().write_all(summary.as_bytes())?;
        }
    }
    Ok(())
}
