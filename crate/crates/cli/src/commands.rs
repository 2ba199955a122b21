use anyhow::{bail, Result};
use sasaki_core::verify::{run_all, VerifyOptions};
use sasaki_core::{
    builtin_distribution, default_samples, euler_lagrange_residuals, horizontal_lift_curve, integrate_base_geodesic,
    integrate_bundle_geodesic, isocline_check, lagrangian, natural_lift_curve, totally_geodesic_check,
    BaseGeodesicParams, BasePoint, BundleState, BundleTrajectory, CoordVector, IntegratorConfig, LiftInitialData,
    SampledCurve, Trajectory, Verdict, DEFAULT_TOLERANCE, HORIZONTAL_LIFT_TOL,
};
use serde::Serialize;
use serde_json::json;

use crate::output::{self, bundle_csv, bundle_samples, check_csv, emit, row};
use crate::{Command, Format, InitArgs, LiftKind, RunArgs};

/// Default bound on the RK4 / closed-form gap of `base-geodesic`.
const BASE_GAP_TOL: f64 = 1e-6;
/// Bound on the first-integral residuals of base geodesics.
const BASE_RESIDUAL_TOL: f64 = 1e-8;
/// Default bound for bundle-level residuals and energy drift.
const BUNDLE_TOL: f64 = 1e-6;

pub fn dispatch(command: Command) -> Result<bool> {
    match command {
        Command::BaseGeodesic { init, run } => base_geodesic(init, &run),
        Command::BundleGeodesic { init, run } => bundle_geodesic(init, &run),
        Command::Lift { kind, init, run } => lift(kind, init, &run),
        Command::Check { name, run } => check(&name, &run),
        Command::Verify { all: _, inject_curvature_flip, run } => verify(inject_curvature_flip, &run),
    }
}

fn config(run: &RunArgs) -> Result<IntegratorConfig> {
    let cfg = IntegratorConfig::new(run.step, run.t_max);
    cfg.validate()?;
    Ok(cfg)
}

fn initial_data(init: InitArgs) -> Result<LiftInitialData> {
    let InitArgs { u, v, w, l, m, n } = init;
    if ![u, v, w, l, m, n].iter().all(|x| x.is_finite()) {
        bail!("initial data must be finite");
    }
    Ok(LiftInitialData::new(u, v, w, l, m, n))
}

fn tolerance(run: &RunArgs, default: f64) -> Result<f64> {
    let tol = run.tol.unwrap_or(default);
    if !(tol > 0.0 && tol.is_finite()) {
        bail!("tolerance must be positive, got {tol}");
    }
    Ok(tol)
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn summary_text(value: &impl Serialize) -> Result<String> {
    output::json(value)
}

fn as_bundle(curve: &SampledCurve) -> BundleTrajectory {
    let samples = curve
        .points
        .iter()
        .zip(&curve.velocities)
        .map(|(x, v)| BundleState { x: *x, v: *v, ..Default::default() })
        .collect();
    Trajectory { t0: curve.t0, h: curve.h, samples }
}

fn base_geodesic(init: InitArgs, run: &RunArgs) -> Result<bool> {
    let data = initial_data(init)?;
    let cfg = config(run)?;
    let tol = tolerance(run, BASE_GAP_TOL)?;
    let params = BaseGeodesicParams::new(data.u, data.v, data.w);
    let rk = integrate_base_geodesic(&BasePoint::ORIGIN, &CoordVector::new(data.u, data.v, data.w), &cfg)?;
    let closed = SampledCurve::from_fn(rk.t0, rk.h, rk.len(), |t| (params.position(t), params.velocity(t)))?;

    let gap = closed
        .points
        .iter()
        .zip(&rk.points)
        .map(|(a, b)| a.diff(*b).max_abs())
        .fold(0.0, f64::max);
    let el_data = LiftInitialData::new(data.u, data.v, data.w, 0.0, 0.0, 0.0);
    let closed_res = euler_lagrange_residuals(&as_bundle(&closed), &el_data)?.max_abs();
    let rk_res = euler_lagrange_residuals(&as_bundle(&rk), &el_data)?.max_abs();
    let worst_res = closed_res[..3].iter().chain(&rk_res[..3]).fold(0.0f64, |m, r| m.max(*r));
    let ok = gap < tol && worst_res < BASE_RESIDUAL_TOL;

    let data_text = match run.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("t,x1,x2,x3,v1,v2,v3,rk4_x1,rk4_x2,rk4_x3,rk4_v1,rk4_v2,rk4_v3\n");
            for k in 0..rk.len() {
                let (c, cv, r, rv) = (closed.points[k], closed.velocities[k], rk.points[k], rk.velocities[k]);
                s.push_str(&row([
                    rk.time(k), c.x1, c.x2, c.x3, cv.c1, cv.c2, cv.c3, r.x1, r.x2, r.x3, rv.c1, rv.c2, rv.c3,
                ]));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let samples: Vec<_> = (0..rk.len())
                .map(|k| {
                    json!({
                        "t": rk.time(k),
                        "closed_form": { "x": closed.points[k], "v": closed.velocities[k] },
                        "rk4": { "x": rk.points[k], "v": rk.velocities[k] },
                    })
                })
                .collect();
            output::json(&json!({ "params": params, "step": cfg.h, "t_max": cfg.t_max, "samples": samples }))?
        }
    };
    let summary = summary_text(&json!({
        "command": "base-geodesic",
        "params": params,
        "samples": rk.len(),
        "max_gap": gap,
        "gap_tolerance": tol,
        "closed_form_residuals": &closed_res[..3],
        "rk4_residuals": &rk_res[..3],
        "residual_tolerance": BASE_RESIDUAL_TOL,
        "verdict": verdict(ok),
    }))?;
    emit(run.out.as_deref(), &data_text, &summary)?;
    Ok(ok)
}

fn trajectory_text(traj: &BundleTrajectory, run: &RunArgs, header: serde_json::Value) -> Result<String> {
    Ok(match run.format.unwrap_or(Format::Csv) {
        Format::Csv => bundle_csv(traj),
        Format::Json => {
            let mut v = header;
            v["samples"] = serde_json::to_value(bundle_samples(traj))?;
            output::json(&v)?
        }
    })
}

fn bundle_geodesic(init: InitArgs, run: &RunArgs) -> Result<bool> {
    let data = initial_data(init)?;
    let cfg = config(run)?;
    let tol = tolerance(run, BUNDLE_TOL)?;
    let traj = integrate_bundle_geodesic(&data.initial_state(), &cfg)?;
    let residuals = euler_lagrange_residuals(&traj, &data)?.max_abs();
    let l0 = lagrangian(&traj.samples[0]);
    let scale = if l0 > 0.0 { l0 } else { 1.0 };
    let drift = traj.samples.iter().map(|s| (lagrangian(s) - l0).abs() / scale).fold(0.0, f64::max);
    let ok = drift < tol;

    let text = trajectory_text(&traj, run, json!({ "initial": data, "step": cfg.h, "t_max": cfg.t_max }))?;
    let summary = summary_text(&json!({
        "command": "bundle-geodesic",
        "initial": data,
        "samples": traj.len(),
        "el_residuals": residuals,
        "lagrangian_drift": drift,
        "tolerance": tol,
        "verdict": verdict(ok),
    }))?;
    emit(run.out.as_deref(), &text, &summary)?;
    Ok(ok)
}

fn lift(kind: LiftKind, init: InitArgs, run: &RunArgs) -> Result<bool> {
    let data = initial_data(init)?;
    let cfg = config(run)?;
    let tol = tolerance(run, BUNDLE_TOL)?;
    let params = BaseGeodesicParams::new(data.u, data.v, data.w);
    let base = SampledCurve::from_fn(0.0, cfg.h, cfg.steps() + 1, |t| (params.position(t), params.velocity(t)))?;
    let (name, traj) = match kind {
        LiftKind::Horizontal => {
            ("horizontal", horizontal_lift_curve(&base, CoordVector::new(data.l, data.m, data.n), HORIZONTAL_LIFT_TOL)?)
        }
        LiftKind::Natural => ("natural", natural_lift_curve(&base)?),
    };
    let condition = LiftInitialData::new(data.u, data.v, data.w, 0.0, 0.0, 0.0);
    let residuals = euler_lagrange_residuals(&traj, &condition)?.max_abs();
    let worst = residuals.iter().fold(0.0f64, |m, r| m.max(*r));
    let ok = worst < tol;

    let text = trajectory_text(&traj, run, json!({ "kind": name, "params": params, "step": cfg.h, "t_max": cfg.t_max }))?;
    let summary = summary_text(&json!({
        "command": "lift",
        "kind": name,
        "params": params,
        "samples": traj.len(),
        "el_residuals": residuals,
        "tolerance": tol,
        "geodesic": ok,
        "verdict": verdict(ok),
    }))?;
    emit(run.out.as_deref(), &text, &summary)?;
    Ok(ok)
}

fn check(name: &str, run: &RunArgs) -> Result<bool> {
    let tol = tolerance(run, DEFAULT_TOLERANCE)?;
    let dist = builtin_distribution(name)?;
    let samples = default_samples(run.seed);
    let tg = totally_geodesic_check(&dist, &samples, tol)?;
    let mut reports = vec![tg];
    let isocline = if reports[0].verdict == Verdict::Pass {
        let iso = isocline_check(&dist, &samples, tol)?;
        let v = iso.verdict.to_string();
        reports.push(iso);
        v
    } else {
        "not_applicable".to_string()
    };
    let ok = reports.iter().all(|r| r.verdict == Verdict::Pass);

    let text = match run.format.unwrap_or(Format::Json) {
        Format::Csv => check_csv(&reports),
        Format::Json => output::json(&json!({ "name": name, "seed": run.seed, "samples": samples.len(), "checks": reports }))?,
    };
    let summary = summary_text(&json!({
        "command": "check",
        "name": name,
        "totally_geodesic": reports[0].verdict,
        "isocline": isocline,
        "witness_residual": reports.last().map(|r| r.witness.residual),
    }))?;
    emit(run.out.as_deref(), &text, &summary)?;
    Ok(ok)
}

fn verify(flip: bool, run: &RunArgs) -> Result<bool> {
    let mut opts = VerifyOptions { seed: run.seed, tol: tolerance(run, DEFAULT_TOLERANCE)?, ..Default::default() };
    if flip {
        opts = opts.with_curvature_sign_flip();
    }
    let report = run_all(&opts)?;
    let text = match run.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut s = String::from("name,group,measured,bound,threshold,verdict\n");
            for c in &report.checks {
                let bound = if c.bound == sasaki_core::verify::Bound::Below { "<" } else { ">" };
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    c.name,
                    c.group,
                    output::num(c.measured),
                    bound,
                    output::num(c.threshold),
                    c.verdict
                ));
            }
            s
        }
        Format::Json => output::json(&report)?,
    };
    let summary = summary_text(&json!({
        "command": "verify",
        "passed": report.passed,
        "summary": report.summary,
        "failures": report.failures,
    }))?;
    emit(run.out.as_deref(), &text, &summary)?;
    Ok(report.passed)
}
