//! Numerical geometry of the Heisenberg manifold `(H3, g)` and of its tangent
//! bundle `TH3` carrying the Sasaki metric.
//!
//! The crate is organised bottom-up:
//!
//! - [`heisenberg`]: the base manifold. Metric, invariant orthonormal frame,
//!   Levi-Civita connection and curvature (both exact constant tables in the
//!   frame), coordinate Christoffel symbols, closed-form geodesics through the
//!   origin, and covariant differentiation along sampled curves.
//! - [`sasaki`]: the tangent bundle. Sasaki metric and its Levi-Civita
//!   connection on frame lifts, horizontal and natural lifts of curves, the
//!   bundle geodesic system, the Lagrangian and its first integrals.
//! - [`distribution`]: totally geodesic and isocline criteria for
//!   distributions on `TH3`, with the six built-in distributions.
//! - [`ode`]: the fixed-step RK4 integrator and residual scans shared by the
//!   above.
//! - [`verify`]: the verification suite behind `sasaki verify --all`.

pub mod distribution;
pub mod error;
pub mod heisenberg;
pub mod ode;
pub mod sasaki;
pub mod stencil;
pub mod verify;

pub use distribution::{
    builtin_distribution, default_samples, isocline_check, orthonormalize, sample_points,
    totally_geodesic_check, witness_points, CheckReport, Criterion, DistributionSpec, LiftField,
    Verdict, Witness, BUILTIN_NAMES, DEFAULT_SAMPLE_COUNT, DEFAULT_SEED, DEFAULT_TOLERANCE,
};
pub use error::{GeometryError, Result};
pub use heisenberg::{
    base_geodesic_closed_form, base_geodesic_rhs, christoffel_coord, coord_to_frame,
    covariant_deriv_along, curvature_apply, curvature_frame, curvature_from_connection, frame_at,
    frame_connection, frame_to_coord, integrate_base_geodesic, metric_at, BaseGeodesicParams, BasePoint, Christoffel, ConnectionTable,
    CoordVector, CurvatureTable, FrameVector, MetricMatrix, SampledCurve, W_EPS,
};
pub use ode::{residual_scan, rk4, Integration, IntegratorConfig, ResidualSummary, Trajectory};
pub use sasaki::{
    bundle_geodesic_defect, bundle_geodesic_rhs, euler_lagrange_residuals, fiber_geodesic, fiber_geodesic_rate,
    horizontal_lift_curve, integrate_bundle_geodesic, lagrangian, natural_lift_curve,
    sasaki_connection, sasaki_metric, sasaki_quadratic_coords, sist_rhs, special_geodesic, special_geodesic_rate,
    BundlePoint, BundleState, BundleTrajectory, BundleVector, ElResiduals, LiftInitialData, HORIZONTAL_LIFT_TOL,
};
pub use verify::{run_all, VerifyCheck, VerifyOptions, VerifyReport};
