//! The tangent bundle `TH3` with the Sasaki metric.
//!
//! Tangent vectors of `TH3` are carried in the adapted frame
//! `{E1^H, E2^H, E3^H, E1^V, E2^V, E3^V}`, which is orthonormal for the Sasaki
//! metric. Geodesic states carry `Dy/dt` rather than `dy/dt` as the fiber
//! velocity.

mod bundle;
mod geodesic;
mod lift;

pub use bundle::{sasaki_connection, sasaki_metric, sasaki_quadratic_coords, BundlePoint, BundleVector};
pub use geodesic::{
    bundle_geodesic_defect, bundle_geodesic_rhs, euler_lagrange_residuals, fiber_geodesic,
    fiber_geodesic_rate, integrate_bundle_geodesic, lagrangian, sist_rhs, special_geodesic,
    special_geodesic_rate, BundleState, BundleTrajectory, ElResiduals, LiftInitialData,
};
pub use lift::{horizontal_lift_curve, natural_lift_curve, HORIZONTAL_LIFT_TOL};
