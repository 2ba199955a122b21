//! The base manifold `(H3, g)` with `g = (dx1)^2 + (dx2)^2 + (dx3 + x2 dx1 - x1 dx2)^2`.

mod connection;
mod curvature;
mod curve;
mod frame;
mod geodesic;
mod types;

pub use connection::{christoffel_coord, frame_connection, Christoffel, ConnectionTable};
pub use curvature::{curvature_apply, curvature_frame, curvature_from_connection, CurvatureTable};
pub use curve::{covariant_deriv_along, SampledCurve};
pub use frame::{coord_to_frame, frame_at, frame_to_coord, metric_at};
pub use geodesic::{
    base_geodesic_closed_form, base_geodesic_rhs, integrate_base_geodesic, BaseGeodesicParams, W_EPS,
};
pub use types::{BasePoint, CoordVector, FrameVector, MetricMatrix};
