//! Planar geometric kernel: arcs, arc-piecewise curves and their parallels,
//! polygons, convex hulls and boundary resampling.

mod arc;
mod clip;
mod curve;
mod hull;
mod point;
mod polygon;
mod sample;

pub use arc::{arc_from_three_points, circle_through, CircularArc};
pub use clip::{clip_arc, clip_curve, MIN_PIECE_LENGTH};
pub use curve::{offset_apw, ApwCurve, CONTINUITY_ANGLE, CONTINUITY_GAP};
pub use hull::{convex_hull, is_convex, strip_collinear};
pub use point::{orient, segment_distance, segments_cross_properly, segments_intersect, Point};
pub use polygon::{point_in_polygon, Bounds, Location, PlotPolygon, BOUNDARY_BAND, VERTEX_TOLERANCE};
pub use sample::{min_distance_to_points, resample_boundary, BoundarySample, DistanceRange, DEFAULT_MAX_STEP};

pub(crate) use arc::same_circle;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("points are collinear; no circle passes through them")]
    CollinearPoints,
    #[error("invalid arc (radius {radius}, sweep {sweep})")]
    InvalidArc { radius: f64, sweep: f64 },
    #[error("curve has no arcs or zero length")]
    EmptyCurve,
    #[error("arcs {index} and {} are not tangent-continuous (gap {gap} m, angle {angle} rad)", index + 1)]
    Discontinuity { index: usize, gap: f64, angle: f64 },
    #[error("offset collapses arc {index} through its centre")]
    OffsetCollapse { index: usize },
    #[error("all points are collinear; hull is degenerate")]
    DegenerateHull,
    #[error("polygon needs at least 3 distinct vertices, got {count}")]
    DegeneratePolygon { count: usize },
    #[error("vertex {index} duplicates its predecessor")]
    DuplicateVertex { index: usize },
    #[error("vertex {index} is not finite")]
    NonFinite { index: usize },
    #[error("polygon edges {first} and {second} intersect")]
    SelfIntersecting { first: usize, second: usize },
}
