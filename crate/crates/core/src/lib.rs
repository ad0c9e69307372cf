//! Plantation-line planning: terrain surface fitting, arc-piecewise master
//! lines, parallel line families and field-level diagnostics.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod export;
pub mod geometry;
pub mod ingest;
pub mod planner;
pub mod scalar;
pub mod surface;

pub use scalar::Scalar;

pub type Point2 = geometry::Point<f64>;
pub type Arc64 = geometry::CircularArc<f64>;
pub type Curve64 = geometry::ApwCurve<f64>;
pub type Plot64 = geometry::PlotPolygon<f64>;
pub type Sample64 = geometry::BoundarySample<f64>;
pub type Bounds64 = geometry::Bounds<f64>;
pub type Terrain64 = ingest::LevelCurveSet<f64>;
pub type Pairs64 = ingest::SubdivisionPairs<f64>;
pub type Grid64 = surface::SampleGrid<f64>;
pub type Surface64 = surface::PolynomialSurface<f64>;

pub type Point32 = geometry::Point<f32>;
pub type Arc32 = geometry::CircularArc<f32>;
pub type Curve32 = geometry::ApwCurve<f32>;
pub type Plot32 = geometry::PlotPolygon<f32>;
pub type Surface32 = surface::PolynomialSurface<f32>;
