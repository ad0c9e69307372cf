use serde::{Deserialize, Serialize};

use super::point::Point;
use super::polygon::PlotPolygon;
use crate::scalar::Scalar;

/// Default boundary resampling step, metres.
pub const DEFAULT_MAX_STEP: f64 = 10.0;

/// Walks the boundary splitting each edge of length `L` into `ceil(L / max_step)`
/// equal pieces. Original vertices are kept and come first on their edge.
pub fn resample_boundary<T: Scalar>(plot: &PlotPolygon<T>, max_step: T) -> Vec<Point<T>> {
    resample_with_flags(plot, max_step).0
}

fn resample_with_flags<T: Scalar>(plot: &PlotPolygon<T>, max_step: T) -> (Vec<Point<T>>, Vec<bool>) {
    assert!(max_step > T::zero(), "max_step must be positive");
    let mut points = Vec::new();
    let mut flags = Vec::new();
    for (a, b) in plot.edges() {
        let len = a.distance(b);
        let pieces = (len / max_step).ceil().to_usize().unwrap_or(1).max(1);
        points.push(a);
        flags.push(true);
        for k in 1..pieces {
            points.push(a.lerp(b, T::lit(k as f64) / T::lit(pieces as f64)));
            flags.push(false);
        }
    }
    (points, flags)
}

/// Densified boundary with elevations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundarySample<T> {
    pub points: Vec<Point<T>>,
    pub source_vertex_flags: Vec<bool>,
    pub zc: Vec<T>,
}

impl<T: Scalar> BoundarySample<T> {
    pub fn new<F: Fn(Point<T>) -> T>(plot: &PlotPolygon<T>, max_step: T, elevation: F) -> Self {
        let (points, source_vertex_flags) = resample_with_flags(plot, max_step);
        let zc = points.iter().map(|&p| elevation(p)).collect();
        Self {
            points,
            source_vertex_flags,
            zc,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Nearest and farthest sample points from a centre.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceRange<T> {
    pub min: T,
    pub max: T,
    pub nearest: usize,
    pub farthest: usize,
}

/// Exhaustive min/max Euclidean distance from `c` to `sample`. Ties keep the
/// earliest index.
pub fn min_distance_to_points<T: Scalar>(c: Point<T>, sample: &[Point<T>]) -> DistanceRange<T> {
    assert!(!sample.is_empty(), "sample must be non-empty");
    let mut out = DistanceRange {
        min: T::infinity(),
        max: T::neg_infinity(),
        nearest: 0,
        farthest: 0,
    };
    for (i, p) in sample.iter().enumerate() {
        let d = c.distance(*p);
        if d < out.min {
            out.min = d;
            out.nearest = i;
        }
        if d > out.max {
            out.max = d;
            out.farthest = i;
        }
    }
    out
}
