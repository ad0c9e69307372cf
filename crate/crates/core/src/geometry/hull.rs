use std::cmp::Ordering;

use super::point::{length_tol, orient, Point};
use super::polygon::{PlotPolygon, VERTEX_TOLERANCE};
use super::GeometryError;
use crate::scalar::Scalar;

/// Convex hull in counter-clockwise order (monotone chain). Collinear
/// boundary points are not hull vertices.
pub fn convex_hull<T: Scalar>(points: &[Point<T>]) -> Result<PlotPolygon<T>, GeometryError> {
    let mut pts: Vec<Point<T>> = points.to_vec();
    pts.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap_or(Ordering::Equal)
            .then(a.y.partial_cmp(&b.y).unwrap_or(Ordering::Equal))
    });
    pts.dedup();
    if pts.len() < 3 {
        return Err(GeometryError::DegenerateHull);
    }

    let mut lower: Vec<Point<T>> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= T::zero() {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point<T>> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= T::zero() {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(GeometryError::DegenerateHull);
    }
    Ok(PlotPolygon::from_vertices_unchecked(lower))
}

/// Vertices of `plot` with collinear (straight-angle) vertices removed.
pub fn strip_collinear<T: Scalar>(plot: &PlotPolygon<T>) -> Vec<Point<T>> {
    let v = plot.vertices();
    let n = v.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let prev = v[(i + n - 1) % n];
        let next = v[(i + 1) % n];
        let a = v[i] - prev;
        let b = next - v[i];
        let cross = a.cross(b);
        let collinear = cross.abs() <= T::lit(1e-9) * a.norm() * b.norm() && a.dot(b) > T::zero();
        if !collinear {
            out.push(v[i]);
        }
    }
    out
}

/// A polygon is convex iff its non-collinear vertices coincide with the
/// vertices of its hull.
pub fn is_convex<T: Scalar>(plot: &PlotPolygon<T>) -> bool {
    let hull = match convex_hull(plot.vertices()) {
        Ok(h) => h,
        Err(_) => return false,
    };
    let reduced = strip_collinear(plot);
    if reduced.len() != hull.len() {
        return false;
    }
    let tol = length_tol(VERTEX_TOLERANCE, plot.magnitude());
    reduced
        .iter()
        .all(|p| hull.vertices().iter().any(|h| h.distance(*p) <= tol))
}
