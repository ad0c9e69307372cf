use crate::{Arc64, Curve64, Point2};

/// Largest distance between a flattened polyline and its arc, metres.
pub const FLATTEN_TOLERANCE: f64 = 0.1;

/// Polyline through the arc whose chords stay within `tol` of it.
pub fn flatten_arc(arc: &Arc64, tol: f64) -> Vec<Point2> {
    let step = if tol >= arc.radius {
        std::f64::consts::PI
    } else {
        2.0 * (1.0 - tol / arc.radius).acos()
    };
    let n = (arc.sweep.abs() / step).ceil().max(1.0) as usize;
    (0..=n)
        .map(|k| arc.point_at_angle(arc.start_angle + arc.sweep * (k as f64 / n as f64)))
        .collect()
}

/// Flattened curve; joints appear once.
pub fn flatten_curve(curve: &Curve64, tol: f64) -> Vec<Point2> {
    let mut out: Vec<Point2> = Vec::new();
    for arc in curve.arcs() {
        let pts = flatten_arc(arc, tol);
        let skip = usize::from(!out.is_empty());
        out.extend_from_slice(&pts[skip..]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    #[test]
    fn sagitta_within_tolerance() {
        let arc = Arc64::new(Point::new(3.0, -2.0), 80.0, 0.3, 2.5).unwrap();
        let pts = flatten_arc(&arc, 0.1);
        assert_eq!(pts[0], arc.start());
        assert!(pts.last().unwrap().distance(arc.end()) < 1e-9);
        for w in pts.windows(2) {
            let mid = w[0].midpoint(w[1]);
            let dev = arc.radius - mid.distance(arc.centre);
            assert!((0.0..=0.1 + 1e-12).contains(&dev));
        }
    }
}
