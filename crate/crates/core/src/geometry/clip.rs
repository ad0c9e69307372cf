use super::arc::CircularArc;
use super::curve::ApwCurve;
use super::point::{length_tol, Point};
use super::polygon::{Location, PlotPolygon};
use crate::scalar::Scalar;

/// Sub-arcs shorter than this are dropped by clipping, metres.
pub const MIN_PIECE_LENGTH: f64 = 0.5;

/// Polar angles where the circle of `arc` meets segment `a b`.
fn circle_segment_angles<T: Scalar>(centre: Point<T>, radius: T, a: Point<T>, b: Point<T>, out: &mut Vec<T>) {
    let d = b - a;
    let f = a - centre;
    let qa = d.norm_squared();
    if qa == T::zero() {
        return;
    }
    let fnorm = f.norm();
    // |f|^2 - r^2 factored to limit cancellation at large radii
    let qc = (fnorm - radius) * (fnorm + radius);
    let qb = f.dot(d);
    let disc = qb * qb - qa * qc;
    let scale = qb * qb + (qa * qc).abs();
    let eps = T::epsilon() * T::lit(64.0) * scale;
    if disc < -eps {
        return;
    }
    let root = disc.max(T::zero()).sqrt();
    // stable quadratic roots
    let q = -(qb + qb.signum() * root);
    let mut ts = Vec::with_capacity(2);
    if q != T::zero() {
        ts.push(q / qa);
        ts.push(qc / q);
    } else {
        ts.push(T::zero());
    }
    let tol = T::lit(1e-12);
    for t in ts {
        if t >= -tol && t <= T::one() + tol {
            let p = a + d * t.max(T::zero()).min(T::one());
            out.push((p - centre).angle());
        }
    }
}

/// Angular intervals `(from, to)` of `arc` lying inside `plot`, measured as
/// offsets along the sweep.
fn inside_intervals<T: Scalar>(arc: &CircularArc<T>, plot: &PlotPolygon<T>, min_len: T) -> Vec<(T, T)> {
    let total = arc.sweep.abs();
    let mut angles = Vec::new();
    for (a, b) in plot.edges() {
        circle_segment_angles(arc.centre, arc.radius, a, b, &mut angles);
    }
    let mut cuts: Vec<T> = angles
        .into_iter()
        .map(|ang| arc.offset_of_angle(ang))
        .filter(|u| *u > T::zero() && *u < total)
        .collect();
    cuts.push(T::zero());
    cuts.push(total);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mag = arc.centre.magnitude().max(arc.radius);
    let ang_tol = length_tol(1e-9, mag) / arc.radius;
    cuts.dedup_by(|b, a| (*b - *a).abs() <= ang_tol);
    if let Some(last) = cuts.last_mut() {
        *last = total;
    }

    let mut kept: Vec<(T, T)> = Vec::new();
    for w in cuts.windows(2) {
        let (u0, u1) = (w[0], w[1]);
        if u1 <= u0 {
            continue;
        }
        let mid = arc.point_at_angle(arc.start_angle + arc.orientation() * (u0 + u1) / T::two());
        if plot.locate(mid) != Location::Outside {
            match kept.last_mut() {
                Some(prev) if (prev.1 - u0).abs() <= ang_tol => prev.1 = u1,
                _ => kept.push((u0, u1)),
            }
        }
    }
    // a full circle wraps around
    let full = (total - T::TAU()).abs() <= ang_tol;
    if full && kept.len() >= 2 {
        let first = kept[0];
        let last = kept[kept.len() - 1];
        if first.0 <= ang_tol && (last.1 - total).abs() <= ang_tol {
            kept.remove(0);
            let n = kept.len();
            kept[n - 1].1 = total + first.1;
        }
    }
    kept.retain(|(u0, u1)| (*u1 - *u0) * arc.radius >= min_len);
    kept
}

/// In-plot pieces of a single arc.
pub fn clip_arc<T: Scalar>(arc: &CircularArc<T>, plot: &PlotPolygon<T>, min_len: T) -> Vec<CircularArc<T>> {
    inside_intervals(arc, plot, min_len)
        .into_iter()
        .map(|(u0, u1)| arc.sub_arc(u0, u1))
        .collect()
}

/// In-plot pieces of an apw curve, in travel order. Pieces that continue
/// across a joint stay in one curve.
pub fn clip_curve<T: Scalar>(curve: &ApwCurve<T>, plot: &PlotPolygon<T>, min_len: T) -> Vec<ApwCurve<T>> {
    let mut pieces: Vec<Vec<CircularArc<T>>> = Vec::new();
    let mut open = false;
    for arc in curve.arcs() {
        let total = arc.sweep.abs();
        let mag = arc.centre.magnitude().max(arc.radius);
        let ang_tol = length_tol(1e-9, mag) / arc.radius;
        // keep tiny intervals here so joint continuity is judged before dropping
        let intervals = inside_intervals(arc, plot, T::zero());
        let mut touches_end = false;
        for (k, (u0, u1)) in intervals.iter().enumerate() {
            let sub = arc.sub_arc(*u0, *u1);
            if k == 0 && open && *u0 <= ang_tol {
                pieces.last_mut().unwrap().push(sub);
            } else {
                pieces.push(vec![sub]);
            }
            touches_end = (total - *u1).abs() <= ang_tol;
        }
        open = touches_end && !intervals.is_empty();
    }
    pieces
        .into_iter()
        .map(ApwCurve::from_arcs_unchecked)
        .filter(|c| c.length() >= min_len)
        .collect()
}
