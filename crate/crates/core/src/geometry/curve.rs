use serde::{Deserialize, Serialize};

use super::arc::{same_circle, CircularArc};
use super::point::{length_tol, Point};
use super::GeometryError;
use crate::scalar::Scalar;

/// Maximum joint gap between consecutive arcs, metres.
pub const CONTINUITY_GAP: f64 = 1e-6;
/// Maximum tangent mismatch between consecutive arcs, radians.
pub const CONTINUITY_ANGLE: f64 = 1e-6;

/// Arc-piecewise curve: tangent-continuous sequence of circular arcs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApwCurve<T> {
    arcs: Vec<CircularArc<T>>,
}

impl<T: Scalar> ApwCurve<T> {
    /// Builds a curve and checks G1 continuity at every joint.
    pub fn new(arcs: Vec<CircularArc<T>>) -> Result<Self, GeometryError> {
        let curve = Self { arcs };
        curve.check_continuity()?;
        Ok(curve)
    }

    pub fn single(arc: CircularArc<T>) -> Self {
        Self { arcs: vec![arc] }
    }

    /// Skips the continuity check; callers guarantee the joints.
    pub(crate) fn from_arcs_unchecked(arcs: Vec<CircularArc<T>>) -> Self {
        debug_assert!(!arcs.is_empty());
        Self { arcs }
    }

    pub fn arcs(&self) -> &[CircularArc<T>] {
        &self.arcs
    }

    pub fn first(&self) -> &CircularArc<T> {
        &self.arcs[0]
    }

    pub fn last(&self) -> &CircularArc<T> {
        &self.arcs[self.arcs.len() - 1]
    }

    pub fn start(&self) -> Point<T> {
        self.first().start()
    }

    pub fn end(&self) -> Point<T> {
        self.last().end()
    }

    pub fn length(&self) -> T {
        self.arcs.iter().fold(T::zero(), |acc, a| acc + a.length())
    }

    /// Arc-length partition points, ending at the total length.
    pub fn breakpoints(&self) -> Vec<T> {
        let mut acc = T::zero();
        self.arcs
            .iter()
            .map(|a| {
                acc = acc + a.length();
                acc
            })
            .collect()
    }

    fn locate(&self, t: T) -> (&CircularArc<T>, T) {
        let mut rest = t.max(T::zero());
        for arc in &self.arcs {
            let len = arc.length();
            if rest <= len {
                return (arc, rest);
            }
            rest = rest - len;
        }
        let last = self.last();
        (last, last.length())
    }

    /// Point at arc length `t`, clamped to the curve.
    pub fn point_at(&self, t: T) -> Point<T> {
        let (arc, local) = self.locate(t);
        arc.point_at(local)
    }

    pub fn tangent_at(&self, t: T) -> Point<T> {
        let (arc, local) = self.locate(t);
        arc.tangent_at(local)
    }

    /// Minimum radius over all pieces.
    pub fn min_radius(&self) -> T {
        self.arcs.iter().fold(T::infinity(), |m, a| m.min(a.radius))
    }

    /// Samples `(t, point, unit tangent)` every `step` metres, endpoints included.
    pub fn sample(&self, step: T) -> Vec<(T, Point<T>, Point<T>)> {
        let len = self.length();
        let n = (len / step).ceil().to_usize().unwrap_or(1).max(1);
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let t = if k == n { len } else { step * T::lit(k as f64) };
            out.push((t, self.point_at(t), self.tangent_at(t)));
        }
        out
    }

    pub fn reversed(&self) -> Self {
        Self {
            arcs: self.arcs.iter().rev().map(CircularArc::reversed).collect(),
        }
    }

    /// Verifies joint coincidence and tangent agreement.
    pub fn check_continuity(&self) -> Result<(), GeometryError> {
        if self.arcs.is_empty() {
            return Err(GeometryError::EmptyCurve);
        }
        for (index, pair) in self.arcs.windows(2).enumerate() {
            let (a, b) = (&pair[0], &pair[1]);
            let gap = a.end().distance(b.start());
            let mag = a
                .centre
                .magnitude()
                .max(a.radius)
                .max(b.centre.magnitude())
                .max(b.radius);
            let ta = a.end_tangent();
            let tb = b.start_tangent();
            let angle = ta.cross(tb).atan2(ta.dot(tb)).abs();
            let angle_tol = T::lit(CONTINUITY_ANGLE).max(T::epsilon() * T::lit(64.0));
            if !(gap <= length_tol(CONTINUITY_GAP, mag)) || !(angle <= angle_tol) {
                return Err(GeometryError::Discontinuity {
                    index,
                    gap: gap.as_f64(),
                    angle: angle.as_f64(),
                });
            }
        }
        if !(self.length() > T::zero()) || !self.length().is_finite() {
            return Err(GeometryError::EmptyCurve);
        }
        Ok(())
    }

    /// Merges consecutive pieces that lie on the same oriented circle.
    pub fn merged(&self) -> Self {
        let mut arcs: Vec<CircularArc<T>> = Vec::with_capacity(self.arcs.len());
        for arc in &self.arcs {
            match arcs.last_mut() {
                Some(prev) if same_circle(prev, arc) && (prev.sweep + arc.sweep).abs() <= T::TAU() => {
                    prev.sweep = prev.sweep + arc.sweep;
                }
                _ => arcs.push(*arc),
            }
        }
        Self { arcs }
    }

    /// Extends the first arc backwards by `before` radians and the last arc
    /// forwards by `after` radians, each along its own circle.
    pub fn extended(&self, before: T, after: T) -> Self {
        let mut arcs = self.arcs.clone();
        let s = arcs[0].orientation();
        arcs[0].start_angle = arcs[0].start_angle - s * before;
        arcs[0].sweep = arcs[0].sweep + s * before;
        let n = arcs.len() - 1;
        let s = arcs[n].orientation();
        arcs[n].sweep = arcs[n].sweep + s * after;
        Self { arcs }
    }
}

/// Parallel curve at signed distance `s` along the left normal.
///
/// Centres and sweeps are kept; every radius moves by `s` toward or away from
/// its centre depending on the arc's orientation.
pub fn offset_apw<T: Scalar>(curve: &ApwCurve<T>, s: T) -> Result<ApwCurve<T>, GeometryError> {
    let mut arcs = Vec::with_capacity(curve.arcs.len());
    for (index, arc) in curve.arcs.iter().enumerate() {
        // left normal points at the centre for counter-clockwise arcs
        let radius = arc.radius - arc.orientation() * s;
        if !(radius > T::zero()) {
            return Err(GeometryError::OffsetCollapse { index });
        }
        arcs.push(CircularArc { radius, ..*arc });
    }
    Ok(ApwCurve::from_arcs_unchecked(arcs))
}
