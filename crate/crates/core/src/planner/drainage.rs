use serde::{Deserialize, Serialize};

use super::parallels::CoveragePlan;
use crate::{Curve64, Surface64};

/// Margin by which each extremity must sit above the lowest interior point, metres.
pub const DRAINAGE_TOLERANCE: f64 = 1e-4;
/// Terrain change across one line spacing below which ground counts as flat, metres.
pub const FLAT_THRESHOLD: f64 = 0.01;
/// Interior sampling step, metres.
const SAMPLE_STEP: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DrainageResult {
    pub line_index: i64,
    pub pass: bool,
    /// Passed only because the ground under the line is flat.
    pub flat: bool,
    pub start_z: f64,
    pub end_z: f64,
    pub min_interior_z: f64,
    /// Lower extremity minus lowest interior elevation.
    pub margin: f64,
}

/// Drainage verdict for one plantation line made of its in-plot pieces, in
/// travel order.
pub fn line_drainage(line_index: i64, pieces: &[Curve64], surface: &Surface64, spacing: f64) -> DrainageResult {
    let mut samples = Vec::new();
    let mut max_grad = 0.0f64;
    for piece in pieces {
        let len = piece.length();
        let step = SAMPLE_STEP.min(len / 2.0);
        for (_, p, _) in piece.sample(step) {
            samples.push(surface.eval_at(p));
            max_grad = max_grad.max(surface.gradient_at(p).norm());
        }
    }
    if samples.len() < 3 {
        return DrainageResult {
            line_index,
            pass: true,
            flat: true,
            start_z: samples.first().copied().unwrap_or(0.0),
            end_z: samples.last().copied().unwrap_or(0.0),
            min_interior_z: f64::NAN,
            margin: 0.0,
        };
    }
    let start_z = samples[0];
    let end_z = samples[samples.len() - 1];
    let min_interior_z = samples[1..samples.len() - 1]
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let margin = start_z.min(end_z) - min_interior_z;
    let flat = max_grad * spacing < FLAT_THRESHOLD;
    let drains = margin > DRAINAGE_TOLERANCE;
    DrainageResult {
        line_index,
        pass: drains || flat,
        flat: flat && !drains,
        start_z,
        end_z,
        min_interior_z,
        margin,
    }
}

/// Drainage verdict for every line of a plan.
pub fn check_drainage(plan: &CoveragePlan, surface: &Surface64) -> Vec<DrainageResult> {
    plan.parallels
        .iter()
        .map(|l| line_drainage(l.index, &l.pieces, surface, plan.params.spacing))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ApwCurve, CircularArc, Point};
    use std::f64::consts::PI;

    fn valley_arc() -> Curve64 {
        // Lower half circle: ends at y = 0, bottom at y = -100.
        ApwCurve::single(CircularArc::new(Point::new(0.0, 0.0), 100.0, PI, PI).unwrap())
    }

    #[test]
    fn ends_above_interior_pass() {
        let s = Surface64::planar(0.0, 0.01, 10.0);
        let r = line_drainage(0, &[valley_arc()], &s, 3.0);
        assert!(r.pass && !r.flat);
        assert!((r.start_z - 10.0).abs() < 1e-9);
        assert!((r.min_interior_z - 9.0).abs() < 1e-3);
    }

    #[test]
    fn level_line_fails() {
        // Upper half circle on terrain rising towards +y: the ends are the low points.
        let s = Surface64::planar(0.0, 0.02, 0.0);
        let arc = ApwCurve::single(CircularArc::new(Point::new(0.0, 0.0), 100.0, 0.0, PI).unwrap());
        assert!(!line_drainage(0, &[arc], &s, 3.0).pass);
        // A straight-ish line along y = const sits on one contour.
        let level = ApwCurve::single(CircularArc::new(Point::new(0.0, -1e7), 1e7, PI / 2.0 + 1e-5, -2e-5).unwrap());
        let r = line_drainage(0, &[level], &s, 3.0);
        assert!(!r.pass, "{r:?}");
    }

    #[test]
    fn flat_ground_passes_with_flag() {
        let r = line_drainage(0, &[valley_arc()], &Surface64::constant(2.0), 3.0);
        assert!(r.pass && r.flat);
    }
}
