use serde::{Deserialize, Serialize};

use super::prototype::{farthest_crossing_pair, Prototype};
use super::slope::{check_angle, slope_profile, AngleCheck};
use super::{PlanError, PlanParams};
use crate::geometry::{arc_from_three_points, min_distance_to_points, DistanceRange, Location, PlotPolygon};
use crate::{Arc64, Curve64, Point2, Sample64, Surface64};

/// Sentinel for "no line count yet".
pub const NAF_SENTINEL: usize = 999;

/// Smallest rise of the extremities over the middle point that still counts
/// as a draining master when breaking ties.
pub const MIN_END_RISE: f64 = 0.01;

/// Number of lines between the nearest and farthest boundary distance from
/// the centre, rounded up.
pub fn line_count_estimate(max_distance: f64, d: f64, spacing: f64) -> usize {
    let x = (max_distance - d) / spacing;
    if x <= 0.0 {
        0
    } else {
        (x - 1e-9).ceil().max(0.0) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitReason {
    /// `d` reached the minimum radius and the line count stopped improving.
    Converged,
    /// `de` fell to the floor.
    DeFloor,
    /// Iteration cap reached before either rule fired.
    IterationCap,
    /// The extremities lined up with the middle point.
    Collinear,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub iteration: usize,
    pub de: f64,
    pub e1: Point2,
    pub e2: Point2,
    pub centre: Point2,
    pub radius: f64,
    /// Nearest boundary sample distance from the centre.
    pub d: f64,
    /// Farthest boundary sample distance from the centre.
    pub d_max: f64,
    pub naf: usize,
    pub nbf: usize,
    /// Centre lies inside the sampled boundary.
    pub centre_inside: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizationTrace {
    /// Step 0 is the prototype arc.
    pub steps: Vec<TraceStep>,
    pub exit: ExitReason,
    /// Index of the returned step.
    pub best: usize,
    pub nbf: usize,
    pub naf: usize,
}

impl OptimizationTrace {
    pub fn iterations(&self) -> usize {
        self.steps.len() - 1
    }
}

/// Optimized master arc with its trace and slope verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MasterLine {
    pub arc: Arc64,
    pub prototype: Prototype,
    pub trace: OptimizationTrace,
    pub distances: DistanceRange<f64>,
    pub angle: AngleCheck,
}

impl MasterLine {
    pub fn curve(&self) -> Curve64 {
        Curve64::single(self.arc)
    }

    pub fn best_step(&self) -> &TraceStep {
        &self.trace.steps[self.trace.best]
    }
}

#[allow(clippy::too_many_arguments)]
fn evaluate(
    iteration: usize,
    de: f64,
    e1: Point2,
    e2: Point2,
    prototype: &Prototype,
    sample: &Sample64,
    spacing: f64,
    nbf: usize,
) -> Result<(TraceStep, Arc64), PlanError> {
    let arc = arc_from_three_points(e1, prototype.mp, e2)?;
    let range = min_distance_to_points(arc.centre, &sample.points);
    let step = TraceStep {
        iteration,
        de,
        e1,
        e2,
        centre: arc.centre,
        radius: arc.radius,
        d: range.min,
        d_max: range.max,
        naf: line_count_estimate(range.max, range.min, spacing),
        nbf,
        centre_inside: point_in_ring(arc.centre, &sample.points),
    };
    Ok((step, arc))
}

fn point_in_ring(p: Point2, ring: &[Point2]) -> bool {
    PlotPolygon::from_vertices_unchecked(ring.to_vec()).locate(p) == Location::Inside
}

/// Flattens the prototype arc by halving `de` and re-placing the extremities
/// on the level `zp + de`, until the centre clears `min_radius` and the line
/// count stops improving.
pub fn optimize_master_line(
    prototype: &Prototype,
    sample: &Sample64,
    surface: &Surface64,
    params: &PlanParams,
) -> Result<MasterLine, PlanError> {
    let values = prototype.model.boundary_values(sample, surface);
    let (first, first_arc) = evaluate(
        0,
        prototype.de,
        prototype.e1,
        prototype.e2,
        prototype,
        sample,
        params.spacing,
        NAF_SENTINEL,
    )?;
    let mut steps = vec![first];
    let mut arcs = vec![first_arc];

    let mut nbf = NAF_SENTINEL;
    let mut naf = NAF_SENTINEL;
    let mut de = prototype.de;
    let mut d = first.d;
    let (mut e1, mut e2) = (prototype.e1, prototype.e2);
    let exit = loop {
        let keep_going = (d < params.min_radius || naf <= nbf) && de > params.de_floor;
        if !keep_going {
            break if de > params.de_floor {
                ExitReason::Converged
            } else {
                ExitReason::DeFloor
            };
        }
        if steps.len() > params.max_iters {
            break ExitReason::IterationCap;
        }
        nbf = naf;
        de /= 2.0;
        if let Some((a, b)) = farthest_crossing_pair(&sample.points, &values, prototype.zp + de) {
            e1 = a;
            e2 = b;
        }
        match evaluate(steps.len(), de, e1, e2, prototype, sample, params.spacing, nbf) {
            Ok((step, arc)) => {
                d = step.d;
                naf = step.naf;
                steps.push(step);
                arcs.push(arc);
            }
            Err(PlanError::Geometry(_)) => break ExitReason::Collinear,
            Err(e) => return Err(e),
        }
    };

    let mut best = 0;
    for (i, s) in steps.iter().enumerate() {
        let b = &steps[best];
        let rank = |t: &TraceStep| {
            (
                t.d >= params.min_radius && !t.centre_inside,
                t.de >= MIN_END_RISE,
                std::cmp::Reverse(t.naf),
            )
        };
        if rank(s) > rank(b) || (rank(s) == rank(b) && s.d > b.d) {
            best = i;
        }
    }
    let arc = arcs[best];
    let distances = min_distance_to_points(arc.centre, &sample.points);
    let profile = slope_profile(&Curve64::single(arc), surface, 1.0);
    let angle = check_angle(&profile, params.max_slope_deg);
    Ok(MasterLine {
        arc,
        prototype: *prototype,
        trace: OptimizationTrace {
            steps,
            exit,
            best,
            nbf,
            naf,
        },
        distances,
        angle,
    })
}
