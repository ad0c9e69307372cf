use super::parallels::{extend_master, generate_parallels, CoveragePlan};
use super::PlanParams;
use crate::geometry::{offset_apw, resample_boundary, Location};
use crate::{Curve64, Plot64, Point2};

/// Number of trial shifts across one spacing.
const PHASE_STEPS: usize = 40;
/// Line points this close outside the boundary still count as reaching it.
const EDGE_SLACK: f64 = 0.1;

/// Arc index and signed offset of `p` from the curve, over arcs whose
/// angular range contains `p`; the nearest such arc wins.
fn project(curve: &Curve64, p: Point2) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, a) in curve.arcs().iter().enumerate() {
        let u = a.offset_of_angle((p - a.centre).angle());
        if u > a.sweep.abs() {
            continue;
        }
        let s = a.orientation() * (a.radius - p.distance(a.centre));
        if best.is_none_or(|(_, b)| s.abs() < b.abs()) {
            best = Some((i, s));
        }
    }
    best
}

/// Boundary points every metre, each repeated at several depths into the plot.
pub(crate) fn boundary_probes(plot: &Plot64, spacing: f64) -> Vec<Point2> {
    let plot = plot.to_ccw();
    let ring = resample_boundary(&plot, 1.0);
    let n = ring.len();
    let mut out = Vec::with_capacity(n * 7);
    for i in 0..n {
        let a = ring[i];
        let Some(dir) = (ring[(i + 1) % n] - a).normalized() else {
            continue;
        };
        let inward = dir.perp();
        for k in 0..=6 {
            let p = a + inward * (spacing * k as f64 / 6.0);
            if plot.locate(p) != Location::Outside {
                out.push(p);
            }
        }
    }
    out
}

/// Worst probe distances to the nearest in-plot line of the family `master`
/// offset by `shift + k * spacing`: first over probes reached by a line on
/// one side only, then over probes lying between two in-plot lines.
pub(crate) fn coverage_gap(master: &Curve64, plot: &Plot64, spacing: f64, shift: f64, probes: &[Point2]) -> (f64, f64) {
    let (mut one_sided, mut between) = (0.0f64, 0.0f64);
    for &p in probes {
        let Some((i, s)) = project(master, p) else { continue };
        let a = &master.arcs()[i];
        let u = (p - a.centre).normalized().unwrap_or(Point2::new(1.0, 0.0));
        let k0 = ((s - shift) / spacing).floor();
        let mut best = spacing;
        let mut reached = 0;
        for k in [k0, k0 + 1.0] {
            let sk = shift + k * spacing;
            let r = a.radius - a.orientation() * sk;
            if r <= 0.0 {
                continue;
            }
            let q = a.centre + u * r;
            if plot.locate(q) == Location::Outside && plot.distance_to_boundary(q) > EDGE_SLACK {
                continue;
            }
            reached += 1;
            best = best.min((s - sk).abs());
        }
        if reached == 2 {
            between = between.max(best);
        } else {
            one_sided = one_sided.max(best);
        }
    }
    (one_sided, between)
}

/// Radial shift of the line family, within half a spacing, that minimizes the
/// worst one-sided gap. Returns the shift and the overall worst gap.
pub(crate) fn select_phase(master: &Curve64, plot: &Plot64, spacing: f64) -> (f64, f64) {
    let probes = boundary_probes(plot, spacing);
    let base = coverage_gap(master, plot, spacing, 0.0, &probes);
    let mut best = (0.0f64, base);
    for j in 0..PHASE_STEPS {
        let shift = spacing * (j as f64 / PHASE_STEPS as f64 - 0.5);
        let gap = coverage_gap(master, plot, spacing, shift, &probes);
        let better = gap.0 < best.1 .0 - 1e-9 || ((gap.0 - best.1 .0).abs() <= 1e-9 && shift.abs() < best.0.abs());
        if better {
            best = (shift, gap);
        }
    }
    (best.0, best.1 .0.max(best.1 .1))
}

/// Parallels of `master` with the family shifted to the best phase.
pub(crate) fn phased_parallels(master: &Curve64, plot: &Plot64, params: &PlanParams) -> CoveragePlan {
    let extended = extend_master(master, plot);
    let (shift, gap) = select_phase(&extended, plot, params.spacing);
    let shifted = if shift == 0.0 {
        None
    } else {
        offset_apw(master, shift).ok()
    };
    let mut plan = match &shifted {
        Some(m) => {
            let mut plan = generate_parallels(m, plot, params);
            plan.phase_shift = shift;
            plan.diagnostics.coverage_gap = Some(gap);
            plan
        }
        None => generate_parallels(master, plot, params),
    };
    if plan.diagnostics.coverage_gap.is_none() {
        let probes = boundary_probes(plot, params.spacing);
        let (one_sided, between) = coverage_gap(&extended, plot, params.spacing, 0.0, &probes);
        plan.diagnostics.coverage_gap = Some(one_sided.max(between));
    }
    plan
}
