use serde::{Deserialize, Serialize};

use super::diagnostics::Diagnostics;
use super::optimize::MasterLine;
use super::parallels::{assess_plan, CoveragePlan};
use super::phase::phased_parallels;
use super::pipeline::plan_convex;
use super::subdivide::{subdivide_plot, Region};
use super::{PlanError, PlanParams};
use crate::geometry::{same_circle, ApwCurve};
use crate::{Arc64, Curve64, Pairs64, Plot64, Point2, Scalar as _, Surface64};

/// Shortest piece a trimmed arc may keep, metres.
const MIN_KEEP: f64 = 1.0;
/// Largest extension of a neighbouring arc into the blend, radians.
const MAX_EXTEND: f64 = std::f64::consts::FRAC_PI_2;
/// Number of radii tried between the largest and the smallest fillet.
const RADIUS_STEPS: usize = 200;

/// Outcome of planning one region of a subdivided plot on its own.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub index: usize,
    pub polygon: Plot64,
    pub convex: bool,
    pub chords: Vec<usize>,
    pub master: Option<MasterLine>,
    pub line_count: usize,
    pub line_count_pass: bool,
    pub diagnostics: Option<Diagnostics>,
    pub notes: Vec<String>,
}

fn circle_intersections(c1: Point2, r1: f64, c2: Point2, r2: f64) -> Vec<Point2> {
    let d = c1.distance(c2);
    if d == 0.0 || d > r1 + r2 || d < (r1 - r2).abs() {
        return Vec::new();
    }
    let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let h = (r1 * r1 - a * a).max(0.0).sqrt();
    let u = (c2 - c1) * (1.0 / d);
    let m = c1 + u * a;
    if h == 0.0 {
        vec![m]
    } else {
        vec![m + u.perp() * h, m - u.perp() * h]
    }
}

/// Trims or extends `a` to end at `p`, which lies on its circle.
fn end_at(a: &Arc64, p: Point2) -> Option<Arc64> {
    let u = a.offset_of_angle((p - a.centre).angle());
    if u * a.radius < MIN_KEEP || u > a.sweep.abs() + MAX_EXTEND {
        return None;
    }
    Arc64::new(a.centre, a.radius, a.start_angle, a.orientation() * u).ok()
}

/// Trims or extends `b` to start at `p`, which lies on its circle.
fn start_at(b: &Arc64, p: Point2) -> Option<Arc64> {
    let s = b.orientation();
    let v = (s * ((p - b.centre).angle() - b.start_angle)).wrap_angle();
    let rest = b.sweep.abs() - v;
    if v < -MAX_EXTEND || rest * b.radius < MIN_KEEP || rest > std::f64::consts::TAU {
        return None;
    }
    Arc64::new(b.centre, b.radius, b.start_angle + s * v, s * rest).ok()
}

fn fillet_with(a: &Arc64, b: &Arc64, rho_f: f64) -> Option<(Arc64, Arc64, Arc64)> {
    let (rho_a, rho_b) = (a.signed_radius(), b.signed_radius());
    let (ra, rb) = ((rho_a - rho_f).abs(), (rho_b - rho_f).abs());
    if ra < 1e-9 || rb < 1e-9 {
        return None;
    }
    let mut best: Option<(Arc64, Arc64, Arc64)> = None;
    for cf in circle_intersections(a.centre, ra, b.centre, rb) {
        let na = (cf - a.centre) * (1.0 / (rho_f - rho_a));
        let nb = (cf - b.centre) * (1.0 / (rho_f - rho_b));
        let pa = a.centre - na * rho_a;
        let pb = b.centre - nb * rho_b;
        let (Some(a2), Some(b2)) = (end_at(a, pa), start_at(b, pb)) else {
            continue;
        };
        let sf = rho_f.signum();
        let t1 = (pa - cf).angle();
        let t2 = (pb - cf).angle();
        let sweep = (sf * (t2 - t1)).wrap_positive();
        if !(sweep > 0.0 && sweep <= std::f64::consts::PI) {
            continue;
        }
        let Ok(f) = Arc64::new(cf, rho_f.abs(), t1, sf * sweep) else {
            continue;
        };
        if best.as_ref().is_none_or(|(_, g, _)| f.length() < g.length()) {
            best = Some((a2, f, b2));
        }
    }
    best
}

/// Tangent-continuous fillet from `a` to `b`: returns `a` trimmed, the fillet
/// arc and `b` trimmed. The largest radius between `max_radius` and
/// `min_radius` that admits a fillet wins.
pub fn blend_arcs(a: &Arc64, b: &Arc64, min_radius: f64, max_radius: f64) -> Option<(Arc64, Arc64, Arc64)> {
    let ratio = (min_radius / max_radius).powf(1.0 / RADIUS_STEPS as f64);
    let mut r = max_radius;
    for step in 0..=RADIUS_STEPS {
        if step == RADIUS_STEPS {
            r = min_radius;
        }
        for sign in [1.0, -1.0] {
            if let Some(found) = fillet_with(a, b, sign * r) {
                return Some(found);
            }
        }
        r *= ratio;
    }
    None
}

/// Joins consecutive master arcs into one tangent-continuous curve.
/// Cocircular neighbours merge; others get a fillet. On failure returns the
/// curve joined so far and the index of the failing junction.
pub fn join_masters(arcs: &[Arc64], min_radius: f64, max_radius: f64) -> Result<Curve64, (Curve64, usize)> {
    let mut out: Vec<Arc64> = vec![arcs[0]];
    for (junction, b) in arcs[1..].iter().enumerate() {
        let a = *out.last().unwrap();
        if same_circle(&a, b) {
            let sweep = a.orientation() * a.offset_of_angle(b.end_angle());
            if let Ok(m) = Arc64::new(a.centre, a.radius, a.start_angle, sweep) {
                *out.last_mut().unwrap() = m;
                continue;
            }
        }
        match blend_arcs(&a, b, min_radius, max_radius) {
            Some((a2, f, b2)) => {
                *out.last_mut().unwrap() = a2;
                out.push(f);
                out.push(b2);
            }
            None => return Err((ApwCurve::from_arcs_unchecked(out), junction)),
        }
    }
    let n = out.len();
    match ApwCurve::new(out.clone()) {
        Ok(curve) => Ok(curve.merged()),
        Err(_) => Err((ApwCurve::from_arcs_unchecked(out), n - 1)),
    }
}

/// Regions in chain order along the chords, with the chord shared with the
/// previous region.
fn chain_order(regions: &[Region]) -> Vec<(usize, Option<usize>)> {
    let start = regions.iter().position(|r| r.chords.len() <= 1).unwrap_or(0);
    let mut order = vec![(start, None)];
    let mut used = vec![false; regions.len()];
    used[start] = true;
    loop {
        let (cur, _) = *order.last().unwrap();
        let next = regions[cur].chords.iter().find_map(|&c| {
            regions
                .iter()
                .position(|r| !used[r.index] && r.chords.contains(&c))
                .map(|r| (r, Some(c)))
        });
        match next {
            Some((r, c)) => {
                used[r] = true;
                order.push((r, c));
            }
            None => break,
        }
    }
    for r in 0..regions.len() {
        if !used[r] {
            order.push((r, None));
        }
    }
    order
}

/// Plans a concave plot from its subdivision: one master per region, joined
/// into a single curve, then parallels and the five conditions over the
/// whole plot. Failed blends are reported as diagnostics.
pub fn plan_concave(
    plot: &Plot64,
    pairs: &Pairs64,
    surface: &Surface64,
    params: &PlanParams,
) -> Result<CoveragePlan, PlanError> {
    params.validate()?;
    let plot = plot.to_ccw();
    let regions = subdivide_plot(&plot, pairs)?;
    let chord_mid: Vec<Point2> = pairs.pairs().iter().map(|(a, b)| a.midpoint(*b)).collect();
    let mut notes = Vec::new();
    let mut reports: Vec<RegionReport> = Vec::with_capacity(regions.len());
    let mut first_error = None;
    for region in &regions {
        let mut report = RegionReport {
            index: region.index,
            polygon: region.polygon.clone(),
            convex: region.convex,
            chords: region.chords.clone(),
            master: None,
            line_count: 0,
            line_count_pass: false,
            diagnostics: None,
            notes: Vec::new(),
        };
        if !region.convex {
            report.notes.push("region is not convex".into());
            notes.push(format!("region {} is not convex", region.index));
        }
        match plan_convex(&region.polygon, surface, params) {
            Ok(p) => {
                report.line_count = p.line_count;
                report.line_count_pass = p.diagnostics.line_count.pass;
                report.master = p.master_line;
                report.diagnostics = Some(p.diagnostics);
            }
            Err(e) => {
                report.notes.push(e.to_string());
                notes.push(format!("region {}: {e}", region.index));
                first_error.get_or_insert(e);
            }
        }
        reports.push(report);
    }

    let order = chain_order(&regions);
    let mut arcs = Vec::new();
    for (pos, &(r, prev_chord)) in order.iter().enumerate() {
        let Some(m) = &reports[r].master else { continue };
        let next_chord = order.get(pos + 1).and_then(|&(_, c)| c);
        let cost = |a: &Arc64| {
            prev_chord.map_or(0.0, |c| a.start().distance(chord_mid[c]))
                + next_chord.map_or(0.0, |c| a.end().distance(chord_mid[c]))
        };
        let rev = m.arc.reversed();
        arcs.push(if cost(&rev) < cost(&m.arc) { rev } else { m.arc });
    }
    if arcs.is_empty() {
        return Err(first_error.unwrap_or(PlanError::NoLevelCrossing { level: f64::NAN }));
    }
    let b = plot.bounds();
    let max_radius = 10.0 * b.width().hypot(b.height());
    let (master, blend_failure) = match join_masters(&arcs, params.min_radius, max_radius) {
        Ok(c) => (c, None),
        Err((c, j)) => (c, Some(j)),
    };

    let mut plan = phased_parallels(&master, &plot, params);
    plan.regions = reports;
    plan.diagnostics.notes = notes;
    if let Some(m) = plan.regions.iter().filter_map(|r| r.master.as_ref()).next() {
        plan.nbf = m.trace.nbf;
        plan.naf = plan
            .regions
            .iter()
            .filter_map(|r| r.master.as_ref())
            .map(|m| m.trace.naf)
            .sum();
    }
    assess_plan(&mut plan, surface);
    if let Some(j) = blend_failure {
        let d = &mut plan.diagnostics;
        d.radius.pass = false;
        d.radius.detail.push_str(&format!(
            "; no tangent blend with radius >= {} m at junction {j}",
            params.min_radius
        ));
        d.notes
            .push(format!("blend infeasible at junction {j}; try a different subdivision"));
    }
    if first_error.is_some() {
        plan.diagnostics.line_count.pass = false;
    }
    for r in &plan.regions {
        if let Some(d) = &r.diagnostics {
            if !d.all_pass() {
                plan.diagnostics
                    .notes
                    .push(format!("region {} fails its own conditions", r.index));
            }
        }
    }
    Ok(plan)
}
