use serde::{Deserialize, Serialize};

use super::concave::RegionReport;
use super::diagnostics::{Condition, Diagnostics};
use super::drainage::check_drainage;
use super::optimize::{ExitReason, MasterLine};
use super::slope::{slope_profile, SlopeProfile};
use super::PlanParams;
use crate::geometry::{clip_curve, offset_apw, MIN_PIECE_LENGTH};
use crate::{Arc64, Curve64, Plot64, Scalar as _, Surface64};

/// One plantation line: the master offset by `offset` metres and clipped to the plot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParallelLine {
    pub index: i64,
    pub offset: f64,
    /// Unclipped offset of the extended master.
    pub curve: Curve64,
    /// In-plot pieces in travel order.
    pub pieces: Vec<Curve64>,
}

impl ParallelLine {
    pub fn length(&self) -> f64 {
        self.pieces.iter().map(Curve64::length).sum()
    }
}

/// Master line, its parallels and the verdict on the five conditions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoveragePlan {
    pub master: Curve64,
    /// Ordered by offset index.
    pub parallels: Vec<ParallelLine>,
    pub line_count: usize,
    /// First offset index whose radius collapsed, if any.
    pub collapse: Option<i64>,
    pub params: PlanParams,
    pub nbf: usize,
    pub naf: usize,
    /// Radial shift of the line family away from the optimized master.
    pub phase_shift: f64,
    pub master_line: Option<MasterLine>,
    pub regions: Vec<RegionReport>,
    pub diagnostics: Diagnostics,
}

impl CoveragePlan {
    pub fn passes(&self) -> bool {
        self.diagnostics.all_pass()
    }
}

/// Angles to add before and after `arc` so that it sweeps over every
/// direction from its centre that meets the disc.
fn disc_extension(arc: &Arc64, disc_centre: crate::Point2, disc_radius: f64) -> (f64, f64) {
    let tau = std::f64::consts::TAU;
    let total = arc.sweep.abs();
    let dist = arc.centre.distance(disc_centre);
    if dist <= disc_radius {
        return (tau - total, 0.0);
    }
    let half = (disc_radius / dist).asin();
    let mid = total / 2.0;
    let phi = (disc_centre - arc.centre).angle();
    let u0 = mid + ((phi - arc.start_angle) * arc.orientation() - mid).wrap_angle();
    let before = (half - u0).max(0.0);
    let after = (u0 + half - total).max(0.0);
    if total + before + after >= tau {
        let before = before.min(tau - total);
        (before, tau - total - before)
    } else {
        (before, after)
    }
}

/// Master with its end arcs continued along their circles across the plot.
pub(crate) fn extend_master(master: &Curve64, plot: &Plot64) -> Curve64 {
    let b = plot.bounds();
    let centre = b.centre();
    let radius = 0.5 * (b.width().hypot(b.height())) + 1.0;
    let arcs = master.arcs();
    if arcs.len() == 1 {
        let (before, after) = disc_extension(&arcs[0], centre, radius);
        return master.extended(before, after);
    }
    let (before, _) = disc_extension(&arcs[0], centre, radius);
    let before = before.min(std::f64::consts::PI);
    let (_, after) = disc_extension(&arcs[arcs.len() - 1], centre, radius);
    let after = after.min(std::f64::consts::PI);
    master.extended(before, after)
}

/// Offsets of the master at every multiple of the spacing that meets the plot.
pub fn generate_parallels(master: &Curve64, plot: &Plot64, params: &PlanParams) -> CoveragePlan {
    let extended = extend_master(master, plot);
    let b = plot.bounds();
    let reach = master.start().distance(b.centre()) + b.width().hypot(b.height()) + master.length();
    let limit = (reach / params.spacing).ceil() as i64 + 1;
    let mut lines = Vec::new();
    let mut collapse = None;
    for dir in [1i64, -1] {
        let mut k: i64 = if dir == 1 { 0 } else { -1 };
        let mut seen = false;
        while k.abs() <= limit {
            let offset = k as f64 * params.spacing;
            let curve = match offset_apw(&extended, offset) {
                Ok(c) => c,
                Err(_) => {
                    collapse.get_or_insert(k);
                    break;
                }
            };
            let pieces = clip_curve(&curve, plot, MIN_PIECE_LENGTH);
            if pieces.is_empty() {
                if seen || lines.iter().any(|l: &ParallelLine| l.index == 0) {
                    break;
                }
                k += dir;
                continue;
            }
            seen = true;
            lines.push(ParallelLine {
                index: k,
                offset,
                curve,
                pieces,
            });
            k += dir;
        }
    }
    lines.sort_by_key(|l| l.index);
    CoveragePlan {
        master: master.clone(),
        line_count: lines.len(),
        parallels: lines,
        collapse,
        params: *params,
        nbf: 0,
        phase_shift: 0.0,
        naf: 0,
        master_line: None,
        regions: Vec::new(),
        diagnostics: Diagnostics::default(),
    }
}

/// Slope profile over every in-plot piece of every line.
pub(crate) fn plan_slope(plan: &CoveragePlan, surface: &Surface64) -> SlopeProfile {
    let mut all = SlopeProfile::default();
    for line in &plan.parallels {
        for piece in &line.pieces {
            all.merge(&slope_profile(piece, surface, 1.0));
        }
    }
    all
}

fn line_count_condition(plan: &CoveragePlan) -> Condition {
    let count = plan.line_count as f64;
    if !plan.regions.is_empty() {
        let failing: Vec<String> = plan
            .regions
            .iter()
            .filter(|r| !r.line_count_pass)
            .map(|r| r.index.to_string())
            .collect();
        let pass = failing.is_empty();
        let detail = if pass {
            format!("{} lines; every region at its estimate", plan.line_count)
        } else {
            format!(
                "{} lines; regions over estimate: {}",
                plan.line_count,
                failing.join(", ")
            )
        };
        return Condition::new(pass, count, f64::NAN, detail);
    }
    match &plan.master_line {
        Some(m) => {
            let estimate = m.best_step().naf;
            let capped = m.trace.exit == ExitReason::IterationCap;
            let pass = !capped && plan.line_count <= estimate + 1;
            let mut detail = format!(
                "{} lines, estimate {} (nbf {}, naf {}), {} iterations",
                plan.line_count,
                estimate,
                m.trace.nbf,
                m.trace.naf,
                m.trace.iterations()
            );
            if capped {
                detail.push_str("; optimizer hit the iteration cap");
            }
            Condition::new(pass, count, (estimate + 1) as f64, detail)
        }
        None => Condition::new(true, count, f64::NAN, format!("{} lines", plan.line_count)),
    }
}

/// Fills the plan's diagnostics for the five conditions.
pub fn assess_plan(plan: &mut CoveragePlan, surface: &Surface64) {
    let params = plan.params;
    let mut notes = std::mem::take(&mut plan.diagnostics.notes);

    let profile = plan_slope(plan, surface);
    let max_angle = profile.max_angle_deg();
    let slope = Condition::new(
        max_angle <= params.max_slope_deg + 1e-6,
        max_angle,
        params.max_slope_deg,
        format!(
            "max slant {:.2} deg (along {:.2}, across {:.2})",
            max_angle, profile.max_pitch_deg, profile.max_roll_deg
        ),
    );

    let min_radius = plan
        .parallels
        .iter()
        .flat_map(|l| l.pieces.iter())
        .fold(f64::INFINITY, |m, p| m.min(p.min_radius()));
    let mut radius_pass = min_radius >= params.min_radius - 1e-6;
    let mut radius_detail = format!("min in-plot radius {:.2} m", min_radius);
    if let Some(k) = plan.collapse {
        radius_pass = false;
        radius_detail.push_str(&format!("; offset {k} collapsed before covering the plot"));
    }
    if let Some(m) = &plan.master_line {
        radius_detail.push_str(&format!("; centre distance d {:.2} m", m.distances.min));
    }
    let radius = Condition::new(radius_pass, min_radius, params.min_radius, radius_detail);

    let mut deviation = 0.0f64;
    for w in plan.parallels.windows(2) {
        if w[1].index != w[0].index + 1 {
            deviation = f64::INFINITY;
            continue;
        }
        for (a, b) in w[0].curve.arcs().iter().zip(w[1].curve.arcs()) {
            deviation = deviation.max(((a.radius - b.radius).abs() - params.spacing).abs());
        }
    }
    let spacing = Condition::new(
        deviation <= 1e-6,
        deviation,
        params.spacing,
        format!(
            "neighbouring lines {} m apart, max deviation {:.2e} m",
            params.spacing, deviation
        ),
    );

    let line_count = line_count_condition(plan);

    let lines = check_drainage(plan, surface);
    let failing: Vec<i64> = lines.iter().filter(|r| !r.pass).map(|r| r.line_index).collect();
    let flat = lines.iter().filter(|r| r.flat).count();
    let worst = lines.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
    let mut drainage_detail = format!("{} of {} lines drain", lines.len() - failing.len(), lines.len());
    if flat > 0 {
        drainage_detail.push_str(&format!(", {flat} on flat ground"));
    }
    if !failing.is_empty() {
        let shown: Vec<String> = failing.iter().take(10).map(i64::to_string).collect();
        drainage_detail.push_str(&format!("; failing lines {}", shown.join(", ")));
        if failing.len() > 10 {
            drainage_detail.push_str(", ...");
        }
    }
    let drainage = Condition::new(failing.is_empty(), worst, super::DRAINAGE_TOLERANCE, drainage_detail);

    let master_angle = plan.master_line.as_ref().map(|m| m.angle);
    if let Some(a) = master_angle {
        if !a.ok {
            notes.push(a.message());
        }
    }
    if plan.phase_shift != 0.0 {
        notes.push(format!(
            "line family shifted {:.2} m from the optimized master",
            plan.phase_shift
        ));
    }
    if let Some(m) = &plan.master_line {
        if m.trace.exit == ExitReason::IterationCap {
            notes.push(format!(
                "optimizer did not converge in {} iterations",
                m.trace.iterations()
            ));
        }
    }
    plan.diagnostics = Diagnostics {
        slope,
        radius,
        spacing,
        line_count,
        drainage,
        drainage_lines: lines,
        master_angle,
        centre_distance: plan.master_line.as_ref().map(|m| m.distances),
        coverage_gap: plan.diagnostics.coverage_gap,
        notes,
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ApwCurve, CircularArc, PlotPolygon, Point};
    use std::f64::consts::PI;

    #[test]
    fn rectangle_under_arc() {
        // 30 m tall rectangle straddling an r = 500 arc centred at the origin
        let plot = PlotPolygon::new(vec![
            Point::new(-100.0, 485.0),
            Point::new(100.0, 485.0),
            Point::new(100.0, 515.0),
            Point::new(-100.0, 515.0),
        ])
        .unwrap();
        let master = ApwCurve::single(CircularArc::new(Point::new(0.0, 0.0), 500.0, PI / 2.0 - 0.1, 0.2).unwrap());
        let plan = generate_parallels(&master, &plot, &PlanParams::default());
        let k: Vec<i64> = plan.parallels.iter().map(|l| l.index).collect();
        // radii 500 - 3k meet the rectangle for 485 < r < hypot(100, 515)
        let oracle: Vec<i64> = (-20..20)
            .filter(|k| {
                let r = 500.0 - 3.0 * *k as f64;
                r > 485.0 && r < 100f64.hypot(515.0)
            })
            .collect();
        assert_eq!(k, oracle);
        assert_eq!(plan.line_count, 13);
    }

    #[test]
    fn plot_on_one_side_gives_one_sign() {
        let plot = PlotPolygon::new(vec![
            Point::new(-50.0, 400.0),
            Point::new(50.0, 400.0),
            Point::new(50.0, 450.0),
            Point::new(-50.0, 450.0),
        ])
        .unwrap();
        // CCW arc of radius 500: positive offsets move toward the centre
        let master = ApwCurve::single(CircularArc::new(Point::new(0.0, 0.0), 500.0, PI / 2.0 - 0.1, 0.2).unwrap());
        let plan = generate_parallels(&master, &plot, &PlanParams::default());
        assert!(!plan.parallels.is_empty());
        assert!(plan.parallels.iter().all(|l| l.index > 0));
    }

    #[test]
    fn extension_covers_the_plot_sector() {
        let plot = PlotPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(100.0, 0.0),
            Point::new(100.0, 100.0),
            Point::new(0.0, 100.0),
        ])
        .unwrap();
        let arc = CircularArc::new(Point::new(300.0, 50.0), 250.0, PI - 0.01, 0.02).unwrap();
        let ext = extend_master(&ApwCurve::single(arc), &plot);
        let e = ext.arcs()[0];
        let half = ((50f64.hypot(50.0) + 1.0) / 250.0).asin();
        assert!((e.sweep - 2.0 * half).abs() < 1e-9, "{e:?}");
        let inside = extend_master(
            &ApwCurve::single(CircularArc::new(Point::new(50.0, 50.0), 60.0, 0.0, 1.0).unwrap()),
            &plot,
        );
        assert!((inside.arcs()[0].sweep - 2.0 * PI).abs() < 1e-12);
    }
}
