use std::fmt::Write as _;

use crate::planner::{Condition, CoveragePlan};

fn value(c: &Condition) -> String {
    if c.value.is_finite() {
        format!("{:.2}", c.value)
    } else {
        "-".into()
    }
}

/// Plain-text report listing all five conditions with measured values.
pub fn write_report(plan: &CoveragePlan) -> String {
    let d = &plan.diagnostics;
    let p = &plan.params;
    let mut out = String::new();
    let _ = writeln!(out, "plantation plan report");
    let _ = writeln!(
        out,
        "parameters: spacing {} m, min radius {} m, max slope {} deg, max step {} m, de0 {} m",
        p.spacing, p.min_radius, p.max_slope_deg, p.max_step, p.de0
    );
    let _ = writeln!(out, "lines: {}", plan.line_count);
    let _ = writeln!(out, "nbf: {}  naf: {}", plan.nbf, plan.naf);
    if let Some(m) = &plan.master_line {
        let a = &m.arc;
        let _ = writeln!(
            out,
            "master: centre ({:.2}, {:.2}), radius {:.2} m, length {:.2} m, {} iterations, exit {:?}",
            a.centre.x,
            a.centre.y,
            a.radius,
            a.length(),
            m.trace.iterations(),
            m.trace.exit
        );
    } else {
        let _ = writeln!(
            out,
            "master: {} arcs, length {:.2} m, min radius {:.2} m",
            plan.master.arcs().len(),
            plan.master.length(),
            plan.master.min_radius()
        );
    }
    if let Some(r) = &d.centre_distance {
        let _ = writeln!(out, "centre distance: min {:.2} m, max {:.2} m", r.min, r.max);
    }
    if let Some(g) = d.coverage_gap {
        let _ = writeln!(
            out,
            "coverage gap estimate: {g:.2} m (phase shift {:.2} m)",
            plan.phase_shift
        );
    }
    let _ = writeln!(out, "conditions:");
    for (name, c) in d.conditions() {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "  {name}: {verdict}  measured {}  ({})", value(c), c.detail);
    }
    if let Some(a) = &d.master_angle {
        let _ = writeln!(out, "master slope check: {}", a.message());
    }
    for r in &plan.regions {
        let verdict = match &r.diagnostics {
            Some(d) if d.all_pass() => "PASS",
            Some(_) => "FAIL",
            None => "NOT PLANNED",
        };
        let _ = writeln!(
            out,
            "region {}: {} ({}), {} lines{}",
            r.index,
            verdict,
            if r.convex { "convex" } else { "concave" },
            r.line_count,
            if r.notes.is_empty() {
                String::new()
            } else {
                format!("; {}", r.notes.join("; "))
            }
        );
    }
    for note in &d.notes {
        let _ = writeln!(out, "note: {note}");
    }
    let _ = writeln!(out, "result: {}", if d.all_pass() { "ACCEPTED" } else { "REJECTED" });
    out
}
