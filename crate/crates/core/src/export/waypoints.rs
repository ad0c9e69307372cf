use std::fmt::Write as _;

use crate::planner::CoveragePlan;

/// Default distance between waypoints, metres.
pub const DEFAULT_WAYPOINT_STEP: f64 = 1.0;

/// Waypoints of every line at arc-length `step`, as
/// `line_id,seq,x,y,heading_deg` with headings counter-clockwise from east.
pub fn write_waypoints_csv(plan: &CoveragePlan, step: f64) -> String {
    let mut out = String::from("line_id,seq,x,y,heading_deg\n");
    for line in &plan.parallels {
        let mut seq = 0usize;
        for piece in &line.pieces {
            for (_, p, t) in piece.sample(step) {
                let mut heading = t.y.atan2(t.x).to_degrees().rem_euclid(360.0);
                if heading >= 360.0 {
                    heading = 0.0;
                }
                let _ = writeln!(out, "{},{seq},{:.3},{:.3},{:.3}", line.index, p.x, p.y, heading);
                seq += 1;
            }
        }
    }
    out
}
