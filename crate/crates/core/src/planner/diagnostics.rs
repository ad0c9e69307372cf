use serde::{Deserialize, Serialize};

use super::drainage::DrainageResult;
use super::slope::AngleCheck;
use crate::geometry::DistanceRange;

/// Verdict on one field condition with the measured quantity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub pass: bool,
    pub value: f64,
    pub limit: f64,
    pub detail: String,
}

impl Condition {
    pub fn new(pass: bool, value: f64, limit: f64, detail: impl Into<String>) -> Self {
        Self {
            pass,
            value,
            limit,
            detail: detail.into(),
        }
    }

    pub fn pending() -> Self {
        Self::new(false, f64::NAN, f64::NAN, "not evaluated")
    }
}

/// The five field conditions plus supporting measurements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// (1) no line slants more than the slope limit.
    pub slope: Condition,
    /// (2) no in-plot curvature radius under the turning limit.
    pub radius: Condition,
    /// (3) neighbouring lines are exactly one spacing apart.
    pub spacing: Condition,
    /// (4) the number of lines is minimal.
    pub line_count: Condition,
    /// (5) every line drains.
    pub drainage: Condition,
    pub drainage_lines: Vec<DrainageResult>,
    /// Slope check of the optimized master line.
    pub master_angle: Option<AngleCheck>,
    /// Nearest and farthest boundary distance from a single-arc master's centre.
    pub centre_distance: Option<DistanceRange<f64>>,
    /// Largest probed distance from a plot point to the nearest line.
    pub coverage_gap: Option<f64>,
    pub notes: Vec<String>,
}

impl Default for Diagnostics {
    fn default() -> Self {
        Self {
            slope: Condition::pending(),
            radius: Condition::pending(),
            spacing: Condition::pending(),
            line_count: Condition::pending(),
            drainage: Condition::pending(),
            drainage_lines: Vec::new(),
            master_angle: None,
            centre_distance: None,
            coverage_gap: None,
            notes: Vec::new(),
        }
    }
}

impl Diagnostics {
    /// Conditions in order with their labels.
    pub fn conditions(&self) -> [(&'static str, &Condition); 5] {
        [
            ("(1) slope", &self.slope),
            ("(2) turning radius", &self.radius),
            ("(3) line spacing", &self.spacing),
            ("(4) line count", &self.line_count),
            ("(5) drainage", &self.drainage),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.conditions().iter().all(|(_, c)| c.pass)
    }

    /// True when the master line failed its slope check.
    pub fn angle_not_ok(&self) -> bool {
        self.master_angle.is_some_and(|a| !a.ok)
    }
}
