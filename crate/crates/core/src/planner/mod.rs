//! Master-line construction and optimization, parallel generation, the five
//! field conditions, and concave-plot subdivision.

mod concave;
mod diagnostics;
mod drainage;
mod extremes;
mod optimize;
mod parallels;
mod phase;
mod pipeline;
mod prototype;
mod slope;
mod subdivide;

pub use concave::{blend_arcs, join_masters, plan_concave, RegionReport};
pub use diagnostics::{Condition, Diagnostics};
pub use drainage::{check_drainage, line_drainage, DrainageResult, DRAINAGE_TOLERANCE, FLAT_THRESHOLD};
pub use extremes::{find_extremes, ExtremeLevels, TIE_TOLERANCE};
pub use optimize::{
    line_count_estimate, optimize_master_line, ExitReason, MasterLine, OptimizationTrace, TraceStep, MIN_END_RISE,
};
pub use parallels::{assess_plan, generate_parallels, CoveragePlan, ParallelLine};
pub use pipeline::{plan_convex, plan_field, region_master, FieldPlan};
pub use prototype::{build_prototype, prototype_with_retry, LevelModel, Prototype};
pub use slope::{check_angle, slope_profile, AngleCheck, SlopeProfile, SlopeSample};
pub use subdivide::{subdivide_plot, Region};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::GeometryError;
use crate::surface::SurfaceError;

/// Machine and agronomic constraints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanParams {
    /// Distance between neighbouring lines, metres.
    pub spacing: f64,
    /// Smallest turning radius the tractor can drive, metres.
    pub min_radius: f64,
    /// Largest slant while driving, degrees.
    pub max_slope_deg: f64,
    /// Boundary resampling step, metres.
    pub max_step: f64,
    /// Initial level offset of the master-line extremities, metres.
    pub de0: f64,
    pub de_floor: f64,
    pub max_iters: usize,
}

impl Default for PlanParams {
    fn default() -> Self {
        Self {
            spacing: 3.0,
            min_radius: 50.0,
            max_slope_deg: 5.0,
            max_step: 10.0,
            de0: 2.0,
            de_floor: 1e-6,
            max_iters: 60,
        }
    }
}

impl PlanParams {
    pub fn validate(&self) -> Result<(), PlanError> {
        let positive = [
            ("spacing", self.spacing),
            ("min_radius", self.min_radius),
            ("max_slope_deg", self.max_slope_deg),
            ("max_step", self.max_step),
            ("de0", self.de0),
            ("de_floor", self.de_floor),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(PlanError::InvalidParams(format!("{name} must be positive, got {v}")));
            }
        }
        if self.max_iters == 0 {
            return Err(PlanError::InvalidParams("max_iters must be positive".into()));
        }
        if self.spacing >= self.min_radius {
            return Err(PlanError::InvalidParams(format!(
                "spacing {} must be smaller than min_radius {}",
                self.spacing, self.min_radius
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("boundary never crosses level {level:.3} m")]
    NoLevelCrossing { level: f64 },
    #[error("invalid subdivision chord {index}: {reason}")]
    InvalidChord { index: usize, reason: String },
    #[error("plot is concave; subdivision pairs are required")]
    NeedsSubdivision,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let p = PlanParams::default();
        p.validate().unwrap();
        assert_eq!((p.spacing, p.min_radius, p.max_slope_deg, p.de0), (3.0, 50.0, 5.0, 2.0));
    }

    #[test]
    fn invalid_params() {
        let p = PlanParams {
            spacing: 60.0,
            ..PlanParams::default()
        };
        assert!(p.validate().is_err());
        let p = PlanParams {
            max_slope_deg: 0.0,
            ..PlanParams::default()
        };
        assert!(p.validate().is_err());
    }
}
