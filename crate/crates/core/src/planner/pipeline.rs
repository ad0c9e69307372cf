use serde::{Deserialize, Serialize};

use super::concave::plan_concave;
use super::optimize::{optimize_master_line, MasterLine};
use super::parallels::{assess_plan, CoveragePlan};
use super::phase::phased_parallels;
use super::prototype::{prototype_with_retry, LevelModel};
use super::{PlanError, PlanParams};
use crate::geometry::{is_convex, BoundarySample};
use crate::surface::{build_sample_grid, fit_surface, MAX_GRID};
use crate::{Pairs64, Plot64, Surface64, Terrain64};

/// Optimized master line of a convex region.
pub fn region_master(region: &Plot64, surface: &Surface64, params: &PlanParams) -> Result<MasterLine, PlanError> {
    let region = region.to_ccw();
    let sample = BoundarySample::new(&region, params.max_step, |p| surface.eval_at(p));
    let prototype = prototype_with_retry(&sample, surface, params)?;
    optimize_master_line(&prototype, &sample, surface, params)
}

/// Master line, parallels and diagnostics for a convex plot.
pub fn plan_convex(plot: &Plot64, surface: &Surface64, params: &PlanParams) -> Result<CoveragePlan, PlanError> {
    params.validate()?;
    let plot = plot.to_ccw();
    let master = region_master(&plot, surface, params)?;
    let mut plan = phased_parallels(&master.curve(), &plot, params);
    plan.nbf = master.trace.nbf;
    plan.naf = master.trace.naf;
    if matches!(master.prototype.model, LevelModel::Ramp { .. }) {
        plan.diagnostics
            .notes
            .push("flat plot: master line placed on a synthetic grade across the narrowest width".into());
    }
    plan.master_line = Some(master);
    assess_plan(&mut plan, surface);
    Ok(plan)
}

/// Fitted surface together with the plan built on it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldPlan {
    pub surface: Surface64,
    pub plan: CoveragePlan,
}

/// Fits the terrain surface, then plans the plot. Concave plots need
/// subdivision pairs.
pub fn plan_field(
    terrain: &Terrain64,
    plot: &Plot64,
    pairs: Option<&Pairs64>,
    params: &PlanParams,
) -> Result<FieldPlan, PlanError> {
    params.validate()?;
    let grid = build_sample_grid(terrain, MAX_GRID, MAX_GRID)?;
    let surface = fit_surface(&grid)?;
    let plan = match pairs {
        Some(p) if !p.is_empty() => plan_concave(plot, p, &surface, params)?,
        _ if is_convex(plot) => plan_convex(plot, &surface, params)?,
        _ => return Err(PlanError::NeedsSubdivision),
    };
    Ok(FieldPlan { surface, plan })
}
