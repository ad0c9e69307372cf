use serde::{Deserialize, Serialize};

use agroline_core::export::{scene_from_plan, Layer};
use agroline_core::planner::CoveragePlan;
use agroline_core::{Bounds64, Pairs64, Plot64, Point2, Surface64, Terrain64};

/// Body of `POST /sessions` when sent as JSON.
#[derive(Debug, Deserialize)]
pub struct CreateRequest {
    pub terrain: String,
    pub plot: String,
}

/// Body of `POST /sessions/{id}/pairs` when sent as JSON.
#[derive(Debug, Deserialize)]
pub struct PairsRequest {
    pub pairs: Vec<[[f64; 2]; 2]>,
}

#[derive(Debug, Serialize)]
pub struct SessionSummary {
    pub id: String,
    pub bounds: Bounds64,
    pub plot_bounds: Bounds64,
    #[serde(rename = "H")]
    pub high: f64,
    #[serde(rename = "L")]
    pub low: f64,
    pub convex: bool,
    pub requires_subdivision: bool,
    pub scene: agroline_core::export::RenderScene,
    pub plan: Option<PlanPayload>,
    pub plan_error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ConditionPayload {
    pub name: &'static str,
    pub pass: bool,
    pub value: f64,
    pub limit: f64,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct RegionPayload {
    pub index: usize,
    pub convex: bool,
    pub polygon: Vec<Point2>,
    pub line_count: usize,
    pub pass: bool,
    pub notes: Vec<String>,
}

/// Plan as sent to the UI: every arc is a flattened polyline.
#[derive(Debug, Serialize)]
pub struct PlanPayload {
    pub pairs: Vec<[Point2; 2]>,
    pub accepted: bool,
    pub line_count: usize,
    pub nbf: usize,
    pub naf: usize,
    pub phase_shift: f64,
    pub coverage_gap: Option<f64>,
    pub conditions: Vec<ConditionPayload>,
    pub master_angle: Option<String>,
    pub notes: Vec<String>,
    pub regions: Vec<RegionPayload>,
    pub layers: Vec<Layer>,
}

impl PlanPayload {
    pub fn new(
        plan: &CoveragePlan,
        pairs: Option<&Pairs64>,
        terrain: &Terrain64,
        surface: &Surface64,
        plot: &Plot64,
    ) -> Self {
        let d = &plan.diagnostics;
        let scene = scene_from_plan(terrain, surface, plot, Some(plan), 0);
        let layers = ["master", "parallels"]
            .iter()
            .filter_map(|n| scene.layer(n).cloned())
            .collect();
        Self {
            pairs: pairs.map_or_else(Vec::new, |p| p.pairs().iter().map(|&(a, b)| [a, b]).collect()),
            accepted: plan.passes(),
            line_count: plan.line_count,
            nbf: plan.nbf,
            naf: plan.naf,
            phase_shift: plan.phase_shift,
            coverage_gap: d.coverage_gap,
            conditions: d
                .conditions()
                .into_iter()
                .map(|(name, c)| ConditionPayload {
                    name,
                    pass: c.pass,
                    value: c.value,
                    limit: c.limit,
                    detail: c.detail.clone(),
                })
                .collect(),
            master_angle: d.master_angle.as_ref().map(|a| a.message()),
            notes: d.notes.clone(),
            regions: plan
                .regions
                .iter()
                .map(|r| RegionPayload {
                    index: r.index,
                    convex: r.convex,
                    polygon: r.polygon.vertices().to_vec(),
                    line_count: r.line_count,
                    pass: r.line_count_pass && r.diagnostics.as_ref().is_some_and(|d| d.all_pass()),
                    notes: r.notes.clone(),
                })
                .collect(),
            layers,
        }
    }
}
