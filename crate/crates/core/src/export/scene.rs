use serde::{Deserialize, Serialize};

use super::contour::{contour_levels, contour_lines, CONTOUR_GRID};
use super::flatten::{flatten_curve, FLATTEN_TOLERANCE};
use crate::planner::CoveragePlan;
use crate::{Bounds64, Plot64, Point2, Surface64, Terrain64};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Shape {
    /// One or more polylines drawn as a single geometry.
    Path {
        parts: Vec<Vec<Point2>>,
        closed: bool,
        failing: bool,
    },
    Marker {
        at: Point2,
    },
}

impl Shape {
    pub fn line(points: Vec<Point2>) -> Self {
        Shape::Path {
            parts: vec![points],
            closed: false,
            failing: false,
        }
    }

    fn points(&self) -> Box<dyn Iterator<Item = &Point2> + '_> {
        match self {
            Shape::Path { parts, .. } => Box::new(parts.iter().flatten()),
            Shape::Marker { at } => Box::new(std::iter::once(at)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub name: String,
    /// Style hint for renderers.
    pub style: String,
    pub shapes: Vec<Shape>,
}

impl Layer {
    pub fn new(name: &str, style: &str, shapes: Vec<Shape>) -> Self {
        Self {
            name: name.into(),
            style: style.into(),
            shapes,
        }
    }
}

/// Ordered drawing layers over a viewport in terrain metres.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderScene {
    pub layers: Vec<Layer>,
    pub viewport: Bounds64,
}

impl RenderScene {
    pub fn new(viewport: Bounds64) -> Self {
        Self {
            layers: Vec::new(),
            viewport,
        }
    }

    /// Adds a layer, replacing any layer of the same name, and grows the
    /// viewport to contain it.
    pub fn push(&mut self, layer: Layer) {
        for s in &layer.shapes {
            for p in s.points() {
                self.viewport.include(*p);
            }
        }
        match self.layers.iter_mut().find(|l| l.name == layer.name) {
            Some(existing) => *existing = layer,
            None => self.layers.push(layer),
        }
    }

    pub fn layer(&self, name: &str) -> Option<&Layer> {
        self.layers.iter().find(|l| l.name == name)
    }
}

fn plan_layers(plan: &CoveragePlan) -> Vec<Layer> {
    let master = Layer::new(
        "master",
        "master",
        vec![Shape::line(flatten_curve(&plan.master, FLATTEN_TOLERANCE))],
    );
    let min_radius = plan.params.min_radius - 1e-6;
    let parallels = plan
        .parallels
        .iter()
        .map(|line| {
            let drains = plan
                .diagnostics
                .drainage_lines
                .iter()
                .find(|r| r.line_index == line.index)
                .is_none_or(|r| r.pass);
            let tight = line.pieces.iter().any(|p| p.min_radius() < min_radius);
            Shape::Path {
                parts: line
                    .pieces
                    .iter()
                    .map(|p| flatten_curve(p, FLATTEN_TOLERANCE))
                    .collect(),
                closed: false,
                failing: !drains || tight,
            }
        })
        .collect();
    vec![master, Layer::new("parallels", "parallel", parallels)]
}

/// Scene with raw level curves, polynomial contours (omitted when
/// `contour_count` is 0), the plot with its vertices and, when given, the plan.
pub fn scene_from_plan(
    terrain: &Terrain64,
    surface: &Surface64,
    plot: &Plot64,
    plan: Option<&CoveragePlan>,
    contour_count: usize,
) -> RenderScene {
    let mut scene = RenderScene::new(terrain.bounds().union(&plot.bounds()));
    let raw = terrain
        .levels()
        .into_iter()
        .map(|(_, pts)| Shape::line(pts.iter().map(|p| p.xy()).collect()))
        .collect();
    scene.push(Layer::new("level-curves", "level-curve", raw));
    let plot_shape = Shape::Path {
        parts: vec![plot.vertices().to_vec()],
        closed: true,
        failing: false,
    };
    let markers = plot.vertices().iter().map(|&at| Shape::Marker { at }).collect();
    let mut rest = vec![
        Layer::new("plot", "plot", vec![plot_shape]),
        Layer::new("plot-vertices", "vertex", markers),
    ];
    if let Some(plan) = plan {
        rest.extend(plan_layers(plan));
    }
    for layer in &rest {
        for s in &layer.shapes {
            for p in s.points() {
                scene.viewport.include(*p);
            }
        }
    }
    if contour_count > 0 {
        let (low, high) = terrain.z_range();
        let viewport = scene.viewport;
        let shapes = contour_levels(low, high, contour_count)
            .into_iter()
            .map(|level| Shape::Path {
                parts: contour_lines(surface, &viewport, level, CONTOUR_GRID),
                closed: false,
                failing: false,
            })
            .collect();
        scene.push(Layer::new("contours", "contour", shapes));
    }
    for layer in rest {
        scene.push(layer);
    }
    scene
}
