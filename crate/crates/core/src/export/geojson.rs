use serde_json::{json, Value};

use super::flatten::{flatten_curve, FLATTEN_TOLERANCE};
use crate::planner::{Condition, CoveragePlan};
use crate::{Curve64, Point2};

fn coordinates(curve: &Curve64) -> Value {
    let pts: Vec<Point2> = flatten_curve(curve, FLATTEN_TOLERANCE);
    Value::Array(pts.iter().map(|p| json!([p.x, p.y])).collect())
}

fn feature(curve: &Curve64, properties: Value) -> Value {
    json!({
        "type": "Feature",
        "geometry": { "type": "LineString", "coordinates": coordinates(curve) },
        "properties": properties,
    })
}

fn condition(c: &Condition) -> Value {
    json!({ "pass": c.pass, "value": c.value, "limit": c.limit, "detail": c.detail })
}

/// FeatureCollection with the master and every in-plot parallel piece as
/// LineStrings; arcs are flattened to within 0.1 m.
pub fn write_geojson(plan: &CoveragePlan) -> String {
    let d = &plan.diagnostics;
    let mut features = vec![feature(
        &plan.master,
        json!({ "role": "master", "line_index": 0, "offset": 0.0, "min_radius": plan.master.min_radius() }),
    )];
    for line in &plan.parallels {
        let drainage = d.drainage_lines.iter().find(|r| r.line_index == line.index);
        for (piece_index, piece) in line.pieces.iter().enumerate() {
            features.push(feature(
                piece,
                json!({
                    "role": "parallel",
                    "line_index": line.index,
                    "offset": line.offset,
                    "piece": piece_index,
                    "min_radius": piece.min_radius(),
                    "drains": drainage.map(|r| r.pass),
                    "flat": drainage.map(|r| r.flat),
                    "drainage_margin": drainage.map(|r| r.margin),
                }),
            ));
        }
    }
    let doc = json!({
        "type": "FeatureCollection",
        "properties": {
            "line_count": plan.line_count,
            "nbf": plan.nbf,
            "naf": plan.naf,
            "all_pass": d.all_pass(),
            "slope": condition(&d.slope),
            "radius": condition(&d.radius),
            "spacing": condition(&d.spacing),
            "line_count_condition": condition(&d.line_count),
            "drainage": condition(&d.drainage),
            "notes": d.notes,
        },
        "features": features,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("json values always serialize");
    s.push('\n');
    s
}
