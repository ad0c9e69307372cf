use std::f64::consts::PI;

use agroline_core::export::{
    flatten_arc, scene_from_plan, write_geojson, write_svg, write_waypoints_csv, FLATTEN_TOLERANCE,
};
use agroline_core::geometry::{ApwCurve, CircularArc, Point};
use agroline_core::ingest::{LevelCurveSet, TerrainPoint};
use agroline_core::planner::{assess_plan, generate_parallels, CoveragePlan, PlanParams};
use agroline_core::{Arc64, Plot64, Surface64, Terrain64};
use rand::rngs::StdRng as Rng64;
use rand::{Rng, SeedableRng};

fn strip_plan() -> CoveragePlan {
    let plot = Plot64::new(vec![
        Point::new(-100.0, 485.0),
        Point::new(100.0, 485.0),
        Point::new(100.0, 515.0),
        Point::new(-100.0, 515.0),
    ])
    .unwrap();
    let master = ApwCurve::single(CircularArc::new(Point::new(0.0, 0.0), 500.0, PI / 2.0 + 0.2, -0.4).unwrap());
    let mut plan = generate_parallels(&master, &plot, &PlanParams::default());
    assess_plan(&mut plan, &Surface64::planar(0.0, 0.01, 0.0));
    plan
}

fn terrain() -> Terrain64 {
    let mut pts = Vec::new();
    for k in 0..5 {
        let y = 470.0 + 15.0 * k as f64;
        for i in 0..11 {
            pts.push(TerrainPoint {
                x: -120.0 + 24.0 * i as f64,
                y,
                z: 0.01 * y,
            });
        }
    }
    LevelCurveSet::new(pts).unwrap()
}

#[test]
fn flattening_stays_within_tolerance_on_random_arcs() {
    let mut rng = Rng64::seed_from_u64(7);
    for _ in 0..500 {
        let r = 10f64.powf(rng.gen_range(-0.5..4.0));
        let arc = Arc64::new(
            Point::new(rng.gen_range(-1e3..1e3), rng.gen_range(-1e3..1e3)),
            r,
            rng.gen_range(-PI..PI),
            rng.gen_range(0.01..2.0 * PI) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
        )
        .unwrap();
        let pts = flatten_arc(&arc, FLATTEN_TOLERANCE);
        for w in pts.windows(2) {
            // sagitta of the chord
            let half = w[0].distance(w[1]) / 2.0;
            let sagitta = r - (r * r - half * half).max(0.0).sqrt();
            assert!(sagitta <= FLATTEN_TOLERANCE + 1e-9, "r {r} sagitta {sagitta}");
        }
    }
}

#[test]
fn geojson_round_trips_coordinates() {
    let plan = strip_plan();
    let text = write_geojson(&plan);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["type"], "FeatureCollection");
    let features = doc["features"].as_array().unwrap();
    let pieces: usize = plan.parallels.iter().map(|l| l.pieces.len()).sum();
    assert_eq!(features.len(), 1 + pieces);
    let mut k = 1;
    for line in &plan.parallels {
        for piece in &line.pieces {
            let f = &features[k];
            assert_eq!(f["geometry"]["type"], "LineString");
            assert_eq!(f["properties"]["line_index"], line.index);
            assert_eq!(f["properties"]["offset"].as_f64().unwrap(), line.offset);
            let expected = agroline_core::export::flatten_curve(piece, FLATTEN_TOLERANCE);
            let coords = f["geometry"]["coordinates"].as_array().unwrap();
            assert_eq!(coords.len(), expected.len());
            for (c, p) in coords.iter().zip(&expected) {
                assert!((c[0].as_f64().unwrap() - p.x).abs() < 1e-6);
                assert!((c[1].as_f64().unwrap() - p.y).abs() < 1e-6);
            }
            k += 1;
        }
    }
    assert_eq!(text, write_geojson(&plan));
}

#[test]
fn master_only_plan_has_one_feature() {
    let mut plan = strip_plan();
    plan.parallels.clear();
    let doc: serde_json::Value = serde_json::from_str(&write_geojson(&plan)).unwrap();
    assert_eq!(doc["features"].as_array().unwrap().len(), 1);
}

#[test]
fn waypoints_of_a_ten_metre_arc() {
    let mut plan = strip_plan();
    let r = 200.0;
    let theta0 = 0.25;
    let arc = Arc64::new(Point::new(0.0, 0.0), r, theta0, 10.0 / r).unwrap();
    let curve = ApwCurve::single(arc);
    plan.parallels.truncate(1);
    plan.parallels[0].pieces = vec![curve.clone()];
    let csv = write_waypoints_csv(&plan, 1.0);
    assert!(csv.starts_with("line_id,seq,x,y,heading_deg\n"));
    assert!(!csv.contains('\r'));
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 11);
    for (k, row) in rows.iter().enumerate() {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f[1], k.to_string());
        assert_eq!(f[2].split('.').nth(1).unwrap().len(), 3);
        let x: f64 = f[2].parse().unwrap();
        let y: f64 = f[3].parse().unwrap();
        let theta = y.atan2(x);
        let heading: f64 = f[4].parse().unwrap();
        assert!((heading - (theta.to_degrees() + 90.0)).abs() < 1e-2, "{row}");
    }
    for (k, (t, _, tangent)) in curve.sample(1.0).into_iter().enumerate() {
        assert!((t - k as f64).abs() < 1e-9);
        let theta = theta0 + t / r;
        let heading = tangent.y.atan2(tangent.x);
        assert!((heading - (theta + PI / 2.0)).abs() < 1e-6);
    }
}

#[test]
fn scene_has_one_geometry_per_parallel() {
    let plan = strip_plan();
    let terrain = terrain();
    let surface = Surface64::planar(0.0, 0.01, 0.0);
    let plot = Plot64::new(vec![
        Point::new(-100.0, 485.0),
        Point::new(100.0, 485.0),
        Point::new(100.0, 515.0),
        Point::new(-100.0, 515.0),
    ])
    .unwrap();
    let scene = scene_from_plan(&terrain, &surface, &plot, Some(&plan), 4);
    let names: Vec<&str> = scene.layers.iter().map(|l| l.name.as_str()).collect();
    assert_eq!(
        names,
        [
            "level-curves",
            "contours",
            "plot",
            "plot-vertices",
            "master",
            "parallels"
        ]
    );
    assert_eq!(scene.layer("parallels").unwrap().shapes.len(), plan.line_count);
    assert_eq!(scene.layer("master").unwrap().shapes.len(), 1);
    assert_eq!(scene.layer("plot-vertices").unwrap().shapes.len(), 4);
    assert_eq!(scene.layer("contours").unwrap().shapes.len(), 4);

    let bare = scene_from_plan(&terrain, &surface, &plot, Some(&plan), 0);
    assert!(bare.layer("contours").is_none());

    let svg = write_svg(&scene);
    assert_eq!(
        svg,
        write_svg(&scene_from_plan(&terrain, &surface, &plot, Some(&plan), 4))
    );
    for name in names {
        assert!(svg.contains(&format!("<g id=\"{name}\"")));
    }
}
