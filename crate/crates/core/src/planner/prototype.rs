use serde::{Deserialize, Serialize};

use super::extremes::{find_extremes_in, ExtremeLevels};
use super::{PlanError, PlanParams};
use crate::geometry::convex_hull;
use crate::{Point2, Sample64, Surface64};

/// Elevation model used to place the master-line extremities.
///
/// `Terrain` uses the fitted surface. `Ramp` is a synthetic plane used on flat
/// plots, where the real level curves carry no direction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LevelModel {
    Terrain,
    Ramp {
        origin: Point2,
        direction: Point2,
        slope: f64,
    },
}

impl LevelModel {
    pub fn eval(&self, surface: &Surface64, p: Point2) -> f64 {
        match *self {
            LevelModel::Terrain => surface.eval_at(p),
            LevelModel::Ramp {
                origin,
                direction,
                slope,
            } => slope * (p - origin).dot(direction),
        }
    }

    pub(crate) fn boundary_values(&self, sample: &Sample64, surface: &Surface64) -> Vec<f64> {
        match self {
            LevelModel::Terrain => sample.zc.clone(),
            _ => sample.points.iter().map(|&p| self.eval(surface, p)).collect(),
        }
    }

    /// Plane rising across the narrowest direction of the point set, so level
    /// lines run along its longest extent.
    pub fn ramp_for(points: &[Point2], de0: f64) -> Option<Self> {
        let hull = convex_hull(points).ok()?;
        let v = hull.vertices();
        let mut best: Option<(f64, Point2)> = None;
        for (a, b) in hull.edges() {
            let dir = (b - a).normalized()?;
            let width = v.iter().fold(0.0f64, |w, p| w.max(dir.cross(*p - a).abs()));
            if best.is_none_or(|(bw, _)| width < bw - 1e-9) {
                best = Some((width, dir));
            }
        }
        let (width, along) = best?;
        let mut direction = along.perp();
        if direction.x < -1e-12 || (direction.x.abs() <= 1e-12 && direction.y < 0.0) {
            direction = -direction;
        }
        let origin = v.iter().fold(Point2::zero(), |acc, p| acc + *p) * (1.0 / v.len() as f64);
        Some(LevelModel::Ramp {
            origin,
            direction,
            slope: de0 / (width / 8.0),
        })
    }
}

/// The three strategic points of the first master line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prototype {
    pub mp: Point2,
    pub zp: f64,
    pub e1: Point2,
    pub e2: Point2,
    pub de: f64,
    pub extremes: ExtremeLevels,
    pub model: LevelModel,
}

/// Points where the piecewise-linear boundary profile crosses `level`.
pub(crate) fn level_crossings(points: &[Point2], values: &[f64], level: f64) -> Vec<Point2> {
    let n = points.len();
    let mut out = Vec::new();
    for k in 0..n {
        let j = (k + 1) % n;
        let a = values[k] - level;
        let b = values[j] - level;
        if (a <= 0.0 && b > 0.0) || (a > 0.0 && b <= 0.0) {
            let t = a / (a - b);
            out.push(points[k].lerp(points[j], t));
        }
    }
    out
}

/// Crossing pair at `level` with maximum separation, lowest indices on ties.
pub(crate) fn farthest_crossing_pair(points: &[Point2], values: &[f64], level: f64) -> Option<(Point2, Point2)> {
    let crossings = level_crossings(points, values, level);
    let mut best: Option<(f64, usize, usize)> = None;
    for i in 0..crossings.len() {
        for j in (i + 1)..crossings.len() {
            let d = crossings[i].distance(crossings[j]);
            if d > 0.0 && best.is_none_or(|(bd, _, _)| d > bd) {
                best = Some((d, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (crossings[i], crossings[j]))
}

fn build_with_model(
    sample: &Sample64,
    values: &[f64],
    extremes: &ExtremeLevels,
    surface: &Surface64,
    model: LevelModel,
    de: f64,
) -> Result<Prototype, PlanError> {
    let mp = sample.points[extremes.h_index].midpoint(sample.points[extremes.l_index]);
    let zp = model.eval(surface, mp);
    let level = zp + de;
    let (e1, e2) = farthest_crossing_pair(&sample.points, values, level).ok_or(PlanError::NoLevelCrossing { level })?;
    Ok(Prototype {
        mp,
        zp,
        e1,
        e2,
        de,
        extremes: *extremes,
        model,
    })
}

/// Middle point from the extreme levels and the farthest boundary pair at level `zp + de`.
pub fn build_prototype(
    sample: &Sample64,
    extremes: &ExtremeLevels,
    surface: &Surface64,
    de: f64,
) -> Result<Prototype, PlanError> {
    build_with_model(sample, &sample.zc, extremes, surface, LevelModel::Terrain, de)
}

/// Builds the prototype, halving `de` while no crossing exists. Flat plots,
/// and plots whose boundary never crosses the target level, fall back to a
/// synthetic ramp.
pub fn prototype_with_retry(
    sample: &Sample64,
    surface: &Surface64,
    params: &PlanParams,
) -> Result<Prototype, PlanError> {
    let extremes = find_extremes_in(&sample.points, &sample.zc);
    let mut last_err = None;
    if !extremes.flat {
        let mut de = params.de0;
        while de > params.de_floor {
            match build_prototype(sample, &extremes, surface, de) {
                Ok(p) => return Ok(p),
                Err(e @ PlanError::NoLevelCrossing { .. }) => {
                    last_err = Some(e);
                    de /= 2.0;
                }
                Err(e) => return Err(e),
            }
        }
    }
    let model = match LevelModel::ramp_for(&sample.points, params.de0) {
        Some(m) => m,
        None => return Err(last_err.unwrap_or(PlanError::NoLevelCrossing { level: extremes.high })),
    };
    let values = model.boundary_values(sample, surface);
    let ramp_extremes = find_extremes_in(&sample.points, &values);
    let mut de = params.de0;
    loop {
        match build_with_model(sample, &values, &ramp_extremes, surface, model, de) {
            Ok(p) => return Ok(p),
            Err(e) if de / 2.0 <= params.de_floor => return Err(e),
            Err(_) => de /= 2.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{BoundarySample, PlotPolygon, Point};
    use crate::planner::find_extremes;

    fn square(side: f64) -> PlotPolygon<f64> {
        PlotPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(side, 0.0),
            Point::new(side, side),
            Point::new(0.0, side),
        ])
        .unwrap()
    }

    #[test]
    fn midpoint_of_extremes() {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(10.0, 0.0),
            Point::new(10.0, 10.0),
            Point::new(0.0, 10.0),
        ];
        let sample = BoundarySample {
            points: pts.clone(),
            source_vertex_flags: vec![true; 4],
            zc: vec![10.0, 5.0, 0.0, 5.0],
        };
        let surface = Surface64::planar(-0.5, -0.5, 10.0);
        let e = find_extremes(&sample);
        assert_eq!((e.h_index, e.l_index), (0, 2));
        let p = build_prototype(&sample, &e, &surface, 0.25).unwrap();
        assert_eq!(p.mp, Point::new(5.0, 5.0));
        assert_eq!(p.zp, 5.0);
    }

    #[test]
    fn planar_crossings_are_analytic() {
        // z = 0.01 x on a 700 m square: mp = (350, 350), zp = 3.5, level 5.5 at x = 550
        let plot = square(700.0);
        let surface = Surface64::planar(0.01, 0.0, 0.0);
        let sample = BoundarySample::new(&plot, 10.0, |p| surface.eval_at(p));
        let e = find_extremes(&sample);
        let p = build_prototype(&sample, &e, &surface, 2.0).unwrap();
        assert!((p.mp.x - 350.0).abs() < 1e-9);
        assert!((p.zp - 3.5).abs() < 1e-12);
        for q in [p.e1, p.e2] {
            assert!((q.x - 550.0).abs() < 1e-9, "{q:?}");
        }
        assert!((p.e1.distance(p.e2) - 700.0).abs() < 1e-9);
    }

    #[test]
    fn constant_surface_has_no_crossing_but_retry_falls_back() {
        let plot = square(100.0);
        let surface = Surface64::constant(4.0);
        let sample = BoundarySample::new(&plot, 10.0, |p| surface.eval_at(p));
        let e = find_extremes(&sample);
        assert!(matches!(
            build_prototype(&sample, &e, &surface, 2.0),
            Err(PlanError::NoLevelCrossing { .. })
        ));
        let p = prototype_with_retry(&sample, &surface, &PlanParams::default()).unwrap();
        assert!(matches!(p.model, LevelModel::Ramp { .. }));
        assert!(crate::geometry::circle_through(p.e1, p.mp, p.e2).is_ok());
    }

    #[test]
    fn ramp_follows_long_axis() {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(600.0, 0.0),
            Point::new(600.0, 200.0),
            Point::new(0.0, 200.0),
        ];
        match LevelModel::ramp_for(&pts, 2.0).unwrap() {
            LevelModel::Ramp { direction, slope, .. } => {
                assert!((direction.y.abs() - 1.0).abs() < 1e-12);
                assert!((slope - 2.0 / 25.0).abs() < 1e-12);
            }
            _ => unreachable!(),
        }
    }
}
