use serde::{Deserialize, Serialize};

use super::PlanError;
use crate::geometry::{is_convex, segments_intersect, Location};
use crate::{Pairs64, Plot64, Point2};

/// Distance within which a chord endpoint lands on an existing vertex, metres.
const SNAP: f64 = 1e-6;

/// One piece of a subdivided plot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub index: usize,
    /// Counter-clockwise ring.
    pub polygon: Plot64,
    pub convex: bool,
    /// Indices of the chords lying on this region's boundary.
    pub chords: Vec<usize>,
}

fn invalid(index: usize, reason: &str) -> PlanError {
    PlanError::InvalidChord {
        index,
        reason: reason.into(),
    }
}

/// Index of `p` in `ring`, inserting it on the nearest edge when it is not a vertex.
fn attach(ring: &mut Vec<Point2>, p: Point2) -> Option<usize> {
    if let Some(i) = ring.iter().position(|v| v.distance(p) <= SNAP) {
        return Some(i);
    }
    let n = ring.len();
    let mut best = (f64::INFINITY, 0);
    for i in 0..n {
        let (d, _) = crate::geometry::segment_distance(p, ring[i], ring[(i + 1) % n]);
        if d < best.0 {
            best = (d, i);
        }
    }
    if best.0 > SNAP {
        return None;
    }
    ring.insert(best.1 + 1, p);
    Some(best.1 + 1)
}

fn split_ring(ring: &[Point2], i: usize, j: usize) -> (Vec<Point2>, Vec<Point2>) {
    let n = ring.len();
    let walk = |from: usize, to: usize| {
        let mut out = vec![ring[from]];
        let mut k = from;
        while k != to {
            k = (k + 1) % n;
            out.push(ring[k]);
        }
        out
    };
    (walk(i, j), walk(j, i))
}

type Split = (Vec<Point2>, Vec<Point2>);

fn try_split(ring: &[Point2], a: Point2, b: Point2) -> Option<Result<Split, &'static str>> {
    let mut ring = ring.to_vec();
    let ia = attach(&mut ring, a)?;
    let pa = ring[ia];
    let ib = attach(&mut ring, b)?;
    let ia = ring.iter().position(|v| *v == pa)?;
    if ia == ib {
        return Some(Err("endpoints coincide"));
    }
    let (pa, pb) = (ring[ia], ring[ib]);
    let poly = Plot64::new(ring.clone()).ok()?;
    if poly.locate(pa.midpoint(pb)) != Location::Inside {
        return Some(Err("chord leaves the region interior"));
    }
    let n = ring.len();
    for k in 0..n {
        let k1 = (k + 1) % n;
        if [k, k1].contains(&ia) || [k, k1].contains(&ib) {
            continue;
        }
        if segments_intersect(pa, pb, ring[k], ring[k1]) {
            return Some(Err("chord crosses the plot boundary"));
        }
    }
    let (r1, r2) = split_ring(&ring, ia, ib);
    if r1.len() < 3 || r2.len() < 3 {
        return Some(Err("degenerate region"));
    }
    Some(Ok((r1, r2)))
}

/// Splits the plot along the subdivision chords. Each resulting region is
/// flagged convex or not; a concave region is a warning, not an error.
pub fn subdivide_plot(plot: &Plot64, pairs: &Pairs64) -> Result<Vec<Region>, PlanError> {
    let mut rings: Vec<Vec<Point2>> = vec![plot.to_ccw().vertices().to_vec()];
    let mut chords = Vec::with_capacity(pairs.len());
    for (index, &(a, b)) in pairs.pairs().iter().enumerate() {
        let a = plot.closest_boundary_point(a).0;
        let b = plot.closest_boundary_point(b).0;
        let mut done = false;
        let mut failure = "endpoints are not on a common region boundary";
        for r in 0..rings.len() {
            match try_split(&rings[r], a, b) {
                Some(Ok((r1, r2))) => {
                    rings[r] = r1;
                    rings.push(r2);
                    done = true;
                    break;
                }
                Some(Err(reason)) => failure = reason,
                None => {}
            }
        }
        if !done {
            return Err(invalid(index, failure));
        }
        chords.push((a, b));
    }
    let mut regions = Vec::with_capacity(rings.len());
    for (index, ring) in rings.into_iter().enumerate() {
        let polygon = Plot64::new(ring).map_err(|e| invalid(index, &e.to_string()))?.to_ccw();
        let v = polygon.vertices();
        let has = |p: Point2| v.iter().any(|q| q.distance(p) <= SNAP);
        let on_boundary: Vec<usize> = chords
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| has(*a) && has(*b))
            .map(|(i, _)| i)
            .collect();
        regions.push(Region {
            index,
            convex: is_convex(&polygon),
            polygon,
            chords: on_boundary,
        });
    }
    Ok(regions)
}
