use serde::{Deserialize, Serialize};

use crate::Sample64;

/// Elevations within this band of H (or L) count as attaining it, metres.
pub const TIE_TOLERANCE: f64 = 0.01;

/// Highest and lowest boundary samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremeLevels {
    pub h_index: usize,
    pub l_index: usize,
    pub high: f64,
    pub low: f64,
    /// `high - low` is below the tie band: the plot is flat.
    pub flat: bool,
}

/// H and L over the boundary sample; among tied extremes the pair farthest
/// apart wins (earliest indices on equal distance).
pub fn find_extremes(sample: &Sample64) -> ExtremeLevels {
    find_extremes_in(&sample.points, &sample.zc)
}

pub(crate) fn find_extremes_in(points: &[crate::Point2], zc: &[f64]) -> ExtremeLevels {
    assert!(points.len() >= 2 && points.len() == zc.len());
    let high = zc.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let low = zc.iter().cloned().fold(f64::INFINITY, f64::min);
    let highs: Vec<usize> = (0..zc.len()).filter(|&i| high - zc[i] <= TIE_TOLERANCE).collect();
    let lows: Vec<usize> = (0..zc.len()).filter(|&i| zc[i] - low <= TIE_TOLERANCE).collect();
    let mut best: Option<(f64, usize, usize)> = None;
    for &h in &highs {
        for &l in &lows {
            if h == l {
                continue;
            }
            let d = points[h].distance(points[l]);
            if best.is_none_or(|(bd, _, _)| d > bd) {
                best = Some((d, h, l));
            }
        }
    }
    let (_, h_index, l_index) = best.unwrap_or((0.0, 0, 1));
    ExtremeLevels {
        h_index,
        l_index,
        high,
        low,
        flat: high - low < TIE_TOLERANCE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{BoundarySample, PlotPolygon, Point};

    #[test]
    fn planar_unit_square() {
        let sq = PlotPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        let s = BoundarySample::new(&sq, 10.0, |p| p.x);
        let e = find_extremes(&s);
        assert_eq!(s.points[e.h_index].x, 1.0);
        assert_eq!(s.points[e.l_index].x, 0.0);
        assert_eq!((e.high, e.low, e.flat), (1.0, 0.0, false));
        // the two diagonals tie; the earliest pair wins
        assert_eq!((e.h_index, e.l_index), (1, 3));
    }

    #[test]
    fn farthest_tied_high_point() {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(5.0, 0.0),
            Point::new(-12.0, 0.0),
            Point::new(1.0, 1.0),
        ];
        let zc = vec![0.0, 10.0, 10.005, 5.0];
        let e = find_extremes_in(&pts, &zc);
        assert_eq!(e.l_index, 0);
        assert_eq!(e.h_index, 2);
    }

    #[test]
    fn flat_sample_is_flagged() {
        let pts = vec![Point::new(0.0, 0.0), Point::new(3.0, 0.0), Point::new(0.0, 4.0)];
        let e = find_extremes_in(&pts, &[1.0, 1.0, 1.0]);
        assert!(e.flat);
        assert_ne!(e.h_index, e.l_index);
        assert_eq!(pts[e.h_index].distance(pts[e.l_index]), 5.0);
    }
}
