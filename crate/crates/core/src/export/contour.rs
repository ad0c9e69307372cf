use std::collections::{HashMap, VecDeque};

use crate::{Bounds64, Point2, Surface64};

/// Cells per side of the marching-squares grid.
pub const CONTOUR_GRID: usize = 200;

/// `count` levels splitting `[low, high]` into equal intervals.
pub fn contour_levels(low: f64, high: f64, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|k| low + (high - low) * k as f64 / (count + 1) as f64)
        .collect()
}

type EdgeKey = (u8, usize, usize);

/// Polylines of `surface = level` over `bounds` by marching squares on a
/// `cells x cells` grid.
pub fn contour_lines(surface: &Surface64, bounds: &Bounds64, level: f64, cells: usize) -> Vec<Vec<Point2>> {
    let n = cells.max(1);
    let node = |i: usize, j: usize| {
        Point2::new(
            bounds.min_x + bounds.width() * i as f64 / n as f64,
            bounds.min_y + bounds.height() * j as f64 / n as f64,
        )
    };
    let values: Vec<Vec<f64>> = (0..=n)
        .map(|j| (0..=n).map(|i| surface.eval_at(node(i, j))).collect())
        .collect();
    let above = |i: usize, j: usize| values[j][i] > level;
    let crossing = |key: EdgeKey| {
        let (kind, i, j) = key;
        let (i2, j2) = if kind == 0 { (i + 1, j) } else { (i, j + 1) };
        let (a, b) = (values[j][i], values[j2][i2]);
        node(i, j).lerp(node(i2, j2), (level - a) / (b - a))
    };

    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let corners = [above(i, j), above(i + 1, j), above(i + 1, j + 1), above(i, j + 1)];
            let edges: [EdgeKey; 4] = [(0, i, j), (1, i + 1, j), (0, i, j + 1), (1, i, j)];
            let cut: Vec<usize> = (0..4).filter(|&e| corners[e] != corners[(e + 1) % 4]).collect();
            match cut.len() {
                2 => segments.push((edges[cut[0]], edges[cut[1]])),
                4 => {
                    let centre = (values[j][i] + values[j][i + 1] + values[j + 1][i + 1] + values[j + 1][i]) / 4.0;
                    if (centre > level) == corners[0] {
                        segments.push((edges[0], edges[1]));
                        segments.push((edges[2], edges[3]));
                    } else {
                        segments.push((edges[3], edges[0]));
                        segments.push((edges[1], edges[2]));
                    }
                }
                _ => {}
            }
        }
    }

    let mut by_edge: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (s, (a, b)) in segments.iter().enumerate() {
        by_edge.entry(*a).or_default().push(s);
        by_edge.entry(*b).or_default().push(s);
    }
    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();
    for s in 0..segments.len() {
        if used[s] {
            continue;
        }
        used[s] = true;
        let mut chain: VecDeque<EdgeKey> = VecDeque::from([segments[s].0, segments[s].1]);
        for forward in [true, false] {
            loop {
                let end = if forward {
                    *chain.back().unwrap()
                } else {
                    *chain.front().unwrap()
                };
                let next = by_edge[&end].iter().copied().find(|&t| !used[t]);
                let Some(t) = next else { break };
                used[t] = true;
                let (a, b) = segments[t];
                let other = if a == end { b } else { a };
                if forward {
                    chain.push_back(other);
                } else {
                    chain.push_front(other);
                }
            }
        }
        lines.push(chain.into_iter().map(crossing).collect());
    }
    lines
}
