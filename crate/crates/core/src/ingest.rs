//! Text formats: terrain level curves (`x y z`), plot polygons (`x y`) and
//! saved subdivision pairs (`x y`, two rows per pair).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{segments_cross_properly, Bounds, GeometryError, PlotPolygon, Point};
use crate::scalar::Scalar;

/// Maximum distance between a saved pair point and the plot boundary, metres.
pub const BOUNDARY_SNAP: f64 = 0.5;
/// At most this many subdivision pairs per plot.
pub const MAX_PAIRS: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IngestError {
    #[error("input contains no data rows")]
    Empty,
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: elevation {z} reappears after a different level")]
    NonContiguousLevel { line: usize, z: f64 },
    #[error("plot polygon needs at least 3 vertices, got {count}")]
    DegeneratePolygon { count: usize },
    #[error("line {line}: plot vertex duplicates the previous vertex")]
    DuplicateVertex { line: usize },
    #[error("invalid plot polygon: {0}")]
    InvalidPolygon(GeometryError),
    #[error("{rows} rows given; at most {} subdivision pairs ({} rows) are allowed", MAX_PAIRS, 2 * MAX_PAIRS)]
    TooManyPairs { rows: usize },
    #[error("line {line}: point ({x}, {y}) is {distance:.3} m from the plot boundary")]
    OffBoundary { line: usize, x: f64, y: f64, distance: f64 },
    #[error("subdivision chords {first} and {second} cross")]
    CrossingChords { first: usize, second: usize },
}

impl IngestError {
    /// 1-based input line the error refers to, when there is one.
    pub fn line(&self) -> Option<usize> {
        match self {
            Self::Format { line, .. }
            | Self::NonContiguousLevel { line, .. }
            | Self::DuplicateVertex { line }
            | Self::OffBoundary { line, .. } => Some(*line),
            _ => None,
        }
    }
}

/// Terrain sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TerrainPoint<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> TerrainPoint<T> {
    pub fn xy(&self) -> Point<T> {
        Point::new(self.x, self.y)
    }
}

/// Terrain samples in file order, grouped in runs of equal elevation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelCurveSet<T> {
    points: Vec<TerrainPoint<T>>,
    bounds: Bounds<T>,
}

impl<T: Scalar> LevelCurveSet<T> {
    pub fn new(points: Vec<TerrainPoint<T>>) -> Result<Self, IngestError> {
        if points.is_empty() {
            return Err(IngestError::Empty);
        }
        let mut seen: Vec<T> = Vec::new();
        for (i, p) in points.iter().enumerate() {
            if !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) {
                return Err(IngestError::Format {
                    line: i + 1,
                    message: "non-finite coordinate".into(),
                });
            }
            if seen.last() != Some(&p.z) {
                if seen.contains(&p.z) {
                    return Err(IngestError::NonContiguousLevel {
                        line: i + 1,
                        z: p.z.as_f64(),
                    });
                }
                seen.push(p.z);
            }
        }
        let xy: Vec<Point<T>> = points.iter().map(TerrainPoint::xy).collect();
        let bounds = Bounds::of_points(&xy).expect("non-empty");
        Ok(Self { points, bounds })
    }

    pub fn points(&self) -> &[TerrainPoint<T>] {
        &self.points
    }

    pub fn bounds(&self) -> Bounds<T> {
        self.bounds
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Contiguous runs of equal elevation, in file order.
    pub fn levels(&self) -> Vec<(T, &[TerrainPoint<T>])> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.points.len() {
            if i == self.points.len() || self.points[i].z != self.points[start].z {
                out.push((self.points[start].z, &self.points[start..i]));
                start = i;
            }
        }
        out
    }

    pub fn z_range(&self) -> (T, T) {
        self.points
            .iter()
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), p| {
                (lo.min(p.z), hi.max(p.z))
            })
    }
}

/// User-chosen chords splitting a concave plot, 1 to 3 pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubdivisionPairs<T> {
    pairs: Vec<(Point<T>, Point<T>)>,
}

impl<T: Scalar> SubdivisionPairs<T> {
    /// Validates count, boundary proximity and non-crossing.
    pub fn new(pairs: Vec<(Point<T>, Point<T>)>, plot: &PlotPolygon<T>) -> Result<Self, IngestError> {
        if pairs.is_empty() {
            return Err(IngestError::Empty);
        }
        if pairs.len() > MAX_PAIRS {
            return Err(IngestError::TooManyPairs { rows: 2 * pairs.len() });
        }
        for (k, (a, b)) in pairs.iter().enumerate() {
            for (j, p) in [a, b].into_iter().enumerate() {
                let distance = plot.distance_to_boundary(*p);
                if !(distance <= T::lit(BOUNDARY_SNAP)) {
                    return Err(IngestError::OffBoundary {
                        line: 2 * k + j + 1,
                        x: p.x.as_f64(),
                        y: p.y.as_f64(),
                        distance: distance.as_f64(),
                    });
                }
            }
        }
        for i in 0..pairs.len() {
            for j in (i + 1)..pairs.len() {
                let (a, b) = pairs[i];
                let (c, d) = pairs[j];
                if segments_cross_properly(a, b, c, d) {
                    return Err(IngestError::CrossingChords { first: i, second: j });
                }
            }
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(Point<T>, Point<T>)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Splits `text` into numeric rows of exactly `columns` values, keeping
/// 1-based line numbers. Blank lines are skipped.
fn numeric_rows(text: &str, columns: usize) -> Result<Vec<(usize, Vec<f64>)>, IngestError> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() != columns {
            return Err(IngestError::Format {
                line: line_no,
                message: format!("expected {columns} columns, found {}", tokens.len()),
            });
        }
        let mut values = Vec::with_capacity(columns);
        for tok in tokens {
            match tok.parse::<f64>() {
                Ok(v) if v.is_finite() => values.push(v),
                _ => {
                    return Err(IngestError::Format {
                        line: line_no,
                        message: format!("not a finite number: {tok:?}"),
                    })
                }
            }
        }
        rows.push((line_no, values));
    }
    Ok(rows)
}

/// Parses a terrain file: three columns `x y z` per row.
pub fn parse_level_curves<T: Scalar>(text: &str) -> Result<LevelCurveSet<T>, IngestError> {
    let rows = numeric_rows(text, 3)?;
    if rows.is_empty() {
        return Err(IngestError::Empty);
    }
    let points = rows
        .iter()
        .map(|(_, v)| TerrainPoint {
            x: T::lit(v[0]),
            y: T::lit(v[1]),
            z: T::lit(v[2]),
        })
        .collect();
    LevelCurveSet::new(points).map_err(|e| match e {
        IngestError::NonContiguousLevel { line, z } => IngestError::NonContiguousLevel {
            line: rows[line - 1].0,
            z,
        },
        other => other,
    })
}

/// Parses a plot file: two columns `x y`, vertices in boundary order.
pub fn parse_plot<T: Scalar>(text: &str) -> Result<PlotPolygon<T>, IngestError> {
    let rows = numeric_rows(text, 2)?;
    if rows.len() < 3 {
        return Err(IngestError::DegeneratePolygon { count: rows.len() });
    }
    let vertices = rows
        .iter()
        .map(|(_, v)| Point::new(T::lit(v[0]), T::lit(v[1])))
        .collect();
    PlotPolygon::new(vertices).map_err(|e| match e {
        GeometryError::DegeneratePolygon { count } => IngestError::DegeneratePolygon { count },
        GeometryError::DuplicateVertex { index } => IngestError::DuplicateVertex { line: rows[index].0 },
        other => IngestError::InvalidPolygon(other),
    })
}

/// Parses saved subdivision pairs; consecutive rows form one chord.
pub fn parse_eplot<T: Scalar>(text: &str, plot: &PlotPolygon<T>) -> Result<SubdivisionPairs<T>, IngestError> {
    let rows = numeric_rows(text, 2)?;
    if rows.is_empty() {
        return Err(IngestError::Empty);
    }
    if rows.len() > 2 * MAX_PAIRS {
        return Err(IngestError::TooManyPairs { rows: rows.len() });
    }
    if rows.len() % 2 == 1 {
        return Err(IngestError::Format {
            line: rows[rows.len() - 1].0,
            message: format!("odd number of rows ({}); points must come in pairs", rows.len()),
        });
    }
    let pt = |v: &Vec<f64>| Point::new(T::lit(v[0]), T::lit(v[1]));
    let pairs = rows.chunks(2).map(|c| (pt(&c[0].1), pt(&c[1].1))).collect();
    SubdivisionPairs::new(pairs, plot).map_err(|e| match e {
        IngestError::OffBoundary { line, x, y, distance } => IngestError::OffBoundary {
            line: rows[line - 1].0,
            x,
            y,
            distance,
        },
        other => other,
    })
}

/// Tab-separated rows with two decimals.
pub fn format_level_curves<T: Scalar>(set: &LevelCurveSet<T>) -> String {
    let mut out = String::new();
    for p in set.points() {
        let _ = writeln!(out, "{:.2}\t{:.2}\t{:.2}", p.x.as_f64(), p.y.as_f64(), p.z.as_f64());
    }
    out
}

pub fn format_plot<T: Scalar>(plot: &PlotPolygon<T>) -> String {
    format_xy(plot.vertices().iter())
}

pub fn format_eplot<T: Scalar>(pairs: &SubdivisionPairs<T>) -> String {
    format_xy(pairs.pairs().iter().flat_map(|(a, b)| [a, b]))
}

fn format_xy<'a, T: Scalar, I: Iterator<Item = &'a Point<T>>>(points: I) -> String {
    let mut out = String::new();
    for p in points {
        let _ = writeln!(out, "{:.2}\t{:.2}", p.x.as_f64(), p.y.as_f64());
    }
    out
}
