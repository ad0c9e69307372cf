//! Global polynomial terrain model fitted on a coarse subgrid of the terrain
//! samples by two passes of 1D least-squares fitting.
//!
//! Coefficient `q[i][j]` multiplies `u^(m-1-j) * v^(n-1-i)`, where `u`, `v`
//! are the centred and scaled coordinates stored alongside `q`. Raw survey
//! coordinates (around 10^6 m) cannot be raised to the fourth power in double
//! precision without losing the terrain signal, so fitting and evaluation
//! both go through the affine map.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Bounds, Point};
use crate::ingest::LevelCurveSet;
use crate::scalar::Scalar;

/// Largest grid dimension.
pub const MAX_GRID: usize = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("grid needs at least 2x2 nodes, got {n}x{m}")]
    InvalidGridSize { n: usize, m: usize },
    #[error("terrain has zero extent in {axis}")]
    DegenerateExtent { axis: char },
    #[error("least-squares fit is rank deficient")]
    SingularFit,
}

/// Sub-sampled terrain on an `n x m` grid (rows follow y, columns follow x).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleGrid<T> {
    pub n: usize,
    pub m: usize,
    pub gx: Vec<Vec<T>>,
    pub gy: Vec<Vec<T>>,
    pub z: Vec<Vec<T>>,
    /// Distance from each node to the terrain point that supplied its elevation.
    pub node_distance: Vec<Vec<T>>,
    pub bounds: Bounds<T>,
}

impl<T: Scalar> SampleGrid<T> {
    /// Grid over `bounds` whose elevations come from `f`. Node distances are zero.
    pub fn from_fn<F: Fn(T, T) -> T>(bounds: Bounds<T>, n: usize, m: usize, f: F) -> Result<Self, SurfaceError> {
        let (n, m) = clamp_dims(n, m)?;
        check_extent(&bounds)?;
        let (gx, gy) = node_coordinates(&bounds, n, m);
        let z = (0..n)
            .map(|i| (0..m).map(|j| f(gx[i][j], gy[i][j])).collect())
            .collect();
        Ok(Self {
            n,
            m,
            gx,
            gy,
            z,
            node_distance: vec![vec![T::zero(); m]; n],
            bounds,
        })
    }

    pub fn node(&self, i: usize, j: usize) -> Point<T> {
        Point::new(self.gx[i][j], self.gy[i][j])
    }

    pub fn max_node_distance(&self) -> T {
        self.node_distance.iter().flatten().fold(T::zero(), |a, b| a.max(*b))
    }
}

fn clamp_dims(n: usize, m: usize) -> Result<(usize, usize), SurfaceError> {
    if n < 2 || m < 2 {
        return Err(SurfaceError::InvalidGridSize { n, m });
    }
    Ok((n.min(MAX_GRID), m.min(MAX_GRID)))
}

fn check_extent<T: Scalar>(b: &Bounds<T>) -> Result<(), SurfaceError> {
    if !(b.width() > T::zero()) {
        return Err(SurfaceError::DegenerateExtent { axis: 'x' });
    }
    if !(b.height() > T::zero()) {
        return Err(SurfaceError::DegenerateExtent { axis: 'y' });
    }
    Ok(())
}

fn node_coordinates<T: Scalar>(b: &Bounds<T>, n: usize, m: usize) -> (Vec<Vec<T>>, Vec<Vec<T>>) {
    let xs: Vec<T> = (0..m)
        .map(|j| b.min_x + b.width() * T::lit(j as f64) / T::lit((m - 1) as f64))
        .collect();
    let ys: Vec<T> = (0..n)
        .map(|i| b.min_y + b.height() * T::lit(i as f64) / T::lit((n - 1) as f64))
        .collect();
    let gx = (0..n).map(|_| xs.clone()).collect();
    let gy = (0..n).map(|i| vec![ys[i]; m]).collect();
    (gx, gy)
}

/// Builds the subgrid: nodes equally spaced over the terrain bounds, each
/// taking the elevation of its nearest terrain point (earliest on ties).
/// Dimensions above 5 are clamped.
pub fn build_sample_grid<T: Scalar>(
    terrain: &LevelCurveSet<T>,
    n: usize,
    m: usize,
) -> Result<SampleGrid<T>, SurfaceError> {
    let (n, m) = clamp_dims(n, m)?;
    let bounds = terrain.bounds();
    check_extent(&bounds)?;
    let (gx, gy) = node_coordinates(&bounds, n, m);
    let mut z = vec![vec![T::zero(); m]; n];
    let mut node_distance = vec![vec![T::zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            let node = Point::new(gx[i][j], gy[i][j]);
            let mut best = (T::infinity(), T::zero());
            for p in terrain.points() {
                let d2 = (p.xy() - node).norm_squared();
                if d2 < best.0 {
                    best = (d2, p.z);
                }
            }
            z[i][j] = best.1;
            node_distance[i][j] = best.0.sqrt();
        }
    }
    Ok(SampleGrid {
        n,
        m,
        gx,
        gy,
        z,
        node_distance,
        bounds,
    })
}

/// Least-squares polynomial of `degree` through `(xs, ys)`, coefficients in
/// descending powers. Solved by Householder QR on the Vandermonde matrix.
pub fn polyfit<T: Scalar>(xs: &[T], ys: &[T], degree: usize) -> Result<Vec<T>, SurfaceError> {
    let rows = xs.len();
    let cols = degree + 1;
    if rows < cols || ys.len() != rows {
        return Err(SurfaceError::SingularFit);
    }
    // column-major Vandermonde, descending powers
    let mut a: Vec<Vec<T>> = (0..cols)
        .map(|c| xs.iter().map(|&x| x.powi((degree - c) as i32)).collect())
        .collect();
    let mut b: Vec<T> = ys.to_vec();
    let scale = a.iter().flatten().fold(T::zero(), |s, v| s.max(v.abs()));
    let mut diag = vec![T::zero(); cols];
    for k in 0..cols {
        let norm = (k..rows).fold(T::zero(), |s, r| s + a[k][r] * a[k][r]).sqrt();
        if !(norm > T::epsilon() * scale * T::lit((rows * 64) as f64)) {
            return Err(SurfaceError::SingularFit);
        }
        let alpha = if a[k][k] > T::zero() { -norm } else { norm };
        let mut v: Vec<T> = (k..rows).map(|r| a[k][r]).collect();
        v[0] = v[0] - alpha;
        let vnorm2 = v.iter().fold(T::zero(), |s, x| s + *x * *x);
        diag[k] = alpha;
        if vnorm2 > T::zero() {
            for c in (k + 1)..cols {
                let dot = (k..rows).fold(T::zero(), |s, r| s + v[r - k] * a[c][r]);
                let f = T::two() * dot / vnorm2;
                for r in k..rows {
                    a[c][r] = a[c][r] - f * v[r - k];
                }
            }
            let dot = (k..rows).fold(T::zero(), |s, r| s + v[r - k] * b[r]);
            let f = T::two() * dot / vnorm2;
            for r in k..rows {
                b[r] = b[r] - f * v[r - k];
            }
        }
    }
    let mut coef = vec![T::zero(); cols];
    for k in (0..cols).rev() {
        let mut s = b[k];
        for c in (k + 1)..cols {
            s = s - a[c][k] * coef[c];
        }
        coef[k] = s / diag[k];
    }
    if coef.iter().any(|c| !c.is_finite()) {
        return Err(SurfaceError::SingularFit);
    }
    Ok(coef)
}

/// Polynomial `z(x, y)` in centred, scaled coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialSurface<T> {
    /// `n x m` coefficients; row `i` carries `v^(n-1-i)`, column `j` carries `u^(m-1-j)`.
    pub q: Vec<Vec<T>>,
    pub origin: Point<T>,
    pub scale: Point<T>,
}

impl<T: Scalar> PolynomialSurface<T> {
    /// Surface from raw coefficients. `u = (x - origin.x) / scale.x`, likewise `v`.
    pub fn from_coefficients(q: Vec<Vec<T>>, origin: Point<T>, scale: Point<T>) -> Self {
        assert!(
            !q.is_empty() && !q[0].is_empty(),
            "coefficient matrix must be non-empty"
        );
        assert!(q.iter().all(|r| r.len() == q[0].len()), "ragged coefficient matrix");
        Self { q, origin, scale }
    }

    pub fn constant(value: T) -> Self {
        Self::from_coefficients(vec![vec![value]], Point::zero(), Point::new(T::one(), T::one()))
    }

    /// `z = slope_x * x + slope_y * y + offset`.
    pub fn planar(slope_x: T, slope_y: T, offset: T) -> Self {
        Self::from_coefficients(
            vec![vec![T::zero(), slope_y], vec![slope_x, offset]],
            Point::zero(),
            Point::new(T::one(), T::one()),
        )
    }

    pub fn rows(&self) -> usize {
        self.q.len()
    }

    pub fn cols(&self) -> usize {
        self.q[0].len()
    }

    #[inline]
    fn local(&self, x: T, y: T) -> (T, T) {
        ((x - self.origin.x) / self.scale.x, (y - self.origin.y) / self.scale.y)
    }

    /// Evaluates `z(x, y)` in nested form.
    pub fn eval(&self, x: T, y: T) -> T {
        let (u, v) = self.local(x, y);
        self.q.iter().fold(T::zero(), |acc, row| {
            acc * v + row.iter().fold(T::zero(), |r, c| r * u + *c)
        })
    }

    pub fn eval_at(&self, p: Point<T>) -> T {
        self.eval(p.x, p.y)
    }

    /// Exact partial derivatives `(dz/dx, dz/dy)`.
    pub fn gradient(&self, x: T, y: T) -> (T, T) {
        let (u, v) = self.local(x, y);
        // Horner in v over per-row (value, d/du) pairs, carrying d/dv alongside
        let mut z = T::zero();
        let mut dzdu = T::zero();
        let mut dzdv = T::zero();
        for row in &self.q {
            let mut val = T::zero();
            let mut der = T::zero();
            for c in row {
                der = der * u + val;
                val = val * u + *c;
            }
            dzdv = dzdv * v + z;
            z = z * v + val;
            dzdu = dzdu * v + der;
        }
        (dzdu / self.scale.x, dzdv / self.scale.y)
    }

    pub fn gradient_at(&self, p: Point<T>) -> Point<T> {
        let (gx, gy) = self.gradient(p.x, p.y);
        Point::new(gx, gy)
    }

    /// Row-major coefficient dump in scientific notation, preceded by the
    /// coordinate transform as comment lines.
    pub fn coefficients_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# u = (x - {:e}) / {:e}",
            self.origin.x.as_f64(),
            self.scale.x.as_f64()
        );
        let _ = writeln!(
            out,
            "# v = (y - {:e}) / {:e}",
            self.origin.y.as_f64(),
            self.scale.y.as_f64()
        );
        let _ = writeln!(
            out,
            "# q[i][j] multiplies u^({}-j) v^({}-i)",
            self.cols() - 1,
            self.rows() - 1
        );
        for row in &self.q {
            let cells: Vec<String> = row.iter().map(|c| format!("{:.16e}", c.as_f64())).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }
}

/// Two-stage fit: rows against x, then the row coefficients against y.
pub fn fit_surface<T: Scalar>(grid: &SampleGrid<T>) -> Result<PolynomialSurface<T>, SurfaceError> {
    let (n, m) = (grid.n, grid.m);
    let b = grid.bounds;
    let origin = b.centre();
    let scale = Point::new(b.width() / T::two(), b.height() / T::two());
    if !(scale.x > T::zero()) || !(scale.y > T::zero()) {
        return Err(SurfaceError::DegenerateExtent {
            axis: if scale.x > T::zero() { 'y' } else { 'x' },
        });
    }
    let mut p = vec![vec![T::zero(); m]; n];
    for i in 0..n {
        let us: Vec<T> = grid.gx[i].iter().map(|&x| (x - origin.x) / scale.x).collect();
        p[i] = polyfit(&us, &grid.z[i], m - 1)?;
    }
    let mut q = vec![vec![T::zero(); m]; n];
    for j in 0..m {
        let vs: Vec<T> = (0..n).map(|i| (grid.gy[i][j] - origin.y) / scale.y).collect();
        let column: Vec<T> = (0..n).map(|i| p[i][j]).collect();
        let fitted = polyfit(&vs, &column, n - 1)?;
        for i in 0..n {
            q[i][j] = fitted[i];
        }
    }
    Ok(PolynomialSurface::from_coefficients(q, origin, scale))
}

pub fn eval_surface<T: Scalar>(s: &PolynomialSurface<T>, x: T, y: T) -> T {
    s.eval(x, y)
}

pub fn surface_gradient<T: Scalar>(s: &PolynomialSurface<T>, x: T, y: T) -> (T, T) {
    s.gradient(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{LevelCurveSet, TerrainPoint};

    fn terrain(points: &[(f64, f64, f64)]) -> LevelCurveSet<f64> {
        LevelCurveSet::new(points.iter().map(|&(x, y, z)| TerrainPoint { x, y, z }).collect()).unwrap()
    }

    fn unit_bounds(w: f64, h: f64) -> Bounds<f64> {
        Bounds {
            min_x: 0.0,
            max_x: w,
            min_y: 0.0,
            max_y: h,
        }
    }

    #[test]
    fn grid_is_clamped_to_five() {
        let t = terrain(&[(0.0, 0.0, 1.0), (10.0, 10.0, 2.0)]);
        let g = build_sample_grid(&t, 6, 6).unwrap();
        assert_eq!((g.n, g.m), (5, 5));
        assert_eq!(g.gx[0][4], 10.0);
        assert_eq!(g.gy[4][0], 10.0);
        assert!(matches!(
            build_sample_grid(&t, 1, 3),
            Err(SurfaceError::InvalidGridSize { .. })
        ));
    }

    #[test]
    fn corner_terrain_gives_corner_elevations() {
        let t = terrain(&[(0.0, 0.0, 1.0), (10.0, 0.0, 2.0), (0.0, 10.0, 3.0), (10.0, 10.0, 4.0)]);
        let g = build_sample_grid(&t, 2, 2).unwrap();
        assert_eq!(g.z, vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(g.max_node_distance(), 0.0);
    }

    #[test]
    fn zero_extent_is_rejected() {
        let t = terrain(&[(0.0, 0.0, 1.0), (0.0, 10.0, 2.0)]);
        assert_eq!(
            build_sample_grid(&t, 3, 3),
            Err(SurfaceError::DegenerateExtent { axis: 'x' })
        );
    }

    #[test]
    fn nearest_tie_prefers_earliest() {
        // both points are 5 m from the node at (5, 0)
        let t = terrain(&[(0.0, 0.0, 1.0), (10.0, 0.0, 1.0), (0.0, 10.0, 2.0)]);
        let g = build_sample_grid(&t, 2, 3).unwrap();
        assert_eq!(g.z[0][1], 1.0);
        assert_eq!(g.node_distance[0][1], 5.0);
    }

    #[test]
    fn constant_grid_fits_constant_term() {
        let g = SampleGrid::from_fn(unit_bounds(100.0, 50.0), 5, 5, |_, _| 7.0).unwrap();
        let s = fit_surface(&g).unwrap();
        for (i, row) in s.q.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if i == 4 && j == 4 {
                    assert!((c - 7.0).abs() < 1e-9);
                } else {
                    assert!(c.abs() < 1e-9, "q[{i}][{j}] = {c}");
                }
            }
        }
        assert!((s.eval(12.0, -3.0) - 7.0).abs() < 1e-9);
        assert_eq!(PolynomialSurface::constant(7.0).eval(1e6, 2e6), 7.0);
        assert_eq!(PolynomialSurface::constant(7.0).gradient(3.0, 4.0), (0.0, 0.0));
    }

    #[test]
    fn planar_surface_value_and_gradient() {
        let s = PolynomialSurface::planar(1.0, 2.0, 0.0);
        assert_eq!(s.eval(1.0, 1.0), 3.0);
        assert_eq!(s.gradient(5.0, -2.0), (1.0, 2.0));
    }

    #[test]
    fn polyfit_exact_and_singular() {
        let xs = [-1.0, 0.0, 1.0, 2.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x * x - x + 2.0).collect();
        let c = polyfit(&xs, &ys, 2).unwrap();
        assert!((c[0] - 3.0).abs() < 1e-12 && (c[1] + 1.0).abs() < 1e-12 && (c[2] - 2.0).abs() < 1e-12);
        assert_eq!(
            polyfit(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0], 2),
            Err(SurfaceError::SingularFit)
        );
        assert_eq!(polyfit(&[1.0], &[1.0], 2), Err(SurfaceError::SingularFit));
    }

    #[test]
    fn repeated_abscissae_are_singular() {
        let mut g = SampleGrid::from_fn(unit_bounds(10.0, 10.0), 3, 3, |x, y| x + y).unwrap();
        g.gx[1] = vec![5.0, 5.0, 5.0];
        assert_eq!(fit_surface(&g), Err(SurfaceError::SingularFit));
    }

    #[test]
    fn coefficient_dump_is_scientific() {
        let g = SampleGrid::from_fn(unit_bounds(10.0, 10.0), 2, 2, |x, y| x + 2.0 * y).unwrap();
        let text = fit_surface(&g).unwrap().coefficients_text();
        let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].contains('e'));
    }

    #[test]
    fn f32_fit_works() {
        let b = Bounds {
            min_x: 0.0f32,
            max_x: 10.0,
            min_y: 0.0,
            max_y: 10.0,
        };
        let g = SampleGrid::from_fn(b, 3, 3, |x, y| x + 2.0 * y).unwrap();
        let s = fit_surface(&g).unwrap();
        assert!((s.eval(1.0, 1.0) - 3.0).abs() < 1e-4);
    }
}
