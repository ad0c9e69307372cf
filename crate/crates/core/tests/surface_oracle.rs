#![allow(clippy::needless_range_loop)]

//! Surface fitting checked against an independent direct least-squares fit on
//! the bivariate monomial basis and against finite differences.

use agroline_core::geometry::Bounds;
use agroline_core::ingest::{LevelCurveSet, TerrainPoint};
use agroline_core::surface::{build_sample_grid, fit_surface, PolynomialSurface, SampleGrid};
use rand::{rngs::StdRng, Rng, SeedableRng};

/// Direct fit of sum c[a][b] u^a v^b (a < m, b < n) by normal equations and
/// Gaussian elimination with partial pivoting.
fn direct_fit(grid: &SampleGrid<f64>) -> impl Fn(f64, f64) -> f64 {
    let b = grid.bounds;
    let (ox, oy) = ((b.min_x + b.max_x) / 2.0, (b.min_y + b.max_y) / 2.0);
    let (sx, sy) = (b.width() / 2.0, b.height() / 2.0);
    let (n, m) = (grid.n, grid.m);
    let basis = move |x: f64, y: f64| -> Vec<f64> {
        let (u, v) = ((x - ox) / sx, (y - oy) / sy);
        let mut out = Vec::new();
        for a in 0..m {
            for bb in 0..n {
                out.push(u.powi(a as i32) * v.powi(bb as i32));
            }
        }
        out
    };
    let k = n * m;
    let mut ata = vec![vec![0.0; k]; k];
    let mut atb = vec![0.0; k];
    for i in 0..n {
        for j in 0..m {
            let row = basis(grid.gx[i][j], grid.gy[i][j]);
            for r in 0..k {
                atb[r] += row[r] * grid.z[i][j];
                for c in 0..k {
                    ata[r][c] += row[r] * row[c];
                }
            }
        }
    }
    for col in 0..k {
        let piv = (col..k)
            .max_by(|a, b| ata[*a][col].abs().partial_cmp(&ata[*b][col].abs()).unwrap())
            .unwrap();
        ata.swap(col, piv);
        atb.swap(col, piv);
        for r in (col + 1)..k {
            let f = ata[r][col] / ata[col][col];
            for c in col..k {
                ata[r][c] -= f * ata[col][c];
            }
            atb[r] -= f * atb[col];
        }
    }
    let mut coef = vec![0.0; k];
    for r in (0..k).rev() {
        let mut s = atb[r];
        for c in (r + 1)..k {
            s -= ata[r][c] * coef[c];
        }
        coef[r] = s / ata[r][r];
    }
    move |x, y| basis(x, y).iter().zip(&coef).map(|(a, b)| a * b).sum()
}

fn bounds(min_x: f64, max_x: f64, min_y: f64, max_y: f64) -> Bounds<f64> {
    Bounds {
        min_x,
        max_x,
        min_y,
        max_y,
    }
}

#[test]
fn linear_surface_on_three_by_three_grid() {
    let b = bounds(-50.0, 150.0, -20.0, 80.0);
    let grid = SampleGrid::from_fn(b, 3, 3, |x, y| x + 2.0 * y).unwrap();
    let s = fit_surface(&grid).unwrap();
    let oracle = direct_fit(&grid);
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..100 {
        let x = rng.gen_range(b.min_x..b.max_x);
        let y = rng.gen_range(b.min_y..b.max_y);
        let expect = oracle(x, y);
        assert!((expect - (x + 2.0 * y)).abs() < 1e-8);
        assert!((s.eval(x, y) - expect).abs() < 1e-8);
        let (gx, gy) = s.gradient(x, y);
        assert!((gx - 1.0).abs() < 1e-8 && (gy - 2.0).abs() < 1e-8);
    }
    assert!((s.eval(1.0, 1.0) - 3.0).abs() < 1e-8);
    assert!(s.eval(0.0, 0.0).abs() < 1e-8);
}

#[test]
fn bilinear_surface_on_two_by_two_grid() {
    let b = bounds(-3.0, 7.0, 1.0, 9.0);
    let grid = SampleGrid::from_fn(b, 2, 2, |x, y| x * y).unwrap();
    let s = fit_surface(&grid).unwrap();
    let oracle = direct_fit(&grid);
    let mut rng = StdRng::seed_from_u64(2);
    for _ in 0..100 {
        let x = rng.gen_range(b.min_x..b.max_x);
        let y = rng.gen_range(b.min_y..b.max_y);
        assert!((oracle(x, y) - x * y).abs() < 1e-8);
        assert!((s.eval(x, y) - x * y).abs() < 1e-8);
    }
}

#[test]
fn dense_terrain_nodes_match_nearest_neighbour_scan() {
    let mut pts = Vec::new();
    // level runs of z = x + 2y on a 2 m lattice, ordered by height
    let mut raw = Vec::new();
    for i in 0..=50 {
        for j in 0..=50 {
            let (x, y) = (2.0 * i as f64, 2.0 * j as f64);
            raw.push((x, y, x + 2.0 * y));
        }
    }
    raw.sort_by(|a, b| b.2.partial_cmp(&a.2).unwrap());
    for (x, y, z) in raw {
        pts.push(TerrainPoint { x, y, z });
    }
    let terrain = LevelCurveSet::new(pts).unwrap();
    let grid = build_sample_grid(&terrain, 3, 3).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let node = grid.node(i, j);
            // exhaustive scan, earliest index wins ties
            let mut best = (f64::INFINITY, 0.0);
            for p in terrain.points() {
                let d = (p.x - node.x).hypot(p.y - node.y);
                if d < best.0 {
                    best = (d, p.z);
                }
            }
            assert_eq!(grid.z[i][j], best.1);
            // one lattice spacing of variation in x + 2y is at most 2 + 4
            assert!((grid.z[i][j] - (node.x + 2.0 * node.y)).abs() <= 6.0);
        }
    }
}

fn random_surface(rng: &mut StdRng, b: Bounds<f64>) -> PolynomialSurface<f64> {
    let grid = SampleGrid::from_fn(b, 5, 5, |_, _| 0.0).unwrap();
    let q: Vec<Vec<f64>> = (0..5)
        .map(|_| (0..5).map(|_| rng.gen_range(-10.0..10.0)).collect())
        .collect();
    let _ = grid;
    PolynomialSurface::from_coefficients(
        q,
        agroline_core::geometry::Point::new((b.min_x + b.max_x) / 2.0, (b.min_y + b.max_y) / 2.0),
        agroline_core::geometry::Point::new(b.width() / 2.0, b.height() / 2.0),
    )
}

#[test]
fn gradient_matches_central_differences() {
    let b = bounds(510_000.0, 510_700.0, 7_920_000.0, 7_920_700.0);
    let mut rng = StdRng::seed_from_u64(3);
    let h = 1e-4;
    for _ in 0..200 {
        let s = random_surface(&mut rng, b);
        let x = rng.gen_range(b.min_x..b.max_x);
        let y = rng.gen_range(b.min_y..b.max_y);
        let (gx, gy) = s.gradient(x, y);
        // divide by the representable step, not the nominal one
        let (xp, xm, yp, ym) = (x + h, x - h, y + h, y - h);
        let fx = (s.eval(xp, y) - s.eval(xm, y)) / (xp - xm);
        let fy = (s.eval(x, yp) - s.eval(x, ym)) / (yp - ym);
        let scale = gx.hypot(gy).max(1e-3);
        assert!((gx - fx).abs() / scale < 1e-6, "{gx} vs {fx}");
        assert!((gy - fy).abs() / scale < 1e-6, "{gy} vs {fy}");
    }
}

#[test]
fn survey_scale_coordinates_fit() {
    // survey-scale coordinates; a quartic in both directions
    let b = bounds(510_600.0, 510_750.0, 7_919_990.0, 7_920_090.0);
    let (cx, cy) = (510_650.0, 7_920_040.0);
    let f = |x: f64, y: f64| {
        let (dx, dy) = ((x - cx) / 100.0, (y - cy) / 100.0);
        100.0 + 2.0 * dx - 3.0 * dy + 0.5 * dx.powi(4) * dy.powi(3) - dx * dy.powi(4)
    };
    let grid = SampleGrid::from_fn(b, 5, 5, f).unwrap();
    let s = fit_surface(&grid).unwrap();
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..100 {
        let x = rng.gen_range(b.min_x..b.max_x);
        let y = rng.gen_range(b.min_y..b.max_y);
        assert!((s.eval(x, y) - f(x, y)).abs() / 100.0 < 1e-8);
    }
}
