use serde::{Deserialize, Serialize};

use super::point::{length_tol, orient, segment_distance, segments_intersect, Point};
use super::GeometryError;
use crate::scalar::Scalar;

/// Minimum separation between consecutive vertices, metres.
pub const VERTEX_TOLERANCE: f64 = 1e-9;
/// Width of the band classified as on the boundary, metres.
pub const BOUNDARY_BAND: f64 = 1e-9;

/// Result of classifying a point against a polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Simple polygon, implicitly closed. Vertex order is preserved as given.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlotPolygon<T> {
    vertices: Vec<Point<T>>,
}

/// Axis-aligned bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds<T> {
    pub min_x: T,
    pub max_x: T,
    pub min_y: T,
    pub max_y: T,
}

impl<T: Scalar> Bounds<T> {
    pub fn of_points<'a, I: IntoIterator<Item = &'a Point<T>>>(points: I) -> Option<Self> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut b = Bounds {
            min_x: first.x,
            max_x: first.x,
            min_y: first.y,
            max_y: first.y,
        };
        for p in it {
            b.include(*p);
        }
        Some(b)
    }

    pub fn include(&mut self, p: Point<T>) {
        self.min_x = self.min_x.min(p.x);
        self.max_x = self.max_x.max(p.x);
        self.min_y = self.min_y.min(p.y);
        self.max_y = self.max_y.max(p.y);
    }

    pub fn union(&self, other: &Self) -> Self {
        Bounds {
            min_x: self.min_x.min(other.min_x),
            max_x: self.max_x.max(other.max_x),
            min_y: self.min_y.min(other.min_y),
            max_y: self.max_y.max(other.max_y),
        }
    }

    pub fn width(&self) -> T {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> T {
        self.max_y - self.min_y
    }

    pub fn centre(&self) -> Point<T> {
        Point::new(
            (self.min_x + self.max_x) / T::two(),
            (self.min_y + self.max_y) / T::two(),
        )
    }

    pub fn contains(&self, p: Point<T>) -> bool {
        p.x >= self.min_x && p.x <= self.max_x && p.y >= self.min_y && p.y <= self.max_y
    }
}

impl<T: Scalar> PlotPolygon<T> {
    /// Validates vertex count, consecutive duplicates and simplicity.
    pub fn new(vertices: Vec<Point<T>>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::DegeneratePolygon { count: n });
        }
        if let Some(index) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite { index });
        }
        let mag = vertices.iter().fold(T::zero(), |m, p| m.max(p.magnitude()));
        let tol = length_tol(VERTEX_TOLERANCE, mag);
        for i in 0..n {
            let j = (i + 1) % n;
            if vertices[i].distance(vertices[j]) <= tol {
                return Err(GeometryError::DuplicateVertex { index: j });
            }
        }
        let polygon = Self { vertices };
        if let Some((first, second)) = polygon.find_self_intersection() {
            return Err(GeometryError::SelfIntersecting { first, second });
        }
        if polygon.signed_area() == T::zero() {
            return Err(GeometryError::DegeneratePolygon { count: n });
        }
        Ok(polygon)
    }

    pub(crate) fn from_vertices_unchecked(vertices: Vec<Point<T>>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1` (wrapping).
    pub fn edge(&self, i: usize) -> (Point<T>, Point<T>) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point<T>, Point<T>)> + '_ {
        (0..self.vertices.len()).map(move |i| self.edge(i))
    }

    /// Shoelace area, positive for counter-clockwise order.
    pub fn signed_area(&self) -> T {
        let o = self.vertices[0];
        let twice = self.edges().fold(T::zero(), |acc, (a, b)| acc + (a - o).cross(b - o));
        twice / T::two()
    }

    pub fn area(&self) -> T {
        self.signed_area().abs()
    }

    pub fn is_ccw(&self) -> bool {
        self.signed_area() > T::zero()
    }

    pub fn perimeter(&self) -> T {
        self.edges().fold(T::zero(), |acc, (a, b)| acc + a.distance(b))
    }

    pub fn bounds(&self) -> Bounds<T> {
        Bounds::of_points(&self.vertices).expect("polygon has vertices")
    }

    /// Copy with counter-clockwise vertex order.
    pub fn to_ccw(&self) -> Self {
        if self.is_ccw() {
            self.clone()
        } else {
            let mut v = self.vertices.clone();
            v.reverse();
            Self { vertices: v }
        }
    }

    pub(crate) fn magnitude(&self) -> T {
        self.vertices.iter().fold(T::zero(), |m, p| m.max(p.magnitude()))
    }

    fn find_self_intersection(&self) -> Option<(usize, usize)> {
        let n = self.vertices.len();
        for i in 0..n {
            let (a, b) = self.edge(i);
            // adjacent edges folding back onto each other
            let (_, c) = self.edge(i + 1);
            if orient(a, b, c) == T::zero() && (b - a).dot(c - b) < T::zero() {
                return Some((i, (i + 1) % n));
            }
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c, d) = self.edge(j);
                if segments_intersect(a, b, c, d) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Distance from `p` to the polygon boundary.
    pub fn distance_to_boundary(&self, p: Point<T>) -> T {
        self.edges()
            .fold(T::infinity(), |m, (a, b)| m.min(segment_distance(p, a, b).0))
    }

    /// Closest boundary point: `(point, edge index, parameter along edge)`.
    pub fn closest_boundary_point(&self, p: Point<T>) -> (Point<T>, usize, T) {
        let mut best = (T::infinity(), 0, T::zero());
        for (i, (a, b)) in self.edges().enumerate() {
            let (d, t) = segment_distance(p, a, b);
            if d < best.0 {
                best = (d, i, t);
            }
        }
        let (a, b) = self.edge(best.1);
        (a.lerp(b, best.2), best.1, best.2)
    }

    /// Even-odd classification with a thin boundary band.
    pub fn locate(&self, p: Point<T>) -> Location {
        let band = length_tol(BOUNDARY_BAND, self.magnitude().max(p.magnitude()));
        if self.distance_to_boundary(p) <= band {
            return Location::Boundary;
        }
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        if inside {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    pub fn cast<U: Scalar>(&self) -> PlotPolygon<U> {
        PlotPolygon {
            vertices: self.vertices.iter().map(|p| p.cast()).collect(),
        }
    }
}

/// Classifies `p` against `plot`.
pub fn point_in_polygon<T: Scalar>(p: Point<T>, plot: &PlotPolygon<T>) -> Location {
    plot.locate(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[(f64, f64)]) -> Result<PlotPolygon<f64>, GeometryError> {
        PlotPolygon::new(v.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    #[test]
    fn square_is_valid() {
        let sq = poly(&[(0.0, 0.0), (40.0, 0.0), (40.0, 40.0), (0.0, 40.0)]).unwrap();
        assert_eq!(sq.area(), 1600.0);
        assert!(sq.is_ccw());
        assert_eq!(sq.perimeter(), 160.0);
    }

    #[test]
    fn rejects_degenerate_duplicate_and_bowtie() {
        assert_eq!(
            poly(&[(0.0, 0.0), (1.0, 1.0)]),
            Err(GeometryError::DegeneratePolygon { count: 2 })
        );
        assert_eq!(
            poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 1.0)]),
            Err(GeometryError::DuplicateVertex { index: 2 })
        );
        assert!(matches!(
            poly(&[(0.0, 0.0), (2.0, 2.0), (2.0, 0.0), (0.0, 2.0)]),
            Err(GeometryError::SelfIntersecting { .. })
        ));
        assert!(matches!(
            poly(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.0)]),
            Err(GeometryError::SelfIntersecting { .. })
        ));
    }

    #[test]
    fn point_classification() {
        let sq = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
        assert_eq!(point_in_polygon(Point::new(0.5, 0.5), &sq), Location::Inside);
        assert_eq!(point_in_polygon(Point::new(2.0, 2.0), &sq), Location::Outside);
        assert_eq!(point_in_polygon(Point::new(0.5, 0.0), &sq), Location::Boundary);
        assert_eq!(point_in_polygon(Point::new(1.0, 1.0), &sq), Location::Boundary);
    }

    #[test]
    fn concave_classification() {
        let l = poly(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0), (1.0, 2.0), (0.0, 2.0)]).unwrap();
        assert_eq!(l.locate(Point::new(1.5, 1.5)), Location::Outside);
        assert_eq!(l.locate(Point::new(0.5, 1.5)), Location::Inside);
        let (q, edge, _) = l.closest_boundary_point(Point::new(1.6, 1.2));
        assert_eq!(edge, 2);
        assert!(q.distance(Point::new(1.6, 1.0)) < 1e-12);
    }
}
