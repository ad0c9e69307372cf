use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Planar point or vector, metres.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// Unit vector at `angle` radians from the +x axis.
    #[inline]
    pub fn from_angle(angle: T) -> Self {
        Self::new(angle.cos(), angle.sin())
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn distance(self, other: Self) -> T {
        (self - other).norm()
    }

    #[inline]
    pub fn angle(self) -> T {
        self.y.atan2(self.x)
    }

    /// Rotated a quarter turn counter-clockwise: `(-y, x)`.
    #[inline]
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n > T::zero() && n.is_finite() {
            Some(self * (T::one() / n))
        } else {
            None
        }
    }

    #[inline]
    pub fn lerp(self, other: Self, t: T) -> Self {
        self + (other - self) * t
    }

    #[inline]
    pub fn midpoint(self, other: Self) -> Self {
        Self::new((self.x + other.x) / T::two(), (self.y + other.y) / T::two())
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Largest absolute coordinate, used to scale tolerances.
    #[inline]
    pub fn magnitude(self) -> T {
        self.x.abs().max(self.y.abs())
    }

    pub fn cast<U: Scalar>(self) -> Point<U> {
        Point::new(U::lit(self.x.as_f64()), U::lit(self.y.as_f64()))
    }
}

impl<T: Scalar> Add for Point<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Scalar> Sub for Point<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Scalar> Mul<T> for Point<T> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: T) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

impl<T: Scalar> Neg for Point<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// Absolute length tolerance for coordinates of the given magnitude: `base`
/// metres, widened when the scalar cannot resolve it.
#[inline]
pub(crate) fn length_tol<T: Scalar>(base: f64, magnitude: T) -> T {
    let floor = T::epsilon() * magnitude.abs().max(T::one()) * T::lit(16.0);
    T::lit(base).max(floor)
}

/// Orientation of `c` relative to the directed line `a -> b` (twice the signed area).
#[inline]
pub fn orient<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>) -> T {
    (b - a).cross(c - a)
}

/// Distance from `p` to segment `a b`, and the clamped segment parameter of
/// the closest point.
pub fn segment_distance<T: Scalar>(p: Point<T>, a: Point<T>, b: Point<T>) -> (T, T) {
    let d = b - a;
    let len2 = d.norm_squared();
    let t = if len2 > T::zero() {
        ((p - a).dot(d) / len2).max(T::zero()).min(T::one())
    } else {
        T::zero()
    };
    ((a + d * t).distance(p), t)
}

/// True when closed segments `a b` and `c d` share at least one point.
pub fn segments_intersect<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>, d: Point<T>) -> bool {
    let mag = a.magnitude().max(b.magnitude()).max(c.magnitude()).max(d.magnitude());
    let tol = length_tol(1e-12, mag);
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    let opposite = |u: T, v: T| (u > T::zero() && v < T::zero()) || (u < T::zero() && v > T::zero());
    if opposite(d1, d2) && opposite(d3, d4) {
        return true;
    }
    segment_distance(a, c, d).0 <= tol
        || segment_distance(b, c, d).0 <= tol
        || segment_distance(c, a, b).0 <= tol
        || segment_distance(d, a, b).0 <= tol
}

/// True when the open interiors of segments `a b` and `c d` cross transversally.
pub fn segments_cross_properly<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>, d: Point<T>) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    let opposite = |u: T, v: T| (u > T::zero() && v < T::zero()) || (u < T::zero() && v > T::zero());
    opposite(d1, d2) && opposite(d3, d4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perp_is_left_normal() {
        let t = Point::new(1.0, 0.0);
        assert_eq!(t.perp(), Point::new(0.0, 1.0));
        assert!(orient(Point::zero(), t, t.perp()) > 0.0);
    }

    #[test]
    fn segment_predicates() {
        let p = |x: f64, y: f64| Point::new(x, y);
        assert!(segments_intersect(p(0.0, 0.0), p(2.0, 2.0), p(2.0, 0.0), p(0.0, 2.0)));
        assert!(segments_intersect(p(0.0, 0.0), p(1.0, 0.0), p(1.0, 0.0), p(1.0, 1.0)));
        assert!(!segments_intersect(p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(1.0, 1.0)));
        assert!(!segments_cross_properly(
            p(0.0, 0.0),
            p(1.0, 0.0),
            p(1.0, 0.0),
            p(1.0, 1.0)
        ));
        let (d, t) = segment_distance(p(0.5, 2.0), p(0.0, 0.0), p(1.0, 0.0));
        assert_eq!((d, t), (2.0, 0.5));
    }
}
