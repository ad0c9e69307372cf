use serde::{Deserialize, Serialize};

use super::point::{length_tol, Point};
use super::GeometryError;
use crate::scalar::Scalar;

/// Circular arc in centre/radius/start-angle/signed-sweep form.
///
/// Positive sweep runs counter-clockwise. The osculating centre of every
/// point on the arc is `centre`, which is what offsetting acts on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircularArc<T> {
    pub centre: Point<T>,
    pub radius: T,
    pub start_angle: T,
    pub sweep: T,
}

impl<T: Scalar> CircularArc<T> {
    pub fn new(centre: Point<T>, radius: T, start_angle: T, sweep: T) -> Result<Self, GeometryError> {
        let max_sweep = T::TAU() * (T::one() + T::lit(1e-12));
        if !(radius.is_finite() && radius > T::zero())
            || !centre.is_finite()
            || !start_angle.is_finite()
            || !sweep.is_finite()
            || sweep == T::zero()
            || sweep.abs() > max_sweep
        {
            return Err(GeometryError::InvalidArc {
                radius: radius.as_f64(),
                sweep: sweep.as_f64(),
            });
        }
        Ok(Self {
            centre,
            radius,
            start_angle,
            sweep,
        })
    }

    /// +1 for counter-clockwise, -1 for clockwise.
    #[inline]
    pub fn orientation(&self) -> T {
        self.sweep.signum()
    }

    /// Radius signed by orientation; the centre sits at `p + signed_radius * left_normal(p)`.
    #[inline]
    pub fn signed_radius(&self) -> T {
        self.radius * self.orientation()
    }

    #[inline]
    pub fn end_angle(&self) -> T {
        self.start_angle + self.sweep
    }

    #[inline]
    pub fn length(&self) -> T {
        self.radius * self.sweep.abs()
    }

    #[inline]
    pub fn point_at_angle(&self, angle: T) -> Point<T> {
        self.centre + Point::from_angle(angle) * self.radius
    }

    #[inline]
    pub fn start(&self) -> Point<T> {
        self.point_at_angle(self.start_angle)
    }

    #[inline]
    pub fn end(&self) -> Point<T> {
        self.point_at_angle(self.end_angle())
    }

    /// Angle of the point at arc length `t` from the start.
    #[inline]
    pub fn angle_at(&self, t: T) -> T {
        self.start_angle + self.orientation() * t / self.radius
    }

    #[inline]
    pub fn point_at(&self, t: T) -> Point<T> {
        self.point_at_angle(self.angle_at(t))
    }

    /// Unit tangent in the direction of travel at polar angle `angle`.
    #[inline]
    pub fn tangent_at_angle(&self, angle: T) -> Point<T> {
        Point::from_angle(angle).perp() * self.orientation()
    }

    #[inline]
    pub fn tangent_at(&self, t: T) -> Point<T> {
        self.tangent_at_angle(self.angle_at(t))
    }

    #[inline]
    pub fn start_tangent(&self) -> Point<T> {
        self.tangent_at_angle(self.start_angle)
    }

    #[inline]
    pub fn end_tangent(&self) -> Point<T> {
        self.tangent_at_angle(self.end_angle())
    }

    /// Same geometry travelled the other way.
    pub fn reversed(&self) -> Self {
        Self {
            centre: self.centre,
            radius: self.radius,
            start_angle: self.end_angle(),
            sweep: -self.sweep,
        }
    }

    /// Angular offset of polar angle `angle` along the sweep direction, in [0, 2pi).
    #[inline]
    pub fn offset_of_angle(&self, angle: T) -> T {
        ((angle - self.start_angle) * self.orientation()).wrap_positive()
    }

    /// Sub-arc between angular offsets `from` and `to` (both measured along the sweep).
    pub fn sub_arc(&self, from: T, to: T) -> Self {
        let s = self.orientation();
        Self {
            centre: self.centre,
            radius: self.radius,
            start_angle: self.start_angle + s * from,
            sweep: s * (to - from),
        }
    }

    /// Lift to another scalar type.
    pub fn cast<U: Scalar>(&self) -> CircularArc<U> {
        CircularArc {
            centre: self.centre.cast(),
            radius: U::lit(self.radius.as_f64()),
            start_angle: U::lit(self.start_angle.as_f64()),
            sweep: U::lit(self.sweep.as_f64()),
        }
    }
}

/// Circle through three points.
pub fn circle_through<T: Scalar>(p1: Point<T>, p2: Point<T>, p3: Point<T>) -> Result<(Point<T>, T), GeometryError> {
    let b = p2 - p1;
    let c = p3 - p1;
    let span = b.norm().max(c.norm()).max((p3 - p2).norm());
    let cross = b.cross(c);
    let area = cross.abs() / T::two();
    if !(area >= T::lit(1e-9) * span * span) || span == T::zero() {
        return Err(GeometryError::CollinearPoints);
    }
    let d = T::two() * cross;
    let b2 = b.norm_squared();
    let c2 = c.norm_squared();
    let u = Point::new((c.y * b2 - b.y * c2) / d, (b.x * c2 - c.x * b2) / d);
    let radius = u.norm();
    let centre = p1 + u;
    if !centre.is_finite() || !(radius > T::zero()) {
        return Err(GeometryError::CollinearPoints);
    }
    Ok((centre, radius))
}

/// Arc from `p_start` to `p_end` passing through `p_mid`.
pub fn arc_from_three_points<T: Scalar>(
    p_start: Point<T>,
    p_mid: Point<T>,
    p_end: Point<T>,
) -> Result<CircularArc<T>, GeometryError> {
    let (centre, radius) = circle_through(p_start, p_mid, p_end)?;
    let a0 = (p_start - centre).angle();
    let am = (p_mid - centre).angle();
    let a1 = (p_end - centre).angle();
    let ccw_end = (a1 - a0).wrap_positive();
    let ccw_mid = (am - a0).wrap_positive();
    let sweep = if ccw_mid < ccw_end { ccw_end } else { ccw_end - T::TAU() };
    CircularArc::new(centre, radius, a0, sweep)
}

/// Tolerance used to decide two arcs lie on the same oriented circle.
pub(crate) fn same_circle<T: Scalar>(a: &CircularArc<T>, b: &CircularArc<T>) -> bool {
    let mag = a.centre.magnitude().max(b.centre.magnitude()).max(a.radius);
    let tol = length_tol(1e-6, mag);
    a.orientation() == b.orientation() && a.centre.distance(b.centre) <= tol && (a.radius - b.radius).abs() <= tol
}
