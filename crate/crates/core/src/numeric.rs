//! Floating-point plane geometry and the one physical primitive of the
//! engine: intersecting two circles.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A point of the plane. Doubles as a complex number `x + iy` where the
/// field operations need one.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub(crate) fn finite(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFiniteInput)
        }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Quarter turn counterclockwise.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// A drawn circle. The radius is always the distance between two
/// constructed points; there is no way to build one from a bare number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedCircle {
    center: Point,
    radius: f64,
}

impl ResolvedCircle {
    pub fn through(center: Point, through: Point) -> Result<Self> {
        let radius = distance(center, through)?;
        Ok(ResolvedCircle { center, radius })
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Numerical thresholds for the whole engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Absolute coordinate tolerance used when comparing results.
    pub eps_abs: f64,
    /// Below this a configuration counts as degenerate (coincident,
    /// tangent, collinear).
    pub eps_degenerate: f64,
}

impl Tolerance {
    pub const DEFAULT_ABS: f64 = 1e-9;
    pub const DEFAULT_DEGENERATE: f64 = 1e-12;

    pub fn new(eps_abs: f64, eps_degenerate: f64) -> Option<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        (ok(eps_abs) && ok(eps_degenerate)).then_some(Tolerance {
            eps_abs,
            eps_degenerate,
        })
    }

    pub fn with_abs(self, eps_abs: f64) -> Option<Self> {
        Tolerance::new(eps_abs, self.eps_degenerate)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_abs: Self::DEFAULT_ABS,
            eps_degenerate: Self::DEFAULT_DEGENERATE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntersectionOutcome {
    /// `left` lies on the counterclockwise side of the directed line from
    /// the first center to the second.
    TwoPoints { left: Point, right: Point },
    Tangent(Point),
    NoIntersection,
    Coincident,
}

pub fn distance(p: Point, q: Point) -> Result<f64> {
    Ok((p.finite()? - q.finite()?).norm())
}

/// Sign of `cross(b - a, c - a)`, treating values within
/// `eps_degenerate * max(1, |b-a||c-a|)` as zero.
pub fn orientation_sign(a: Point, b: Point, c: Point, tol: &Tolerance) -> Result<i8> {
    let u = b.finite()? - a.finite()?;
    let v = c.finite()? - a;
    let cross = u.cross(v);
    let scale = (u.norm() * v.norm()).max(1.0);
    Ok(if cross.abs() <= tol.eps_degenerate * scale {
        0
    } else if cross > 0.0 {
        1
    } else {
        -1
    })
}

/// Radical-line intersection: project onto the center axis, then offset
/// perpendicular to it.
pub fn circle_circle_intersect(
    c1: &ResolvedCircle,
    c2: &ResolvedCircle,
    tol: &Tolerance,
) -> Result<IntersectionOutcome> {
    let (o1, r1) = (c1.center.finite()?, c1.radius);
    let (o2, r2) = (c2.center.finite()?, c2.radius);
    if !r1.is_finite() || !r2.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    let eps = tol.eps_degenerate;
    if r1 <= eps || r2 <= eps {
        return Err(Error::DegenerateCircle);
    }

    let axis = o2 - o1;
    let d = axis.norm();
    let scale = r1.max(r2).max(1.0);
    let slack = eps * scale;

    if d <= eps {
        return Ok(if (r1 - r2).abs() <= eps {
            IntersectionOutcome::Coincident
        } else {
            IntersectionOutcome::NoIntersection
        });
    }
    if d > r1 + r2 + slack || d < (r1 - r2).abs() - slack {
        return Ok(IntersectionOutcome::NoIntersection);
    }

    let unit = axis * (1.0 / d);
    // signed distance from o1 to the radical line along the axis
    let along = (d * d + (r1 - r2) * (r1 + r2)) / (2.0 * d);
    let foot = o1 + unit * along;
    let h2 = (r1 - along) * (r1 + along);

    let touching = (d - (r1 + r2)).abs() <= slack || (d - (r1 - r2).abs()).abs() <= slack;
    if touching || h2 <= eps * scale * scale {
        return Ok(IntersectionOutcome::Tangent(foot));
    }

    let offset = unit.perp() * h2.sqrt();
    Ok(IntersectionOutcome::TwoPoints {
        left: foot + offset,
        right: foot - offset,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(c: (f64, f64), t: (f64, f64)) -> ResolvedCircle {
        ResolvedCircle::through(Point::new(c.0, c.1), Point::new(t.0, t.1)).unwrap()
    }

    #[test]
    fn alpha_golden_value() {
        let tol = Tolerance::default();
        let out = circle_circle_intersect(&circle((-1., 0.), (1., 0.)), &circle((1., 0.), (0., 0.)), &tol)
            .unwrap();
        let h = 15f64.sqrt() / 4.0;
        match out {
            IntersectionOutcome::TwoPoints { left, right } => {
                assert!((left.x - 0.75).abs() < 1e-15 && (left.y - h).abs() < 1e-15);
                assert!((right.x - 0.75).abs() < 1e-15 && (right.y + h).abs() < 1e-15);
            }
            other => panic!("expected two points, got {other:?}"),
        }
    }

    #[test]
    fn tangent_coincident_disjoint() {
        let tol = Tolerance::default();
        let t = circle_circle_intersect(&circle((0., 0.), (1., 0.)), &circle((2., 0.), (1., 0.)), &tol);
        assert_eq!(t.unwrap(), IntersectionOutcome::Tangent(Point::new(1.0, 0.0)));

        let c = circle_circle_intersect(&circle((0., 0.), (1., 0.)), &circle((0., 0.), (0., 1.)), &tol);
        assert_eq!(c.unwrap(), IntersectionOutcome::Coincident);

        let n = circle_circle_intersect(&circle((0., 0.), (0.1, 0.)), &circle((5., 0.), (5.1, 0.)), &tol);
        assert_eq!(n.unwrap(), IntersectionOutcome::NoIntersection);
    }

    #[test]
    fn nested_and_concentric_do_not_meet() {
        let tol = Tolerance::default();
        let nested = circle_circle_intersect(&circle((0., 0.), (3., 0.)), &circle((0.5, 0.), (1., 0.)), &tol);
        assert_eq!(nested.unwrap(), IntersectionOutcome::NoIntersection);
        let concentric = circle_circle_intersect(&circle((0., 0.), (3., 0.)), &circle((0., 0.), (1., 0.)), &tol);
        assert_eq!(concentric.unwrap(), IntersectionOutcome::NoIntersection);
    }

    #[test]
    fn internal_tangency() {
        let tol = Tolerance::default();
        let out = circle_circle_intersect(&circle((0., 0.), (2., 0.)), &circle((1., 0.), (2., 0.)), &tol);
        assert_eq!(out.unwrap(), IntersectionOutcome::Tangent(Point::new(2.0, 0.0)));
    }

    #[test]
    fn degenerate_and_non_finite_inputs() {
        let tol = Tolerance::default();
        let zero = circle((1., 1.), (1., 1.));
        let unit = circle((0., 0.), (1., 0.));
        assert_eq!(circle_circle_intersect(&zero, &unit, &tol), Err(Error::DegenerateCircle));
        assert_eq!(
            ResolvedCircle::through(Point::new(f64::NAN, 0.0), Point::ORIGIN),
            Err(Error::NonFiniteInput)
        );
        assert_eq!(distance(Point::new(f64::INFINITY, 0.0), Point::ORIGIN), Err(Error::NonFiniteInput));
    }

    #[test]
    fn left_is_counterclockwise_of_center_axis() {
        let tol = Tolerance::default();
        // centers along +y: left must be at negative x
        let out = circle_circle_intersect(&circle((0., 0.), (2., 0.)), &circle((0., 2.), (0., 0.)), &tol).unwrap();
        let IntersectionOutcome::TwoPoints { left, right } = out else { panic!() };
        assert!(left.x < 0.0 && right.x > 0.0);
        assert_eq!(orientation_sign(Point::new(0., 0.), Point::new(0., 2.), left, &tol).unwrap(), 1);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(Point::new(0., 0.), Point::new(3., 4.)).unwrap(), 5.0);
        assert_eq!(distance(Point::new(1., 1.), Point::new(1., 1.)).unwrap(), 0.0);
        let alpha = Point::new(0.75, 15f64.sqrt() / 4.0);
        // (1.75)^2 + 15/16 = 4
        assert!((distance(Point::new(-1., 0.), alpha).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn orientation_examples() {
        let tol = Tolerance::default();
        let o = Point::new(0., 0.);
        let e = Point::new(1., 0.);
        assert_eq!(orientation_sign(o, e, Point::new(0., 1.), &tol).unwrap(), 1);
        assert_eq!(orientation_sign(o, e, Point::new(2., 0.), &tol).unwrap(), 0);
        assert_eq!(orientation_sign(o, e, Point::new(0., -1.), &tol).unwrap(), -1);
        assert_eq!(orientation_sign(o, e, Point::new(0.5, 1e-14), &tol).unwrap(), 0);
    }

    #[test]
    fn tolerance_rejects_nonpositive() {
        assert!(Tolerance::new(0.0, 1e-12).is_none());
        assert!(Tolerance::new(1e-9, -1.0).is_none());
        assert!(Tolerance::new(1e-9, f64::NAN).is_none());
        assert_eq!(Tolerance::default(), Tolerance::new(1e-9, 1e-12).unwrap());
    }
}
