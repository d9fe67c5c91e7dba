//! The library of compass programs.
//!
//! Functions here append steps to a [`Builder`] and return the nodes they
//! produce, so constructions compose: `midpoint` calls `extend`,
//! `perp_foot` calls `diameter_circle`, and so on. They inspect the
//! coordinates already resolved in the builder only to validate degenerate
//! input and to choose which branch to draw; every point they return comes
//! out of a circle intersection.
//!
//! [`points`] wraps each construction as a standalone program over concrete
//! seed points.

pub mod points;

use crate::error::{Error, Result};
use crate::kernel::{Builder, NodeId, Selector};
use crate::numeric::{IntersectionOutcome, Point};

/// Largest integer multiplier accepted by [`nth_point`].
pub const MAX_SCALE: u64 = 1 << 20;

/// A circle as two builder nodes: its center and a point it passes through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleRef {
    pub center: NodeId,
    pub through: NodeId,
}

impl CircleRef {
    pub fn new(center: NodeId, through: NodeId) -> Self {
        CircleRef { center, through }
    }

    pub fn draw(&self, b: &mut Builder) -> Result<NodeId> {
        b.circle(self.center, self.through)
    }

    pub(crate) fn resolve(&self, b: &Builder) -> Result<(Point, f64)> {
        let center = b.point(self.center)?;
        Ok((center, (b.point(self.through)? - center).norm()))
    }
}

/// Result of intersecting a line with a circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineCircle {
    Two(NodeId, NodeId),
    Tangent(NodeId),
}

impl LineCircle {
    pub fn nodes(&self) -> Vec<NodeId> {
        match *self {
            LineCircle::Two(a, b) => vec![a, b],
            LineCircle::Tangent(p) => vec![p],
        }
    }
}

fn distinct(b: &Builder, p: NodeId, q: NodeId) -> Result<(Point, Point)> {
    let (pp, qq) = (b.point(p)?, b.point(q)?);
    if (pp - qq).norm() <= b.tol().eps_degenerate {
        return Err(Error::DegenerateCircle);
    }
    Ok((pp, qq))
}

fn line_distance(p: Point, a: Point, b: Point) -> f64 {
    let dir = b - a;
    (dir.cross(p - a) / dir.norm()).abs()
}

/// Third vertex of the equilateral triangle on `a`, `c`, on the given side
/// of the directed segment from `a` to `c`.
pub fn apex(b: &mut Builder, a: NodeId, c: NodeId, side: Selector) -> Result<NodeId> {
    distinct(b, a, c)?;
    let around_a = b.circle(a, c)?;
    let around_c = b.circle(c, a)?;
    b.pick(around_a, around_c, side)
}

/// Reflection of `x` through `y`, walked as three 60 degree steps around
/// the circle centered at `y` through `x`. Four circles.
pub fn extend(b: &mut Builder, x: NodeId, y: NodeId) -> Result<NodeId> {
    distinct(b, x, y)?;
    let base = b.circle(y, x)?;
    let first = b.circle(x, y)?;
    let w1 = b.pick(first, base, Selector::Left)?;
    let second = b.circle(w1, y)?;
    let w2 = b.pick_other(second, base, x)?;
    let third = b.circle(w2, y)?;
    b.pick_other(third, base, w1)
}

/// `o + n (p - o)` by a chain of `n - 1` reflections.
pub fn nth_point(b: &mut Builder, o: NodeId, p: NodeId, n: u64) -> Result<NodeId> {
    if n == 0 {
        return Err(Error::InvalidArgument("multiplier must be positive".into()));
    }
    if n > MAX_SCALE {
        return Err(Error::ScaleOverflow(n));
    }
    distinct(b, o, p)?;
    let (mut prev, mut cur) = (o, p);
    for _ in 1..n {
        let next = extend(b, prev, cur)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Midpoint of `a` and `c` in seven circles.
///
/// With `e = 2a - c`, the circles about `e` through `c` and about `c`
/// through `a` meet at `m` and `n`; the circles about `m` and `n` through
/// `c` meet again at the midpoint.
pub fn midpoint(b: &mut Builder, a: NodeId, c: NodeId) -> Result<NodeId> {
    distinct(b, a, c)?;
    let e = extend(b, c, a)?;
    let big = b.circle(e, c)?;
    // drawn already inside `extend`
    let small = b.circle(c, a)?;
    let (m, n) = b.pick_both(big, small)?;
    let around_m = b.circle(m, c)?;
    let around_n = b.circle(n, c)?;
    b.pick_other(around_m, around_n, c)
}

/// The circle with segment `a c` as diameter, drawn.
pub fn diameter_circle(b: &mut Builder, a: NodeId, c: NodeId) -> Result<(NodeId, CircleRef)> {
    let center = midpoint(b, a, c)?;
    let circle = CircleRef::new(center, a);
    Ok((circle.draw(b)?, circle))
}

/// Foot of the perpendicular from `p` to line `a c`: the second meeting
/// point of the circles on diameters `a p` and `c p`.
pub fn perp_foot(b: &mut Builder, a: NodeId, c: NodeId, p: NodeId) -> Result<NodeId> {
    distinct(b, a, c)?;
    distinct(b, p, a)?;
    distinct(b, p, c)?;
    let (first, _) = diameter_circle(b, a, p)?;
    let (second, _) = diameter_circle(b, c, p)?;
    b.pick_other(first, second, p)
}

/// Inverse of a point outside `omega`: the circle on diameter `O p` meets
/// `omega` at `m`, `n`, and the inverse is the foot from `O` to `m n`.
pub fn invert_exterior(b: &mut Builder, omega: CircleRef, p: NodeId) -> Result<NodeId> {
    let (center, radius) = omega.resolve(b)?;
    if radius <= b.tol().eps_degenerate {
        return Err(Error::DegenerateCircle);
    }
    let dist = (b.point(p)? - center).norm();
    if dist <= radius + b.tol().eps_degenerate {
        return Err(Error::NotExterior);
    }
    let drawn = omega.draw(b)?;
    let (diam, _) = diameter_circle(b, omega.center, p)?;
    let (m, n) = b.pick_both(diam, drawn)?;
    if m == n {
        return Err(Error::NotExterior);
    }
    perp_foot(b, m, n, omega.center)
}

/// Inverse of any point other than the center. Points on the circle are
/// their own inverse; interior points are scaled out by an integer factor,
/// inverted, and the result scaled back by the same factor.
pub fn invert_general(b: &mut Builder, omega: CircleRef, p: NodeId) -> Result<NodeId> {
    let (center, radius) = omega.resolve(b)?;
    let eps = b.tol().eps_degenerate;
    if radius <= eps {
        return Err(Error::DegenerateCircle);
    }
    let dist = (b.point(p)? - center).norm();
    if dist <= eps {
        return Err(Error::CenterInversion);
    }
    if (dist - radius).abs() <= eps {
        return Ok(p);
    }
    if dist > radius {
        return invert_exterior(b, omega, p);
    }
    let factor = (radius / dist).floor() + 2.0;
    if factor > MAX_SCALE as f64 {
        return Err(Error::ScaleOverflow(factor.min(u64::MAX as f64) as u64));
    }
    let n = factor as u64;
    let outside = nth_point(b, omega.center, p, n)?;
    let inverted = invert_exterior(b, omega, outside)?;
    nth_point(b, omega.center, inverted, n)
}

/// Auxiliary pole for [`line_line`]: the apex of one of the segments between
/// the four given points, chosen in a fixed order as the first that sits
/// well clear of both lines, or else the one with the most clearance.
fn choose_pole(pts: [Point; 4], eps: f64) -> Result<(usize, usize, Selector)> {
    let [a, b, c, d] = pts;
    let reach = (b - a).norm().min((d - c).norm());
    let pairs = [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)];
    let mut best: Option<(f64, (usize, usize, Selector))> = None;
    for (i, j) in pairs {
        let (u, v) = (pts[i], pts[j]);
        if (v - u).norm() <= eps {
            continue;
        }
        for side in [Selector::Left, Selector::Right] {
            let turn = match side {
                Selector::Left => 1.0,
                Selector::Right => -1.0,
            };
            let w = v - u;
            let (s, co) = (turn * 3f64.sqrt() / 2.0, 0.5);
            let pole = u + Point::new(w.x * co - w.y * s, w.x * s + w.y * co);
            let clearance = line_distance(pole, a, b).min(line_distance(pole, c, d));
            if clearance >= 0.25 * reach {
                return Ok((i, j, side));
            }
            if best.map_or(true, |(c, _)| clearance > c) {
                best = Some((clearance, (i, j, side)));
            }
        }
    }
    match best {
        Some((clearance, choice)) if clearance > eps * reach.max(1.0) => Ok(choice),
        _ => Err(Error::NoPole),
    }
}

/// Intersection of lines `a b` and `c d`.
///
/// Inverting in a circle about a pole `P` off both lines turns each line
/// into a circle through `P` (on diameter `P` and the inverse of the foot
/// from `P`); those circles meet again at the inverse of the intersection.
pub fn line_line(b: &mut Builder, a: NodeId, bb: NodeId, c: NodeId, d: NodeId) -> Result<NodeId> {
    let (pa, pb) = distinct(b, a, bb)?;
    let (pc, pd) = distinct(b, c, d)?;
    let (u, v) = (pb - pa, pd - pc);
    if (u.cross(v) / (u.norm() * v.norm())).abs() <= b.tol().eps_degenerate {
        return Err(Error::ParallelLines);
    }
    let nodes = [a, bb, c, d];
    let (i, j, side) = choose_pole([pa, pb, pc, pd], b.tol().eps_degenerate)?;
    let pole = apex(b, nodes[i], nodes[j], side)?;
    let gamma = CircleRef::new(pole, a);

    let n = perp_foot(b, a, bb, pole)?;
    let m = perp_foot(b, c, d, pole)?;
    let i = invert_general(b, gamma, n)?;
    let j = invert_general(b, gamma, m)?;
    let (first, _) = diameter_circle(b, i, pole)?;
    let (second, _) = diameter_circle(b, j, pole)?;
    let k = b.pick_other(first, second, pole)?;
    invert_general(b, gamma, k)
}

/// Line `a b` against `omega` when the center is off the line: invert the
/// foot `H` from the center to get `K`; the circle on diameter `O K` meets
/// `omega` exactly where the line does.
pub fn line_circle_off_center(
    b: &mut Builder,
    a: NodeId,
    bb: NodeId,
    omega: CircleRef,
) -> Result<LineCircle> {
    let (pa, pb) = distinct(b, a, bb)?;
    let (center, radius) = omega.resolve(b)?;
    let eps = b.tol().eps_degenerate;
    if radius <= eps {
        return Err(Error::DegenerateCircle);
    }
    let off = line_distance(center, pa, pb);
    if off <= eps * radius.max(1.0) {
        return Err(Error::CenterOnLine);
    }
    if off > radius + eps {
        return Err(Error::NoSuchIntersection);
    }
    let h = perp_foot(b, a, bb, omega.center)?;
    let k = invert_general(b, omega, h)?;
    let (diam, _) = diameter_circle(b, omega.center, k)?;
    let drawn = omega.draw(b)?;
    match b.intersection(diam, drawn)? {
        IntersectionOutcome::Tangent(_) => Ok(LineCircle::Tangent(b.pick(diam, drawn, Selector::Left)?)),
        _ => {
            let (l, r) = b.pick_both(diam, drawn)?;
            Ok(LineCircle::Two(l, r))
        }
    }
}

/// Line through the center `o` of `omega` and `a`: the two points of
/// `omega` on it.
///
/// With `C` on `omega` off the line and `P = 2C - O`, `Q = 3C - 2O`, the
/// inversion in the circle about `Q` through `C` maps `omega` to the circle
/// on diameter `C P` and the line to the circle on diameter `Q I`, where `I`
/// inverts the foot from `Q`. Their meeting points invert back to the
/// answer.
pub fn line_circle_center_on_line(
    b: &mut Builder,
    o: NodeId,
    a: NodeId,
    omega: CircleRef,
) -> Result<(NodeId, NodeId)> {
    let (po, pa) = distinct(b, o, a)?;
    let eps = b.tol().eps_degenerate;
    if omega.center != o && (b.point(omega.center)? - po).norm() > eps {
        return Err(Error::CenterMismatch);
    }
    let (_, radius) = omega.resolve(b)?;
    if radius <= eps {
        return Err(Error::DegenerateCircle);
    }
    let dir = pa - po;
    let sine = |p: Point| dir.cross(p - po) / (dir.norm() * (p - po).norm());

    let given = omega.through;
    let given_sine = sine(b.point(given)?);
    if given_sine.abs() <= eps {
        let opposite = antipode(b, CircleRef::new(o, given), given)?;
        return Ok((given, opposite));
    }
    let helper = if given_sine.abs() >= 0.5 {
        given
    } else {
        // a neighbor of the given point on the inscribed hexagon is at least
        // 30 degrees off the line
        let drawn = b.circle(o, given)?;
        let around_given = b.circle(given, o)?;
        let (l, r) = b.pick_both(drawn, around_given)?;
        if sine(b.point(l)?).abs() >= sine(b.point(r)?).abs() {
            l
        } else {
            r
        }
    };

    let p = extend(b, o, helper)?;
    let q = extend(b, helper, p)?;
    let lambda = CircleRef::new(q, helper);
    let h = perp_foot(b, o, a, q)?;
    let i = invert_general(b, lambda, h)?;
    let (pi, _) = diameter_circle(b, q, i)?;
    let (sigma, _) = diameter_circle(b, helper, p)?;
    let (x1, x2) = b.pick_both(sigma, pi)?;
    let first = invert_general(b, lambda, x1)?;
    let second = if x2 == x1 { first } else { invert_general(b, lambda, x2)? };
    Ok((first, second))
}

/// The point of `omega` diametrically opposite `p`.
pub fn antipode(b: &mut Builder, omega: CircleRef, p: NodeId) -> Result<NodeId> {
    let (center, radius) = omega.resolve(b)?;
    let dist = (b.point(p)? - center).norm();
    if (dist - radius).abs() > b.tol().eps_degenerate * radius.max(1.0) {
        return Err(Error::NotOnCircle);
    }
    extend(b, p, omega.center)
}
