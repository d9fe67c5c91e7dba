//! Closed-form analytic geometry used only to check constructions.
//!
//! Nothing under `constructions`, `field` or `dsl` calls into this module.
//! Radii here are plain numbers; these functions verify, they do not
//! construct. Each formula is derived independently of the radical-line
//! routine in [`numeric`](crate::numeric).

use crate::numeric::Point;

fn sub(p: Point, q: Point) -> (f64, f64) {
    (p.x - q.x, p.y - q.y)
}

/// Cramer's rule on `a + s (b - a) = c + t (d - c)`. `None` when the
/// determinant is within `eps * |b - a| |d - c|` of zero.
pub fn line_line(a: Point, b: Point, c: Point, d: Point, eps: f64) -> Option<Point> {
    let (ux, uy) = sub(b, a);
    let (vx, vy) = sub(d, c);
    let (wx, wy) = sub(c, a);
    let det = ux * (-vy) - (-vx) * uy;
    let scale = (ux * ux + uy * uy).sqrt() * (vx * vx + vy * vy).sqrt();
    if det.abs() <= eps * scale.max(f64::MIN_POSITIVE) {
        return None;
    }
    let s = (wx * (-vy) - (-vx) * wy) / det;
    Some(Point::new(a.x + s * ux, a.y + s * uy))
}

/// Points where line `a b` meets the circle: zero, one (tangent within
/// `eps`) or two, ordered by their parameter along `a -> b`.
pub fn line_circle(a: Point, b: Point, center: Point, radius: f64, eps: f64) -> Vec<Point> {
    let (ux, uy) = sub(b, a);
    let len = (ux * ux + uy * uy).sqrt();
    let (ex, ey) = (ux / len, uy / len);
    let (wx, wy) = sub(center, a);
    let t0 = wx * ex + wy * ey;
    let foot = Point::new(a.x + t0 * ex, a.y + t0 * ey);
    let off = ((center.x - foot.x).powi(2) + (center.y - foot.y).powi(2)).sqrt();
    if (off - radius).abs() <= eps {
        return vec![foot];
    }
    if off > radius {
        return Vec::new();
    }
    let half = (radius * radius - off * off).sqrt();
    vec![
        Point::new(foot.x - half * ex, foot.y - half * ey),
        Point::new(foot.x + half * ex, foot.y + half * ey),
    ]
}

/// `O + r^2 (P - O) / |P - O|^2`.
pub fn invert(center: Point, radius: f64, p: Point) -> Point {
    let (dx, dy) = sub(p, center);
    let k = radius * radius / (dx * dx + dy * dy);
    Point::new(center.x + k * dx, center.y + k * dy)
}

pub fn midpoint(a: Point, b: Point) -> Point {
    Point::new(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
}

/// Orthogonal projection of `c` onto line `a b`.
pub fn foot(a: Point, b: Point, c: Point) -> Point {
    let (ux, uy) = sub(b, a);
    let (wx, wy) = sub(c, a);
    let t = (wx * ux + wy * uy) / (ux * ux + uy * uy);
    Point::new(a.x + t * ux, a.y + t * uy)
}

/// `2y - x`.
pub fn reflect(x: Point, y: Point) -> Point {
    Point::new(2.0 * y.x - x.x, 2.0 * y.y - x.y)
}

/// `o + n (p - o)`.
pub fn scale_from(o: Point, p: Point, n: f64) -> Point {
    Point::new(o.x + n * (p.x - o.x), o.y + n * (p.y - o.y))
}

/// Third vertex of the equilateral triangle on `a b`: `b - a` rotated by
/// +60 degrees (`left`) or -60 degrees about `a`.
pub fn apex(a: Point, b: Point, left: bool) -> Point {
    let angle = if left { std::f64::consts::FRAC_PI_3 } else { -std::f64::consts::FRAC_PI_3 };
    complex_add(a, complex_mul(sub_point(b, a), Point::new(angle.cos(), angle.sin())))
}

/// Both ends of the diameter of the circle about `o` along direction `a - o`.
pub fn antipodes(o: Point, a: Point, radius: f64) -> [Point; 2] {
    let (dx, dy) = sub(a, o);
    let len = (dx * dx + dy * dy).sqrt();
    let (ux, uy) = (radius * dx / len, radius * dy / len);
    [Point::new(o.x + ux, o.y + uy), Point::new(o.x - ux, o.y - uy)]
}

/// Intersections of two circles from the law of cosines, as angles on the
/// first circle. Returns `None` when the circles miss or share a center.
pub fn circle_circle(c1: Point, r1: f64, c2: Point, r2: f64) -> Option<[Point; 2]> {
    let (dx, dy) = sub(c2, c1);
    let d = (dx * dx + dy * dy).sqrt();
    if d == 0.0 {
        return None;
    }
    let cos_t = (r1 * r1 + d * d - r2 * r2) / (2.0 * r1 * d);
    if !(-1.0..=1.0).contains(&cos_t) {
        return None;
    }
    let phi = dy.atan2(dx);
    let t = cos_t.acos();
    let at = |ang: f64| Point::new(c1.x + r1 * ang.cos(), c1.y + r1 * ang.sin());
    Some([at(phi + t), at(phi - t)])
}

fn sub_point(p: Point, q: Point) -> Point {
    let (x, y) = sub(p, q);
    Point::new(x, y)
}

pub fn complex_mul(a: Point, b: Point) -> Point {
    Point::new(a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x)
}

pub fn complex_add(a: Point, b: Point) -> Point {
    Point::new(a.x + b.x, a.y + b.y)
}

pub fn complex_conj(a: Point) -> Point {
    Point::new(a.x, -a.y)
}

pub fn complex_neg(a: Point) -> Point {
    Point::new(-a.x, -a.y)
}
