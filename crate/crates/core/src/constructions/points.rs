//! Each construction as a standalone program over concrete seed points.

use crate::error::{Error, Result};
use crate::kernel::{Builder, NodeId, Program, Selector, Trace};
use crate::numeric::{Point, Tolerance};

use super::{CircleRef, LineCircle};

/// A line known only by two distinct points on it. Lines are never drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineByPoints {
    pub a: Point,
    pub b: Point,
}

impl LineByPoints {
    pub fn new(a: Point, b: Point, tol: &Tolerance) -> Result<Self> {
        if crate::numeric::distance(a, b)? <= tol.eps_degenerate {
            return Err(Error::DegenerateCircle);
        }
        Ok(LineByPoints { a, b })
    }
}

/// A circle given the compass way: a center and a point on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleByCenterAndPoint {
    pub center: Point,
    pub through: Point,
}

impl CircleByCenterAndPoint {
    pub fn new(center: Point, through: Point, tol: &Tolerance) -> Result<Self> {
        if crate::numeric::distance(center, through)? <= tol.eps_degenerate {
            return Err(Error::DegenerateCircle);
        }
        Ok(CircleByCenterAndPoint { center, through })
    }

    pub fn radius(&self) -> f64 {
        (self.through - self.center).norm()
    }
}

/// An executed construction: the program, its trace, and its output points.
#[derive(Debug, Clone, PartialEq)]
pub struct Construction {
    pub program: Program,
    pub trace: Trace,
    pub outputs: Vec<Point>,
}

impl Construction {
    /// Run `build` on a fresh builder seeded with `seeds`.
    pub fn build<F>(seeds: &[Point], tol: &Tolerance, build: F) -> Result<Self>
    where
        F: FnOnce(&mut Builder, &[NodeId]) -> Result<Vec<NodeId>>,
    {
        let mut b = Builder::new(seeds, *tol)?;
        let ids: Vec<NodeId> = (0..seeds.len()).map(NodeId).collect();
        let outputs = build(&mut b, &ids)?;
        let (program, trace) = b.finish(outputs)?;
        let outputs = trace.outputs();
        Ok(Construction {
            program,
            trace,
            outputs,
        })
    }

    pub fn output(&self) -> Point {
        self.outputs[0]
    }

    pub fn circle_count(&self) -> usize {
        self.trace.circle_count
    }
}

pub fn apex(a: Point, b: Point, side: Selector, tol: &Tolerance) -> Result<Construction> {
    Construction::build(&[a, b], tol, |bld, s| Ok(vec![super::apex(bld, s[0], s[1], side)?]))
}

pub fn extend(x: Point, y: Point, tol: &Tolerance) -> Result<Construction> {
    Construction::build(&[x, y], tol, |bld, s| Ok(vec![super::extend(bld, s[0], s[1])?]))
}

pub fn nth_point(o: Point, p: Point, n: u64, tol: &Tolerance) -> Result<Construction> {
    Construction::build(&[o, p], tol, |bld, s| Ok(vec![super::nth_point(bld, s[0], s[1], n)?]))
}

pub fn midpoint(a: Point, b: Point, tol: &Tolerance) -> Result<Construction> {
    Construction::build(&[a, b], tol, |bld, s| Ok(vec![super::midpoint(bld, s[0], s[1])?]))
}

/// Outputs are the circle's center and the point it is drawn through.
pub fn diameter_circle(a: Point, b: Point, tol: &Tolerance) -> Result<(Construction, CircleByCenterAndPoint)> {
    let built = Construction::build(&[a, b], tol, |bld, s| {
        let (_, circle) = super::diameter_circle(bld, s[0], s[1])?;
        Ok(vec![circle.center, circle.through])
    })?;
    let circle = CircleByCenterAndPoint {
        center: built.outputs[0],
        through: built.outputs[1],
    };
    Ok((built, circle))
}

pub fn perp_foot(a: Point, b: Point, c: Point, tol: &Tolerance) -> Result<Construction> {
    let line = LineByPoints::new(a, b, tol)?;
    Construction::build(&[line.a, line.b, c], tol, |bld, s| {
        Ok(vec![super::perp_foot(bld, s[0], s[1], s[2])?])
    })
}

/// Seeds: center, through-point, `p`.
pub fn invert_exterior(omega: CircleByCenterAndPoint, p: Point, tol: &Tolerance) -> Result<Construction> {
    Construction::build(&[omega.center, omega.through, p], tol, |bld, s| {
        Ok(vec![super::invert_exterior(bld, CircleRef::new(s[0], s[1]), s[2])?])
    })
}

/// Seeds: center, through-point, `p`.
pub fn invert_general(omega: CircleByCenterAndPoint, p: Point, tol: &Tolerance) -> Result<Construction> {
    Construction::build(&[omega.center, omega.through, p], tol, |bld, s| {
        Ok(vec![super::invert_general(bld, CircleRef::new(s[0], s[1]), s[2])?])
    })
}

pub fn line_line(ab: LineByPoints, cd: LineByPoints, tol: &Tolerance) -> Result<Construction> {
    Construction::build(&[ab.a, ab.b, cd.a, cd.b], tol, |bld, s| {
        Ok(vec![super::line_line(bld, s[0], s[1], s[2], s[3])?])
    })
}

/// One output for a tangent line, two otherwise (left, right of the
/// directed line from the circle's center to the second intersection
/// circle's center).
pub fn line_circle_off_center(
    line: LineByPoints,
    omega: CircleByCenterAndPoint,
    tol: &Tolerance,
) -> Result<Construction> {
    Construction::build(&[line.a, line.b, omega.center, omega.through], tol, |bld, s| {
        let hit = super::line_circle_off_center(bld, s[0], s[1], CircleRef::new(s[2], s[3]))?;
        Ok(match hit {
            LineCircle::Two(l, r) => vec![l, r],
            LineCircle::Tangent(p) => vec![p],
        })
    })
}

/// Seeds: `o` (the center), `a`, and `omega`'s through-point.
pub fn line_circle_center_on_line(
    o: Point,
    a: Point,
    omega: CircleByCenterAndPoint,
    tol: &Tolerance,
) -> Result<Construction> {
    if (omega.center - o).norm() > tol.eps_degenerate {
        return Err(Error::CenterMismatch);
    }
    Construction::build(&[o, a, omega.through], tol, |bld, s| {
        let (p, q) = super::line_circle_center_on_line(bld, s[0], s[1], CircleRef::new(s[0], s[2]))?;
        Ok(vec![p, q])
    })
}

/// Seeds: center, through-point, `p`.
pub fn antipode(omega: CircleByCenterAndPoint, p: Point, tol: &Tolerance) -> Result<Construction> {
    Construction::build(&[omega.center, omega.through, p], tol, |bld, s| {
        Ok(vec![super::antipode(bld, CircleRef::new(s[0], s[1]), s[2])?])
    })
}
