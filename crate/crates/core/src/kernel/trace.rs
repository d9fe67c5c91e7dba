use crate::error::{Error, Result};
use crate::numeric::{circle_circle_intersect, IntersectionOutcome, Point, ResolvedCircle, Tolerance};

use super::program::{rebase, NodeId, NodeKind, Program, Selector, Step};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Resolved {
    Point(Point),
    Circle(ResolvedCircle),
}

impl Resolved {
    pub fn as_point(&self) -> Option<Point> {
        match self {
            Resolved::Point(p) => Some(*p),
            Resolved::Circle(_) => None,
        }
    }

    pub fn as_circle(&self) -> Option<&ResolvedCircle> {
        match self {
            Resolved::Circle(c) => Some(c),
            Resolved::Point(_) => None,
        }
    }
}

/// A fully resolved execution record: every circle drawn and every
/// intersection taken, with coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub program: Program,
    pub seed_values: Vec<Point>,
    pub resolved: Vec<Resolved>,
    pub circle_count: usize,
}

impl Trace {
    pub fn point(&self, id: NodeId) -> Result<Point> {
        self.resolved
            .get(id.0)
            .and_then(Resolved::as_point)
            .ok_or(Error::InvalidNodeId(id.0))
    }

    pub fn outputs(&self) -> Vec<Point> {
        self.program
            .outputs()
            .iter()
            .map(|&id| self.point(id).expect("validated program outputs points"))
            .collect()
    }
}

/// Resolve a single non-seed step against already resolved nodes.
pub(crate) fn resolve_step(step: &Step, resolved: &[Resolved], tol: &Tolerance) -> Result<Resolved> {
    let point = |id: NodeId| resolved[id.0].as_point().ok_or(Error::InvalidNodeId(id.0));
    let circle = |id: NodeId| resolved[id.0].as_circle().ok_or(Error::InvalidNodeId(id.0));
    match *step {
        Step::Seed { .. } => unreachable!("seeds are resolved from inputs"),
        Step::Circle { center, through } => {
            let (c, t) = (point(center)?, point(through)?);
            let circle = ResolvedCircle::through(c, t)?;
            if circle.radius() <= tol.eps_degenerate {
                return Err(Error::DegenerateCircle);
            }
            Ok(Resolved::Circle(circle))
        }
        Step::Pick { circle1, circle2, which } => {
            let outcome = circle_circle_intersect(circle(circle1)?, circle(circle2)?, tol)?;
            select(outcome, which).map(Resolved::Point)
        }
    }
}

pub(crate) fn select(outcome: IntersectionOutcome, which: Selector) -> Result<Point> {
    match outcome {
        IntersectionOutcome::TwoPoints { left, right } => Ok(match which {
            Selector::Left => left,
            Selector::Right => right,
        }),
        // a tangency point answers to either selector
        IntersectionOutcome::Tangent(p) => Ok(p),
        IntersectionOutcome::NoIntersection => Err(Error::NoSuchIntersection),
        IntersectionOutcome::Coincident => Err(Error::CoincidentCircles),
    }
}

pub(crate) fn resolve_seeds(program: &Program, seeds: &[Point]) -> Result<Vec<Resolved>> {
    if seeds.len() != program.seed_count() {
        return Err(Error::SeedCountMismatch {
            expected: program.seed_count(),
            found: seeds.len(),
        });
    }
    seeds
        .iter()
        .map(|p| p.finite().map(Resolved::Point))
        .collect()
}

pub fn execute(program: &Program, seeds: &[Point], tol: &Tolerance) -> Result<Trace> {
    let mut resolved = resolve_seeds(program, seeds)?;
    resolved.reserve(program.len() - seeds.len());
    for step in &program.steps()[program.seed_count()..] {
        let value = resolve_step(step, &resolved, tol)?;
        resolved.push(value);
    }
    Ok(Trace {
        program: program.clone(),
        seed_values: seeds.to_vec(),
        resolved,
        circle_count: program.circle_count(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditReport {
    pub seeds: usize,
    pub circles: usize,
    pub picks: usize,
}

impl AuditReport {
    /// Always true for a report that was produced at all: the step
    /// vocabulary has no non-compass construct.
    pub fn compass_only(&self) -> bool {
        true
    }
}

/// Structural audit of a trace. In-memory traces always pass; this exists to
/// validate traces assembled from external data.
pub fn purity_audit(trace: &Trace) -> Result<AuditReport> {
    let bad = |msg: String| Err(Error::MalformedTrace(msg));
    let program = &trace.program;
    if let Err(e) = program.validate() {
        return bad(e.to_string());
    }
    if trace.seed_values.len() != program.seed_count() {
        return bad(format!(
            "{} seed values for {} seed slots",
            trace.seed_values.len(),
            program.seed_count()
        ));
    }
    if trace.resolved.len() != program.len() {
        return bad(format!(
            "{} resolved values for {} steps",
            trace.resolved.len(),
            program.len()
        ));
    }
    let mut report = AuditReport {
        seeds: 0,
        circles: 0,
        picks: 0,
    };
    for (i, (step, value)) in program.steps().iter().zip(&trace.resolved).enumerate() {
        let matches_kind = match (step.kind(), value) {
            (NodeKind::Point, Resolved::Point(p)) => p.is_finite(),
            (NodeKind::Circle, Resolved::Circle(c)) => c.center().is_finite() && c.radius().is_finite(),
            _ => false,
        };
        if !matches_kind {
            return bad(format!("resolved value {i} does not match its step"));
        }
        match step {
            Step::Seed { slot } => {
                if Resolved::Point(trace.seed_values[*slot]) != *value {
                    return bad(format!("seed {slot} disagrees with seed values"));
                }
                report.seeds += 1;
            }
            Step::Circle { .. } => report.circles += 1,
            Step::Pick { .. } => report.picks += 1,
        }
    }
    if report.circles != trace.circle_count {
        return bad(format!(
            "circle_count {} but {} circle steps",
            trace.circle_count, report.circles
        ));
    }
    Ok(report)
}

/// Largest coordinate deviation between a trace's recorded values and a
/// fresh replay of its program on its seeds.
pub fn replay_deviation(trace: &Trace, tol: &Tolerance) -> Result<f64> {
    purity_audit(trace)?;
    let replay = execute(&trace.program, &trace.seed_values, tol)?;
    let mut worst = 0.0f64;
    for (a, b) in trace.resolved.iter().zip(&replay.resolved) {
        let dev = match (a, b) {
            (Resolved::Point(p), Resolved::Point(q)) => (*p - *q).norm(),
            (Resolved::Circle(c), Resolved::Circle(d)) => {
                (c.center() - d.center()).norm().max((c.radius() - d.radius()).abs())
            }
            _ => f64::INFINITY,
        };
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// An orientation-preserving similarity `z -> p + (q - p) z`, written as the
/// images of 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similarity {
    pub p: Point,
    pub q: Point,
}

impl Similarity {
    pub const IDENTITY: Similarity = Similarity {
        p: Point::new(0.0, 0.0),
        q: Point::new(1.0, 0.0),
    };

    pub fn apply(&self, z: Point) -> Point {
        let w = self.q - self.p;
        self.p + Point::new(w.x * z.x - w.y * z.y, w.x * z.y + w.y * z.x)
    }

    pub fn scale(&self) -> f64 {
        (self.q - self.p).norm()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransportCheck {
    pub holds: bool,
    pub transported: Vec<Point>,
    pub expected: Vec<Point>,
    pub max_error: f64,
}

/// Replays a two-seed program on the images of 0 and 1 under `sim` and
/// compares against the similarity image of the canonical outputs, with
/// tolerance `eps_abs * max(1, |q - p|)`.
pub fn similarity_transport_check(
    program: &Program,
    sim: Similarity,
    tol: &Tolerance,
) -> Result<TransportCheck> {
    if program.seed_count() != 2 {
        return Err(Error::SeedCountMismatch {
            expected: 2,
            found: program.seed_count(),
        });
    }
    if sim.scale() <= tol.eps_degenerate {
        return Err(Error::DegenerateCircle);
    }
    let canonical = execute(program, &[Similarity::IDENTITY.p, Similarity::IDENTITY.q], tol)?;
    let composed = rebase(&Program::seeds_only(2), program, &[NodeId(0), NodeId(1)])?;
    let moved = execute(&composed, &[sim.p, sim.q], tol)?;

    let expected: Vec<Point> = canonical.outputs().into_iter().map(|z| sim.apply(z)).collect();
    let transported = moved.outputs();
    let max_error = expected
        .iter()
        .zip(&transported)
        .map(|(e, t)| (*e - *t).norm())
        .fold(0.0, f64::max);
    Ok(TransportCheck {
        holds: max_error <= tol.eps_abs * sim.scale().max(1.0),
        transported,
        expected,
        max_error,
    })
}
