use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::numeric::{circle_circle_intersect, IntersectionOutcome, Point, ResolvedCircle, Tolerance};

use super::program::{append_rebased, NodeId, Program, Selector, Step};
use super::trace::{resolve_seeds, resolve_step, Resolved, Trace};

/// Grows a program while executing it, so construction code can look at
/// intermediate coordinates when deciding what to draw next.
///
/// Every step goes through the same resolver as [`execute`](super::execute),
/// so replaying the finished program reproduces the trace bit for bit.
#[derive(Debug, Clone)]
pub struct Builder {
    program: Program,
    resolved: Vec<Resolved>,
    tol: Tolerance,
    drawn: HashMap<(NodeId, NodeId), NodeId>,
}

impl Builder {
    pub fn new(seeds: &[Point], tol: Tolerance) -> Result<Self> {
        Self::from_program(&Program::seeds_only(seeds.len()), seeds, tol)
    }

    /// Start from an existing program, executed on `seeds`.
    pub fn from_program(program: &Program, seeds: &[Point], tol: Tolerance) -> Result<Self> {
        let mut builder = Builder {
            program: Program::seeds_only(program.seed_count()),
            resolved: resolve_seeds(program, seeds)?,
            tol,
            drawn: HashMap::new(),
        };
        builder.program.set_outputs_unchecked(Vec::new());
        for step in &program.steps()[program.seed_count()..] {
            builder.push(*step)?;
        }
        Ok(builder)
    }

    pub fn tol(&self) -> &Tolerance {
        &self.tol
    }

    pub fn seed(&self, slot: usize) -> Result<NodeId> {
        if slot < self.program.seed_count() {
            Ok(NodeId(slot))
        } else {
            Err(Error::InvalidNodeId(slot))
        }
    }

    pub fn len(&self) -> usize {
        self.program.len()
    }

    pub fn is_empty(&self) -> bool {
        self.program.is_empty()
    }

    pub fn program(&self) -> &Program {
        &self.program
    }

    pub fn point(&self, id: NodeId) -> Result<Point> {
        self.resolved
            .get(id.0)
            .and_then(Resolved::as_point)
            .ok_or(Error::InvalidNodeId(id.0))
    }

    pub fn resolved_circle(&self, id: NodeId) -> Result<ResolvedCircle> {
        self.resolved
            .get(id.0)
            .and_then(Resolved::as_circle)
            .copied()
            .ok_or(Error::InvalidNodeId(id.0))
    }

    fn push(&mut self, step: Step) -> Result<NodeId> {
        let value = resolve_step(&step, &self.resolved, &self.tol)?;
        self.resolved.push(value);
        let id = self.program.push_unchecked(step);
        if let Step::Circle { center, through } = step {
            self.drawn.entry((center, through)).or_insert(id);
        }
        Ok(id)
    }

    /// Draw the circle centered at `center` through `through`. Drawing the
    /// same circle twice returns the earlier node.
    pub fn circle(&mut self, center: NodeId, through: NodeId) -> Result<NodeId> {
        self.point(center)?;
        self.point(through)?;
        if let Some(&id) = self.drawn.get(&(center, through)) {
            return Ok(id);
        }
        self.push(Step::Circle { center, through })
    }

    pub fn pick(&mut self, circle1: NodeId, circle2: NodeId, which: Selector) -> Result<NodeId> {
        self.resolved_circle(circle1)?;
        self.resolved_circle(circle2)?;
        self.push(Step::Pick {
            circle1,
            circle2,
            which,
        })
    }

    /// Look at the intersection of two drawn circles without recording it.
    pub fn intersection(&self, circle1: NodeId, circle2: NodeId) -> Result<IntersectionOutcome> {
        circle_circle_intersect(
            &self.resolved_circle(circle1)?,
            &self.resolved_circle(circle2)?,
            &self.tol,
        )
    }

    /// Pick whichever intersection point lies farther from `avoid`; for
    /// tangent circles this is the tangency point.
    pub fn pick_other(&mut self, circle1: NodeId, circle2: NodeId, avoid: NodeId) -> Result<NodeId> {
        let which = match self.intersection(circle1, circle2)? {
            IntersectionOutcome::TwoPoints { left, right } => {
                let a = self.point(avoid)?;
                if (left - a).norm() >= (right - a).norm() {
                    Selector::Left
                } else {
                    Selector::Right
                }
            }
            _ => Selector::Left,
        };
        self.pick(circle1, circle2, which)
    }

    /// Both intersection points, left first. Tangent circles yield the
    /// tangency point twice (one recorded step).
    pub fn pick_both(&mut self, circle1: NodeId, circle2: NodeId) -> Result<(NodeId, NodeId)> {
        match self.intersection(circle1, circle2)? {
            IntersectionOutcome::Tangent(_) => {
                let p = self.pick(circle1, circle2, Selector::Left)?;
                Ok((p, p))
            }
            _ => Ok((
                self.pick(circle1, circle2, Selector::Left)?,
                self.pick(circle1, circle2, Selector::Right)?,
            )),
        }
    }

    /// Append `guest` with its seeds bound to `seed_map`, resolving every
    /// new step. Returns the guest's outputs as nodes of this builder.
    pub fn inline(&mut self, guest: &Program, seed_map: &[NodeId]) -> Result<Vec<NodeId>> {
        let mut scratch = self.program.clone();
        let start = scratch.len();
        let outputs = append_rebased(&mut scratch, guest, seed_map)?;
        for step in &scratch.steps()[start..] {
            self.push(*step)?;
        }
        Ok(outputs)
    }

    /// Freeze the program with the given outputs and produce its trace.
    pub fn finish(mut self, outputs: Vec<NodeId>) -> Result<(Program, Trace)> {
        self.program = self.program.with_outputs(outputs)?;
        let trace = Trace {
            program: self.program.clone(),
            seed_values: self.seed_values(),
            circle_count: self.program.circle_count(),
            resolved: self.resolved,
        };
        Ok((self.program, trace))
    }

    /// Snapshot of the current state as a trace with the given outputs.
    pub fn trace(&self, outputs: Vec<NodeId>) -> Result<Trace> {
        self.clone().finish(outputs).map(|(_, t)| t)
    }

    fn seed_values(&self) -> Vec<Point> {
        self.resolved[..self.program.seed_count()]
            .iter()
            .map(|r| r.as_point().expect("seeds are points"))
            .collect()
    }
}
