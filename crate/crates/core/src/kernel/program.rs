use std::fmt;

use crate::error::{Error, Result};

/// Index of a node in a program's step list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Which of two intersection points to take, relative to the directed line
/// from the first circle's center to the second's. Orientation is preserved
/// by every orientation-preserving similarity, which is what makes replaying
/// a program on new seeds meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Selector {
    Left,
    Right,
}

impl Selector {
    pub fn flipped(self) -> Selector {
        match self {
            Selector::Left => Selector::Right,
            Selector::Right => Selector::Left,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Selector::Left => "left",
            Selector::Right => "right",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Seed { slot: usize },
    Circle { center: NodeId, through: NodeId },
    Pick { circle1: NodeId, circle2: NodeId, which: Selector },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Point,
    Circle,
}

impl Step {
    pub fn kind(&self) -> NodeKind {
        match self {
            Step::Circle { .. } => NodeKind::Circle,
            Step::Seed { .. } | Step::Pick { .. } => NodeKind::Point,
        }
    }

    fn operands(&self) -> [Option<NodeId>; 2] {
        match *self {
            Step::Seed { .. } => [None, None],
            Step::Circle { center, through } => [Some(center), Some(through)],
            Step::Pick { circle1, circle2, .. } => [Some(circle1), Some(circle2)],
        }
    }

    fn remap(&self, map: impl Fn(NodeId) -> NodeId) -> Step {
        match *self {
            Step::Seed { slot } => Step::Seed { slot },
            Step::Circle { center, through } => Step::Circle {
                center: map(center),
                through: map(through),
            },
            Step::Pick { circle1, circle2, which } => Step::Pick {
                circle1: map(circle1),
                circle2: map(circle2),
                which,
            },
        }
    }
}

/// A compass construction as data: seed slots, then circles and picks, each
/// referring only to earlier nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    seed_count: usize,
    steps: Vec<Step>,
    outputs: Vec<NodeId>,
}

impl Program {
    pub fn new(seed_count: usize, steps: Vec<Step>, outputs: Vec<NodeId>) -> Result<Self> {
        let program = Program {
            seed_count,
            steps,
            outputs,
        };
        program.validate()?;
        Ok(program)
    }

    /// A program that only declares `seed_count` seeds and outputs them.
    pub fn seeds_only(seed_count: usize) -> Self {
        Program {
            seed_count,
            steps: (0..seed_count).map(|slot| Step::Seed { slot }).collect(),
            outputs: (0..seed_count).map(NodeId).collect(),
        }
    }

    pub fn seed_count(&self) -> usize {
        self.seed_count
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn circle_count(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Circle { .. })).count()
    }

    pub fn pick_count(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Pick { .. })).count()
    }

    pub fn kind_of(&self, id: NodeId) -> Result<NodeKind> {
        self.steps
            .get(id.0)
            .map(Step::kind)
            .ok_or(Error::InvalidNodeId(id.0))
    }

    pub fn with_outputs(mut self, outputs: Vec<NodeId>) -> Result<Self> {
        self.outputs = outputs;
        self.validate()?;
        Ok(self)
    }

    /// Every selector swapped. On seeds that are mirror images of themselves
    /// this yields the mirrored construction.
    pub fn with_flipped_selectors(&self) -> Program {
        let steps = self
            .steps
            .iter()
            .map(|s| match *s {
                Step::Pick { circle1, circle2, which } => Step::Pick {
                    circle1,
                    circle2,
                    which: which.flipped(),
                },
                other => other,
            })
            .collect();
        Program {
            seed_count: self.seed_count,
            steps,
            outputs: self.outputs.clone(),
        }
    }

    pub(crate) fn push_unchecked(&mut self, step: Step) -> NodeId {
        self.steps.push(step);
        NodeId(self.steps.len() - 1)
    }

    pub(crate) fn set_outputs_unchecked(&mut self, outputs: Vec<NodeId>) {
        self.outputs = outputs;
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidProgram(msg));
        if self.steps.len() < self.seed_count {
            return bad(format!(
                "{} seed slots declared but only {} steps",
                self.seed_count,
                self.steps.len()
            ));
        }
        for (i, step) in self.steps.iter().enumerate() {
            match *step {
                Step::Seed { slot } => {
                    if i >= self.seed_count || slot != i {
                        return bad(format!("seed step at {i} out of place (slot {slot})"));
                    }
                }
                _ if i < self.seed_count => {
                    return bad(format!("step {i} must be a seed"));
                }
                Step::Circle { .. } => self.check_operands(i, step, NodeKind::Point)?,
                Step::Pick { .. } => self.check_operands(i, step, NodeKind::Circle)?,
            }
        }
        for &out in &self.outputs {
            if self.kind_of(out)? != NodeKind::Point {
                return bad(format!("output {out} is not a point"));
            }
        }
        Ok(())
    }

    fn check_operands(&self, at: usize, step: &Step, want: NodeKind) -> Result<()> {
        for id in step.operands().into_iter().flatten() {
            if id.0 >= at {
                return Err(Error::InvalidProgram(format!(
                    "step {at} refers forward to {id}"
                )));
            }
            if self.steps[id.0].kind() != want {
                return Err(Error::InvalidProgram(format!(
                    "step {at} expects a {want:?} operand at {id}"
                )));
            }
        }
        Ok(())
    }

    /// The minimal program computing `target` from this program's first two
    /// seeds, or `None` when `target` depends on any other seed.
    pub fn sub_program(&self, target: NodeId) -> Result<Option<Program>> {
        if target.0 >= self.steps.len() {
            return Err(Error::InvalidNodeId(target.0));
        }
        let mut needed = vec![false; self.steps.len()];
        needed[target.0] = true;
        for i in (0..=target.0).rev() {
            if !needed[i] {
                continue;
            }
            if let Step::Seed { slot } = self.steps[i] {
                if slot >= 2 {
                    return Ok(None);
                }
            }
            for id in self.steps[i].operands().into_iter().flatten() {
                needed[id.0] = true;
            }
        }
        let mut map = vec![None; self.steps.len()];
        let mut steps = vec![Step::Seed { slot: 0 }, Step::Seed { slot: 1 }];
        map[0] = Some(NodeId(0));
        if self.seed_count > 1 {
            map[1] = Some(NodeId(1));
        }
        for (i, step) in self.steps.iter().enumerate().skip(self.seed_count) {
            if needed[i] {
                steps.push(step.remap(|id| map[id.0].expect("operand precedes step")));
                map[i] = Some(NodeId(steps.len() - 1));
            }
        }
        let output = map[target.0].expect("target is mapped");
        Program::new(2, steps, vec![output]).map(Some)
    }
}

/// Inline `guest` into `host`: the guest's seeds are replaced by the host
/// nodes in `seed_map` and its other steps are appended. The returned
/// program's outputs are the guest's outputs, rewired.
pub fn rebase(host: &Program, guest: &Program, seed_map: &[NodeId]) -> Result<Program> {
    let mut out = host.clone();
    let outputs = append_rebased(&mut out, guest, seed_map)?;
    out.outputs = outputs;
    out.validate()?;
    Ok(out)
}

pub(crate) fn append_rebased(
    host: &mut Program,
    guest: &Program,
    seed_map: &[NodeId],
) -> Result<Vec<NodeId>> {
    if seed_map.len() != guest.seed_count {
        return Err(Error::SeedCountMismatch {
            expected: guest.seed_count,
            found: seed_map.len(),
        });
    }
    for &id in seed_map {
        if host.kind_of(id)? != NodeKind::Point {
            return Err(Error::InvalidNodeId(id.0));
        }
    }
    let offset = host.steps.len() - guest.seed_count;
    let map = |id: NodeId| {
        if id.0 < guest.seed_count {
            seed_map[id.0]
        } else {
            NodeId(id.0 + offset)
        }
    };
    for step in &guest.steps[guest.seed_count..] {
        host.steps.push(step.remap(map));
    }
    Ok(guest.outputs.iter().map(|&id| map(id)).collect())
}
