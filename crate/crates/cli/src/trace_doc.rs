//! JSON form of a trace.
//!
//! ```json
//! {
//!   "version": 1,
//!   "seeds": [{"id": 0, "name": "A", "x": 0.0, "y": 0.0}],
//!   "steps": [
//!     {"op": "circle", "id": 2, "center": 0, "through": 1},
//!     {"op": "pick", "id": 4, "c1": 2, "c2": 3, "selector": "left", "x": 0.5, "y": 0.866}
//!   ],
//!   "outputs": [{"name": "M", "id": 4}]
//! }
//! ```
//!
//! Coordinates are written in shortest round-trip form, so reading a
//! document and writing it again reproduces it byte for byte.

use compass_core::kernel::{purity_audit, Resolved};
use compass_core::{Error, NodeId, Point, Program, ResolvedCircle, Selector, Step, Trace};
use serde::{Deserialize, Serialize};

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDocument {
    pub version: u32,
    pub seeds: Vec<SeedEntry>,
    pub steps: Vec<StepEntry>,
    pub outputs: Vec<OutputEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedEntry {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectorName {
    Left,
    Right,
}

impl From<Selector> for SelectorName {
    fn from(s: Selector) -> Self {
        match s {
            Selector::Left => SelectorName::Left,
            Selector::Right => SelectorName::Right,
        }
    }
}

impl From<SelectorName> for Selector {
    fn from(s: SelectorName) -> Self {
        match s {
            SelectorName::Left => Selector::Left,
            SelectorName::Right => Selector::Right,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum StepEntry {
    Circle {
        id: usize,
        center: usize,
        through: usize,
    },
    Pick {
        id: usize,
        c1: usize,
        c2: usize,
        selector: SelectorName,
        x: f64,
        y: f64,
    },
}

impl StepEntry {
    pub fn id(&self) -> usize {
        match self {
            StepEntry::Circle { id, .. } | StepEntry::Pick { id, .. } => *id,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputEntry {
    pub name: String,
    pub id: usize,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedTrace(msg.into())
}

impl TraceDocument {
    /// `seed_names` may be shorter than the seed list; `outputs` pairs a
    /// display name with each output node.
    pub fn from_trace(trace: &Trace, seed_names: &[String], outputs: &[(String, NodeId)]) -> TraceDocument {
        let mut seeds = Vec::new();
        let mut steps = Vec::new();
        for (id, (step, value)) in trace.program.steps().iter().zip(&trace.resolved).enumerate() {
            match (*step, value) {
                (Step::Seed { slot }, _) => {
                    let p = trace.seed_values[slot];
                    seeds.push(SeedEntry {
                        id,
                        name: seed_names.get(slot).cloned(),
                        x: p.x,
                        y: p.y,
                    });
                }
                (Step::Circle { center, through }, _) => steps.push(StepEntry::Circle {
                    id,
                    center: center.0,
                    through: through.0,
                }),
                (Step::Pick { circle1, circle2, which }, Resolved::Point(p)) => steps.push(StepEntry::Pick {
                    id,
                    c1: circle1.0,
                    c2: circle2.0,
                    selector: which.into(),
                    x: p.x,
                    y: p.y,
                }),
                (Step::Pick { .. }, Resolved::Circle(_)) => unreachable!("picks resolve to points"),
            }
        }
        TraceDocument {
            version: VERSION,
            seeds,
            steps,
            outputs: outputs
                .iter()
                .map(|(name, id)| OutputEntry {
                    name: name.clone(),
                    id: id.0,
                })
                .collect(),
        }
    }

    /// Outputs named `out0`, `out1`, ... and unnamed seeds.
    pub fn from_trace_unnamed(trace: &Trace) -> TraceDocument {
        let outputs: Vec<_> = trace
            .program
            .outputs()
            .iter()
            .enumerate()
            .map(|(i, id)| (format!("out{i}"), *id))
            .collect();
        TraceDocument::from_trace(trace, &[], &outputs)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document is plain data");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<TraceDocument, Error> {
        let doc: TraceDocument = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        if doc.version != VERSION {
            return Err(malformed(format!("unsupported version {}", doc.version)));
        }
        Ok(doc)
    }

    /// Rebuild the in-memory trace from the recorded coordinates and audit
    /// it. Circles are recomputed from their recorded center and through
    /// points; nothing is re-intersected.
    pub fn to_trace(&self) -> Result<Trace, Error> {
        let seed_count = self.seeds.len();
        for (i, seed) in self.seeds.iter().enumerate() {
            if seed.id != i {
                return Err(malformed(format!("seed ids must be 0..{seed_count}, found {}", seed.id)));
            }
        }
        let mut steps: Vec<Step> = (0..seed_count).map(|slot| Step::Seed { slot }).collect();
        let mut resolved: Vec<Resolved> = self
            .seeds
            .iter()
            .map(|s| Resolved::Point(Point::new(s.x, s.y)))
            .collect();
        for (i, entry) in self.steps.iter().enumerate() {
            let expected = seed_count + i;
            if entry.id() != expected {
                return Err(malformed(format!("step ids must be dense, expected {expected}, found {}", entry.id())));
            }
            let earlier = |r: usize| {
                if r < expected {
                    Ok(r)
                } else {
                    Err(malformed(format!("step {expected} references {r}, which is not earlier")))
                }
            };
            match *entry {
                StepEntry::Circle { center, through, .. } => {
                    let (c, t) = (earlier(center)?, earlier(through)?);
                    let point = |r: usize| {
                        resolved[r]
                            .as_point()
                            .ok_or_else(|| malformed(format!("circle {expected} needs point ids, {r} is a circle")))
                    };
                    let circle = ResolvedCircle::through(point(c)?, point(t)?).map_err(|e| malformed(e.to_string()))?;
                    steps.push(Step::Circle {
                        center: NodeId(c),
                        through: NodeId(t),
                    });
                    resolved.push(Resolved::Circle(circle));
                }
                StepEntry::Pick { c1, c2, selector, x, y, .. } => {
                    steps.push(Step::Pick {
                        circle1: NodeId(earlier(c1)?),
                        circle2: NodeId(earlier(c2)?),
                        which: selector.into(),
                    });
                    resolved.push(Resolved::Point(Point::new(x, y)));
                }
            }
        }
        let outputs = self.outputs.iter().map(|o| NodeId(o.id)).collect();
        let program = Program::new(seed_count, steps, outputs).map_err(|e| malformed(e.to_string()))?;
        let trace = Trace {
            circle_count: program.circle_count(),
            seed_values: self.seeds.iter().map(|s| Point::new(s.x, s.y)).collect(),
            program,
            resolved,
        };
        purity_audit(&trace)?;
        Ok(trace)
    }

    pub fn seed_names(&self) -> Vec<Option<String>> {
        self.seeds.iter().map(|s| s.name.clone()).collect()
    }
}
