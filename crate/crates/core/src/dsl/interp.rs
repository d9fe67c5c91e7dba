use std::collections::HashMap;

use thiserror::Error;

use super::ast::{Arg, CallExpr, EmitTarget, Located, Op, Pos, Script, Statement};
use crate::constructions::{self, CircleRef, LineCircle};
use crate::error::Error;
use crate::field;
use crate::kernel::{Builder, NodeId, Program, Selector, Trace};
use crate::numeric::{Point, Tolerance};

/// What a script name is bound to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Value {
    Point(NodeId),
    Circle { node: NodeId, circle: CircleRef },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Binding {
    pub name: String,
    pub value: Value,
    pub line: usize,
}

/// A deferred output request; the caller performs the I/O.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmitRequest {
    pub target: EmitTarget,
    pub path: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RuntimeErrorKind {
    Name(String),
    Arity(String),
    Type(String),
    Construction(Error),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}:{column}: {}", describe(.kind))]
pub struct RuntimeError {
    pub line: usize,
    pub column: usize,
    pub kind: RuntimeErrorKind,
}

fn describe(kind: &RuntimeErrorKind) -> String {
    match kind {
        RuntimeErrorKind::Name(m) => format!("name error: {m}"),
        RuntimeErrorKind::Arity(m) => format!("arity error: {m}"),
        RuntimeErrorKind::Type(m) => format!("type error: {m}"),
        RuntimeErrorKind::Construction(e) => format!("construction failed: {e}"),
    }
}

/// The result of running a script: every binding, the single trace of all
/// compass steps, and the emit requests in script order.
#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    pub bindings: Vec<Binding>,
    /// Names of the `given` points, by seed slot.
    pub given: Vec<String>,
    /// Outputs are the bound points, in binding order.
    pub trace: Trace,
    pub emits: Vec<EmitRequest>,
}

impl Session {
    /// Bound points with their coordinates, in binding order.
    pub fn points(&self) -> Vec<(String, Point)> {
        self.bindings
            .iter()
            .filter_map(|b| match b.value {
                Value::Point(id) => Some((b.name.clone(), self.trace.point(id).ok()?)),
                Value::Circle { .. } => None,
            })
            .collect()
    }

    pub fn point(&self, name: &str) -> Option<Point> {
        self.points().into_iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    /// `(name, node)` for each bound point, matching the trace outputs.
    pub fn output_names(&self) -> Vec<(String, NodeId)> {
        self.bindings
            .iter()
            .filter_map(|b| match b.value {
                Value::Point(id) => Some((b.name.clone(), id)),
                Value::Circle { .. } => None,
            })
            .collect()
    }
}

type RResult<T> = Result<T, RuntimeError>;

struct Interp {
    builder: Builder,
    env: HashMap<String, Value>,
    bindings: Vec<Binding>,
    emits: Vec<EmitRequest>,
    next_seed: usize,
}

fn err<T>(pos: Pos, kind: RuntimeErrorKind) -> RResult<T> {
    Err(RuntimeError {
        line: pos.line,
        column: pos.column,
        kind,
    })
}

/// Arguments of one call, with positions for error reporting.
struct Args<'a> {
    op: Op,
    args: &'a [Arg],
    pos: &'a [Pos],
    at: Pos,
}

impl Args<'_> {
    fn count(&self, allowed: &[usize]) -> RResult<()> {
        if allowed.contains(&self.args.len()) {
            return Ok(());
        }
        let want = allowed.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" or ");
        err(
            self.at,
            RuntimeErrorKind::Arity(format!(
                "`{}` takes {want} arguments, got {}",
                self.op.name(),
                self.args.len()
            )),
        )
    }

    fn pos(&self, i: usize) -> Pos {
        self.pos.get(i).copied().unwrap_or(self.at)
    }
}

impl Interp {
    fn lookup(&self, args: &Args, i: usize) -> RResult<(String, Value)> {
        match &args.args[i] {
            Arg::Name(n) => match self.env.get(n) {
                Some(v) => Ok((n.clone(), *v)),
                None => err(args.pos(i), RuntimeErrorKind::Name(format!("`{n}` is not defined"))),
            },
            other => err(
                args.pos(i),
                RuntimeErrorKind::Type(format!("expected a name, found `{other}`")),
            ),
        }
    }

    fn point(&self, args: &Args, i: usize) -> RResult<NodeId> {
        match self.lookup(args, i)? {
            (_, Value::Point(id)) => Ok(id),
            (n, Value::Circle { .. }) => err(
                args.pos(i),
                RuntimeErrorKind::Type(format!("`{n}` is a circle, expected a point")),
            ),
        }
    }

    fn circle(&self, args: &Args, i: usize) -> RResult<(NodeId, CircleRef)> {
        match self.lookup(args, i)? {
            (_, Value::Circle { node, circle }) => Ok((node, circle)),
            (n, Value::Point(_)) => err(
                args.pos(i),
                RuntimeErrorKind::Type(format!("`{n}` is a point, expected a circle")),
            ),
        }
    }

    fn is_circle(&self, args: &Args, i: usize) -> bool {
        matches!(&args.args[i], Arg::Name(n) if matches!(self.env.get(n), Some(Value::Circle { .. })))
    }

    fn selector(&self, args: &Args, i: usize) -> RResult<Selector> {
        match args.args[i] {
            Arg::Selector(s) => Ok(s),
            ref other => err(
                args.pos(i),
                RuntimeErrorKind::Type(format!("expected `left` or `right`, found `{other}`")),
            ),
        }
    }

    fn multiplier(&self, args: &Args, i: usize) -> RResult<u64> {
        match args.args[i] {
            Arg::Number(v) if v >= 1.0 && v.fract() == 0.0 && v <= u64::MAX as f64 => Ok(v as u64),
            ref other => err(
                args.pos(i),
                RuntimeErrorKind::Type(format!("expected a positive integer, found `{other}`")),
            ),
        }
    }

    fn frame(&self, at: Pos) -> RResult<(NodeId, NodeId)> {
        if self.builder.program().seed_count() < 2 {
            return err(
                at,
                RuntimeErrorKind::Type(
                    "field operations need two given points to serve as 0 and 1".into(),
                ),
            );
        }
        Ok((NodeId(0), NodeId(1)))
    }

    /// The construction of `node` from the frame alone.
    fn witness(&self, args: &Args, i: usize, node: NodeId) -> RResult<Program> {
        match self.builder.program().sub_program(node) {
            Ok(Some(p)) => Ok(p),
            Ok(None) => {
                let name = args.args[i].to_string();
                err(
                    args.pos(i),
                    RuntimeErrorKind::Type(format!(
                        "`{name}` depends on given points other than the first two, \
                         so it has no construction from 0 and 1"
                    )),
                )
            }
            Err(e) => err(args.pos(i), RuntimeErrorKind::Construction(e)),
        }
    }

    fn near(&self, a: NodeId, b: NodeId) -> crate::Result<bool> {
        Ok((self.builder.point(a)? - self.builder.point(b)?).norm() <= self.builder.tol().eps_degenerate)
    }

    fn call(&mut self, call: &CallExpr, arg_pos: &[Pos], at: Pos, names: usize) -> RResult<Vec<Value>> {
        let args = Args {
            op: call.op,
            args: &call.args,
            pos: arg_pos,
            at,
        };
        let single = |names: usize| -> RResult<()> {
            if names == 1 {
                Ok(())
            } else {
                err(
                    at,
                    RuntimeErrorKind::Arity(format!("`{}` yields one value, {names} names given", call.op.name())),
                )
            }
        };
        let fail = |e: Error| RuntimeError {
            line: at.line,
            column: at.column,
            kind: RuntimeErrorKind::Construction(e),
        };
        let point = |id: NodeId| Ok(vec![Value::Point(id)]);

        match call.op {
            Op::Circle => {
                args.count(&[2])?;
                single(names)?;
                let circle = CircleRef::new(self.point(&args, 0)?, self.point(&args, 1)?);
                let node = circle.draw(&mut self.builder).map_err(fail)?;
                Ok(vec![Value::Circle { node, circle }])
            }
            Op::Intersect => {
                args.count(&[2, 3])?;
                let (c1, _) = self.circle(&args, 0)?;
                let (c2, _) = self.circle(&args, 1)?;
                if args.args.len() == 3 {
                    let which = self.selector(&args, 2)?;
                    single(names)?;
                    return point(self.builder.pick(c1, c2, which).map_err(fail)?);
                }
                match names {
                    1 => point(self.builder.pick(c1, c2, Selector::Left).map_err(fail)?),
                    _ => {
                        let (l, r) = self.builder.pick_both(c1, c2).map_err(fail)?;
                        Ok(vec![Value::Point(l), Value::Point(r)])
                    }
                }
            }
            Op::Apex => {
                args.count(&[2, 3])?;
                single(names)?;
                let side = if args.args.len() == 3 { self.selector(&args, 2)? } else { Selector::Left };
                let (a, b) = (self.point(&args, 0)?, self.point(&args, 1)?);
                point(constructions::apex(&mut self.builder, a, b, side).map_err(fail)?)
            }
            Op::Extend => {
                args.count(&[2])?;
                single(names)?;
                let (x, y) = (self.point(&args, 0)?, self.point(&args, 1)?);
                point(constructions::extend(&mut self.builder, x, y).map_err(fail)?)
            }
            Op::Nth => {
                args.count(&[3])?;
                single(names)?;
                let (o, p) = (self.point(&args, 0)?, self.point(&args, 1)?);
                let n = self.multiplier(&args, 2)?;
                point(constructions::nth_point(&mut self.builder, o, p, n).map_err(fail)?)
            }
            Op::Midpoint => {
                args.count(&[2])?;
                single(names)?;
                let (a, b) = (self.point(&args, 0)?, self.point(&args, 1)?);
                point(constructions::midpoint(&mut self.builder, a, b).map_err(fail)?)
            }
            Op::Diam => {
                args.count(&[2])?;
                single(names)?;
                let (a, b) = (self.point(&args, 0)?, self.point(&args, 1)?);
                let (node, circle) = constructions::diameter_circle(&mut self.builder, a, b).map_err(fail)?;
                Ok(vec![Value::Circle { node, circle }])
            }
            Op::Foot => {
                args.count(&[3])?;
                single(names)?;
                let (a, b, c) = (self.point(&args, 0)?, self.point(&args, 1)?, self.point(&args, 2)?);
                point(constructions::perp_foot(&mut self.builder, a, b, c).map_err(fail)?)
            }
            Op::Invert => {
                args.count(&[2, 3])?;
                single(names)?;
                let p = self.point(&args, 0)?;
                let omega = if args.args.len() == 2 {
                    self.circle(&args, 1)?.1
                } else {
                    CircleRef::new(self.point(&args, 1)?, self.point(&args, 2)?)
                };
                point(constructions::invert_general(&mut self.builder, omega, p).map_err(fail)?)
            }
            Op::LineXLine => {
                args.count(&[4])?;
                single(names)?;
                let pts = [
                    self.point(&args, 0)?,
                    self.point(&args, 1)?,
                    self.point(&args, 2)?,
                    self.point(&args, 3)?,
                ];
                point(constructions::line_line(&mut self.builder, pts[0], pts[1], pts[2], pts[3]).map_err(fail)?)
            }
            Op::LineXCircle => {
                args.count(&[3, 4])?;
                if names != 2 {
                    return err(
                        at,
                        RuntimeErrorKind::Arity(format!("`linexcircle` yields two points, {names} names given")),
                    );
                }
                let (a, b) = (self.point(&args, 0)?, self.point(&args, 1)?);
                let omega = if args.args.len() == 3 || self.is_circle(&args, 2) {
                    args.count(&[3])?;
                    self.circle(&args, 2)?.1
                } else {
                    CircleRef::new(self.point(&args, 2)?, self.point(&args, 3)?)
                };
                let (l, r) = self.line_circle(a, b, omega).map_err(fail)?;
                Ok(vec![Value::Point(l), Value::Point(r)])
            }
            Op::Mul => {
                args.count(&[2])?;
                single(names)?;
                let (zero, _) = self.frame(at)?;
                let (a, b) = (self.point(&args, 0)?, self.point(&args, 1)?);
                if self.near(a, zero).map_err(fail)? {
                    return point(zero);
                }
                let witness = self.witness(&args, 1, b)?;
                point(self.builder.inline(&witness, &[zero, a]).map_err(fail)?[0])
            }
            Op::Add => {
                args.count(&[2])?;
                single(names)?;
                let (zero, one) = self.frame(at)?;
                let (a, b) = (self.point(&args, 0)?, self.point(&args, 1)?);
                let wa = self.witness(&args, 0, a)?;
                let wb = self.witness(&args, 1, b)?;
                let two = constructions::extend(&mut self.builder, zero, one).map_err(fail)?;
                let a_plus_1 = self.builder.inline(&wa, &[one, two]).map_err(fail)?[0];
                point(self.builder.inline(&wb, &[a, a_plus_1]).map_err(fail)?[0])
            }
            Op::Neg => {
                args.count(&[1])?;
                single(names)?;
                let (zero, one) = self.frame(at)?;
                let a = self.point(&args, 0)?;
                if self.near(a, zero).map_err(fail)? {
                    return point(zero);
                }
                let wa = self.witness(&args, 0, a)?;
                let minus_one = constructions::extend(&mut self.builder, one, zero).map_err(fail)?;
                point(self.builder.inline(&wa, &[zero, minus_one]).map_err(fail)?[0])
            }
            Op::Conj => {
                args.count(&[1])?;
                single(names)?;
                let (zero, one) = self.frame(at)?;
                let a = self.point(&args, 0)?;
                if self.near(a, zero).map_err(fail)? || self.near(a, one).map_err(fail)? {
                    return point(a);
                }
                let about_zero = self.builder.circle(zero, a).map_err(fail)?;
                let about_one = self.builder.circle(one, a).map_err(fail)?;
                point(self.builder.pick_other(about_zero, about_one, a).map_err(fail)?)
            }
            Op::Half => {
                args.count(&[0])?;
                single(names)?;
                let (zero, one) = self.frame(at)?;
                let half = field::demo_half(self.builder.tol()).map_err(fail)?;
                point(self.builder.inline(half.program(), &[zero, one]).map_err(fail)?[0])
            }
        }
    }

    /// Dispatch between the two line-circle constructions. A tangent line
    /// yields its touching point twice.
    fn line_circle(&mut self, a: NodeId, b: NodeId, omega: CircleRef) -> crate::Result<(NodeId, NodeId)> {
        let (pa, pb) = (self.builder.point(a)?, self.builder.point(b)?);
        let center = self.builder.point(omega.center)?;
        let dir = pb - pa;
        let scale = omega.resolve(&self.builder)?.1.max(1.0);
        let off = (dir.cross(center - pa) / dir.norm()).abs();
        if dir.norm() > self.builder.tol().eps_degenerate && off <= self.builder.tol().eps_degenerate * scale {
            let far = if (pa - center).norm() >= (pb - center).norm() { a } else { b };
            return constructions::line_circle_center_on_line(&mut self.builder, omega.center, far, omega);
        }
        match constructions::line_circle_off_center(&mut self.builder, a, b, omega)? {
            LineCircle::Two(l, r) => Ok((l, r)),
            LineCircle::Tangent(p) => Ok((p, p)),
        }
    }

    fn bind(&mut self, name: &str, value: Value, at: Pos) -> RResult<()> {
        if self.env.contains_key(name) {
            return err(at, RuntimeErrorKind::Name(format!("`{name}` is already defined")));
        }
        self.env.insert(name.to_string(), value);
        self.bindings.push(Binding {
            name: name.to_string(),
            value,
            line: at.line,
        });
        Ok(())
    }

    fn statement(&mut self, located: &Located) -> RResult<()> {
        let at = located.pos;
        match &located.stmt {
            Statement::Given { name, .. } => {
                let slot = self.next_seed;
                self.next_seed += 1;
                self.bind(name, Value::Point(NodeId(slot)), at)
            }
            Statement::Let { names, call } => {
                let values = self.call(call, &located.arg_pos, at, names.len())?;
                if values.len() != names.len() {
                    return err(
                        at,
                        RuntimeErrorKind::Arity(format!(
                            "`{}` yields {} values, {} names given",
                            call.op.name(),
                            values.len(),
                            names.len()
                        )),
                    );
                }
                for (name, value) in names.iter().zip(values) {
                    self.bind(name, value, at)?;
                }
                Ok(())
            }
            Statement::Emit { target, path } => {
                self.emits.push(EmitRequest {
                    target: *target,
                    path: path.clone(),
                    line: at.line,
                });
                Ok(())
            }
        }
    }
}

/// Execute a parsed script. Every `given` point becomes a seed (in script
/// order); the first two also serve as `0` and `1` for the field
/// operations. No I/O happens here; `emit` statements are returned as
/// requests.
pub fn interpret(script: &Script, tol: &Tolerance) -> RResult<Session> {
    let mut seeds = Vec::new();
    let mut given = Vec::new();
    for located in &script.statements {
        if let Statement::Given { name, x, y } = &located.stmt {
            seeds.push(Point::new(*x, *y));
            given.push(name.clone());
        }
    }
    let builder = Builder::new(&seeds, *tol).map_err(|e| RuntimeError {
        line: 1,
        column: 1,
        kind: RuntimeErrorKind::Construction(e),
    })?;
    let mut interp = Interp {
        builder,
        env: HashMap::new(),
        bindings: Vec::new(),
        emits: Vec::new(),
        next_seed: 0,
    };
    for located in &script.statements {
        interp.statement(located)?;
    }
    let outputs = interp
        .bindings
        .iter()
        .filter_map(|b| match b.value {
            Value::Point(id) => Some(id),
            Value::Circle { .. } => None,
        })
        .collect();
    let (_, trace) = interp.builder.finish(outputs).map_err(|e| RuntimeError {
        line: 1,
        column: 1,
        kind: RuntimeErrorKind::Construction(e),
    })?;
    Ok(Session {
        bindings: interp.bindings,
        given,
        trace,
        emits: interp.emits,
    })
}
