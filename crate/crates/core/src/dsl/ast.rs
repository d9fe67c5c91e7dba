use std::fmt;

use crate::kernel::Selector;

/// Operations callable from a `let` statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Circle,
    Intersect,
    Apex,
    Extend,
    Nth,
    Midpoint,
    Diam,
    Foot,
    Invert,
    LineXLine,
    LineXCircle,
    Mul,
    Add,
    Neg,
    Conj,
    Half,
}

impl Op {
    pub const ALL: [Op; 16] = [
        Op::Circle,
        Op::Intersect,
        Op::Apex,
        Op::Extend,
        Op::Nth,
        Op::Midpoint,
        Op::Diam,
        Op::Foot,
        Op::Invert,
        Op::LineXLine,
        Op::LineXCircle,
        Op::Mul,
        Op::Add,
        Op::Neg,
        Op::Conj,
        Op::Half,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Op::Circle => "circle",
            Op::Intersect => "intersect",
            Op::Apex => "apex",
            Op::Extend => "extend",
            Op::Nth => "nth",
            Op::Midpoint => "midpoint",
            Op::Diam => "diam",
            Op::Foot => "foot",
            Op::Invert => "invert",
            Op::LineXLine => "linexline",
            Op::LineXCircle => "linexcircle",
            Op::Mul => "mul",
            Op::Add => "add",
            Op::Neg => "neg",
            Op::Conj => "conj",
            Op::Half => "half",
        }
    }

    pub fn from_name(name: &str) -> Option<Op> {
        Op::ALL.into_iter().find(|op| op.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    Name(String),
    Number(f64),
    Selector(Selector),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CallExpr {
    pub op: Op,
    pub args: Vec<Arg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitTarget {
    Svg,
    Trace,
    Points,
}

impl EmitTarget {
    pub fn name(self) -> &'static str {
        match self {
            EmitTarget::Svg => "svg",
            EmitTarget::Trace => "trace",
            EmitTarget::Points => "points",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Given { name: String, x: f64, y: f64 },
    Let { names: Vec<String>, call: CallExpr },
    Emit { target: EmitTarget, path: String },
}

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

/// A statement with where it came from. Positions live outside
/// [`Statement`] so that ASTs compare structurally.
#[derive(Debug, Clone, PartialEq)]
pub struct Located {
    pub stmt: Statement,
    pub pos: Pos,
    /// One entry per call argument, empty for non-`let` statements.
    pub arg_pos: Vec<Pos>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Script {
    pub statements: Vec<Located>,
}

impl Script {
    pub fn statements(&self) -> impl Iterator<Item = &Statement> {
        self.statements.iter().map(|l| &l.stmt)
    }

    /// Structural equality ignoring positions.
    pub fn same_ast(&self, other: &Script) -> bool {
        self.statements().eq(other.statements())
    }
}

/// Shortest text that reads back as the same `f64`.
pub(crate) fn write_number(f: &mut impl fmt::Write, v: f64) -> fmt::Result {
    let a = v.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        write!(f, "{v:e}")
    } else {
        write!(f, "{v}")
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Name(n) => f.write_str(n),
            Arg::Number(v) => write_number(f, *v),
            Arg::Selector(s) => f.write_str(s.as_str()),
        }
    }
}

impl fmt::Display for CallExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.op.name())?;
        for (i, arg) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{arg}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Given { name, x, y } => {
                write!(f, "given {name} = (")?;
                write_number(f, *x)?;
                f.write_str(", ")?;
                write_number(f, *y)?;
                f.write_str(")")
            }
            Statement::Let { names, call } => write!(f, "let {} = {call}", names.join(", ")),
            Statement::Emit { target, path } => {
                let escaped = path.replace('\\', "\\\\").replace('"', "\\\"");
                write!(f, "emit {} \"{escaped}\"", target.name())
            }
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for stmt in self.statements() {
            writeln!(f, "{stmt}")?;
        }
        Ok(())
    }
}
