//! Oracle fuzzing: random non-degenerate instances of every construction,
//! compared against closed-form answers.
//!
//! Instances are drawn from the box `[-1, 1]^2`. Each case has its own
//! generator (see [`rng`](crate::rng)), so cases can run in any order and
//! still aggregate to the same report.

use std::fmt::Write;

use compass_core::constructions::points::{self, CircleByCenterAndPoint, LineByPoints};
use compass_core::field::{self, ConstructibleValue, CANONICAL_SEEDS};
use compass_core::kernel::purity_audit;
use compass_core::{constructions, oracle, Builder, Error, Point, Selector, Tolerance, Trace};
use rayon::prelude::*;

use crate::rng::SplitMix64;

/// Fuzzable operations, in report order. The position in this list is the
/// operation number used to seed case generators.
pub const OPS: [&str; 12] = [
    "apex",
    "extend",
    "nth",
    "midpoint",
    "foot",
    "invert",
    "line-line",
    "line-circle",
    "line-circle-diameter",
    "mul",
    "add",
    "conj",
];

pub const DEFAULT_THRESHOLD: f64 = 1e-6;

/// One checked instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub inputs: Vec<(&'static str, Point)>,
    pub expected: Vec<Point>,
    pub outcome: Result<Vec<Point>, Error>,
    /// Number of compass steps in the construction.
    pub steps: usize,
}

impl Instance {
    /// Largest distance between a constructed point and the oracle. Two
    /// unordered answers are matched in whichever order fits better.
    pub fn error(&self) -> f64 {
        let Ok(got) = &self.outcome else {
            return f64::INFINITY;
        };
        if got.len() != self.expected.len() {
            return f64::INFINITY;
        }
        let direct = got
            .iter()
            .zip(&self.expected)
            .map(|(g, e)| (*g - *e).norm())
            .fold(0.0, f64::max);
        if got.len() == 2 {
            let swapped = (got[0] - self.expected[1]).norm().max((got[1] - self.expected[0]).norm());
            return direct.min(swapped);
        }
        direct
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        for (name, p) in &self.inputs {
            let _ = write!(s, "{name}=({:?}, {:?}) ", p.x, p.y);
        }
        let pts = |v: &[Point]| v.iter().map(|p| format!("({:?}, {:?})", p.x, p.y)).collect::<Vec<_>>().join(" ");
        let _ = write!(s, "expected {}", pts(&self.expected));
        match &self.outcome {
            Ok(got) => {
                let _ = write!(s, " got {}", pts(got));
            }
            Err(e) => {
                let _ = write!(s, " error: {e}");
            }
        }
        s
    }
}

fn point(rng: &mut SplitMix64) -> Point {
    Point::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0))
}

fn pair(rng: &mut SplitMix64, min_dist: f64) -> (Point, Point) {
    loop {
        let (a, b) = (point(rng), point(rng));
        if (a - b).norm() >= min_dist {
            return (a, b);
        }
    }
}

fn unit(angle: f64) -> Point {
    Point::new(angle.cos(), angle.sin())
}

fn checked(trace: &Trace) -> Result<(), Error> {
    let report = purity_audit(trace)?;
    if !report.compass_only() {
        return Err(Error::MalformedTrace("non-compass step".into()));
    }
    Ok(())
}

fn finish(inputs: Vec<(&'static str, Point)>, expected: Vec<Point>, built: Result<points::Construction, Error>) -> Instance {
    let steps = built.as_ref().map(|c| c.program.len()).unwrap_or(0);
    let outcome = built.and_then(|c| {
        checked(&c.trace)?;
        Ok(c.outputs)
    });
    Instance {
        inputs,
        expected,
        outcome,
        steps,
    }
}

/// A random constructible value: three random apex, midpoint or
/// reflection steps over points already built from `0` and `1`.
pub fn random_value(rng: &mut SplitMix64, tol: &Tolerance) -> Result<ConstructibleValue, Error> {
    let mut b = Builder::new(&CANONICAL_SEEDS, *tol)?;
    let mut pool = vec![b.seed(0)?, b.seed(1)?];
    for _ in 0..3 {
        let (i, j) = loop {
            let i = rng.int(0, pool.len() as u64 - 1) as usize;
            let j = rng.int(0, pool.len() as u64 - 1) as usize;
            if (b.point(pool[i])? - b.point(pool[j])?).norm() >= 0.1 {
                break (pool[i], pool[j]);
            }
        };
        let next = match rng.int(0, 3) {
            0 => constructions::apex(&mut b, i, j, Selector::Left)?,
            1 => constructions::apex(&mut b, i, j, Selector::Right)?,
            2 => constructions::midpoint(&mut b, i, j)?,
            _ => constructions::extend(&mut b, i, j)?,
        };
        pool.push(next);
    }
    let last = *pool.last().expect("pool is never empty");
    let witness = b
        .program()
        .sub_program(last)?
        .expect("every node descends from the two canonical seeds");
    ConstructibleValue::from_program(witness, tol)
}

fn field_instance(
    inputs: Vec<(&'static str, Point)>,
    expected: Point,
    result: Result<ConstructibleValue, Error>,
    tol: &Tolerance,
) -> Instance {
    let steps = result.as_ref().map(|v| v.step_count()).unwrap_or(0);
    let outcome = result.and_then(|v| {
        let trace = compass_core::kernel::execute(v.program(), &CANONICAL_SEEDS, tol)?;
        checked(&trace)?;
        Ok(vec![v.value()])
    });
    Instance {
        inputs,
        expected: vec![expected],
        outcome,
        steps,
    }
}

/// Build case `case` of operation `op` (an index into [`OPS`]).
pub fn instance(op: usize, seed: u64, case: u32, tol: &Tolerance) -> Instance {
    let mut rng = SplitMix64::for_case(seed, op as u32, case);
    let eps = tol.eps_degenerate;
    match OPS[op] {
        "apex" => {
            let (a, b) = pair(&mut rng, 0.1);
            let left = rng.coin();
            let side = if left { Selector::Left } else { Selector::Right };
            finish(vec![("a", a), ("b", b)], vec![oracle::apex(a, b, left)], points::apex(a, b, side, tol))
        }
        "extend" => {
            let (x, y) = pair(&mut rng, 0.1);
            finish(vec![("x", x), ("y", y)], vec![oracle::reflect(x, y)], points::extend(x, y, tol))
        }
        "nth" => {
            let (o, p) = pair(&mut rng, 0.1);
            let n = rng.int(1, 8);
            finish(
                vec![("o", o), ("p", p), ("n", Point::new(n as f64, 0.0))],
                vec![oracle::scale_from(o, p, n as f64)],
                points::nth_point(o, p, n, tol),
            )
        }
        "midpoint" => {
            let (a, b) = pair(&mut rng, 0.05);
            finish(vec![("a", a), ("b", b)], vec![oracle::midpoint(a, b)], points::midpoint(a, b, tol))
        }
        "foot" => {
            let (a, b) = pair(&mut rng, 0.2);
            let c = loop {
                let c = point(&mut rng);
                if ((b - a).cross(c - a) / (b - a).norm()).abs() >= 0.05 {
                    break c;
                }
            };
            finish(
                vec![("a", a), ("b", b), ("c", c)],
                vec![oracle::foot(a, b, c)],
                points::perp_foot(a, b, c, tol),
            )
        }
        "invert" => {
            let o = point(&mut rng);
            let r = rng.range(0.2, 1.0);
            let through = o + unit(rng.range(0.0, std::f64::consts::TAU)) * r;
            let d = match case % 3 {
                0 => rng.range(1.05, 3.0) * r,
                1 => r,
                _ => rng.range(0.05, 0.95) * r,
            };
            let p = o + unit(rng.range(0.0, std::f64::consts::TAU)) * d;
            let built = CircleByCenterAndPoint::new(o, through, tol).and_then(|omega| points::invert_general(omega, p, tol));
            finish(
                vec![("center", o), ("through", through), ("p", p)],
                vec![oracle::invert(o, (through - o).norm(), p)],
                built,
            )
        }
        "line-line" => loop {
            let (a, b) = pair(&mut rng, 0.2);
            let (c, d) = pair(&mut rng, 0.2);
            let sin = (b - a).cross(d - c) / ((b - a).norm() * (d - c).norm());
            if sin.abs() < 0.1f64.sin() {
                continue;
            }
            let Some(s) = oracle::line_line(a, b, c, d, eps) else { continue };
            let built = LineByPoints::new(a, b, tol)
                .and_then(|ab| LineByPoints::new(c, d, tol).and_then(|cd| points::line_line(ab, cd, tol)));
            break finish(vec![("a", a), ("b", b), ("c", c), ("d", d)], vec![s], built);
        },
        "line-circle" => {
            let o = point(&mut rng);
            let r = rng.range(0.3, 1.0);
            let through = o + unit(rng.range(0.0, std::f64::consts::TAU)) * r;
            let normal = unit(rng.range(0.0, std::f64::consts::TAU));
            let foot = o + normal * (rng.range(0.05, 0.95) * r);
            let along = normal.perp();
            let (t1, t2) = loop {
                let (t1, t2) = (rng.range(-1.5, 1.5), rng.range(-1.5, 1.5));
                if (t1 - t2).abs() >= 0.2 {
                    break (t1, t2);
                }
            };
            let (a, b) = (foot + along * t1, foot + along * t2);
            let built = CircleByCenterAndPoint::new(o, through, tol).and_then(|omega| {
                LineByPoints::new(a, b, tol).and_then(|line| points::line_circle_off_center(line, omega, tol))
            });
            finish(
                vec![("a", a), ("b", b), ("center", o), ("through", through)],
                oracle::line_circle(a, b, o, r, eps),
                built,
            )
        }
        "line-circle-diameter" => {
            let o = point(&mut rng);
            let r = rng.range(0.3, 1.0);
            let through = o + unit(rng.range(0.0, std::f64::consts::TAU)) * r;
            let a = o + unit(rng.range(0.0, std::f64::consts::TAU)) * rng.range(0.2, 2.0);
            let built = CircleByCenterAndPoint::new(o, through, tol)
                .and_then(|omega| points::line_circle_center_on_line(o, a, omega, tol));
            finish(
                vec![("center", o), ("a", a), ("through", through)],
                oracle::antipodes(o, a, (through - o).norm()).to_vec(),
                built,
            )
        }
        "mul" | "add" | "conj" => {
            let a = random_value(&mut rng, tol);
            let b = random_value(&mut rng, tol);
            let (a, b) = match (a, b) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    return Instance {
                        inputs: Vec::new(),
                        expected: Vec::new(),
                        outcome: Err(e),
                        steps: 0,
                    }
                }
            };
            let (av, bv) = (a.value(), b.value());
            match OPS[op] {
                "mul" => field_instance(vec![("a", av), ("b", bv)], oracle::complex_mul(av, bv), field::mul(&a, &b, tol), tol),
                "add" => field_instance(vec![("a", av), ("b", bv)], oracle::complex_add(av, bv), field::add(&a, &b, tol), tol),
                _ => field_instance(vec![("a", av)], oracle::complex_conj(av), field::conj(&a, tol), tol),
            }
        }
        other => unreachable!("unknown fuzz op {other}"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OpReport {
    pub op: &'static str,
    pub cases: u32,
    pub max_error: f64,
    /// `(case index, description)` of each failing case, in case order.
    pub failures: Vec<(u32, String)>,
}

/// Run `cases` instances of `op` in parallel; results are aggregated in
/// case order.
pub fn run_op(op: usize, cases: u32, seed: u64, tol: &Tolerance, threshold: f64) -> OpReport {
    let results: Vec<(f64, Option<String>)> = (0..cases)
        .into_par_iter()
        .map(|case| {
            let inst = instance(op, seed, case, tol);
            let err = inst.error();
            let failed = !(err <= threshold);
            (err, failed.then(|| inst.describe()))
        })
        .collect();
    let mut report = OpReport {
        op: OPS[op],
        cases,
        max_error: 0.0,
        failures: Vec::new(),
    };
    for (case, (err, failure)) in results.into_iter().enumerate() {
        report.max_error = report.max_error.max(err);
        if let Some(msg) = failure {
            report.failures.push((case as u32, msg));
        }
    }
    report
}

pub fn op_index(name: &str) -> Option<usize> {
    OPS.iter().position(|op| *op == name)
}

/// The fixed-layout text report: one line per operation, then failing
/// instances for reproduction.
pub fn render(reports: &[OpReport], seed: u64, threshold: f64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "seed {seed}, threshold {threshold:e}");
    let _ = writeln!(s, "{:<22}{:>8}{:>10}{:>12}", "op", "cases", "failures", "max_err");
    for r in reports {
        let _ = writeln!(s, "{:<22}{:>8}{:>10}{:>12.3e}", r.op, r.cases, r.failures.len(), r.max_error);
    }
    for r in reports {
        for (case, msg) in &r.failures {
            let _ = writeln!(s, "FAIL {} case {case}: {msg}", r.op);
        }
    }
    let total: usize = reports.iter().map(|r| r.failures.len()).sum();
    let _ = writeln!(s, "{}", if total == 0 { "ok".to_string() } else { format!("{total} failures") });
    s
}
