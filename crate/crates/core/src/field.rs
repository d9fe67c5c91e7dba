//! Ring operations on compass-constructible points.
//!
//! Points are complex numbers relative to the two canonical seeds `0` and
//! `1`. A [`ConstructibleValue`] carries the program that constructs it,
//! because the operations act on constructions, not coordinates: the
//! product `a b` is the construction of `b` replayed on the seeds `0, a`,
//! and `a + b` replays `a` on `1, 2` to get `a + 1`, then `b` on `a, a + 1`.

use crate::constructions;
use crate::error::{Error, Result};
use crate::kernel::{execute, Builder, NodeId, Program, Selector};
use crate::numeric::{Point, Tolerance};

/// The seeds every value is constructed from: `0` and `1`.
pub const CANONICAL_SEEDS: [Point; 2] = [Point::new(0.0, 0.0), Point::new(1.0, 0.0)];

const ZERO: NodeId = NodeId(0);
const ONE: NodeId = NodeId(1);

/// A constructible point together with its witness program over the
/// canonical seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructibleValue {
    program: Program,
    value: Point,
}

impl ConstructibleValue {
    /// Wrap a two-seed program. Its first output is the value; it must
    /// execute on the canonical seeds.
    pub fn from_program(program: Program, tol: &Tolerance) -> Result<Self> {
        if program.seed_count() != 2 {
            return Err(Error::SeedCountMismatch {
                expected: 2,
                found: program.seed_count(),
            });
        }
        let primary = *program
            .outputs()
            .first()
            .ok_or_else(|| Error::InvalidProgram("value program has no output".into()))?;
        let program = program.with_outputs(vec![primary])?;
        let trace = execute(&program, &CANONICAL_SEEDS, tol)?;
        let value = trace.point(primary)?;
        Ok(ConstructibleValue { program, value })
    }

    fn from_builder(b: Builder, primary: NodeId) -> Result<Self> {
        let value = b.point(primary)?;
        let (program, _) = b.finish(vec![primary])?;
        Ok(ConstructibleValue { program, value })
    }

    pub fn zero() -> Self {
        ConstructibleValue {
            program: Program::seeds_only(2).with_outputs(vec![ZERO]).expect("seed is a point"),
            value: CANONICAL_SEEDS[0],
        }
    }

    pub fn one() -> Self {
        ConstructibleValue {
            program: Program::seeds_only(2).with_outputs(vec![ONE]).expect("seed is a point"),
            value: CANONICAL_SEEDS[1],
        }
    }

    /// Coordinates on the canonical seeds.
    pub fn value(&self) -> Point {
        self.value
    }

    /// The witness; its single output is the value.
    pub fn program(&self) -> &Program {
        &self.program
    }

    pub fn primary_output(&self) -> NodeId {
        self.program.outputs()[0]
    }

    pub fn step_count(&self) -> usize {
        self.program.len()
    }

    fn builder(&self, tol: &Tolerance) -> Result<Builder> {
        Builder::from_program(&self.program, &CANONICAL_SEEDS, *tol)
    }
}

/// `-1`, as the reflection of `1` through `0`.
pub fn minus_one(tol: &Tolerance) -> Result<ConstructibleValue> {
    let mut b = Builder::new(&CANONICAL_SEEDS, *tol)?;
    let out = constructions::extend(&mut b, ONE, ZERO)?;
    ConstructibleValue::from_builder(b, out)
}

/// `2`, as the reflection of `0` through `1`.
pub fn two(tol: &Tolerance) -> Result<ConstructibleValue> {
    let mut b = Builder::new(&CANONICAL_SEEDS, *tol)?;
    let out = constructions::extend(&mut b, ZERO, ONE)?;
    ConstructibleValue::from_builder(b, out)
}

/// `(3 + i sqrt 15) / 4`: where the circle about `-1` of radius 2 meets the
/// circle about `1` of radius 1, above the axis.
pub fn alpha(tol: &Tolerance) -> Result<ConstructibleValue> {
    let mut b = Builder::new(&CANONICAL_SEEDS, *tol)?;
    let m1 = constructions::extend(&mut b, ONE, ZERO)?;
    let big = b.circle(m1, ONE)?;
    let small = b.circle(ONE, ZERO)?;
    let out = b.pick(big, small, Selector::Left)?;
    ConstructibleValue::from_builder(b, out)
}

/// Equilateral apex on `0, 1`: `(1 + i sqrt 3) / 2` for `Left`.
pub fn omega(side: Selector, tol: &Tolerance) -> Result<ConstructibleValue> {
    let mut b = Builder::new(&CANONICAL_SEEDS, *tol)?;
    let out = constructions::apex(&mut b, ZERO, ONE, side)?;
    ConstructibleValue::from_builder(b, out)
}

/// `a b`: the construction of `b` replayed on the seeds `0, a`. A zero
/// basis collapses the replay, so `a = 0` returns `0` directly.
pub fn mul(a: &ConstructibleValue, b: &ConstructibleValue, tol: &Tolerance) -> Result<ConstructibleValue> {
    let mut host = a.builder(tol)?;
    let a_out = a.primary_output();
    if a.value.norm() <= tol.eps_degenerate {
        return ConstructibleValue::from_builder(host, ZERO);
    }
    let out = host.inline(&b.program, &[ZERO, a_out])?[0];
    ConstructibleValue::from_builder(host, out)
}

/// `a + b`: replay `a` on `1, 2` to get `a + 1`, then replay `b` on
/// `a, a + 1`.
pub fn add(a: &ConstructibleValue, b: &ConstructibleValue, tol: &Tolerance) -> Result<ConstructibleValue> {
    let mut host = a.builder(tol)?;
    let a_out = a.primary_output();
    let two = constructions::extend(&mut host, ZERO, ONE)?;
    let a_plus_1 = host.inline(&a.program, &[ONE, two])?[0];
    let out = host.inline(&b.program, &[a_out, a_plus_1])?[0];
    ConstructibleValue::from_builder(host, out)
}

/// `-a`, as `(-1) a`.
pub fn neg(a: &ConstructibleValue, tol: &Tolerance) -> Result<ConstructibleValue> {
    mul(&minus_one(tol)?, a, tol)
}

/// `a*`: the circles about `0` and `1` through `a` meet at `a` and `a*`.
/// Real values are their own conjugate (the circles touch).
pub fn conj(a: &ConstructibleValue, tol: &Tolerance) -> Result<ConstructibleValue> {
    let mut host = a.builder(tol)?;
    let a_out = a.primary_output();
    let eps = tol.eps_degenerate;
    if a.value.y.abs() <= eps && (a.value.norm() <= eps || (a.value - CANONICAL_SEEDS[1]).norm() <= eps) {
        return ConstructibleValue::from_builder(host, a_out);
    }
    let about_zero = host.circle(ZERO, a_out)?;
    let about_one = host.circle(ONE, a_out)?;
    let out = host.pick_other(about_zero, about_one, a_out)?;
    ConstructibleValue::from_builder(host, out)
}

/// `1/2 = alpha alpha* - 1`, since `|alpha|^2 = 3/2`.
pub fn demo_half(tol: &Tolerance) -> Result<ConstructibleValue> {
    let alpha = alpha(tol)?;
    let norm_sq = mul(&alpha, &conj(&alpha, tol)?, tol)?;
    add(&norm_sq, &neg(&ConstructibleValue::one(), tol)?, tol)
}
