//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use compass_cli::fuzz::{self, Instance};
use compass_cli::rng::SplitMix64;
use compass_core::constructions::points::{self, CircleByCenterAndPoint, LineByPoints};
use compass_core::dsl::{self, ScriptError};
use compass_core::field;
use compass_core::kernel::{purity_audit, similarity_transport_check, Similarity};
use compass_core::numeric::circle_circle_intersect;
use compass_core::{oracle, Error, IntersectionOutcome, Point, ResolvedCircle, Tolerance};

type Outcome = Result<String, String>;

fn pt(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn near(got: Point, want: Point, eps: f64, what: &str) -> Result<(), String> {
    let off = (got - want).norm();
    check(off <= eps, || format!("{what}: got {got}, want {want}, off by {off:e} > {eps:e}"))
}

fn within_budget(elapsed: Duration, budget: Duration) -> Result<(), String> {
    check(elapsed <= budget, || format!("took {elapsed:?}, budget {budget:?}"))
}

fn audited(c: &points::Construction) -> Result<(), String> {
    let report = purity_audit(&c.trace).map_err(|e| e.to_string())?;
    check(report.compass_only(), || "trace has a non-compass step".into())
}

fn fuzz_op(name: &str, cases: u32) -> Result<fuzz::OpReport, String> {
    let op = fuzz::op_index(name).ok_or_else(|| format!("no fuzz op {name}"))?;
    let report = fuzz::run_op(op, cases, 42, &tol(), fuzz::DEFAULT_THRESHOLD);
    match report.failures.first() {
        None => Ok(report),
        Some((case, msg)) => Err(format!("{name}: {} failures, first case {case}: {msg}", report.failures.len())),
    }
}

fn golden_alpha() -> Outcome {
    let c1 = ResolvedCircle::through(pt(-1.0, 0.0), pt(1.0, 0.0)).map_err(|e| e.to_string())?;
    let c2 = ResolvedCircle::through(pt(1.0, 0.0), pt(0.0, 0.0)).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let out = circle_circle_intersect(&c1, &c2, &tol()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let IntersectionOutcome::TwoPoints { left, right } = out else {
        return Err(format!("expected two points, got {out:?}"));
    };
    let h = 15f64.sqrt() / 4.0;
    near(left, pt(0.75, h), 1e-12, "upper")?;
    near(right, pt(0.75, -h), 1e-12, "lower")?;
    within_budget(elapsed, Duration::from_millis(1))?;
    Ok(format!("(0.75, ±{:.17}) in {elapsed:?}", left.y))
}

fn hexagon() -> Outcome {
    let m1 = points::extend(pt(1.0, 0.0), pt(0.0, 0.0), &tol()).map_err(|e| e.to_string())?;
    let two = points::extend(pt(0.0, 0.0), pt(1.0, 0.0), &tol()).map_err(|e| e.to_string())?;
    near(m1.output(), pt(-1.0, 0.0), 1e-9, "extend(1, 0)")?;
    near(two.output(), pt(2.0, 0.0), 1e-9, "extend(0, 1)")?;
    for c in [&m1, &two] {
        check(c.circle_count() == 4, || format!("{} circles, pinned 4", c.circle_count()))?;
        audited(c)?;
    }
    Ok("-1 and 2 with 4 circles each".into())
}

fn midpoint() -> Outcome {
    let start = Instant::now();
    let c = points::midpoint(pt(1.0, 0.0), pt(2.0, 0.0), &tol()).map_err(|e| e.to_string())?;
    near(c.output(), pt(1.5, 0.0), 1e-9, "figure")?;
    audited(&c)?;
    let report = fuzz_op("midpoint", 1000)?;
    within_budget(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("figure ok; 1000 random pairs, max error {:.2e}", report.max_error))
}

fn field_operations() -> Outcome {
    let start = Instant::now();
    let t = tol();
    let mut rng = SplitMix64::new(42);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let a = fuzz::random_value(&mut rng, &t).map_err(|e| format!("value {i}: {e}"))?;
        let b = fuzz::random_value(&mut rng, &t).map_err(|e| format!("value {i}: {e}"))?;
        let (av, bv) = (a.value(), b.value());
        let sum = field::add(&a, &b, &t).map_err(|e| e.to_string())?;
        let prod = field::mul(&a, &b, &t).map_err(|e| e.to_string())?;
        let bar = field::conj(&a, &t).map_err(|e| e.to_string())?;
        let back = field::conj(&bar, &t).map_err(|e| e.to_string())?;
        near(sum.value(), oracle::complex_add(av, bv), 1e-6, "add")?;
        near(prod.value(), oracle::complex_mul(av, bv), 1e-6, "mul")?;
        near(bar.value(), oracle::complex_conj(av), 1e-6, "conj")?;
        near(back.value(), av, 1e-6, "conj conj")?;
        for (got, want) in [
            (sum.value(), oracle::complex_add(av, bv)),
            (prod.value(), oracle::complex_mul(av, bv)),
            (bar.value(), oracle::complex_conj(av)),
        ] {
            worst = worst.max((got - want).norm());
        }
    }
    let alpha = field::alpha(&t).map_err(|e| e.to_string())?;
    let norm = field::mul(&alpha, &field::conj(&alpha, &t).map_err(|e| e.to_string())?, &t).map_err(|e| e.to_string())?;
    near(norm.value(), pt(1.5, 0.0), 1e-6, "alpha conj(alpha)")?;
    let half = field::demo_half(&t).map_err(|e| e.to_string())?;
    near(half.value(), pt(0.5, 0.0), 1e-7, "demo_half")?;
    within_budget(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("200 values, max error {worst:.2e}; |alpha|^2 = 1.5, half = {}", half.value()))
}

fn inversion_inputs(inst: &Instance) -> Result<(CircleByCenterAndPoint, Point), String> {
    let get = |name: &str| {
        inst.inputs
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, p)| *p)
            .ok_or_else(|| format!("instance lacks {name}"))
    };
    let omega = CircleByCenterAndPoint::new(get("center")?, get("through")?, &tol()).map_err(|e| e.to_string())?;
    Ok((omega, get("p")?))
}

fn inversion() -> Outcome {
    let start = Instant::now();
    let report = fuzz_op("invert", 1000)?;
    let op = fuzz::op_index("invert").expect("invert is fuzzed");
    let mut strata = [0usize; 3];
    let mut worst = 0.0f64;
    for case in 0..1000 {
        let inst = fuzz::instance(op, 42, case, &tol());
        let (omega, p) = inversion_inputs(&inst)?;
        let d = (p - omega.center).norm() / omega.radius();
        let stratum = if (d - 1.0).abs() < 1e-12 { 1 } else if d > 1.0 { 0 } else { 2 };
        strata[stratum] += 1;
        if stratum == 2 {
            check(d >= 0.05, || format!("interior sample at {d} r"))?;
        }
        let image = inst.outcome.as_ref().map_err(|e| e.to_string())?[0];
        let back = points::invert_general(omega, image, &tol()).map_err(|e| format!("case {case}: {e}"))?;
        near(back.output(), p, 1e-5, "involution")?;
        worst = worst.max((back.output() - p).norm());
    }
    check(strata.iter().all(|&n| n >= 300), || format!("strata {strata:?}"))?;
    let r = 1.5 / 2f64.sqrt();
    let omega = CircleByCenterAndPoint::new(pt(0.0, 0.0), pt(r, r), &tol()).map_err(|e| e.to_string())?;
    let figure = points::invert_general(omega, pt(1.5, 1.5), &tol()).map_err(|e| e.to_string())?;
    near(figure.output(), pt(0.75, 0.75), 1e-9, "figure")?;
    audited(&figure)?;
    within_budget(start.elapsed(), Duration::from_secs(2))?;
    Ok(format!(
        "strata exterior/on/interior {strata:?}, max error {:.2e}, involution {worst:.2e}",
        report.max_error
    ))
}

fn line_line() -> Outcome {
    let start = Instant::now();
    let report = fuzz_op("line-line", 1000)?;
    let ab = LineByPoints::new(pt(-0.4, -0.4), pt(2.3, 2.3), &tol()).map_err(|e| e.to_string())?;
    let cd = LineByPoints::new(pt(0.2, 1.8), pt(2.7, -0.7), &tol()).map_err(|e| e.to_string())?;
    let c = points::line_line(ab, cd, &tol()).map_err(|e| e.to_string())?;
    near(c.output(), pt(1.0, 1.0), 1e-9, "figure")?;
    audited(&c)?;
    within_budget(start.elapsed(), Duration::from_secs(2))?;
    Ok(format!("S = {}; 1000 quadruples, max error {:.2e}", c.output(), report.max_error))
}

/// Expected number of intersection points of the unit circle and a line
/// at distance `h` from its center, against what the construction reports.
fn tangency_sweep() -> Result<usize, String> {
    let t = tol();
    let unit = CircleByCenterAndPoint::new(pt(0.0, 0.0), pt(1.0, 0.0), &t).map_err(|e| e.to_string())?;
    let offsets = [0.5, 0.9, 0.99, 0.999, 0.9999, 0.99999, 1.0, 1.00001, 1.0001, 1.001, 1.01, 1.1, 1.5];
    let mut checked = 0;
    for k in 0..8 {
        let angle = k as f64 * std::f64::consts::FRAC_PI_4;
        let normal = pt(angle.cos(), angle.sin());
        for h in offsets {
            // the line is given by two points on it; the normal is exact
            // only on the axes, so tangency is tested on those rotations
            if h == 1.0 && k % 2 == 1 {
                continue;
            }
            let foot = normal * h;
            let (a, b) = (foot + normal.perp() * -2.0, foot + normal.perp() * 2.0);
            let want = oracle::line_circle(a, b, pt(0.0, 0.0), 1.0, t.eps_degenerate).len();
            let got = match points::line_circle_off_center(LineByPoints::new(a, b, &t).map_err(|e| e.to_string())?, unit, &t) {
                Ok(c) => c.outputs.len(),
                Err(Error::NoSuchIntersection) => 0,
                Err(e) => return Err(format!("h = {h}, angle {angle}: {e}")),
            };
            check(got == want, || format!("h = {h}, angle {angle}: construction {got} points, oracle {want}"))?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn line_circle() -> Outcome {
    let start = Instant::now();
    let off = fuzz_op("line-circle", 1000)?;
    let on = fuzz_op("line-circle-diameter", 1000)?;
    let t = tol();
    let omega = CircleByCenterAndPoint::new(pt(0.0, 0.0), pt(0.8660254037844386, 0.5), &t).map_err(|e| e.to_string())?;
    let c = points::line_circle_center_on_line(pt(0.0, 0.0), pt(2.0, 0.0), omega, &t).map_err(|e| e.to_string())?;
    let (p, q) = (c.outputs[0], c.outputs[1]);
    let ok = ((p - pt(1.0, 0.0)).norm() < 1e-9 && (q - pt(-1.0, 0.0)).norm() < 1e-9)
        || ((p - pt(-1.0, 0.0)).norm() < 1e-9 && (q - pt(1.0, 0.0)).norm() < 1e-9);
    check(ok, || format!("figure gave {p} {q}"))?;
    audited(&c)?;
    let swept = tangency_sweep()?;
    within_budget(start.elapsed(), Duration::from_secs(3))?;
    Ok(format!(
        "off-center max error {:.2e}, center-on-line {:.2e}; figure (±1, 0); {swept} tangency classifications agree",
        off.max_error, on.max_error
    ))
}

fn purity() -> Outcome {
    // every fuzz instance fails unless its trace passes the audit
    let mut traces = 0;
    for name in fuzz::OPS {
        fuzz_op(name, 1000)?;
        traces += 1000;
    }
    Ok(format!("{traces} fuzz traces plus every figure trace audited, all compass-only"))
}

fn rebase_soundness() -> Outcome {
    let t = tol();
    let mut rng = SplitMix64::new(9);
    let mut worst_ratio = 0.0f64;
    for i in 0..500 {
        let value = fuzz::random_value(&mut rng, &t).map_err(|e| e.to_string())?;
        let sim = loop {
            let p = pt(rng.range(-5.0, 5.0), rng.range(-5.0, 5.0));
            let q = pt(rng.range(-5.0, 5.0), rng.range(-5.0, 5.0));
            if (q - p).norm() >= 0.1 {
                break Similarity { p, q };
            }
        };
        let result = similarity_transport_check(value.program(), sim, &t).map_err(|e| format!("pair {i}: {e}"))?;
        check(result.holds, || format!("pair {i}: error {:e} at scale {}", result.max_error, sim.scale()))?;
        worst_ratio = worst_ratio.max(result.max_error / sim.scale().max(1.0));
    }
    Ok(format!("500 pairs, worst error / scale {worst_ratio:.2e}"))
}

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn compass_files(dir: &Path) -> Result<Vec<PathBuf>, String> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "compass"))
        .collect();
    files.sort();
    Ok(files)
}

const MALFORMED: [(&str, usize, usize); 16] = [
    ("bad-exponent", 1, 12),
    ("bare-carriage-return", 1, 17),
    ("circle-for-point", 4, 21),
    ("coincident-points", 3, 1),
    ("duplicate-name", 3, 1),
    ("keyword-as-name", 3, 5),
    ("missing-comma", 3, 20),
    ("missing-paren", 1, 16),
    ("same-circle-twice", 4, 1),
    ("stray-character", 2, 19),
    ("trailing-tokens", 1, 18),
    ("undefined-name", 3, 21),
    ("unknown-operation", 2, 9),
    ("unknown-target", 2, 6),
    ("unterminated-string", 2, 10),
    ("wrong-arity", 3, 1),
];

fn dsl_corpus() -> Outcome {
    let scripts = compass_files(&manifest().join("scripts"))?;
    check(scripts.len() >= 10, || format!("only {} scripts", scripts.len()))?;
    for path in &scripts {
        let source = fs::read_to_string(path).map_err(|e| e.to_string())?;
        let session = dsl::run_source(&source, &tol()).map_err(|e| format!("{}: {e}", path.display()))?;
        check(session.trace.program.len() > session.given.len(), || format!("{}: no steps", path.display()))?;
        purity_audit(&session.trace).map_err(|e| e.to_string())?;
        let ast = dsl::parse_source(&source).map_err(|e| e.to_string())?;
        let again = dsl::parse_source(&ast.to_string()).map_err(|e| e.to_string())?;
        check(ast.same_ast(&again), || format!("{}: round trip changed the AST", path.display()))?;
    }
    let dir = manifest().join("tests").join("malformed");
    let files = compass_files(&dir)?;
    check(files.len() == MALFORMED.len(), || format!("{} malformed files, table has {}", files.len(), MALFORMED.len()))?;
    for (name, line, column) in MALFORMED {
        let source = fs::read_to_string(dir.join(format!("{name}.compass"))).map_err(|e| e.to_string())?;
        match dsl::run_source(&source, &tol()) {
            Ok(_) => return Err(format!("{name}: ran without error")),
            Err(e @ (ScriptError::Lex(_) | ScriptError::Parse(_) | ScriptError::Runtime(_))) => {
                check((e.line(), e.column()) == (line, column), || {
                    format!("{name}: reported {}:{}, expected {line}:{column} ({e})", e.line(), e.column())
                })?;
            }
        }
    }
    Ok(format!("{} scripts green and round-trip; {} malformed scripts at the right line:column", scripts.len(), MALFORMED.len()))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_compass"))
            .args(["fuzz", "--op", "all", "--cases", "1000", "--seed", "42"])
            .env_remove("COMPASS_TOL")
            .output()
            .map_err(|e| e.to_string())
    };
    let (first, second) = (run()?, run()?);
    check(first.status.success(), || {
        format!("exit {:?}: {}", first.status.code(), String::from_utf8_lossy(&first.stdout))
    })?;
    check(second.status.success(), || format!("second run exit {:?}", second.status.code()))?;
    check(first.stdout == second.stdout, || "reports differ between runs".into())?;
    let lines = String::from_utf8_lossy(&first.stdout).lines().count();
    check(lines == fuzz::OPS.len() + 3, || format!("report has {lines} lines"))?;
    Ok(format!("exit 0 twice, {} identical report bytes", first.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("golden alpha", golden_alpha),
        ("hexagon", hexagon),
        ("midpoint", midpoint),
        ("field operations", field_operations),
        ("inversion", inversion),
        ("line-line", line_line),
        ("line-circle", line_circle),
        ("purity", purity),
        ("rebase soundness", rebase_soundness),
        ("dsl corpus", dsl_corpus),
        ("end-to-end determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
