//! The `compass` command-line frontend: running scripts, built-in demos,
//! and the oracle fuzzer. The binary is a thin wrapper around the `cmd_*`
//! functions here, which take their output streams as arguments.

pub mod fuzz;
pub mod rng;
pub mod svg;
pub mod trace_doc;

use std::fs;
use std::io::Write;
use std::path::Path;

use compass_core::dsl::{self, EmitTarget, Session, Statement};
use compass_core::{Point, Tolerance};

use trace_doc::TraceDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_SCRIPT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Built-in demos, each a script in `scripts/`.
pub const DEMOS: [(&str, &str); 10] = [
    ("extend", include_str!("../scripts/extend.compass")),
    ("midpoint", include_str!("../scripts/midpoint.compass")),
    ("conjugate", include_str!("../scripts/conjugate.compass")),
    ("mul", include_str!("../scripts/mul.compass")),
    ("add", include_str!("../scripts/add.compass")),
    ("half", include_str!("../scripts/half.compass")),
    ("invert", include_str!("../scripts/invert.compass")),
    ("line-line", include_str!("../scripts/line-line.compass")),
    ("line-circle", include_str!("../scripts/line-circle.compass")),
    ("line-circle-diameter", include_str!("../scripts/line-circle-diameter.compass")),
];

pub fn demo_source(name: &str) -> Option<&'static str> {
    DEMOS.iter().find(|(n, _)| *n == name).map(|(_, src)| *src)
}

/// Tolerance for `run` and `demo`: the flag, else `COMPASS_TOL`, else the
/// default.
pub fn tolerance(flag: Option<f64>, env: Option<&str>) -> Result<Tolerance, String> {
    let eps = match (flag, env) {
        (Some(v), _) => Some(v),
        (None, Some(text)) => Some(
            text.trim()
                .parse::<f64>()
                .map_err(|_| format!("COMPASS_TOL is not a number: {text:?}"))?,
        ),
        (None, None) => None,
    };
    match eps {
        None => Ok(Tolerance::default()),
        Some(eps) => Tolerance::default()
            .with_abs(eps)
            .ok_or_else(|| format!("tolerance must be a positive number, got {eps}")),
    }
}

/// A coordinate rounded to the decimals the tolerance can vouch for, with
/// trailing zeros and negative zero removed.
pub fn format_coord(v: f64, tol: &Tolerance) -> String {
    let decimals = (-tol.eps_abs.log10()).ceil().clamp(0.0, 17.0) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub fn format_point(p: Point, tol: &Tolerance) -> String {
    format!("{} {}", format_coord(p.x, tol), format_coord(p.y, tol))
}

/// `NAME x y` for every point bound by `let`.
pub fn points_listing(session: &Session, tol: &Tolerance) -> String {
    let given = session.given.len();
    let mut s = String::new();
    for (name, id) in session.output_names() {
        if id.0 < given {
            continue;
        }
        if let Ok(p) = session.trace.point(id) {
            s.push_str(&format!("{name} {}\n", format_point(p, tol)));
        }
    }
    s
}

pub fn trace_json(session: &Session) -> String {
    TraceDocument::from_trace(&session.trace, &session.given, &session.output_names()).to_json()
}

pub fn svg_text(session: &Session) -> String {
    svg::render(&session.trace, &session.output_names())
}

#[derive(Debug, Clone, Default)]
pub struct Artifacts {
    pub svg: Option<String>,
    pub trace: Option<String>,
    pub points: bool,
}

fn write_file(path: &str, text: &str, err: &mut dyn Write) -> Result<(), i32> {
    fs::write(path, text).map_err(|e| {
        let _ = writeln!(err, "error: cannot write {path}: {e}");
        EXIT_IO
    })
}

/// Write the requested artifacts and perform the script's own `emit`s.
fn deliver(session: &Session, flags: &Artifacts, tol: &Tolerance, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), i32> {
    if flags.points {
        out.write_all(points_listing(session, tol).as_bytes()).map_err(|_| EXIT_IO)?;
    }
    for emit in &session.emits {
        let text = match emit.target {
            EmitTarget::Points => points_listing(session, tol),
            EmitTarget::Svg => svg_text(session),
            EmitTarget::Trace => trace_json(session),
        };
        if emit.path == "-" {
            // `--points` already printed the listing
            if emit.target == EmitTarget::Points && flags.points {
                continue;
            }
            out.write_all(text.as_bytes()).map_err(|e| {
                let _ = writeln!(err, "error: {e}");
                EXIT_IO
            })?;
        } else {
            write_file(&emit.path, &text, err)?;
        }
    }
    if let Some(path) = &flags.svg {
        write_file(path, &svg_text(session), err)?;
    }
    if let Some(path) = &flags.trace {
        write_file(path, &trace_json(session), err)?;
    }
    Ok(())
}

fn run_text(source: &str, label: &str, tol: &Tolerance, err: &mut dyn Write) -> Result<Session, i32> {
    dsl::run_source(source, tol).map_err(|e| {
        let _ = writeln!(err, "{label}: {e}");
        EXIT_SCRIPT
    })
}

/// `compass run SCRIPT`.
pub fn cmd_run(path: &Path, flags: &Artifacts, tol: &Tolerance, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let source = match fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
            return EXIT_IO;
        }
    };
    let session = match run_text(&source, &path.display().to_string(), tol, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    match deliver(&session, flags, tol, out, err) {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}

/// Points bound by the last `let` of a script.
pub fn last_let_points(source: &str, session: &Session) -> Vec<(String, Point)> {
    let Ok(script) = dsl::parse_source(source) else {
        return Vec::new();
    };
    let names = script
        .statements()
        .filter_map(|s| match s {
            Statement::Let { names, .. } => Some(names.clone()),
            _ => None,
        })
        .last()
        .unwrap_or_default();
    names
        .into_iter()
        .filter_map(|n| session.point(&n).map(|p| (n, p)))
        .collect()
}

/// `compass demo NAME`: prints the demo's result points as `x y` lines.
pub fn cmd_demo(name: &str, flags: &Artifacts, tol: &Tolerance, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(source) = demo_source(name) else {
        let known: Vec<_> = DEMOS.iter().map(|(n, _)| *n).collect();
        let _ = writeln!(err, "error: unknown demo {name:?}; known demos: {}", known.join(", "));
        return EXIT_SCRIPT;
    };
    let session = match run_text(source, name, tol, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let mut text = String::new();
    for (_, p) in last_let_points(source, &session) {
        text.push_str(&format_point(p, tol));
        text.push('\n');
    }
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_IO;
    }
    // the demo's own `emit` lines are ignored; only flags produce files
    let flags_only = Session {
        emits: Vec::new(),
        ..session
    };
    match deliver(&flags_only, flags, tol, out, err) {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}

/// `compass fuzz`.
pub fn cmd_fuzz(op: &str, cases: u32, seed: u64, threshold: f64, tol: &Tolerance, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let ops: Vec<usize> = if op == "all" {
        (0..fuzz::OPS.len()).collect()
    } else if let Some(i) = fuzz::op_index(op) {
        vec![i]
    } else {
        let _ = writeln!(err, "error: unknown op {op:?}; expected one of: all, {}", fuzz::OPS.join(", "));
        return EXIT_SCRIPT;
    };
    if cases == 0 {
        let _ = writeln!(err, "warning: --cases 0, nothing was checked");
    }
    let reports: Vec<_> = ops.iter().map(|&i| fuzz::run_op(i, cases, seed, tol, threshold)).collect();
    if out.write_all(fuzz::render(&reports, seed, threshold).as_bytes()).is_err() {
        return EXIT_IO;
    }
    if reports.iter().any(|r| !r.failures.is_empty()) {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    }
}
