//! SVG 1.1 figures of a trace.
//!
//! Given points are black, everything constructed is red. Each circle step
//! becomes exactly one `<circle>` element; points are drawn as `<ellipse>`
//! so the two never mix. The y axis points up, and every element carries
//! its step index in a `<title>`.

use std::fmt::Write;

use compass_core::kernel::Resolved;
use compass_core::{NodeId, Point, Step, Trace};

const WIDTH: f64 = 800.0;

struct Bounds {
    min: Point,
    max: Point,
}

impl Bounds {
    fn add(&mut self, p: Point, pad: f64) {
        self.min.x = self.min.x.min(p.x - pad);
        self.min.y = self.min.y.min(p.y - pad);
        self.max.x = self.max.x.max(p.x + pad);
        self.max.y = self.max.y.max(p.y + pad);
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Render `trace`. `names` labels points (seeds and outputs alike).
pub fn render(trace: &Trace, names: &[(String, NodeId)]) -> String {
    let mut bounds = Bounds {
        min: Point::new(f64::INFINITY, f64::INFINITY),
        max: Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    };
    for value in &trace.resolved {
        match value {
            Resolved::Point(p) => bounds.add(*p, 0.0),
            Resolved::Circle(c) => bounds.add(c.center(), c.radius()),
        }
    }
    if !bounds.min.x.is_finite() {
        bounds = Bounds {
            min: Point::new(-1.0, -1.0),
            max: Point::new(1.0, 1.0),
        };
    }
    let extent = (bounds.max.x - bounds.min.x).max(bounds.max.y - bounds.min.y).max(1e-9);
    let margin = 0.1 * extent;
    let (x0, y0) = (bounds.min.x - margin, -bounds.max.y - margin);
    let (w, h) = (
        bounds.max.x - bounds.min.x + 2.0 * margin,
        bounds.max.y - bounds.min.y + 2.0 * margin,
    );
    let dot = 0.006 * extent;
    let stroke = 0.002 * extent;
    let font = 0.03 * extent;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        WIDTH,
        (WIDTH * h / w).round(),
        x0,
        y0,
        w,
        h
    );

    out.push_str("<g id=\"circles\">\n");
    for (i, (step, value)) in trace.program.steps().iter().zip(&trace.resolved).enumerate() {
        if let (Step::Circle { center, through }, Resolved::Circle(c)) = (step, value) {
            let _ = writeln!(
                out,
                "<circle class=\"red-circle\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#c00000\" stroke-width=\"{}\"><title>step {i}: circle about {} through {}</title></circle>",
                c.center().x,
                -c.center().y,
                c.radius(),
                stroke,
                center.0,
                through.0
            );
        }
    }
    out.push_str("</g>\n<g id=\"points\">\n");
    let mut seeds = String::new();
    for (i, (step, value)) in trace.program.steps().iter().zip(&trace.resolved).enumerate() {
        let Resolved::Point(p) = value else { continue };
        let (class, fill, what) = match step {
            Step::Seed { slot } => ("black-dot", "#000000", format!("given point {slot}")),
            Step::Pick { circle1, circle2, which } => (
                "red-dot",
                "#c00000",
                format!("{} intersection of {} and {}", which.as_str(), circle1.0, circle2.0),
            ),
            Step::Circle { .. } => continue,
        };
        let line = format!(
            "<ellipse class=\"{class}\" cx=\"{}\" cy=\"{}\" rx=\"{dot}\" ry=\"{dot}\" fill=\"{fill}\"><title>step {i}: {what}</title></ellipse>\n",
            p.x, -p.y
        );
        // given points go on top
        if class == "black-dot" {
            seeds.push_str(&line);
        } else {
            out.push_str(&line);
        }
    }
    out.push_str(&seeds);
    out.push_str("</g>\n<g id=\"labels\" font-family=\"sans-serif\">\n");
    for (name, id) in names {
        let Ok(p) = trace.point(*id) else { continue };
        let fill = if id.0 < trace.program.seed_count() { "#000000" } else { "#c00000" };
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"{font}\" fill=\"{fill}\">{}</text>",
            p.x + 1.5 * dot,
            -p.y - 1.5 * dot,
            escape(name)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
