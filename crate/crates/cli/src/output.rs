//! CSV, JSON and SVG renderings of an [`Artifact`].

use std::fmt::Write;

use crate::args::Format;
use crate::run::Artifact;

pub const CSV_HEADER: &str = "index_or_time,series,method,value";

pub fn render(a: &Artifact, format: Format) -> String {
    match format {
        Format::Csv => csv(a),
        Format::Json => json(a),
        Format::Svg => svg(a),
    }
}

/// One row per sample; divergence reports contribute one row per step error.
pub fn csv(a: &Artifact) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for s in &a.series {
        for p in &s.points {
            let _ = writeln!(out, "{},{},{},{}", p.at, s.name, s.method, p.value);
        }
    }
    for r in &a.reports {
        for (i, e) in r.report.per_step_abs_error.iter().enumerate() {
            let _ = writeln!(out, "{i},{},abs-error,{e:.16e}", r.series);
        }
    }
    out
}

pub fn json(a: &Artifact) -> String {
    let mut s = serde_json::to_string_pretty(a).expect("artifact is plain data");
    s.push('\n');
    s
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];
const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 40.0;

struct Line {
    name: String,
    points: Vec<(f64, f64)>,
}

fn lines(a: &Artifact) -> (Vec<Line>, &'static str) {
    if a.series.is_empty() {
        let lines = a
            .reports
            .iter()
            .map(|r| Line {
                name: r.series.clone(),
                points: r
                    .report
                    .per_step_abs_error
                    .iter()
                    .enumerate()
                    .map(|(i, e)| (i as f64, e.max(1e-300).log10()))
                    .collect(),
            })
            .collect();
        return (lines, "log10 |error|");
    }
    let lines = a
        .series
        .iter()
        .map(|s| Line {
            name: s.name.clone(),
            points: s.points.iter().map(|p| (p.at.as_f64(), p.approx)).collect(),
        })
        .collect();
    (lines, "x")
}

/// Minimal line chart: frame, min/max tick labels, one polyline per series and a legend.
pub fn svg(a: &Artifact) -> String {
    let (lines, y_label) = lines(a);
    let all = lines.iter().flat_map(|l| l.points.iter());
    let (mut x_lo, mut x_hi, mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in all {
        x_lo = x_lo.min(*x);
        x_hi = x_hi.max(*x);
        y_lo = y_lo.min(*y);
        y_hi = y_hi.max(*y);
    }
    if !x_lo.is_finite() {
        (x_lo, x_hi, y_lo, y_hi) = (0.0, 1.0, 0.0, 1.0);
    }
    if x_hi == x_lo {
        x_hi = x_lo + 1.0;
    }
    if y_hi == y_lo {
        y_hi = y_lo + 1.0;
    }
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let (x0, x1, y0, y1) = (LEFT, LEFT + plot_w, TOP, TOP + plot_h);
    let _ = writeln!(
        out,
        r#"<path d="M{x0} {y0} L{x0} {y1} L{x1} {y1}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{x0}" y="{}" text-anchor="middle">{}</text>"#,
        y1 + 16.0,
        tick(x_lo)
    );
    let _ = writeln!(
        out,
        r#"<text x="{x1}" y="{}" text-anchor="middle">{}</text>"#,
        y1 + 16.0,
        tick(x_hi)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{y1}" text-anchor="end">{}</text>"#,
        x0 - 6.0,
        tick(y_lo)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
        x0 - 6.0,
        y0 + 10.0,
        tick(y_hi)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">index or time</text>"#,
        (x0 + x1) / 2.0,
        y1 + 32.0
    );
    let _ = writeln!(
        out,
        r#"<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">{y_label}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
    for (i, line) in lines.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let mut pts = String::new();
        for (x, y) in &line.points {
            if !pts.is_empty() {
                pts.push(' ');
            }
            let _ = write!(pts, "{:.2},{:.2}", sx(*x), sy(*y));
        }
        let _ = writeln!(
            out,
            r#"<polyline points="{pts}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#
        );
        let ly = TOP + 16.0 * i as f64 + 8.0;
        let lx = x1 + 16.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{colour}" stroke-width="2"/>"#,
            lx + 20.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}">{}</text>"#,
            lx + 26.0,
            ly + 4.0,
            escape(&line.name)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn tick(v: f64) -> String {
    format!("{v:.3}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
