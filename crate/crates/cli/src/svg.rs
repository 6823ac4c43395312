//! Minimal static line charts.

use std::fmt::Write as _;
use std::path::Path;

const W: f64 = 800.0;
const H: f64 = 400.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 4] = ["#1f77b4", "#000000", "#d62728", "#2ca02c"];

pub struct Series<'a> {
    pub label: &'a str,
    pub points: Vec<(f64, f64)>,
}

pub fn line_chart(path: &Path, title: &str, xlabel: &str, series: &[Series]) -> std::io::Result<()> {
    let finite = || series.iter().flat_map(|s| s.points.iter()).filter(|(x, y)| x.is_finite() && y.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in finite() {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * (H - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="20" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        W / 2.0,
        escape(title)
    );
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="gray"/>"#,
        W - 2.0 * MARGIN,
        H - 2.0 * MARGIN
    );
    let label = |out: &mut String, x: f64, y: f64, anchor: &str, text: String| {
        let _ = writeln!(
            out,
            r#"<text x="{x:.1}" y="{y:.1}" text-anchor="{anchor}" font-family="sans-serif" font-size="11">{text}</text>"#
        );
    };
    label(&mut out, MARGIN, H - MARGIN + 15.0, "start", format!("{x0:.4}"));
    label(&mut out, W - MARGIN, H - MARGIN + 15.0, "end", format!("{x1:.4}"));
    label(&mut out, W / 2.0, H - 10.0, "middle", escape(xlabel));
    label(&mut out, MARGIN - 4.0, H - MARGIN, "end", format!("{y0:.3}"));
    label(&mut out, MARGIN - 4.0, MARGIN + 4.0, "end", format!("{y1:.3}"));

    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        // NaN samples break the line into segments
        for run in s.points.split(|(x, y)| !(x.is_finite() && y.is_finite())) {
            if run.is_empty() {
                continue;
            }
            let pts: Vec<String> = run.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1" points="{}"/>"#,
                pts.join(" ")
            );
        }
        label(&mut out, W - MARGIN - 5.0, MARGIN + 15.0 * (i as f64 + 1.0), "end", escape(s.label));
        let _ = writeln!(
            out,
            r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="{color}" stroke-width="2"/>"#,
            W - MARGIN - 100.0,
            MARGIN + 15.0 * (i as f64 + 1.0) - 4.0,
            W - MARGIN - 80.0,
            MARGIN + 15.0 * (i as f64 + 1.0) - 4.0
        );
    }
    out.push_str("</svg>\n");
    std::fs::write(path, out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
