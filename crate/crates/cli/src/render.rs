//! CSV, SVG and JSON renderings of sampled curves.

use std::fmt::Write as _;

use willmore::SamplePoint;

pub fn csv(points: &[SamplePoint<f64>]) -> String {
    let mut out = String::from("s,x,y,kappa\n");
    for p in points {
        writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", p.s, p.x, p.y, p.kappa).unwrap();
    }
    out
}

pub fn json(points: &[SamplePoint<f64>]) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(points)?;
    s.push('\n');
    Ok(s)
}

/// A polyline path in a viewBox 5% larger than the bounding box, y pointing up.
pub fn svg(points: &[SamplePoint<f64>]) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in points {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(-p.y);
        y1 = y1.max(-p.y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let (w, h) = ((x1 - x0).max(span * 1e-3), (y1 - y0).max(span * 1e-3));
    let (px, py) = (0.025 * w, 0.025 * h);
    let stroke = 0.005 * span;

    let mut path = String::new();
    for (i, p) in points.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        write!(path, "{cmd}{} {} ", p.x, -p.y).unwrap();
    }
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        x0 - px,
        y0 - py,
        w + 2.0 * px,
        h + 2.0 * py
    )
    .unwrap();
    writeln!(out, r#"  <path d="{}" fill="none" stroke="black" stroke-width="{stroke}"/>"#, path.trim_end()).unwrap();
    if let (Some(first), Some(last)) = (points.first(), points.last()) {
        for (p, color) in [(first, "blue"), (last, "red")] {
            writeln!(out, r#"  <circle cx="{}" cy="{}" r="{}" fill="{color}"/>"#, p.x, -p.y, 2.0 * stroke).unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}
