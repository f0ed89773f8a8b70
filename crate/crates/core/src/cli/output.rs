//! CSV rows and a small SVG line plot.

use std::fmt::Write as _;
use std::io::Write;

use crate::ratio::RatioSample;

pub const RATIO_HEADER: [&str; 6] = ["r", "r_over_scale", "ratio", "chord", "converged", "K_analytic"];

/// 17 significant digits, locale independent.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_ratio_csv<W: Write>(
    out: W,
    rows: &[(Option<f64>, &[RatioSample])],
    scale: f64,
    k_analytic: f64,
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let sweep = rows.iter().any(|(phi, _)| phi.is_some());
    if sweep {
        let mut header = vec!["phi"];
        header.extend(RATIO_HEADER);
        w.write_record(header)?;
    } else {
        w.write_record(RATIO_HEADER)?;
    }
    for (phi, samples) in rows {
        for s in samples.iter() {
            let mut rec = Vec::with_capacity(7);
            if let Some(phi) = phi {
                rec.push(num(*phi));
            }
            rec.extend([
                num(s.r),
                num(s.r / scale),
                num(s.ratio),
                num(s.chord),
                s.converged.to_string(),
                num(k_analytic),
            ]);
            w.write_record(rec)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub struct Series<'a> {
    pub label: &'a str,
    pub color: &'a str,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

/// Line plot of the series with an optional horizontal reference line.
pub fn render_svg(series: &[Series], reference: Option<f64>, x_label: &str, y_label: &str) -> String {
    let finite = series
        .iter()
        .flat_map(|s| s.points.iter())
        .filter(|p| p.0.is_finite() && p.1.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in finite {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if let Some(r) = reference {
        y0 = y0.min(r);
        y1 = y1.max(r);
    }
    if !(x0 < x1) {
        (x0, x1) = (x0.min(0.0), x0.max(0.0) + 1.0);
    }
    if !(y0 < y1) {
        (y0, y1) = (y0.min(0.0) - 0.5, y1.max(0.0) + 0.5);
    }
    let pad = 0.05 * (y1 - y0);
    let (y0, y1) = (y0 - pad, y1 + pad);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (left, right, bottom, top) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
    let _ = writeln!(
        svg,
        r#"<path d="M{left} {top} L{left} {bottom} L{right} {bottom}" stroke="black" fill="none"/>"#
    );
    for (v, anchor_x) in [(x0, left), (x1, right)] {
        let _ = writeln!(svg, r#"<text x="{anchor_x}" y="{}" font-size="11" text-anchor="middle">{v:.3}</text>"#, bottom + 15.0);
    }
    for (v, anchor_y) in [(y0, bottom), (y1, top)] {
        let _ = writeln!(svg, r#"<text x="{}" y="{anchor_y}" font-size="11" text-anchor="end">{v:.4}</text>"#, left - 4.0);
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{x_label}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="14" y="{}" font-size="12" text-anchor="middle" transform="rotate(-90 14 {})">{y_label}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    if let Some(r) = reference {
        let y = sy(r);
        let _ = writeln!(
            svg,
            r#"<line x1="{left}" y1="{y:.2}" x2="{right}" y2="{y:.2}" stroke="gray" stroke-dasharray="4 3"/>"#
        );
    }
    for (i, s) in series.iter().enumerate() {
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" stroke="{}" fill="none" stroke-width="1.5"/>"#,
            pts.join(" "),
            s.color
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="12" fill="{}">{}</text>"#,
            right - 90.0,
            top + 16.0 * (i as f64 + 1.0),
            s.color,
            s.label
        );
    }
    svg.push_str("</svg>\n");
    svg
}
