use std::fmt::Write as _;

use super::Histogram;
use crate::error::{Error, Result};

/// `c1,…,cd,value` with bin centers; zero bins are kept so the grid is complete.
pub fn histogram_to_csv(h: &Histogram) -> String {
    let mut out = String::new();
    let header: Vec<String> = h.axes.iter().map(|a| format!("y{}", a + 1)).collect();
    writeln!(out, "{},value", header.join(",")).unwrap();
    for (k, v) in h.values.iter().enumerate() {
        let center = h.center(&h.unflatten(k));
        let cols: Vec<String> = center.iter().map(|c| format!("{c}")).collect();
        writeln!(out, "{},{v}", cols.join(",")).unwrap();
    }
    out
}

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;

// White at zero, red for positive mass, blue for negative.
fn diverging(t: f64) -> String {
    let fade = (255.0 * (1.0 - t.abs().min(1.0))).round() as u8;
    if t >= 0.0 {
        format!("rgb(255,{fade},{fade})")
    } else {
        format!("rgb({fade},{fade},255)")
    }
}

/// Renders a 2-D histogram. Each nonzero bin becomes a `<rect>` carrying its
/// data-space extent in `data-*` attributes.
pub fn histogram_to_svg(h: &Histogram) -> Result<String> {
    if h.axes.len() != 2 {
        return Err(Error::Unsupported(format!(
            "SVG output needs 2-D data, histogram has {} axes",
            h.axes.len()
        )));
    }
    let peak = h.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let cell = SIZE / h.bins as f64;
    let total = SIZE + 2.0 * MARGIN;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="white" stroke="black"/>"#)
        .unwrap();
    for (k, &v) in h.values.iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        let idx = h.unflatten(k);
        let (bx, by) = (idx[0], idx[1]);
        let px = MARGIN + bx as f64 * cell;
        // y grows upward in data space
        let py = MARGIN + SIZE - (by as f64 + 1.0) * cell;
        let (x0, y0) = (h.lo[0] + bx as f64 * h.bin_width(0), h.lo[1] + by as f64 * h.bin_width(1));
        let (x1, y1) = (x0 + h.bin_width(0), y0 + h.bin_width(1));
        writeln!(
            out,
            r#"<rect x="{px:.3}" y="{py:.3}" width="{cell:.3}" height="{cell:.3}" fill="{}" data-value="{v}" data-x0="{x0}" data-x1="{x1}" data-y0="{y0}" data-y1="{y1}"/>"#,
            diverging(if peak > 0.0 { v / peak } else { 0.0 })
        )
        .unwrap();
    }
    let (ax, ay) = (h.axes[0] + 1, h.axes[1] + 1);
    writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="14">y{ax} ∈ [{}, {}]</text>"#,
        MARGIN + SIZE / 2.0,
        total - 12.0,
        h.lo[0],
        h.hi[0]
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="14" y="{}" text-anchor="middle" font-size="14" transform="rotate(-90 14 {})">y{ay} ∈ [{}, {}]</text>"#,
        MARGIN + SIZE / 2.0,
        MARGIN + SIZE / 2.0,
        h.lo[1],
        h.hi[1]
    )
    .unwrap();
    out.push_str("</svg>\n");
    Ok(out)
}
