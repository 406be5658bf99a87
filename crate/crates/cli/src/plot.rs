//! SVG barcode plots.

use std::fmt::Write;

use crate::format::{BarcodeFile, FileFlavor};

const WIDTH: f64 = 640.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 20.0;
const ROW: f64 = 14.0;
const GROUP_GAP: f64 = 16.0;
const AXIS_SPACE: f64 = 36.0;

struct Bar {
    degree: i64,
    lo: f64,
    hi: f64,
    lo_closed: bool,
    hi_closed: bool,
}

/// Maps bars to the horizontal axis. Extended barcodes use the filtration position, with
/// the second half (`ℝ^op`) reversed after a dotted divider.
struct Axis {
    lo: f64,
    hi: f64,
    divider: Option<f64>,
    ticks: Vec<(f64, String)>,
}

impl Axis {
    fn x(&self, v: f64) -> f64 {
        let span = (self.hi - self.lo).max(f64::MIN_POSITIVE);
        let t = if v == f64::NEG_INFINITY {
            0.0
        } else if v == f64::INFINITY {
            1.0
        } else {
            (v - self.lo) / span
        };
        LEFT + t.clamp(0.0, 1.0) * (WIDTH - LEFT - RIGHT)
    }
}

fn label(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 { "∞" } else { "−∞" }.into()
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn extended_layout(file: &BarcodeFile) -> (Vec<Bar>, Axis) {
    let cv = &file.critical_values;
    let n = cv.len();
    let mut bars = Vec::new();
    if let Ok(e) = file.to_extended() {
        for (&(p, iv), m) in e.bars.iter() {
            // a bar covers filtration positions qb..=qd
            let (qb, qd) = iv.positions(n);
            for _ in 0..m {
                let (lo, hi) = (qb as f64, qd as f64 + 1.0);
                bars.push(Bar { degree: p as i64, lo, hi, lo_closed: true, hi_closed: false });
            }
        }
    }
    // position q ≤ n is the sublevel set at a_q; n + m is the pair relative to the top m values
    let mut ticks: Vec<(f64, String)> = (1..=n).map(|q| (q as f64 + 0.5, label(cv[q - 1]))).collect();
    ticks.extend((1..=n).map(|m| ((n + m) as f64 + 0.5, format!("{}\u{305}", label(cv[n - m])))));
    let axis = Axis { lo: 0.0, hi: (2 * n + 1) as f64, divider: Some(n as f64 + 1.0), ticks };
    (bars, axis)
}

fn value_layout(file: &BarcodeFile) -> (Vec<Bar>, Axis) {
    let mut bars = Vec::new();
    for e in &file.entries {
        let (lo, hi) = if e.lo <= e.hi { (e.lo, e.hi) } else { (e.hi, e.lo) };
        for _ in 0..e.mult {
            bars.push(Bar { degree: e.degree, lo, hi, lo_closed: e.lo_closed, hi_closed: e.hi_closed });
        }
    }
    let finite: Vec<f64> = bars
        .iter()
        .flat_map(|b| [b.lo, b.hi])
        .chain(file.critical_values.iter().copied())
        .filter(|v| v.is_finite())
        .collect();
    let (mut lo, mut hi) = finite.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        (lo, hi) = (0.0, 1.0);
    }
    let pad = ((hi - lo) * 0.1).max(0.5);
    let (lo, hi) = (lo - pad, hi + pad);
    let ticks = (0..=4).map(|k| lo + (hi - lo) * k as f64 / 4.0).map(|v| (v, label(v))).collect();
    (bars, Axis { lo, hi, divider: None, ticks })
}

pub fn render(file: &BarcodeFile) -> String {
    let (mut bars, axis) =
        if file.flavor == FileFlavor::Extended { extended_layout(file) } else { value_layout(file) };
    bars.sort_by(|a, b| a.degree.cmp(&b.degree).then(a.lo.total_cmp(&b.lo)).then(a.hi.total_cmp(&b.hi)));

    let mut body = String::new();
    let mut y = TOP;
    let mut current = None;
    for bar in &bars {
        if current != Some(bar.degree) {
            if current.is_some() {
                y += GROUP_GAP;
            }
            current = Some(bar.degree);
            let _ = writeln!(body, r#"  <text class="degree" x="8" y="{:.1}">H{}</text>"#, y + ROW * 0.7, bar.degree);
        }
        let (x0, x1) = (axis.x(bar.lo), axis.x(bar.hi));
        let cy = y + ROW / 2.0;
        let _ = writeln!(body, r#"  <line class="bar" x1="{x0:.2}" y1="{cy:.1}" x2="{x1:.2}" y2="{cy:.1}"/>"#);
        for (x, closed) in [(x0, bar.lo_closed), (x1, bar.hi_closed)] {
            let fill = if closed { "black" } else { "white" };
            let _ = writeln!(body, r#"  <circle cx="{x:.2}" cy="{cy:.1}" r="2.5" fill="{fill}" stroke="black"/>"#);
        }
        y += ROW;
    }
    let axis_y = y + 8.0;
    let height = axis_y + AXIS_SPACE;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height:.0}" viewBox="0 0 {WIDTH} {height:.0}">"#);
    let _ = writeln!(svg, "  <style>.bar {{ stroke: black; stroke-width: 2; }} text {{ font: 10px sans-serif; }}</style>");
    let _ = writeln!(svg, r#"  <text x="{LEFT}" y="12">{} barcode</text>"#, file.flavor.name());
    let _ = writeln!(
        svg,
        r#"  <line class="axis" x1="{LEFT}" y1="{axis_y:.1}" x2="{:.1}" y2="{axis_y:.1}" stroke="gray"/>"#,
        WIDTH - RIGHT
    );
    for (v, text) in &axis.ticks {
        let x = axis.x(*v);
        let _ = writeln!(svg, r#"  <line x1="{x:.2}" y1="{axis_y:.1}" x2="{x:.2}" y2="{:.1}" stroke="gray"/>"#, axis_y + 4.0);
        let _ = writeln!(svg, r#"  <text x="{x:.2}" y="{:.1}" text-anchor="middle">{text}</text>"#, axis_y + 16.0);
    }
    if let Some(d) = axis.divider {
        let x = axis.x(d);
        let _ = writeln!(
            svg,
            r#"  <line class="divider" x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{axis_y:.1}" stroke="gray" stroke-dasharray="2,3"/>"#
        );
    }
    svg.push_str(&body);
    svg.push_str("</svg>\n");
    svg
}
