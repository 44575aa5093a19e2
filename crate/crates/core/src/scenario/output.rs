use std::fmt::Write as _;
use std::path::Path;

use crate::{Error, Result};

/// `{:.16e}`: 17 significant digits, enough to round-trip any `f64`.
pub fn format_value(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else {
        format!("{v:.16e}")
    }
}

/// Header row plus one row per index. Columns must have equal length.
pub fn emit_csv(columns: &[(&str, &[f64])], path: &Path) -> Result<()> {
    let rows = columns.first().map_or(0, |c| c.1.len());
    if let Some(bad) = columns.iter().find(|c| c.1.len() != rows) {
        return Err(Error::DimensionMismatch { expected: rows, got: bad.1.len() });
    }
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::io(path, e))?;
    w.write_record(columns.iter().map(|c| c.0)).map_err(|e| Error::io(path, e))?;
    for i in 0..rows {
        w.write_record(columns.iter().map(|c| format_value(c.1[i]))).map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Reads a file written by [`emit_csv`] back into named columns.
pub fn read_csv(path: &Path) -> Result<Vec<(String, Vec<f64>)>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| Error::io(path, e))?;
    let headers = r.headers().map_err(|e| Error::io(path, e))?.clone();
    let mut cols: Vec<(String, Vec<f64>)> = headers.iter().map(|h| (h.to_string(), Vec::new())).collect();
    for record in r.records() {
        let record = record.map_err(|e| Error::io(path, e))?;
        for (col, field) in cols.iter_mut().zip(record.iter()) {
            col.1.push(field.parse().map_err(|e| Error::io(path, e))?);
        }
    }
    Ok(cols)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Plot {
    Lines {
        title: String,
        x_label: String,
        y_label: String,
        series: Vec<Series>,
    },
    /// `values[j][i]` belongs to `(xs[i], ys[j])`; NaN cells are drawn grey.
    HeatMap {
        title: String,
        x_label: String,
        y_label: String,
        xs: Vec<f64>,
        ys: Vec<f64>,
        values: Vec<Vec<f64>>,
    },
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 130.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn tick_label(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-3..1e4).contains(&a) {
        let s = format!("{v:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" { "0".into() } else { s.to_string() }
    } else {
        format!("{v:.2e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo <= 1e-12 * (1.0 + lo.abs()) {
        let pad = 0.5 * (1.0 + lo.abs()) * 1e-3;
        return (lo - pad, hi + pad);
    }
    (lo, hi)
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - TOP - BOTTOM)
    }

    fn axes(&self, out: &mut String, title: &str, x_label: &str, y_label: &str) {
        let (x0, x1) = (LEFT, WIDTH - RIGHT);
        let (y0, y1) = (HEIGHT - BOTTOM, TOP);
        let _ = writeln!(
            out,
            r##"<rect x="{x0}" y="{y1}" width="{}" height="{}" fill="none" stroke="#000"/>"##,
            x1 - x0,
            y0 - y1
        );
        for i in 0..=4 {
            let f = i as f64 / 4.0;
            let xv = self.x.0 + f * (self.x.1 - self.x.0);
            let yv = self.y.0 + f * (self.y.1 - self.y.0);
            let (px, py) = (self.px(xv), self.py(yv));
            let _ = writeln!(out, r##"<line x1="{px:.2}" y1="{y0}" x2="{px:.2}" y2="{:.2}" stroke="#000"/>"##, y0 + 5.0);
            let _ = writeln!(
                out,
                r#"<text x="{px:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
                y0 + 18.0,
                tick_label(xv)
            );
            let _ = writeln!(out, r##"<line x1="{:.2}" y1="{py:.2}" x2="{x0}" y2="{py:.2}" stroke="#000"/>"##, x0 - 5.0);
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{}</text>"#,
                x0 - 8.0,
                py + 4.0,
                tick_label(yv)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="22" font-size="14" text-anchor="middle">{}</text>"#,
            0.5 * (x0 + x1),
            escape(title)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">{}</text>"#,
            0.5 * (x0 + x1),
            HEIGHT - 12.0,
            escape(x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="16" y="{:.2}" font-size="12" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
            0.5 * (y0 + y1),
            0.5 * (y0 + y1),
            escape(y_label)
        );
    }
}

/// Blue to yellow through green, `s ∈ [0, 1]`.
fn colour(s: f64) -> String {
    let stops = [(68.0, 1.0, 84.0), (33.0, 145.0, 140.0), (253.0, 231.0, 37.0)];
    let s = s.clamp(0.0, 1.0) * 2.0;
    let k = (s.floor() as usize).min(1);
    let w = s - k as f64;
    let (a, b) = (stops[k], stops[k + 1]);
    let mix = |p: f64, q: f64| (p + w * (q - p)).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

fn render(plot: &Plot) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"#
    );
    let _ = writeln!(out, r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#fff"/>"##);
    match plot {
        Plot::Lines { title, x_label, y_label, series } => {
            if series.iter().all(|s| s.points.is_empty()) {
                return Err(Error::AssumptionViolation("line plot needs at least one point".into()));
            }
            let pts = || series.iter().flat_map(|s| s.points.iter());
            let frame = Frame { x: padded_range(pts().map(|p| p.0)), y: padded_range(pts().map(|p| p.1)) };
            frame.axes(&mut out, title, x_label, y_label);
            for (k, s) in series.iter().enumerate() {
                let colour = PALETTE[k % PALETTE.len()];
                let coords: Vec<String> = s
                    .points
                    .iter()
                    .filter(|p| p.0.is_finite() && p.1.is_finite())
                    .map(|&(x, y)| format!("{:.2},{:.2}", frame.px(x), frame.py(y)))
                    .collect();
                let _ = writeln!(
                    out,
                    r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
                    coords.join(" ")
                );
                let ly = TOP + 14.0 + 18.0 * k as f64;
                let lx = WIDTH - RIGHT + 10.0;
                let _ = writeln!(
                    out,
                    r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{colour}" stroke-width="2"/>"#,
                    lx + 18.0
                );
                let _ = writeln!(
                    out,
                    r#"<text x="{}" y="{}" font-size="11">{}</text>"#,
                    lx + 24.0,
                    ly + 4.0,
                    escape(&s.name)
                );
            }
        }
        Plot::HeatMap { title, x_label, y_label, xs, ys, values } => {
            if xs.is_empty() || ys.is_empty() {
                return Err(Error::AssumptionViolation("heat map needs a nonempty grid".into()));
            }
            if values.len() != ys.len() || values.iter().any(|row| row.len() != xs.len()) {
                return Err(Error::DimensionMismatch { expected: xs.len() * ys.len(), got: values.iter().map(Vec::len).sum() });
            }
            let frame = Frame { x: padded_range(xs.iter().copied()), y: padded_range(ys.iter().copied()) };
            let (vmin, vmax) = padded_range(values.iter().flatten().copied());
            let half = |v: &[f64], i: usize| {
                let lo = if i == 0 { v[0] - 0.5 * (v.get(1).map_or(1.0, |b| b - v[0])) } else { 0.5 * (v[i - 1] + v[i]) };
                let hi = if i + 1 == v.len() {
                    v[i] + 0.5 * (if i > 0 { v[i] - v[i - 1] } else { 1.0 })
                } else {
                    0.5 * (v[i] + v[i + 1])
                };
                (lo, hi)
            };
            for (j, row) in values.iter().enumerate() {
                let (ylo, yhi) = half(ys, j);
                for (i, &v) in row.iter().enumerate() {
                    let (xlo, xhi) = half(xs, i);
                    let x0 = frame.px(xlo.max(frame.x.0));
                    let x1 = frame.px(xhi.min(frame.x.1));
                    let y0 = frame.py(yhi.min(frame.y.1));
                    let y1 = frame.py(ylo.max(frame.y.0));
                    let fill = if v.is_finite() { colour((v - vmin) / (vmax - vmin)) } else { "#cccccc".into() };
                    let _ = writeln!(
                        out,
                        r#"<rect x="{x0:.2}" y="{y0:.2}" width="{:.2}" height="{:.2}" fill="{fill}"/>"#,
                        (x1 - x0).max(0.0),
                        (y1 - y0).max(0.0)
                    );
                }
            }
            frame.axes(&mut out, title, x_label, y_label);
            let bx = WIDTH - RIGHT + 20.0;
            let steps = 20;
            let bar_h = (HEIGHT - TOP - BOTTOM) / steps as f64;
            for k in 0..steps {
                let s = (steps - 1 - k) as f64 / (steps - 1) as f64;
                let _ = writeln!(
                    out,
                    r#"<rect x="{bx}" y="{:.2}" width="16" height="{:.2}" fill="{}"/>"#,
                    TOP + k as f64 * bar_h,
                    bar_h + 0.5,
                    colour(s)
                );
            }
            let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="11">{}</text>"#, bx + 20.0, TOP + 10.0, tick_label(vmax));
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="11">{}</text>"#,
                bx + 20.0,
                HEIGHT - BOTTOM,
                tick_label(vmin)
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Standalone SVG; identical input gives identical bytes.
pub fn emit_svg(plot: &Plot, path: &Path) -> Result<()> {
    let text = render(plot)?;
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
