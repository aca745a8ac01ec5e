//! Log-log line charts as self-contained SVG 1.1.
//!
//! Rows are grouped by one column; within a group, rows sharing an x value
//! are drawn as one vertex at the mean y with a whisker from min to max.
//! Values that are not strictly positive cannot sit on a log axis and are
//! skipped.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::BenchError;

/// A CSV file as strings; `#` lines are comments.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn parse(text: &str) -> Result<Self, BenchError> {
        let mut r = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .has_headers(false)
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut records = r.records();
        let headers = match records.next() {
            Some(h) => h?.iter().map(str::to_owned).collect(),
            None => return Ok(Self::default()),
        };
        let rows = records
            .map(|rec| rec.map(|r| r.iter().map(str::to_owned).collect()))
            .collect::<Result<_, _>>()?;
        Ok(Self { headers, rows })
    }

    fn column(&self, name: &str) -> Result<usize, BenchError> {
        self.headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| BenchError::Usage(format!("no column named {name:?}")))
    }
}

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, Copy)]
struct Point {
    x: f64,
    mean: f64,
    min: f64,
    max: f64,
}

/// Renders `y` against `x`, one line per distinct value of `group`.
///
/// A table with no header at all gives an empty chart; otherwise every named
/// column must exist.
pub fn emit_svg(table: &Table, x: &str, y: &str, group: &str) -> Result<String, BenchError> {
    let series = if table.headers.is_empty() {
        BTreeMap::new()
    } else {
        collect(table, x, y, group)?
    };

    let xs = series.values().flatten().map(|p| p.x);
    let ys = series.values().flatten().flat_map(|p| [p.min, p.max]);
    let (x0, x1) = decades(xs);
    let (y0, y1) = decades(ys);
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |v: f64| LEFT + (v.log10() - x0) / (x1 - x0) * plot_w;
    let sy = |v: f64| TOP + plot_h - (v.log10() - y0) / (y1 - y0) * plot_h;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for d in x0 as i32..=x1 as i32 {
        let px = sx(10f64.powi(d));
        let _ = writeln!(
            s,
            r##"<line x1="{px:.2}" y1="{TOP}" x2="{px:.2}" y2="{:.2}" stroke="#ddd"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">1e{d}</text>"##,
            TOP + plot_h,
            TOP + plot_h + 18.0
        );
    }
    for d in y0 as i32..=y1 as i32 {
        let py = sy(10f64.powi(d));
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">1e{d}</text>"##,
            LEFT + plot_w,
            LEFT - 6.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0,
        escape(x)
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        escape(y)
    );

    for (i, (name, points)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let vertices: Vec<String> = points
            .iter()
            .map(|p| format!("{:.2},{:.2}", sx(p.x), sy(p.mean)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            vertices.join(" ")
        );
        for p in points {
            let (px, lo, hi) = (sx(p.x), sy(p.min), sy(p.max));
            let _ = writeln!(
                s,
                r#"<path d="M{px:.2},{lo:.2}V{hi:.2}M{:.2},{lo:.2}h8M{:.2},{hi:.2}h8" stroke="{color}"/><circle cx="{px:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#,
                px - 4.0,
                px - 4.0,
                sy(p.mean)
            );
        }
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = LEFT + plot_w + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn collect(
    table: &Table,
    x: &str,
    y: &str,
    group: &str,
) -> Result<BTreeMap<String, Vec<Point>>, BenchError> {
    let (xi, yi, gi) = (table.column(x)?, table.column(y)?, table.column(group)?);
    let mut raw: BTreeMap<String, BTreeMap<u64, (f64, Vec<f64>)>> = BTreeMap::new();
    for row in &table.rows {
        let num = |i: usize| row.get(i).and_then(|v| v.trim().parse::<f64>().ok());
        let (Some(xv), Some(yv)) = (num(xi), num(yi)) else {
            continue;
        };
        if !(xv > 0.0 && yv > 0.0 && xv.is_finite() && yv.is_finite()) {
            continue;
        }
        let g = row.get(gi).cloned().unwrap_or_default();
        raw.entry(g)
            .or_default()
            .entry(xv.to_bits())
            .or_insert((xv, Vec::new()))
            .1
            .push(yv);
    }
    Ok(raw
        .into_iter()
        .map(|(g, by_x)| {
            let mut pts: Vec<Point> = by_x
                .into_values()
                .map(|(x, ys)| Point {
                    x,
                    mean: ys.iter().sum::<f64>() / ys.len() as f64,
                    min: ys.iter().copied().fold(f64::INFINITY, f64::min),
                    max: ys.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                })
                .collect();
            pts.sort_by(|a, b| a.x.total_cmp(&b.x));
            (g, pts)
        })
        .collect())
}

/// Whole-decade bounds covering `values`; `[0, 1]` when there are none.
fn decades(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values {
        lo = lo.min(v.log10());
        hi = hi.max(v.log10());
    }
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let (lo, mut hi) = (lo.floor(), hi.ceil());
    if hi <= lo {
        hi = lo + 1.0;
    }
    (lo, hi)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
