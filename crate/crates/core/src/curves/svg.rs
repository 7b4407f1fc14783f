//! Minimal self-contained SVG line charts.

use std::fmt::Write as _;
use std::path::Path;

use super::export::write_text;
use crate::error::{Error, Result};

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 190.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 70.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotLine {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub dashed: bool,
}

impl PlotLine {
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self {
            label: label.into(),
            points,
            dashed: false,
        }
    }

    pub fn dashed(mut self) -> Self {
        self.dashed = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    pub label: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub lines: Vec<PlotLine>,
    pub markers: Vec<Marker>,
    /// Fixed axis ranges; computed from the data when `None`.
    pub x_range: Option<(f64, f64)>,
    pub y_range: Option<(f64, f64)>,
    pub log_x: bool,
    /// Shaded vertical band, in data units.
    pub shaded_x: Option<(f64, f64)>,
    pub width: u32,
    pub height: u32,
}

impl Plot {
    pub fn new(title: impl Into<String>, x_label: impl Into<String>, y_label: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            lines: Vec::new(),
            markers: Vec::new(),
            x_range: None,
            y_range: None,
            log_x: false,
            shaded_x: None,
            width: 800,
            height: 600,
        }
    }

    pub fn line(mut self, line: PlotLine) -> Self {
        self.lines.push(line);
        self
    }

    pub fn marker(mut self, label: impl Into<String>, x: f64, y: f64) -> Self {
        self.markers.push(Marker {
            label: label.into(),
            x,
            y,
        });
        self
    }
}

#[derive(Debug, Clone, Copy)]
struct Axis {
    min: f64,
    max: f64,
    log: bool,
}

impl Axis {
    fn to_unit(self, v: f64) -> f64 {
        if self.log {
            (v.log10() - self.min) / (self.max - self.min)
        } else {
            (v - self.min) / (self.max - self.min)
        }
    }

    /// Tick positions in data units.
    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let (lo, hi) = (self.min.ceil() as i32, self.max.floor() as i32);
            return (lo..=hi).map(|k| 10f64.powi(k)).collect();
        }
        let step = nice_step((self.max - self.min) / 8.0);
        let first = (self.min / step).ceil() as i64;
        let last = (self.max / step).floor() as i64;
        (first..=last).map(|k| k as f64 * step).collect()
    }

    fn tick_label(&self, v: f64) -> String {
        if self.log {
            return format!("1e{}", v.log10().round() as i32);
        }
        let step = nice_step((self.max - self.min) / 8.0);
        let decimals = (-step.log10().floor()).max(0.0) as usize;
        let text = format!("{:.*}", decimals, v);
        if text.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
            "0".into()
        } else {
            text
        }
    }
}

fn nice_step(raw: f64) -> f64 {
    let magnitude = 10f64.powf(raw.log10().floor());
    let fraction = raw / magnitude;
    let nice = if fraction <= 1.0 {
        1.0
    } else if fraction <= 2.0 {
        2.0
    } else if fraction <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * magnitude
}

fn axis_from(values: impl Iterator<Item = f64>, fixed: Option<(f64, f64)>, log: bool) -> Result<Axis> {
    let (mut lo, mut hi) = match fixed {
        Some(range) => range,
        None => values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        }),
    };
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::domain("plot has no finite data range"));
    }
    if log {
        if lo <= 0.0 {
            return Err(Error::domain("logarithmic axis needs positive values"));
        }
        let (mut a, mut b) = (lo.log10(), hi.log10());
        if fixed.is_none() {
            a = a.floor();
            b = b.ceil();
        }
        if a == b {
            b = a + 1.0;
        }
        return Ok(Axis { min: a, max: b, log: true });
    }
    if lo == hi {
        lo -= 0.5;
        hi += 0.5;
    }
    if fixed.is_none() {
        let step = nice_step((hi - lo) / 8.0);
        lo = (lo / step).floor() * step;
        hi = (hi / step).ceil() * step;
    }
    Ok(Axis { min: lo, max: hi, log: false })
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders `plot` as a standalone SVG 1.1 document.
pub fn render_svg(plot: &Plot) -> Result<String> {
    if plot.lines.is_empty() || plot.lines.iter().any(|l| l.points.is_empty()) {
        return Err(Error::domain("every plotted series needs at least one point"));
    }
    let all_points = || plot.lines.iter().flat_map(|l| l.points.iter().copied());
    if all_points().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::domain("plotted values must be finite"));
    }
    let marker_points = || plot.markers.iter().map(|m| (m.x, m.y));
    let x_axis = axis_from(
        all_points().chain(marker_points()).map(|p| p.0),
        plot.x_range,
        plot.log_x,
    )?;
    let y_axis = axis_from(all_points().chain(marker_points()).map(|p| p.1), plot.y_range, false)?;

    let (w, h) = (plot.width as f64, plot.height as f64);
    let (pw, ph) = (w - MARGIN_LEFT - MARGIN_RIGHT, h - MARGIN_TOP - MARGIN_BOTTOM);
    if pw <= 0.0 || ph <= 0.0 {
        return Err(Error::domain("canvas too small for the plot margins"));
    }
    let px = |x: f64| MARGIN_LEFT + x_axis.to_unit(x) * pw;
    let py = |y: f64| MARGIN_TOP + ph - y_axis.to_unit(y) * ph;
    let bottom = MARGIN_TOP + ph;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif" font-size="12">"#,
        plot.width, plot.height, plot.width, plot.height
    );
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot-clip"><rect x="{MARGIN_LEFT:.2}" y="{MARGIN_TOP:.2}" width="{pw:.2}" height="{ph:.2}"/></clipPath></defs>"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{w:.0}" height="{h:.0}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text class="title" x="{:.2}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
        MARGIN_LEFT + pw / 2.0,
        escape(&plot.title)
    );

    // grid and ticks
    let _ = writeln!(s, r##"<g class="grid" stroke="#dddddd" stroke-width="1">"##);
    let x_ticks = x_axis.ticks();
    let y_ticks = y_axis.ticks();
    for &t in &x_ticks {
        let x = px(t);
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{MARGIN_TOP:.2}" x2="{x:.2}" y2="{bottom:.2}"/>"#);
    }
    for &t in &y_ticks {
        let y = py(t);
        let right = MARGIN_LEFT + pw;
        let _ = writeln!(s, r#"<line x1="{MARGIN_LEFT:.2}" y1="{y:.2}" x2="{right:.2}" y2="{y:.2}"/>"#);
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g class="axes" stroke="black" stroke-width="1">"#);
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN_LEFT:.2}" y="{MARGIN_TOP:.2}" width="{pw:.2}" height="{ph:.2}" fill="none"/>"#
    );
    for &t in &x_ticks {
        let x = px(t);
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{bottom:.2}" x2="{x:.2}" y2="{:.2}"/>"#, bottom + 5.0);
    }
    for &t in &y_ticks {
        let y = py(t);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{MARGIN_LEFT:.2}" y2="{y:.2}"/>"#,
            MARGIN_LEFT - 5.0
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g class="tick-labels" fill="black">"#);
    for &t in &x_ticks {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            px(t),
            bottom + 20.0,
            x_axis.tick_label(t)
        );
    }
    for &t in &y_ticks {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 8.0,
            py(t) + 4.0,
            y_axis.tick_label(t)
        );
    }
    let _ = writeln!(
        s,
        r#"<text class="x-label" x="{:.2}" y="{:.2}" text-anchor="middle" font-size="14">{}</text>"#,
        MARGIN_LEFT + pw / 2.0,
        bottom + 45.0,
        escape(&plot.x_label)
    );
    let cy = MARGIN_TOP + ph / 2.0;
    let _ = writeln!(
        s,
        r#"<text class="y-label" x="20" y="{cy:.2}" text-anchor="middle" font-size="14" transform="rotate(-90 20 {cy:.2})">{}</text>"#,
        escape(&plot.y_label)
    );
    let _ = writeln!(s, "</g>");

    let fmt_range = |axis: &Axis| {
        if axis.log {
            (10f64.powf(axis.min), 10f64.powf(axis.max))
        } else {
            (axis.min, axis.max)
        }
    };
    let (x0, x1) = fmt_range(&x_axis);
    let (y0, y1) = fmt_range(&y_axis);
    let _ = writeln!(
        s,
        r#"<g class="plot-area" clip-path="url(#plot-clip)" data-x-min="{x0}" data-x-max="{x1}" data-y-min="{y0}" data-y-max="{y1}" data-log-x="{}" data-left="{MARGIN_LEFT}" data-top="{MARGIN_TOP}" data-width="{pw}" data-height="{ph}">"#,
        plot.log_x
    );
    if let Some((a, b)) = plot.shaded_x {
        let (xa, xb) = (px(a.max(x0)), px(b.min(x1)));
        if xb > xa {
            let _ = writeln!(
                s,
                r##"<rect class="shade" x="{xa:.2}" y="{MARGIN_TOP:.2}" width="{:.2}" height="{ph:.2}" fill="#cccccc" fill-opacity="0.5"/>"##,
                xb - xa
            );
        }
    }
    for (i, line) in plot.lines.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut coords = String::new();
        for (k, &(x, y)) in line.points.iter().enumerate() {
            if k > 0 {
                coords.push(' ');
            }
            let _ = write!(coords, "{:.2},{:.2}", px(x), py(y));
        }
        let dash = if line.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            s,
            r#"<polyline class="series" data-label="{}" fill="none" stroke="{color}" stroke-width="2"{dash} points="{coords}"/>"#,
            escape(&line.label)
        );
    }
    for m in &plot.markers {
        let _ = writeln!(
            s,
            r#"<circle class="marker" data-x="{}" data-y="{}" cx="{:.2}" cy="{:.2}" r="5" fill="black"/>"#,
            m.x,
            m.y,
            px(m.x),
            py(m.y)
        );
    }
    let _ = writeln!(s, "</g>");
    for m in &plot.markers {
        let _ = writeln!(
            s,
            r#"<text class="marker-label" x="{:.2}" y="{:.2}">{}</text>"#,
            px(m.x) + 8.0,
            py(m.y) - 8.0,
            escape(&m.label)
        );
    }

    let _ = writeln!(s, r#"<g class="legend">"#);
    let lx = MARGIN_LEFT + pw + 15.0;
    for (i, line) in plot.lines.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = MARGIN_TOP + 10.0 + 20.0 * i as f64;
        let dash = if line.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="2"{dash}/>"#,
            lx + 25.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 32.0,
            y + 4.0,
            escape(&line.label)
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn write_svg(plot: &Plot, path: &Path) -> Result<()> {
    write_text(path, &render_svg(plot)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple() -> Plot {
        Plot::new("t <&> t", "x", "y")
            .line(PlotLine::new("a", vec![(0.0, 0.0), (1.0, 1.0)]))
            .line(PlotLine::new("b", vec![(0.0, 1.0), (1.0, 0.5)]).dashed())
            .marker("m", 0.2, 0.8)
    }

    #[test]
    fn structure() {
        let svg = render_svg(&simple()).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains(r#"width="800" height="600""#));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches(r#"<circle class="marker""#).count(), 1);
        assert!(svg.contains("t &lt;&amp;&gt; t"));
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn deterministic() {
        assert_eq!(render_svg(&simple()).unwrap(), render_svg(&simple()).unwrap());
    }

    #[test]
    fn log_axis_ticks() {
        let mut plot = Plot::new("", "", "").line(PlotLine::new("p", vec![(1e-4, 0.1), (1.0, 1.0)]));
        plot.log_x = true;
        let svg = render_svg(&plot).unwrap();
        for label in ["1e-4", "1e-2", "1e0"] {
            assert!(svg.contains(&format!(">{label}<")), "{label}");
        }
        plot.lines[0].points[0].0 = 0.0;
        assert!(render_svg(&plot).is_err());
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(render_svg(&Plot::new("", "", "")).is_err());
        let p = Plot::new("", "", "").line(PlotLine::new("p", vec![]));
        assert!(render_svg(&p).is_err());
        let p = Plot::new("", "", "").line(PlotLine::new("p", vec![(f64::NAN, 0.0)]));
        assert!(render_svg(&p).is_err());
    }

    #[test]
    fn nice_steps() {
        assert_eq!(nice_step(0.13), 0.2);
        assert_eq!(nice_step(0.3), 0.5);
        assert_eq!(nice_step(7.0), 10.0);
        assert_eq!(nice_step(1.0), 1.0);
    }
}
