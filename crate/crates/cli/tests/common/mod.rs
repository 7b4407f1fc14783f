#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

pub fn vitalfew(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vitalfew"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn vitalfew_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vitalfew"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("UTF-8 stdout")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("UTF-8 stderr")
}

fn attr<'a>(element: &'a str, name: &str) -> Option<&'a str> {
    let key = format!(" {name}=\"");
    let start = element.find(&key)? + key.len();
    let len = element[start..].find('"')?;
    Some(&element[start..start + len])
}

fn attr_f64(element: &str, name: &str) -> f64 {
    attr(element, name)
        .unwrap_or_else(|| panic!("missing attribute {name}"))
        .parse()
        .unwrap_or_else(|_| panic!("attribute {name} is not a number"))
}

/// Elements whose tag starts with `<tag`, up to the closing `>`.
fn elements<'a>(svg: &'a str, tag: &str) -> Vec<&'a str> {
    let open = format!("<{tag} ");
    svg.match_indices(&open)
        .map(|(i, _)| {
            let end = svg[i..].find('>').expect("element closes");
            &svg[i..=i + end]
        })
        .collect()
}

/// Data-space view of a plot emitted by the renderer.
pub struct SvgPlot {
    pub lines: Vec<(String, Vec<(f64, f64)>)>,
    pub markers: Vec<(f64, f64)>,
}

pub fn parse_plot(svg: &str) -> SvgPlot {
    let area = elements(svg, "g")
        .into_iter()
        .find(|g| g.contains("class=\"plot-area\""))
        .expect("plot area group");
    let (x0, x1) = (attr_f64(area, "data-x-min"), attr_f64(area, "data-x-max"));
    let (y0, y1) = (attr_f64(area, "data-y-min"), attr_f64(area, "data-y-max"));
    let log_x = attr(area, "data-log-x") == Some("true");
    let (left, top) = (attr_f64(area, "data-left"), attr_f64(area, "data-top"));
    let (w, h) = (attr_f64(area, "data-width"), attr_f64(area, "data-height"));
    let to_data = |px: f64, py: f64| {
        let u = (px - left) / w;
        let x = if log_x {
            10f64.powf(x0.log10() + u * (x1.log10() - x0.log10()))
        } else {
            x0 + u * (x1 - x0)
        };
        (x, y0 + (top + h - py) / h * (y1 - y0))
    };
    let lines = elements(svg, "polyline")
        .into_iter()
        .map(|el| {
            let label = attr(el, "data-label").expect("labelled series").to_string();
            let points = attr(el, "points")
                .expect("points")
                .split(' ')
                .map(|pair| {
                    let (a, b) = pair.split_once(',').expect("x,y pair");
                    to_data(a.parse().unwrap(), b.parse().unwrap())
                })
                .collect();
            (label, points)
        })
        .collect();
    let markers = elements(svg, "circle")
        .into_iter()
        .filter(|c| c.contains("class=\"marker\""))
        .map(|c| to_data(attr_f64(c, "cx"), attr_f64(c, "cy")))
        .collect();
    SvgPlot { lines, markers }
}

/// Linear interpolation of a polyline at abscissa `x`, taken on the first
/// segment that spans it.
pub fn interpolate(points: &[(f64, f64)], x: f64) -> Option<f64> {
    points.windows(2).find_map(|w| {
        let ((xa, ya), (xb, yb)) = (w[0], w[1]);
        let (lo, hi) = (xa.min(xb), xa.max(xb));
        (lo <= x && x <= hi && hi > lo).then(|| ya + (yb - ya) * (x - xa) / (xb - xa))
    })
}
