use std::path::Path;

use serde_json::{json, Map, Value};

use super::format::{fmt_sig, round_sig};
use super::{
    CurvePoint, CurveSeries, ModelDescriptor, ProfilePoint, ProfileSeries, Spacing, Sweep,
};
use crate::error::{Error, Result};
use crate::gaussian::GaussianParams;
use crate::scalar::Scalar;

pub const JSON_SCHEMA_VERSION: u64 = 1;

/// Anything that can be written as a CSV table.
pub trait CsvTable {
    fn header(&self) -> Vec<String>;
    fn records(&self, digits: usize) -> Vec<Vec<String>>;

    fn to_csv(&self, digits: usize) -> Result<String> {
        let records = self.records(digits);
        if records.is_empty() {
            return Err(Error::domain("cannot write an empty series"));
        }
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| Error::Parse(e.to_string());
        writer.write_record(self.header()).map_err(io)?;
        for record in records {
            writer.write_record(record).map_err(io)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
    }
}

impl<T: Scalar> CsvTable for CurveSeries<T> {
    fn header(&self) -> Vec<String> {
        vec![
            self.model.abscissa_name().to_string(),
            "i_cause".into(),
            "i_effect".into(),
        ]
    }

    fn records(&self, digits: usize) -> Vec<Vec<String>> {
        self.points
            .iter()
            .map(|p| {
                [p.x, p.i_cause, p.i_effect]
                    .iter()
                    .map(|v| fmt_sig(v.as_f64(), digits))
                    .collect()
            })
            .collect()
    }
}

impl<T: Scalar> CsvTable for ProfileSeries<T> {
    fn header(&self) -> Vec<String> {
        ["x", "f", "xf", "in_region"].map(String::from).to_vec()
    }

    fn records(&self, digits: usize) -> Vec<Vec<String>> {
        self.points
            .iter()
            .map(|p| {
                vec![
                    fmt_sig(p.x.as_f64(), digits),
                    fmt_sig(p.f.as_f64(), digits),
                    fmt_sig(p.xf.as_f64(), digits),
                    if p.in_region { "1" } else { "0" }.to_string(),
                ]
            })
            .collect()
    }
}

/// Several curves in one table, tagged by series label.
impl<T: Scalar> CsvTable for [CurveSeries<T>] {
    fn header(&self) -> Vec<String> {
        let same_model = self
            .windows(2)
            .all(|w| w[0].model.abscissa_name() == w[1].model.abscissa_name());
        let abscissa = match self.first() {
            Some(s) if same_model => s.model.abscissa_name(),
            _ => "x",
        };
        vec![
            "series".into(),
            abscissa.into(),
            "i_cause".into(),
            "i_effect".into(),
        ]
    }

    fn records(&self, digits: usize) -> Vec<Vec<String>> {
        self.iter()
            .flat_map(|s| {
                s.records(digits).into_iter().map(move |mut row| {
                    row.insert(0, s.label.clone());
                    row
                })
            })
            .collect()
    }
}

/// Header and string cells of a CSV document.
pub fn read_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .iter()
        .map(String::from)
        .collect();
    let rows = reader
        .records()
        .map(|r| {
            r.map(|rec| rec.iter().map(String::from).collect())
                .map_err(|e| Error::Parse(e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((header, rows))
}

pub fn write_csv<S: CsvTable + ?Sized>(series: &S, digits: usize, path: &Path) -> Result<()> {
    write_text(path, &series.to_csv(digits)?)
}

pub fn write_json(document: &Value, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(document).expect("JSON values serialize");
    text.push('\n');
    write_text(path, &text)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn number(x: f64, digits: usize) -> Value {
    serde_json::Number::from_f64(round_sig(x, digits))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn model_json<T: Scalar>(model: &ModelDescriptor<T>, digits: usize) -> Value {
    match model {
        ModelDescriptor::Gaussian { ratio } => {
            json!({ "kind": "gaussian", "ratio": number(ratio.as_f64(), digits) })
        }
        ModelDescriptor::Pareto { alpha } => {
            json!({ "kind": "pareto", "alpha": number(alpha.as_f64(), digits), "x_min": 1.0 })
        }
    }
}

fn sweep_json<T: Scalar>(sweep: &Sweep<T>, digits: usize) -> Value {
    json!({
        "start": number(sweep.start.as_f64(), digits),
        "end": number(sweep.end.as_f64(), digits),
        "steps": sweep.steps,
        "spacing": sweep.spacing.as_str(),
    })
}

fn curve_body<T: Scalar>(series: &CurveSeries<T>, digits: usize) -> Result<Map<String, Value>> {
    if series.points.is_empty() {
        return Err(Error::domain("cannot write an empty series"));
    }
    let points = series
        .points
        .iter()
        .map(|p| {
            Value::Array(vec![
                number(p.x.as_f64(), digits),
                number(p.i_cause.as_f64(), digits),
                number(p.i_effect.as_f64(), digits),
            ])
        })
        .collect();
    let mut body = Map::new();
    body.insert("label".into(), Value::String(series.label.clone()));
    body.insert("model".into(), model_json(&series.model, digits));
    body.insert("generation".into(), sweep_json(&series.sweep, digits));
    body.insert(
        "columns".into(),
        json!([series.model.abscissa_name(), "i_cause", "i_effect"]),
    );
    body.insert("points".into(), Value::Array(points));
    Ok(body)
}

/// `{schema_version: 1, label, model, generation, columns, points: [[x, i_cause, i_effect], …]}`.
pub fn curve_to_json<T: Scalar>(series: &CurveSeries<T>, digits: usize) -> Result<Value> {
    let mut body = curve_body(series, digits)?;
    body.insert("schema_version".into(), json!(JSON_SCHEMA_VERSION));
    Ok(Value::Object(body))
}

/// `{schema_version: 1, series: [<curve>, …]}`.
pub fn curves_to_json<T: Scalar>(series: &[CurveSeries<T>], digits: usize) -> Result<Value> {
    if series.is_empty() {
        return Err(Error::domain("no series to write"));
    }
    let items = series
        .iter()
        .map(|s| curve_body(s, digits).map(Value::Object))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "schema_version": JSON_SCHEMA_VERSION, "series": items }))
}

pub fn profile_to_json<T: Scalar>(series: &ProfileSeries<T>, digits: usize) -> Result<Value> {
    if series.points.is_empty() {
        return Err(Error::domain("cannot write an empty series"));
    }
    let points: Vec<Value> = series
        .points
        .iter()
        .map(|p| {
            json!([
                number(p.x.as_f64(), digits),
                number(p.f.as_f64(), digits),
                number(p.xf.as_f64(), digits),
                p.in_region
            ])
        })
        .collect();
    Ok(json!({
        "schema_version": JSON_SCHEMA_VERSION,
        "label": series.label,
        "model": {
            "kind": "gaussian_profile",
            "mu": number(series.params.mu().as_f64(), digits),
            "sigma": number(series.params.sigma().as_f64(), digits),
            "shade_t": series.shade_t.map_or(Value::Null, |t| number(t.as_f64(), digits)),
        },
        "generation": sweep_json(&series.sweep, digits),
        "columns": ["x", "f", "xf", "in_region"],
        "points": points,
    }))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

fn as_f64(v: &Value, what: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::Parse(format!("`{what}` is not a number")))
}

fn parse_document(text: &str) -> Result<Value> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let version = field(&doc, "schema_version")?.as_u64();
    if version != Some(JSON_SCHEMA_VERSION) {
        return Err(Error::Parse(format!(
            "unsupported schema_version {:?}",
            field(&doc, "schema_version")?
        )));
    }
    Ok(doc)
}

fn parse_sweep(v: &Value) -> Result<Sweep<f64>> {
    let spacing = match field(v, "spacing")?.as_str() {
        Some("uniform") => Spacing::Uniform,
        Some("log") => Spacing::Logarithmic,
        other => return Err(Error::Parse(format!("unknown spacing {other:?}"))),
    };
    let steps = field(v, "steps")?
        .as_u64()
        .ok_or_else(|| Error::Parse("`steps` is not an integer".into()))?;
    Sweep::new(
        as_f64(field(v, "start")?, "start")?,
        as_f64(field(v, "end")?, "end")?,
        steps as usize,
        spacing,
    )
}

fn parse_row(row: &Value, width: usize) -> Result<&Vec<Value>> {
    match row.as_array() {
        Some(cells) if cells.len() == width => Ok(cells),
        _ => Err(Error::Parse(format!("expected a {width}-element point"))),
    }
}

fn curve_from_value(doc: &Value) -> Result<CurveSeries<f64>> {
    let model = field(doc, "model")?;
    let model = match field(model, "kind")?.as_str() {
        Some("gaussian") => ModelDescriptor::Gaussian {
            ratio: as_f64(field(model, "ratio")?, "ratio")?,
        },
        Some("pareto") => ModelDescriptor::Pareto {
            alpha: as_f64(field(model, "alpha")?, "alpha")?,
        },
        other => return Err(Error::Parse(format!("unknown model kind {other:?}"))),
    };
    let points = field(doc, "points")?
        .as_array()
        .ok_or_else(|| Error::Parse("`points` is not an array".into()))?
        .iter()
        .map(|row| {
            let cells = parse_row(row, 3)?;
            Ok(CurvePoint {
                x: as_f64(&cells[0], "x")?,
                i_cause: as_f64(&cells[1], "i_cause")?,
                i_effect: as_f64(&cells[2], "i_effect")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveSeries {
        label: field(doc, "label")?.as_str().unwrap_or_default().to_string(),
        model,
        sweep: parse_sweep(field(doc, "generation")?)?,
        points,
    })
}

/// Parses a single-curve document or every curve of a multi-series one.
pub fn curve_from_json(text: &str) -> Result<Vec<CurveSeries<f64>>> {
    let doc = parse_document(text)?;
    match doc.get("series") {
        Some(Value::Array(items)) => items.iter().map(curve_from_value).collect(),
        Some(_) => Err(Error::Parse("`series` is not an array".into())),
        None => Ok(vec![curve_from_value(&doc)?]),
    }
}

pub fn profile_from_json(text: &str) -> Result<ProfileSeries<f64>> {
    let doc = parse_document(text)?;
    let model = field(&doc, "model")?;
    if field(model, "kind")?.as_str() != Some("gaussian_profile") {
        return Err(Error::Parse("not a profile document".into()));
    }
    let params = GaussianParams::new(
        as_f64(field(model, "mu")?, "mu")?,
        as_f64(field(model, "sigma")?, "sigma")?,
    )?;
    let shade_t = match field(model, "shade_t")? {
        Value::Null => None,
        v => Some(as_f64(v, "shade_t")?),
    };
    let points = field(&doc, "points")?
        .as_array()
        .ok_or_else(|| Error::Parse("`points` is not an array".into()))?
        .iter()
        .map(|row| {
            let cells = parse_row(row, 4)?;
            Ok(ProfilePoint {
                x: as_f64(&cells[0], "x")?,
                f: as_f64(&cells[1], "f")?,
                xf: as_f64(&cells[2], "xf")?,
                in_region: cells[3]
                    .as_bool()
                    .ok_or_else(|| Error::Parse("`in_region` is not a boolean".into()))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProfileSeries {
        label: field(&doc, "label")?.as_str().unwrap_or_default().to_string(),
        params,
        shade_t,
        sweep: parse_sweep(field(&doc, "generation")?)?,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{gaussian_curve, pareto_curve, profile};
    use crate::gaussian::ShapeRatio;

    fn two_point_curve() -> CurveSeries<f64> {
        gaussian_curve(ShapeRatio::new(2.0).unwrap(), 0.0, 1.0, 2).unwrap()
    }

    #[test]
    fn csv_layout() {
        let text = two_point_curve().to_csv(10).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "t,i_cause,i_effect");
        assert_eq!(lines[1], "0,0.5000000000,1.297884561");
        assert!(text.ends_with('\n') && !text.contains('\r'));
    }

    #[test]
    fn csv_parses_back_within_precision() {
        let series = gaussian_curve(ShapeRatio::new(0.7).unwrap(), -1.0, 3.0, 41).unwrap();
        let (header, rows) = read_csv(&series.to_csv(10).unwrap()).unwrap();
        assert_eq!(header, ["t", "i_cause", "i_effect"]);
        for (row, p) in rows.iter().zip(&series.points) {
            for (cell, want) in row.iter().zip([p.x, p.i_cause, p.i_effect]) {
                let got: f64 = cell.parse().unwrap();
                assert!((got - want).abs() <= 5e-10 * want.abs().max(1e-300));
            }
        }
    }

    #[test]
    fn multi_series_csv() {
        let a = gaussian_curve(ShapeRatio::new(1.0).unwrap(), 0.0, 1.0, 3).unwrap();
        let b = gaussian_curve(ShapeRatio::new(2.0).unwrap(), 0.0, 1.0, 3).unwrap();
        let text = [a, b].to_csv(10).unwrap();
        assert!(text.starts_with("series,t,i_cause,i_effect\nsigma/mu = 1,0,"));
        assert_eq!(text.lines().count(), 7);
    }

    #[test]
    fn json_round_trip() {
        let series = two_point_curve();
        let doc = curve_to_json(&series, 10).unwrap();
        assert_eq!(doc["schema_version"], 1);
        assert_eq!(doc["model"]["kind"], "gaussian");
        let text = serde_json::to_string(&doc).unwrap();
        let back = curve_from_json(&text).unwrap().remove(0);
        assert_eq!(back.label, series.label);
        assert_eq!(back.model, series.model);
        assert_eq!(back.sweep, series.sweep);
        for (a, b) in back.points.iter().zip(&series.points) {
            assert!((a.i_effect - b.i_effect).abs() < 1e-9);
        }
        // a second pass is exact
        let again = serde_json::to_string(&curve_to_json(&back, 10).unwrap()).unwrap();
        assert_eq!(again, text);
    }

    #[test]
    fn pareto_and_multi_json() {
        let p = pareto_curve(2.0, 10.0, 4).unwrap();
        let g = two_point_curve();
        let doc = curves_to_json(&[g.clone(), p.clone()], 10).unwrap();
        let back = curve_from_json(&doc.to_string()).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[1].model, ModelDescriptor::Pareto { alpha: 2.0 });
        assert_eq!(back[1].sweep.spacing, Spacing::Logarithmic);
    }

    #[test]
    fn profile_round_trip() {
        let params = GaussianParams::new(1.0, 2.0).unwrap();
        let prof = profile(params, -3.0, 5.0, 9, Some(0.5)).unwrap();
        let text = profile_to_json(&prof, 10).unwrap().to_string();
        let back = profile_from_json(&text).unwrap();
        assert_eq!(back.params, prof.params);
        assert_eq!(back.shade_t, Some(0.5));
        let flags: Vec<_> = back.points.iter().map(|p| p.in_region).collect();
        let want: Vec<_> = prof.points.iter().map(|p| p.in_region).collect();
        assert_eq!(flags, want);
        let csv = prof.to_csv(10).unwrap();
        assert!(csv.starts_with("x,f,xf,in_region\n"));
    }

    #[test]
    fn malformed_documents() {
        assert!(curve_from_json("{}").is_err());
        assert!(curve_from_json(r#"{"schema_version": 2}"#).is_err());
        assert!(curve_from_json("not json").is_err());
        assert!(profile_from_json(r#"{"schema_version": 1, "model": {"kind": "gaussian"}}"#).is_err());
    }

    #[test]
    fn empty_series_is_rejected() {
        let mut s = two_point_curve();
        s.points.clear();
        assert!(matches!(s.to_csv(10), Err(Error::Domain(_))));
        assert!(matches!(curve_to_json(&s, 10), Err(Error::Domain(_))));
    }

    #[test]
    fn io_errors_carry_the_path() {
        let path = Path::new("/nonexistent-dir/out.csv");
        match write_csv(&two_point_curve(), 10, path) {
            Err(Error::Io { path: p, .. }) => assert_eq!(p, path),
            other => panic!("unexpected {other:?}"),
        }
    }
}
