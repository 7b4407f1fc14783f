use vitalfew::curves::figures::{comparison_plot, effect_vs_cause_plot, profile_plot, threshold_plot};
use vitalfew::curves::format::fmt_sig;
use vitalfew::curves::{
    self, comparison, curves_to_json, gaussian_family, log4_5, pareto_curve, profile_to_json,
    render_svg, CsvTable, Plot, FAMILY_RATIOS, FAMILY_STEPS, FAMILY_T_RANGE,
};
use vitalfew::gaussian::{mc_check, rule_point};
use vitalfew::pareto::{alpha_from_point, iterated_rules, rule_point_pareto, threshold_for_cause};
use vitalfew::solver::{classic_thresholds, named_rule, ratio_from_point, threshold_from_cause};
use vitalfew::{CurveSeries, GaussianParams, ParetoParams, RulePoint, ShapeRatio};

use crate::args::{
    CompareArgs, CurveArgs, FitAlphaArgs, FitArgs, Format, GaussianModel, McCheckArgs, Model,
    PointArgs, ProfileArgs, TableArgs, View,
};
use crate::report::{pretty, Field, Record, Report};
use crate::CliError;

/// Rendered command output plus anything destined for stderr.
#[derive(Debug, Default)]
pub struct Outcome {
    pub body: String,
    pub notes: Vec<String>,
    /// Set when a check ran to completion but did not pass.
    pub failed_check: Option<String>,
}

impl From<String> for Outcome {
    fn from(body: String) -> Self {
        Outcome {
            body,
            ..Outcome::default()
        }
    }
}

pub struct Ctx {
    pub format: Format,
    pub digits: usize,
    pub seed: u64,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn gaussian_model(m: &GaussianModel) -> Result<(ShapeRatio, Option<GaussianParams>), CliError> {
    match (m.ratio, m.mu, m.sigma) {
        (Some(r), None, None) => Ok((ShapeRatio::new(r)?, None)),
        (None, Some(mu), Some(sigma)) => {
            let params = GaussianParams::new(mu, sigma)?;
            Ok((params.ratio(), Some(params)))
        }
        _ => Err(usage("give either --ratio or both --mu and --sigma")),
    }
}

fn absolute_to_t(params: Option<GaussianParams>, x: f64) -> Result<f64, CliError> {
    let params = params.ok_or_else(|| usage("--X needs --mu and --sigma"))?;
    Ok(params.normalize(x)?)
}

fn model_context(r: ShapeRatio, params: Option<GaussianParams>) -> Record {
    let mut ctx = vec![("model", Field::Text("gaussian".into()))];
    if let Some(p) = params {
        ctx.push(("mu", Field::Num(p.mu())));
        ctx.push(("sigma", Field::Num(p.sigma())));
    }
    ctx.push(("ratio", Field::Num(r.get())));
    ctx
}

fn point_fields(p: RulePoint) -> Record {
    vec![("i_cause", Field::Num(p.i_cause)), ("i_effect", Field::Num(p.i_effect))]
}

pub fn point(args: &PointArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let mut report = Report::default();
    let p = if let Some(alpha) = args.alpha {
        let params = ParetoParams::new(alpha, args.x_min)?;
        let a = match (args.a, args.i_cause) {
            (Some(a), None) => a,
            (None, Some(c)) => threshold_for_cause(c, &params)?,
            _ => return Err(usage("the Pareto model needs exactly one of --A or --i-cause")),
        };
        report.context = vec![
            ("model", Field::Text("pareto".into())),
            ("alpha", Field::Num(alpha)),
            ("x_min", Field::Num(args.x_min)),
            ("A", Field::Num(a)),
        ];
        rule_point_pareto(a, &params)?
    } else {
        if args.a.is_some() {
            return Err(usage("--A needs --alpha"));
        }
        let (r, params) = gaussian_model(&args.gaussian)?;
        let t = match (args.t, args.x, args.i_cause) {
            (Some(t), None, None) => t,
            (None, Some(x), None) => absolute_to_t(params, x)?,
            (None, None, Some(c)) => threshold_from_cause(c)?,
            _ => return Err(usage("give exactly one of --t, --X or --i-cause")),
        };
        report.context = model_context(r, params);
        report.context.push(("t", Field::Num(t)));
        rule_point(t, r)?
    };
    report.summary = point_fields(p);
    let mut outcome = Outcome::from(report.render(ctx.format, ctx.digits)?);
    if p.i_effect > 1.0 {
        outcome.notes.push(format!(
            "note: i_effect exceeds 1; causes below the threshold contribute a net share of {}",
            fmt_sig(1.0 - p.i_effect, ctx.digits)
        ));
    }
    Ok(outcome)
}

pub fn fit_ratio(args: &FitArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let target = RulePoint::new(args.i_cause, args.i_effect)?;
    let r = ratio_from_point(target)?;
    let report = Report {
        context: vec![
            ("i_cause", Field::Num(args.i_cause)),
            ("i_effect", Field::Num(args.i_effect)),
            ("t", Field::Num(threshold_from_cause(args.i_cause)?)),
        ],
        summary: vec![("ratio", Field::Num(r.get()))],
        rows: Vec::new(),
    };
    Ok(report.render(ctx.format, ctx.digits)?.into())
}

/// Percentage with trailing zeros dropped: 0.512 → "51.2".
fn percent(x: f64, digits: usize) -> String {
    let text = fmt_sig(100.0 * x, digits);
    if text.contains('e') || !text.contains('.') {
        return text;
    }
    text.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn fit_alpha(args: &FitAlphaArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let base = RulePoint::new(args.point.i_cause, args.point.i_effect)?;
    let alpha = alpha_from_point(base)?;
    let mut report = Report {
        context: point_fields(base),
        summary: vec![("alpha", Field::Num(alpha))],
        rows: Vec::new(),
    };
    if let Some(n) = args.iterate {
        for (k, p) in iterated_rules(base, n)?.into_iter().enumerate() {
            let name = format!("{}/{}", percent(p.i_effect, ctx.digits), percent(p.i_cause, ctx.digits));
            let mut row = vec![("n", Field::Int(k as u64 + 1))];
            row.extend(point_fields(p));
            row.push(("rule", Field::Text(name)));
            report.rows.push(row);
        }
    }
    Ok(report.render(ctx.format, ctx.digits)?.into())
}

pub fn table(args: &TableArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let (r, params) = gaussian_model(&args.gaussian)?;
    let ts: Vec<f64> = if !args.i_cause.is_empty() {
        args.i_cause
            .iter()
            .map(|&c| threshold_from_cause(c))
            .collect::<Result<_, _>>()?
    } else if !args.x.is_empty() {
        args.x
            .iter()
            .map(|&x| absolute_to_t(params, x))
            .collect::<Result<_, _>>()?
    } else if !args.t.is_empty() {
        args.t.clone()
    } else {
        classic_thresholds()
    };
    let mut report = Report {
        context: model_context(r, params),
        ..Report::default()
    };
    for t in ts {
        let rule = named_rule(t, r)?;
        let mut row = vec![("rule", Field::Text(rule.name)), ("t", Field::Num(t))];
        row.extend(point_fields(rule.point));
        report.rows.push(row);
    }
    Ok(report.render(ctx.format, ctx.digits)?.into())
}

fn render_curves(series: &[CurveSeries], plot: impl FnOnce() -> Plot, ctx: &Ctx) -> Result<String, CliError> {
    Ok(match ctx.format {
        Format::Text | Format::Csv => match series {
            [single] => single.to_csv(ctx.digits)?,
            many => many.to_csv(ctx.digits)?,
        },
        Format::Json => pretty(&curves_to_json(series, ctx.digits)?),
        Format::Svg => render_svg(&plot())?,
    })
}

pub fn curve(args: &CurveArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let series = match args.model {
        Model::Gaussian => {
            if args.alpha.is_some() {
                return Err(usage("--alpha applies to --model pareto"));
            }
            let ratios = if args.ratios.is_empty() {
                FAMILY_RATIOS.to_vec()
            } else {
                args.ratios.clone()
            };
            gaussian_family(
                &ratios,
                args.t_min.unwrap_or(FAMILY_T_RANGE.0),
                args.t_max.unwrap_or(FAMILY_T_RANGE.1),
                args.steps.unwrap_or(FAMILY_STEPS),
            )?
        }
        Model::Pareto => {
            if !args.ratios.is_empty() || args.t_min.is_some() || args.t_max.is_some() {
                return Err(usage("--ratios, --t-min and --t-max apply to --model gaussian"));
            }
            let alpha = args.alpha.unwrap_or_else(log4_5);
            let steps = args.steps.unwrap_or(curves::COMPARISON_STEPS);
            vec![pareto_curve(alpha, args.ratio_max, steps)?]
        }
    };
    let plot = || match args.view {
        View::EffectVsCause => effect_vs_cause_plot(&series),
        View::Threshold => {
            let mut plot = threshold_plot(&series);
            if args.model == Model::Pareto {
                plot.x_label = "A/x_min".into();
                plot.log_x = true;
            }
            plot
        }
    };
    Ok(render_curves(&series, plot, ctx)?.into())
}

pub fn profile(args: &ProfileArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let params = GaussianParams::new(args.mu, args.sigma)?;
    let x_min = args.x_min.unwrap_or(args.mu - 5.0 * args.sigma);
    let x_max = args.x_max.unwrap_or(args.mu + 5.0 * args.sigma);
    let series = curves::profile(params, x_min, x_max, args.steps, args.shade_t)?;
    let body = match ctx.format {
        Format::Text | Format::Csv => series.to_csv(ctx.digits)?,
        Format::Json => pretty(&profile_to_json(&series, ctx.digits)?),
        Format::Svg => render_svg(&profile_plot(&series))?,
    };
    Ok(body.into())
}

pub fn compare(args: &CompareArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let alpha = args.alpha.unwrap_or_else(log4_5);
    let (g, p) = comparison(ShapeRatio::new(args.ratio)?, alpha, args.steps)?;
    let plot = || comparison_plot(&g, &p);
    let body = render_curves(&[g.clone(), p.clone()], plot, ctx)?;
    Ok(body.into())
}

pub fn mc(args: &McCheckArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let r = ShapeRatio::new(args.ratio)?;
    let t = match (args.t, args.i_cause) {
        (Some(t), None) => t,
        (None, Some(c)) => threshold_from_cause(c)?,
        _ => return Err(usage("give exactly one of --t or --i-cause")),
    };
    if !(args.sigmas > 0.0 && args.sigmas.is_finite()) {
        return Err(usage("--sigmas must be positive"));
    }
    let check = mc_check(r, t, args.n, ctx.seed, args.sigmas)?;
    let est = check.estimate;
    let rows = [
        (
            "i_cause",
            check.analytic.i_cause,
            est.point.i_cause,
            check.cause_delta(),
            est.cause_std_error,
            check.cause_bound,
        ),
        (
            "i_effect",
            check.analytic.i_effect,
            est.point.i_effect,
            check.effect_delta(),
            est.effect_std_error,
            check.effect_bound,
        ),
    ]
    .into_iter()
    .map(|(name, analytic, empirical, delta, se, bound)| {
        vec![
            ("quantity", Field::Text(name.into())),
            ("analytic", Field::Num(analytic)),
            ("empirical", Field::Num(empirical)),
            ("delta", Field::Num(delta)),
            ("std_error", Field::Num(se)),
            ("bound", Field::Num(bound)),
        ]
    })
    .collect();
    let report = Report {
        context: vec![
            ("model", Field::Text("gaussian".into())),
            ("ratio", Field::Num(r.get())),
            ("t", Field::Num(t)),
            ("seed", Field::Int(ctx.seed)),
        ],
        summary: vec![
            ("samples", Field::Int(est.samples)),
            ("sigmas", Field::Num(args.sigmas)),
            ("within_bounds", Field::Bool(check.within_bounds())),
        ],
        rows,
    };
    let mut outcome = Outcome::from(report.render(ctx.format, ctx.digits)?);
    if !check.within_bounds() {
        outcome.failed_check = Some(format!(
            "Monte-Carlo estimate lies outside the {}-sigma band",
            fmt_sig(args.sigmas, 3)
        ));
    }
    Ok(outcome)
}
