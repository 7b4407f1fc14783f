//! Ready-made plots for the standard views.

use super::svg::{Plot, PlotLine};
use super::{CurveSeries, ProfileSeries};
use crate::scalar::Scalar;

/// The classic 80/20 point, marked on effect-vs-cause plots.
pub const EIGHTY_TWENTY: (f64, f64) = (0.2, 0.8);

/// Effect share against cause share, one line per series.
pub fn effect_vs_cause_plot<T: Scalar>(series: &[CurveSeries<T>]) -> Plot {
    let mut plot = Plot::new(
        "Effect share against cause share",
        "cause share I_cause",
        "effect share I_effect",
    );
    for s in series {
        plot = plot.line(PlotLine::new(s.label.clone(), s.effect_vs_cause()));
    }
    plot.x_range = Some((0.0, 1.0));
    plot.marker("80/20", EIGHTY_TWENTY.0, EIGHTY_TWENTY.1)
}

/// Cause and effect shares against the normalized threshold.
pub fn threshold_plot<T: Scalar>(series: &[CurveSeries<T>]) -> Plot {
    let (title, tag): (String, fn(&str, &str) -> String) = match series {
        [only] => (
            format!("Tail shares against threshold, {}", only.label),
            |name, _| name.to_string(),
        ),
        _ => (
            "Tail shares against threshold".into(),
            |name, label| format!("{name}, {label}"),
        ),
    };
    let mut plot = Plot::new(title, "t = X/sigma", "share");
    for s in series {
        plot = plot
            .line(PlotLine::new(tag("I_cause", &s.label), s.cause_vs_abscissa()).dashed())
            .line(PlotLine::new(tag("I_effect", &s.label), s.effect_vs_abscissa()));
    }
    plot
}

/// Density and first-moment integrand, with the tail region shaded.
pub fn profile_plot<T: Scalar>(profile: &ProfileSeries<T>) -> Plot {
    let mut plot = Plot::new(format!("Profile, {}", profile.label), "x", "value")
        .line(PlotLine::new("f(x)", profile.density()))
        .line(PlotLine::new("x f(x)", profile.moment()).dashed());
    if let Some(t) = profile.shade_t {
        let start = profile.params.threshold(t).as_f64();
        plot.shaded_x = Some((start, profile.sweep.end.as_f64()));
    }
    plot
}

/// Gaussian and Pareto effect-vs-cause curves on a logarithmic cause axis.
pub fn comparison_plot<T: Scalar>(gaussian: &CurveSeries<T>, pareto: &CurveSeries<T>) -> Plot {
    let mut plot = Plot::new(
        "Gaussian and Pareto concentration",
        "cause share I_cause",
        "effect share I_effect",
    )
    .line(PlotLine::new(gaussian.label.clone(), gaussian.effect_vs_cause()))
    .line(PlotLine::new(pareto.label.clone(), pareto.effect_vs_cause()).dashed())
    .marker("80/20", EIGHTY_TWENTY.0, EIGHTY_TWENTY.1);
    plot.log_x = true;
    plot
}
