//! Acceptance suite: one line per criterion. Exits non-zero on any failure
//! not listed in `UNATTAINABLE`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{interpolate, parse_plot, vitalfew_in};
use vitalfew::curves::log4_5;
use vitalfew::gaussian::{self, i_cause, mc_estimate, negative_cause_fraction, negative_effect_fraction, rule_point};
use vitalfew::pareto::{self, alpha_from_point, iterated_rules, rule_point_pareto, threshold_for_cause};
use vitalfew::solver::{named_rule, ratio_from_point, threshold_from_cause, within_points};
use vitalfew::{GaussianParams, ParetoParams, RulePoint, ShapeRatio};

type Verdict = Result<String, String>;

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn point(c: f64, e: f64) -> RulePoint {
    RulePoint::new(c, e).unwrap()
}

fn ratio(r: f64) -> ShapeRatio {
    ShapeRatio::new(r).unwrap()
}

fn tail_fractions() -> Verdict {
    let start = Instant::now();
    let values: Vec<f64> = [1.0, 2.0, 3.0].iter().map(|&t| i_cause(t).unwrap()).collect();
    let elapsed = start.elapsed();
    let rounded = [0.16, 0.023, 0.0014];
    let derived = [0.1587, 0.02275, 0.001350];
    let gaps: Vec<f64> = values.iter().zip(rounded).map(|(v, r)| (v - r).abs()).collect();
    let gap_text: Vec<String> = gaps.iter().map(|g| format!("{g:.1e}")).collect();
    let matches_derived = values
        .iter()
        .zip(derived)
        .all(|(v, d)| (v - d).abs() <= 0.5 * 10f64.powi(d.log10().floor() as i32 - 3));
    let ok = gaps.iter().all(|&g| g <= 5e-4) && elapsed < Duration::from_millis(1);
    check(
        ok,
        format!(
            "I_cause(1, 2, 3) = {values:.6?} in {elapsed:?}; distance to 0.16, 0.023, 0.0014 = [{}]; \
             agrees with 0.1587, 0.02275, 0.001350 to the digits shown: {matches_derived}",
            gap_text.join(", ")
        ),
    )
}

fn eighty_twenty_fit() -> Verdict {
    let r = ratio_from_point(point(0.2, 0.8)).map_err(|e| e.to_string())?.get();
    let t = threshold_from_cause(0.2).unwrap();
    let e = rule_point(t, ratio(2.0)).unwrap().i_effect;
    check(
        (1.95..=2.25).contains(&r) && (0.75..=0.80).contains(&e),
        format!("fitted sigma/mu = {r:.7}, I_effect(t(0.2), 2) = {e:.7}"),
    )
}

fn rule_family() -> Verdict {
    let published = [(1.7, (25.0, 5.0)), (1.3, (45.0, 10.0)), (1.1, (60.0, 15.0)), (0.67, (90.0, 25.0))];
    let mut ok = true;
    let mut parts = Vec::new();
    for (t, reference) in published {
        let rule = named_rule(t, ratio(2.0)).unwrap();
        ok &= within_points(&rule, reference, 3.0);
        parts.push(format!(
            "{t}: ({:.1}, {:.1})",
            100.0 * rule.point.i_effect,
            100.0 * rule.point.i_cause
        ));
    }
    check(ok, parts.join(", "))
}

fn pareto_index() -> Verdict {
    let alpha = alpha_from_point(point(0.2, 0.8)).map_err(|e| e.to_string())?;
    let exact = 5f64.ln() / 4f64.ln();
    check((alpha - exact).abs() <= 1e-12, format!("alpha = {alpha:.15}, |diff| = {:.1e}", (alpha - exact).abs()))
}

fn iterated() -> Verdict {
    let rules = iterated_rules(point(0.2, 0.8), 4).map_err(|e| e.to_string())?;
    let expected = [(0.2, 0.8), (0.04, 0.64), (0.008, 0.512), (0.0016, 0.4096)];
    let params = ParetoParams::new(log4_5(), 1.0).unwrap();
    let mut worst = 0.0_f64;
    for (p, (c, e)) in rules.iter().zip(expected) {
        worst = worst.max((p.i_cause - c).abs()).max((p.i_effect - e).abs());
        let a = threshold_for_cause(p.i_cause, &params).unwrap();
        let back = rule_point_pareto(a, &params).unwrap();
        worst = worst.max((back.i_cause - c).abs()).max((back.i_effect - e).abs());
    }
    check(
        rules.len() == 4 && worst <= 1e-12,
        format!("4 rules, worst deviation incl. round trip {worst:.1e}"),
    )
}

fn above_one() -> Verdict {
    let e = gaussian::i_effect(0.0, ratio(2.0)).unwrap();
    check((e - 1.2979).abs() <= 1e-4 && e > 1.0, format!("I_effect(0, 2) = {e:.10}"))
}

fn negative_contributors() -> Verdict {
    let c = negative_cause_fraction(ratio(2.0));
    let e = negative_effect_fraction(ratio(2.0));
    check(
        (c - 0.30854).abs() <= 1e-5 && (e + 0.39561).abs() <= 1e-4,
        format!("negative cause {c:.7}, negative effect {e:.7}"),
    )
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for r in [0.5, 1.0, 2.0, 4.0] {
        let params = GaussianParams::new(1.0, r).unwrap();
        for t in [-1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0] {
            let closed = rule_point(t, ratio(r)).unwrap();
            let quad = gaussian::rule_point_by_quadrature(t, &params, 1e-12).map_err(|e| e.to_string())?;
            worst = worst
                .max((closed.i_cause - quad.i_cause).abs())
                .max((closed.i_effect - quad.i_effect).abs());
        }
    }
    for alpha in [log4_5(), 2.0, 3.0] {
        let params = ParetoParams::new(alpha, 1.0).unwrap();
        for a in [1.0, 2.0, 5.0] {
            let closed = rule_point_pareto(a, &params).unwrap();
            let quad = pareto::rule_point_by_quadrature(a, &params, 1e-12).map_err(|e| e.to_string())?;
            worst = worst
                .max((closed.i_cause - quad.i_cause).abs())
                .max((closed.i_effect - quad.i_effect).abs());
        }
    }
    let elapsed = start.elapsed();
    check(
        worst <= 1e-8 && elapsed < Duration::from_secs(5),
        format!("7x4 Gaussian and 3x3 Pareto grids, worst {worst:.1e} in {elapsed:.2?}"),
    )
}

fn monte_carlo() -> Verdict {
    let (r, t, n, seed) = (ratio(2.0), 0.8416, 1_000_000, 7);
    let analytic = rule_point(t, r).unwrap();
    let a = mc_estimate(r, t, n, seed).map_err(|e| e.to_string())?;
    let b = mc_estimate(r, t, n, seed).unwrap();
    let binomial_se = (analytic.i_cause * (1.0 - analytic.i_cause) / n as f64).sqrt();
    let dc = (a.point.i_cause - analytic.i_cause).abs();
    let de = (a.point.i_effect - analytic.i_effect).abs();
    check(
        dc <= 5.0 * binomial_se && de <= 5.0 * a.effect_std_error && a == b,
        format!(
            "|dI_cause| = {:.2} SE, |dI_effect| = {:.2} SE, repeat identical: {}",
            dc / binomial_se,
            de / a.effect_std_error,
            a == b
        ),
    )
}

fn figures() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: [&[&str]; 6] = [
        &["compare", "--out", "compare.csv"],
        &["compare", "--out", "compare.json"],
        &["compare", "--out", "compare.svg"],
        &["curve", "--ratios", "0.5,1,2,4", "--out", "curve.csv"],
        &["curve", "--ratios", "0.5,1,2,4", "--out", "curve.json"],
        &["curve", "--ratios", "0.5,1,2,4", "--out", "curve.svg"],
    ];
    let mut identical = true;
    for args in runs {
        let file = dir.path().join(args.last().unwrap());
        let mut contents = Vec::new();
        for _ in 0..2 {
            let out = vitalfew_in(dir.path(), args);
            if !out.status.success() {
                return Err(format!("{args:?} failed: {}", String::from_utf8_lossy(&out.stderr)));
            }
            contents.push(std::fs::read(&file).map_err(|e| e.to_string())?);
        }
        identical &= contents[0] == contents[1];
    }
    let svg = std::fs::read_to_string(dir.path().join("curve.svg")).unwrap();
    let plot = parse_plot(&svg);
    let line = plot
        .lines
        .iter()
        .find(|(label, _)| label == "sigma/mu = 2")
        .ok_or("no sigma/mu = 2 series")?;
    let marker = plot.markers.first().copied().ok_or("no marker")?;
    let y = interpolate(&line.1, marker.0).ok_or("series does not span the marker")?;
    let gap = (y - marker.1).abs();
    check(
        identical && plot.lines.len() == 4 && plot.markers.len() == 1 && gap <= 0.05,
        format!(
            "byte-identical reruns: {identical}; {} polylines; sigma/mu = 2 passes {gap:.4} from marker ({:.3}, {:.3})",
            plot.lines.len(),
            marker.0,
            marker.1
        ),
    )
}

/// Criteria that cannot pass as stated, with the reason printed next to the
/// FAIL line. They still run; only an unexpected result changes the exit code.
const UNATTAINABLE: [(usize, &str); 1] = [(
    1,
    "the exact upper tail at 1 sigma is 0.158655, which is 1.3e-3 from the two-digit 0.16; \
     no correct survival function lands within 5e-4",
)];

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("tail fractions at 1, 2, 3 sigma", tail_fractions),
        ("80/20 point fits sigma/mu near 2", eighty_twenty_fit),
        ("25/5, 45/10, 60/15, 90/25 family within 3 pp", rule_family),
        ("Pareto index log4(5)", pareto_index),
        ("iterated rules 80/20 to 40.96/0.16", iterated),
        ("effect share above 100% at t = 0", above_one),
        ("negative contributors at sigma/mu = 2", negative_contributors),
        ("closed forms match quadrature", oracle_equivalence),
        ("Monte-Carlo within 5 standard errors", monte_carlo),
        ("deterministic figure output", figures),
    ];
    let start = Instant::now();
    let (mut failures, mut unexpected) = (0, 0);
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let known = UNATTAINABLE.iter().find(|(n, _)| *n == id).map(|(_, why)| *why);
        match (run(), known) {
            (Ok(detail), None) => println!("PASS  {id:>2}. {name}: {detail}"),
            (Ok(detail), Some(_)) => {
                unexpected += 1;
                println!("PASS  {id:>2}. {name}: {detail} (listed as unattainable; update the list)");
            }
            (Err(detail), known) => {
                failures += 1;
                match known {
                    Some(why) => println!("FAIL  {id:>2}. {name}: {detail}\n          unattainable: {why}"),
                    None => {
                        unexpected += 1;
                        println!("FAIL  {id:>2}. {name}: {detail}");
                    }
                }
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed ({unexpected} unexpected) in {:.2?}",
        criteria.len() - failures,
        start.elapsed()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
