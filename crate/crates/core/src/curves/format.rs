//! Locale-independent number formatting shared by the writers.

/// Significant digits used by every writer unless overridden.
pub const DEFAULT_SIGNIFICANT_DIGITS: usize = 10;

/// Formats `x` with exactly `digits` significant digits.
///
/// Plain decimal notation for exponents in `[-5, digits)`, scientific
/// otherwise. Zero (of either sign) prints as `0`.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("scientific format has an exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    } else {
        sci
    }
}

/// `x` rounded to `digits` significant digits, as an `f64`.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    fmt_sig(x, digits).parse().unwrap_or(x)
}
