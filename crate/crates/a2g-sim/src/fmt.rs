//! Locale-independent numeric formatting for emitted files.

/// Rounds `x` to six significant digits, for values that go through a JSON
/// serializer rather than [`fmt_sig`].
pub fn round_sig6(x: f64) -> f64 {
    // Past 1e+-300 the scale factor itself would overflow; values out
    // there (deep BER tails) pass through unrounded.
    if x == 0.0 || !x.is_finite() || !(1e-300..1e300).contains(&x.abs()) {
        return x;
    }
    let mag = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(5 - mag);
    (x * scale).round() / scale
}

/// Formats `x` with six significant digits and a `.` decimal separator.
///
/// Fixed decimal notation inside [1e-4, 1e6); scientific outside, so BER
/// tails do not expand into hundreds of zeros and large magnitudes do not
/// grow extra integer digits.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let a = x.abs();
    if (1e-4..1e6).contains(&a) {
        fmt_sig_fixed(x)
    } else {
        format!("{x:.5e}")
    }
}

/// Formats `x` with six significant digits in fixed decimal notation
/// (devices.csv contract).
pub fn fmt_sig_fixed(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (5 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}
