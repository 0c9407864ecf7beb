//! Locale-independent float formatting: 12 significant digits, `.` decimal
//! separator, identical bytes for identical values.

/// Format with 12 significant digits. Exact zero prints as `0`; magnitudes
/// outside a readable positional range fall back to scientific notation.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-5..12).contains(&exponent) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}
