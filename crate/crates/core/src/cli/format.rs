//! Locale-independent number formatting with 12 significant digits.

/// Rounds to 12 significant digits; `-0` becomes `0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

/// Shortest text of `x` rounded to 12 significant digits; scientific
/// notation below `1e-4` or from `1e15` up.
pub fn sig12(x: f64) -> String {
    let r = round12(x);
    if r != 0.0 && (r.abs() < 1e-4 || r.abs() >= 1e15) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// Rounds every entry, flushing those below `1e-13` of the largest
/// magnitude (or of 1) to zero.
pub fn round_all(xs: &[f64]) -> Vec<f64> {
    let scale = xs.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
    xs.iter()
        .map(|&x| {
            if x.abs() <= 1e-13 * scale {
                0.0
            } else {
                round12(x)
            }
        })
        .collect()
}
