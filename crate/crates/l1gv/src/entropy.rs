//! Base-2 entropy helpers. All logarithms in the crate are base 2.

/// `x log₂ x` with `0 log 0 = 0`.
pub fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Binary entropy `𝐇(p) = −p log₂ p − (1−p) log₂(1−p)`.
///
/// Arguments are clamped to `[0, 1]` so that rounding noise at the ends
/// yields 0 rather than NaN.
pub fn h2(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    -xlog2x(p) - xlog2x(1.0 - p)
}
