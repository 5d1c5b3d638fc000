//! Number formatting and `start:stop:step` grids.

/// C's `%.17g`: 17 significant digits, trailing zeros dropped, exponent
/// form below `1e-4` and from `1e17` on. Round-trips every finite double.
pub fn fmt_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mant, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mant = strip_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mant}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp).max(0) as usize;
    strip_zeros(&format!("{x:.decimals$}")).to_string()
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Grid values are snapped to this quantum so `0.1*3` prints as `0.3`.
pub const GRID_QUANTUM: f64 = 1e-12;

pub fn snap(x: f64) -> f64 {
    (x / GRID_QUANTUM).round() * GRID_QUANTUM
}

/// Parses `start:stop:step` into `start, start+step, …` up to `stop`
/// inclusive (within half a step quantum).
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, h] = parts.as_slice() else {
        return Err(format!("grid '{spec}' is not start:stop:step"));
    };
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("'{s}' in grid '{spec}' is not a number"));
    let (start, stop, step) = (num(a)?, num(b)?, num(h)?);
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(format!("grid '{spec}' has a non-finite value"));
    }
    if step <= 0.0 {
        return Err(format!("grid step must be positive, got {step}"));
    }
    if stop < start {
        return Err(format!("grid stop {stop} is below start {start}"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 10_000_000 {
        return Err(format!("grid '{spec}' has {count} points"));
    }
    Ok((0..count).map(|i| snap(start + i as f64 * step)).collect())
}
