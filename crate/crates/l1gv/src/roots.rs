//! Scalar root isolation on an interval: bracketing scan, bisection, Newton polish.

use thiserror::Error;

use crate::config::Tolerances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("no root of the function in ({lo}, {hi})")]
    NoRoot { lo: f64, hi: f64 },
    #[error("expected a unique root in ({lo}, {hi}), found {count}: {roots:?}")]
    Ambiguous { lo: f64, hi: f64, count: usize, roots: Vec<f64> },
    #[error("invalid interval ({lo}, {hi})")]
    BadInterval { lo: f64, hi: f64 },
}

/// What to return when the scan finds sign changes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootPolicy {
    /// Exactly one root must exist.
    UniquePositive,
    /// The smallest root, restricted to `(0, 1)`.
    SmallestInUnitInterval,
    /// Every root, for the caller to filter.
    AllThenFilter,
}

/// A scalar function or a polynomial given by its coefficients, highest degree first.
pub enum RootTarget<'a> {
    Function(&'a dyn Fn(f64) -> f64),
    Coefficients(&'a [f64]),
}

/// Horner evaluation, highest degree first.
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

impl RootTarget<'_> {
    fn eval(&self, x: f64) -> f64 {
        match self {
            RootTarget::Function(f) => f(x),
            RootTarget::Coefficients(c) => horner(c, x),
        }
    }
}

/// Finds roots of `target` strictly inside `(lo, hi)`.
///
/// Sign changes found at `tol.scan_step` spacing are bisected to machine
/// width and then polished with safeguarded Newton steps. Brackets whose
/// midpoint value blows up instead of vanishing are poles and are dropped.
pub fn find_positive_root(
    target: RootTarget<'_>,
    interval: (f64, f64),
    policy: RootPolicy,
    tol: &Tolerances,
) -> Result<Vec<f64>, RootError> {
    let (mut lo, mut hi) = interval;
    if policy == RootPolicy::SmallestInUnitInterval {
        lo = lo.max(0.0);
        hi = hi.min(1.0);
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(RootError::BadInterval { lo, hi });
    }
    let steps = (((hi - lo) / tol.scan_step).ceil() as usize).clamp(16, 2_000_000);
    let h = (hi - lo) / steps as f64;
    // keep away from the open endpoints
    let edge = (hi - lo) * 1e-12;
    let grid = |i: usize| -> f64 {
        if i == 0 {
            lo + edge
        } else if i == steps {
            hi - edge
        } else {
            lo + h * i as f64
        }
    };

    let mut roots = Vec::new();
    let mut prev_x = grid(0);
    let mut prev_f = target.eval(prev_x);
    for i in 1..=steps {
        let x = grid(i);
        let fx = target.eval(x);
        if prev_f == 0.0 {
            roots.push(prev_x);
        } else if fx != 0.0 && prev_f.is_finite() && fx.is_finite() && (prev_f < 0.0) != (fx < 0.0) {
            if let Some(r) = refine(&target, prev_x, x, prev_f, fx, tol) {
                roots.push(r);
            }
        }
        prev_x = x;
        prev_f = fx;
    }
    if prev_f == 0.0 {
        roots.push(prev_x);
    }

    if roots.is_empty() {
        return Err(RootError::NoRoot { lo, hi });
    }
    match policy {
        RootPolicy::UniquePositive if roots.len() != 1 => {
            Err(RootError::Ambiguous { lo, hi, count: roots.len(), roots })
        }
        RootPolicy::UniquePositive | RootPolicy::SmallestInUnitInterval => Ok(vec![roots[0]]),
        RootPolicy::AllThenFilter => Ok(roots),
    }
}

/// Convenience wrapper: the unique root of `f` in `(lo, hi)`.
pub fn unique_root(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: &Tolerances) -> Result<f64, RootError> {
    find_positive_root(RootTarget::Function(f), (lo, hi), RootPolicy::UniquePositive, tol).map(|v| v[0])
}

/// All roots of `f` in `(lo, hi)`.
pub fn all_roots(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: &Tolerances) -> Result<Vec<f64>, RootError> {
    find_positive_root(RootTarget::Function(f), (lo, hi), RootPolicy::AllThenFilter, tol)
}

/// Bisection for a monotone-bracketed sign change, no scan.
pub fn bisect(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> Option<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if (fa < 0.0) == (fb < 0.0) {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

fn refine(target: &RootTarget<'_>, a0: f64, b0: f64, fa0: f64, fb0: f64, tol: &Tolerances) -> Option<f64> {
    let f = |x: f64| target.eval(x);
    let mut root = bisect(&f, a0, b0)?;
    let scale = fa0.abs().max(fb0.abs()).max(1.0);
    let fr = f(root);
    if !fr.is_finite() || fr.abs() > 1e-6 * scale {
        // sign flip through a pole
        return None;
    }
    // Newton polish with a central-difference slope, kept inside the bracket.
    let mut best = (fr.abs(), root);
    for _ in 0..8 {
        if best.0 <= tol.root_polish {
            break;
        }
        let h = 1e-7 * root.abs().max(1e-3);
        let slope = (f(root + h) - f(root - h)) / (2.0 * h);
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let next = root - f(root) / slope;
        if !(next > a0 && next < b0) {
            break;
        }
        let fnext = f(next).abs();
        if fnext < best.0 {
            best = (fnext, next);
            root = next;
        } else {
            break;
        }
    }
    Some(best.1)
}
