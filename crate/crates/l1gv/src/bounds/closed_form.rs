//! Closed-form critical points of the reduced pair systems.
//!
//! Coordinates follow [`SpaceFamily::reduced_labels`](crate::family::SpaceFamily::reduced_labels).
//! The constrained simplex families go through the substitution
//! `λ₁ = xz`, `λ₂ = x²`, which turns the system into one polynomial equation
//! in `λ₁` plus rational back-substitutions.

use super::BoundsError;
use crate::config::Tolerances;
use crate::roots::{all_roots, find_positive_root, unique_root, RootPolicy, RootTarget};

/// `(x, y, z)` for the standard simplex, `0 < δ < 2(1+ρ)/(2+ρ)`.
pub fn std_point(rho: f64, delta: f64) -> Vec<f64> {
    let s = (rho * rho + delta * delta).sqrt();
    let x = (1.0 - 2.0 * rho / (2.0 + 2.0 * rho - delta)).sqrt();
    let z = (s - rho) / (x * delta);
    let y = 2.0 * (s - delta) / (2.0 - delta + 2.0 * rho);
    vec![x, y, z]
}

/// `(x, y, z)` for the positive simplex, `0 < δ < 2(1−ρ)/(2−ρ)`.
pub fn pos_point(rho: f64, delta: f64) -> Vec<f64> {
    let s = (rho * rho + delta * delta).sqrt();
    let x = (1.0 - 2.0 * rho / (2.0 - delta)).sqrt();
    let z = (s - rho) / (x * delta);
    let y = 2.0 * (s - delta) / (2.0 - delta - 2.0 * rho);
    vec![x, y, z]
}

/// Quintic in `λ₁` for the standard simplex with `p = τn` zeros, highest
/// degree first.
pub fn zeros_quintic(rho: f64, tau: f64, delta: f64) -> [f64; 6] {
    let (r, t, d) = (rho, tau, delta);
    let a = r - t;
    [
        d * d * (1.0 + r),
        -d * d * (1.0 + t) + 4.0 * d * a * (1.0 + r),
        -d * d * (r + 2.0) + 2.0 * d * a * (a - 2.0) + 4.0 * a * a * (1.0 + r),
        -d * d * (r - 2.0 * t - 2.0) - 2.0 * d * a * (r + t + 2.0) - 4.0 * a * a * (1.0 - r),
        d * d - 4.0 * d * a * (a - 1.0),
        d * d * (a - 1.0),
    ]
}

/// Degree-6 equation in `λ₁` for the positive simplex with `p = τn` ones,
/// in factored form.
pub fn ones_sextic(rho: f64, tau: f64, delta: f64, l: f64) -> f64 {
    let (r, t, d) = (rho, tau, delta);
    let a = r - t;
    let u = d * (1.0 - l * l) - 2.0 * l * a;
    let v = 2.0 * a - d * (1.0 - l);
    (1.0 - l) * u * u * (2.0 * (1.0 - r) - 2.0 * a * (1.0 + l) - d * l * l) + l * l * (1.0 + l) * v * v * (u - 2.0 * t)
}

/// Back-substitution shared by both constrained simplex families. `ones`
/// selects the extra `x²` in front of `y`; `denom` is `2 − δ` (zeros) or
/// `2(1−ρ) − δ` (ones).
fn lambda_to_point(l1: f64, a: f64, delta: f64, denom: f64, ones: bool) -> Option<Vec<f64>> {
    let d = delta;
    let l2 = 1.0 - (1.0 + l1) * (2.0 * a - d * (1.0 - l1)) / denom;
    if !(l2 > 0.0 && l2 < 1.0) {
        return None;
    }
    let w = l2 * (d * (1.0 - l1 * l1) - 2.0 * l1 * a) / (l1 * (1.0 - l2) * (2.0 * a - d * (1.0 - l1)));
    if !(w > 0.0 && w.is_finite()) {
        return None;
    }
    let bracket = w * w * (1.0 - l1) * (1.0 - l2) + 2.0 * w * l1 * (1.0 - l2) + l2 * (1.0 + l1);
    let mut y = (1.0 - l1) * (1.0 - l2) / bracket;
    if ones {
        y /= l2;
    }
    if !(y > 0.0 && y.is_finite()) {
        return None;
    }
    let x = l2.sqrt();
    Some(vec![x, y, l1 / x, w])
}

fn single(points: Vec<Vec<f64>>, what: &'static str) -> Result<Vec<f64>, BoundsError> {
    match points.len() {
        0 => Err(BoundsError::NoAdmissibleRoot { what }),
        1 => Ok(points.into_iter().next().unwrap()),
        _ => Err(BoundsError::AmbiguousRoots { what, roots: points.iter().map(|p| p[0] * p[2]).collect() }),
    }
}

/// `(x, y, z, w)` for the standard simplex with `τn` zeros. The returned `z`
/// may exceed 1, which signals that `δ` is past the plateau.
pub fn std_zeros_point(rho: f64, tau: f64, delta: f64, tol: &Tolerances) -> Result<Vec<f64>, BoundsError> {
    let c = zeros_quintic(rho, tau, delta);
    let a = rho - tau;
    let roots = match find_positive_root(RootTarget::Coefficients(&c), (0.0, 1.0), RootPolicy::AllThenFilter, tol) {
        Ok(r) => r,
        Err(crate::roots::RootError::NoRoot { .. }) => vec![],
        Err(e) => return Err(e.into()),
    };
    let pts = roots.into_iter().filter_map(|l1| lambda_to_point(l1, a, delta, 2.0 - delta, false)).collect();
    single(pts, "standard simplex with zeros")
}

/// `(x, y, z, w)` for the positive simplex with `τn` ones.
pub fn pos_ones_point(rho: f64, tau: f64, delta: f64, tol: &Tolerances) -> Result<Vec<f64>, BoundsError> {
    let a = rho - tau;
    let f = |l: f64| ones_sextic(rho, tau, delta, l);
    let roots = match all_roots(&f, 0.0, 1.0, tol) {
        Ok(r) => r,
        Err(crate::roots::RootError::NoRoot { .. }) => vec![],
        Err(e) => return Err(e.into()),
    };
    let pts = roots
        .into_iter()
        .filter_map(|l1| lambda_to_point(l1, a, delta, 2.0 * (1.0 - rho) - delta, true))
        .collect();
    single(pts, "positive simplex with ones")
}

/// `Σ_{j=1}^{q−1} f(j) y^j`.
pub(crate) fn ysum(q: u32, y: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut acc = 0.0;
    let mut yj = 1.0;
    for j in 1..q {
        yj *= y;
        acc += f(j as f64) * yj;
    }
    acc
}

/// `(x, y)` for `Z_q^n`: `y` solves `2Σ(q−j)(j−δ)y^j = qδ` on `(0, 1)`.
pub fn hypercube_point(q: u32, delta: f64, tol: &Tolerances) -> Result<Vec<f64>, BoundsError> {
    let qf = q as f64;
    let f = |y: f64| 2.0 * ysum(q, y, |j| (qf - j) * (j - delta)) - qf * delta;
    let y = unique_root(&f, 0.0, 1.0, tol)?;
    let x = 1.0 / (qf + 2.0 * ysum(q, y, |j| qf - j));
    Ok(vec![x, y])
}

/// `w` as a function of `y` in the constrained hypercube system, as
/// numerator and denominator.
fn hz_w_parts(q: u32, tau: f64, delta: f64, y: f64) -> (f64, f64) {
    let qf = q as f64;
    let num = delta * (qf - 1.0) + 2.0 * ysum(q, y, |j| (delta - j * (1.0 - tau)) * (qf - 1.0 - j));
    let den = ysum(q, y, |j| 2.0 * j * (1.0 - tau) - delta);
    (num, den)
}

/// The `y`-equation of the constrained hypercube after clearing the
/// denominator of `w(y)`; a polynomial in `y`, so scanning it meets no poles.
fn hz_cleared(q: u32, tau: f64, delta: f64, y: f64) -> f64 {
    let qf = q as f64;
    let (num, den) = hz_w_parts(q, tau, delta, y);
    delta * num * num
        + 2.0 * num * den * ysum(q, y, |j| delta - j)
        + den * den * (delta * (qf - 1.0) + 2.0 * ysum(q, y, |j| (qf - 1.0 - j) * (delta - j)))
}

/// `x` from `(y, w)` in the constrained hypercube system.
pub(crate) fn hz_x(q: u32, y: f64, w: f64) -> f64 {
    let qf = q as f64;
    1.0 / (w * w + (qf - 1.0) + 2.0 * w * ysum(q, y, |_| 1.0) + 2.0 * ysum(q, y, |j| qf - 1.0 - j))
}

/// `(x, y, w)` for `Z_q^n` with `τn` zeros, `0 < δ < δ_max(τ)`.
pub fn hypercube_zeros_point(q: u32, tau: f64, delta: f64, tol: &Tolerances) -> Result<Vec<f64>, BoundsError> {
    let f = |y: f64| hz_cleared(q, tau, delta, y);
    let roots = match all_roots(&f, 0.0, 1.0, tol) {
        Ok(r) => r,
        Err(crate::roots::RootError::NoRoot { .. }) => vec![],
        Err(e) => return Err(e.into()),
    };
    let pts = roots
        .into_iter()
        .filter_map(|y| {
            let (num, den) = hz_w_parts(q, tau, delta, y);
            let w = num / den;
            (w > 0.0 && w.is_finite()).then(|| vec![hz_x(q, y, w), y, w])
        })
        .collect();
    single(pts, "hypercube with zeros")
}

/// `τ` as a function of `y` on the optimal constrained-hypercube curve.
/// Numerator and denominator both vanish at `y = 1`; the common factor
/// `1 − y` is divided out so that `y = 1` evaluates to `(q+1)/(4q−2)`.
pub fn hypercube_tau_of_y(q: u32, y: f64) -> f64 {
    let qm = q as f64 - 1.0;
    // N(y) = (q−1) + Σ (q−1−2j) y^j,  D(y) = q(q−1) − 2Σ j y^j, highest degree first
    let mut n: Vec<f64> = (1..q).rev().map(|j| qm - 2.0 * j as f64).collect();
    n.push(qm);
    let mut d: Vec<f64> = (1..q).rev().map(|j| -2.0 * j as f64).collect();
    d.push(qm * (qm + 1.0));
    let nq = synthetic_divide_by_root_one(&n);
    let dq = synthetic_divide_by_root_one(&d);
    crate::roots::horner(&nq, y) / crate::roots::horner(&dq, y)
}

/// Quotient of `p(y) / (y − 1)`, coefficients highest degree first;
/// the remainder is dropped (callers pass polynomials with `p(1) = 0`).
fn synthetic_divide_by_root_one(p: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = 0.0;
    for &c in &p[..p.len() - 1] {
        acc += c;
        out.push(acc);
    }
    out
}

/// The optimal constrained-hypercube point for distance `δ`: `y` on `(0, 1)`
/// solving the `y`-equation with `w = τ(q−1)/(1−τ)` and `τ = τ(y)`.
/// Returns `(y, w, τ)`.
pub fn hypercube_mr_point(q: u32, delta: f64, tol: &Tolerances) -> Result<(f64, f64, f64), BoundsError> {
    let qf = q as f64;
    let g = |y: f64| {
        let t = hypercube_tau_of_y(q, y);
        let w = t * (qf - 1.0) / (1.0 - t);
        delta * w * w
            + 2.0 * w * ysum(q, y, |j| delta - j)
            + delta * (qf - 1.0)
            + 2.0 * ysum(q, y, |j| (qf - 1.0 - j) * (delta - j))
    };
    let roots = match all_roots(&g, 0.0, 1.0, tol) {
        Ok(r) => r,
        Err(crate::roots::RootError::NoRoot { .. }) => vec![],
        Err(e) => return Err(e.into()),
    };
    let pts: Vec<Vec<f64>> = roots
        .into_iter()
        .filter_map(|y| {
            let t = hypercube_tau_of_y(q, y);
            let w = t * (qf - 1.0) / (1.0 - t);
            (t > 0.0 && t < 1.0 && w > 0.0).then(|| vec![y, w, t])
        })
        .collect();
    let p = single(pts, "optimal constrained hypercube")?;
    Ok((p[0], p[1], p[2]))
}

/// Capacity-side `w₁*` of the standard simplex with zeros.
pub fn std_zeros_capacity_w(rho: f64, tau: f64) -> f64 {
    tau * (1.0 + tau - rho) / ((rho - tau) * (rho - tau))
}

/// Full capacity point `(x, y, w)` of the standard simplex with zeros.
pub fn std_zeros_capacity_point(rho: f64, tau: f64) -> Vec<f64> {
    let a = rho - tau;
    vec![1.0 - a, a * a / (rho * (1.0 - a)), std_zeros_capacity_w(rho, tau)]
}

/// Capacity-side `w₁*` of the positive simplex with ones.
pub fn pos_ones_capacity_w(rho: f64, tau: f64) -> f64 {
    tau * (1.0 + tau - 2.0 * rho) / ((rho - tau) * (rho - tau))
}

/// Capacity-side `w₁*` of `Z_q^n` with zeros.
pub fn hypercube_zeros_capacity_w(q: u32, tau: f64) -> f64 {
    tau * (q as f64 - 1.0) / (1.0 - tau)
}

/// Capacity point `(x, y)` of the positive simplex.
pub fn pos_capacity_point(rho: f64) -> Vec<f64> {
    vec![1.0 - rho, rho / (1.0 - rho)]
}
