//! Capacities, ball exponents and rate bounds.
//!
//! The GV bound is `2·Cap(S) − T̃(S, δ)`; the GV-MR bound is the same
//! expression for a constrained subfamily `S(τ)`, maximized over `τ`.
//! Everything is base 2.

pub mod closed_form;
mod curve;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::Tolerances;
use crate::entropy::h2;
use crate::family::{FamilyError, SpaceFamily, SpaceKind};
use crate::roots::{bisect, RootError};
use closed_form::*;

pub use curve::{rate_curve, Gap, RateCurve, Sample};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("delta = {delta} outside [{lo}, {hi}]")]
    DeltaOutOfRange { delta: f64, lo: f64, hi: f64 },
    #[error("{bound:?} does not apply to {family}")]
    NotApplicable { bound: BoundKind, family: String },
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("no admissible root for the {what} system")]
    NoAdmissibleRoot { what: &'static str },
    #[error("several admissible roots for the {what} system: {roots:?}")]
    AmbiguousRoots { what: &'static str, roots: Vec<f64> },
    #[error("empty delta grid")]
    EmptyGrid,
    #[error("delta grid is not strictly increasing")]
    UnsortedGrid,
}

/// The rate bounds the crate evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundKind {
    Gv,
    GvMr,
    SpherePacking,
    ConstantWeightGv,
    KolesnikKrachkovsky,
    Lee,
    Capacity,
}

impl BoundKind {
    pub const ALL: [BoundKind; 7] = [
        BoundKind::Gv,
        BoundKind::GvMr,
        BoundKind::SpherePacking,
        BoundKind::ConstantWeightGv,
        BoundKind::KolesnikKrachkovsky,
        BoundKind::Lee,
        BoundKind::Capacity,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            BoundKind::Gv => "gv",
            BoundKind::GvMr => "gvmr",
            BoundKind::SpherePacking => "sp",
            BoundKind::ConstantWeightGv => "cw",
            BoundKind::KolesnikKrachkovsky => "kk",
            BoundKind::Lee => "lee",
            BoundKind::Capacity => "cap",
        }
    }

    pub fn from_cli_name(s: &str) -> Option<BoundKind> {
        BoundKind::ALL.into_iter().find(|b| b.cli_name() == s)
    }

    /// Which (family, ρ-mode) pairs each bound is defined for.
    pub fn applies_to(self, family: &SpaceFamily, mode: RhoMode) -> bool {
        let kind = family.kind();
        let optimizable = matches!(kind, SpaceKind::PosSimplex | SpaceKind::InvSimplex);
        if mode == RhoMode::Optimized && !optimizable {
            return false;
        }
        match self {
            BoundKind::Gv | BoundKind::Capacity => true,
            BoundKind::GvMr => matches!(kind, SpaceKind::StdSimplex | SpaceKind::PosSimplex | SpaceKind::InvSimplex | SpaceKind::Hypercube),
            BoundKind::SpherePacking => kind == SpaceKind::StdSimplex,
            BoundKind::ConstantWeightGv => kind == SpaceKind::StdSimplex && family.rho().is_some_and(|r| r > 1.0),
            BoundKind::KolesnikKrachkovsky => optimizable,
            BoundKind::Lee => family.q() == Some(4) && kind == SpaceKind::Hypercube,
        }
    }
}

/// Whether the dimension ratio is the family's own or optimized per `δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RhoMode {
    Fixed,
    Optimized,
}

fn out_of_range(delta: f64, lo: f64, hi: f64) -> BoundsError {
    BoundsError::DeltaOutOfRange { delta, lo, hi }
}

/// Largest meaningful `δ`: 2 for simplices, `q − 1` for hypercubes.
pub fn diameter(family: &SpaceFamily) -> f64 {
    match family.q() {
        Some(q) => q as f64 - 1.0,
        None => 2.0,
    }
}

fn check_delta(family: &SpaceFamily, delta: f64) -> Result<(), BoundsError> {
    let hi = diameter(family);
    if !(delta.is_finite() && (0.0..=hi).contains(&delta)) {
        return Err(out_of_range(delta, 0.0, hi));
    }
    Ok(())
}

/// `Cap(S) = lim log₂|S_n| / n`.
pub fn capacity(family: &SpaceFamily) -> Result<f64, BoundsError> {
    family.validate()?;
    Ok(match *family {
        SpaceFamily::StdSimplex { rho } => (1.0 + rho) * h2(rho / (1.0 + rho)),
        SpaceFamily::StdSimplexZeros { rho, tau } => rho * h2(tau / rho) + h2(rho - tau),
        SpaceFamily::PosSimplex { rho } | SpaceFamily::InvSimplex { rho } => h2(rho),
        SpaceFamily::PosSimplexOnes { rho, tau } => {
            let rest = if rho < 1.0 { (1.0 - rho) * h2((rho - tau) / (1.0 - rho)) } else { 0.0 };
            rho * h2(tau / rho) + rest
        }
        SpaceFamily::Hypercube { q } => (q as f64).log2(),
        SpaceFamily::HypercubeZeros { q, tau } => (1.0 - tau) * ((q - 1) as f64).log2() + h2(tau),
    })
}

/// The interior critical point of the family's reduced pair system, from
/// the closed forms. Coordinates follow `family.reduced_labels()`.
pub fn closed_form_point(family: &SpaceFamily, delta: f64) -> Result<Vec<f64>, BoundsError> {
    closed_form_point_with(family, delta, &Tolerances::default())
}

pub fn closed_form_point_with(family: &SpaceFamily, delta: f64, tol: &Tolerances) -> Result<Vec<f64>, BoundsError> {
    family.validate()?;
    match *family {
        SpaceFamily::StdSimplex { rho } => Ok(std_point(rho, delta)),
        SpaceFamily::PosSimplex { rho } | SpaceFamily::InvSimplex { rho } => Ok(pos_point(rho, delta)),
        SpaceFamily::StdSimplexZeros { rho, tau } => std_zeros_point(rho, tau, delta, tol),
        SpaceFamily::PosSimplexOnes { rho, tau } => pos_ones_point(rho, tau, delta, tol),
        SpaceFamily::Hypercube { q } => hypercube_point(q, delta, tol),
        SpaceFamily::HypercubeZeros { q, tau } => hypercube_zeros_point(q, tau, delta, tol),
    }
}

/// Index of the distance variable in the reduced system.
fn distance_index(family: &SpaceFamily) -> usize {
    if family.kind().is_hypercube() {
        1
    } else {
        2
    }
}

fn point_rate(family: &SpaceFamily, point: &[f64], delta: f64) -> f64 {
    crate::acsv::rate_exponent(point, &family.direction(delta))
}

/// `T̃(S, δ)`: `Cap` at `δ = 0`, `2·Cap` from the plateau on, and the
/// critical rate in between.
pub fn ball_exponent(family: &SpaceFamily, delta: f64) -> Result<f64, BoundsError> {
    check_delta(family, delta)?;
    let cap = capacity(family)?;
    if delta == 0.0 {
        return Ok(cap);
    }
    if matches!(family.kind(), SpaceKind::StdSimplexZeros | SpaceKind::PosSimplexOnes) {
        // the closed form reports z > 1 past the plateau, so no scan is needed
        return match closed_form_point(family, delta) {
            Ok(p) if p[2] < 1.0 => Ok(point_rate(family, &p, delta)),
            Ok(_) => Ok(2.0 * cap),
            Err(e) => {
                if delta >= numeric_plateau(family)? {
                    return Ok(2.0 * cap);
                }
                // root scans can miss the branch near 0 at tiny delta
                log::debug!("closed form failed at delta {delta} ({e}); falling back to Newton");
                let problem = crate::acsv::CriticalProblem::new(family.reduced_denominator(), family.direction(delta))
                    .expect("reduced denominators are well formed");
                crate::acsv::solve_critical_point(&problem, None).map(|s| s.rate).map_err(|_| e)
            }
        };
    }
    if delta >= gv_delta_max(family)? {
        return Ok(2.0 * cap);
    }
    let point = closed_form_point(family, delta)?;
    Ok(point_rate(family, &point, delta))
}

/// Plateau onset of `T̃` for the constrained simplex families, where the
/// distance coordinate of the critical point reaches 1.
fn numeric_plateau(family: &SpaceFamily) -> Result<f64, BoundsError> {
    let tol = Tolerances::default();
    let k = distance_index(family);
    // z(δ) − 1, with "no admissible point" read as past the plateau
    let g = |d: f64| match closed_form_point_with(family, d, &tol) {
        Ok(p) => p[k] - 1.0,
        Err(_) => 1.0,
    };
    let mut lo = 1e-3;
    if g(lo) >= 0.0 {
        return Err(BoundsError::NoAdmissibleRoot { what: "plateau scan" });
    }
    let step = 1.0 / 64.0;
    let mut hi = lo;
    while hi < 2.0 {
        let next = (hi + step).min(2.0);
        if g(next) >= 0.0 {
            lo = hi;
            hi = next;
            return Ok(bisect(&g, lo, hi).unwrap_or(hi));
        }
        hi = next;
    }
    Ok(2.0)
}

/// `δ` from which `T̃ = 2·Cap` (the GV bound is zero).
pub fn gv_delta_max(family: &SpaceFamily) -> Result<f64, BoundsError> {
    family.validate()?;
    Ok(match *family {
        SpaceFamily::StdSimplex { rho } => 2.0 * (1.0 + rho) / (2.0 + rho),
        SpaceFamily::PosSimplex { rho } | SpaceFamily::InvSimplex { rho } => 2.0 * (1.0 - rho) / (2.0 - rho),
        SpaceFamily::Hypercube { q } => {
            let q = q as f64;
            (q * q - 1.0) / (3.0 * q)
        }
        SpaceFamily::HypercubeZeros { q, tau } => {
            let q = q as f64;
            q * (1.0 - tau) * (1.0 - (1.0 - tau) * (2.0 * q - 1.0) / (3.0 * (q - 1.0)))
        }
        SpaceFamily::StdSimplexZeros { .. } | SpaceFamily::PosSimplexOnes { .. } => numeric_plateau(family)?,
    })
}

/// `δ` beyond which `kind` is identically zero (or undefined, for the
/// comparison curves with a restricted range).
pub fn delta_max(family: &SpaceFamily, kind: BoundKind, mode: RhoMode) -> Result<f64, BoundsError> {
    if !kind.applies_to(family, mode) {
        return Err(BoundsError::NotApplicable { bound: kind, family: format!("{family:?}") });
    }
    Ok(match (kind, mode) {
        (BoundKind::Gv, RhoMode::Fixed) => gv_delta_max(family)?,
        (BoundKind::Gv, RhoMode::Optimized) => 1.0,
        (BoundKind::GvMr, RhoMode::Optimized) => 2.0,
        (BoundKind::GvMr, RhoMode::Fixed) => match *family {
            SpaceFamily::StdSimplex { .. } => 2.0,
            SpaceFamily::PosSimplex { rho } | SpaceFamily::InvSimplex { rho } => 2.0 * (1.0 - rho),
            SpaceFamily::Hypercube { q } => {
                let q = q as f64;
                3.0 * q * (q - 1.0) / (4.0 * (2.0 * q - 1.0))
            }
            _ => unreachable!("checked by applies_to"),
        },
        (BoundKind::ConstantWeightGv, _) => {
            let rho = family.rho().unwrap();
            2.0 * (rho - 1.0) / rho
        }
        (BoundKind::KolesnikKrachkovsky, _) => 0.5,
        (BoundKind::Lee, _) => 1.0,
        (BoundKind::SpherePacking | BoundKind::Capacity, _) => {
            return Err(BoundsError::NotApplicable { bound: kind, family: "(no zero crossing)".into() })
        }
    })
}

/// `2·Cap(S) − T̃(S, δ)`.
pub fn gv_rate(family: &SpaceFamily, delta: f64) -> Result<f64, BoundsError> {
    Ok(2.0 * capacity(family)? - ball_exponent(family, delta)?)
}

/// A GV-MR evaluation: the rate, the optimal constraint fraction and
/// supporting values (`lambda1`, the coupled coordinates, ...).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MrPoint {
    pub rate: f64,
    pub tau: f64,
    pub aux: Vec<(String, f64)>,
}

impl MrPoint {
    pub fn aux(&self, key: &str) -> Option<f64> {
        self.aux.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }
}

fn aux(pairs: &[(&str, f64)]) -> Vec<(String, f64)> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// `δ(λ₁)` for the positive simplex at fixed `ρ`; increasing from 0 to `2(1−ρ)`.
pub fn pos_delta_of_lambda(rho: f64, l: f64) -> f64 {
    2.0 * l * rho * (1.0 - rho) / (rho * l + (1.0 - rho) * (1.0 - l * l))
}

/// Inverts an increasing map `λ ↦ δ` on `(0, 1)`.
fn invert_lambda(delta: f64, map: impl Fn(f64) -> f64) -> Result<f64, BoundsError> {
    let f = |l: f64| map(l) - delta;
    bisect(&f, 1e-15, 1.0 - 1e-15).ok_or(BoundsError::NoAdmissibleRoot { what: "lambda inversion" })
}

/// Rate of a constrained family at `(τ, δ)` together with the coupled
/// coordinates of both systems (`w_cap`, `w_ball`).
fn constrained_rate(sub: &SpaceFamily, delta: f64) -> Result<(f64, Vec<(String, f64)>), BoundsError> {
    let rate = 2.0 * capacity(sub)? - ball_exponent(sub, delta)?;
    let mut extra = Vec::new();
    let interior = delta > 0.0 && rate > 0.0;
    if interior {
        let p = closed_form_point(sub, delta)?;
        let w_ball = *p.last().unwrap();
        let w_cap = match *sub {
            SpaceFamily::StdSimplexZeros { rho, tau } => std_zeros_capacity_w(rho, tau),
            SpaceFamily::PosSimplexOnes { rho, tau } => pos_ones_capacity_w(rho, tau),
            SpaceFamily::HypercubeZeros { q, tau } => hypercube_zeros_capacity_w(q, tau),
            _ => unreachable!(),
        };
        extra = aux(&[("w_cap", w_cap), ("w_ball", w_ball)]);
    }
    Ok((rate, extra))
}

/// GV-MR bound at fixed `ρ` (or `q`), with the optimal `τ`.
///
/// Past the family's MR `δ_max` the rate is 0 and `aux` carries `plateau = 1`.
pub fn gvmr_rate(family: &SpaceFamily, delta: f64) -> Result<MrPoint, BoundsError> {
    if !BoundKind::GvMr.applies_to(family, RhoMode::Fixed) {
        return Err(BoundsError::NotApplicable { bound: BoundKind::GvMr, family: format!("{family:?}") });
    }
    family.validate()?;
    check_delta(family, delta)?;
    let dmax = delta_max(family, BoundKind::GvMr, RhoMode::Fixed)?;
    let tol = Tolerances::default();
    match *family {
        SpaceFamily::StdSimplex { rho } => {
            if delta >= dmax {
                return Ok(MrPoint { rate: 0.0, tau: rho, aux: aux(&[("plateau", 1.0)]) });
            }
            let l1 = if delta == 0.0 {
                0.0
            } else {
                let a = rho * (2.0 - delta);
                (-a + (a * a + 4.0 * delta * delta).sqrt()) / (2.0 * delta)
            };
            let tau = rho * rho / (1.0 + rho - l1);
            let sub = SpaceFamily::StdSimplexZeros { rho, tau };
            let (rate, mut extra) = constrained_rate(&sub, delta)?;
            extra.insert(0, ("lambda1".into(), l1));
            Ok(MrPoint { rate, tau, aux: extra })
        }
        SpaceFamily::PosSimplex { rho } | SpaceFamily::InvSimplex { rho } => {
            if delta >= dmax {
                return Ok(MrPoint { rate: 0.0, tau: rho, aux: aux(&[("plateau", 1.0)]) });
            }
            let l1 = if delta == 0.0 { 0.0 } else { invert_lambda(delta, |l| pos_delta_of_lambda(rho, l))? };
            let tau = rho * rho / (1.0 - l1 * (1.0 - rho));
            let sub = SpaceFamily::PosSimplexOnes { rho, tau };
            let (rate, mut extra) = constrained_rate(&sub, delta)?;
            extra.insert(0, ("lambda1".into(), l1));
            Ok(MrPoint { rate, tau, aux: extra })
        }
        SpaceFamily::Hypercube { q } => {
            let qf = q as f64;
            if delta == 0.0 {
                return Ok(MrPoint { rate: qf.log2(), tau: 1.0 / qf, aux: vec![] });
            }
            if delta >= dmax {
                return Ok(MrPoint { rate: 0.0, tau: (qf + 1.0) / (4.0 * qf - 2.0), aux: aux(&[("plateau", 1.0)]) });
            }
            let (y, w, tau) = hypercube_mr_point(q, delta, &tol)?;
            let sub = SpaceFamily::HypercubeZeros { q, tau };
            let (rate, mut extra) = constrained_rate(&sub, delta)?;
            extra.insert(0, ("y".into(), y));
            extra.insert(1, ("w".into(), w));
            Ok(MrPoint { rate, tau, aux: extra })
        }
        _ => unreachable!("checked by applies_to"),
    }
}

/// GV bound of the positive (or inverted) simplex at the best `ρ` for `δ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptRho {
    pub rate: f64,
    pub rho: f64,
    /// `(ρ/(1−ρ))² − y*`, zero at an interior optimum.
    pub residual: f64,
}

/// The optimal dimension ratio for the GV bound of the positive simplex.
pub fn gv_rho_opt(delta: f64) -> f64 {
    (3.0 * (2.0 - delta) - (9.0 * delta * delta - 4.0 * delta + 4.0).sqrt()) / 8.0
}

pub fn gv_rate_optimized_rho(delta: f64) -> Result<OptRho, BoundsError> {
    if !(0.0..=2.0).contains(&delta) {
        return Err(out_of_range(delta, 0.0, 2.0));
    }
    let rho = gv_rho_opt(delta);
    if rho <= 0.0 {
        return Ok(OptRho { rate: 0.0, rho: 0.0, residual: 0.0 });
    }
    let fam = SpaceFamily::PosSimplex { rho };
    let rate = gv_rate(&fam, delta)?;
    let residual = if delta > 0.0 && delta < gv_delta_max(&fam)? {
        let y1 = rho / (1.0 - rho);
        y1 * y1 - pos_point(rho, delta)[1]
    } else {
        0.0
    };
    Ok(OptRho { rate, rho, residual })
}

/// Jointly optimal `(ρ, τ)` for the GV-MR bound of the positive simplex,
/// parameterized by `λ₁ ∈ [0, 1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptRhoMr {
    pub rate: f64,
    pub rho: f64,
    pub tau: f64,
    pub lambda1: f64,
    pub delta: f64,
}

pub fn mr_rho_opt(l1: f64) -> f64 {
    let s = (1.0 - l1).sqrt();
    2.0 * s / (3.0 * s + (1.0 + 3.0 * l1).sqrt())
}

/// `(ρ_opt, τ_opt, δ)` as functions of `λ₁`.
pub fn mr_opt_parameters(l1: f64) -> (f64, f64, f64) {
    let rho = mr_rho_opt(l1);
    let tau = rho * rho / (1.0 - l1 * (1.0 - rho));
    (rho, tau, pos_delta_of_lambda(rho, l1))
}

pub fn gvmr_optimized_rho_from_lambda(l1: f64) -> Result<OptRhoMr, BoundsError> {
    if !(0.0..1.0).contains(&l1) {
        return Err(out_of_range(l1, 0.0, 1.0));
    }
    let (rho, tau, delta) = mr_opt_parameters(l1);
    let sub = SpaceFamily::PosSimplexOnes { rho, tau };
    let rate = 2.0 * capacity(&sub)? - ball_exponent(&sub, delta)?;
    Ok(OptRhoMr { rate, rho, tau, lambda1: l1, delta })
}

pub fn gvmr_rate_optimized_rho(delta: f64) -> Result<OptRhoMr, BoundsError> {
    if !(0.0..=2.0).contains(&delta) {
        return Err(out_of_range(delta, 0.0, 2.0));
    }
    if delta >= 2.0 {
        return Ok(OptRhoMr { rate: 0.0, rho: 0.0, tau: 0.0, lambda1: 1.0, delta });
    }
    let l1 = if delta == 0.0 { 0.0 } else { invert_lambda(delta, |l| mr_opt_parameters(l).2)? };
    let mut out = gvmr_optimized_rho_from_lambda(l1)?;
    out.delta = delta;
    Ok(out)
}

/// Closed-form comparison curves and the capacity line.
pub fn comparison_rate(kind: BoundKind, family: &SpaceFamily, delta: f64) -> Result<f64, BoundsError> {
    let mode = if kind == BoundKind::KolesnikKrachkovsky { RhoMode::Optimized } else { RhoMode::Fixed };
    if !kind.applies_to(family, mode) && !kind.applies_to(family, RhoMode::Fixed) {
        return Err(BoundsError::NotApplicable { bound: kind, family: format!("{family:?}") });
    }
    family.validate()?;
    match kind {
        BoundKind::SpherePacking => {
            check_delta(family, delta)?;
            let rho = family.rho().unwrap();
            let a = 1.0 + delta / 2.0 + rho;
            let b = delta / 2.0 + rho;
            Ok(a * h2(rho / a) - b * h2(rho / b))
        }
        BoundKind::ConstantWeightGv => {
            check_delta(family, delta)?;
            let rho = family.rho().unwrap();
            let d1 = ((rho - 1.0) / rho).min(delta / 2.0);
            let t = rho * h2(1.0 / rho) + h2(d1) + (rho - 1.0) * h2(d1 / (rho - 1.0));
            Ok(2.0 * rho * h2(1.0 / rho) - t)
        }
        BoundKind::KolesnikKrachkovsky => {
            if !(0.0..=0.5).contains(&delta) {
                return Err(out_of_range(delta, 0.0, 0.5));
            }
            Ok(1.0 - h2(delta))
        }
        BoundKind::Lee => {
            if !(0.0..=1.0).contains(&delta) {
                return Err(out_of_range(delta, 0.0, 1.0));
            }
            Ok(crate::entropy::xlog2x(2.0 - delta) + crate::entropy::xlog2x(delta))
        }
        BoundKind::Capacity => capacity(family),
        BoundKind::Gv | BoundKind::GvMr => {
            Err(BoundsError::NotApplicable { bound: kind, family: "not a comparison curve".into() })
        }
    }
}
