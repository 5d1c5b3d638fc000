use serde::{Deserialize, Serialize};

use super::*;

/// One point on a rate curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub delta: f64,
    pub rate: f64,
    pub aux: Vec<(String, f64)>,
}

/// A grid value where the bound is undefined, with the reason.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gap {
    pub delta: f64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateCurve {
    pub family: SpaceFamily,
    pub bound: BoundKind,
    pub mode: RhoMode,
    pub samples: Vec<Sample>,
    pub gaps: Vec<Gap>,
}

fn sample(family: &SpaceFamily, bound: BoundKind, mode: RhoMode, delta: f64) -> Result<Sample, BoundsError> {
    let (rate, aux) = match (bound, mode) {
        (BoundKind::Gv, RhoMode::Fixed) => (gv_rate(family, delta)?, vec![]),
        (BoundKind::Gv, RhoMode::Optimized) => {
            let o = gv_rate_optimized_rho(delta)?;
            (o.rate, aux(&[("rho_opt", o.rho), ("residual", o.residual)]))
        }
        (BoundKind::GvMr, RhoMode::Fixed) => {
            let m = gvmr_rate(family, delta)?;
            let mut a = vec![("tau_opt".to_string(), m.tau)];
            a.extend(m.aux);
            (m.rate, a)
        }
        (BoundKind::GvMr, RhoMode::Optimized) => {
            let o = gvmr_rate_optimized_rho(delta)?;
            (o.rate, aux(&[("rho_opt", o.rho), ("tau_opt", o.tau), ("lambda1", o.lambda1)]))
        }
        _ => (comparison_rate(bound, family, delta)?, vec![]),
    };
    Ok(Sample { delta, rate, aux })
}

/// Evaluates `bound` on a strictly increasing `δ` grid. Per-point failures
/// (out of a comparison curve's range, no admissible root) become gaps.
pub fn rate_curve(family: &SpaceFamily, bound: BoundKind, mode: RhoMode, deltas: &[f64]) -> Result<RateCurve, BoundsError> {
    if deltas.is_empty() {
        return Err(BoundsError::EmptyGrid);
    }
    if deltas.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(BoundsError::UnsortedGrid);
    }
    if !bound.applies_to(family, mode) {
        return Err(BoundsError::NotApplicable { bound, family: format!("{family:?}") });
    }
    family.validate()?;
    let mut samples = Vec::with_capacity(deltas.len());
    let mut gaps = Vec::new();
    for &d in deltas {
        match sample(family, bound, mode, d) {
            Ok(s) => samples.push(s),
            Err(e) => {
                log::debug!("{} at delta {d}: {e}", bound.cli_name());
                gaps.push(Gap { delta: d, reason: e.to_string() });
            }
        }
    }
    Ok(RateCurve { family: *family, bound, mode, samples, gaps })
}
