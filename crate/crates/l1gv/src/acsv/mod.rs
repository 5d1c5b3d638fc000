//! Smooth critical points of rational generating functions.
//!
//! For `F = G/H` with coefficients `a_{n r}` along a direction `r`, the
//! exponential rate is `Φ = −Σ rᵢ log₂ zᵢ*` where `z*` is the positive
//! solution of
//!
//! ```text
//! H(z) = 0,    r_ℓ z_j ∂H/∂z_j = r_j z_ℓ ∂H/∂z_ℓ   (j < ℓ).
//! ```
//!
//! [`solve_critical_point`] finds it by damped Newton in log coordinates.

mod newton;
mod reduce;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::Tolerances;
use crate::poly::{PolyError, SparsePoly};

pub use newton::{plateau_direction, plateau_direction_with, solve_critical_point, solve_critical_point_with};
pub use reduce::{reduce_symmetric, reduce_symmetric_dividing, reduce_symmetric_joint, PairHypothesis};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AcsvError {
    #[error("H has zero constant term")]
    ZeroConstantTerm,
    #[error("direction has {got} components, H has {expected} variables")]
    DirectionLength { expected: usize, got: usize },
    #[error("direction component {index} is {value}; all components must be positive")]
    NonPositiveDirection { index: usize, value: f64 },
    #[error("no admissible critical point found; best residual {best_residual:e}")]
    NoConvergence { best_residual: f64 },
    #[error("residuals too large: H {residual_h:e}, proportionality {residual_prop:e}")]
    ResidualTooLarge { residual_h: f64, residual_prop: f64 },
    #[error("point has a non-positive coordinate")]
    NonPositivePoint,
    #[error("monomial {monomial:?} has unequal exponents at the paired positions")]
    HypothesisViolated { monomial: Vec<u32> },
    #[error("H is not invariant under swapping the paired variables")]
    NotSwapInvariant,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `H` together with the direction `r`; the last index plays the role of `z_ℓ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalProblem {
    pub h: SparsePoly,
    pub direction: Vec<f64>,
}

impl CriticalProblem {
    /// Checks `H(0) ≠ 0`, matching lengths and a strictly positive direction.
    pub fn new(h: SparsePoly, direction: Vec<f64>) -> Result<CriticalProblem, AcsvError> {
        if h.constant_term() == 0 {
            return Err(AcsvError::ZeroConstantTerm);
        }
        if direction.len() != h.num_vars() {
            return Err(AcsvError::DirectionLength { expected: h.num_vars(), got: direction.len() });
        }
        if let Some((index, &value)) = direction.iter().enumerate().find(|(_, &r)| !(r > 0.0 && r.is_finite())) {
            return Err(AcsvError::NonPositiveDirection { index, value });
        }
        Ok(CriticalProblem { h, direction })
    }

    pub fn dim(&self) -> usize {
        self.direction.len()
    }

    /// `(|H(z)|, max_j |r_ℓ A_j − r_j A_ℓ|)` with `A_j = z_j ∂H/∂z_j`.
    pub fn residuals(&self, z: &[f64]) -> (f64, f64) {
        residuals_of(&self.h, &self.direction, z)
    }
}

pub(crate) fn residuals_of(h: &SparsePoly, direction: &[f64], z: &[f64]) -> (f64, f64) {
    let l = direction.len() - 1;
    let a: Vec<f64> = (0..=l)
        .map(|j| z[j] * h.partial(j).expect("index in range").eval_unchecked(z))
        .collect();
    let prop = (0..l).map(|j| (direction[l] * a[j] - direction[j] * a[l]).abs()).fold(0.0, f64::max);
    (h.eval_unchecked(z).abs(), prop)
}

/// A verified positive critical point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalSolution {
    pub point: Vec<f64>,
    pub rate: f64,
    pub residual_h: f64,
    pub residual_prop: f64,
}

impl CriticalSolution {
    /// Re-evaluates both residuals at `point` and rejects it unless both are
    /// below `tol.accept` and every coordinate is positive.
    pub fn verify(problem: &CriticalProblem, point: Vec<f64>, tol: &Tolerances) -> Result<CriticalSolution, AcsvError> {
        if point.len() != problem.dim() {
            return Err(AcsvError::DirectionLength { expected: problem.dim(), got: point.len() });
        }
        if point.iter().any(|&z| !(z > 0.0 && z.is_finite())) {
            return Err(AcsvError::NonPositivePoint);
        }
        let (residual_h, residual_prop) = problem.residuals(&point);
        if !(residual_h < tol.accept && residual_prop < tol.accept) {
            return Err(AcsvError::ResidualTooLarge { residual_h, residual_prop });
        }
        let rate = rate_exponent(&point, &problem.direction);
        Ok(CriticalSolution { point, rate, residual_h, residual_prop })
    }
}

/// `Φ = −Σ rᵢ log₂ zᵢ`. Coordinates equal to 1 contribute exactly 0; for a
/// reduced system the doubled weight of a merged pair is already in `r`.
pub fn rate_exponent(point: &[f64], direction: &[f64]) -> f64 {
    -point
        .iter()
        .zip(direction)
        .filter(|(&z, _)| z != 1.0)
        .map(|(&z, &r)| r * z.log2())
        .sum::<f64>()
}

/// Centered difference of `Φ` in `r_index`, re-solving on both sides from
/// the central solution.
pub fn rate_partial_fd(problem: &CriticalProblem, index: usize, step: f64) -> Result<f64, AcsvError> {
    let center = solve_critical_point(problem, None)?;
    let side = |sign: f64| -> Result<f64, AcsvError> {
        let mut dir = problem.direction.clone();
        dir[index] += sign * step;
        let p = CriticalProblem::new(problem.h.clone(), dir)?;
        Ok(solve_critical_point(&p, Some(&center.point))?.rate)
    };
    Ok((side(1.0)? - side(-1.0)?) / (2.0 * step))
}

/// Which coordinates carry the constraint parameter in the single-space
/// (capacity) and pair (ball) systems, and how they enter the optimality
/// condition `(z_cap)^{2·cap_weight} = (z_ball)^{ball_weight}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TauCoupling {
    pub cap_index: usize,
    pub cap_weight: f64,
    pub ball_index: usize,
    pub ball_weight: f64,
}

impl TauCoupling {
    /// `(z*_ℓ)² = y*_m`: a single-space coordinate against its merged pair coordinate.
    pub fn squared(cap_index: usize, ball_index: usize) -> TauCoupling {
        TauCoupling { cap_index, cap_weight: 1.0, ball_index, ball_weight: 1.0 }
    }

    /// `w₁* = w*`: the constraint variable of the capacity system against the
    /// merged constraint variable of the ball system.
    pub fn linear(cap_index: usize, ball_index: usize) -> TauCoupling {
        TauCoupling { cap_index, cap_weight: 0.5, ball_index, ball_weight: 1.0 }
    }
}

/// `(z_cap)^{2·cap_weight} − (z_ball)^{ball_weight}`, zero at an interior
/// optimum of `2·Cap − T̃` over the coupled parameter.
pub fn mr_optimality_gap(cap: &CriticalSolution, ball: &CriticalSolution, coupling: TauCoupling) -> f64 {
    cap.point[coupling.cap_index].powf(2.0 * coupling.cap_weight) - ball.point[coupling.ball_index].powf(coupling.ball_weight)
}
