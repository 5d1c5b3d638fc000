//! Numerical tolerances and resource caps.

use serde::{Deserialize, Serialize};

/// Tolerances used by the solvers. The defaults are the ones every test in
/// the crate is calibrated against.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Newton stops once every equation is below this.
    pub newton: f64,
    /// A critical point is accepted when both residuals are below this.
    pub accept: f64,
    /// Scalar roots are polished until `|f|` is below this (or the bracket collapses).
    pub root_polish: f64,
    /// Step of the bracketing scan in scalar root finding.
    pub scan_step: f64,
    /// Iteration cap for a single Newton run.
    pub max_newton_iters: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { newton: 1e-12, accept: 1e-9, root_polish: 1e-13, scan_step: 1e-3, max_newton_iters: 200 }
    }
}

/// Limits on exact counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest space that `enumerate_space` will materialize.
    pub enumeration: u64,
    /// Largest `n₁`, `n₂` accepted by the counting DPs.
    pub dp_n: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { enumeration: 1_000_000, dp_n: 40 }
    }
}
