//! Exact finite-`n` ground truth.
//!
//! Three independent ways to get the pair counts `N(n₁,n₂,r,s[,p₁,p₂])`:
//! brute force over enumerated spaces ([`count_pairs_bruteforce`]), memoized
//! truncation recursions ([`count_pairs_dp`]) and power-series coefficients
//! of the pair generating function ([`series_counts`]). Total balls at
//! `n = 40` use the layered engines in [`total_ball`].

mod ball;
mod brute;
mod dp;
mod enumerate;
mod series;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{Shape, SpaceFamily, SpaceKind};

pub use ball::{empirical_exponent, log2_big, total_ball};
pub use brute::{count_pairs_bruteforce, pair_histogram, FeatureHistogram};
pub use dp::{count_pairs_dp, DpCounter};
pub use enumerate::{binomial, enumerate_space, is_member, space_size};
pub use series::{series_counts, PairSeries};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("space of size {size} exceeds the enumeration cap {cap}")]
    EnumerationCap { size: BigInt, cap: u64 },
    #[error("n = {n} exceeds the DP cap {cap}")]
    DpCap { n: u32, cap: u32 },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("no generating function for {0:?}")]
    NoGeneratingFunction(SpaceKind),
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
}

/// One space `S` at finite parameters. For hypercubes `r` is ignored and the
/// length is `n`; for simplices `q` is ignored. `p` counts zeros or ones in
/// the constrained families and is ignored elsewhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Space {
    pub kind: SpaceKind,
    pub n: u32,
    pub r: u32,
    pub q: u32,
    pub p: u32,
}

impl Space {
    pub fn simplex(kind: SpaceKind, n: u32, r: u32, p: u32) -> Space {
        Space { kind, n, r, q: 0, p }
    }

    pub fn hypercube(kind: SpaceKind, q: u32, n: u32, p: u32) -> Space {
        Space { kind, n, r: n, q, p }
    }

    /// Number of coordinates.
    pub fn dim(&self) -> u32 {
        if self.kind.is_hypercube() {
            self.n
        } else {
            self.r
        }
    }
}

/// A pair-count instance: a family kind, the alphabet size for hypercubes
/// and the shape `(n₁, n₂, r, p₁, p₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Instance {
    pub kind: SpaceKind,
    pub q: u32,
    pub shape: Shape,
}

impl Instance {
    pub fn simplex(kind: SpaceKind, n1: u32, n2: u32, r: u32) -> Instance {
        Instance { kind, q: 0, shape: Shape { n1, n2, r, p1: 0, p2: 0 } }
    }

    pub fn hypercube(kind: SpaceKind, q: u32, n: u32) -> Instance {
        Instance { kind, q, shape: Shape::hypercube(n) }
    }

    pub fn with_p(mut self, p1: u32, p2: u32) -> Instance {
        self.shape.p1 = p1;
        self.shape.p2 = p2;
        self
    }

    /// The diagonal instance of `family` at size `n`.
    pub fn of_family(family: &SpaceFamily, n: u32) -> Instance {
        Instance { kind: family.kind(), q: family.q().unwrap_or(0), shape: family.shape(n) }
    }

    pub fn left(&self) -> Space {
        self.side(self.shape.n1, self.shape.p1)
    }

    pub fn right(&self) -> Space {
        self.side(self.shape.n2, self.shape.p2)
    }

    fn side(&self, n: u32, p: u32) -> Space {
        let p = if self.kind.is_constrained() { p } else { 0 };
        if self.kind.is_hypercube() {
            Space::hypercube(self.kind, self.q, n, p)
        } else {
            Space::simplex(self.kind, n, self.shape.r, p)
        }
    }

    pub(crate) fn check(&self) -> Result<(), OracleError> {
        if self.kind.is_hypercube() {
            if self.q < 2 {
                return Err(OracleError::InvalidInstance(format!("hypercube needs q >= 2, got {}", self.q)));
            }
            if self.shape.n1 != self.shape.n2 {
                return Err(OracleError::InvalidInstance("hypercube pairs need equal lengths".into()));
            }
        }
        Ok(())
    }

    /// Largest achievable distance; counts vanish beyond it.
    pub fn max_distance(&self) -> u32 {
        let Shape { n1, n2, r, .. } = self.shape;
        match self.kind {
            SpaceKind::Hypercube | SpaceKind::HypercubeZeros => n1 * (self.q.saturating_sub(1)),
            SpaceKind::InvSimplex => r * n1.max(n2),
            _ => n1 + n2,
        }
    }
}

/// Exact counts `N(…, s)` of one instance, indexed by distance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountTable {
    pub instance: Instance,
    pub counts: BTreeMap<u32, BigInt>,
}

impl CountTable {
    pub fn get(&self, s: u32) -> BigInt {
        self.counts.get(&s).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigInt {
        self.counts.values().fold(BigInt::zero(), |a, b| a + b)
    }

    /// `Σ_{s ≤ d} N(…, s)`.
    pub fn cumulative(&self, d: u32) -> BigInt {
        self.counts.range(..=d).fold(BigInt::zero(), |a, (_, b)| a + b)
    }
}
