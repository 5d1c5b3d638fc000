use num_bigint::BigInt;

use super::{CountTable, Instance, OracleError};
use crate::family::{SpaceFamily, SpaceKind};
use crate::poly::{series_coeffs_box, BoxSeries};

/// A family member whose pair generating function does not depend on the
/// continuous parameters, used only to build `G/H`.
fn representative(kind: SpaceKind, q: u32) -> SpaceFamily {
    match kind {
        SpaceKind::StdSimplex => SpaceFamily::StdSimplex { rho: 1.0 },
        SpaceKind::StdSimplexZeros => SpaceFamily::StdSimplexZeros { rho: 1.0, tau: 0.5 },
        SpaceKind::PosSimplex => SpaceFamily::PosSimplex { rho: 0.5 },
        SpaceKind::PosSimplexOnes => SpaceFamily::PosSimplexOnes { rho: 0.5, tau: 0.25 },
        SpaceKind::InvSimplex => SpaceFamily::InvSimplex { rho: 0.5 },
        SpaceKind::Hypercube => SpaceFamily::Hypercube { q },
        SpaceKind::HypercubeZeros => SpaceFamily::HypercubeZeros { q, tau: 0.5 },
    }
}

/// Pair counts read off the power series of the pair generating function
/// over a box of exponents.
#[derive(Clone, Debug)]
pub struct PairSeries {
    family: SpaceFamily,
    series: BoxSeries,
}

impl PairSeries {
    /// Series covering `n₁, n₂ ≤ max_n`, `r ≤ max_r`, `p ≤ max_p` and all
    /// distances those shapes can reach.
    pub fn new(kind: SpaceKind, q: u32, max_n: u32, max_r: u32, max_p: u32) -> Result<PairSeries, OracleError> {
        let family = representative(kind, q);
        let (g, h) = family.pair_generating_function().ok_or(OracleError::NoGeneratingFunction(kind))?;
        let bounds: Vec<u32> = match kind {
            SpaceKind::Hypercube => vec![max_n, max_n * (q - 1)],
            SpaceKind::HypercubeZeros => vec![max_n, max_n * (q - 1), max_p, max_p],
            SpaceKind::StdSimplex | SpaceKind::PosSimplex => vec![max_n, max_n, max_r, 2 * max_n],
            _ => vec![max_n, max_n, max_r, 2 * max_n, max_p, max_p],
        };
        let series = series_coeffs_box(&g, &h, &bounds)?;
        Ok(PairSeries { family, series })
    }

    /// `N(instance, s)`, or `None` outside the box.
    pub fn count(&self, instance: &Instance, s: u32) -> Option<BigInt> {
        let e = self.family.pair_exponent(&instance.shape, s)?;
        self.series.get(&e).cloned()
    }

    pub fn table(&self, instance: &Instance) -> Option<CountTable> {
        let mut counts = std::collections::BTreeMap::new();
        for s in 0..=instance.max_distance() {
            let c = self.count(instance, s)?;
            if c != BigInt::from(0) {
                counts.insert(s, c);
            }
        }
        Some(CountTable { instance: *instance, counts })
    }
}

/// `N(instance, s)` as a series coefficient (one-off; builds the series).
pub fn series_counts(instance: &Instance, s: u32) -> Result<BigInt, OracleError> {
    let sh = instance.shape;
    let series = PairSeries::new(instance.kind, instance.q, sh.n1.max(sh.n2), sh.r, sh.p1.max(sh.p2))?;
    series
        .count(instance, s)
        .ok_or_else(|| OracleError::InvalidInstance(format!("no series coefficient for {instance:?} at s = {s}")))
}
