use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{CountTable, Instance, OracleError};
use crate::family::SpaceKind;

type Key = (i32, i32, i32, i32, i32, i32);

/// Memoized truncation recursions, one memo per kind.
///
/// Every family drops the last coordinate of both vectors:
/// the simplices sum over the last entries `(u_r, v_r)`, the inverted simplex
/// splits by which of `u_r`, `v_r` sits further from its upper bound, and
/// the hypercubes sum over the `q²` last-symbol pairs grouped by distance.
/// Out-of-range indices contribute 0.
#[derive(Debug)]
pub struct DpCounter {
    kind: SpaceKind,
    q: i32,
    cap: u32,
    memo: HashMap<Key, BigInt>,
}

impl DpCounter {
    pub fn new(kind: SpaceKind, q: u32, cap: u32) -> DpCounter {
        DpCounter { kind, q: q as i32, cap, memo: HashMap::new() }
    }

    pub fn for_instance(instance: &Instance, cap: u32) -> DpCounter {
        DpCounter::new(instance.kind, instance.q, cap)
    }

    /// `N(instance, s)`.
    pub fn count(&mut self, instance: &Instance, s: u32) -> Result<BigInt, OracleError> {
        instance.check()?;
        if instance.kind != self.kind || (instance.kind.is_hypercube() && instance.q as i32 != self.q) {
            return Err(OracleError::InvalidInstance("instance does not match this counter".into()));
        }
        let sh = instance.shape;
        let n = sh.n1.max(sh.n2);
        if n > self.cap {
            return Err(OracleError::DpCap { n, cap: self.cap });
        }
        let (p1, p2) = if self.kind.is_constrained() { (sh.p1 as i32, sh.p2 as i32) } else { (0, 0) };
        let key = (sh.n1 as i32, sh.n2 as i32, sh.r as i32, s as i32, p1, p2);
        Ok(match self.kind {
            SpaceKind::Hypercube | SpaceKind::HypercubeZeros => self.cube(key.0, key.3, p1, p2),
            SpaceKind::InvSimplex => self.inverted(key.0, key.1, key.2, key.3),
            _ => self.simplex(key),
        })
    }

    /// Counts for every distance up to the instance's maximum.
    pub fn table(&mut self, instance: &Instance) -> Result<CountTable, OracleError> {
        let mut counts = std::collections::BTreeMap::new();
        for s in 0..=instance.max_distance() {
            let c = self.count(instance, s)?;
            if !c.is_zero() {
                counts.insert(s, c);
            }
        }
        Ok(CountTable { instance: *instance, counts })
    }

    fn simplex(&mut self, key: Key) -> BigInt {
        let (n1, n2, r, s, p1, p2) = key;
        if n1 < 0 || n2 < 0 || s < 0 || p1 < 0 || p2 < 0 || r < 0 {
            return BigInt::zero();
        }
        if r == 0 {
            return if n1 == 0 && n2 == 0 && s == 0 && p1 == 0 && p2 == 0 { BigInt::one() } else { BigInt::zero() };
        }
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (min, marked) = match self.kind {
            SpaceKind::StdSimplex => (0, None),
            SpaceKind::StdSimplexZeros => (0, Some(0)),
            SpaceKind::PosSimplex => (1, None),
            SpaceKind::PosSimplexOnes => (1, Some(1)),
            _ => unreachable!(),
        };
        let hit = |x: i32| -> i32 { (marked == Some(x)) as i32 };
        let mut acc = BigInt::zero();
        for u in min..=n1 {
            for v in min..=n2 {
                let d = (u - v).abs();
                if d > s {
                    continue;
                }
                acc += self.simplex((n1 - u, n2 - v, r - 1, s - d, p1 - hit(u), p2 - hit(v)));
            }
        }
        self.memo.insert(key, acc.clone());
        acc
    }

    /// Vectors `1 ≤ u₁ < … < u_r ≤ n₁` against `1 ≤ v₁ < … < v_r ≤ n₂`.
    fn inverted(&mut self, n1: i32, n2: i32, r: i32, s: i32) -> BigInt {
        if n1 < 0 || n2 < 0 || s < 0 || r < 0 {
            return BigInt::zero();
        }
        if r == 0 {
            return if s == 0 { BigInt::one() } else { BigInt::zero() };
        }
        let key = (n1, n2, r, s, 0, 0);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut acc = BigInt::zero();
        // u_r = n1+1-i, v_r = n2+1-i
        for i in 1..=n1.min(n2) {
            acc += self.inverted(n1 - i, n2 - i, r - 1, s - (n2 - n1).abs());
        }
        // u_r = n1+1-i, v_r = n2+1-i-j
        for i in 1..=n1 {
            for j in 1..=(n2 - i) {
                acc += self.inverted(n1 - i, n2 - i - j, r - 1, s - (n1 - n2 + j).abs());
            }
        }
        // u_r = n1+1-i-j, v_r = n2+1-i
        for i in 1..=n2 {
            for j in 1..=(n1 - i) {
                acc += self.inverted(n1 - i - j, n2 - i, r - 1, s - (n1 - n2 - j).abs());
            }
        }
        self.memo.insert(key, acc.clone());
        acc
    }

    fn cube(&mut self, n: i32, s: i32, p1: i32, p2: i32) -> BigInt {
        if n < 0 || s < 0 || p1 < 0 || p2 < 0 {
            return BigInt::zero();
        }
        if n == 0 {
            return if s == 0 && p1 == 0 && p2 == 0 { BigInt::one() } else { BigInt::zero() };
        }
        let key = (n, 0, 0, s, p1, p2);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let q = self.q;
        let mut acc = BigInt::zero();
        if self.kind == SpaceKind::Hypercube {
            acc += self.cube(n - 1, s, 0, 0) * q;
            for j in 1..q {
                acc += self.cube(n - 1, s - j, 0, 0) * (2 * (q - j));
            }
        } else {
            acc += self.cube(n - 1, s, p1 - 1, p2 - 1);
            for j in 1..q {
                acc += self.cube(n - 1, s - j, p1 - 1, p2);
                acc += self.cube(n - 1, s - j, p1, p2 - 1);
            }
            acc += self.cube(n - 1, s, p1, p2) * (q - 1);
            for j in 1..q {
                acc += self.cube(n - 1, s - j, p1, p2) * (2 * (q - 1 - j));
            }
        }
        self.memo.insert(key, acc.clone());
        acc
    }
}

/// `N(instance, s)` from a fresh memo.
pub fn count_pairs_dp(instance: &Instance, s: u32, cap: u32) -> Result<BigInt, OracleError> {
    DpCounter::for_instance(instance, cap).count(instance, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_cube_distance_one() {
        let inst = Instance::hypercube(SpaceKind::Hypercube, 2, 2);
        assert_eq!(count_pairs_dp(&inst, 1, 40).unwrap(), BigInt::from(8));
    }

    #[test]
    fn inverted_diagonal() {
        let inst = Instance::simplex(SpaceKind::InvSimplex, 7, 7, 3);
        assert_eq!(count_pairs_dp(&inst, 0, 40).unwrap(), BigInt::from(35));
    }

    #[test]
    fn cap_is_enforced() {
        let inst = Instance::simplex(SpaceKind::StdSimplex, 41, 41, 2);
        assert!(matches!(count_pairs_dp(&inst, 0, 40), Err(OracleError::DpCap { .. })));
    }
}
