use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::enumerate::{enumerate_space, is_member};
use super::{CountTable, Instance, OracleError, Space};
use crate::family::SpaceKind;

fn flatten(list: &[Vec<u32>], dim: usize) -> Vec<i16> {
    let mut flat = Vec::with_capacity(list.len() * dim);
    for v in list {
        flat.extend(v.iter().map(|&x| x as i16));
    }
    flat
}

#[inline]
fn l1(a: &[i16], b: &[i16]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x - y).unsigned_abs() as usize).sum()
}

/// Histogram of `D(u, v)` over all `(u, v) ∈ left × right`, by direct double loop.
fn histogram(left: &[Vec<u32>], right: &[Vec<u32>], dim: usize, same: bool) -> Vec<u64> {
    let a = flatten(left, dim);
    let b = if same { a.clone() } else { flatten(right, dim) };
    let max = left.iter().chain(right).flat_map(|v| v.iter()).copied().max().unwrap_or(0) as usize;
    let mut hist = vec![0u64; dim * max + 1];
    if dim == 0 {
        hist[0] = (left.len() * right.len()) as u64;
        return hist;
    }
    if same {
        // ordered pairs: the diagonal once, each off-diagonal pair twice
        hist[0] += left.len() as u64;
        for i in 0..left.len() {
            let u = &a[i * dim..(i + 1) * dim];
            for j in i + 1..left.len() {
                hist[l1(u, &a[j * dim..(j + 1) * dim])] += 2;
            }
        }
    } else {
        for i in 0..left.len() {
            let u = &a[i * dim..(i + 1) * dim];
            for j in 0..right.len() {
                hist[l1(u, &b[j * dim..(j + 1) * dim])] += 1;
            }
        }
    }
    hist
}

fn to_table(instance: Instance, hist: &[u64]) -> CountTable {
    let counts = hist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(s, &c)| (s as u32, BigInt::from(c)))
        .collect();
    CountTable { instance, counts }
}

/// All counts `N(…, s)` of `instance` by enumerating both spaces.
///
/// Membership of every enumerated vector is re-checked with [`is_member`],
/// so the constrained counts do not depend on the enumerator's filtering.
pub fn pair_histogram(instance: &Instance, cap: u64) -> Result<CountTable, OracleError> {
    instance.check()?;
    let (ls, rs) = (instance.left(), instance.right());
    let mut left = enumerate_space(&ls, cap)?;
    left.retain(|v| is_member(&ls, v));
    let same = ls == rs;
    let right = if same {
        left.clone()
    } else {
        let mut r = enumerate_space(&rs, cap)?;
        r.retain(|v| is_member(&rs, v));
        r
    };
    let dim = ls.dim() as usize;
    Ok(to_table(*instance, &histogram(&left, &right, dim, same)))
}

/// `N(…, s)` by brute force.
pub fn count_pairs_bruteforce(instance: &Instance, s: u32, cap: u64) -> Result<BigInt, OracleError> {
    Ok(pair_histogram(instance, cap)?.get(s))
}

/// Brute-force histogram of an unconstrained space pair, split by the
/// constraint statistic of each side (number of zeros for the standard
/// simplex and hypercube, number of ones for the positive simplex).
///
/// One pass over `left × right` yields every `(p₁, p₂)` table at once, which
/// is what makes the exhaustive `Z₄⁸` check affordable.
#[derive(Clone, Debug)]
pub struct FeatureHistogram {
    pub constrained: SpaceKind,
    pub q: u32,
    pub n1: u32,
    pub n2: u32,
    pub r: u32,
    /// `(p₁, p₂) → histogram over s`.
    pub tables: BTreeMap<(u32, u32), Vec<u64>>,
}

impl FeatureHistogram {
    /// `constrained` is one of the three constrained kinds; the base space is
    /// enumerated and each vector's statistic is computed from its entries.
    pub fn build(constrained: SpaceKind, q: u32, n1: u32, n2: u32, r: u32, cap: u64) -> Result<Self, OracleError> {
        let (base, target) = match constrained {
            SpaceKind::StdSimplexZeros => (SpaceKind::StdSimplex, 0),
            SpaceKind::PosSimplexOnes => (SpaceKind::PosSimplex, 1),
            SpaceKind::HypercubeZeros => (SpaceKind::Hypercube, 0),
            other => return Err(OracleError::InvalidInstance(format!("{other:?} has no constraint statistic"))),
        };
        let space = |n: u32| {
            if base.is_hypercube() {
                Space::hypercube(base, q, n, 0)
            } else {
                Space::simplex(base, n, r, 0)
            }
        };
        if base.is_hypercube() && n1 != n2 {
            return Err(OracleError::InvalidInstance("hypercube pairs need equal lengths".into()));
        }
        let group = |n: u32| -> Result<BTreeMap<u32, Vec<Vec<u32>>>, OracleError> {
            let mut g: BTreeMap<u32, Vec<Vec<u32>>> = BTreeMap::new();
            for v in enumerate_space(&space(n), cap)? {
                let p = v.iter().filter(|&&x| x == target).count() as u32;
                g.entry(p).or_default().push(v);
            }
            Ok(g)
        };
        let left = group(n1)?;
        let right = if n1 == n2 { left.clone() } else { group(n2)? };
        let dim = space(n1).dim() as usize;
        let mut tables = BTreeMap::new();
        for (&p1, lv) in &left {
            for (&p2, rv) in &right {
                let same = n1 == n2 && p1 == p2;
                if n1 == n2 && p2 < p1 {
                    // mirror of an already computed block
                    let h: &Vec<u64> = &tables[&(p2, p1)];
                    tables.insert((p1, p2), h.clone());
                    continue;
                }
                tables.insert((p1, p2), histogram(lv, rv, dim, same));
            }
        }
        Ok(FeatureHistogram { constrained, q, n1, n2, r, tables })
    }

    /// The count table of the constrained instance with statistics `(p₁, p₂)`.
    pub fn table(&self, p1: u32, p2: u32) -> CountTable {
        let instance = Instance {
            kind: self.constrained,
            q: self.q,
            shape: crate::family::Shape { n1: self.n1, n2: self.n2, r: self.r, p1, p2 },
        };
        match self.tables.get(&(p1, p2)) {
            Some(h) => to_table(instance, h),
            None => CountTable { instance, counts: BTreeMap::new() },
        }
    }

    /// The unconstrained table, summed over all statistics.
    pub fn base_table(&self) -> CountTable {
        let kind = match self.constrained {
            SpaceKind::StdSimplexZeros => SpaceKind::StdSimplex,
            SpaceKind::PosSimplexOnes => SpaceKind::PosSimplex,
            _ => SpaceKind::Hypercube,
        };
        let len = self.tables.values().map(Vec::len).max().unwrap_or(0);
        let mut sum = vec![0u64; len];
        for h in self.tables.values() {
            for (s, &c) in h.iter().enumerate() {
                sum[s] += c;
            }
        }
        let instance = Instance {
            kind,
            q: self.q,
            shape: crate::family::Shape { n1: self.n1, n2: self.n2, r: self.r, p1: 0, p2: 0 },
        };
        to_table(instance, &sum)
    }
}
