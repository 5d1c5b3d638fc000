use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{OracleError, Space};
use crate::family::SpaceKind;

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Compositions of `m` into `k` positive parts.
pub(crate) fn compositions_count(m: i64, k: i64) -> BigInt {
    if k == 0 {
        return if m == 0 { BigInt::one() } else { BigInt::zero() };
    }
    binomial(m - 1, k - 1)
}

/// Closed-form `|S|`. Inconsistent parameters give 0.
pub fn space_size(space: &Space) -> BigInt {
    let n = space.n as i64;
    let r = space.r as i64;
    let p = space.p as i64;
    match space.kind {
        SpaceKind::StdSimplex => {
            if r == 0 {
                BigInt::from((n == 0) as u8)
            } else {
                binomial(n + r - 1, r - 1)
            }
        }
        SpaceKind::StdSimplexZeros => binomial(r, p) * compositions_count(n, r - p),
        SpaceKind::PosSimplex => compositions_count(n, r),
        // p ones, the other r-p parts at least 2
        SpaceKind::PosSimplexOnes => binomial(r, p) * compositions_count(n - p - (r - p), r - p),
        SpaceKind::InvSimplex => binomial(n, r),
        SpaceKind::Hypercube => BigInt::from(space.q).pow(space.n),
        SpaceKind::HypercubeZeros => {
            if space.q < 1 {
                return BigInt::zero();
            }
            binomial(n, p) * BigInt::from(space.q - 1).pow(space.n.saturating_sub(space.p))
        }
    }
}

/// Membership test straight from the definition of each space.
pub fn is_member(space: &Space, v: &[u32]) -> bool {
    let dim_ok = v.len() as u32 == space.dim();
    if !dim_ok {
        return false;
    }
    let sum: u64 = v.iter().map(|&x| x as u64).sum();
    let count = |t: u32| v.iter().filter(|&&x| x == t).count() as u32;
    match space.kind {
        SpaceKind::StdSimplex => sum == space.n as u64,
        SpaceKind::StdSimplexZeros => sum == space.n as u64 && count(0) == space.p,
        SpaceKind::PosSimplex => sum == space.n as u64 && v.iter().all(|&x| x >= 1),
        SpaceKind::PosSimplexOnes => sum == space.n as u64 && v.iter().all(|&x| x >= 1) && count(1) == space.p,
        SpaceKind::InvSimplex => {
            v.iter().all(|&x| x >= 1 && x <= space.n) && v.windows(2).all(|w| w[0] < w[1])
        }
        SpaceKind::Hypercube => v.iter().all(|&x| x < space.q),
        SpaceKind::HypercubeZeros => v.iter().all(|&x| x < space.q) && count(0) == space.p,
    }
}

/// All members of `space` in lexicographic order.
pub fn enumerate_space(space: &Space, cap: u64) -> Result<Vec<Vec<u32>>, OracleError> {
    let size = space_size(space);
    if size > BigInt::from(cap) {
        return Err(OracleError::EnumerationCap { size, cap });
    }
    let dim = space.dim() as usize;
    let mut out = Vec::new();
    let mut cur = vec![0u32; dim];
    match space.kind {
        SpaceKind::StdSimplex | SpaceKind::StdSimplexZeros => {
            sum_vectors(0, space.n, 0, &mut cur, &mut out);
        }
        SpaceKind::PosSimplex | SpaceKind::PosSimplexOnes => {
            sum_vectors(0, space.n, 1, &mut cur, &mut out);
        }
        SpaceKind::InvSimplex => increasing(0, 1, space.n, &mut cur, &mut out),
        SpaceKind::Hypercube | SpaceKind::HypercubeZeros => box_vectors(0, space.q, &mut cur, &mut out),
    }
    // constrained families are generated from their base space and filtered
    out.retain(|v| is_member(space, v));
    Ok(out)
}

fn sum_vectors(pos: usize, left: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let dim = cur.len();
    if pos == dim {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let rest = (dim - pos - 1) as u32 * min;
    if left < min + rest {
        return;
    }
    if pos + 1 == dim {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for x in min..=left - rest {
        cur[pos] = x;
        sum_vectors(pos + 1, left - x, min, cur, out);
    }
}

fn increasing(pos: usize, from: u32, n: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let dim = cur.len();
    if pos == dim {
        out.push(cur.clone());
        return;
    }
    let need = (dim - pos - 1) as u32;
    if from + need > n {
        return;
    }
    for x in from..=n - need {
        cur[pos] = x;
        increasing(pos + 1, x + 1, n, cur, out);
    }
}

fn box_vectors(pos: usize, q: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos == cur.len() {
        out.push(cur.clone());
        return;
    }
    for x in 0..q {
        cur[pos] = x;
        box_vectors(pos + 1, q, cur, out);
    }
}
