//! Layered total-ball counts `Σ_{s≤d} N(n, n, …, s)`, fast enough for `n = 40`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::enumerate::{binomial, compositions_count};
use super::{Instance, OracleError};
use crate::family::SpaceKind;

/// Dense `(a, b, s)` grid with `0 ≤ a, b ≤ n`, `0 ≤ s ≤ d`.
#[derive(Clone)]
struct Grid {
    n: usize,
    d: usize,
    v: Vec<BigInt>,
}

impl Grid {
    fn zeros(n: usize, d: usize) -> Grid {
        Grid { n, d, v: vec![BigInt::zero(); (n + 1) * (n + 1) * (d + 1)] }
    }

    #[inline]
    fn idx(&self, a: usize, b: usize, s: usize) -> usize {
        (a * (self.n + 1) + b) * (self.d + 1) + s
    }

    /// Zero outside the grid.
    #[inline]
    fn at(&self, a: isize, b: isize, s: isize) -> &BigInt {
        static ZERO: std::sync::OnceLock<BigInt> = std::sync::OnceLock::new();
        if a < 0 || b < 0 || s < 0 || a as usize > self.n || b as usize > self.n || s as usize > self.d {
            return ZERO.get_or_init(BigInt::zero);
        }
        &self.v[self.idx(a as usize, b as usize, s as usize)]
    }

    fn set(&mut self, a: usize, b: usize, s: usize, x: BigInt) {
        let i = self.idx(a, b, s);
        self.v[i] = x;
    }

    /// In-place prefix sum over `s`.
    fn cumulate(&mut self) {
        for a in 0..=self.n {
            for b in 0..=self.n {
                for s in 1..=self.d {
                    let prev = self.v[self.idx(a, b, s - 1)].clone();
                    let i = self.idx(a, b, s);
                    self.v[i] += prev;
                }
            }
        }
    }
}

/// One coordinate appended to both vectors of every pair counted in `prev`:
/// entries `u, v ≥ min`, distance grows by `|u − v|`. Runs in
/// `O(n² d)` via the diagonal sums `M`, then the off-diagonal sums built from `M`.
fn simplex_layer(prev: &Grid, min: isize) -> Grid {
    let (n, d) = (prev.n, prev.d);
    // M0(a,b,s) = Σ_{t≥0} prev(a−t, b−t, s)
    let mut m0 = Grid::zeros(n, d);
    for a in 0..=n {
        for b in 0..=n {
            for s in 0..=d {
                let x = prev.at(a as isize, b as isize, s as isize) + m0.at(a as isize - 1, b as isize - 1, s as isize);
                m0.set(a, b, s, x);
            }
        }
    }
    let mx = |a: isize, b: isize, s: isize| -> BigInt { m0.at(a - min, b - min, s).clone() };
    let mut p = Grid::zeros(n, d);
    let mut q = Grid::zeros(n, d);
    let mut out = Grid::zeros(n, d);
    for a in 0..=n as isize {
        for b in 0..=n as isize {
            for s in 0..=d as isize {
                let pv = mx(a, b - 1, s - 1) + p.at(a, b - 1, s - 1);
                let qv = mx(a - 1, b, s - 1) + q.at(a - 1, b, s - 1);
                let total = mx(a, b, s) + &pv + &qv;
                p.set(a as usize, b as usize, s as usize, pv);
                q.set(a as usize, b as usize, s as usize, qv);
                out.set(a as usize, b as usize, s as usize, total);
            }
        }
    }
    out
}

fn origin(n: usize, d: usize) -> Grid {
    let mut g = Grid::zeros(n, d);
    g.set(0, 0, 0, BigInt::one());
    g
}

fn simplex_total(n: usize, r: usize, d: usize, min: isize) -> BigInt {
    let mut g = origin(n, d);
    for _ in 0..r {
        g = simplex_layer(&g, min);
    }
    (0..=d).map(|s| g.at(n as isize, n as isize, s as isize).clone()).sum()
}

/// Positive-simplex layers `k ∈ [lo, hi]`, cumulative in `s`.
fn positive_layers(n: usize, d: usize, lo: usize, hi: usize) -> Vec<Option<Grid>> {
    let mut out = vec![None; hi + 1];
    let mut g = origin(n, d);
    for k in 0..=hi {
        if k > 0 {
            g = simplex_layer(&g, 1);
        }
        if k >= lo {
            let mut c = g.clone();
            c.cumulate();
            out[k] = Some(c);
        }
    }
    out
}

fn multinomial(parts: &[i64]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total = 0i64;
    for &k in parts {
        total += k;
        acc *= binomial(total, k);
    }
    acc
}

/// Constrained simplex totals: split the coordinates by which side carries
/// the marked value (0 for zeros, 1 for ones) and count each block separately.
fn constrained_simplex_total(kind: SpaceKind, n: usize, r: usize, p: usize, d: usize) -> BigInt {
    if p > r {
        return BigInt::zero();
    }
    let lo = (r as isize - 2 * p as isize).max(0) as usize;
    let hi = r - p;
    let layers = positive_layers(n, d, lo, hi);
    let (ni, di) = (n as i64, d as i64);
    let mut acc = BigInt::zero();
    for c in 0..=p {
        let k = p - c;
        let both = r as isize - 2 * p as isize + c as isize;
        if both < 0 {
            continue;
        }
        let both = both as usize;
        let grid = layers[both].as_ref().expect("layer computed");
        let weight = multinomial(&[c as i64, k as i64, k as i64, both as i64]);
        let ki = k as i64;
        let mut inner = BigInt::zero();
        for ma in 0..=ni {
            let ca = compositions_count(ma, ki);
            if ca.is_zero() {
                continue;
            }
            for mb in 0..=ni {
                let budget = di - ma - mb;
                if budget < 0 {
                    break;
                }
                let cb = compositions_count(mb, ki);
                if cb.is_zero() {
                    continue;
                }
                let (a, b) = if kind == SpaceKind::StdSimplexZeros {
                    (ni - ma, ni - mb)
                } else {
                    let base = ni - p as i64 - ki - both as i64;
                    (base - ma, base - mb)
                };
                let cum = grid.at(a as isize, b as isize, budget as isize);
                if !cum.is_zero() {
                    inner += &ca * &cb * cum;
                }
            }
        }
        acc += weight * inner;
    }
    acc
}

/// Increasing vectors: the state is the pair of last entries and the distance.
fn inverted_total(n: usize, r: usize, d: usize) -> BigInt {
    let mut g = origin(n, d);
    for _ in 0..r {
        // S(u,v,s) = Σ_{u0≤u, v0≤v} g(u0,v0,s)
        let mut pre = g.clone();
        for a in 0..=n {
            for b in 1..=n {
                for s in 0..=d {
                    let prev = pre.v[pre.idx(a, b - 1, s)].clone();
                    let i = pre.idx(a, b, s);
                    pre.v[i] += prev;
                }
            }
        }
        for a in 1..=n {
            for b in 0..=n {
                for s in 0..=d {
                    let prev = pre.v[pre.idx(a - 1, b, s)].clone();
                    let i = pre.idx(a, b, s);
                    pre.v[i] += prev;
                }
            }
        }
        let mut next = Grid::zeros(n, d);
        for a in 1..=n {
            for b in 1..=n {
                let gap = a.abs_diff(b);
                for s in gap..=d {
                    let x = pre.at(a as isize - 1, b as isize - 1, (s - gap) as isize).clone();
                    next.set(a, b, s, x);
                }
            }
        }
        g = next;
    }
    g.v.iter().sum()
}

fn hypercube_total(q: usize, n: usize, d: usize) -> BigInt {
    let mut cur = vec![BigInt::zero(); d + 1];
    cur[0] = BigInt::one();
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); d + 1];
        for s in 0..=d {
            let mut x = &cur[s] * q;
            for j in 1..q.min(s + 1) {
                x += &cur[s - j] * (2 * (q - j));
            }
            next[s] = x;
        }
        cur = next;
    }
    cur.iter().sum()
}

fn hypercube_zeros_total(q: usize, n: usize, p: usize, d: usize) -> BigInt {
    let dim = (p + 1) * (p + 1) * (d + 1);
    let at = |p1: usize, p2: usize, s: usize| (p1 * (p + 1) + p2) * (d + 1) + s;
    let mut cur = vec![BigInt::zero(); dim];
    cur[0] = BigInt::one();
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); dim];
        for p1 in 0..=p {
            for p2 in 0..=p {
                for s in 0..=d {
                    let mut x = &cur[at(p1, p2, s)] * (q - 1);
                    if p1 > 0 && p2 > 0 {
                        x += &cur[at(p1 - 1, p2 - 1, s)];
                    }
                    for j in 1..q.min(s + 1) {
                        if p1 > 0 {
                            x += &cur[at(p1 - 1, p2, s - j)];
                        }
                        if p2 > 0 {
                            x += &cur[at(p1, p2 - 1, s - j)];
                        }
                        if j < q - 1 {
                            x += &cur[at(p1, p2, s - j)] * (2 * (q - 1 - j));
                        }
                    }
                    next[at(p1, p2, s)] = x;
                }
            }
        }
        cur = next;
    }
    (0..=d).map(|s| cur[at(p, p, s)].clone()).sum()
}

/// `|T(S_n, d)| = Σ_{s≤d} N(n, n, …, s)` for a diagonal instance.
pub fn total_ball(instance: &Instance, d: u32, cap: u32) -> Result<BigInt, OracleError> {
    instance.check()?;
    let sh = instance.shape;
    if sh.n1 != sh.n2 || (instance.kind.is_constrained() && sh.p1 != sh.p2) {
        return Err(OracleError::InvalidInstance("total ball needs a diagonal instance".into()));
    }
    if sh.n1 > cap {
        return Err(OracleError::DpCap { n: sh.n1, cap });
    }
    let n = sh.n1 as usize;
    let r = sh.r as usize;
    let p = sh.p1 as usize;
    let d = (d.min(instance.max_distance())) as usize;
    let q = instance.q as usize;
    Ok(match instance.kind {
        SpaceKind::StdSimplex => simplex_total(n, r, d, 0),
        SpaceKind::PosSimplex => simplex_total(n, r, d, 1),
        SpaceKind::StdSimplexZeros | SpaceKind::PosSimplexOnes => constrained_simplex_total(instance.kind, n, r, p, d),
        SpaceKind::InvSimplex => inverted_total(n, r, d),
        SpaceKind::Hypercube => hypercube_total(q, n, d),
        SpaceKind::HypercubeZeros => {
            if p > n {
                BigInt::zero()
            } else {
                hypercube_zeros_total(q, n, p, d)
            }
        }
    })
}

/// `log₂ x` for a positive big integer; `−∞` for zero.
pub fn log2_big(x: &BigInt) -> f64 {
    if !x.is_positive() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap() as f64).log2();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    (top.to_u64().unwrap() as f64).log2() + shift as f64
}

/// `log₂|T(S_n, d)| / n`, the finite-`n` stand-in for the ball exponent.
pub fn empirical_exponent(instance: &Instance, d: u32, cap: u32) -> Result<f64, OracleError> {
    let t = total_ball(instance, d, cap)?;
    Ok(log2_big(&t) / instance.shape.n1 as f64)
}
