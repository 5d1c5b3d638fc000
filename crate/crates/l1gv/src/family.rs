//! The seven space families and their generating functions.
//!
//! Each family is a sequence of spaces `S_n` of integer vectors:
//!
//! | family | members | size |
//! |---|---|---|
//! | `StdSimplex` | `u ∈ ℕ^r`, `Σu = n` | `C(n+r−1, r−1)` |
//! | `StdSimplexZeros` | as above with exactly `p` zero entries | `C(r,p)·C(n−1, r−p−1)` |
//! | `PosSimplex` | `u ∈ ℕ_{≥1}^r`, `Σu = n` | `C(n−1, r−1)` |
//! | `PosSimplexOnes` | as above with exactly `p` entries equal to 1 | `C(r,p)·C(n−r−1, r−p−1)` |
//! | `InvSimplex` | `1 ≤ u₁ < … < u_r ≤ n` | `C(n, r)` |
//! | `Hypercube` | `{0,…,q−1}^n` | `q^n` |
//! | `HypercubeZeros` | as above with exactly `p` zero entries | `C(n,p)(q−1)^{n−p}` |
//!
//! with `r = ⌊ρn⌋` and `p = ⌊τn⌋`. Pairs are counted by the generating
//! function `Σ N(n₁,n₂,r,s,p₁,p₂) x₁^{n₁} x₂^{n₂} y^r z^s w₁^{p₁} w₂^{p₂}`
//! (simplices) or `Σ N(n,s,p₁,p₂) x^n y^s w₁^{p₁} w₂^{p₂}` (hypercubes).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::SparsePoly;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("invalid parameters for {family}: {reason}")]
    OutOfRange { family: &'static str, reason: String },
}

/// Family tag without parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceKind {
    StdSimplex,
    StdSimplexZeros,
    PosSimplex,
    PosSimplexOnes,
    InvSimplex,
    Hypercube,
    HypercubeZeros,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 7] = [
        SpaceKind::StdSimplex,
        SpaceKind::StdSimplexZeros,
        SpaceKind::PosSimplex,
        SpaceKind::PosSimplexOnes,
        SpaceKind::InvSimplex,
        SpaceKind::Hypercube,
        SpaceKind::HypercubeZeros,
    ];

    /// Command-line spelling.
    pub fn cli_name(self) -> &'static str {
        match self {
            SpaceKind::StdSimplex => "std-simplex",
            SpaceKind::StdSimplexZeros => "std-simplex-zeros",
            SpaceKind::PosSimplex => "pos-simplex",
            SpaceKind::PosSimplexOnes => "pos-simplex-ones",
            SpaceKind::InvSimplex => "inv-simplex",
            SpaceKind::Hypercube => "hypercube",
            SpaceKind::HypercubeZeros => "hypercube-zeros",
        }
    }

    pub fn from_cli_name(s: &str) -> Option<SpaceKind> {
        SpaceKind::ALL.into_iter().find(|k| k.cli_name() == s)
    }

    pub fn is_hypercube(self) -> bool {
        matches!(self, SpaceKind::Hypercube | SpaceKind::HypercubeZeros)
    }

    /// Families carrying the constraint parameter `τ`.
    pub fn is_constrained(self) -> bool {
        matches!(self, SpaceKind::StdSimplexZeros | SpaceKind::PosSimplexOnes | SpaceKind::HypercubeZeros)
    }
}

/// A parameterized space family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SpaceFamily {
    StdSimplex { rho: f64 },
    StdSimplexZeros { rho: f64, tau: f64 },
    PosSimplex { rho: f64 },
    PosSimplexOnes { rho: f64, tau: f64 },
    InvSimplex { rho: f64 },
    Hypercube { q: u32 },
    HypercubeZeros { q: u32, tau: f64 },
}

/// Finite instance of a pair count: both weights, the dimension and both
/// constraint counts. For hypercubes `r` is the length and must equal `n₁ = n₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub n1: u32,
    pub n2: u32,
    pub r: u32,
    pub p1: u32,
    pub p2: u32,
}

impl Shape {
    pub fn simplex(n: u32, r: u32) -> Shape {
        Shape { n1: n, n2: n, r, p1: 0, p2: 0 }
    }

    pub fn hypercube(n: u32) -> Shape {
        Shape { n1: n, n2: n, r: n, p1: 0, p2: 0 }
    }

    pub fn with_p(self, p: u32) -> Shape {
        Shape { p1: p, p2: p, ..self }
    }

    pub fn is_diagonal(&self) -> bool {
        self.n1 == self.n2 && self.p1 == self.p2
    }
}

/// `⌊x·n⌋`, tolerant of representation error just below an integer.
pub fn scaled_floor(x: f64, n: u32) -> u32 {
    (x * n as f64 + 1e-9).floor().max(0.0) as u32
}

fn bad(family: &'static str, reason: impl Into<String>) -> FamilyError {
    FamilyError::OutOfRange { family, reason: reason.into() }
}

impl SpaceFamily {
    pub fn kind(&self) -> SpaceKind {
        match self {
            SpaceFamily::StdSimplex { .. } => SpaceKind::StdSimplex,
            SpaceFamily::StdSimplexZeros { .. } => SpaceKind::StdSimplexZeros,
            SpaceFamily::PosSimplex { .. } => SpaceKind::PosSimplex,
            SpaceFamily::PosSimplexOnes { .. } => SpaceKind::PosSimplexOnes,
            SpaceFamily::InvSimplex { .. } => SpaceKind::InvSimplex,
            SpaceFamily::Hypercube { .. } => SpaceKind::Hypercube,
            SpaceFamily::HypercubeZeros { .. } => SpaceKind::HypercubeZeros,
        }
    }

    pub fn rho(&self) -> Option<f64> {
        match *self {
            SpaceFamily::StdSimplex { rho }
            | SpaceFamily::StdSimplexZeros { rho, .. }
            | SpaceFamily::PosSimplex { rho }
            | SpaceFamily::PosSimplexOnes { rho, .. }
            | SpaceFamily::InvSimplex { rho } => Some(rho),
            _ => None,
        }
    }

    pub fn tau(&self) -> Option<f64> {
        match *self {
            SpaceFamily::StdSimplexZeros { tau, .. }
            | SpaceFamily::PosSimplexOnes { tau, .. }
            | SpaceFamily::HypercubeZeros { tau, .. } => Some(tau),
            _ => None,
        }
    }

    pub fn q(&self) -> Option<u32> {
        match *self {
            SpaceFamily::Hypercube { q } | SpaceFamily::HypercubeZeros { q, .. } => Some(q),
            _ => None,
        }
    }

    /// Checks the parameter ranges. Constrained simplex families must also
    /// describe nonempty spaces: `ρ−τ ≤ 1` for zeros, `ρ−τ ≤ 1−ρ` for ones.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let fin = |x: f64| x.is_finite();
        match *self {
            SpaceFamily::StdSimplex { rho } => {
                if !(fin(rho) && rho > 0.0) {
                    return Err(bad("std-simplex", "need rho > 0"));
                }
            }
            SpaceFamily::StdSimplexZeros { rho, tau } => {
                if !(fin(rho) && fin(tau) && rho > 0.0 && (0.0..=rho).contains(&tau)) {
                    return Err(bad("std-simplex-zeros", "need 0 <= tau <= rho"));
                }
                if rho - tau > 1.0 {
                    return Err(bad("std-simplex-zeros", "need rho - tau <= 1 (more nonzero entries than weight)"));
                }
            }
            SpaceFamily::PosSimplex { rho } | SpaceFamily::InvSimplex { rho } => {
                if !(fin(rho) && rho > 0.0 && rho <= 1.0) {
                    return Err(bad("pos-simplex", "need 0 < rho <= 1"));
                }
            }
            SpaceFamily::PosSimplexOnes { rho, tau } => {
                if !(fin(rho) && fin(tau) && rho > 0.0 && rho <= 1.0 && (0.0..=rho).contains(&tau)) {
                    return Err(bad("pos-simplex-ones", "need 0 <= tau <= rho <= 1"));
                }
                if rho - tau > 1.0 - rho {
                    return Err(bad("pos-simplex-ones", "need tau >= 2 rho - 1 (entries above one exceed spare weight)"));
                }
            }
            SpaceFamily::Hypercube { q } => {
                if q < 2 {
                    return Err(bad("hypercube", "need q >= 2"));
                }
            }
            SpaceFamily::HypercubeZeros { q, tau } => {
                if q < 2 || !(fin(tau) && (0.0..=1.0).contains(&tau)) {
                    return Err(bad("hypercube-zeros", "need q >= 2 and 0 <= tau <= 1"));
                }
            }
        }
        Ok(())
    }

    /// The finite instance at weight/length `n`.
    pub fn shape(&self, n: u32) -> Shape {
        let p = self.tau().map(|t| scaled_floor(t, n)).unwrap_or(0);
        if self.kind().is_hypercube() {
            Shape::hypercube(n).with_p(p)
        } else {
            Shape::simplex(n, scaled_floor(self.rho().unwrap_or(0.0), n)).with_p(p)
        }
    }

    /// `params` column of the CSV output, e.g. `rho=2;tau=1.3`.
    pub fn params_string(&self) -> String {
        let mut parts = Vec::new();
        if let Some(r) = self.rho() {
            parts.push(format!("rho={r}"));
        }
        if let Some(q) = self.q() {
            parts.push(format!("q={q}"));
        }
        if let Some(t) = self.tau() {
            parts.push(format!("tau={t}"));
        }
        parts.join(";")
    }

    /// Variable names of [`SpaceFamily::reduced_denominator`].
    pub fn reduced_labels(&self) -> &'static [&'static str] {
        match self.kind() {
            SpaceKind::StdSimplex | SpaceKind::PosSimplex | SpaceKind::InvSimplex => &["x", "y", "z"],
            SpaceKind::StdSimplexZeros | SpaceKind::PosSimplexOnes => &["x", "y", "z", "w"],
            SpaceKind::Hypercube => &["x", "y"],
            SpaceKind::HypercubeZeros => &["x", "y", "w"],
        }
    }

    /// The symmetric-pair-reduced denominator `H` whose minimal critical
    /// point gives the total-ball exponent along [`SpaceFamily::direction`].
    pub fn reduced_denominator(&self) -> SparsePoly {
        let labels = self.reduced_labels();
        let v = SparsePoly::vars(labels);
        let one = crate::poly::one_like(&v[0]);
        match *self {
            SpaceFamily::StdSimplex { .. } => {
                let (x, y, z) = (&v[0], &v[1], &v[2]);
                let xz = x * z;
                (&one - &(x * x)) * (&one - &xz) - y * (&one + &xz)
            }
            SpaceFamily::PosSimplex { .. } | SpaceFamily::InvSimplex { .. } => {
                let (x, y, z) = (&v[0], &v[1], &v[2]);
                let xz = x * z;
                let x2 = x * x;
                (&one - &x2) * (&one - &xz) - &(y * &x2) * &(&one + &xz)
            }
            SpaceFamily::StdSimplexZeros { .. } | SpaceFamily::PosSimplexOnes { .. } => {
                let (x, y, z, w) = (&v[0], &v[1], &v[2], &v[3]);
                let xz = x * z;
                let x2 = x * x;
                let a = &one - &x2;
                let b = &one - &xz;
                let inner = &(&(w * w) * &b) * &a + (&(w * &xz) * &a).scale(2) + &x2 * &(&one + &xz);
                let outer = if self.kind() == SpaceKind::PosSimplexOnes { &(y * &x2) * &inner } else { y * &inner };
                &a * &b - &outer
            }
            SpaceFamily::Hypercube { q } => {
                let (x, y) = (&v[0], &v[1]);
                &one - &(x * &hypercube_transfer(q as i64, y, &one))
            }
            SpaceFamily::HypercubeZeros { q, .. } => {
                let (x, y, w) = (&v[0], &v[1], &v[2]);
                let q = q as i64;
                let mut t = w * w + one.scale(q - 1);
                let mut ys = one.scale(0);
                let mut yj = one.clone();
                for j in 1..q {
                    yj = &yj * y;
                    ys = &ys + &yj;
                    t = t + yj.scale(2 * (q - 1 - j));
                }
                t = t + (w * &ys).scale(2);
                &one - &(x * &t)
            }
        }
    }

    /// Direction `r` of the reduced system: `(2, ρ, δ[, 2τ])` for simplices,
    /// `(1, δ[, 2τ])` for hypercubes. The doubled entries come from merging
    /// the two copies of a symmetric variable pair.
    pub fn direction(&self, delta: f64) -> Vec<f64> {
        match *self {
            SpaceFamily::StdSimplex { rho } | SpaceFamily::PosSimplex { rho } | SpaceFamily::InvSimplex { rho } => {
                vec![2.0, rho, delta]
            }
            SpaceFamily::StdSimplexZeros { rho, tau } | SpaceFamily::PosSimplexOnes { rho, tau } => {
                vec![2.0, rho, delta, 2.0 * tau]
            }
            SpaceFamily::Hypercube { .. } => vec![1.0, delta],
            SpaceFamily::HypercubeZeros { tau, .. } => vec![1.0, delta, 2.0 * tau],
        }
    }

    /// Denominator and direction of the single-space generating function
    /// `Σ |S_{n,r}(p)| x^n y^r w^p` (or `x^n w^p` for hypercubes); its
    /// critical rate is the capacity.
    pub fn capacity_denominator(&self) -> (SparsePoly, Vec<f64>) {
        match *self {
            SpaceFamily::StdSimplex { rho } => {
                let v = SparsePoly::vars(&["x", "y"]);
                let one = crate::poly::one_like(&v[0]);
                (&one - &v[0] - &v[1], vec![1.0, rho])
            }
            SpaceFamily::PosSimplex { rho } | SpaceFamily::InvSimplex { rho } => {
                let v = SparsePoly::vars(&["x", "y"]);
                let one = crate::poly::one_like(&v[0]);
                (&one - &v[0] - &(&v[0] * &v[1]), vec![1.0, rho])
            }
            SpaceFamily::StdSimplexZeros { rho, tau } | SpaceFamily::PosSimplexOnes { rho, tau } => {
                let v = SparsePoly::vars(&["x", "y", "w"]);
                let one = crate::poly::one_like(&v[0]);
                let (x, y, w) = (&v[0], &v[1], &v[2]);
                let a = &one - x;
                let inner = &(w * &a) + x;
                let h = if self.kind() == SpaceKind::StdSimplexZeros {
                    &a - &(y * &inner)
                } else {
                    &a - &(&(x * y) * &inner)
                };
                (h, vec![1.0, rho, tau])
            }
            SpaceFamily::Hypercube { q } => {
                let v = SparsePoly::vars(&["x"]);
                let one = crate::poly::one_like(&v[0]);
                (&one - &v[0].scale(q as i64), vec![1.0])
            }
            SpaceFamily::HypercubeZeros { q, tau } => {
                let v = SparsePoly::vars(&["x", "w"]);
                let one = crate::poly::one_like(&v[0]);
                let t = &v[1] + &one.scale(q as i64 - 1);
                (&one - &(&v[0] * &t), vec![1.0, tau])
            }
        }
    }

    /// Index of the `τ`-coupled variable in the capacity and reduced systems.
    pub fn tau_indices(&self) -> Option<(usize, usize)> {
        match self.kind() {
            SpaceKind::StdSimplexZeros | SpaceKind::PosSimplexOnes => Some((2, 3)),
            SpaceKind::HypercubeZeros => Some((1, 2)),
            _ => None,
        }
    }

    /// Unreduced pair generating function `G/H` in the variables
    /// `(x₁, x₂, y, z[, w₁, w₂])` or `(x, y[, w₁, w₂])`, built from the
    /// single-coordinate transfer series. `None` for the inverted simplex,
    /// whose distance depends on partial sums and has no rational form in
    /// these variables.
    pub fn pair_generating_function(&self) -> Option<(SparsePoly, SparsePoly)> {
        match self.kind() {
            SpaceKind::InvSimplex => None,
            SpaceKind::Hypercube | SpaceKind::HypercubeZeros => {
                let q = self.q().unwrap() as i64;
                let constrained = self.kind() == SpaceKind::HypercubeZeros;
                let labels: &[&str] = if constrained { &["x", "y", "w1", "w2"] } else { &["x", "y"] };
                let v = SparsePoly::vars(labels);
                let one = crate::poly::one_like(&v[0]);
                let (x, y) = (&v[0], &v[1]);
                let t = if constrained {
                    let (w1, w2) = (&v[2], &v[3]);
                    let mut t = w1 * w2 + one.scale(q - 1);
                    let mut yj = one.clone();
                    for j in 1..q {
                        yj = &yj * y;
                        t = t + &(w1 + w2) * &yj + yj.scale(2 * (q - 1 - j));
                    }
                    t
                } else {
                    hypercube_transfer(q, y, &one)
                };
                Some((one.clone(), &one - &(x * &t)))
            }
            kind => {
                let constrained = kind.is_constrained();
                let labels: &[&str] =
                    if constrained { &["x1", "x2", "y", "z", "w1", "w2"] } else { &["x1", "x2", "y", "z"] };
                let v = SparsePoly::vars(labels);
                let one = crate::poly::one_like(&v[0]);
                let (x1, x2, y, z) = (&v[0], &v[1], &v[2], &v[3]);
                let x12 = x1 * x2;
                let a = &one - &x12;
                let b1 = &one - &(x1 * z);
                let b2 = &one - &(x2 * z);
                let d = &(&a * &b1) * &b2;
                // D·T with D = (1−x₁x₂)(1−x₁z)(1−x₂z) and T the per-coordinate transfer
                let both_positive = &one - &(&x12 * &(z * z));
                let dt = match kind {
                    SpaceKind::StdSimplex => both_positive,
                    SpaceKind::PosSimplex => &x12 * &both_positive,
                    SpaceKind::StdSimplexZeros | SpaceKind::PosSimplexOnes => {
                        let (w1, w2) = (&v[4], &v[5]);
                        let body = &(&(w1 * w2) * &d)
                            + &(&(&(w1 * &(x2 * z)) * &a) * &b1)
                            + &(&(&(w2 * &(x1 * z)) * &a) * &b2)
                            + &x12 * &both_positive;
                        if kind == SpaceKind::PosSimplexOnes {
                            &x12 * &body
                        } else {
                            body
                        }
                    }
                    _ => unreachable!(),
                };
                let h = &d - &(y * &dt);
                Some((d, h))
            }
        }
    }

    /// Exponent vector of the pair count `N(shape, s)` in
    /// [`SpaceFamily::pair_generating_function`]; `None` for hypercube shapes
    /// with `n₁ ≠ n₂` and for the inverted simplex.
    pub fn pair_exponent(&self, shape: &Shape, s: u32) -> Option<Vec<u32>> {
        match self.kind() {
            SpaceKind::InvSimplex => None,
            SpaceKind::Hypercube => (shape.n1 == shape.n2).then(|| vec![shape.n1, s]),
            SpaceKind::HypercubeZeros => (shape.n1 == shape.n2).then(|| vec![shape.n1, s, shape.p1, shape.p2]),
            SpaceKind::StdSimplex | SpaceKind::PosSimplex => Some(vec![shape.n1, shape.n2, shape.r, s]),
            SpaceKind::StdSimplexZeros | SpaceKind::PosSimplexOnes => {
                Some(vec![shape.n1, shape.n2, shape.r, s, shape.p1, shape.p2])
            }
        }
    }
}

/// `q + 2 Σ_{j=1}^{q−1} (q−j) y^j`: pairs of symbols in `{0..q−1}` by distance.
fn hypercube_transfer(q: i64, y: &SparsePoly, one: &SparsePoly) -> SparsePoly {
    let mut t = one.scale(q);
    let mut yj = one.clone();
    for j in 1..q {
        yj = &yj * y;
        t = t + yj.scale(2 * (q - j));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_floor_parameters() {
        let f = SpaceFamily::PosSimplexOnes { rho: 0.3, tau: 0.1 };
        assert_eq!(f.shape(10), Shape { n1: 10, n2: 10, r: 3, p1: 1, p2: 1 });
        let h = SpaceFamily::HypercubeZeros { q: 4, tau: 0.3 };
        assert_eq!(h.shape(10), Shape { n1: 10, n2: 10, r: 10, p1: 3, p2: 3 });
    }

    #[test]
    fn validation() {
        assert!(SpaceFamily::StdSimplexZeros { rho: 2.0, tau: 0.5 }.validate().is_err());
        assert!(SpaceFamily::StdSimplexZeros { rho: 2.0, tau: 1.4 }.validate().is_ok());
        assert!(SpaceFamily::PosSimplex { rho: 1.5 }.validate().is_err());
        assert!(SpaceFamily::PosSimplexOnes { rho: 0.3, tau: 0.1 }.validate().is_ok());
        assert!(SpaceFamily::Hypercube { q: 1 }.validate().is_err());
    }

    #[test]
    fn reduced_simplex_denominator_prints() {
        let h = SpaceFamily::StdSimplex { rho: 2.0 }.reduced_denominator();
        assert_eq!(h.to_string(), "1 - y - x^2 - x*z - x*y*z + x^3*z");
    }

    #[test]
    fn cli_names_round_trip() {
        for k in SpaceKind::ALL {
            assert_eq!(SpaceKind::from_cli_name(k.cli_name()), Some(k));
        }
    }
}
