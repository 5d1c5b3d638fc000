//! Exact sparse multivariate polynomials over the integers.
//!
//! Every generating-function denominator in the crate lives in a
//! [`SparsePoly`]. Coefficients are `i64` and arithmetic panics on overflow;
//! evaluation happens in `f64`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Errors raised by polynomial operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("point has {got} coordinates, polynomial has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("variable index {index} out of range for {num_vars} variables")]
    IndexOutOfRange { index: usize, num_vars: usize },
    #[error("denominator has zero constant term")]
    ZeroConstantTerm,
    #[error("denominator constant term {0} is not +1 or -1")]
    UnsupportedConstantTerm(i64),
    #[error("polynomial is not divisible by the given factor")]
    NotDivisible,
    #[error("operands have different variable counts ({0} vs {1})")]
    ArityMismatch(usize, usize),
}

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// A polynomial in `num_vars` variables with nonzero `i64` coefficients.
///
/// Terms are kept in a `BTreeMap`, so iteration (and hence floating point
/// summation in [`SparsePoly::eval`]) is in lexicographic exponent order.
#[derive(Clone, Debug)]
pub struct SparsePoly {
    num_vars: usize,
    terms: BTreeMap<Exponents, i64>,
    labels: Vec<String>,
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.terms == other.terms
    }
}

impl Eq for SparsePoly {}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("z{i}")).collect()
}

impl SparsePoly {
    /// The zero polynomial.
    pub fn zero(num_vars: usize) -> Self {
        SparsePoly { num_vars, terms: BTreeMap::new(), labels: default_labels(num_vars) }
    }

    pub fn constant(num_vars: usize, c: i64) -> Self {
        let mut p = Self::zero(num_vars);
        if c != 0 {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    /// The single variable `z_index`.
    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars, "variable index out of range");
        let mut e = vec![0; num_vars];
        e[index] = 1;
        Self::monomial(e, 1)
    }

    pub fn monomial(exponents: Exponents, coeff: i64) -> Self {
        let num_vars = exponents.len();
        let mut p = Self::zero(num_vars);
        if coeff != 0 {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    /// One polynomial per label, each being that variable, sharing the labels.
    pub fn vars(labels: &[&str]) -> Vec<SparsePoly> {
        let n = labels.len();
        (0..n).map(|i| Self::var(n, i).with_labels(labels)).collect()
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, i64)>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn with_labels(mut self, labels: &[&str]) -> Self {
        assert_eq!(labels.len(), self.num_vars, "label count");
        self.labels = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, i64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponents: &[u32]) -> i64 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> i64 {
        self.coeff(&vec![0; self.num_vars])
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Exponents, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().checked_add(c).expect("coefficient overflow");
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) {
        assert_eq!(self.num_vars, other.num_vars, "polynomial arity mismatch");
    }

    /// Evaluates at a real point, summing terms in lexicographic order.
    pub fn eval(&self, point: &[f64]) -> Result<f64, PolyError> {
        if point.len() != self.num_vars {
            return Err(PolyError::DimensionMismatch { expected: self.num_vars, got: point.len() });
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (e, &c) in &self.terms {
            let mut m = c as f64;
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    m *= x.powi(k as i32);
                }
            }
            acc += m;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn partial(&self, index: usize) -> Result<SparsePoly, PolyError> {
        if index >= self.num_vars {
            return Err(PolyError::IndexOutOfRange { index, num_vars: self.num_vars });
        }
        let mut out = SparsePoly { terms: BTreeMap::new(), ..self.clone() };
        for (e, &c) in &self.terms {
            let k = e[index];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[index] -= 1;
            out.add_term(e2, c.checked_mul(k as i64).expect("coefficient overflow"));
        }
        Ok(out)
    }

    /// Multiplies by the single variable `z_index` (used to form `z_j ∂H/∂z_j`).
    pub fn shift(&self, index: usize) -> SparsePoly {
        let mut out = SparsePoly { terms: BTreeMap::new(), ..self.clone() };
        for (e, &c) in &self.terms {
            let mut e2 = e.clone();
            e2[index] += 1;
            out.terms.insert(e2, c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut acc = SparsePoly::constant(self.num_vars, 1);
        acc.labels = self.labels.clone();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: i64) -> SparsePoly {
        let mut out = SparsePoly { terms: BTreeMap::new(), ..self.clone() };
        for (e, &k) in &self.terms {
            out.add_term(e.clone(), k.checked_mul(c).expect("coefficient overflow"));
        }
        out
    }

    /// Substitutes `z_j := z_i` and drops variable `j`. The surviving variable
    /// keeps its label and position (after removal of `j`).
    pub fn identify(&self, i: usize, j: usize) -> Result<SparsePoly, PolyError> {
        for idx in [i, j] {
            if idx >= self.num_vars {
                return Err(PolyError::IndexOutOfRange { index: idx, num_vars: self.num_vars });
            }
        }
        let mut labels = self.labels.clone();
        labels.remove(j);
        let mut out = SparsePoly { num_vars: self.num_vars - 1, terms: BTreeMap::new(), labels };
        for (e, &c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] += e[j];
            e2.remove(j);
            out.add_term(e2, c);
        }
        Ok(out)
    }

    /// Swaps variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> SparsePoly {
        let mut out = SparsePoly { terms: BTreeMap::new(), ..self.clone() };
        for (e, &c) in &self.terms {
            let mut e2 = e.clone();
            e2.swap(i, j);
            out.terms.insert(e2, c);
        }
        out
    }

    /// Exact quotient `self / divisor`, by lexicographic leading-term division.
    pub fn div_exact(&self, divisor: &SparsePoly) -> Result<SparsePoly, PolyError> {
        if self.num_vars != divisor.num_vars {
            return Err(PolyError::ArityMismatch(self.num_vars, divisor.num_vars));
        }
        let (lead_e, &lead_c) = divisor.terms.iter().next_back().ok_or(PolyError::NotDivisible)?;
        let mut rem = self.clone();
        let mut quot = SparsePoly { terms: BTreeMap::new(), ..self.clone() };
        while let Some((e, &c)) = rem.terms.iter().next_back() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) || c % lead_c != 0 {
                return Err(PolyError::NotDivisible);
            }
            let te: Exponents = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let t = SparsePoly::monomial(te.clone(), c / lead_c);
            quot.add_term(te, c / lead_c);
            rem = &rem - &(&t * divisor);
        }
        Ok(quot)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest total degree last reads oddly; print constant first.
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), std::cmp::Reverse((*e).clone())));
        for (n, (e, &c)) in items.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(&self.labels)
                .filter(|(k, _)| **k > 0)
                .map(|(&k, l)| if k == 1 { l.clone() } else { format!("{l}^{k}") })
                .collect();
            let sign = if c < 0 { "-" } else { "+" };
            if n == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a == 1 {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_arity(rhs);
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_arity(rhs);
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c.checked_neg().expect("coefficient overflow"));
        }
        out
    }
}

impl<'a> Mul<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_arity(rhs);
        let mut out = SparsePoly { terms: BTreeMap::new(), ..self.clone() };
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.checked_mul(cb).expect("coefficient overflow"));
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $m(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $m(self, rhs: &SparsePoly) -> SparsePoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<SparsePoly> for &'a SparsePoly {
            type Output = SparsePoly;
            fn $m(self, rhs: SparsePoly) -> SparsePoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(-1)
    }
}

/// Power-series coefficients of `G/H` for all exponents of bounded total degree.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTable {
    pub num_vars: usize,
    pub max_total_degree: u32,
    pub coeffs: BTreeMap<Exponents, BigInt>,
}

impl SeriesTable {
    /// Coefficient at `exponents`; `None` if beyond the degree bound.
    pub fn get(&self, exponents: &[u32]) -> Option<BigInt> {
        if exponents.len() != self.num_vars || exponents.iter().sum::<u32>() > self.max_total_degree {
            return None;
        }
        Some(self.coeffs.get(exponents).cloned().unwrap_or_default())
    }
}

fn unit_constant(denom: &SparsePoly) -> Result<i64, PolyError> {
    match denom.constant_term() {
        0 => Err(PolyError::ZeroConstantTerm),
        c @ (1 | -1) => Ok(c),
        c => Err(PolyError::UnsupportedConstantTerm(c)),
    }
}

/// Coefficients of `numer/denom` up to total degree `max_total_degree`, from
/// the convolution identity `Σ_m h_m a_{k-m} = g_k`.
pub fn series_coeffs(
    numer: &SparsePoly,
    denom: &SparsePoly,
    max_total_degree: u32,
) -> Result<SeriesTable, PolyError> {
    if numer.num_vars != denom.num_vars {
        return Err(PolyError::ArityMismatch(numer.num_vars, denom.num_vars));
    }
    let h0 = unit_constant(denom)?;
    let n = denom.num_vars;
    let tail: Vec<(&Exponents, i64)> = denom.terms().filter(|(e, _)| e.iter().any(|&k| k > 0)).collect();
    let mut table: HashMap<Exponents, BigInt> = HashMap::new();
    for deg in 0..=max_total_degree {
        for k in compositions(deg, n) {
            let mut acc = BigInt::from(numer.coeff(&k));
            for (m, hm) in &tail {
                if m.iter().zip(&k).any(|(a, b)| a > b) {
                    continue;
                }
                let km: Exponents = k.iter().zip(m.iter()).map(|(a, b)| a - b).collect();
                if let Some(v) = table.get(&km) {
                    acc -= v * hm;
                }
            }
            if h0 < 0 {
                acc = -acc;
            }
            if !acc.is_zero() {
                table.insert(k, acc);
            }
        }
    }
    Ok(SeriesTable { num_vars: n, max_total_degree, coeffs: table.into_iter().collect() })
}

/// All exponent vectors of length `n` with the given total degree.
fn compositions(total: u32, n: usize) -> Vec<Exponents> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponents>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[pos] = k;
            rec(pos + 1, left - k, cur, out);
        }
    }
    if n == 0 {
        if total == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// Dense power-series coefficients of `G/H` over a box `0 ≤ k_i ≤ bound_i`.
///
/// Per-variable truncation is exact for the same reason the total-degree one
/// is: `a_k` only depends on `a_{k-m}` with `m ≥ 0`, which stay inside the box.
#[derive(Clone, Debug)]
pub struct BoxSeries {
    bounds: Vec<u32>,
    strides: Vec<usize>,
    coeffs: Vec<BigInt>,
}

impl BoxSeries {
    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    fn index(&self, k: &[u32]) -> Option<usize> {
        if k.len() != self.bounds.len() || k.iter().zip(&self.bounds).any(|(a, b)| a > b) {
            return None;
        }
        Some(k.iter().zip(&self.strides).map(|(&a, &s)| a as usize * s).sum())
    }

    pub fn get(&self, k: &[u32]) -> Option<&BigInt> {
        self.index(k).map(|i| &self.coeffs[i])
    }
}

/// Box-truncated variant of [`series_coeffs`].
pub fn series_coeffs_box(
    numer: &SparsePoly,
    denom: &SparsePoly,
    bounds: &[u32],
) -> Result<BoxSeries, PolyError> {
    if numer.num_vars != denom.num_vars {
        return Err(PolyError::ArityMismatch(numer.num_vars, denom.num_vars));
    }
    if bounds.len() != denom.num_vars {
        return Err(PolyError::DimensionMismatch { expected: denom.num_vars, got: bounds.len() });
    }
    let h0 = unit_constant(denom)?;
    let n = bounds.len();
    let mut strides = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * (bounds[i + 1] as usize + 1);
    }
    let size: usize = bounds.iter().map(|&b| b as usize + 1).product();
    let tail: Vec<(Vec<u32>, usize, BigInt)> = denom
        .terms()
        .filter(|(e, _)| e.iter().any(|&k| k > 0))
        .filter(|(e, _)| e.iter().zip(bounds).all(|(a, b)| a <= b))
        .map(|(e, c)| {
            let off = e.iter().zip(&strides).map(|(&a, &s)| a as usize * s).sum();
            (e.clone(), off, BigInt::from(c))
        })
        .collect();
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); size];
    let mut k = vec![0u32; n];
    for idx in 0..size {
        let mut acc = BigInt::from(numer.coeff(&k));
        for (m, off, hm) in &tail {
            if m.iter().zip(&k).all(|(a, b)| a <= b) {
                let v = &coeffs[idx - off];
                if !v.is_zero() {
                    acc -= v * hm;
                }
            }
        }
        if h0 < 0 {
            acc = -acc;
        }
        coeffs[idx] = acc;
        // advance the mixed-radix counter
        for pos in (0..n).rev() {
            if k[pos] < bounds[pos] {
                k[pos] += 1;
                break;
            }
            k[pos] = 0;
        }
    }
    Ok(BoxSeries { bounds: bounds.to_vec(), strides, coeffs })
}

/// True when every coefficient of the table is nonnegative.
pub fn all_nonnegative(table: &SeriesTable) -> bool {
    table.coeffs.values().all(|v| !v.is_negative())
}

/// Convenience: `1` as a polynomial sharing the labels of `like`.
pub fn one_like(like: &SparsePoly) -> SparsePoly {
    let mut p = SparsePoly::constant(like.num_vars, 1);
    p.labels = like.labels.clone();
    p
}
