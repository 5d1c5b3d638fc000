use super::AcsvError;
use crate::poly::SparsePoly;

/// What justifies merging a variable pair `(zᵢ, zⱼ)` into one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairHypothesis {
    /// Every monomial has equal exponents at `i` and `j`.
    EqualExponents,
    /// `H` is unchanged by swapping `zᵢ` and `zⱼ`; the critical point is then
    /// symmetric, but the identified polynomial may carry a spurious factor.
    SwapInvariant,
}

/// `H(…, z̄ᵢ, …, z̄ᵢ, …)` with variable `j` removed. The caller doubles the
/// direction weight of `i`.
pub fn reduce_symmetric(h: &SparsePoly, pair: (usize, usize), hypothesis: PairHypothesis) -> Result<SparsePoly, AcsvError> {
    let (i, j) = pair;
    for idx in [i, j] {
        if idx >= h.num_vars() {
            return Err(crate::poly::PolyError::IndexOutOfRange { index: idx, num_vars: h.num_vars() }.into());
        }
    }
    match hypothesis {
        PairHypothesis::EqualExponents => {
            if let Some((e, _)) = h.terms().find(|(e, _)| e[i] != e[j]) {
                return Err(AcsvError::HypothesisViolated { monomial: e.clone() });
            }
        }
        PairHypothesis::SwapInvariant => {
            if h.swap_vars(i, j) != *h {
                return Err(AcsvError::NotSwapInvariant);
            }
        }
    }
    Ok(h.identify(i, j)?)
}

/// [`reduce_symmetric`] followed by exact division by `factor`, a polynomial
/// in the reduced variables that the identification introduces.
pub fn reduce_symmetric_dividing(
    h: &SparsePoly,
    pair: (usize, usize),
    hypothesis: PairHypothesis,
    factor: &SparsePoly,
) -> Result<SparsePoly, AcsvError> {
    let merged = reduce_symmetric(h, pair, hypothesis)?;
    Ok(merged.div_exact(factor)?)
}

/// Merges several pairs at once, for polynomials that are only invariant
/// under swapping all of them together (e.g. `(x₁,x₂)` with `(w₁,w₂)`).
/// Each pair is `(kept, removed)` in the original indexing; `factor`, if
/// given, is divided out of the result.
pub fn reduce_symmetric_joint(
    h: &SparsePoly,
    pairs: &[(usize, usize)],
    factor: Option<&SparsePoly>,
) -> Result<SparsePoly, AcsvError> {
    let n = h.num_vars();
    let mut removed: Vec<usize> = Vec::with_capacity(pairs.len());
    for &(i, j) in pairs {
        for idx in [i, j] {
            if idx >= n {
                return Err(crate::poly::PolyError::IndexOutOfRange { index: idx, num_vars: n }.into());
            }
        }
        if i >= j || removed.contains(&j) || pairs.iter().any(|&(k, _)| k == j) {
            return Err(AcsvError::NotSwapInvariant);
        }
        removed.push(j);
    }
    let swapped = pairs.iter().fold(h.clone(), |p, &(i, j)| p.swap_vars(i, j));
    if swapped != *h {
        return Err(AcsvError::NotSwapInvariant);
    }
    let mut order = pairs.to_vec();
    order.sort_by_key(|p| std::cmp::Reverse(p.1));
    let mut merged = h.clone();
    for (i, j) in order {
        merged = merged.identify(i, j)?;
    }
    match factor {
        Some(f) => Ok(merged.div_exact(f)?),
        None => Ok(merged),
    }
}
