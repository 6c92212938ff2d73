//! Deterministic summation helpers.

/// Pairwise summation in fixed order; the result depends only on the slice.
pub(crate) fn pairwise(values: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise(&values[..mid]) + pairwise(&values[mid..])
}
