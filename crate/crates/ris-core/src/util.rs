//! Small numeric helpers.

/// Pairwise summation. Order-independent of worker count because callers
/// always pass an index-ordered buffer; pairwise recursion keeps the rounding
/// error O(log n) instead of O(n).
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

pub fn mean(xs: &[f64]) -> f64 {
    pairwise_sum(xs) / xs.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_naive_sum_on_small_input() {
        let xs = [1.0, 2.0, 3.5];
        assert_eq!(pairwise_sum(&xs), 6.5);
    }

    #[test]
    fn large_input_close_to_exact() {
        let xs: Vec<f64> = (0..100_000).map(|i| (i as f64).sin()).collect();
        let exact: f64 = xs.iter().map(|&x| x as f64).sum();
        assert!((pairwise_sum(&xs) - exact).abs() < 1e-9);
    }
}
