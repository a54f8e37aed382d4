//! Deterministic pairwise summation.
//!
//! Every large reduction in the crate goes through [`pairwise_sum`] over a
//! slice whose order is fixed by the input, so results do not depend on the
//! number of rayon workers.

const NAIVE_THRESHOLD: usize = 64;

/// Pairwise (tree) sum of a slice. Error grows as O(eps log n).
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= NAIVE_THRESHOLD {
        return v.iter().fold(0.0, |acc, &x| acc + x);
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Component-wise pairwise sum of fixed-width rows.
pub fn pairwise_sum_rows<const N: usize>(rows: &[[f64; N]]) -> [f64; N] {
    if rows.len() <= NAIVE_THRESHOLD {
        let mut acc = [0.0; N];
        for r in rows {
            for (a, x) in acc.iter_mut().zip(r) {
                *a += x;
            }
        }
        return acc;
    }
    let (a, b) = rows.split_at(rows.len() / 2);
    let sa = pairwise_sum_rows(a);
    let sb = pairwise_sum_rows(b);
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = sa[i] + sb[i];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_exact_on_integers() {
        let v: Vec<f64> = (1..=10_000).map(f64::from).collect();
        assert_eq!(pairwise_sum(&v), 50_005_000.0);
    }

    #[test]
    fn beats_naive_on_many_small_terms() {
        let v = vec![0.1; 1_000_000];
        let naive: f64 = v.iter().sum();
        let pw = pairwise_sum(&v);
        assert!((pw - 100_000.0).abs() <= (naive - 100_000.0).abs());
        assert!((pw - 100_000.0).abs() < 1e-8);
    }

    #[test]
    fn rows_sum_componentwise() {
        let rows: Vec<[f64; 2]> = (0..1000).map(|i| [i as f64, 1.0]).collect();
        assert_eq!(pairwise_sum_rows(&rows), [499_500.0, 1000.0]);
    }
}
