//! Exact brute-force neighbor search shared by the graph builders and the
//! SMOTE family.

use ndarray::{ArrayView1, ArrayView2};

pub(crate) fn euclidean(a: ArrayView1<'_, f64>, b: ArrayView1<'_, f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// The `k` rows of `candidates` (indices into `x`) closest to row `query`,
/// excluding `query` itself. Ties are broken by the lower index.
pub(crate) fn k_nearest(x: ArrayView2<'_, f64>, query: usize, candidates: &[usize], k: usize) -> Vec<(usize, f64)> {
    let q = x.row(query);
    let mut scored: Vec<(usize, f64)> = candidates
        .iter()
        .filter(|&&c| c != query)
        .map(|&c| (c, euclidean(q, x.row(c))))
        .collect();
    scored.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    scored.truncate(k);
    scored
}
