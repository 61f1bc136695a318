//! Paired Wilcoxon signed-rank test, two-sided.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const ALPHA: f64 = 0.05;
/// Minimum number of nonzero differences for a conclusive result.
pub const MIN_PAIRS: usize = 5;
/// Largest effective sample size handled by the exact null distribution.
pub const EXACT_LIMIT: usize = 25;
/// Absolute differences at or below this are treated as zero.
pub const ZERO_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonResult {
    /// Smaller of the positive and negative signed-rank sums.
    pub statistic: f64,
    pub p_value: f64,
    pub n_effective: usize,
    pub significant: bool,
    /// Too few nonzero differences to test; `p_value` is 1.
    pub inconclusive: bool,
}

/// Average ranks (1-based) of `values`, ties sharing the mean of their
/// positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end
        let avg = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    ranks
}

/// Number of the 2^n sign assignments giving each positive rank sum, indexed
/// by twice the sum. Ranks must be multiples of 1/2.
pub fn signed_rank_counts(ranks: &[f64]) -> Vec<u64> {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0u64; total + 1];
    counts[0] = 1;
    let mut reach = 0;
    for &d in &doubled {
        for s in (0..=reach).rev() {
            if counts[s] != 0 {
                counts[s + d] += counts[s];
            }
        }
        reach += d;
    }
    counts
}

fn exact_p(ranks: &[f64], w: f64) -> f64 {
    let counts = signed_rank_counts(ranks);
    let limit = (2.0 * w).round() as usize;
    let tail: u64 = counts.iter().take(limit + 1).sum();
    let p = 2.0 * tail as f64 / 2f64.powi(ranks.len() as i32);
    p.min(1.0)
}

fn normal_p(abs_diff: &[f64], ranks: &[f64], w: f64) -> f64 {
    let n = ranks.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
    let mut sorted = abs_diff.to_vec();
    sorted.sort_by(f64::total_cmp);
    for group in sorted.chunk_by(|a, b| a == b) {
        let t = group.len() as f64;
        var -= (t * t * t - t) / 48.0;
    }
    if var <= 0.0 {
        return 1.0;
    }
    let z = (w - mean) / var.sqrt();
    (libm::erfc(-z / std::f64::consts::SQRT_2)).min(1.0)
}

pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<WilcoxonResult> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).filter(|d| d.abs() > ZERO_TOLERANCE).collect();
    let n = diffs.len();
    if n < MIN_PAIRS {
        return Ok(WilcoxonResult { statistic: 0.0, p_value: 1.0, n_effective: n, significant: false, inconclusive: true });
    }
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = average_ranks(&abs);
    let positive: f64 = diffs.iter().zip(&ranks).filter(|(d, _)| **d > 0.0).map(|(_, r)| r).sum();
    let negative: f64 = diffs.iter().zip(&ranks).filter(|(d, _)| **d < 0.0).map(|(_, r)| r).sum();
    let w = positive.min(negative);
    let p_value = if n <= EXACT_LIMIT { exact_p(&ranks, w) } else { normal_p(&abs, &ranks, w) };
    Ok(WilcoxonResult { statistic: w, p_value, n_effective: n, significant: p_value < ALPHA, inconclusive: false })
}
