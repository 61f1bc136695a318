//! O2PF oversampling.
//!
//! The minority class is clustered with the unsupervised OPF; each cluster is
//! summarized by its mean and unbiased covariance, and synthetic samples are
//! drawn from the resulting Gaussians with counts proportional to cluster
//! sizes.

use nalgebra::{DMatrix, SymmetricEigen};
use ndarray::{Array1, Array2, ArrayView2, Axis};
use rand_distr::{Distribution, StandardNormal};

use crate::cluster::{find_best_k_with, ClusterForest, ClusterOptions};
use crate::data::Dataset;
use crate::{seed, Error, Result};

/// Gaussian summary of one minority cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterGaussian {
    pub mean: Array1<f64>,
    pub covariance: Array2<f64>,
    pub count: usize,
    /// Rows of the minority matrix belonging to the cluster.
    pub members: Vec<usize>,
}

impl ClusterGaussian {
    /// Mean and unbiased covariance of the selected rows. A single member
    /// yields the zero matrix.
    pub fn from_rows(x: ArrayView2<'_, f64>, members: Vec<usize>) -> ClusterGaussian {
        assert!(!members.is_empty(), "cluster without members");
        let rows = x.select(Axis(0), &members);
        let count = members.len();
        let mean = rows.mean_axis(Axis(0)).expect("nonempty");
        let m = x.ncols();
        let mut covariance = Array2::zeros((m, m));
        if count > 1 {
            let centered = &rows - &mean;
            covariance = centered.t().dot(&centered) / (count as f64 - 1.0);
        }
        ClusterGaussian { mean, covariance, count, members }
    }
}

/// Gaussians for every tree of `forest`, in cluster order.
pub fn gaussians_from_forest(x: ArrayView2<'_, f64>, forest: &ClusterForest) -> Vec<ClusterGaussian> {
    forest.members().into_iter().map(|m| ClusterGaussian::from_rows(x, m)).collect()
}

/// Clusters the minority rows (best `k` up to `k_max`) and fits one Gaussian
/// per cluster.
pub fn fit_minority_clusters(minority: ArrayView2<'_, f64>, k_max: usize) -> Result<Vec<ClusterGaussian>> {
    fit_minority_clusters_with(minority, k_max, &ClusterOptions::default())
}

pub fn fit_minority_clusters_with(
    minority: ArrayView2<'_, f64>,
    k_max: usize,
    opts: &ClusterOptions,
) -> Result<Vec<ClusterGaussian>> {
    if minority.nrows() < 2 {
        return Err(Error::TooFewMinority(minority.nrows()));
    }
    let best = find_best_k_with(minority, k_max, opts)?;
    Ok(gaussians_from_forest(minority, &best.forest))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OversamplePlan {
    pub per_cluster: Vec<usize>,
    pub total: usize,
}

/// Splits `n_new` across clusters in proportion to their sizes, by largest
/// remainder (ties to the earlier cluster). The counts always sum to `n_new`.
pub fn allocate(clusters: &[ClusterGaussian], n_new: usize) -> OversamplePlan {
    let sizes: Vec<usize> = clusters.iter().map(|c| c.count).collect();
    OversamplePlan { per_cluster: largest_remainder(&sizes, n_new), total: n_new }
}

/// Hamilton apportionment of `total` by integer `weights`.
pub(crate) fn largest_remainder(weights: &[usize], total: usize) -> Vec<usize> {
    let sum: u128 = weights.iter().map(|&w| w as u128).sum();
    if sum == 0 {
        return vec![0; weights.len()];
    }
    let mut counts = Vec::with_capacity(weights.len());
    let mut remainders = Vec::with_capacity(weights.len());
    for (i, &w) in weights.iter().enumerate() {
        let share = total as u128 * w as u128;
        counts.push((share / sum) as usize);
        remainders.push((share % sum, i));
    }
    let left = total - counts.iter().sum::<usize>();
    remainders.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for &(_, i) in remainders.iter().take(left) {
        counts[i] += 1;
    }
    counts
}

/// Draws `count` samples from `N(mean, covariance)`. The covariance is
/// factored by symmetric eigendecomposition with negative eigenvalues clamped
/// to zero, so singular and zero matrices are fine.
pub fn synthesize(cg: &ClusterGaussian, count: usize, seed: u64) -> Result<Array2<f64>> {
    let m = cg.mean.len();
    let cov = &cg.covariance;
    if cov.dim() != (m, m) {
        return Err(Error::DimensionMismatch { expected: m * m, got: cov.len() });
    }
    let scale = cov.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    for i in 0..m {
        for j in (i + 1)..m {
            if (cov[[i, j]] - cov[[j, i]]).abs() > 1e-9 * scale {
                return Err(Error::NonSymmetric);
            }
        }
    }

    let mut out = Array2::from_shape_fn((count, m), |(_, j)| cg.mean[j]);
    if count == 0 || cov.iter().all(|&v| v == 0.0) {
        return Ok(out);
    }

    let eig = SymmetricEigen::new(DMatrix::from_fn(m, m, |i, j| cov[[i, j]]));
    // factor = V * sqrt(max(lambda, 0))
    let factor = DMatrix::from_fn(m, m, |i, j| eig.eigenvectors[(i, j)] * eig.eigenvalues[j].max(0.0).sqrt());

    let mut rng = seed::rng(seed);
    let mut z = vec![0.0; m];
    for mut row in out.rows_mut() {
        for v in z.iter_mut() {
            *v = StandardNormal.sample(&mut rng);
        }
        for i in 0..m {
            let mut acc = 0.0;
            for (j, zj) in z.iter().enumerate() {
                acc += factor[(i, j)] * zj;
            }
            row[i] += acc;
        }
    }
    Ok(out)
}

/// Synthetic minority rows for a fitted set of clusters. Cluster `c` draws
/// from its own stream derived from `seed`, so results do not depend on the
/// order clusters are processed in.
pub fn generate(clusters: &[ClusterGaussian], n_new: usize, seed: u64) -> Result<Array2<f64>> {
    let m = clusters.first().map_or(0, |c| c.mean.len());
    let plan = allocate(clusters, n_new);
    let mut parts = Vec::with_capacity(clusters.len());
    for (c, (cg, &count)) in clusters.iter().zip(&plan.per_cluster).enumerate() {
        parts.push(synthesize(cg, count, seed::derive(seed, c as u64))?);
    }
    if parts.is_empty() {
        return Ok(Array2::zeros((0, m)));
    }
    let views: Vec<_> = parts.iter().map(|p| p.view()).collect();
    Ok(ndarray::concatenate(Axis(0), &views).expect("equal widths"))
}

/// Appends `round(ratio * n_minority)` synthetic minority samples. A ratio of
/// 1 doubles the minority class.
pub fn oversample(ds: &Dataset, ratio: f64, k_max: usize, seed: u64) -> Result<Dataset> {
    if !(ratio >= 0.0 && ratio.is_finite()) {
        return Err(Error::Config(format!("oversampling ratio {ratio} must be a nonnegative number")));
    }
    let n_new = (ratio * ds.minority_count() as f64).round() as usize;
    oversample_count(ds, n_new, k_max, seed)
}

/// Appends exactly `n_new` synthetic minority samples.
pub fn oversample_count(ds: &Dataset, n_new: usize, k_max: usize, seed: u64) -> Result<Dataset> {
    oversample_count_with(ds, n_new, k_max, seed, &ClusterOptions::default())
}

pub fn oversample_count_with(
    ds: &Dataset,
    n_new: usize,
    k_max: usize,
    seed: u64,
    opts: &ClusterOptions,
) -> Result<Dataset> {
    let n_min = ds.minority_count();
    if n_min == 0 {
        return Err(Error::TooFewMinority(0));
    }
    if n_new == 0 {
        return Ok(ds.clone());
    }
    let clusters = fit_minority_clusters_with(ds.minority_features().view(), k_max, opts)?;
    let synthetic = generate(&clusters, n_new, seed)?;
    ds.append(synthetic.view(), ds.minority_label())
}
