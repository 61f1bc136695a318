//! SMOTE, Borderline-SMOTE (borderline-1) and ADASYN.
//!
//! All three interpolate between a minority seed and one of its `kappa`
//! nearest minority neighbors; they differ in how seeds are chosen.

use ndarray::{Array2, ArrayView2, Axis};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::data::Label;
use crate::neighbors::k_nearest;
use crate::o2pf::largest_remainder;
use crate::{seed, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborConfig {
    pub kappa: usize,
    pub seed: u64,
}

/// Local-neighborhood status of a minority sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Neighborhood {
    /// Fewer than half of the neighbors are majority.
    Safe,
    /// At least half, but not all, of the neighbors are majority.
    Danger,
    /// Every neighbor is majority.
    Noise,
}

fn check_kappa(kappa: usize, available: usize) -> Result<()> {
    if kappa == 0 || kappa > available {
        return Err(Error::InvalidNeighborhood { k: kappa, n: available + 1 });
    }
    Ok(())
}

/// Nearest minority neighbors of every minority row, as positions into the
/// minority list.
fn minority_neighbors(x: ArrayView2<'_, f64>, kappa: usize) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..x.nrows()).collect();
    (0..x.nrows()).map(|i| k_nearest(x, i, &all, kappa).into_iter().map(|(j, _)| j).collect()).collect()
}

fn interpolate(x: ArrayView2<'_, f64>, from: usize, toward: usize, rng: &mut ChaCha8Rng, out: &mut Vec<f64>) {
    let gap: f64 = rng.random();
    let (a, b) = (x.row(from), x.row(toward));
    out.extend(a.iter().zip(b.iter()).map(|(p, q)| p + gap * (q - p)));
}

fn finish(values: Vec<f64>, m: usize) -> Array2<f64> {
    let rows = values.len() / m.max(1);
    Array2::from_shape_vec((rows, m), values).expect("row-major buffer")
}

/// Plain SMOTE: seeds drawn uniformly from the minority rows.
pub fn smote(minority: ArrayView2<'_, f64>, n_new: usize, cfg: &NeighborConfig) -> Result<Array2<f64>> {
    let n_min = minority.nrows();
    if n_min < 2 {
        return Err(Error::TooFewMinority(n_min));
    }
    check_kappa(cfg.kappa, n_min - 1)?;
    let neighbors = minority_neighbors(minority, cfg.kappa);
    let mut rng = seed::rng(cfg.seed);
    let mut values = Vec::with_capacity(n_new * minority.ncols());
    for _ in 0..n_new {
        let i = rng.random_range(0..n_min);
        let nn = neighbors[i][rng.random_range(0..cfg.kappa)];
        interpolate(minority, i, nn, &mut rng, &mut values);
    }
    Ok(finish(values, minority.ncols()))
}

fn check_labels(x: ArrayView2<'_, f64>, y: &[Label], minority_label: Label) -> Result<Vec<usize>> {
    if y.len() != x.nrows() {
        return Err(Error::LengthMismatch(x.nrows(), y.len()));
    }
    if !(y.contains(&0) && y.contains(&1)) {
        return Err(Error::SingleClass);
    }
    let minority: Vec<usize> = (0..y.len()).filter(|&i| y[i] == minority_label).collect();
    if minority.len() < 2 {
        return Err(Error::TooFewMinority(minority.len()));
    }
    Ok(minority)
}

/// Majority count among the `kappa` nearest neighbors (all classes) of every
/// minority row, in minority order.
fn majority_counts(x: ArrayView2<'_, f64>, y: &[Label], minority: &[usize], kappa: usize) -> Vec<usize> {
    let all: Vec<usize> = (0..x.nrows()).collect();
    let minority_label = y[minority[0]];
    minority
        .iter()
        .map(|&i| k_nearest(x, i, &all, kappa).iter().filter(|(j, _)| y[*j] != minority_label).count())
        .collect()
}

/// SAFE / DANGER / NOISE status of every minority row, in dataset order.
pub fn classify_borderline(
    x: ArrayView2<'_, f64>,
    y: &[Label],
    minority_label: Label,
    kappa: usize,
) -> Result<Vec<(usize, Neighborhood)>> {
    let minority = check_labels(x, y, minority_label)?;
    check_kappa(kappa, x.nrows() - 1)?;
    let counts = majority_counts(x, y, &minority, kappa);
    Ok(minority
        .iter()
        .zip(counts)
        .map(|(&i, maj)| {
            let status = if maj == kappa {
                Neighborhood::Noise
            } else if 2 * maj >= kappa {
                Neighborhood::Danger
            } else {
                Neighborhood::Safe
            };
            (i, status)
        })
        .collect())
}

/// Borderline-SMOTE: seeds drawn uniformly from the DANGER minority rows and
/// interpolated toward minority neighbors. Falls back to plain SMOTE when no
/// minority row is in danger.
pub fn borderline_smote(
    x: ArrayView2<'_, f64>,
    y: &[Label],
    minority_label: Label,
    n_new: usize,
    cfg: &NeighborConfig,
) -> Result<Array2<f64>> {
    let minority = check_labels(x, y, minority_label)?;
    check_kappa(cfg.kappa, minority.len() - 1)?;
    let status = classify_borderline(x, y, minority_label, cfg.kappa)?;
    let xm = x.select(Axis(0), &minority);
    let danger: Vec<usize> =
        status.iter().enumerate().filter(|(_, s)| s.1 == Neighborhood::Danger).map(|(pos, _)| pos).collect();
    if danger.is_empty() {
        log::info!("borderline-smote: no DANGER samples, falling back to smote");
        return smote(xm.view(), n_new, cfg);
    }
    let neighbors = minority_neighbors(xm.view(), cfg.kappa);
    let mut rng = seed::rng(cfg.seed);
    let mut values = Vec::with_capacity(n_new * x.ncols());
    for _ in 0..n_new {
        let i = danger[rng.random_range(0..danger.len())];
        let nn = neighbors[i][rng.random_range(0..cfg.kappa)];
        interpolate(xm.view(), i, nn, &mut rng, &mut values);
    }
    Ok(finish(values, x.ncols()))
}

/// Number of samples ADASYN generates from each minority row (dataset order
/// of the minority rows). Weights are the majority fractions of the `kappa`
/// all-class neighborhoods; `None` when every weight is zero.
pub fn adasyn_allocation(
    x: ArrayView2<'_, f64>,
    y: &[Label],
    minority_label: Label,
    kappa: usize,
    n_new: usize,
) -> Result<Option<Vec<usize>>> {
    let minority = check_labels(x, y, minority_label)?;
    check_kappa(kappa, x.nrows() - 1)?;
    Ok(adasyn_counts(&majority_counts(x, y, &minority, kappa), n_new))
}

/// Splits `n_new` in proportion to per-seed majority-neighbor counts
/// (`r_i = c_i / kappa`, so normalizing `c` normalizes `r`). Remainders go to
/// the largest fractional parts, earlier seeds first. `None` when all counts
/// are zero.
pub fn adasyn_counts(majority_counts: &[usize], n_new: usize) -> Option<Vec<usize>> {
    if majority_counts.iter().all(|&c| c == 0) {
        return None;
    }
    Some(largest_remainder(majority_counts, n_new))
}

/// ADASYN: more samples from minority rows whose neighborhoods are dominated
/// by the majority class. Falls back to plain SMOTE when no minority row has a
/// majority neighbor.
pub fn adasyn(
    x: ArrayView2<'_, f64>,
    y: &[Label],
    minority_label: Label,
    cfg: &NeighborConfig,
    n_new: usize,
) -> Result<Array2<f64>> {
    let minority = check_labels(x, y, minority_label)?;
    check_kappa(cfg.kappa, minority.len() - 1)?;
    let xm = x.select(Axis(0), &minority);
    let Some(per_seed) = adasyn_allocation(x, y, minority_label, cfg.kappa, n_new)? else {
        log::info!("adasyn: all minority weights are zero, falling back to smote");
        return smote(xm.view(), n_new, cfg);
    };
    let neighbors = minority_neighbors(xm.view(), cfg.kappa);
    let mut rng = seed::rng(cfg.seed);
    let mut values = Vec::with_capacity(n_new * x.ncols());
    for (i, &g) in per_seed.iter().enumerate() {
        for _ in 0..g {
            let nn = neighbors[i][rng.random_range(0..cfg.kappa)];
            interpolate(xm.view(), i, nn, &mut rng, &mut values);
        }
    }
    Ok(finish(values, x.ncols()))
}
