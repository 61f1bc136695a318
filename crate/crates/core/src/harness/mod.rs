//! Experiment pipeline: split, preprocess, tune on validation recall,
//! augment, train the OPF classifier and score on the held-out test rows.

mod partitions;
mod report;

use std::fmt;
use std::str::FromStr;

use ndarray::{Array2, Axis};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::TrainedOpf;
use crate::cluster::{ClusterOptions, KSweep};
use crate::data::{Dataset, Preprocessor, SplitSpec};
use crate::metrics::{score, Scores};
use crate::o2pf::{gaussians_from_forest, generate};
use crate::smote::{adasyn, borderline_smote, smote, NeighborConfig};
use crate::wilcoxon::{wilcoxon_signed_rank, WilcoxonResult};
use crate::{seed, Error, Result};

pub use partitions::{Partitions, Selection, SplitPartitions};
pub use report::{comparison_csv, comparison_text, experiment_csv, experiment_text, traces_csv};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// No augmentation.
    None,
    O2pf,
    Smote,
    BorderlineSmote,
    Adasyn,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::None, Method::O2pf, Method::Smote, Method::BorderlineSmote, Method::Adasyn];

    pub fn name(self) -> &'static str {
        match self {
            Method::None => "none",
            Method::O2pf => "o2pf",
            Method::Smote => "smote",
            Method::BorderlineSmote => "borderline_smote",
            Method::Adasyn => "adasyn",
        }
    }

    /// Hyperparameter grid used when none is configured: cluster `k_max` for
    /// O2PF, neighborhood size for the SMOTE family, nothing for `None`.
    pub fn default_grid(self) -> Vec<usize> {
        match self {
            Method::None => Vec::new(),
            Method::O2pf => (5..=100).step_by(5).collect(),
            Method::Smote | Method::BorderlineSmote | Method::Adasyn => (5..=10).collect(),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        match norm.as_str() {
            "none" | "original" => Ok(Method::None),
            "o2pf" => Ok(Method::O2pf),
            "smote" => Ok(Method::Smote),
            "borderline_smote" | "borderline" => Ok(Method::BorderlineSmote),
            "adasyn" => Ok(Method::Adasyn),
            _ => Err(Error::Config(format!("unknown method `{s}`"))),
        }
    }
}

/// How many synthetic minority rows to add to the training partition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BalanceMode {
    /// Grow the minority class to the majority count.
    Balance,
    /// Add `round(ratio * minority)` rows.
    Ratio(f64),
}

impl BalanceMode {
    pub fn n_new(self, counts: [usize; 2], minority: usize) -> usize {
        match self {
            BalanceMode::Balance => counts[1 - minority].saturating_sub(counts[minority]),
            BalanceMode::Ratio(r) => (r * counts[minority] as f64).round() as usize,
        }
    }
}

impl fmt::Display for BalanceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BalanceMode::Balance => f.write_str("balance"),
            BalanceMode::Ratio(r) => write!(f, "ratio:{r}"),
        }
    }
}

impl FromStr for BalanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<BalanceMode> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("balance") {
            return Ok(BalanceMode::Balance);
        }
        let value = s
            .strip_prefix("ratio:")
            .ok_or_else(|| Error::Config(format!("balance mode `{s}` is neither `balance` nor `ratio:<x>`")))?;
        match value.parse::<f64>() {
            Ok(r) if r >= 0.0 && r.is_finite() => Ok(BalanceMode::Ratio(r)),
            _ => Err(Error::Config(format!("invalid oversampling ratio `{value}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub method: Method,
    /// Empty means the method's default grid.
    pub grid: Vec<usize>,
    pub ratios: [f64; 3],
    pub trials: usize,
    pub base_seed: u64,
    pub balance_mode: BalanceMode,
    pub cluster: ClusterOptions,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            method: Method::O2pf,
            grid: Vec::new(),
            ratios: [0.7, 0.15, 0.15],
            trials: 20,
            base_seed: 0,
            balance_mode: BalanceMode::Balance,
            cluster: ClusterOptions::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn for_method(&self, method: Method) -> ExperimentConfig {
        ExperimentConfig { method, ..self.clone() }
    }

    pub fn effective_grid(&self) -> Vec<usize> {
        if self.grid.is_empty() {
            self.method.default_grid()
        } else {
            self.grid.clone()
        }
    }

    pub fn trial_seeds(&self) -> Vec<u64> {
        (0..self.trials as u64).map(|t| self.base_seed.wrapping_add(t)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.method != Method::None {
            let grid = self.effective_grid();
            if grid.is_empty() || grid.contains(&0) {
                return Err(Error::Config(format!("grid {grid:?} must be nonempty and positive")));
            }
        }
        SplitSpec::new(self.ratios, 0).validate()
    }
}

/// Validation recall of one grid value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub value: usize,
    pub validation_recall: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trial: usize,
    pub seed: u64,
    /// Winning hyperparameter; `None` for the unaugmented baseline.
    pub chosen: Option<usize>,
    /// Class counts of the training set the final model was fit on.
    pub train_counts: [usize; 2],
    pub test: Scores,
    pub trace: Vec<GridPoint>,
}

/// Grid values valid for a training minority of `n_min` rows: clamped to
/// `n_min - 1`, deduplicated, ascending.
pub fn clamp_grid(grid: &[usize], n_min: usize) -> Vec<usize> {
    let cap = n_min.saturating_sub(1);
    let mut out: Vec<usize> = grid.iter().map(|&g| g.min(cap)).filter(|&g| g > 0).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Produces augmented training sets for each grid value.
enum Augmenter<'a> {
    O2pf { sweep: KSweep, minority: Array2<f64> },
    Neighbor { method: Method, train: &'a Dataset },
}

impl<'a> Augmenter<'a> {
    fn new(method: Method, train: &'a Dataset, max_value: usize, opts: &ClusterOptions) -> Result<Augmenter<'a>> {
        Ok(match method {
            Method::O2pf => {
                let minority = train.minority_features();
                let sweep = KSweep::new(minority.view(), max_value, opts)?;
                Augmenter::O2pf { sweep, minority }
            }
            _ => Augmenter::Neighbor { method, train },
        })
    }

    fn synthesize(&self, value: usize, n_new: usize, seed: u64) -> Result<Array2<f64>> {
        match self {
            Augmenter::O2pf { sweep, minority } => {
                let best = sweep.best_up_to(value)?;
                let clusters = gaussians_from_forest(minority.view(), &best.forest);
                generate(&clusters, n_new, seed)
            }
            Augmenter::Neighbor { method, train } => {
                let cfg = NeighborConfig { kappa: value, seed };
                let (x, y, minority) = (train.features(), train.labels(), train.minority_label());
                match method {
                    Method::Smote => smote(train.minority_features().view(), n_new, &cfg),
                    Method::BorderlineSmote => borderline_smote(x, y, minority, n_new, &cfg),
                    Method::Adasyn => adasyn(x, y, minority, &cfg, n_new),
                    Method::None | Method::O2pf => unreachable!("handled elsewhere"),
                }
            }
        }
    }
}

fn evaluate(model: &TrainedOpf, ds: &Dataset) -> Result<Scores> {
    let pred = model.predict_batch(ds.features())?;
    score(ds.labels(), &pred, ds.minority_label())
}

/// Runs one trial on already split partitions. Training and validation rows
/// drive preprocessing and model selection; the test partition is only
/// reachable with the [`Selection`] produced once the winner is fixed.
pub fn run_trial_on<P: Partitions>(parts: &P, cfg: &ExperimentConfig, trial: usize, trial_seed: u64) -> Result<TrialReport> {
    let raw_train = parts.train();
    let pre = Preprocessor::fit(raw_train)?;
    let train = pre.apply(raw_train)?;
    let validation = pre.apply(parts.validation())?;
    let minority = train.minority_label() as usize;

    let (model, chosen, trace, train_counts) = if cfg.method == Method::None {
        (TrainedOpf::fit(&train)?, None, Vec::new(), train.class_counts())
    } else {
        let grid = clamp_grid(&cfg.effective_grid(), train.minority_count());
        let max_value = *grid.last().ok_or(Error::TooFewMinority(train.minority_count()))?;
        let augmenter = Augmenter::new(cfg.method, &train, max_value, &cfg.cluster)?;
        let n_new = cfg.balance_mode.n_new(train.class_counts(), minority);
        let sample_seed = seed::derive(trial_seed, 1);
        let mut trace = Vec::with_capacity(grid.len());
        let mut best: Option<(usize, f64, TrainedOpf, [usize; 2])> = None;
        for &value in &grid {
            let synthetic = augmenter.synthesize(value, n_new, sample_seed)?;
            let augmented = train.append(synthetic.view(), train.minority_label())?;
            let model = TrainedOpf::fit(&augmented)?;
            let recall = evaluate(&model, &validation)?.recall;
            trace.push(GridPoint { value, validation_recall: recall });
            if best.as_ref().is_none_or(|b| recall > b.1) {
                best = Some((value, recall, model, augmented.class_counts()));
            }
        }
        let (value, _, model, counts) = best.expect("grid is nonempty");
        (model, Some(value), trace, counts)
    };

    let selection = Selection::fix(chosen);
    let test = pre.apply(parts.test(&selection))?;
    let test = evaluate(&model, &test)?;
    Ok(TrialReport { trial, seed: trial_seed, chosen, train_counts, test, trace })
}

/// Splits `ds` with `trial_seed` and runs one trial.
pub fn run_trial(ds: &Dataset, cfg: &ExperimentConfig, trial: usize, trial_seed: u64) -> Result<TrialReport> {
    let parts = SplitPartitions::new(ds, &SplitSpec::new(cfg.ratios, trial_seed))?;
    run_trial_on(&parts, cfg, trial, trial_seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
}

impl MeanStd {
    pub fn of(values: &[f64]) -> MeanStd {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        MeanStd { mean, std: var.sqrt() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub recall: MeanStd,
    pub accuracy: MeanStd,
    pub f1: MeanStd,
    pub chosen: Option<MeanStd>,
}

impl Summary {
    pub fn of(trials: &[TrialReport]) -> Summary {
        let collect = |f: fn(&TrialReport) -> f64| MeanStd::of(&trials.iter().map(f).collect::<Vec<_>>());
        let chosen: Option<Vec<f64>> = trials.iter().map(|t| t.chosen.map(|c| c as f64)).collect();
        Summary {
            recall: collect(|t| t.test.recall),
            accuracy: collect(|t| t.test.accuracy),
            f1: collect(|t| t.test.f1),
            chosen: chosen.map(|c| MeanStd::of(&c)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub trials: Vec<TrialReport>,
    pub summary: Summary,
}

impl ExperimentReport {
    pub fn seeds(&self) -> Vec<u64> {
        self.trials.iter().map(|t| t.seed).collect()
    }

    pub fn recalls(&self) -> Vec<f64> {
        self.trials.iter().map(|t| t.test.recall).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Runs every trial of `cfg` (in parallel) and aggregates them.
pub fn run_experiment(ds: &Dataset, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let seeds = cfg.trial_seeds();
    let trials = seeds
        .par_iter()
        .enumerate()
        .map(|(t, &s)| {
            run_trial(ds, cfg, t, s).map_err(|e| {
                log::error!("{} trial {t} (seed {s}) failed: {e}", cfg.method);
                e
            })
        })
        .collect::<Result<Vec<_>>>()?;
    log::info!("{}: {} trials done", cfg.method, trials.len());
    let summary = Summary::of(&trials);
    Ok(ExperimentReport { config: cfg.clone(), trials, summary })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub method: Method,
    pub summary: Summary,
    /// Recall test against the best-mean method.
    pub versus_best: WilcoxonResult,
    pub is_best: bool,
    /// Not significantly worse than the best-mean method.
    pub equivalent_to_best: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub seeds: Vec<u64>,
    pub best: Method,
    pub rows: Vec<ComparisonRow>,
}

impl Comparison {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Pairs each report's recall vector with the best-mean method's. All
/// reports must cover the same trial seeds.
pub fn compare_methods(reports: &[ExperimentReport]) -> Result<Comparison> {
    let first = reports.first().ok_or(Error::EmptyInput)?;
    let seeds = first.seeds();
    if reports.iter().any(|r| r.seeds() != seeds) {
        return Err(Error::MismatchedSeeds);
    }
    let mut best = 0;
    for (i, r) in reports.iter().enumerate() {
        if r.summary.recall.mean > reports[best].summary.recall.mean {
            best = i;
        }
    }
    let best_recalls = reports[best].recalls();
    let best_mean = reports[best].summary.recall.mean;
    let rows = reports
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let versus_best = wilcoxon_signed_rank(&r.recalls(), &best_recalls)?;
            let worse = versus_best.significant && r.summary.recall.mean < best_mean;
            Ok(ComparisonRow {
                method: r.config.method,
                summary: r.summary.clone(),
                versus_best,
                is_best: i == best,
                equivalent_to_best: !worse,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Comparison { seeds, best: reports[best].config.method, rows })
}

/// Runs `methods` on the same trial seeds and compares them.
pub fn run_comparison(ds: &Dataset, base: &ExperimentConfig, methods: &[Method]) -> Result<(Vec<ExperimentReport>, Comparison)> {
    let reports =
        methods.iter().map(|&m| run_experiment(ds, &base.for_method(m))).collect::<Result<Vec<_>>>()?;
    let comparison = compare_methods(&reports)?;
    Ok((reports, comparison))
}

/// Class counts, per-feature missing values and feature ranges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub n_samples: usize,
    pub n_features: usize,
    pub class_names: [String; 2],
    pub class_counts: [usize; 2],
    pub minority_label: u8,
    pub imbalance_ratio: f64,
    pub features: Vec<FeatureSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSummary {
    pub name: String,
    pub missing: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

pub fn inspect(ds: &Dataset) -> DatasetSummary {
    let missing = ds.missing_per_feature();
    let features = ds
        .features()
        .axis_iter(Axis(1))
        .zip(ds.feature_names())
        .zip(missing)
        .map(|((col, name), missing)| {
            let present: Vec<f64> = col.iter().copied().filter(|v| !v.is_nan()).collect();
            let n = present.len().max(1) as f64;
            FeatureSummary {
                name: name.clone(),
                missing,
                min: present.iter().copied().fold(f64::INFINITY, f64::min),
                max: present.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                mean: present.iter().sum::<f64>() / n,
            }
        })
        .collect();
    let counts = ds.class_counts();
    DatasetSummary {
        n_samples: ds.n_samples(),
        n_features: ds.n_features(),
        class_names: ds.class_names().clone(),
        class_counts: counts,
        minority_label: ds.minority_label(),
        imbalance_ratio: ds.majority_count() as f64 / ds.minority_count().max(1) as f64,
        features,
    }
}
