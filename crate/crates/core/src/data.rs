//! Tabular binary-classification datasets: CSV ingestion, mean imputation,
//! z-score standardization and randomized three-way splits.
//!
//! Missing cells are carried as `NaN` until [`MeanImputer`] fills them.
//! Labels are always `0` or `1`; the minority class is the positive class
//! for every downstream metric.

use std::collections::BTreeSet;
use std::path::Path;

use ndarray::{Array2, ArrayView1, ArrayView2, Axis};
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::{seed, Error, Result};

pub type Label = u8;

/// Attempts made by [`split`] before giving up on placing both classes in
/// every partition.
pub const MAX_SPLIT_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Array2<f64>,
    labels: Vec<Label>,
    feature_names: Vec<String>,
    class_names: [String; 2],
    minority_label: Label,
}

impl Dataset {
    /// Builds a dataset and elects the minority label from the class counts.
    /// Ties go to label 1.
    pub fn new(features: Array2<f64>, labels: Vec<Label>, feature_names: Vec<String>) -> Result<Self> {
        let counts = count_labels(&labels)?;
        let minority_label = if counts[1] <= counts[0] { 1 } else { 0 };
        Self::with_minority(features, labels, feature_names, minority_label)
    }

    /// Builds a dataset with an explicit minority label. Partitions of a
    /// larger dataset keep the parent's minority label even if their own
    /// counts disagree.
    pub fn with_minority(
        features: Array2<f64>,
        labels: Vec<Label>,
        feature_names: Vec<String>,
        minority_label: Label,
    ) -> Result<Self> {
        let (n, m) = features.dim();
        if labels.len() != n {
            return Err(Error::LengthMismatch(n, labels.len()));
        }
        if m == 0 {
            return Err(Error::InvalidDataset("no feature columns".into()));
        }
        if feature_names.len() != m {
            return Err(Error::InvalidDataset(format!(
                "{} feature names for {m} columns",
                feature_names.len()
            )));
        }
        if minority_label > 1 {
            return Err(Error::InvalidDataset(format!("label {minority_label} is not binary")));
        }
        count_labels(&labels)?;
        Ok(Dataset {
            features,
            labels,
            feature_names,
            class_names: ["0".into(), "1".into()],
            minority_label,
        })
    }

    pub fn features(&self) -> ArrayView2<'_, f64> {
        self.features.view()
    }

    pub fn row(&self, i: usize) -> ArrayView1<'_, f64> {
        self.features.row(i)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    /// Original spelling of labels 0 and 1 in the source file.
    pub fn class_names(&self) -> &[String; 2] {
        &self.class_names
    }

    pub fn set_class_names(&mut self, names: [String; 2]) {
        self.class_names = names;
    }

    pub fn minority_label(&self) -> Label {
        self.minority_label
    }

    pub fn majority_label(&self) -> Label {
        1 - self.minority_label
    }

    pub fn n_samples(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.features.ncols()
    }

    /// Counts indexed by label.
    pub fn class_counts(&self) -> [usize; 2] {
        let ones = self.labels.iter().filter(|&&l| l == 1).count();
        [self.labels.len() - ones, ones]
    }

    pub fn minority_count(&self) -> usize {
        self.class_counts()[self.minority_label as usize]
    }

    pub fn majority_count(&self) -> usize {
        self.class_counts()[self.majority_label() as usize]
    }

    pub fn has_both_classes(&self) -> bool {
        let c = self.class_counts();
        c[0] > 0 && c[1] > 0
    }

    pub fn minority_indices(&self) -> Vec<usize> {
        self.indices_of(self.minority_label)
    }

    pub fn indices_of(&self, label: Label) -> Vec<usize> {
        (0..self.labels.len()).filter(|&i| self.labels[i] == label).collect()
    }

    /// Rows of the minority class, in dataset order.
    pub fn minority_features(&self) -> Array2<f64> {
        self.features.select(Axis(0), &self.minority_indices())
    }

    /// Number of missing (`NaN`) cells.
    pub fn missing_count(&self) -> usize {
        self.features.iter().filter(|v| v.is_nan()).count()
    }

    pub fn missing_per_feature(&self) -> Vec<usize> {
        self.features
            .columns()
            .into_iter()
            .map(|c| c.iter().filter(|v| v.is_nan()).count())
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.features.iter().all(|v| v.is_finite())
    }

    /// Rows `indices`, in that order. Keeps names and minority label.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            features: self.features.select(Axis(0), indices),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            feature_names: self.feature_names.clone(),
            class_names: self.class_names.clone(),
            minority_label: self.minority_label,
        }
    }

    /// Same labels and metadata with a replaced feature matrix.
    pub fn with_features(&self, features: Array2<f64>) -> Result<Dataset> {
        if features.dim() != self.features.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.features.len(),
                got: features.len(),
            });
        }
        Ok(Dataset { features, ..self.clone() })
    }

    /// Appends `rows`, all carrying `label`. Existing rows are untouched.
    pub fn append(&self, rows: ArrayView2<'_, f64>, label: Label) -> Result<Dataset> {
        if rows.ncols() != self.n_features() {
            return Err(Error::DimensionMismatch { expected: self.n_features(), got: rows.ncols() });
        }
        let features = ndarray::concatenate(Axis(0), &[self.features.view(), rows])
            .expect("column counts checked above");
        let mut labels = self.labels.clone();
        labels.extend(std::iter::repeat_n(label, rows.nrows()));
        Ok(Dataset { features, labels, ..self.clone() })
    }
}

fn count_labels(labels: &[Label]) -> Result<[usize; 2]> {
    let mut counts = [0usize; 2];
    for &l in labels {
        match l {
            0 | 1 => counts[l as usize] += 1,
            other => return Err(Error::InvalidDataset(format!("label {other} is not binary"))),
        }
    }
    Ok(counts)
}

/// Column selector by header name or zero-based position. Negative positions
/// count from the end (`-1` is the last column).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColumnRef {
    Name(String),
    Index(i64),
}

impl ColumnRef {
    /// Integers are positions, anything else is a header name.
    pub fn parse(s: &str) -> ColumnRef {
        match s.trim().parse::<i64>() {
            Ok(i) => ColumnRef::Index(i),
            Err(_) => ColumnRef::Name(s.trim().to_string()),
        }
    }

    fn resolve(&self, header: Option<&[String]>, width: usize) -> Result<usize> {
        match self {
            ColumnRef::Index(i) => {
                let idx = if *i < 0 { width as i64 + i } else { *i };
                if idx < 0 || idx as usize >= width {
                    return Err(Error::MissingColumn(i.to_string()));
                }
                Ok(idx as usize)
            }
            ColumnRef::Name(name) => header
                .and_then(|h| h.iter().position(|c| c == name))
                .ok_or_else(|| Error::MissingColumn(name.clone())),
        }
    }
}

impl std::fmt::Display for ColumnRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ColumnRef::Name(n) => f.write_str(n),
            ColumnRef::Index(i) => write!(f, "{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvOptions {
    pub label_column: ColumnRef,
    pub missing_token: String,
    /// `None` detects a header: the first row is a header when one of its
    /// feature cells is neither numeric nor the missing token.
    pub has_header: Option<bool>,
    /// Columns dropped before parsing, e.g. sample identifiers.
    pub ignore_columns: Vec<ColumnRef>,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions {
            label_column: ColumnRef::Index(-1),
            missing_token: "?".into(),
            has_header: None,
            ignore_columns: Vec::new(),
        }
    }
}

/// Reads a comma-separated file. Cells equal to the missing token become
/// `NaN`; row order is preserved.
pub fn load_csv(path: impl AsRef<Path>, opts: &CsvOptions) -> Result<Dataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    parse_csv(&text, opts)
}

pub fn parse_csv(text: &str, opts: &CsvOptions) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(None)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<String>> = Vec::new();
    for record in reader.records() {
        let record = record?;
        if record.iter().all(|c| c.is_empty()) {
            continue;
        }
        rows.push(record.iter().map(str::to_string).collect());
    }
    if rows.is_empty() {
        return Err(Error::EmptyFile);
    }
    let width = rows[0].len();

    let needs_header = matches!(opts.label_column, ColumnRef::Name(_))
        || opts.ignore_columns.iter().any(|c| matches!(c, ColumnRef::Name(_)));
    let has_header = match opts.has_header {
        Some(h) => h,
        None if needs_header => true,
        None => {
            let label = opts.label_column.resolve(None, width)?;
            rows[0]
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != label)
                .any(|(_, c)| c != &opts.missing_token && c.parse::<f64>().is_err())
        }
    };
    let header = if has_header { Some(rows.remove(0)) } else { None };
    if rows.is_empty() {
        return Err(Error::EmptyFile);
    }

    let label_col = opts.label_column.resolve(header.as_deref(), width)?;
    let mut dropped = BTreeSet::new();
    for c in &opts.ignore_columns {
        dropped.insert(c.resolve(header.as_deref(), width)?);
    }
    if dropped.contains(&label_col) {
        return Err(Error::InvalidDataset("label column is also ignored".into()));
    }
    let feature_cols: Vec<usize> = (0..width).filter(|j| *j != label_col && !dropped.contains(j)).collect();
    let feature_names = match &header {
        Some(h) => feature_cols.iter().map(|&j| h[j].clone()).collect(),
        None => feature_cols.iter().map(|j| format!("x{j}")).collect(),
    };

    let first_data_line = usize::from(has_header) + 1;
    let n = rows.len();
    let mut features = Array2::<f64>::zeros((n, feature_cols.len()));
    let mut raw_labels = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        for (out, &j) in feature_cols.iter().enumerate() {
            let cell = &row[j];
            features[[i, out]] = if *cell == opts.missing_token {
                f64::NAN
            } else {
                match cell.parse::<f64>() {
                    Ok(v) if v.is_finite() => v,
                    _ => {
                        return Err(Error::ParseCell { row: first_data_line + i, column: j, value: cell.clone() })
                    }
                }
            };
        }
        raw_labels.push(row[label_col].clone());
    }

    let (labels, class_names) = encode_labels(&raw_labels)?;
    let mut ds = Dataset::new(features, labels, feature_names)?;
    ds.set_class_names(class_names);
    Ok(ds)
}

/// Maps raw label strings onto {0, 1}. Numeric `0`/`1` labels are kept as is;
/// otherwise the two distinct values are ordered (numerically when both parse,
/// lexically otherwise) and the first becomes 0.
fn encode_labels(raw: &[String]) -> Result<(Vec<Label>, [String; 2])> {
    let distinct: BTreeSet<&str> = raw.iter().map(String::as_str).collect();
    if distinct.len() > 2 {
        return Err(Error::TooManyLabels(distinct.len()));
    }
    let numeric: Option<Vec<f64>> = distinct.iter().map(|s| s.parse::<f64>().ok()).collect();
    let mut values: Vec<&str> = distinct.into_iter().collect();
    if let Some(nums) = &numeric {
        if nums.iter().all(|&v| v == 0.0 || v == 1.0) {
            let labels = raw.iter().map(|s| s.parse::<f64>().unwrap() as Label).collect();
            return Ok((labels, ["0".into(), "1".into()]));
        }
        values.sort_by(|a, b| a.parse::<f64>().unwrap().total_cmp(&b.parse::<f64>().unwrap()));
    }
    let labels = raw.iter().map(|s| if s == values[0] { 0 } else { 1 }).collect();
    let second = values.get(1).map_or_else(String::new, |s| s.to_string());
    Ok((labels, [values[0].to_string(), second]))
}

/// Per-feature means of the observed training cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanImputer {
    pub means: Vec<f64>,
}

impl MeanImputer {
    pub fn fit(train: &Dataset) -> Result<MeanImputer> {
        let mut means = Vec::with_capacity(train.n_features());
        for (j, col) in train.features.columns().into_iter().enumerate() {
            let observed: Vec<f64> = col.iter().copied().filter(|v| !v.is_nan()).collect();
            if observed.is_empty() {
                return Err(Error::AllMissing(train.feature_names[j].clone()));
            }
            means.push(observed.iter().sum::<f64>() / observed.len() as f64);
        }
        Ok(MeanImputer { means })
    }

    pub fn apply(&self, ds: &Dataset) -> Result<Dataset> {
        if ds.n_features() != self.means.len() {
            return Err(Error::DimensionMismatch { expected: self.means.len(), got: ds.n_features() });
        }
        let mut features = ds.features.clone();
        for (mut col, &mean) in features.columns_mut().into_iter().zip(&self.means) {
            col.mapv_inplace(|v| if v.is_nan() { mean } else { v });
        }
        ds.with_features(features)
    }
}

/// Fills missing cells of `train` and of every dataset in `others` with the
/// training means.
pub fn impute_mean(train: &Dataset, others: &[Dataset]) -> Result<(Dataset, Vec<Dataset>)> {
    let imputer = MeanImputer::fit(train)?;
    let rest = others.iter().map(|d| imputer.apply(d)).collect::<Result<Vec<_>>>()?;
    Ok((imputer.apply(train)?, rest))
}

/// Training-partition column means and sample standard deviations.
/// A zero deviation is kept as 0 here and treated as 1 when transforming.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreprocessStats {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl PreprocessStats {
    pub fn fit(train: &Dataset) -> PreprocessStats {
        let n = train.n_samples() as f64;
        let mut means = Vec::with_capacity(train.n_features());
        let mut stds = Vec::with_capacity(train.n_features());
        for col in train.features.columns() {
            let mean = col.sum() / n;
            let ss: f64 = col.iter().map(|v| (v - mean).powi(2)).sum();
            let std = if train.n_samples() > 1 { (ss / (n - 1.0)).sqrt() } else { 0.0 };
            means.push(mean);
            stds.push(std);
        }
        PreprocessStats { means, stds }
    }

    fn divisor(&self, j: usize) -> f64 {
        if self.stds[j] == 0.0 {
            1.0
        } else {
            self.stds[j]
        }
    }

    pub fn transform(&self, features: ArrayView2<'_, f64>) -> Array2<f64> {
        let mut out = features.to_owned();
        for (j, mut col) in out.columns_mut().into_iter().enumerate() {
            let (mean, div) = (self.means[j], self.divisor(j));
            col.mapv_inplace(|v| (v - mean) / div);
        }
        out
    }

    pub fn inverse(&self, features: ArrayView2<'_, f64>) -> Array2<f64> {
        let mut out = features.to_owned();
        for (j, mut col) in out.columns_mut().into_iter().enumerate() {
            let (mean, div) = (self.means[j], self.divisor(j));
            col.mapv_inplace(|v| v * div + mean);
        }
        out
    }

    pub fn apply(&self, ds: &Dataset) -> Result<Dataset> {
        if ds.n_features() != self.means.len() {
            return Err(Error::DimensionMismatch { expected: self.means.len(), got: ds.n_features() });
        }
        ds.with_features(self.transform(ds.features()))
    }
}

pub fn standardize(train: &Dataset, others: &[Dataset]) -> Result<(PreprocessStats, Dataset, Vec<Dataset>)> {
    let stats = PreprocessStats::fit(train);
    let rest = others.iter().map(|d| stats.apply(d)).collect::<Result<Vec<_>>>()?;
    Ok((stats.clone(), stats.apply(train)?, rest))
}

/// Imputation followed by standardization, both fitted on one partition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Preprocessor {
    pub imputer: MeanImputer,
    pub stats: PreprocessStats,
}

impl Preprocessor {
    pub fn fit(train: &Dataset) -> Result<Preprocessor> {
        let imputer = MeanImputer::fit(train)?;
        let stats = PreprocessStats::fit(&imputer.apply(train)?);
        Ok(Preprocessor { imputer, stats })
    }

    pub fn apply(&self, ds: &Dataset) -> Result<Dataset> {
        self.stats.apply(&self.imputer.apply(ds)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    /// Train, validation and test fractions.
    pub ratios: [f64; 3],
    pub seed: u64,
}

impl SplitSpec {
    pub fn new(ratios: [f64; 3], seed: u64) -> SplitSpec {
        SplitSpec { ratios, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.ratios.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
            return Err(Error::InvalidSplit(format!("ratios {:?} must lie in (0, 1)", self.ratios)));
        }
        let sum: f64 = self.ratios.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidSplit(format!("ratios sum to {sum}, expected 1")));
        }
        Ok(())
    }

    /// Partition sizes: validation and test get `floor(n * r)`, training
    /// takes the remainder.
    pub fn sizes(&self, n: usize) -> [usize; 3] {
        let val = (n as f64 * self.ratios[1]).floor() as usize;
        let test = (n as f64 * self.ratios[2]).floor() as usize;
        [n - val - test, val, test]
    }
}

/// Row indices of the train, validation and test partitions. The permutation
/// is re-drawn until every partition holds both classes.
pub fn split_indices(labels: &[Label], spec: &SplitSpec) -> Result<[Vec<usize>; 3]> {
    spec.validate()?;
    let n = labels.len();
    let sizes = spec.sizes(n);
    if sizes.contains(&0) {
        return Err(Error::InvalidSplit(format!("{n} samples leave an empty partition")));
    }
    let mut rng = seed::rng(spec.seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for attempt in 0..MAX_SPLIT_ATTEMPTS {
        perm.shuffle(&mut rng);
        let (train, rest) = perm.split_at(sizes[0]);
        let (val, test) = rest.split_at(sizes[1]);
        let both = |part: &[usize]| part.iter().any(|&i| labels[i] == 0) && part.iter().any(|&i| labels[i] == 1);
        if both(train) && both(val) && both(test) {
            if attempt > 0 {
                log::debug!("split seed {} needed {} redraws", spec.seed, attempt);
            }
            return Ok([train.to_vec(), val.to_vec(), test.to_vec()]);
        }
    }
    Err(Error::SplitRetriesExhausted(MAX_SPLIT_ATTEMPTS))
}

pub fn split(ds: &Dataset, spec: &SplitSpec) -> Result<(Dataset, Dataset, Dataset)> {
    let [train, val, test] = split_indices(ds.labels(), spec)?;
    Ok((ds.subset(&train), ds.subset(&val), ds.subset(&test)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    fn ds(features: Array2<f64>, labels: Vec<Label>) -> Dataset {
        let names = (0..features.ncols()).map(|j| format!("f{j}")).collect();
        Dataset::new(features, labels, names).unwrap()
    }

    #[test]
    fn minority_tie_goes_to_one() {
        let d = ds(array![[0.0], [1.0]], vec![0, 1]);
        assert_eq!(d.minority_label(), 1);
        let d = ds(array![[0.0], [1.0], [2.0]], vec![1, 1, 0]);
        assert_eq!(d.minority_label(), 0);
    }

    #[test]
    fn rejects_non_binary_label() {
        let names = vec!["a".to_string()];
        assert!(Dataset::new(array![[0.0]], vec![2], names).is_err());
    }

    #[test]
    fn three_rows_without_missing() {
        let d = parse_csv("1,2,0\n3,4,1\n5,6,0\n", &CsvOptions::default()).unwrap();
        assert_eq!(d.n_samples(), 3);
        assert_eq!(d.n_features(), 2);
        assert_eq!(d.missing_count(), 0);
        assert_eq!(d.labels(), &[0, 1, 0]);
    }

    #[test]
    fn header_and_named_label() {
        let text = "id,a,cls,b\n1,0.5,benign,?\n2,1.5,malignant,3\n3,?,benign,4\n";
        let opts = CsvOptions {
            label_column: ColumnRef::Name("cls".into()),
            ignore_columns: vec![ColumnRef::Name("id".into())],
            ..CsvOptions::default()
        };
        let d = parse_csv(text, &opts).unwrap();
        assert_eq!(d.feature_names(), &["a".to_string(), "b".to_string()]);
        assert_eq!(d.labels(), &[0, 1, 0]);
        assert_eq!(d.class_names()[1], "malignant");
        assert_eq!(d.missing_count(), 2);
        assert_eq!(d.minority_label(), 1);
    }

    #[test]
    fn header_detected_for_positional_label() {
        let d = parse_csv("a,b,y\n1,2,0\n3,4,1\n", &CsvOptions::default()).unwrap();
        assert_eq!(d.n_samples(), 2);
        assert_eq!(d.feature_names()[0], "a");
    }

    #[test]
    fn numeric_labels_other_than_zero_one_are_ordered() {
        let d = parse_csv("1,4\n2,2\n3,4\n", &CsvOptions::default()).unwrap();
        assert_eq!(d.labels(), &[1, 0, 1]);
        assert_eq!(d.class_names(), &["2".to_string(), "4".to_string()]);
    }

    #[test]
    fn csv_errors() {
        let opts = CsvOptions::default();
        assert!(matches!(parse_csv("", &opts), Err(Error::EmptyFile)));
        assert!(matches!(parse_csv("1,0\n2,1\n3,2\n", &opts), Err(Error::TooManyLabels(3))));
        assert!(matches!(parse_csv("1,0\nx,1\n", &opts), Err(Error::ParseCell { row: 2, column: 0, .. })));
        let named = CsvOptions { label_column: ColumnRef::Name("nope".into()), ..CsvOptions::default() };
        assert!(matches!(parse_csv("a,b\n1,0\n", &named), Err(Error::MissingColumn(_))));
        assert!(matches!(load_csv("/nonexistent/file.csv", &opts), Err(Error::Io { .. })));
    }

    #[test]
    fn impute_train_column() {
        let train = ds(array![[1.0], [f64::NAN], [3.0]], vec![0, 1, 0]);
        let (t, _) = impute_mean(&train, &[]).unwrap();
        assert_eq!(t.features().column(0).to_vec(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn validation_cells_use_training_mean() {
        // train feature 1: {2, 4, 9} observed -> mean 5; validation observed mean would be 100
        let train = ds(
            array![[1.0, 2.0], [2.0, 4.0], [3.0, f64::NAN], [4.0, 9.0], [5.0, f64::NAN]],
            vec![0, 1, 0, 1, 0],
        );
        let val = ds(array![[0.0, f64::NAN], [0.0, 100.0]], vec![0, 1]);
        let (_, rest) = impute_mean(&train, std::slice::from_ref(&val)).unwrap();
        assert_eq!(rest[0].features()[[0, 1]], 5.0);
        assert_eq!(rest[0].features()[[1, 1]], 100.0);
    }

    #[test]
    fn impute_without_missing_is_identity() {
        let train = ds(array![[1.0, -2.5], [0.1, 7.0]], vec![0, 1]);
        let (t, _) = impute_mean(&train, &[]).unwrap();
        assert_eq!(t, train);
    }

    #[test]
    fn impute_fails_on_fully_missing_feature() {
        let train = ds(array![[1.0, f64::NAN], [2.0, f64::NAN]], vec![0, 1]);
        assert!(matches!(impute_mean(&train, &[]), Err(Error::AllMissing(_))));
    }

    #[test]
    fn standardize_column() {
        let train = ds(array![[2.0, 5.0], [4.0, 5.0], [6.0, 5.0]], vec![0, 1, 0]);
        let (stats, t, _) = standardize(&train, &[]).unwrap();
        let col: Vec<f64> = t.features().column(0).to_vec();
        assert_abs_diff_eq!(col.as_slice(), [-1.0, 0.0, 1.0].as_slice(), epsilon = 1e-12);
        assert_eq!(t.features().column(1).to_vec(), vec![0.0, 0.0, 0.0]);
        assert_eq!(stats.stds[1], 0.0);
    }

    #[test]
    fn validation_transformed_with_training_stats() {
        // train column [1, 2, 3, 6]: mean 3, sample var (4+1+0+9)/3 = 14/3
        let train = ds(array![[1.0], [2.0], [3.0], [6.0]], vec![0, 1, 0, 1]);
        let val = ds(array![[10.0], [11.0], [12.0], [13.0]], vec![0, 1, 0, 1]);
        let (_, _, rest) = standardize(&train, std::slice::from_ref(&val)).unwrap();
        let sd = (14.0f64 / 3.0).sqrt();
        for (i, v) in [10.0, 11.0, 12.0, 13.0].iter().enumerate() {
            assert_abs_diff_eq!(rest[0].features()[[i, 0]], (v - 3.0) / sd, epsilon = 1e-12);
        }
        assert!(rest[0].features().column(0).mean().unwrap() > 1.0);
    }

    #[test]
    fn split_sizes_floor_with_remainder_to_train() {
        let spec = SplitSpec::new([0.7, 0.15, 0.15], 1);
        assert_eq!(spec.sizes(198), [140, 29, 29]);
        assert_eq!(spec.sizes(699), [491, 104, 104]);
    }

    fn alternating(n: usize) -> Dataset {
        let features = Array2::from_shape_fn((n, 1), |(i, _)| i as f64);
        ds(features, (0..n).map(|i| (i % 4 == 0) as Label).collect())
    }

    #[test]
    fn split_is_deterministic_and_seed_sensitive() {
        let d = alternating(198);
        let spec = SplitSpec::new([0.7, 0.15, 0.15], 11);
        let a = split_indices(d.labels(), &spec).unwrap();
        assert_eq!(a, split_indices(d.labels(), &spec).unwrap());
        let b = split_indices(d.labels(), &SplitSpec::new([0.7, 0.15, 0.15], 12)).unwrap();
        assert_ne!(a, b);
        let (tr, va, te) = split(&d, &spec).unwrap();
        assert_eq!((tr.n_samples(), va.n_samples(), te.n_samples()), (140, 29, 29));
        assert!(tr.has_both_classes() && va.has_both_classes() && te.has_both_classes());
    }

    #[test]
    fn split_errors() {
        let d = alternating(20);
        let bad = SplitSpec::new([0.8, 0.3, -0.1], 0);
        assert!(matches!(split(&d, &bad), Err(Error::InvalidSplit(_))));
        // a single minority sample can never reach all three partitions
        let mut labels = vec![0; 20];
        labels[3] = 1;
        let lonely = ds(Array2::zeros((20, 1)), labels);
        assert!(matches!(
            split(&lonely, &SplitSpec::new([0.6, 0.2, 0.2], 0)),
            Err(Error::SplitRetriesExhausted(_))
        ));
    }

    #[test]
    fn subset_keeps_parent_minority() {
        let d = ds(array![[0.0], [1.0], [2.0]], vec![0, 0, 1]);
        let s = d.subset(&[2]);
        assert_eq!(s.minority_label(), 1);
        let s = d.subset(&[0, 1]);
        assert_eq!(s.minority_label(), 1);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Array2<f64>> {
            proptest::collection::vec(prop_oneof![9 => -50.0..50.0f64, 1 => Just(f64::NAN)], rows * cols)
                .prop_map(move |v| Array2::from_shape_vec((rows, cols), v).unwrap())
        }

        proptest! {
            #[test]
            fn split_round_trip(n in 12usize..120, seed in any::<u64>()) {
                let d = alternating(n);
                let spec = SplitSpec::new([0.5, 0.25, 0.25], seed);
                let parts = split_indices(d.labels(), &spec).unwrap();
                let mut all: Vec<usize> = parts.concat();
                all.sort_unstable();
                prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
            }

            #[test]
            fn imputation_is_idempotent(m in matrix(8, 3)) {
                let mut m = m;
                for j in 0..3 { m[[j, j]] = 1.0; }
                let d = ds(m, vec![0, 1, 0, 1, 0, 1, 0, 1]);
                let (once, _) = impute_mean(&d, &[]).unwrap();
                let (twice, _) = impute_mean(&once, &[]).unwrap();
                prop_assert_eq!(once, twice);
            }

            #[test]
            fn standardize_inverts(v in proptest::collection::vec(-1e3..1e3f64, 24)) {
                let m = Array2::from_shape_vec((8, 3), v).unwrap();
                let d = ds(m.clone(), vec![0, 1, 0, 1, 0, 1, 0, 1]);
                let (stats, t, _) = standardize(&d, &[]).unwrap();
                let back = stats.inverse(t.features());
                for ((a, b), j) in back.iter().zip(m.iter()).zip((0..24).map(|i| i % 3)) {
                    if stats.stds[j] > 0.0 {
                        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()));
                    }
                }
                for (j, col) in t.features().columns().into_iter().enumerate() {
                    if stats.stds[j] > 1e-6 {
                        let mean = col.mean().unwrap();
                        let sd = (col.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 7.0).sqrt();
                        prop_assert!(mean.abs() < 1e-9);
                        prop_assert!((sd - 1.0).abs() < 1e-9);
                    }
                }
            }
        }
    }
}
