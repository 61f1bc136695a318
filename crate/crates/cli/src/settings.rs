//! Merges command-line flags with an optional `key = value` config file.
//! Flags take precedence.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use o2pf_core::cluster::{ClusterOptions, DensityKernel};
use o2pf_core::data::{ColumnRef, CsvOptions};
use o2pf_core::harness::{BalanceMode, ExperimentConfig, Method};
use o2pf_core::Error;

use crate::cli::{Common, Format};

const KNOWN_KEYS: &[&str] = &[
    "data",
    "label-col",
    "missing-token",
    "ignore-col",
    "method",
    "grid",
    "trials",
    "seed",
    "balance-mode",
    "kernel",
    "out-dir",
    "format",
];

/// Parses a flat config file: one `key = value` per line, `#` starts a
/// comment. Keys use the long flag names; underscores are accepted for
/// dashes.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, Error> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("config line {}: expected `key = value`", n + 1)))?;
        let key = key.trim().replace('_', "-");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!("config line {}: unknown key `{key}`", n + 1)));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

fn read_config(path: &Path) -> Result<BTreeMap<String, String>, Error> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

fn list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty())
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, Error> {
    value.trim().parse().map_err(|_| Error::Config(format!("{key}: cannot parse `{value}`")))
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub data: PathBuf,
    pub csv: CsvOptions,
    pub methods: Vec<Method>,
    pub experiment: ExperimentConfig,
    pub out_dir: Option<PathBuf>,
    pub format: Format,
}

impl Settings {
    pub fn resolve(common: &Common) -> Result<Settings, Error> {
        let file = match &common.config {
            Some(path) => read_config(path)?,
            None => BTreeMap::new(),
        };
        let pick = |flag: &Option<String>, key: &str| flag.clone().or_else(|| file.get(key).cloned());

        let data = common
            .data
            .clone()
            .or_else(|| file.get("data").map(PathBuf::from))
            .ok_or_else(|| Error::Config("no dataset given (--data)".into()))?;

        let mut csv = CsvOptions::default();
        if let Some(col) = pick(&common.label_col, "label-col") {
            csv.label_column = ColumnRef::parse(&col);
        }
        if let Some(tok) = pick(&common.missing_token, "missing-token") {
            csv.missing_token = tok;
        }
        csv.ignore_columns = if common.ignore_col.is_empty() {
            file.get("ignore-col").map(|s| list(s).map(ColumnRef::parse).collect()).unwrap_or_default()
        } else {
            common.ignore_col.iter().flat_map(|s| list(s).map(ColumnRef::parse).collect::<Vec<_>>()).collect()
        };

        let methods = if common.method.is_empty() {
            match file.get("method") {
                Some(s) => list(s).map(str::parse).collect::<Result<Vec<_>, _>>()?,
                None => Vec::new(),
            }
        } else {
            common.method.iter().flat_map(|s| list(s).map(str::parse).collect::<Vec<_>>()).collect::<Result<_, _>>()?
        };

        let mut experiment = ExperimentConfig::default();
        if let Some(g) = pick(&common.grid, "grid") {
            experiment.grid = list(&g).map(|v| parse_num("grid", v)).collect::<Result<_, _>>()?;
        }
        if let Some(t) = common.trials.map(|t| t.to_string()).or_else(|| file.get("trials").cloned()) {
            experiment.trials = parse_num("trials", &t)?;
        }
        if let Some(s) = common.seed.map(|s| s.to_string()).or_else(|| file.get("seed").cloned()) {
            experiment.base_seed = parse_num("seed", &s)?;
        }
        if let Some(b) = pick(&common.balance_mode, "balance-mode") {
            experiment.balance_mode = b.parse::<BalanceMode>()?;
        }
        if let Some(k) = pick(&common.kernel, "kernel") {
            let kernel = match k.to_ascii_lowercase().as_str() {
                "linear" => DensityKernel::Linear,
                "squared" => DensityKernel::Squared,
                _ => return Err(Error::Config(format!("unknown kernel `{k}`"))),
            };
            experiment.cluster = ClusterOptions { kernel };
        }

        let out_dir = common.out_dir.clone().or_else(|| file.get("out-dir").map(PathBuf::from));
        let format = match common.format {
            Some(f) => f,
            None => match file.get("format").map(String::as_str) {
                None | Some("text") => Format::Text,
                Some("json") => Format::Json,
                Some("csv") => Format::Csv,
                Some(other) => return Err(Error::Config(format!("unknown format `{other}`"))),
            },
        };

        Ok(Settings { data, csv, methods, experiment, out_dir, format })
    }
}
