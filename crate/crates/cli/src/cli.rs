use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "o2pf", version, about = "Oversampling benchmarks for imbalanced binary datasets")]
pub struct Cli {
    /// Log more (repeat for debug output).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run repeated trials of one method.
    Run(Common),
    /// Run several methods on the same trial seeds and test recall differences.
    Compare(Common),
    /// Summarize a dataset.
    Inspect(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// CSV file with one sample per row.
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Label column, by header name or position (negative counts from the end).
    #[arg(long, allow_hyphen_values = true)]
    pub label_col: Option<String>,
    /// Cell value marking a missing feature.
    #[arg(long)]
    pub missing_token: Option<String>,
    /// Columns to drop, e.g. identifiers (repeatable or comma-separated).
    #[arg(long, allow_hyphen_values = true)]
    pub ignore_col: Vec<String>,
    /// none, o2pf, smote, borderline_smote or adasyn (compare accepts several).
    #[arg(long)]
    pub method: Vec<String>,
    /// Comma-separated hyperparameter grid.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Base seed; trial t uses seed + t.
    #[arg(long)]
    pub seed: Option<u64>,
    /// `balance` or `ratio:<x>`.
    #[arg(long)]
    pub balance_mode: Option<String>,
    /// Density kernel for clustering: linear or squared.
    #[arg(long)]
    pub kernel: Option<String>,
    /// Directory for JSON and CSV reports.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Format written to standard output.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Flat `key = value` file with defaults for any of the flags above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}
