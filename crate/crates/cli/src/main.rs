mod cli;
mod settings;

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use o2pf_core::data::{load_csv, Dataset};
use o2pf_core::harness::{
    comparison_csv, comparison_text, experiment_csv, experiment_text, inspect, run_comparison, run_experiment,
    traces_csv, DatasetSummary, ExperimentReport, Method,
};
use o2pf_core::Error;

use cli::{Cli, Command, Common, Format};
use settings::Settings;

/// Exit status for each failure class.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
    Experiment(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
            Failure::Experiment(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::Experiment(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let msg = e.to_string();
        if matches!(e, Error::Config(_)) {
            Failure::Usage(msg)
        } else if e.is_data_error() {
            Failure::Data(msg)
        } else {
            Failure::Experiment(msg)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Run(common) => run(&common),
        Command::Compare(common) => compare(&common),
        Command::Inspect(common) => inspect_cmd(&common),
    }
}

fn load(settings: &Settings) -> Result<Dataset, Failure> {
    let ds = load_csv(&settings.data, &settings.csv)?;
    log::info!(
        "loaded {}: {} samples, {} features, class counts {:?}",
        settings.data.display(),
        ds.n_samples(),
        ds.n_features(),
        ds.class_counts()
    );
    Ok(ds)
}

fn write_outputs(dir: Option<&Path>, files: &[(&str, String)]) -> Result<(), Failure> {
    let Some(dir) = dir else { return Ok(()) };
    let io = |e: std::io::Error| Failure::Experiment(format!("cannot write to {}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    for (name, contents) in files {
        std::fs::write(dir.join(name), contents).map_err(io)?;
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Experiment(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn run(common: &Common) -> Result<(), Failure> {
    let settings = Settings::resolve(common)?;
    let method = match settings.methods.as_slice() {
        [] => Method::O2pf,
        [m] => *m,
        _ => return Err(Failure::Usage("run takes a single --method; use compare for several".into())),
    };
    let cfg = settings.experiment.for_method(method);
    cfg.validate()?;
    let ds = load(&settings)?;
    let report = run_experiment(&ds, &cfg)?;
    let json = to_json(&report)?;
    let csv = experiment_csv(&report);
    let text = experiment_text(&report);
    write_outputs(
        settings.out_dir.as_deref(),
        &[
            ("report.json", json.clone()),
            ("trials.csv", csv.clone()),
            ("traces.csv", traces_csv(std::slice::from_ref(&report))),
            ("report.txt", text.clone()),
        ],
    )?;
    print!(
        "{}",
        match settings.format {
            Format::Text => text,
            Format::Json => json,
            Format::Csv => csv,
        }
    );
    Ok(())
}

#[derive(serde::Serialize)]
struct CompareOutput<'a> {
    comparison: &'a o2pf_core::harness::Comparison,
    reports: &'a [ExperimentReport],
}

fn compare(common: &Common) -> Result<(), Failure> {
    let settings = Settings::resolve(common)?;
    let methods = if settings.methods.is_empty() { Method::ALL.to_vec() } else { settings.methods.clone() };
    for &m in &methods {
        settings.experiment.for_method(m).validate()?;
    }
    let ds = load(&settings)?;
    let (reports, comparison) = run_comparison(&ds, &settings.experiment, &methods)?;
    let json = to_json(&CompareOutput { comparison: &comparison, reports: &reports })?;
    let csv = comparison_csv(&comparison);
    let cfg = &settings.experiment;
    let text = format!(
        "{} trials, base seed {}, balance {}\n{}",
        cfg.trials,
        cfg.base_seed,
        cfg.balance_mode,
        comparison_text(&comparison)
    );
    let mut trials = String::new();
    for (i, r) in reports.iter().enumerate() {
        let body = experiment_csv(r);
        trials.push_str(if i == 0 { &body } else { body.split_once('\n').map_or("", |b| b.1) });
    }
    write_outputs(
        settings.out_dir.as_deref(),
        &[
            ("comparison.json", json.clone()),
            ("comparison.csv", csv.clone()),
            ("trials.csv", trials),
            ("traces.csv", traces_csv(&reports)),
            ("comparison.txt", text.clone()),
        ],
    )?;
    print!(
        "{}",
        match settings.format {
            Format::Text => text,
            Format::Json => json,
            Format::Csv => csv,
        }
    );
    Ok(())
}

fn summary_text(s: &DatasetSummary) -> String {
    let mut out = String::new();
    writeln!(out, "samples   {}", s.n_samples).unwrap();
    writeln!(out, "features  {}", s.n_features).unwrap();
    for (label, (name, count)) in s.class_names.iter().zip(s.class_counts).enumerate() {
        let tag = if label as u8 == s.minority_label { "  (minority)" } else { "" };
        writeln!(out, "class {label}   {name}: {count}{tag}").unwrap();
    }
    writeln!(out, "imbalance {:.3}", s.imbalance_ratio).unwrap();
    writeln!(out, "{:<24}{:>8}{:>12}{:>12}{:>12}", "feature", "missing", "min", "max", "mean").unwrap();
    for f in &s.features {
        writeln!(out, "{:<24}{:>8}{:>12.4}{:>12.4}{:>12.4}", f.name, f.missing, f.min, f.max, f.mean).unwrap();
    }
    out
}

fn summary_csv(s: &DatasetSummary) -> String {
    let mut out = String::from("feature,missing,min,max,mean\n");
    for f in &s.features {
        writeln!(out, "{},{},{},{},{}", f.name, f.missing, f.min, f.max, f.mean).unwrap();
    }
    out
}

fn inspect_cmd(common: &Common) -> Result<(), Failure> {
    let settings = Settings::resolve(common)?;
    let ds = load(&settings)?;
    let summary = inspect(&ds);
    let json = to_json(&summary)?;
    let text = summary_text(&summary);
    let csv = summary_csv(&summary);
    write_outputs(settings.out_dir.as_deref(), &[("dataset.json", json.clone()), ("features.csv", csv.clone())])?;
    print!(
        "{}",
        match settings.format {
            Format::Text => text,
            Format::Json => json,
            Format::Csv => csv,
        }
    );
    Ok(())
}
