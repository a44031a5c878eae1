//! Command-line front end: loads a builtin or file algebra, runs one command
//! and renders the report. Exit status 0 means every check passed, 1 means a
//! failed check or invalid input, 2 is left to argument parsing.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use stratalg::catalog::{self, ParsedAlgebra};
use stratalg::report::{
    classical_series_section, classification_section, search_section, series_section,
    validation_section, Report,
};
use stratalg::{
    search_integrable_j, serialize_report, theorem_suite, ComplexStructure, Format, LieAlgebra,
    SearchConfig, Stratification,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Series,
    Classify,
    Suite,
    Search,
    Report,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Series => "series",
            Command::Classify => "classify",
            Command::Suite => "suite",
            Command::Search => "search",
            Command::Report => "report",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Markdown,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Markdown => Format::Markdown,
        }
    }
}

fn positive_f64(text: &str) -> Result<f64, String> {
    match text.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be a positive finite number".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Exact analysis of Lie algebras with complex structures.
#[derive(Debug, Clone, Parser)]
#[command(name = "stratalg", version)]
pub struct Cli {
    /// Builtin name (a4, kt4, ch6, hh6, h7, fil4, nn3) or path to an algebra JSON file
    #[arg(short, long)]
    pub input: String,
    #[arg(long, value_enum)]
    pub cmd: Command,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Write the report here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub restarts: usize,
    /// Float residual below which a search candidate is promoted
    #[arg(long, default_value_t = 1e-10, value_parser = positive_f64)]
    pub threshold: f64,
    /// Denominator cap for rational reconstruction
    #[arg(long = "den-cap", default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub den_cap: u64,
}

struct Input {
    name: String,
    algebra: LieAlgebra,
    j: Option<ComplexStructure>,
    stratification: Option<Stratification>,
}

fn load(input: &str) -> Result<Input, String> {
    let path = Path::new(input);
    if path.is_file() {
        let bytes = std::fs::read(path).map_err(|e| format!("cannot read {input}: {e}"))?;
        let ParsedAlgebra {
            name,
            algebra,
            j,
            stratification,
        } = catalog::parse_algebra_file(&bytes).map_err(|e| e.to_string())?;
        return Ok(Input {
            name: name.unwrap_or_else(|| input.to_string()),
            algebra,
            j,
            stratification,
        });
    }
    let entry = catalog::builtin(input).map_err(|e| e.to_string())?;
    Ok(Input {
        name: entry.name.clone(),
        j: entry.j().cloned(),
        stratification: entry.stratification().cloned(),
        algebra: entry.algebra,
    })
}

/// Runs one command and returns the exit status with the rendered report.
pub fn run(cli: &Cli) -> (i32, String) {
    let report = build_report(cli);
    let status = if report.passed() { 0 } else { 1 };
    (status, serialize_report(&report, cli.format.into()))
}

pub fn build_report(cli: &Cli) -> Report {
    let input = match load(&cli.input) {
        Ok(input) => input,
        Err(e) => {
            let mut report = Report::new(&cli.input, cli.cmd.name(), 0, None);
            report.errors.push(e);
            report.finalize();
            return report;
        }
    };
    let alg = &input.algebra;
    let j = input.j.as_ref();
    let s = input.stratification.as_ref();
    let mut report = Report::new(&input.name, cli.cmd.name(), alg.dim(), j);
    let cmd = cli.cmd;
    if matches!(cmd, Command::Validate | Command::Report) {
        report.validation = Some(validation_section(alg, j, s));
    }
    if matches!(cmd, Command::Series | Command::Report | Command::Suite) {
        match j {
            Some(j) => match series_section(alg, j) {
                Ok(section) => report.series = Some(section),
                Err(e) => report.errors.push(e.to_string()),
            },
            None => report.series = Some(classical_series_section(alg)),
        }
    }
    if matches!(cmd, Command::Classify | Command::Report) {
        match classification_section(alg, j, s) {
            Ok((section, verdict)) => {
                report.classification = Some(section);
                report.verdicts.extend(verdict);
            }
            Err(e) => report.errors.push(e.to_string()),
        }
    }
    if matches!(cmd, Command::Suite | Command::Report) {
        match j {
            Some(j) => match theorem_suite(alg, j, s) {
                Ok(suite) => {
                    report.verdicts.extend(suite.audit);
                    report.verdicts.extend(suite.statements);
                }
                Err(e) => report.errors.push(e.to_string()),
            },
            None if cmd == Command::Suite => {
                report.errors.push("the statement suite needs a complex structure J".into())
            }
            None => {}
        }
    }
    if cmd == Command::Search {
        let config = SearchConfig {
            seed: cli.seed,
            restarts: cli.restarts,
            threshold: cli.threshold,
            den_cap: cli.den_cap,
            ..SearchConfig::default()
        };
        match search_integrable_j(alg, &config) {
            Ok(outcome) => report.search = Some(search_section(&outcome, cli.seed, cli.restarts)),
            Err(e) => report.errors.push(e.to_string()),
        }
    }
    report.finalize();
    report
}
