//! `hypmetrics` command line: `eval`, `verify`, `probe`, `report`.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or configuration
//! error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypmetrics_core::{Domain, ExtendedPoint, MetricId};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{fmt_sig, round_sig};
use crate::report::{self, probe_table, Record};
use crate::suite::{catalog, check_case, run_probe};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hypmetrics", version, about = "Hyperbolic-type metrics: evaluation and inequality verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate metrics at two points of a domain.
    Eval(EvalArgs),
    /// Check catalog inequalities on random samples.
    Verify(VerifyArgs),
    /// Run a sharpness probe and print its convergence table.
    Probe(ProbeArgs),
    /// Summarize a saved JSON report.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Ball,
    Halfspace,
    Punctured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub domain: DomainArg,
    /// Dimension; inferred from the points when omitted.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Removed point of a punctured domain (repeatable).
    #[arg(long, allow_hyphen_values = true)]
    pub remove: Vec<String>,
    /// Whether `∞` is a boundary point of a punctured domain.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub infinity_boundary: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
    /// Metric to evaluate (repeatable); default: every metric defined on the domain.
    #[arg(long)]
    pub metric: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Case id (repeatable); default: the whole catalog.
    #[arg(long = "case")]
    pub cases: Vec<String>,
    #[arg(long, default_value_t = 10_000)]
    pub n: u64,
    #[arg(long, env = "HYPMETRICS_SEED", default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub slack: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[arg(long)]
    pub id: String,
    /// Comma-separated schedule replacing the default for every series.
    #[arg(long)]
    pub schedule: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// JSON report written by `verify` or `probe --format json`.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

/// Parses a comma-separated list of decimals.
pub fn parse_point(s: &str) -> Result<Vec<f64>> {
    let bad = |reason: String| Error::Point {
        input: s.to_string(),
        reason,
    };
    let coords = s
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<f64>()
                .map_err(|e| bad(format!("`{}`: {e}", c.trim())))
        })
        .collect::<Result<Vec<f64>>>()?;
    if coords.iter().any(|c| !c.is_finite()) {
        return Err(bad("coordinates must be finite".into()));
    }
    Ok(coords)
}

fn build_domain(args: &EvalArgs, dim: usize) -> Result<Domain> {
    Ok(match args.domain {
        DomainArg::Ball => Domain::unit_ball(dim)?,
        DomainArg::Halfspace => Domain::upper_half_space(dim)?,
        DomainArg::Punctured => {
            if args.remove.is_empty() {
                return Err(Error::Config("punctured domain needs at least one --remove".into()));
            }
            let removed = args
                .remove
                .iter()
                .map(|s| parse_point(s))
                .collect::<Result<Vec<_>>>()?;
            if let Some(p) = removed.iter().find(|p| p.len() != dim) {
                return Err(Error::Config(format!(
                    "removed point has dimension {}, expected {dim}",
                    p.len()
                )));
            }
            Domain::punctured(removed, args.infinity_boundary)?
        }
    })
}

#[derive(Serialize)]
struct MetricValue {
    metric: String,
    value: Option<f64>,
}

#[derive(Serialize)]
struct EvalOutput {
    domain: String,
    x: Vec<f64>,
    y: Vec<f64>,
    values: Vec<MetricValue>,
}

fn cmd_eval(args: &EvalArgs) -> Result<(String, i32)> {
    let x = parse_point(&args.x)?;
    let y = parse_point(&args.y)?;
    let dim = args.dim.unwrap_or(x.len());
    for (name, p) in [("x", &x), ("y", &y)] {
        if p.len() != dim {
            return Err(Error::Config(format!(
                "point {name} = {} has dimension {}, expected {dim}",
                fmt_point(p),
                p.len()
            )));
        }
    }
    let domain = build_domain(args, dim)?;
    for (name, p) in [("x", &x), ("y", &y)] {
        if !domain.contains(p) {
            return Err(Error::Config(format!(
                "point {name} = {} is not in {domain}",
                fmt_point(p)
            )));
        }
    }
    let metrics: Vec<MetricId> = if args.metric.is_empty() {
        MetricId::ALL
            .into_iter()
            .filter(|m| m.is_evaluable(&domain))
            .collect()
    } else {
        args.metric
            .iter()
            .map(|s| {
                s.parse::<MetricId>()
                    .map_err(|_| Error::Config(format!("unknown metric `{s}`")))
            })
            .collect::<Result<_>>()?
    };
    let (px, py) = (ExtendedPoint::Finite(x.clone()), ExtendedPoint::Finite(y.clone()));
    let mut values = Vec::new();
    for m in metrics {
        if !m.is_evaluable(&domain) {
            return Err(Error::Config(format!("metric `{m}` is not defined on {domain}")));
        }
        values.push((m, m.evaluate(&domain, &px, &py)?));
    }
    let text = match args.format {
        Format::Text => values
            .iter()
            .map(|(m, v)| format!("{m} = {}\n", fmt_sig(*v)))
            .collect(),
        Format::Csv => {
            let mut s = String::from("metric,value\n");
            for (m, v) in &values {
                s.push_str(&format!("{m},{}\n", fmt_sig(*v)));
            }
            s
        }
        Format::Json => {
            let out = EvalOutput {
                domain: domain.to_string(),
                x,
                y,
                values: values
                    .iter()
                    .map(|(m, v)| MetricValue {
                        metric: m.to_string(),
                        value: v.is_finite().then(|| round_sig(*v)),
                    })
                    .collect(),
            };
            serde_json::to_string_pretty(&out)? + "\n"
        }
    };
    Ok((text, EXIT_PASS))
}

fn fmt_point(p: &[f64]) -> String {
    p.iter().map(|v| fmt_sig(*v)).collect::<Vec<_>>().join(",")
}

fn render(records: &[Record], format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => report::to_json(records)? + "\n",
        Format::Csv => report::to_csv(records),
        Format::Text => report::to_text(records),
    })
}

fn exit_for(records: &[Record]) -> i32 {
    if records.iter().all(Record::pass) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Runs the selected cases; the records appear in catalog order.
pub fn verify_records(ids: &[String], n: u64, seed: u64, slack: f64) -> Result<Vec<Record>> {
    let cat = catalog();
    for id in ids {
        if cat.case(id).is_none() {
            return Err(Error::UnknownCase(id.clone()));
        }
    }
    cat.cases
        .iter()
        .filter(|c| ids.is_empty() || ids.iter().any(|id| id == c.id))
        .map(|c| check_case(c, n, seed, slack).map(Record::Case))
        .collect()
}

fn cmd_verify(args: &VerifyArgs) -> Result<(String, i32)> {
    let records = verify_records(&args.cases, args.n, args.seed, args.slack)?;
    Ok((render(&records, args.format)?, exit_for(&records)))
}

fn cmd_probe(args: &ProbeArgs) -> Result<(String, i32)> {
    let cat = catalog();
    let probe = cat
        .probe(&args.id)
        .ok_or_else(|| Error::UnknownProbe(args.id.clone()))?;
    let overrides: Vec<(&str, Vec<f64>)> = match &args.schedule {
        Some(s) => {
            let schedule = parse_point(s)?;
            probe.series.iter().map(|ser| (ser.name, schedule.clone())).collect()
        }
        None => Vec::new(),
    };
    let reports = run_probe(probe, &overrides)?;
    let records: Vec<Record> = reports.iter().cloned().map(Record::Probe).collect();
    let text = match args.format {
        Format::Csv => {
            let mut s = String::new();
            for (i, p) in reports.iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                s.push_str(&format!("# {} {}\n", p.case_id, p.series));
                s.push_str(&probe_table(p));
                s.push_str(&format!(
                    "# summary: final_estimate={} expected_limit={} final_deviation={} tolerance={} monotone={} pass={}\n",
                    fmt_sig(p.final_estimate),
                    fmt_sig(p.expected_limit),
                    fmt_sig(p.final_deviation),
                    fmt_sig(p.tolerance),
                    p.monotone,
                    p.pass
                ));
            }
            s
        }
        f => render(&records, f)?,
    };
    Ok((text, exit_for(&records)))
}

fn cmd_report(args: &ReportArgs) -> Result<(String, i32)> {
    let text = fs::read_to_string(&args.input)?;
    let records = report::from_json(&text)?;
    Ok((render(&records, args.format)?, exit_for(&records)))
}

fn output_of(cmd: &Command) -> &Output {
    match cmd {
        Command::Eval(a) => &a.output,
        Command::Verify(a) => &a.output,
        Command::Probe(a) => &a.output,
        Command::Report(a) => &a.output,
    }
}

/// Executes a parsed command, writing results to `out` (or `--out`).
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let (text, code) = match &cli.command {
        Command::Eval(a) => cmd_eval(a)?,
        Command::Verify(a) => cmd_verify(a)?,
        Command::Probe(a) => cmd_probe(a)?,
        Command::Report(a) => cmd_report(a)?,
    };
    match &output_of(&cli.command).out {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(code)
}

/// Entry point of the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let stdout = std::io::stdout();
    match execute(&cli, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_parse() {
        assert_eq!(parse_point("0.5, -1,2e-3").unwrap(), vec![0.5, -1.0, 0.002]);
        assert!(parse_point("0.5,,1").is_err());
        assert!(parse_point("nan,1").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
