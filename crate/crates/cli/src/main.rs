//! `parahk`: evaluate para-hyperKähler and AdS3 quantities, run the
//! verification suites, merge reports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse or usage error,
//! 3 domain error, 4 unknown suite.

mod eval;
mod report;
mod wire;

use clap::{Parser, Subcommand, ValueEnum};
use parahk::numcheck::{run_suite, SuiteConfig};
use report::ReportJson;
use serde_json::Value;
use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(parahk::Error),
    UnknownSuite(String),
    Io(String),
}

impl From<parahk::Error> for CliError {
    fn from(e: parahk::Error) -> Self {
        match e {
            parahk::Error::UnknownSuite => CliError::UnknownSuite(String::new()),
            e => CliError::Domain(e),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Domain(_) => 3,
            CliError::UnknownSuite(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Domain(e) => write!(f, "domain error: {e}"),
            CliError::UnknownSuite(s) => write!(
                f,
                "unknown suite `{s}` (expected one of {}, all)",
                parahk::numcheck::SUITES.join(", ")
            ),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "parahk", version, about = "Para-hyperKähler torus model and AdS3 toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate a quantity at a point; input is a file path, inline JSON, or `-` for stdin.
    Eval {
        input: Option<String>,
        /// PSL(2,B) / AdS3 quantity instead of a cotangent-bundle one.
        #[arg(long, value_enum, conflicts_with_all = ["map", "torus"])]
        ads: Option<eval::AdsQuantity>,
        /// Push the point (and optional tangent) through a geometric map.
        #[arg(long, value_enum, conflicts_with = "torus")]
        map: Option<eval::MapKind>,
        /// Torus embedding data and metric-family samples.
        #[arg(long)]
        torus: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = parahk::numcheck::DEFAULT_STEP)]
        step: f64,
        /// Write the JSON report to this path (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Tolerance override, `check.name=value`; repeatable.
        #[arg(long = "tolerance", value_name = "NAME=VALUE")]
        tolerances: Vec<String>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Merge JSON reports into one.
    Report {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
}

fn read_input(input: Option<&str>) -> Result<String, CliError> {
    match input {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(e.to_string()))?;
            Ok(s)
        }
        Some(s) if s.trim_start().starts_with('{') => Ok(s.to_string()),
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}"))),
    }
}

fn parse_json(s: &str, what: &str) -> Result<Value, CliError> {
    serde_json::from_str(s).map_err(|e| CliError::Parse(format!("{what}: malformed JSON: {e}")))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn write_report(r: &ReportJson, json: Option<&PathBuf>, format: Format) -> Result<(), CliError> {
    match json {
        Some(p) if p.as_os_str() == "-" => emit(&(pretty(r) + "\n")),
        Some(p) => {
            std::fs::write(p, pretty(r) + "\n").map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?
        }
        None => {}
    }
    let to_stdout = json.is_some_and(|p| p.as_os_str() == "-");
    match format {
        Format::Human if !to_stdout => emit(&r.table()),
        Format::Json if json.is_none() => emit(&(pretty(r) + "\n")),
        _ => {}
    }
    Ok(())
}

fn tolerance_overrides(raw: &[String]) -> Result<BTreeMap<String, f64>, CliError> {
    raw.iter()
        .map(|t| {
            let (k, v) = t
                .split_once('=')
                .ok_or_else(|| CliError::Parse(format!("--tolerance `{t}`: expected NAME=VALUE")))?;
            let v: f64 = v
                .parse()
                .map_err(|_| CliError::Parse(format!("--tolerance `{t}`: value is not a number")))?;
            if v.is_nan() || v < 0.0 {
                return Err(CliError::Parse(format!("--tolerance `{t}`: value must be non-negative")));
            }
            Ok((k.to_string(), v))
        })
        .collect()
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.cmd {
        Cmd::Eval { input, ads, map, torus } => {
            let v = parse_json(&read_input(input.as_deref())?, "input")?;
            let out = match (ads, map, torus) {
                (Some(q), _, _) => eval::ads(q, &v)?,
                (_, Some(m), _) => eval::map(m, &v)?,
                (_, _, true) => eval::torus(&v)?,
                _ => eval::phk(&v)?,
            };
            emit(&(pretty(&out) + "\n"));
            Ok(0)
        }
        Cmd::Verify { suite, samples, seed, step, json, tolerances, format } => {
            if step.is_nan() || step <= 0.0 || step > 0.1 {
                return Err(CliError::Parse(format!("--step {step}: must lie in (0, 0.1]")));
            }
            let cfg = SuiteConfig {
                samples: samples as usize,
                seed,
                step,
                tolerances: tolerance_overrides(&tolerances)?,
            };
            let rep = run_suite(&suite, &cfg).map_err(|e| match e {
                parahk::Error::UnknownSuite => CliError::UnknownSuite(suite.clone()),
                e => e.into(),
            })?;
            let r = ReportJson::from(&rep);
            write_report(&r, json.as_ref(), format)?;
            Ok(if r.pass { 0 } else { 1 })
        }
        Cmd::Report { inputs, json, format } => {
            let mut reports = Vec::new();
            for p in &inputs {
                let s =
                    std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                let r: ReportJson =
                    serde_json::from_str(&s).map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))?;
                reports.push(r);
            }
            let merged = report::merge(reports).expect("at least one input");
            write_report(&merged, json.as_ref(), format)?;
            Ok(if merged.pass { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("parahk: {e}");
            ExitCode::from(e.code())
        }
    }
}
