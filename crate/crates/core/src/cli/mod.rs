//! Command-line front end: single bounds, parameter sweeps and channel
//! discrimination. The binary only forwards its arguments to [`run`].
//!
//! Exit codes: 0 when every value is optimal or exact, 1 for usage, parse
//! and configuration errors, 2 for solver failures or inaccurate solves,
//! 3 for unsupported dimensions.

pub mod registry;
pub mod spec;

use crate::bounds::alpha_of_level;
use crate::conic::SolverSettings;
use crate::divergences::{channel_max_relative, Divergence};
use crate::error::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use registry::{evaluate, lookup, Evaluation};
use serde::Serialize;
use spec::ChannelSpec;
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;
pub const EXIT_DIMENSION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "georenyi", version, about = "Semidefinite bounds on channel capacities and magic")]
pub struct Cli {
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    /// File of `key = value` solver options; overrides GEORENYI_* variables.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Print the solver's iteration log to stdout.
    #[arg(long, global = true)]
    pub verbose: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one bound for one channel.
    Bound(BoundArgs),
    /// Evaluate bounds over a one-parameter grid.
    Sweep(SweepArgs),
    /// Geometric Rényi and max-relative channel divergences.
    Discriminate(DiscriminateArgs),
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    /// Channel spec, e.g. "kind=erasure p=0.5".
    #[arg(long)]
    pub channel: String,
    /// Bound name, e.g. upsilon-geometric.
    #[arg(long)]
    pub bound: String,
    /// Level ℓ of geometric bounds, α = 1 + 2^-ℓ.
    #[arg(long, default_value_t = 3)]
    pub level: u32,
    #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
    pub format: TextOrJson,
    /// Write the lowered conic program to this file before solving.
    #[arg(long)]
    pub dump: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TextOrJson {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepFormat {
    Csv,
    Json,
}

/// A parameter sweep: the channel spec is rebuilt at every grid point.
#[derive(Args, Debug, Clone, Serialize)]
pub struct SweepArgs {
    /// Channel spec referring to the parameter as `$<name>`.
    #[arg(long)]
    pub channel: String,
    /// Parameter name, without the `$`.
    #[arg(long, default_value = "p")]
    pub param: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub start: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub stop: f64,
    #[arg(long, default_value_t = 21)]
    pub points: usize,
    /// Comma-separated bound names.
    #[arg(long, value_delimiter = ',', required = true)]
    pub bounds: Vec<String>,
    #[arg(long, default_value_t = 3)]
    pub level: u32,
    #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
    pub format: SweepFormat,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DiscriminateArgs {
    /// Channel to be identified.
    #[arg(long)]
    pub first: String,
    /// Alternative channel.
    #[arg(long)]
    pub second: String,
    /// Rényi order in (1, 2].
    #[arg(long, conflicts_with = "level")]
    pub alpha: Option<f64>,
    /// Use α = 1 + 2^-ℓ.
    #[arg(long)]
    pub level: Option<u32>,
}

/// Parses arguments, runs the command, writes to standard output, and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedDimension(_) => EXIT_DIMENSION,
        Error::Backend(_) => EXIT_SOLVER,
        _ => EXIT_USAGE,
    }
}

/// Solver settings: defaults, then environment, then the config file.
pub fn load_settings(args: &SolverArgs) -> Result<SolverSettings> {
    let mut s = SolverSettings::from_env()?;
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)?;
        apply_config(&mut s, &text)?;
    }
    if args.verbose {
        s.verbose = true;
    }
    Ok(s)
}

/// Applies `key = value` lines; `#` starts a comment.
pub fn apply_config(settings: &mut SolverSettings, text: &str) -> Result<()> {
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
        settings.set(key.trim(), value.trim())?;
    }
    Ok(())
}

/// Runs a parsed command, writing results to `out`; returns the exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let mut settings = load_settings(&cli.solver)?;
    match &cli.command {
        Command::Bound(a) => {
            settings.dump = a.dump.clone();
            cmd_bound(a, &settings, out)
        }
        Command::Sweep(a) => cmd_sweep(a, &settings, out),
        Command::Discriminate(a) => cmd_discriminate(a, out),
    }
}

/// Six decimals, without a sign on values that round to zero.
pub fn fixed6(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.abs() < 5e-7 {
        format!("{:.6}", 0.0)
    } else {
        format!("{x:.6}")
    }
}

pub fn cmd_bound(a: &BoundArgs, settings: &SolverSettings, out: &mut dyn Write) -> Result<i32> {
    lookup(&a.bound)?;
    let spec = ChannelSpec::parse(&a.channel)?;
    let target = spec.build(&BTreeMap::new())?;
    let e = evaluate(&a.bound, &target, a.level, settings)?;
    match a.format {
        TextOrJson::Text => {
            let level = e.level.map_or("-".to_string(), |l| l.to_string());
            writeln!(out, "{} {} level={}", fixed6(e.bits), e.status, level)?;
        }
        TextOrJson::Json => writeln!(out, "{}", serde_json::to_string_pretty(&e)?)?,
    }
    Ok(e.exit_code)
}

/// Grid `start + i (stop - start) / (points - 1)`; a single point is `start`.
pub fn grid(start: f64, stop: f64, points: usize) -> Result<Vec<f64>> {
    match points {
        0 => Err(Error::Config("a sweep needs at least one grid point".into())),
        1 => Ok(vec![start]),
        n => Ok((0..n).map(|i| start + (stop - start) * i as f64 / (n - 1) as f64).collect()),
    }
}

#[derive(Serialize)]
struct SweepRow {
    param: f64,
    results: Vec<Evaluation>,
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    sweep: &'a SweepArgs,
    rows: Vec<SweepRow>,
}

/// Evaluates every bound at every grid point. Grid points run in the rayon
/// pool; rows keep grid order. Failed cells hold `NaN` and an error message.
pub fn sweep_rows(a: &SweepArgs, settings: &SolverSettings) -> Result<Vec<(f64, Vec<Evaluation>)>> {
    for b in &a.bounds {
        lookup(b)?;
    }
    let spec = ChannelSpec::parse(&a.channel)?;
    if let Some(other) = spec.parameters().into_iter().find(|p| *p != a.param) {
        return Err(Error::Parse(format!("spec refers to ${other} but the sweep parameter is {}", a.param)));
    }
    let points = grid(a.start, a.stop, a.points)?;
    Ok(points
        .par_iter()
        .map(|&x| {
            let vars = BTreeMap::from([(a.param.clone(), x)]);
            let cells = match spec.build(&vars) {
                Ok(target) => a
                    .bounds
                    .iter()
                    .map(|b| evaluate(b, &target, a.level, settings).unwrap_or_else(|e| Evaluation::from_error(b, &e)))
                    .collect(),
                Err(e) => a.bounds.iter().map(|b| Evaluation::from_error(b, &e)).collect(),
            };
            (x, cells)
        })
        .collect())
}

pub fn cmd_sweep(a: &SweepArgs, settings: &SolverSettings, out: &mut dyn Write) -> Result<i32> {
    let rows = sweep_rows(a, settings)?;
    let code = rows.iter().flat_map(|(_, cells)| cells.iter().map(|e| e.exit_code)).max().unwrap_or(EXIT_OK);
    let mut buf = Vec::new();
    match a.format {
        SweepFormat::Csv => write_csv(&mut buf, &a.bounds, &rows)?,
        SweepFormat::Json => {
            let doc = SweepDocument {
                sweep: a,
                rows: rows.into_iter().map(|(param, results)| SweepRow { param, results }).collect(),
            };
            serde_json::to_writer_pretty(&mut buf, &doc)?;
            buf.push(b'\n');
        }
    }
    match &a.output {
        Some(path) => std::fs::write(path, &buf)?,
        None => out.write_all(&buf)?,
    }
    Ok(code)
}

/// `param,<bound>,...` with six decimals; failed cells are `NaN`.
pub fn write_csv(out: &mut dyn Write, bounds: &[String], rows: &[(f64, Vec<Evaluation>)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["param".to_string()];
    header.extend(bounds.iter().cloned());
    w.write_record(&header)?;
    for (x, cells) in rows {
        let mut record = vec![fixed6(*x)];
        record.extend(cells.iter().map(|e| fixed6(e.bits)));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// `D̂_α(N‖M)` and `D_max(N‖M)`.
pub fn discriminate(first: &str, second: &str, alpha: f64) -> Result<(Divergence, Divergence)> {
    let n = ChannelSpec::parse(first)?.build(&BTreeMap::new())?;
    let m = ChannelSpec::parse(second)?.build(&BTreeMap::new())?;
    let hat = crate::bounds::discrimination_bound(n.channel(), m.channel(), alpha)?;
    let max = channel_max_relative(n.channel(), m.channel())?;
    Ok((hat, max))
}

pub fn cmd_discriminate(a: &DiscriminateArgs, out: &mut dyn Write) -> Result<i32> {
    let alpha = match (a.alpha, a.level) {
        (Some(x), _) => x,
        (None, Some(l)) => alpha_of_level(l),
        (None, None) => 2.0,
    };
    let (hat, max) = discriminate(&a.first, &a.second, alpha)?;
    let show = |d: Divergence| d.finite().map_or_else(|| d.to_string(), fixed6);
    writeln!(out, "{} {}", show(hat), show(max))?;
    Ok(EXIT_OK)
}
