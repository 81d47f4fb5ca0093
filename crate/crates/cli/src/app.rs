//! Command implementations and exit-code policy.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use swbench_core::catalog::{self, Params};
use swbench_core::harness::{bench_case, OrderStep, SchemeConfig};
use swbench_core::Error as CoreError;

use crate::format;
use crate::report;

pub const EXIT_OK: u8 = 0;
pub const EXIT_BENCH_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

/// Failure carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn io(message: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_IO, message: message.to_string() }
    }
}

impl From<CoreError> for Failure {
    fn from(err: CoreError) -> Self {
        // Everything the library rejects is a validation problem from the
        // command line's point of view.
        Failure::usage(err.to_string())
    }
}

/// Analytic shallow-water benchmark solutions and a solver harness.
#[derive(Debug, Parser)]
#[command(name = "swbench", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the solution catalog.
    List(ListArgs),
    /// Generate a discretized analytic solution file.
    Generate(GenerateArgs),
    /// Benchmark the reference solver against a catalog solution.
    Bench(BenchArgs),
    /// Print a grid-refinement convergence table.
    Converge(ConvergeArgs),
}

#[derive(Debug, Args)]
pub struct ListArgs {
    /// Only show ids containing this substring.
    #[arg(long)]
    pub filter: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeName {
    Hydrostatic,
    Naive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatName {
    Gnuplot,
    Csv,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Catalog id, e.g. transient/dambreak/ritter.
    #[arg(long)]
    pub solution: String,
    /// Number of cells in x.
    #[arg(long)]
    pub cells: usize,
    /// Number of cells in y (two-dimensional cases only).
    #[arg(long)]
    pub cells_y: Option<usize>,
    /// Snapshot instant for transients (defaults to the case reference time).
    #[arg(long)]
    pub time: Option<f64>,
    /// Parameter override, repeatable: --param key=value.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    #[arg(long, value_enum, default_value = "gnuplot")]
    pub format: FormatName,
    /// Output path.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub solution: String,
    /// Grid sizes, comma separated: --cells 50,100,200.
    #[arg(long, value_delimiter = ',', required = true)]
    pub cells: Vec<usize>,
    #[arg(long, value_enum, default_value = "hydrostatic")]
    pub scheme: SchemeName,
    /// Courant number in (0, 1].
    #[arg(long, default_value_t = 0.8)]
    pub cfl: f64,
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    /// Report output path.
    #[arg(long)]
    pub report: PathBuf,
    /// Omit the wall-clock timestamp so outputs are byte-reproducible.
    #[arg(long)]
    pub no_timestamp: bool,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long)]
    pub solution: String,
    /// At least two grid sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub cells: Vec<usize>,
    #[arg(long, value_enum, default_value = "hydrostatic")]
    pub scheme: SchemeName,
    #[arg(long, default_value_t = 0.8)]
    pub cfl: f64,
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    /// Also write the table to this path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_param_overrides(raw: &[String]) -> Result<Vec<(String, f64)>, Failure> {
    raw.iter()
        .map(|item| {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Failure::usage(format!("--param needs KEY=VALUE, got `{item}`")))?;
            let parsed: f64 = value
                .parse()
                .map_err(|_| Failure::usage(format!("--param {key}: `{value}` is not a number")))?;
            Ok((key.trim().to_string(), parsed))
        })
        .collect()
}

fn resolve_params(id: &str, raw: &[String]) -> Result<Params, Failure> {
    let entry = catalog::find(id)?;
    Ok(entry.resolve(&parse_param_overrides(raw)?)?)
}

fn scheme_config(name: SchemeName, cfl: f64) -> Result<SchemeConfig<f64>, Failure> {
    let scheme = match name {
        SchemeName::Hydrostatic => SchemeConfig::hydrostatic(),
        SchemeName::Naive => SchemeConfig::naive(),
    }
    .with_cfl(cfl);
    scheme.validate()?;
    Ok(scheme)
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| Failure::io(format!("cannot create temporary file in {dir:?}: {e}")))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| Failure::io(format!("cannot write {path:?}: {e}")))?;
    tmp.persist(path).map_err(|e| Failure::io(format!("cannot move into {path:?}: {e}")))?;
    Ok(())
}

pub fn run(cli: Cli, stdout: &mut impl std::io::Write) -> Result<u8, Failure> {
    match cli.command {
        Command::List(args) => {
            for entry in catalog::entries() {
                if let Some(filter) = &args.filter {
                    if !entry.id.contains(filter.as_str()) {
                        continue;
                    }
                }
                let dim = match entry.dim {
                    catalog::CaseDim::OneD => "1d",
                    catalog::CaseDim::TwoD => "2d",
                };
                let params: Vec<String> = entry
                    .params
                    .iter()
                    .map(|p| {
                        if p.default.is_nan() {
                            p.key.to_string()
                        } else {
                            format!("{}={}", p.key, p.default)
                        }
                    })
                    .collect();
                let _ = writeln!(
                    stdout,
                    "{:<34} {}  {:<40} [{}]",
                    entry.id,
                    dim,
                    entry.regime,
                    params.join(", ")
                );
            }
            Ok(EXIT_OK)
        }
        Command::Generate(args) => {
            let params = resolve_params(&args.solution, &args.params)?;
            let built = catalog::generate::<f64>(
                &args.solution,
                &params,
                args.cells,
                args.cells_y,
                args.time,
            )?;
            let contents = match args.format {
                FormatName::Gnuplot => format::gnuplot(&args.solution, &built, &params),
                FormatName::Csv => format::csv(&args.solution, &built, &params),
            };
            write_atomic(&args.out, &contents)?;
            Ok(EXIT_OK)
        }
        Command::Bench(args) => {
            let params = resolve_params(&args.solution, &args.params)?;
            let scheme = scheme_config(args.scheme, args.cfl)?;
            let outcome = bench_case::<f64>(&args.solution, &params, &args.cells, &scheme)?;
            let timestamp = if args.no_timestamp {
                None
            } else {
                Some(SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0))
            };
            let rendered = report::render(&outcome, &params, &args.cells, timestamp);
            write_atomic(&args.report, &rendered)?;
            for verdict in &outcome.verdicts {
                let tag = if verdict.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(stdout, "[{tag}] {}: {}", verdict.name, verdict.detail);
            }
            Ok(if outcome.passed() { EXIT_OK } else { EXIT_BENCH_FAIL })
        }
        Command::Converge(args) => {
            if args.cells.len() < 2 {
                return Err(Failure::usage("converge needs at least two grid sizes"));
            }
            let params = resolve_params(&args.solution, &args.params)?;
            let scheme = scheme_config(args.scheme, args.cfl)?;
            let outcome = bench_case::<f64>(&args.solution, &params, &args.cells, &scheme)?;
            let mut table = String::new();
            let _ = writeln!(table, "{:>8}  {:>14}  {:>8}", "cells", "L1(h)", "order");
            for (i, grid) in outcome.grids.iter().enumerate() {
                let error = match (&grid.errors, &grid.failure) {
                    (Some(e), _) => format!("{:.6e}", e.h.l1),
                    (None, Some(msg)) => format!("failed: {msg}"),
                    _ => "-".into(),
                };
                let order = if i == 0 {
                    "-".to_string()
                } else {
                    match outcome.orders.get(i - 1) {
                        Some(OrderStep::Measured(p)) => format!("{p:.3}"),
                        Some(OrderStep::Exact) => "exact".to_string(),
                        None => "-".to_string(),
                    }
                };
                let _ = writeln!(table, "{:>8}  {:>14}  {:>8}", grid.cells, error, order);
            }
            let _ = write!(stdout, "{table}");
            if let Some(path) = &args.out {
                write_atomic(path, &table)?;
            }
            Ok(EXIT_OK)
        }
    }
}
