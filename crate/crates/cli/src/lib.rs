//! Command-line surface over the `searchtime` library: one-shot estimates,
//! reference tables, decision-boundary grids, the random-grammar dataset, and
//! Monte Carlo simulation.

pub mod boundary;
pub mod dataset;
pub mod estimate;
pub mod export;
pub mod report;
pub mod simulate;
pub mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "searchtime",
    version,
    about = "Expected-runtime analysis of BFS and DFS on goal-seeded search spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Analytical BFS/DFS runtime estimates and a recommendation.
    Estimate(estimate::EstimateArgs),
    /// Reference analytical-vs-empirical tables.
    Table(table::TableArgs),
    /// Decision-boundary grid, sampled problems, and boundary accuracy.
    Boundary(boundary::BoundaryArgs),
    /// Random-grammar BFS/DFS race dataset.
    Dataset(dataset::DatasetArgs),
    /// Seeded Monte Carlo simulation with analytical cross-checks.
    Simulate(simulate::SimulateArgs),
    /// Export a built search graph as tab-separated node and edge lines.
    ExportGraph(export::ExportGraphArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Write to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A flag combination that clap accepts but the command rejects; mapped to
/// exit code 2 like clap's own parse errors.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

/// Stateless per-task seed derivation (splitmix64), so cells/rows/samples are
/// reproducible independently of evaluation order.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut x = master ^ index.wrapping_mul(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<()> {
    match cli.command {
        Command::Estimate(args) => estimate::run(&args, out),
        Command::Table(args) => table::run(&args, out),
        Command::Boundary(args) => boundary::run(&args, out),
        Command::Dataset(args) => dataset::run(&args, out),
        Command::Simulate(args) => simulate::run(&args, out),
        Command::ExportGraph(args) => export::run(&args, out),
    }
}

/// Run a command, honoring `--out` when present; returns rendered stdout
/// output as a string otherwise.
pub fn dispatch(cli: Cli) -> anyhow::Result<()> {
    let out_path = match &cli.command {
        Command::Estimate(a) => a.output.out.clone(),
        Command::Table(a) => a.output.out.clone(),
        Command::Boundary(a) => a.output.out.clone(),
        Command::Dataset(a) => a.output.out.clone(),
        Command::Simulate(a) => a.output.out.clone(),
        Command::ExportGraph(a) => a.out.clone(),
    };
    match out_path {
        Some(path) => {
            let mut file = std::io::BufWriter::new(std::fs::File::create(&path)?);
            run(cli, &mut file)?;
            file.flush()?;
            Ok(())
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = std::io::BufWriter::new(stdout.lock());
            run(cli, &mut lock)?;
            lock.flush()?;
            Ok(())
        }
    }
}
