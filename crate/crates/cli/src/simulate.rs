//! `simulate`: seeded Monte Carlo trials next to the matching analytical
//! estimate and, on small graphs, the exact expectation oracle.

use std::io::Write;

use clap::Args;
use searchtime::{
    build_binary_grammar, build_complete_tree, build_full_grammar, exact_expected_runtime,
    monte_carlo_with_order, search_order, Method, SearchGraph,
};
use serde::{Deserialize, Serialize};

use crate::estimate::{EstimateArgs, MethodEstimate, ModelArgs, ModelKind};
use crate::report::{Meta, TrialStatsReport};
use crate::{OutputArgs, OutputFormat};

/// Exact oracle evaluation is skipped above this many nodes.
const ORACLE_NODE_LIMIT: usize = 1 << 21;

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub method: Method,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Discard trials where the sampled problem has no goal.
    #[arg(long)]
    pub condition_on_goal: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub model: String,
    pub method: String,
    pub condition_on_goal: bool,
    pub stats: TrialStatsReport,
    pub analytical: MethodEstimate,
    /// Exact expected runtime (unconditioned), when the graph is small enough.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<f64>,
    pub meta: Meta,
}

pub fn build_graph(m: &ModelArgs) -> anyhow::Result<SearchGraph> {
    Ok(match m.model {
        ModelKind::Tree => build_complete_tree(m.branching, m.depth)?,
        ModelKind::BinaryGrammar => build_binary_grammar(m.depth)?,
        ModelKind::FullGrammar => build_full_grammar(m.depth)?,
    })
}

pub fn simulate_report(args: &SimulateArgs) -> anyhow::Result<SimulateReport> {
    args.model.validate()?;
    let graph = build_graph(&args.model)?;
    let p = args.model.goal_probabilities()?;
    let order = search_order(&graph, args.method);
    let stats = monte_carlo_with_order(
        &order,
        &graph,
        &p,
        args.trials,
        args.seed,
        args.condition_on_goal,
    )?;
    let est = crate::estimate::estimate_report(&EstimateArgs {
        model: args.model.clone(),
        conditioned: args.condition_on_goal,
        output: args.output.clone(),
    })?;
    let analytical = match args.method {
        Method::Bfs => est.bfs,
        Method::Dfs => est.dfs,
    };
    let oracle = (graph.node_count() <= ORACLE_NODE_LIMIT)
        .then(|| exact_expected_runtime(&order, &graph, &p))
        .transpose()?;
    Ok(SimulateReport {
        model: args.model.model.name().into(),
        method: args.method.name().into(),
        condition_on_goal: args.condition_on_goal,
        stats: stats.into(),
        analytical,
        oracle,
        meta: Meta::new(args.seed, args.trials),
    })
}

pub fn run(args: &SimulateArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let report = simulate_report(args)?;
    match args.output.format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            let s = &report.stats;
            writeln!(
                out,
                "model: {} method: {}{}",
                report.model,
                report.method,
                if report.condition_on_goal { " (conditioned)" } else { "" }
            )?;
            writeln!(
                out,
                "trials: {} kept: {} discarded_no_goal: {}",
                s.trials_total, s.trials_kept, s.discarded_no_goal
            )?;
            writeln!(out, "mean: {:.4} stderr: {:.4}", s.mean, s.stderr)?;
            let e = &report.analytical.estimate;
            if e.lower == e.upper {
                writeln!(out, "analytical: {:.4}  [{}]", e.mean, report.analytical.formula)?;
            } else {
                writeln!(
                    out,
                    "analytical: {:.4} in [{:.4}, {:.4}]  [{}]",
                    e.mean, e.lower, e.upper, report.analytical.formula
                )?;
            }
            if let Some(oracle) = report.oracle {
                writeln!(out, "oracle (unconditioned): {oracle:.4}")?;
            }
        }
    }
    Ok(())
}
