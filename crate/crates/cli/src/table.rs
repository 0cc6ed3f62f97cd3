//! `table`: analytical-vs-empirical reference grids.
//!
//! Three tables, all at depth 14: `sgl` (single goal level on the complete
//! binary tree), `mgl` (Gaussian goal profiles on the complete binary tree),
//! and `bg` (single goal level on the binary grammar graph). The empirical
//! column is a conditioned Monte Carlo average; `--trials 0` emits the
//! analytical columns only.

use std::io::Write;

use clap::{Args, ValueEnum};
use searchtime::{
    bfs_cb_sgl, bfs_mgl_goal_weighted, bfs_sgl, build_binary_grammar, build_complete_tree,
    dfs_cb, dfs_mgl, dfs_sgl, gaussian_goal_vector, lbg, search_order, DescendantCounter,
    GaussianGoalParams, GoalProbabilities, Method, RuntimeEstimate, SearchGraph, SearchOrder,
    TreeModel,
};

use crate::report::{fmt_opt, Meta, TableCell, TableParams, TableReport, Triple};
use crate::{derive_seed, OutputArgs, OutputFormat};

pub const DEPTH: u32 = 14;
pub const GOAL_LEVELS: [u32; 4] = [5, 8, 11, 14];
pub const GOAL_PROBS: [f64; 3] = [0.001, 0.01, 0.1];
pub const MUS: [u32; 4] = [5, 8, 11, 14];
pub const SIGMA2S: [f64; 4] = [0.1, 1.0, 10.0, 100.0];

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    /// Single goal level, complete binary tree.
    Sgl,
    /// Gaussian goal profiles, complete binary tree.
    Mgl,
    /// Single goal level, binary grammar graph.
    Bg,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::Sgl => "sgl",
            Which::Mgl => "mgl",
            Which::Bg => "bg",
        }
    }
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Which reference table to emit.
    #[arg(long, value_enum)]
    pub which: Which,
    /// Monte Carlo trials per cell (0 skips the empirical column).
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, action = clap::ArgAction::SetTrue, hide = true)]
    pub condition_on_goal: bool, // always on for tables; accepted for symmetry
    #[command(flatten)]
    pub output: OutputArgs,
}

/// The (g = 5, p = 0.001) cells are blank: goal existence has probability
/// about 3%, so conditioned averages at 1000 trials are meaningless.
fn is_blank(g: u32, p: f64) -> bool {
    g == 5 && p == 0.001
}

struct Sim<'a> {
    graph: &'a SearchGraph,
    orders: [&'a SearchOrder; 2],
}

impl Sim<'_> {
    fn empirical(&self, p: &GoalProbabilities, method: Method, trials: u64, seed: u64) -> anyhow::Result<f64> {
        let order = self.orders[(method == Method::Dfs) as usize];
        let stats =
            searchtime::monte_carlo_with_order(order, self.graph, p, trials, seed, true)?;
        Ok(stats.mean)
    }
}

fn push_cell(
    cells: &mut Vec<TableCell>,
    row: u32,
    col: f64,
    method: Method,
    analytical: Option<RuntimeEstimate>,
    sim: Option<(&Sim<'_>, &GoalProbabilities, u64, u64)>,
) -> anyhow::Result<()> {
    let (empirical, error_pct) = match (&analytical, sim) {
        (Some(a), Some((sim, p, trials, seed))) => {
            let e = sim.empirical(p, method, trials, seed)?;
            (Some(e), TableCell::error_pct(a.mean, e))
        }
        _ => (None, None),
    };
    cells.push(TableCell {
        row,
        col,
        method: method.name().into(),
        analytical: analytical.map(Triple::from),
        empirical,
        error_pct,
        blank: analytical.is_none(),
    });
    Ok(())
}

pub fn table_report(args: &TableArgs) -> anyhow::Result<TableReport> {
    let trials = args.trials;
    let graph = if trials > 0 {
        Some(match args.which {
            Which::Bg => build_binary_grammar(DEPTH)?,
            _ => build_complete_tree(2, DEPTH)?,
        })
    } else {
        None
    };
    let orders = graph
        .as_ref()
        .map(|g| [search_order(g, Method::Bfs), search_order(g, Method::Dfs)]);
    let sim = graph
        .as_ref()
        .zip(orders.as_ref())
        .map(|(graph, o)| Sim { graph, orders: [&o[0], &o[1]] });

    let mut cells = Vec::new();
    let mut cell_idx = 0u64;
    let sim_for = |idx: &mut u64| {
        let seed = derive_seed(args.seed, *idx);
        *idx += 1;
        sim.as_ref().map(move |s| (s, seed))
    };

    match args.which {
        Which::Sgl => {
            let model = TreeModel::new(2, DEPTH)?;
            for method in [Method::Bfs, Method::Dfs] {
                for &g in &GOAL_LEVELS {
                    for &p in &GOAL_PROBS {
                        let entry = sim_for(&mut cell_idx);
                        if is_blank(g, p) {
                            push_cell(&mut cells, g, p, method, None, None)?;
                            continue;
                        }
                        let a = match method {
                            Method::Bfs => bfs_sgl(model, g, p, true)?,
                            Method::Dfs => dfs_sgl(model, g, p, true)?,
                        };
                        let probs = GoalProbabilities::single_level(DEPTH, g, p)?;
                        let entry = entry.map(|(s, seed)| (s, &probs, trials, seed));
                        push_cell(&mut cells, g, p, method, Some(a), entry)?;
                    }
                }
            }
        }
        Which::Mgl => {
            let model = TreeModel::new(2, DEPTH)?;
            for method in [Method::Bfs, Method::Dfs] {
                for &mu in &MUS {
                    for &s2 in &SIGMA2S {
                        let entry = sim_for(&mut cell_idx);
                        let p = gaussian_goal_vector(DEPTH, GaussianGoalParams::new(mu as f64, s2)?)?;
                        let a = match method {
                            Method::Bfs => {
                                RuntimeEstimate::point(bfs_mgl_goal_weighted(model, &p)?, true)
                            }
                            Method::Dfs => dfs_mgl(model, &p)?,
                        };
                        let entry = entry.map(|(s, seed)| (s, &p, trials, seed));
                        push_cell(&mut cells, mu, s2, method, Some(a), entry)?;
                    }
                }
            }
        }
        Which::Bg => {
            let counter = DescendantCounter::from_fn(DEPTH, lbg)?;
            for method in [Method::Bfs, Method::Dfs] {
                for &g in &GOAL_LEVELS {
                    for &p in &GOAL_PROBS {
                        let entry = sim_for(&mut cell_idx);
                        if is_blank(g, p) {
                            push_cell(&mut cells, g, p, method, None, None)?;
                            continue;
                        }
                        let probs = GoalProbabilities::single_level(DEPTH, g, p)?;
                        let a = match method {
                            Method::Bfs => bfs_cb_sgl(g, p, &counter, true)?,
                            Method::Dfs => dfs_cb(&probs, &counter, true)?,
                        };
                        let entry = entry.map(|(s, seed)| (s, &probs, trials, seed));
                        push_cell(&mut cells, g, p, method, Some(a), entry)?;
                    }
                }
            }
        }
    }

    let (row_param, col_param) = match args.which {
        Which::Mgl => ("mu", "sigma2"),
        _ => ("goal_level", "goal_prob"),
    };
    Ok(TableReport {
        params: TableParams {
            which: args.which.name().into(),
            depth: DEPTH,
            branching: 2,
            row_param: row_param.into(),
            col_param: col_param.into(),
        },
        cells,
        meta: Meta::new(args.seed, trials),
    })
}

pub fn write_csv(report: &TableReport, out: &mut dyn Write) -> anyhow::Result<()> {
    writeln!(
        out,
        "{},{},method,analytical_lower,analytical_mean,analytical_upper,empirical,error_pct",
        report.params.row_param, report.params.col_param
    )?;
    for c in &report.cells {
        let (al, am, au) = match &c.analytical {
            Some(t) => (fmt_opt(Some(t.lower)), fmt_opt(Some(t.mean)), fmt_opt(Some(t.upper))),
            None => (String::new(), String::new(), String::new()),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            c.row,
            c.col,
            c.method,
            al,
            am,
            au,
            fmt_opt(c.empirical),
            fmt_opt(c.error_pct)
        )?;
    }
    Ok(())
}

pub fn run(args: &TableArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let report = table_report(args)?;
    match args.output.format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => write_csv(&report, out)?,
    }
    Ok(())
}
