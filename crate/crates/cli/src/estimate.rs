//! `estimate`: analytical expected runtimes and a BFS/DFS recommendation.

use std::io::Write;

use clap::{Args, ValueEnum};
use searchtime::{
    bfs_cb, bfs_cb_sgl, bfs_mgl, bfs_mgl_goal_weighted, bfs_sgl, dfs_cb, dfs_mgl, dfs_sgl,
    gaussian_goal_vector, lbg, lfg, mgl_decision, sgl_decision, DescendantCounter,
    GaussianGoalParams, GoalProbabilities, RuntimeEstimate, TreeModel,
};
use serde::{Deserialize, Serialize};

use crate::report::Triple;
use crate::{usage, OutputArgs, OutputFormat};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// Complete tree with branching factor `--branching`.
    Tree,
    /// Binary grammar graph (letter insertions, colliding branches).
    BinaryGrammar,
    /// Full grammar graph (adding + moving rules, node clusters).
    FullGrammar,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Tree => "tree",
            ModelKind::BinaryGrammar => "binary-grammar",
            ModelKind::FullGrammar => "full-grammar",
        }
    }
}

/// Search-problem parameters shared by `estimate` and `simulate`: a model
/// plus either a single goal level (`--goal-level` + `--goal-prob`) or a
/// Gaussian goal profile (`--mu` + `--sigma2`).
#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value = "tree")]
    pub model: ModelKind,
    /// Depth D: levels run 0..=D.
    #[arg(long)]
    pub depth: u32,
    /// Branching factor (trees only).
    #[arg(long, default_value_t = 2)]
    pub branching: u64,
    #[arg(long)]
    pub goal_level: Option<u32>,
    #[arg(long)]
    pub goal_prob: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub sigma2: Option<f64>,
}

/// Which kind of goal profile the flags describe.
pub enum GoalSpec {
    SingleLevel { g: u32, p_g: f64 },
    Gaussian { mu: f64, sigma2: f64 },
}

impl ModelArgs {
    pub fn goal_spec(&self) -> anyhow::Result<GoalSpec> {
        match (self.goal_level, self.goal_prob, self.mu, self.sigma2) {
            (Some(g), Some(p), None, None) => Ok(GoalSpec::SingleLevel { g, p_g: p }),
            (None, None, Some(mu), Some(s2)) => Ok(GoalSpec::Gaussian { mu, sigma2: s2 }),
            _ => Err(usage(
                "specify either --goal-level with --goal-prob, or --mu with --sigma2",
            )),
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.model != ModelKind::Tree && self.branching != 2 {
            return Err(usage("--branching applies to --model tree only"));
        }
        self.goal_spec().map(|_| ())
    }

    pub fn goal_probabilities(&self) -> anyhow::Result<GoalProbabilities> {
        Ok(match self.goal_spec()? {
            GoalSpec::SingleLevel { g, p_g } => {
                GoalProbabilities::single_level(self.depth, g, p_g)?
            }
            GoalSpec::Gaussian { mu, sigma2 } => {
                gaussian_goal_vector(self.depth, GaussianGoalParams::new(mu, sigma2)?)?
            }
        })
    }

    pub fn descendant_counter(&self) -> anyhow::Result<DescendantCounter> {
        let f = match self.model {
            ModelKind::BinaryGrammar => lbg,
            ModelKind::FullGrammar => lfg,
            ModelKind::Tree => return Err(usage("trees have no descendant counter")),
        };
        Ok(DescendantCounter::from_fn(self.depth, f)?)
    }
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Condition the estimates on at least one goal existing.
    #[arg(long)]
    pub conditioned: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodEstimate {
    pub formula: String,
    // not flattened: serde's flatten buffering rounds f64 on deserialize,
    // breaking exact JSON round-trips
    pub estimate: Triple,
    pub conditioned: bool,
}

impl MethodEstimate {
    fn new(formula: &str, e: RuntimeEstimate) -> Self {
        Self { formula: formula.into(), estimate: e.into(), conditioned: e.conditioned_on_goal }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub model: String,
    pub depth: u32,
    pub branching: u64,
    pub goal: String,
    pub conditioned: bool,
    pub bfs: MethodEstimate,
    pub dfs: MethodEstimate,
    pub recommendation: String,
}

pub fn estimate_report(args: &EstimateArgs) -> anyhow::Result<EstimateReport> {
    args.model.validate()?;
    let m = &args.model;
    let cond = args.conditioned;
    let spec = m.goal_spec()?;
    let (bfs, dfs, verdict) = match (m.model, &spec) {
        (ModelKind::Tree, GoalSpec::SingleLevel { g, p_g }) => {
            let model = TreeModel::new(m.branching, m.depth)?;
            (
                MethodEstimate::new("bfs_sgl", bfs_sgl(model, *g, *p_g, cond)?),
                MethodEstimate::new("dfs_sgl", dfs_sgl(model, *g, *p_g, cond)?),
                sgl_decision(model, *g, *p_g)?.name().to_string(),
            )
        }
        (ModelKind::Tree, GoalSpec::Gaussian { .. }) => {
            let model = TreeModel::new(m.branching, m.depth)?;
            let p = m.goal_probabilities()?;
            let bfs = if cond {
                let v = bfs_mgl_goal_weighted(model, &p)?;
                RuntimeEstimate::point(v, true)
            } else {
                bfs_mgl(model, &p, false)?
            };
            (
                MethodEstimate::new("bfs_mgl", bfs),
                MethodEstimate::new("dfs_mgl", dfs_mgl(model, &p)?),
                mgl_decision(model, &p)?.name().to_string(),
            )
        }
        (_, spec) => {
            let counter = m.descendant_counter()?;
            let bfs = match spec {
                GoalSpec::SingleLevel { g, p_g } => bfs_cb_sgl(*g, *p_g, &counter, cond)?,
                GoalSpec::Gaussian { .. } => {
                    bfs_cb(&m.goal_probabilities()?, &counter, cond)?
                }
            };
            let dfs = dfs_cb(&m.goal_probabilities()?, &counter, cond)?;
            let verdict = if bfs.mean <= dfs.mean { "BFS" } else { "DFS" };
            (
                MethodEstimate::new("bfs_cb", bfs),
                MethodEstimate::new("dfs_cb", dfs),
                verdict.to_string(),
            )
        }
    };
    Ok(EstimateReport {
        model: m.model.name().into(),
        depth: m.depth,
        branching: m.branching,
        goal: match spec {
            GoalSpec::SingleLevel { g, p_g } => format!("level {g}, p = {p_g}"),
            GoalSpec::Gaussian { mu, sigma2 } => format!("gaussian mu = {mu}, sigma2 = {sigma2}"),
        },
        conditioned: cond,
        bfs,
        dfs,
        recommendation: verdict,
    })
}

fn render_method(w: &mut dyn Write, name: &str, m: &MethodEstimate) -> anyhow::Result<()> {
    let e = &m.estimate;
    if e.lower == e.upper {
        writeln!(w, "{name}: {:.3}  [{}]", e.mean, m.formula)?;
    } else {
        writeln!(
            w,
            "{name}: {:.3} in [{:.3}, {:.3}]  [{}]",
            e.mean, e.lower, e.upper, m.formula
        )?;
    }
    Ok(())
}

pub fn run(args: &EstimateArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let report = estimate_report(args)?;
    match args.output.format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            writeln!(
                out,
                "model: {} depth={} branching={}",
                report.model, report.depth, report.branching
            )?;
            writeln!(
                out,
                "goal: {}{}",
                report.goal,
                if report.conditioned { " (conditioned on a goal existing)" } else { "" }
            )?;
            render_method(out, "bfs", &report.bfs)?;
            render_method(out, "dfs", &report.dfs)?;
            writeln!(out, "recommendation: {}", report.recommendation)?;
        }
    }
    Ok(())
}
