//! `dataset`: random-grammar BFS/DFS races with structural features.
//!
//! Each row samples a random grammar (r in [4, 8] of the 8 optional rules,
//! plus the always-present erase rule; depth D in [11, 15]) and draws n in
//! [3, 5D] goal placements, each a uniform level k in [1, D] and a uniform
//! node on that level. Draws landing on nodes that cannot be goals are
//! wasted; problems ending up with no goal at all are replaced. Each row
//! races BFS against DFS on the resulting problem and records structural
//! features with both explored counts. Ties are labeled BFS.

use std::io::Write;

use clap::Args;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use searchtime::{
    build_random_grammar, graph_features, run_search_with_order, search_order, GoalMask,
    GrammarRules, Method,
};
use serde::{Deserialize, Serialize};

use crate::report::{fmt_f64, Meta};
use crate::{derive_seed, OutputArgs, OutputFormat};

#[derive(Args, Debug)]
pub struct DatasetArgs {
    /// Number of rows to emit.
    #[arg(long, default_value_t = 1827)]
    pub count: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRow {
    pub mean_branching: f64,
    pub std_branching: f64,
    pub num_rules: u32,
    pub max_depth: u32,
    pub bfs_time: u64,
    pub dfs_time: u64,
    pub winner: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetReport {
    pub rows: Vec<DatasetRow>,
    pub skipped: u64,
    pub meta: Meta,
}

/// One sampled problem; None when every goal draw was wasted (no goal).
fn sample_row(seed: u64) -> anyhow::Result<Option<DatasetRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rng.gen_range(4..=8usize);
    let mut bits: Vec<u8> = (0..8).collect();
    bits.shuffle(&mut rng);
    let mask = bits[..r].iter().fold(0u8, |m, &b| m | (1 << b));
    let rules = GrammarRules::from_mask(mask);
    let depth = rng.gen_range(11..=15u32);
    let graph = build_random_grammar(rules, depth)?;

    // Nodes per level 1..=D (level 0 is never a goal here).
    let mut by_level: Vec<Vec<u32>> = vec![Vec::new(); depth as usize + 1];
    for v in 0..graph.node_count() as u32 {
        if graph.level(v) >= 1 {
            by_level[graph.level(v) as usize].push(v);
        }
    }

    let n = rng.gen_range(3..=5 * depth as u64);
    let mut flags = vec![false; graph.node_count()];
    let mut any = false;
    for _ in 0..n {
        let k = rng.gen_range(1..=depth) as usize;
        if let Some(&v) = by_level[k].choose(&mut rng) {
            // draws on nodes that cannot be goals are wasted;
            // duplicates collapse
            if graph.is_goal_eligible(v) {
                flags[v as usize] = true;
                any = true;
            }
        }
    }
    if !any {
        return Ok(None);
    }

    let mask = GoalMask::new(flags, &graph)?;
    let bfs_order = search_order(&graph, Method::Bfs);
    let dfs_order = search_order(&graph, Method::Dfs);
    let bfs_time = run_search_with_order(&bfs_order, &graph, &mask);
    let dfs_time = run_search_with_order(&dfs_order, &graph, &mask);
    let features = graph_features(&graph, &rules);
    Ok(Some(DatasetRow {
        mean_branching: features.mean_branching,
        std_branching: features.std_branching,
        num_rules: features.num_rules,
        max_depth: features.max_depth,
        bfs_time,
        dfs_time,
        winner: if bfs_time <= dfs_time { "BFS" } else { "DFS" }.into(),
    }))
}

pub fn dataset_report(args: &DatasetArgs) -> anyhow::Result<DatasetReport> {
    let mut rows = Vec::with_capacity(args.count as usize);
    let mut skipped = 0u64;
    let mut next_attempt = 0u64;
    // Skipped problems are replaced, so attempts are consumed in batches
    // until `count` rows exist; per-attempt seeds keep this deterministic
    // and order-independent under rayon.
    while (rows.len() as u64) < args.count {
        let missing = args.count - rows.len() as u64;
        let batch: Vec<anyhow::Result<Option<DatasetRow>>> = (0..missing)
            .into_par_iter()
            .map(|i| sample_row(derive_seed(args.seed, next_attempt + i)))
            .collect();
        next_attempt += missing;
        for r in batch {
            match r? {
                Some(row) => rows.push(row),
                None => {
                    skipped += 1;
                    eprintln!(
                        "warning: skipping problem where every goal draw was wasted \
                         (no goal present); replacing it"
                    );
                }
            }
        }
    }
    Ok(DatasetReport { rows, skipped, meta: Meta::new(args.seed, 0) })
}

pub fn write_csv(report: &DatasetReport, out: &mut dyn Write) -> anyhow::Result<()> {
    // Equal explored counts are labeled BFS.
    writeln!(out, "# ties (bfs_time == dfs_time) are labeled BFS")?;
    writeln!(
        out,
        "mean_branching,std_branching,num_rules,max_depth,bfs_time,dfs_time,winner"
    )?;
    for r in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_f64(r.mean_branching),
            fmt_f64(r.std_branching),
            r.num_rules,
            r.max_depth,
            r.bfs_time,
            r.dfs_time,
            r.winner
        )?;
    }
    Ok(())
}

pub fn run(args: &DatasetArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let report = dataset_report(args)?;
    match args.output.format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => write_csv(&report, out)?,
    }
    Ok(())
}
