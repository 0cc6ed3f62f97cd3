//! Instrumented BFS/DFS engines, an exact expectation oracle, and a seeded
//! Monte Carlo harness.
//!
//! The central object is the [`SearchOrder`]: the goal-check order of a method
//! on a graph. Runtime is the 1-based rank of the first goal in that order (or
//! N + 1 when no goal exists), so both the oracle and the sampler reduce to
//! walks over a fixed permutation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::colliding::DescendantCounter;
use crate::distributions::GoalProbabilities;
use crate::error::{Error, Result};
use crate::estimate::Method;
use crate::graph::{Edge, SearchGraph};

/// Per-node goal flags aligned to a graph; true only on goal-eligible nodes.
#[derive(Debug, Clone)]
pub struct GoalMask {
    flags: Vec<bool>,
}

impl GoalMask {
    pub fn new(flags: Vec<bool>, g: &SearchGraph) -> Result<Self> {
        if flags.len() != g.node_count() {
            return Err(Error::Invalid("goal mask length != node count".into()));
        }
        for v in 0..g.node_count() as u32 {
            if flags[v as usize] && !g.is_goal_eligible(v) {
                return Err(Error::Invalid(format!(
                    "goal flag on ineligible node {v}"
                )));
            }
        }
        Ok(Self { flags })
    }

    pub fn is_goal(&self, v: u32) -> bool {
        self.flags[v as usize]
    }

    pub fn any(&self) -> bool {
        self.flags.iter().any(|&f| f)
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }
}

/// Aggregate Monte Carlo statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialStats {
    pub trials_total: u64,
    pub trials_kept: u64,
    pub mean: f64,
    /// Sample standard deviation of the kept trials over sqrt(trials_kept).
    pub stderr: f64,
    pub discarded_no_goal: u64,
}

/// Goal-check order of one method on one graph: a permutation of the node
/// indices. BFS visits whole levels in order; DFS is preorder with
/// already-discovered children skipped.
#[derive(Debug, Clone)]
pub struct SearchOrder {
    method: Method,
    order: Vec<u32>,
}

impl SearchOrder {
    pub fn method(&self) -> Method {
        self.method
    }

    pub fn nodes(&self) -> &[u32] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Complete tree with branching factor `b` and `D + 1` levels, children
/// ordered left to right (rule id = child slot, capped at 255). Labels are
/// root-to-node slot paths; every node is goal-eligible.
pub fn build_complete_tree(b: u64, depth: u32) -> Result<SearchGraph> {
    if b < 2 {
        return Err(Error::Domain(format!("branching factor {b} must be >= 2")));
    }
    match b.checked_pow(depth) {
        Some(leaves) if leaves <= 1u64 << 40 => {}
        _ => {
            return Err(Error::Capacity(format!(
                "complete tree b = {b}, D = {depth} exceeds 2^40 leaves"
            )))
        }
    }
    let total: u64 = (0..=depth).map(|k| b.pow(k)).sum();
    if total > u32::MAX as u64 / 2 {
        return Err(Error::Capacity(format!("complete tree with {total} nodes")));
    }
    let n = total as usize;
    let mut labels = vec![String::new(); n];
    let mut levels = vec![0u32; n];
    let mut children: Vec<Vec<Edge>> = vec![Vec::new(); n];
    // Level-major layout: node v's children are b*v + 1 ... b*v + b.
    let mut idx = 1u64;
    for v in 0..n as u64 {
        if levels[v as usize] < depth {
            let mut kids = Vec::with_capacity(b as usize);
            for slot in 0..b {
                labels[idx as usize] = if labels[v as usize].is_empty() {
                    slot.to_string()
                } else {
                    format!("{}.{slot}", labels[v as usize])
                };
                levels[idx as usize] = levels[v as usize] + 1;
                kids.push(Edge { target: idx as u32, rule: slot.min(255) as u8 });
                idx += 1;
            }
            children[v as usize] = kids;
        }
    }
    SearchGraph::new(labels, levels, vec![true; n], children, 0)
}

/// Seed every goal-eligible node at level k independently with probability
/// `p_k`. Deterministic: nodes are drawn in index order from a ChaCha8 stream.
pub fn sample_goal_mask(g: &SearchGraph, p: &GoalProbabilities, seed: u64) -> Result<GoalMask> {
    if p.depth() < g.depth() {
        return Err(Error::Invalid(format!(
            "probability vector depth {} < graph depth {}",
            p.depth(),
            g.depth()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let flags = (0..g.node_count() as u32)
        .map(|v| g.is_goal_eligible(v) && rng.gen::<f64>() < p.prob(g.level(v)))
        .collect();
    GoalMask::new(flags, g)
}

fn bfs_order(g: &SearchGraph) -> Vec<u32> {
    let n = g.node_count();
    let mut discovered = vec![false; n];
    let mut order = Vec::with_capacity(n);
    // Two-bucket queue so nodes discovered through same-level edges (grammar
    // erase/moving rules) are still checked before the next level starts.
    let mut current = std::collections::VecDeque::from([g.root()]);
    let mut next = std::collections::VecDeque::new();
    discovered[g.root() as usize] = true;
    while !current.is_empty() || !next.is_empty() {
        let u = match current.pop_front() {
            Some(u) => u,
            None => {
                std::mem::swap(&mut current, &mut next);
                current.pop_front().expect("non-empty after swap")
            }
        };
        order.push(u);
        for e in g.children(u) {
            if !discovered[e.target as usize] {
                discovered[e.target as usize] = true;
                if g.level(e.target) <= g.level(u) {
                    current.push_back(e.target);
                } else {
                    next.push_back(e.target);
                }
            }
        }
    }
    order
}

fn dfs_order(g: &SearchGraph) -> Vec<u32> {
    let n = g.node_count();
    let mut discovered = vec![false; n];
    let mut order = Vec::with_capacity(n);
    // Iterative preorder; the stack holds (node, next child slot).
    let mut stack: Vec<(u32, usize)> = vec![(g.root(), 0)];
    discovered[g.root() as usize] = true;
    order.push(g.root());
    while let Some(&mut (u, ref mut slot)) = stack.last_mut() {
        match g.children(u).get(*slot) {
            Some(e) => {
                *slot += 1;
                if !discovered[e.target as usize] {
                    discovered[e.target as usize] = true;
                    order.push(e.target);
                    stack.push((e.target, 0));
                }
            }
            None => {
                stack.pop();
            }
        }
    }
    order
}

/// Goal-check order of `method` on `g` (reachable nodes only).
pub fn search_order(g: &SearchGraph, method: Method) -> SearchOrder {
    let order = match method {
        Method::Bfs => bfs_order(g),
        Method::Dfs => dfs_order(g),
    };
    SearchOrder { method, order }
}

/// Runtime on a fixed goal configuration: the 1-based rank of the first goal
/// in the order, or N + 1 when no reachable goal exists.
pub fn run_search_with_order(order: &SearchOrder, g: &SearchGraph, mask: &GoalMask) -> u64 {
    for (i, &v) in order.nodes().iter().enumerate() {
        if mask.is_goal(v) {
            return i as u64 + 1;
        }
    }
    g.node_count() as u64 + 1
}

pub fn run_search(g: &SearchGraph, mask: &GoalMask, method: Method) -> u64 {
    run_search_with_order(&search_order(g, method), g, mask)
}

/// Exact expectation of [`run_search`] under iid per-level seeding:
/// sum over goal-eligible nodes of rank * p * P(all earlier eligible nodes
/// miss), plus (N + 1) times the all-miss probability.
pub fn exact_expected_runtime(
    order: &SearchOrder,
    g: &SearchGraph,
    p: &GoalProbabilities,
) -> Result<f64> {
    if p.depth() < g.depth() {
        return Err(Error::Invalid(format!(
            "probability vector depth {} < graph depth {}",
            p.depth(),
            g.depth()
        )));
    }
    let mut total = 0.0;
    let mut miss = 1.0;
    for (i, &v) in order.nodes().iter().enumerate() {
        if g.is_goal_eligible(v) {
            let pv = p.prob(g.level(v));
            total += (i as f64 + 1.0) * pv * miss;
            miss *= 1.0 - pv;
        }
    }
    Ok(total + (g.node_count() as f64 + 1.0) * miss)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Per-trial RNG derived from (master seed, trial index), so results do not
/// depend on execution order or thread count.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(trial)))
}

/// One lazily seeded trial: goals are drawn along the check order, so a trial
/// costs O(runtime) draws instead of O(N). Returns None when no goal appears.
fn one_trial(order: &SearchOrder, g: &SearchGraph, p: &GoalProbabilities, rng: &mut ChaCha8Rng) -> Option<u64> {
    for (i, &v) in order.nodes().iter().enumerate() {
        if g.is_goal_eligible(v) && rng.gen::<f64>() < p.prob(g.level(v)) {
            return Some(i as u64 + 1);
        }
    }
    None
}

/// Seeded Monte Carlo estimate of the expected runtime. `condition_on_goal`
/// discards (and counts) trials where the sampled problem has no goal;
/// otherwise those trials score N + 1.
pub fn monte_carlo(
    g: &SearchGraph,
    p: &GoalProbabilities,
    method: Method,
    trials: u64,
    seed: u64,
    condition_on_goal: bool,
) -> Result<TrialStats> {
    if trials < 1 {
        return Err(Error::Invalid("trials must be >= 1".into()));
    }
    let order = search_order(g, method);
    monte_carlo_with_order(&order, g, p, trials, seed, condition_on_goal)
}

/// [`monte_carlo`] against a precomputed order (callers running many
/// configurations on one graph should reuse the order).
pub fn monte_carlo_with_order(
    order: &SearchOrder,
    g: &SearchGraph,
    p: &GoalProbabilities,
    trials: u64,
    seed: u64,
    condition_on_goal: bool,
) -> Result<TrialStats> {
    if p.depth() < g.depth() {
        return Err(Error::Invalid(format!(
            "probability vector depth {} < graph depth {}",
            p.depth(),
            g.depth()
        )));
    }
    let no_goal_score = g.node_count() as u64 + 1;
    let results: Vec<Option<u64>> = (0..trials)
        .into_par_iter()
        .map(|t| one_trial(order, g, p, &mut trial_rng(seed, t)))
        .collect();
    // Sequential reduction in trial order keeps the floats bitwise stable.
    let mut kept = 0u64;
    let mut discarded = 0u64;
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    for r in results {
        let value = match r {
            Some(v) => v,
            None if condition_on_goal => {
                discarded += 1;
                continue;
            }
            None => no_goal_score,
        };
        kept += 1;
        let v = value as f64;
        sum += v;
        sumsq += v * v;
    }
    if kept == 0 {
        return Err(Error::AllTrialsGoalless);
    }
    let mean = sum / kept as f64;
    let var = if kept > 1 {
        ((sumsq - sum * sum / kept as f64) / (kept as f64 - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(TrialStats {
        trials_total: trials,
        trials_kept: kept,
        mean,
        stderr: (var / kept as f64).sqrt(),
        discarded_no_goal: discarded,
    })
}

/// Measure the descendant counter `L(n, d)` of a built graph: `delta_n` is the
/// first level-n node in DFS order, and `L(n, d)` counts the level-d nodes
/// reachable from it. Errors when some level has no DFS-reachable node.
pub fn compute_descendant_counter(g: &SearchGraph) -> Result<DescendantCounter> {
    let depth = g.depth();
    let order = dfs_order(g);
    let mut delta = vec![u32::MAX; depth as usize + 1];
    for &v in &order {
        let l = g.level(v) as usize;
        if delta[l] == u32::MAX {
            delta[l] = v;
        }
    }
    if let Some(missing) = delta.iter().position(|&v| v == u32::MAX) {
        return Err(Error::Domain(format!("level {missing} is unreachable by DFS")));
    }
    let side = depth as usize + 1;
    let mut counts = vec![0u64; side * side];
    let mut reached = vec![false; g.node_count()];
    for n in (0..=depth).rev() {
        // Forward reachability from delta_n; deeper spines were counted
        // already but the closures are not nested across spines in general,
        // so each spine gets its own sweep.
        reached.iter_mut().for_each(|r| *r = false);
        let mut stack = vec![delta[n as usize]];
        reached[delta[n as usize] as usize] = true;
        while let Some(u) = stack.pop() {
            counts[n as usize * side + g.level(u) as usize] += 1;
            for e in g.children(u) {
                if !reached[e.target as usize] {
                    reached[e.target as usize] = true;
                    stack.push(e.target);
                }
            }
        }
    }
    DescendantCounter::new(depth, counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{build_binary_grammar, build_full_grammar, lbg, lfg};
    use approx::assert_relative_eq;

    #[test]
    fn complete_tree_shapes() {
        let g = build_complete_tree(2, 2).unwrap();
        assert_eq!(g.node_count(), 7);
        assert_eq!(g.level_sizes(), vec![1, 2, 4]);
        let g = build_complete_tree(3, 3).unwrap();
        assert_eq!(g.node_count(), 40);
        assert_eq!(g.level_sizes(), vec![1, 3, 9, 27]);
        assert!(build_complete_tree(1, 3).is_err());
        assert!(build_complete_tree(2, 41).is_err());
    }

    #[test]
    fn goal_mask_extremes() {
        let g = build_complete_tree(2, 3).unwrap();
        let zero = GoalProbabilities::new(vec![0.0; 4]).unwrap();
        assert!(!sample_goal_mask(&g, &zero, 1).unwrap().any());
        let one = GoalProbabilities::new(vec![1.0; 4]).unwrap();
        let mask = sample_goal_mask(&g, &one, 1).unwrap();
        assert!(mask.flags().iter().all(|&f| f));
    }

    #[test]
    fn goal_mask_frequency() {
        // Level-2 flag frequency over many seeds within 3 sigma of p_2.
        let g = build_complete_tree(2, 2).unwrap();
        let p = GoalProbabilities::new(vec![0.0, 0.0, 0.3]).unwrap();
        let node = g.eligible_on_level(2)[0];
        let n = 20_000u64;
        let hits = (0..n)
            .filter(|&s| sample_goal_mask(&g, &p, s).unwrap().is_goal(node))
            .count() as f64;
        let sigma = (n as f64 * 0.3 * 0.7).sqrt();
        assert!((hits - 0.3 * n as f64).abs() < 3.0 * sigma, "hits = {hits}");
    }

    #[test]
    fn orders_on_complete_tree() {
        let g = build_complete_tree(2, 2).unwrap();
        assert_eq!(search_order(&g, Method::Bfs).nodes(), &[0, 1, 2, 3, 4, 5, 6]);
        // Preorder: root, L, LL, LR, R, RL, RR.
        assert_eq!(search_order(&g, Method::Dfs).nodes(), &[0, 1, 3, 4, 2, 5, 6]);
    }

    #[test]
    fn orders_are_permutations_and_bfs_level_monotone() {
        for g in [
            build_complete_tree(3, 4).unwrap(),
            build_binary_grammar(5).unwrap(),
            build_full_grammar(5).unwrap(),
        ] {
            for method in [Method::Bfs, Method::Dfs] {
                let order = search_order(&g, method);
                let mut seen = vec![false; g.node_count()];
                for &v in order.nodes() {
                    assert!(!seen[v as usize]);
                    seen[v as usize] = true;
                }
                assert!(seen.iter().all(|&s| s), "order must reach every node");
            }
            let order = search_order(&g, Method::Bfs);
            let mut prev = 0;
            for &v in order.nodes() {
                assert!(g.level(v) >= prev, "BFS level decreased at {}", g.label(v));
                prev = g.level(v);
            }
        }
    }

    #[test]
    fn dfs_spine_on_binary_grammar() {
        let g = build_binary_grammar(3).unwrap();
        let order = search_order(&g, Method::Dfs);
        let labels: Vec<&str> = order.nodes()[..4].iter().map(|&v| g.label(v)).collect();
        assert_eq!(labels, vec!["", "a", "aa", "aaa"]);
    }

    #[test]
    fn dfs_explorable_blocks_on_grammars() {
        // Once DFS enters delta_{n+1}, it finishes that closure before
        // touching anything else reachable from delta_n. The handful of nodes
        // probed on the way down (the spine and its erase children) sit
        // before delta_{n+1} and are excluded.
        for g in [build_binary_grammar(6).unwrap(), build_full_grammar(5).unwrap()] {
            let order = search_order(&g, Method::Dfs);
            let mut pos = vec![0usize; g.node_count()];
            for (i, &v) in order.nodes().iter().enumerate() {
                pos[v as usize] = i;
            }
            let mut delta = vec![u32::MAX; g.depth() as usize + 1];
            for &v in order.nodes() {
                let l = g.level(v) as usize;
                if delta[l] == u32::MAX {
                    delta[l] = v;
                }
            }
            let closure = |root: u32| {
                let mut reached = vec![false; g.node_count()];
                let mut stack = vec![root];
                reached[root as usize] = true;
                while let Some(u) = stack.pop() {
                    for e in g.children(u) {
                        if !reached[e.target as usize] {
                            reached[e.target as usize] = true;
                            stack.push(e.target);
                        }
                    }
                }
                reached
            };
            for n in 0..g.depth() as usize {
                let inner = closure(delta[n + 1]);
                let max_inner =
                    (0..g.node_count()).filter(|&v| inner[v]).map(|v| pos[v]).max().unwrap();
                let outer = closure(delta[n]);
                let min_outside = (0..g.node_count())
                    .filter(|&v| outer[v] && !inner[v] && pos[v] > pos[delta[n + 1] as usize])
                    .map(|v| pos[v])
                    .min();
                if let Some(min_outside) = min_outside {
                    assert!(
                        max_inner < min_outside,
                        "T_{n} entered before S_{} finished",
                        n + 1
                    );
                }
            }
        }
    }

    #[test]
    fn run_search_figure_example() {
        // Goal at the second node of level 2: BFS explores 5 nodes.
        let g = build_complete_tree(2, 2).unwrap();
        let second = g.eligible_on_level(2)[1];
        let mut flags = vec![false; g.node_count()];
        flags[second as usize] = true;
        let mask = GoalMask::new(flags, &g).unwrap();
        assert_eq!(run_search(&g, &mask, Method::Bfs), 5);

        // Goal at the root: 1 for both methods.
        let mut flags = vec![false; g.node_count()];
        flags[0] = true;
        let mask = GoalMask::new(flags, &g).unwrap();
        assert_eq!(run_search(&g, &mask, Method::Bfs), 1);
        assert_eq!(run_search(&g, &mask, Method::Dfs), 1);

        // Empty mask: N + 1.
        let mask = GoalMask::new(vec![false; g.node_count()], &g).unwrap();
        assert_eq!(run_search(&g, &mask, Method::Bfs), 8);
        assert_eq!(run_search(&g, &mask, Method::Dfs), 8);
    }

    #[test]
    fn run_search_rank_determinism() {
        let g = build_full_grammar(4).unwrap();
        for method in [Method::Bfs, Method::Dfs] {
            let order = search_order(&g, method);
            for k in [0usize, 3, 17, order.len() - 1] {
                let mut flags = vec![false; g.node_count()];
                flags[order.nodes()[k] as usize] = true;
                let mask = GoalMask::new(flags, &g).unwrap();
                assert_eq!(run_search_with_order(&order, &g, &mask), k as u64 + 1);
            }
        }
    }

    #[test]
    fn oracle_hand_enumeration() {
        // D = 2 binary tree, p_1 = 0.5:
        // BFS: 0.5*2 + 0.25*3 + 0.25*8; DFS: 0.5*2 + 0.25*5 + 0.25*8.
        let g = build_complete_tree(2, 2).unwrap();
        let p = GoalProbabilities::new(vec![0.0, 0.5, 0.0]).unwrap();
        let bfs = exact_expected_runtime(&search_order(&g, Method::Bfs), &g, &p).unwrap();
        let dfs = exact_expected_runtime(&search_order(&g, Method::Dfs), &g, &p).unwrap();
        assert_relative_eq!(bfs, 3.75, max_relative = 1e-12);
        assert_relative_eq!(dfs, 4.25, max_relative = 1e-12);

        let zero = GoalProbabilities::new(vec![0.0; 3]).unwrap();
        let v = exact_expected_runtime(&search_order(&g, Method::Bfs), &g, &zero).unwrap();
        assert_eq!(v, 8.0);
    }

    #[test]
    fn oracle_matches_tree_bfs_formulas() {
        // BFS tree estimators are exact: compare to the oracle at 1e-9.
        use crate::tree::{bfs_mgl, bfs_sgl, TreeModel};
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for &b in &[2u64, 3] {
            for depth in [4u32, 6, 8] {
                let g = build_complete_tree(b, depth).unwrap();
                let model = TreeModel::new(b, depth).unwrap();
                let order = search_order(&g, Method::Bfs);
                for _ in 0..10 {
                    let probs: Vec<f64> =
                        (0..=depth).map(|_| rng.gen_range(0.0..0.7)).collect();
                    let p = GoalProbabilities::new(probs).unwrap();
                    if p.require_goal_level().is_err() {
                        continue;
                    }
                    let oracle = exact_expected_runtime(&order, &g, &p).unwrap();
                    let est = bfs_mgl(model, &p, false).unwrap().mean;
                    assert_relative_eq!(oracle, est, max_relative = 1e-9);
                }
                let gl = depth - 1;
                let p = GoalProbabilities::single_level(depth, gl, 0.2).unwrap();
                let oracle = exact_expected_runtime(&order, &g, &p).unwrap();
                let est = bfs_sgl(model, gl, 0.2, false).unwrap().mean;
                assert_relative_eq!(oracle, est, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn monte_carlo_degenerate() {
        let g = build_complete_tree(2, 3).unwrap();
        let mut probs = vec![0.0; 4];
        probs[0] = 1.0;
        let p = GoalProbabilities::new(probs).unwrap();
        let stats = monte_carlo(&g, &p, Method::Dfs, 100, 9, true).unwrap();
        assert_eq!(stats.mean, 1.0);
        assert_eq!(stats.stderr, 0.0);
        assert_eq!(stats.trials_kept, 100);

        let zero = GoalProbabilities::new(vec![0.0; 4]).unwrap();
        assert!(matches!(
            monte_carlo(&g, &zero, Method::Bfs, 10, 9, true),
            Err(Error::AllTrialsGoalless)
        ));
        let stats = monte_carlo(&g, &zero, Method::Bfs, 10, 9, false).unwrap();
        assert_eq!(stats.mean, 16.0); // N + 1
    }

    #[test]
    fn monte_carlo_agrees_with_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for case in 0..20u64 {
            let b = *[2u64, 3].get((case % 2) as usize).unwrap();
            let depth = rng.gen_range(2..=6u32);
            let g = build_complete_tree(b, depth).unwrap();
            let probs: Vec<f64> = (0..=depth).map(|_| rng.gen_range(0.0..0.4)).collect();
            let p = GoalProbabilities::new(probs).unwrap();
            let method = if case % 3 == 0 { Method::Bfs } else { Method::Dfs };
            let order = search_order(&g, method);
            let oracle = exact_expected_runtime(&order, &g, &p).unwrap();
            let stats =
                monte_carlo_with_order(&order, &g, &p, 10_000, 1000 + case, false).unwrap();
            let tol = 4.0 * stats.stderr.max(1e-9);
            assert!(
                (stats.mean - oracle).abs() <= tol,
                "case {case}: mean {} vs oracle {oracle} (stderr {})",
                stats.mean,
                stats.stderr
            );
        }
    }

    #[test]
    fn monte_carlo_reference_value() {
        // b = 2, D = 14, p_8 = 0.01, conditioned: mean near 333.85.
        let g = build_complete_tree(2, 14).unwrap();
        let p = GoalProbabilities::single_level(14, 8, 0.01).unwrap();
        let stats = monte_carlo(&g, &p, Method::Bfs, 1000, 4242, true).unwrap();
        assert!(
            (stats.mean - 333.85).abs() <= 3.0 * stats.stderr,
            "mean {} stderr {}",
            stats.mean,
            stats.stderr
        );
        assert_eq!(stats.trials_kept + stats.discarded_no_goal, stats.trials_total);
    }

    #[test]
    fn monte_carlo_seed_stability() {
        let g = build_binary_grammar(6).unwrap();
        let p = GoalProbabilities::single_level(6, 4, 0.1).unwrap();
        let a = monte_carlo(&g, &p, Method::Dfs, 2000, 5, true).unwrap();
        let b = monte_carlo(&g, &p, Method::Dfs, 2000, 5, true).unwrap();
        assert_eq!(a, b);
        let c = monte_carlo(&g, &p, Method::Dfs, 2000, 6, true).unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn measured_counters_match_closed_forms() {
        for d in 1..=8u32 {
            let tree = compute_descendant_counter(&build_complete_tree(2, d).unwrap()).unwrap();
            let bg = compute_descendant_counter(&build_binary_grammar(d).unwrap()).unwrap();
            for n in 0..=d {
                for k in n..=d {
                    assert_eq!(tree.get(n, k), 1u64 << (k - n));
                    assert_eq!(bg.get(n, k), lbg(n, k).unwrap(), "bg L({n},{k})");
                }
            }
        }
        for d in 1..=7u32 {
            let fg = compute_descendant_counter(&build_full_grammar(d).unwrap()).unwrap();
            for n in 0..=d {
                for k in n..=d {
                    assert_eq!(fg.get(n, k), lfg(n, k).unwrap(), "fg L({n},{k})");
                }
            }
        }
    }
}
