//! Expected-runtime analysis of BFS and DFS on goal-seeded search spaces.
//!
//! Search problems are leveled trees or graphs whose nodes are goals
//! independently, with a per-level probability vector. The crate provides:
//!
//! * closed-form expected-runtime estimators for complete trees
//!   ([`tree`]) and for multiply connected graphs driven by a descendant
//!   counter ([`colliding`]);
//! * explicit graph builders for the binary/full/random string-rewriting
//!   grammars ([`grammar`]);
//! * instrumented BFS/DFS engines, an exact expectation oracle, and a seeded
//!   Monte Carlo harness to validate the estimators ([`sim`]);
//! * BFS-vs-DFS decision rules derived from the estimators.

pub mod colliding;
pub mod distributions;
pub mod error;
pub mod estimate;
pub mod graph;
pub mod grammar;
pub mod sim;
pub mod tree;

pub use colliding::{
    bfs_cb, bfs_cb_sgl, dfs_cb, explorable_goal_probs, subgraph_sizes, DescendantCounter,
    SubgraphSizes,
};
pub use distributions::{
    exp_rate, first_goal_level_probs, level_goal_prob, survival_pow, tc, GoalProbabilities,
    LevelSizes,
};
pub use error::{Error, Result};
pub use estimate::{Method, RuntimeEstimate, Verdict};
pub use graph::{Edge, SearchGraph};
pub use grammar::{
    build_binary_grammar, build_full_grammar, build_random_grammar, graph_features, lbg,
    lbg_explorables, lfg, FeatureVector, GrammarRules,
};
pub use sim::{
    build_complete_tree, compute_descendant_counter, exact_expected_runtime, monte_carlo,
    monte_carlo_with_order, run_search, run_search_with_order, sample_goal_mask, search_order,
    GoalMask, SearchOrder, TrialStats,
};
pub use tree::{
    bfs_mgl, bfs_mgl_goal_weighted, bfs_sgl, dfs_mgl, dfs_sgl, gaussian_goal_vector,
    mgl_decision, sgl_decision, sgl_gamma, GaussianGoalParams, TreeModel,
};
