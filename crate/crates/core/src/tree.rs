//! Closed-form expected-runtime estimators for complete b-ary trees, the
//! BFS-vs-DFS decision rules, and the Gaussian goal-probability generator.
//!
//! BFS estimates are exact expectations. DFS estimates are the subtree-counting
//! approximation: the first goal at level g leaves `Y - 1` fully explored
//! sibling blocks behind it, each of size `2 (b^{D-g} - 1)/(b - 1) + 2`.

use crate::distributions::{
    exp_rate, first_goal_level_probs, level_goal_prob, tc, GoalProbabilities, LevelSizes,
};
use crate::error::{Error, Result};
use crate::estimate::{RuntimeEstimate, Verdict};

/// Complete tree with branching factor `b >= 2` and depth `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeModel {
    depth: u32,
    branching: u64,
}

impl TreeModel {
    pub fn new(branching: u64, depth: u32) -> Result<Self> {
        if branching < 2 {
            return Err(Error::Domain(format!("branching factor {branching} must be >= 2")));
        }
        // Node count must fit in 64 bits: D * log2(b) <= 62.
        if depth as f64 * (branching as f64).log2() > 62.0 {
            return Err(Error::Capacity(format!(
                "tree b = {branching}, D = {depth} exceeds 64-bit node counts"
            )));
        }
        Ok(Self { depth, branching })
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn branching(&self) -> u64 {
        self.branching
    }

    /// `b^k` nodes at level k.
    pub fn level_size(&self, level: u32) -> u64 {
        self.branching.pow(level)
    }

    pub fn level_sizes(&self) -> LevelSizes {
        LevelSizes::new((0..=self.depth).map(|k| self.level_size(k)).collect())
            .expect("non-empty by construction")
    }

    pub fn node_count(&self) -> u64 {
        (0..=self.depth).map(|k| self.level_size(k)).sum()
    }

    /// Number of nodes strictly above `level`.
    pub fn nodes_above(&self, level: u32) -> u64 {
        (0..level).map(|k| self.level_size(k)).sum()
    }

    /// Node count of one explored sibling block in the DFS analysis:
    /// `2 (b^{D-g} - 1)/(b - 1) + 2`, which is `2^{D-g+1}` for b = 2.
    pub fn sibling_block(&self, g: u32) -> f64 {
        let b = self.branching as f64;
        2.0 * (b.powi((self.depth - g) as i32) - 1.0) / (b - 1.0) + 2.0
    }

    fn check_level(&self, g: u32) -> Result<()> {
        if g > self.depth {
            return Err(Error::Domain(format!("goal level {g} exceeds depth {}", self.depth)));
        }
        Ok(())
    }
}

/// Gaussian goal-probability profile: peak `mu`, spread `sigma2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianGoalParams {
    pub mu: f64,
    pub sigma2: f64,
}

impl GaussianGoalParams {
    pub fn new(mu: f64, sigma2: f64) -> Result<Self> {
        if !(mu >= 0.0) {
            return Err(Error::Domain(format!("mu = {mu} must be non-negative")));
        }
        if !(sigma2 > 0.0) {
            return Err(Error::Domain(format!("sigma2 = {sigma2} must be positive")));
        }
        Ok(Self { mu, sigma2 })
    }
}

/// Goal probabilities `p_i = min(exp(-(i - mu)^2 / sigma2) / (20 sqrt(sigma2)), 1/2)`.
pub fn gaussian_goal_vector(depth: u32, params: GaussianGoalParams) -> Result<GoalProbabilities> {
    if params.mu > depth as f64 {
        return Err(Error::Domain(format!("mu = {} exceeds depth {depth}", params.mu)));
    }
    let scale = 1.0 / (20.0 * params.sigma2.sqrt());
    let probs = (0..=depth)
        .map(|i| {
            let d = i as f64 - params.mu;
            (scale * (-(d * d) / params.sigma2).exp()).min(0.5)
        })
        .collect();
    GoalProbabilities::new(probs)
}

fn mix_no_goal(conditional: f64, p_goal: f64, node_count: u64) -> f64 {
    p_goal * conditional + (1.0 - p_goal) * (node_count as f64 + 1.0)
}

/// Expected BFS runtime with a single goal level: sweep the top of the tree,
/// then `tc(p_g, b^g)` probes on the goal level.
pub fn bfs_sgl(
    model: TreeModel,
    g: u32,
    p_g: f64,
    conditioned: bool,
) -> Result<RuntimeEstimate> {
    model.check_level(g)?;
    if p_g <= 0.0 {
        return Err(Error::NoGoalLevel);
    }
    let m = model.level_size(g);
    let cond = model.nodes_above(g) as f64 + tc(p_g, m)?;
    let value = if conditioned {
        cond
    } else {
        mix_no_goal(cond, level_goal_prob(p_g, m)?, model.node_count())
    };
    Ok(RuntimeEstimate::point(value, conditioned))
}

/// Approximate expected DFS runtime with a single goal level:
/// `(tc(p_g, b^g) - 1)` fully explored sibling blocks plus two probes.
pub fn dfs_sgl(
    model: TreeModel,
    g: u32,
    p_g: f64,
    conditioned: bool,
) -> Result<RuntimeEstimate> {
    model.check_level(g)?;
    if p_g <= 0.0 {
        return Err(Error::NoGoalLevel);
    }
    let m = model.level_size(g);
    let cond = (tc(p_g, m)? - 1.0) * model.sibling_block(g) + 2.0;
    let value = if conditioned {
        cond
    } else {
        mix_no_goal(cond, level_goal_prob(p_g, m)?, model.node_count())
    };
    Ok(RuntimeEstimate::point(value, conditioned))
}

/// BFS-vs-DFS winner in the single-goal-level model. BFS wins when
/// `g < D/2 + gamma`, DFS when `g > D/2 + gamma + 1/2`, with
/// `gamma = log_b(tc(p_g, b^g) - 1) / 2`; in between neither bound applies.
pub fn sgl_decision(model: TreeModel, g: u32, p_g: f64) -> Result<Verdict> {
    model.check_level(g)?;
    if p_g <= 0.0 {
        return Err(Error::NoGoalLevel);
    }
    let t = tc(p_g, model.level_size(g))?;
    if t <= 1.0 {
        // Degenerate p_g near 1: the goal is immediate on the level-g sweep.
        return Ok(Verdict::Bfs);
    }
    let gamma = (t - 1.0).log2() / (model.branching() as f64).log2() / 2.0;
    let boundary = model.depth() as f64 / 2.0 + gamma;
    let g = g as f64;
    Ok(if g < boundary {
        Verdict::Bfs
    } else if g > boundary + 0.5 {
        Verdict::Dfs
    } else {
        Verdict::Band
    })
}

/// The decision-rule threshold `gamma` in its exact tc form.
pub fn sgl_gamma(model: TreeModel, g: u32, p_g: f64) -> Result<f64> {
    let t = tc(p_g, model.level_size(g))?;
    Ok((t - 1.0).max(f64::MIN_POSITIVE).log2() / (model.branching() as f64).log2() / 2.0)
}

/// Approximate expected DFS runtime with multiple goal levels:
/// reciprocal of the summed exponential rates, one per level, each scaled by
/// that level's sibling-block size. Not conditioned on goal existence.
pub fn dfs_mgl(model: TreeModel, p: &GoalProbabilities) -> Result<RuntimeEstimate> {
    if p.depth() != model.depth() {
        return Err(Error::Invalid(format!(
            "probability vector depth {} != tree depth {}",
            p.depth(),
            model.depth()
        )));
    }
    p.require_goal_level()?;
    let mut rate = 0.0;
    for k in 0..=model.depth() {
        let pk = p.prob(k);
        if pk > 0.0 {
            rate += exp_rate(pk)? / model.sibling_block(k);
        }
    }
    Ok(RuntimeEstimate::point(1.0 / rate, false))
}

/// Exact expected BFS runtime with multiple goal levels, by conditioning on
/// the first goal level. Unconditioned includes the no-goal `N + 1` term;
/// conditioned drops it and renormalizes by `P(goal exists)`.
pub fn bfs_mgl(
    model: TreeModel,
    p: &GoalProbabilities,
    conditioned: bool,
) -> Result<RuntimeEstimate> {
    let weighted = bfs_mgl_goal_weighted(model, p)?;
    let sizes = model.level_sizes();
    let f = first_goal_level_probs(p, &sizes)?;
    let p_no_goal = f[f.len() - 1];
    let value = if conditioned {
        weighted / (1.0 - p_no_goal)
    } else {
        weighted + p_no_goal * (model.node_count() as f64 + 1.0)
    };
    Ok(RuntimeEstimate::point(value, conditioned))
}

/// The goal-bearing part of the BFS expectation:
/// `sum_{k<=D} P(F_k) * t_sgl(k, p_k | goal at k)`, with no no-goal term and no
/// renormalization. This is what the reference result tables report as the
/// conditioned BFS value in the multi-goal-level model.
pub fn bfs_mgl_goal_weighted(model: TreeModel, p: &GoalProbabilities) -> Result<f64> {
    if p.depth() != model.depth() {
        return Err(Error::Invalid(format!(
            "probability vector depth {} != tree depth {}",
            p.depth(),
            model.depth()
        )));
    }
    p.require_goal_level()?;
    let sizes = model.level_sizes();
    let f = first_goal_level_probs(p, &sizes)?;
    let mut total = 0.0;
    for k in 0..=model.depth() {
        let pk = p.prob(k);
        // p_k = 0 makes tc undefined, but then P(F_k) = 0 as well.
        if pk > 0.0 && f[k as usize] > 0.0 {
            total += f[k as usize] * (model.nodes_above(k) as f64 + tc(pk, sizes.size(k))?);
        }
    }
    Ok(total)
}

/// Winner prediction for the multi-goal-level tree: BFS iff its unconditioned
/// exact expectation does not exceed the DFS approximation.
pub fn mgl_decision(model: TreeModel, p: &GoalProbabilities) -> Result<Verdict> {
    let bfs = bfs_mgl(model, p, false)?.mean;
    let dfs = dfs_mgl(model, p)?.mean;
    Ok(if bfs <= dfs { Verdict::Bfs } else { Verdict::Dfs })
}
