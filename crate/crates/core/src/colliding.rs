//! Runtime estimators for multiply connected (colliding-branch) search graphs.
//!
//! Everything is driven by the descendant counter `L(n, d)`: the number of
//! level-d nodes reachable from the first level-n node that DFS discovers.
//! DFS gets a (lower, mean, upper) bracket from the per-spine explorable sets;
//! BFS gets an exact expectation from the level sizes `L(0, .)`.

use crate::distributions::{first_goal_level_probs, tc, GoalProbabilities, LevelSizes};
use crate::error::{Error, Result};
use crate::estimate::RuntimeEstimate;

/// Dense matrix of `L(n, d)` for `0 <= n, d <= D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescendantCounter {
    depth: u32,
    counts: Vec<u64>,
}

impl DescendantCounter {
    pub fn new(depth: u32, counts: Vec<u64>) -> Result<Self> {
        if depth > 62 {
            return Err(Error::Capacity(format!("depth {depth} exceeds 62")));
        }
        let side = depth as usize + 1;
        if counts.len() != side * side {
            return Err(Error::Invalid(format!(
                "descendant counter has {} entries, expected {}",
                counts.len(),
                side * side
            )));
        }
        let dc = Self { depth, counts };
        for n in 0..=depth {
            if dc.get(n, n) < 1 {
                return Err(Error::Invalid(format!("L({n},{n}) must be >= 1")));
            }
            for d in 0..n {
                if dc.get(n, d) != 0 {
                    return Err(Error::Invalid(format!("L({n},{d}) must be 0 for d < n")));
                }
            }
        }
        for n in 0..depth {
            for d in n + 1..=depth {
                if dc.get(n, d) < dc.get(n + 1, d) {
                    return Err(Error::Invalid(format!(
                        "L({n},{d}) < L({},{d}): descendants of the deeper spine node \
                         must be a subset",
                        n + 1
                    )));
                }
            }
        }
        Ok(dc)
    }

    /// Build from a closed form `f(n, d)` defined on `n <= d`.
    pub fn from_fn(depth: u32, f: impl Fn(u32, u32) -> Result<u64>) -> Result<Self> {
        let side = depth as usize + 1;
        let mut counts = vec![0u64; side * side];
        for n in 0..=depth {
            for d in n..=depth {
                counts[n as usize * side + d as usize] = f(n, d)?;
            }
        }
        Self::new(depth, counts)
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn get(&self, n: u32, d: u32) -> u64 {
        self.counts[n as usize * (self.depth as usize + 1) + d as usize]
    }

    /// `A_{n,d} = L(n, d) - L(n+1, d)`, with `L(D+1, .) = 0`.
    pub fn explorables(&self, n: u32, d: u32) -> u64 {
        let next = if n < self.depth { self.get(n + 1, d) } else { 0 };
        self.get(n, d) - next
    }

    /// Level sizes seen from the root: `L(0, k)` for `k = 0..=D`.
    pub fn level_sizes(&self) -> LevelSizes {
        LevelSizes::new((0..=self.depth).map(|d| self.get(0, d)).collect())
            .expect("non-empty by construction")
    }
}

/// Cardinalities of the spine subgraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphSizes {
    /// `|S_n|` for `n in -1..=D+1`; index with [`Self::s`].
    s: Vec<u64>,
    /// `|T_n|` for `n in 0..=D`.
    t: Vec<u64>,
    /// `U_k`, nodes strictly above level k, for `k in 0..=D+1`.
    u: Vec<u64>,
    depth: u32,
}

impl SubgraphSizes {
    pub fn s(&self, n: i64) -> u64 {
        self.s[(n + 1) as usize]
    }

    pub fn t(&self, n: u32) -> u64 {
        self.t[n as usize]
    }

    pub fn u(&self, k: u32) -> u64 {
        self.u[k as usize]
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }
}

/// `|S_n| = sum_i L(n, i)`, `|T_n| = |S_n| - |S_{n+1}|`, `U_k = sum_{i<k} L(0, i)`.
pub fn subgraph_sizes(counter: &DescendantCounter) -> SubgraphSizes {
    let depth = counter.depth();
    let mut s = vec![0u64; depth as usize + 3]; // index n + 1, n in -1..=D+1
    for n in 0..=depth {
        s[n as usize + 1] = (n..=depth).map(|i| counter.get(n, i)).sum();
    }
    s[depth as usize + 2] = 0;
    s[0] = s[1] + 1;
    let t = (0..=depth).map(|n| s[n as usize + 1] - s[n as usize + 2]).collect();
    let mut u = vec![0u64; depth as usize + 2];
    for k in 1..=depth as usize + 1 {
        u[k] = u[k - 1] + counter.get(0, (k - 1) as u32);
    }
    SubgraphSizes { s, t, u, depth }
}

/// Goal probabilities of the explorable sets: `tau[n]` is the probability that
/// `T_n` holds a goal, `phi[n + 1]` the probability that it holds the *first*
/// goal, with `phi[0]` the no-goal probability `phi_{-1} = 1 - sum phi_n`.
pub fn explorable_goal_probs(
    counter: &DescendantCounter,
    p: &GoalProbabilities,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let depth = counter.depth();
    if p.depth() != depth {
        return Err(Error::Invalid(format!(
            "probability vector depth {} != counter depth {depth}",
            p.depth()
        )));
    }
    let mut tau = vec![0.0; depth as usize + 1];
    for n in 0..=depth {
        let mut log_miss = 0.0;
        let mut certain = false;
        for k in n..=depth {
            let a = counter.explorables(n, k);
            let pk = p.prob(k);
            if a > 0 && pk > 0.0 {
                if pk >= 1.0 {
                    certain = true;
                    break;
                }
                log_miss += a as f64 * (-pk).ln_1p();
            }
        }
        tau[n as usize] = if certain { 1.0 } else { -log_miss.exp_m1() };
    }
    let mut phi = vec![0.0; depth as usize + 2];
    let mut later_miss = 1.0;
    for n in (0..=depth as usize).rev() {
        phi[n + 1] = tau[n] * later_miss;
        later_miss *= 1.0 - tau[n];
    }
    // phi_{-1} by definition, not as the product of (1 - tau_n).
    phi[0] = (1.0 - phi[1..].iter().sum::<f64>()).max(0.0);
    Ok((tau, phi))
}

/// Bracketed expected DFS runtime: `sum |S_{n+1}| phi_n <= E <= sum |S_n| phi_n`
/// over `n = -1..=D`, mean the arithmetic average. Assumes DFS reaches the
/// deepest spine node before any goal with high probability (true for the
/// grammar families this is built for).
pub fn dfs_cb(
    p: &GoalProbabilities,
    counter: &DescendantCounter,
    conditioned: bool,
) -> Result<RuntimeEstimate> {
    p.require_goal_level()?;
    let depth = counter.depth();
    let sizes = subgraph_sizes(counter);
    let (_, phi) = explorable_goal_probs(counter, p)?;
    let mut lower = 0.0;
    let mut upper = 0.0;
    for n in 0..=depth as i64 {
        let w = phi[(n + 1) as usize];
        lower += sizes.s(n + 1) as f64 * w;
        upper += sizes.s(n) as f64 * w;
    }
    if conditioned {
        let p_goal = 1.0 - phi[0];
        if p_goal <= 0.0 {
            return Err(Error::NoGoalLevel);
        }
        lower /= p_goal;
        upper /= p_goal;
    } else {
        // No-goal case: the whole graph plus the halt probe, bracketed by
        // |S_0| and |S_{-1}| = |S_0| + 1.
        lower += sizes.s(0) as f64 * phi[0];
        upper += sizes.s(-1) as f64 * phi[0];
    }
    Ok(RuntimeEstimate::bracket(lower, (lower + upper) / 2.0, upper, conditioned))
}

/// Exact expected BFS runtime with a single goal level g: the upper subgraph
/// `U_g`, then `tc(p_g, L(0, g))` probes across level g.
pub fn bfs_cb_sgl(
    g: u32,
    p_g: f64,
    counter: &DescendantCounter,
    conditioned: bool,
) -> Result<RuntimeEstimate> {
    if g > counter.depth() {
        return Err(Error::Domain(format!("goal level {g} exceeds depth {}", counter.depth())));
    }
    if p_g <= 0.0 {
        return Err(Error::NoGoalLevel);
    }
    let m = counter.get(0, g);
    if m < 1 {
        return Err(Error::Domain(format!("L(0,{g}) = 0: no nodes on the goal level")));
    }
    let sizes = subgraph_sizes(counter);
    let cond = sizes.u(g) as f64 + tc(p_g, m)?;
    let value = if conditioned {
        cond
    } else {
        let p_goal = crate::distributions::level_goal_prob(p_g, m)?;
        let total = sizes.u(counter.depth() + 1) as f64;
        p_goal * cond + (1.0 - p_goal) * (total + 1.0)
    };
    Ok(RuntimeEstimate::point(value, conditioned))
}

/// Exact expected BFS runtime over a goal probability vector, by conditioning
/// on the first goal level; level sizes come from `L(0, .)`.
pub fn bfs_cb(
    p: &GoalProbabilities,
    counter: &DescendantCounter,
    conditioned: bool,
) -> Result<RuntimeEstimate> {
    p.require_goal_level()?;
    let sizes = counter.level_sizes();
    let f = first_goal_level_probs(p, &sizes)?;
    let sub = subgraph_sizes(counter);
    let mut total = 0.0;
    for k in 0..=counter.depth() {
        let pk = p.prob(k);
        if pk > 0.0 && f[k as usize] > 0.0 {
            total += f[k as usize] * (sub.u(k) as f64 + tc(pk, sizes.size(k))?);
        }
    }
    let p_no_goal = f[f.len() - 1];
    let value = if conditioned {
        total / (1.0 - p_no_goal)
    } else {
        total + p_no_goal * (sizes.total() as f64 + 1.0)
    };
    Ok(RuntimeEstimate::point(value, conditioned))
}
