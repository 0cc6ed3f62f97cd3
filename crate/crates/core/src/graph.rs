//! Leveled search graphs with deterministic, ordered adjacency.

use crate::error::{Error, Result};

/// A directed edge to `target`, annotated with the id of the production rule
/// (or child slot, for trees) that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub target: u32,
    pub rule: u8,
}

/// Leveled directed graph with ordered child lists. Child order is the
/// deterministic rule-application order fixed by the builder, which is what
/// pins down the DFS trace the analysis assumes.
#[derive(Debug, Clone)]
pub struct SearchGraph {
    labels: Vec<String>,
    levels: Vec<u32>,
    goal_eligible: Vec<bool>,
    children: Vec<Vec<Edge>>,
    root: u32,
    depth: u32,
}

impl SearchGraph {
    pub fn new(
        labels: Vec<String>,
        levels: Vec<u32>,
        goal_eligible: Vec<bool>,
        children: Vec<Vec<Edge>>,
        root: u32,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 || levels.len() != n || goal_eligible.len() != n || children.len() != n {
            return Err(Error::Invalid("graph arrays empty or of mismatched length".into()));
        }
        if root as usize >= n {
            return Err(Error::Invalid("root index out of range".into()));
        }
        for (u, edges) in children.iter().enumerate() {
            for e in edges {
                if e.target as usize >= n {
                    return Err(Error::Invalid(format!("edge {u} -> {} out of range", e.target)));
                }
                if levels[e.target as usize] > levels[u] + 1 {
                    return Err(Error::Invalid(format!(
                        "edge {u} -> {} skips levels",
                        e.target
                    )));
                }
            }
        }
        let depth = levels.iter().copied().max().unwrap_or(0);
        Ok(Self { labels, levels, goal_eligible, children, root, depth })
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    /// Maximum node level.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    pub fn level(&self, v: u32) -> u32 {
        self.levels[v as usize]
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn is_goal_eligible(&self, v: u32) -> bool {
        self.goal_eligible[v as usize]
    }

    pub fn children(&self, v: u32) -> &[Edge] {
        &self.children[v as usize]
    }

    pub fn out_degree(&self, v: u32) -> usize {
        self.children[v as usize].len()
    }

    /// Node count per level, `0..=depth`.
    pub fn level_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.depth as usize + 1];
        for &l in &self.levels {
            sizes[l as usize] += 1;
        }
        sizes
    }

    /// Indices of goal-eligible nodes on `level`, in index order.
    pub fn eligible_on_level(&self, level: u32) -> Vec<u32> {
        (0..self.node_count() as u32)
            .filter(|&v| self.levels[v as usize] == level && self.goal_eligible[v as usize])
            .collect()
    }

    /// Line-oriented text export: one node per line
    /// `index<TAB>string<TAB>level<TAB>goal_eligible`, then one edge per line
    /// `parent<TAB>child<TAB>rule_id`.
    pub fn export<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        for v in 0..self.node_count() {
            writeln!(
                w,
                "{}\t{}\t{}\t{}",
                v, self.labels[v], self.levels[v], self.goal_eligible[v]
            )?;
        }
        for (u, edges) in self.children.iter().enumerate() {
            for e in edges {
                writeln!(w, "{}\t{}\t{}", u, e.target, e.rule)?;
            }
        }
        Ok(())
    }
}
