//! Shared result types for the analytical estimators.

/// Search method under analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Bfs,
    Dfs,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Bfs => "bfs",
            Method::Dfs => "dfs",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bfs" => Ok(Method::Bfs),
            "dfs" => Ok(Method::Dfs),
            other => Err(format!("unknown method '{other}' (expected bfs or dfs)")),
        }
    }
}

/// Recommendation of the single-goal-level decision rule. `Band` is the
/// half-level strip where neither inequality of the rule applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Bfs,
    Dfs,
    Band,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Bfs => "BFS",
            Verdict::Dfs => "DFS",
            Verdict::Band => "band",
        }
    }
}

/// Expected-runtime estimate: a point value or a (lower, mean, upper) bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuntimeEstimate {
    pub lower: f64,
    pub mean: f64,
    pub upper: f64,
    /// True when the estimate is conditioned on at least one goal existing.
    pub conditioned_on_goal: bool,
}

impl RuntimeEstimate {
    pub fn point(value: f64, conditioned_on_goal: bool) -> Self {
        Self { lower: value, mean: value, upper: value, conditioned_on_goal }
    }

    pub fn bracket(lower: f64, mean: f64, upper: f64, conditioned_on_goal: bool) -> Self {
        debug_assert!(lower <= mean + 1e-9 && mean <= upper + 1e-9);
        Self { lower, mean, upper, conditioned_on_goal }
    }

    pub fn is_point(&self) -> bool {
        self.lower == self.mean && self.mean == self.upper
    }
}
