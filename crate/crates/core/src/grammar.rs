//! The binary, full, and random grammar problems: closed-form descendant
//! counters and explicit search-graph builders.
//!
//! Rule alphabet is {S, a, b}. Rule ids are global and fixed:
//! 0 `S->e` (erase; `e->a`/`e->b` for the binary grammar), 1 `S->Sa`,
//! 2 `S->Sb`, 3 `S->aS`, 4 `S->bS`, 5 `Sa->aS`, 6 `Sb->bS`, 7 `aS->Sa`,
//! 8 `bS->Sb`. Child lists follow this order, which pins the DFS spine
//! (`a^n` for the binary grammar, `Sa^n` for the S-bearing grammars).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, SearchGraph};

pub const ADDING_RULES: [&str; 4] = ["S->Sa", "S->Sb", "S->aS", "S->bS"];
pub const MOVING_RULES: [&str; 4] = ["Sa->aS", "Sb->bS", "aS->Sa", "bS->Sb"];

/// Production-rule subset of the random grammar: `S->e` always, plus chosen
/// adding and moving rules (bitmasks over the canonical rule order).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrammarRules {
    adding: u8,
    moving: u8,
}

impl GrammarRules {
    pub fn new(adding: u8, moving: u8) -> Result<Self> {
        if adding > 0b1111 || moving > 0b1111 {
            return Err(Error::Invalid("rule bitmasks use only the low 4 bits".into()));
        }
        Ok(Self { adding, moving })
    }

    /// All four adding and all four moving rules: the full grammar.
    pub fn full() -> Self {
        Self { adding: 0b1111, moving: 0b1111 }
    }

    /// Only `S->e`.
    pub fn erase_only() -> Self {
        Self { adding: 0, moving: 0 }
    }

    pub fn has_adding(&self, i: usize) -> bool {
        self.adding & (1 << i) != 0
    }

    pub fn has_moving(&self, i: usize) -> bool {
        self.moving & (1 << i) != 0
    }

    /// Total rule count including the always-present erase rule.
    pub fn count(&self) -> u32 {
        1 + self.adding.count_ones() + self.moving.count_ones()
    }

    /// Build from a bitmask over the 8 optional rules, bit i selecting
    /// `ADDING_RULES[i]` for i < 4 and `MOVING_RULES[i - 4]` otherwise.
    pub fn from_mask(mask: u8) -> Self {
        Self { adding: mask & 0b1111, moving: (mask >> 4) & 0b1111 }
    }

    /// Parse a comma-separated rule list such as `"S->Sa,aS->Sa"`.
    /// `S->e` may be listed but is implied.
    pub fn parse(s: &str) -> Result<Self> {
        let mut adding = 0u8;
        let mut moving = 0u8;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "S->e" || part == "S->" {
                continue;
            }
            if let Some(i) = ADDING_RULES.iter().position(|&r| r == part) {
                adding |= 1 << i;
            } else if let Some(i) = MOVING_RULES.iter().position(|&r| r == part) {
                moving |= 1 << i;
            } else {
                return Err(Error::Invalid(format!("unknown production rule '{part}'")));
            }
        }
        Ok(Self { adding, moving })
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut out = vec!["S->e"];
        for i in 0..4 {
            if self.has_adding(i) {
                out.push(ADDING_RULES[i]);
            }
        }
        for i in 0..4 {
            if self.has_moving(i) {
                out.push(MOVING_RULES[i]);
            }
        }
        out
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Binary-grammar descendant counter: level-d nodes reachable from `a^n`,
/// `L_BG(n, d) = sum_{i=0}^{d-n} C(d, i)`.
pub fn lbg(n: u32, d: u32) -> Result<u64> {
    if n > d || d > 62 {
        return Err(Error::Domain(format!("lbg({n},{d}): need 0 <= n <= d <= 62")));
    }
    Ok((0..=(d - n) as u64).map(|i| binomial(d as u64, i)).sum())
}

/// Per-level explorable count of the binary grammar: `A_{n,d} = C(d, d-n)`.
pub fn lbg_explorables(n: u32, d: u32) -> Result<u64> {
    if n > d || d > 62 {
        return Err(Error::Domain(format!("lbg_explorables({n},{d})")));
    }
    Ok(binomial(d as u64, (d - n) as u64))
}

/// Full-grammar descendant counter via the cluster reduction:
/// `L_FG(n, d) = (d + 2) L_BG(n, d)`.
pub fn lfg(n: u32, d: u32) -> Result<u64> {
    (d as u64 + 2)
        .checked_mul(lbg(n, d)?)
        .ok_or_else(|| Error::Capacity(format!("lfg({n},{d}) overflows 64 bits")))
}

// Compact node key for strings over {a, b} with at most one S:
// letter bits (LSB = leftmost letter, 1 = 'b'), letter count, and the S
// position (index of the letter the S precedes; len = S at the end;
// NO_S = no S).
const NO_S: u32 = u32::MAX;

fn word_insert(bits: u32, pos: u32, is_b: bool) -> u32 {
    let low = bits & ((1 << pos) - 1);
    let high = bits >> pos;
    low | ((is_b as u32) << pos) | (high << (pos + 1))
}

fn word_char_is_b(bits: u32, pos: u32) -> bool {
    bits & (1 << pos) != 0
}

fn render(bits: u32, len: u32, spos: u32) -> String {
    let mut s = String::with_capacity(len as usize + 1);
    for i in 0..=len {
        if i == spos {
            s.push('S');
        }
        if i < len {
            s.push(if word_char_is_b(bits, i) { 'b' } else { 'a' });
        }
    }
    s
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct NodeKey {
    bits: u32,
    len: u32,
    spos: u32,
}

struct GraphBuilder {
    index: HashMap<u64, u32>,
    keys: Vec<NodeKey>,
    children: Vec<Vec<Edge>>,
}

impl GraphBuilder {
    fn new() -> Self {
        Self { index: HashMap::new(), keys: Vec::new(), children: Vec::new() }
    }

    fn intern(&mut self, key: NodeKey) -> u32 {
        let packed = (key.bits as u64)
            | ((key.len as u64) << 32)
            | (((key.spos.wrapping_add(1)) as u64) << 38);
        *self.index.entry(packed).or_insert_with(|| {
            self.keys.push(key);
            self.children.push(Vec::new());
            (self.keys.len() - 1) as u32
        })
    }

    fn finish(self, eligible: impl Fn(&NodeKey) -> bool) -> Result<SearchGraph> {
        let labels = self.keys.iter().map(|k| render(k.bits, k.len, k.spos)).collect();
        let levels = self.keys.iter().map(|k| k.len).collect();
        let goal = self.keys.iter().map(eligible).collect();
        SearchGraph::new(labels, levels, goal, self.children, 0)
    }
}

/// Binary grammar: all strings over {a, b} of length at most D, rooted at the
/// empty string. Children insert 'a' at every position left to right, then
/// 'b', duplicates dropped on first occurrence. Every node is goal-eligible.
pub fn build_binary_grammar(depth: u32) -> Result<SearchGraph> {
    if depth > 20 {
        return Err(Error::Capacity(format!("binary grammar depth {depth} exceeds 20")));
    }
    let mut b = GraphBuilder::new();
    let root = b.intern(NodeKey { bits: 0, len: 0, spos: NO_S });
    let mut frontier = vec![root];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &v in &frontier {
            let NodeKey { bits, len, .. } = b.keys[v as usize];
            let mut seen: Vec<u32> = Vec::with_capacity(len as usize + 2);
            for (rule, is_b) in [(0u8, false), (1u8, true)] {
                for pos in 0..=len {
                    let child_bits = word_insert(bits, pos, is_b);
                    if seen.contains(&child_bits) {
                        continue;
                    }
                    seen.push(child_bits);
                    let fresh = !b.index.contains_key(
                        &((child_bits as u64) | (((len + 1) as u64) << 32)),
                    );
                    let c = b.intern(NodeKey { bits: child_bits, len: len + 1, spos: NO_S });
                    if fresh {
                        next.push(c);
                    }
                    b.children[v as usize].push(Edge { target: c, rule });
                }
            }
        }
        frontier = next;
    }
    b.finish(|_| true)
}

fn build_s_grammar(
    rules: GrammarRules,
    depth: u32,
    all_eligible: bool,
) -> Result<SearchGraph> {
    if depth > 15 {
        return Err(Error::Capacity(format!("grammar depth {depth} exceeds 15")));
    }
    let mut b = GraphBuilder::new();
    let root = b.intern(NodeKey { bits: 0, len: 0, spos: 0 });
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let NodeKey { bits, len, spos } = b.keys[v as usize];
        if spos == NO_S {
            continue; // S-less strings have no applicable rules
        }
        let mut out: Vec<(NodeKey, u8)> = Vec::with_capacity(9);
        // S->e first: the S-less child is always checked first.
        out.push((NodeKey { bits, len, spos: NO_S }, 0));
        if len < depth {
            for i in 0..4usize {
                if rules.has_adding(i) {
                    let is_b = i == 1 || i == 3; // S->Sb, S->bS
                    let after = i >= 2; // S->aS, S->bS put the letter before S
                    out.push((
                        NodeKey {
                            bits: word_insert(bits, spos, is_b),
                            len: len + 1,
                            spos: spos + after as u32,
                        },
                        1 + i as u8,
                    ));
                }
            }
        }
        for i in 0..4usize {
            if rules.has_moving(i) {
                let (applies, new_spos) = match i {
                    // Sa->aS, Sb->bS: S moves right over a matching letter.
                    0 | 1 => (
                        spos < len && word_char_is_b(bits, spos) == (i == 1),
                        spos + 1,
                    ),
                    // aS->Sa, bS->Sb: S moves left over a matching letter.
                    _ => (
                        spos > 0 && word_char_is_b(bits, spos - 1) == (i == 3),
                        spos.wrapping_sub(1),
                    ),
                };
                if applies {
                    out.push((NodeKey { bits, len, spos: new_spos }, 5 + i as u8));
                }
            }
        }
        for (key, rule) in out {
            let packed = (key.bits as u64)
                | ((key.len as u64) << 32)
                | (((key.spos.wrapping_add(1)) as u64) << 38);
            let fresh = !b.index.contains_key(&packed);
            let c = b.intern(key);
            if fresh && key.spos != NO_S {
                queue.push_back(c);
            }
            if !b.children[v as usize].iter().any(|e| e.target == c) {
                b.children[v as usize].push(Edge { target: c, rule });
            }
        }
    }
    b.finish(|k| all_eligible || k.spos == NO_S)
}

/// Full grammar: all four adding and moving rules plus `S->e`, rooted at "S".
/// Levels count letters only (S-less strings sit one level up), matching the
/// cluster reduction; every node is goal-eligible, as the analytical model
/// seeds goals on whole levels.
pub fn build_full_grammar(depth: u32) -> Result<SearchGraph> {
    build_s_grammar(GrammarRules::full(), depth, true)
}

/// Random grammar: reachable closure from "S" under the given rule subset,
/// truncated at `depth`. Only S-less strings are goal-eligible (and they are
/// child-less).
pub fn build_random_grammar(rules: GrammarRules, depth: u32) -> Result<SearchGraph> {
    build_s_grammar(rules, depth, false)
}

/// Structural features of a built grammar graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureVector {
    pub mean_branching: f64,
    pub std_branching: f64,
    pub num_rules: u32,
    pub max_depth: u32,
}

/// Mean and population standard deviation of out-degree over all nodes, the
/// rule count (including `S->e`), and the graph depth.
pub fn graph_features(g: &SearchGraph, rules: &GrammarRules) -> FeatureVector {
    let n = g.node_count() as f64;
    let mean = (0..g.node_count() as u32).map(|v| g.out_degree(v) as f64).sum::<f64>() / n;
    let var = (0..g.node_count() as u32)
        .map(|v| {
            let d = g.out_degree(v) as f64 - mean;
            d * d
        })
        .sum::<f64>()
        / n;
    FeatureVector {
        mean_branching: mean,
        std_branching: var.sqrt(),
        num_rules: rules.count(),
        max_depth: g.depth(),
    }
}
