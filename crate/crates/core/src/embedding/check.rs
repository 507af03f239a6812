//! Independent embedding checker.

use crate::graph::Digraph;
use crate::pattern::{CyclePattern, PathPattern};
use serde::Serialize;

#[derive(Clone, Copy, Debug)]
pub enum PatternRef<'a> {
    Cycle(&'a CyclePattern),
    Path(&'a PathPattern),
}

impl PatternRef<'_> {
    pub fn positions(&self) -> usize {
        match self {
            PatternRef::Cycle(c) => c.len(),
            PatternRef::Path(p) => p.vertices(),
        }
    }

    /// Pattern edges as `(tail position, head position)`.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        match self {
            PatternRef::Cycle(c) => {
                let n = c.len();
                (0..n).map(|i| if c.forward(i) { (i, (i + 1) % n) } else { ((i + 1) % n, i) }).collect()
            }
            PatternRef::Path(p) => {
                (0..p.vertices() - 1).map(|i| if p.forward(i) { (i, i + 1) } else { (i + 1, i) }).collect()
            }
        }
    }

    pub fn signs(&self) -> String {
        match self {
            PatternRef::Cycle(c) => c.to_signs(),
            PatternRef::Path(p) => p.to_signs(),
        }
    }
}

/// Position `i` of the pattern is mapped to `map[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub map: Vec<usize>,
    pub cycle: bool,
    pub pattern: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub valid: bool,
    pub problems: Vec<String>,
}

/// Checks a position map against the pattern and the host, knowing nothing
/// about how the map was produced.
pub fn check_embedding(g: &Digraph, pattern: PatternRef<'_>, map: &[usize], spanning: bool) -> CheckReport {
    let mut problems = Vec::new();
    let m = pattern.positions();
    if map.len() != m {
        problems.push(format!("map has {} entries for {m} positions", map.len()));
        return CheckReport { valid: false, problems };
    }
    let mut seen = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        if v >= g.n() {
            problems.push(format!("position {i} maps to vertex {v} outside 0..{}", g.n()));
        } else if seen[v] != usize::MAX {
            problems.push(format!("positions {} and {i} share vertex {v}", seen[v]));
        } else {
            seen[v] = i;
        }
    }
    if problems.is_empty() {
        for (a, b) in pattern.arcs() {
            if !g.has_edge(map[a], map[b]) {
                problems.push(format!("missing edge {} -> {} for positions {a} -> {b}", map[a], map[b]));
            }
        }
        if spanning && m != g.n() {
            problems.push(format!("embedding covers {m} of {} vertices", g.n()));
        }
    }
    CheckReport { valid: problems.is_empty(), problems }
}
