//! Edge-list text format.
//!
//! ```text
//! # optional comment lines
//! n m
//! u v
//! ...
//! ```
//! Each `u v` line is the edge `u → v`. Text after `#` on any line is ignored.

use crate::error::{Error, Result};
use crate::graph::Digraph;
use std::fmt::Write as _;
use std::path::Path;

pub fn parse_edge_list(text: &str) -> Result<Digraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::Input("empty edge list".into()))?;
    let nums = parse_pair(header, hl)?;
    let (n, m) = nums;
    let mut edges = Vec::with_capacity(m);
    for (ln, l) in lines {
        edges.push(parse_pair(l, ln)?);
    }
    if edges.len() != m {
        return Err(Error::Input(format!("header declares {m} edges but {} were listed", edges.len())));
    }
    Digraph::from_edge_list(n, &edges)
}

fn parse_pair(line: &str, ln: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next().and_then(|s| s.parse().ok());
    let b = it.next().and_then(|s| s.parse().ok());
    match (a, b, it.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(Error::Input(format!("line {ln}: expected two non-negative integers, got {line:?}"))),
    }
}

/// Serializes `g`; every line of `header` becomes a `#` comment.
pub fn write_edge_list(g: &Digraph, header: Option<&str>) -> String {
    let mut s = String::new();
    if let Some(h) = header {
        for l in h.lines() {
            let _ = writeln!(s, "# {l}");
        }
    }
    let _ = writeln!(s, "{} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn read_edge_list_file(path: &Path) -> Result<Digraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_edge_list(&text)
}
