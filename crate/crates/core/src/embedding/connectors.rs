//! Disjoint connector edges between two vertex classes.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Digraph;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Edges `X → Y`.
    Forward,
    /// Edges `Y → X`.
    Backward,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConnectorSelection {
    /// Selected edges as `(tail, head)`.
    pub edges: Vec<(usize, usize)>,
    /// Edges available in the requested direction, ignoring `excluded`.
    pub pool: usize,
}

impl ConnectorSelection {
    /// Whether the pool reaches the density `e⁺ ≥ n/ρ` the greedy argument assumes.
    pub fn meets_density(&self, n: usize, rho: f64) -> bool {
        self.pool as f64 >= n as f64 / rho
    }
}

/// Greedily picks `count` pairwise disjoint edges between `X` and `Y`.
///
/// The tail is the available vertex with the most available out-neighbours
/// on the other side, the head the available out-neighbour of that tail with
/// the most available in-neighbours; ties go to the smaller index.
pub fn select_connectors(
    g: &Digraph,
    x: &VertexSet,
    y: &VertexSet,
    count: usize,
    direction: Direction,
    excluded: &VertexSet,
) -> Result<ConnectorSelection> {
    if !x.is_disjoint(y) {
        return Err(Error::Input("connector classes must be disjoint".into()));
    }
    let (from, to) = match direction {
        Direction::Forward => (x, y),
        Direction::Backward => (y, x),
    };
    let pool = g.e_plus(from, to);
    if pool == 0 {
        return Err(Error::Precondition("no edge in the requested direction".into()));
    }
    let mut tails = from.difference(excluded);
    let mut heads = to.difference(excluded);
    let mut edges = Vec::with_capacity(count);
    while edges.len() < count {
        let mut best: Option<(usize, usize)> = None;
        for u in tails.iter() {
            let d = g.out_set(u).intersection_len(&heads);
            if d > 0 && best.map_or(true, |(_, bd)| d > bd) {
                best = Some((u, d));
            }
        }
        let Some((u, _)) = best else {
            return Err(Error::Resource(format!(
                "connector pool exhausted: found {} of {count} disjoint edges",
                edges.len()
            )));
        };
        let mut hb: Option<(usize, usize)> = None;
        for v in g.out_set(u).intersection(&heads).iter() {
            let d = g.in_set(v).intersection_len(&tails);
            if hb.map_or(true, |(_, bd)| d > bd) {
                hb = Some((v, d));
            }
        }
        let v = hb.unwrap().0;
        tails.remove(u);
        heads.remove(v);
        edges.push((u, v));
    }
    Ok(ConnectorSelection { edges, pool })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_bipartite() {
        let g = Digraph::from_fn(20, |u, v| u < 10 && v >= 10);
        let x = VertexSet::from_iter(20, 0..10);
        let y = VertexSet::from_iter(20, 10..20);
        let s = select_connectors(&g, &x, &y, 5, Direction::Forward, &VertexSet::empty(20)).unwrap();
        assert_eq!(s.edges.len(), 5);
        assert_eq!(s.edges[0], (0, 10));
        let e = select_connectors(&g, &x, &y, 1, Direction::Backward, &VertexSet::empty(20));
        assert!(matches!(e, Err(Error::Precondition(_))));
        let e = select_connectors(&g, &x, &y, 11, Direction::Forward, &VertexSet::empty(20));
        assert!(matches!(e, Err(Error::Resource(_))));
    }
}
