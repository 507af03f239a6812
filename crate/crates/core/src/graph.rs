//! Immutable digraphs with bitset adjacency.
//!
//! Vertices are dense indices `0..n`. Every digraph is loopless and has at
//! most one edge per ordered pair, so a pair of vertices carries zero, one or
//! two (a double edge) edges.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BinaryHeap;
use std::cmp::Reverse;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 4096;

#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_adj: Vec<VertexSet>,
    in_adj: Vec<VertexSet>,
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, m={})", self.n, self.edge_count())
    }
}

/// Per-vertex degrees together with `δ(G)` and `δ⁰(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    /// `(d⁺(v), d⁻(v), d(v))` for each vertex.
    pub per_vertex: Vec<(usize, usize, usize)>,
    pub min_degree: usize,
    pub min_semi_degree: usize,
}

/// Edge counts between two (not necessarily disjoint) vertex sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCounts {
    /// `e⁺(A,B)`: edges with tail in A and head in B.
    pub forward: usize,
    /// `e⁻(A,B) = e⁺(B,A)`.
    pub backward: usize,
    pub total: usize,
}

impl Digraph {
    /// Digraph with no edges.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "n={n} exceeds the vertex cap {MAX_VERTICES}");
        Digraph {
            n,
            out_adj: vec![VertexSet::empty(n); n],
            in_adj: vec![VertexSet::empty(n); n],
        }
    }

    /// Builds a digraph from ordered pairs; duplicates collapse.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capability(format!("n={n} exceeds the vertex cap {MAX_VERTICES}")));
        }
        let mut g = Digraph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!("edge ({u}, {v}) has a vertex outside 0..{n}")));
            }
            if u == v {
                return Err(Error::Input(format!("edge ({u}, {v}) is a loop")));
            }
            g.out_adj[u].insert(v);
            g.in_adj[v].insert(u);
        }
        Ok(g)
    }

    /// Builds a digraph by asking `f(u, v)` for every ordered pair `u != v`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Digraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v && f(u, v) {
                    g.out_adj[u].insert(v);
                    g.in_adj[v].insert(u);
                }
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].contains(v)
    }

    /// `N⁺(v)`.
    #[inline]
    pub fn out_set(&self, v: usize) -> &VertexSet {
        &self.out_adj[v]
    }

    /// `N⁻(v)`.
    #[inline]
    pub fn in_set(&self, v: usize) -> &VertexSet {
        &self.in_adj[v]
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    /// `d_G(v, S) = d⁺(v,S) + d⁻(v,S)`.
    #[inline]
    pub fn degree_into(&self, v: usize, s: &VertexSet) -> usize {
        self.out_adj[v].intersection_len(s) + self.in_adj[v].intersection_len(s)
    }

    pub fn edge_count(&self) -> usize {
        self.out_adj.iter().map(|s| s.len()).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out_adj[u].iter().map(move |v| (u, v)))
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let per_vertex: Vec<_> = (0..self.n)
            .map(|v| {
                let (o, i) = (self.out_degree(v), self.in_degree(v));
                (o, i, o + i)
            })
            .collect();
        let min_degree = per_vertex.iter().map(|t| t.2).min().unwrap_or(0);
        let min_semi_degree = per_vertex.iter().map(|t| t.0.min(t.1)).min().unwrap_or(0);
        DegreeProfile { per_vertex, min_degree, min_semi_degree }
    }

    /// `δ(G)`; zero for the empty vertex set.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// `δ⁰(G)`.
    pub fn min_semi_degree(&self) -> usize {
        (0..self.n).map(|v| self.out_degree(v).min(self.in_degree(v))).min().unwrap_or(0)
    }

    /// `δ(G[S])` computed inside the host, without building the subgraph.
    pub fn min_degree_within(&self, s: &VertexSet) -> usize {
        s.iter().map(|v| self.degree_into(v, s)).min().unwrap_or(0)
    }

    /// `δ⁰(G[S])`.
    pub fn min_semi_degree_within(&self, s: &VertexSet) -> usize {
        s.iter()
            .map(|v| self.out_adj[v].intersection_len(s).min(self.in_adj[v].intersection_len(s)))
            .min()
            .unwrap_or(0)
    }

    /// `(e⁺(A,B), e⁻(A,B), e(A,B))`.
    pub fn cross_counts(&self, a: &VertexSet, b: &VertexSet) -> CrossCounts {
        let forward: usize = a.iter().map(|u| self.out_adj[u].intersection_len(b)).sum();
        let backward: usize = b.iter().map(|u| self.out_adj[u].intersection_len(a)).sum();
        CrossCounts { forward, backward, total: forward + backward }
    }

    /// `e⁺(A,B)`.
    pub fn e_plus(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter().map(|u| self.out_adj[u].intersection_len(b)).sum()
    }

    /// Induced subdigraph on `s`; also returns the local-to-host vertex map.
    pub fn induced(&self, s: &VertexSet) -> (Digraph, Vec<usize>) {
        let map: Vec<usize> = s.iter().collect();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let m = map.len();
        let mut g = Digraph::empty(m);
        for (i, &v) in map.iter().enumerate() {
            for w in self.out_adj[v].iter() {
                let j = local[w];
                if j != usize::MAX {
                    g.out_adj[i].insert(j);
                    g.in_adj[j].insert(i);
                }
            }
        }
        (g, map)
    }

    /// The digraph with every edge reversed.
    pub fn reversed(&self) -> Digraph {
        Digraph { n: self.n, out_adj: self.in_adj.clone(), in_adj: self.out_adj.clone() }
    }

    /// Strongly connected components in a topological order of the
    /// condensation; among components that are simultaneously available the
    /// one containing the smallest vertex comes first.
    pub fn strongly_connected_components(&self) -> Vec<VertexSet> {
        let comp = self.scc_labels();
        let k = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut sets = vec![VertexSet::empty(self.n); k];
        for v in 0..self.n {
            sets[comp[v]].insert(v);
        }
        // condensation edges
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut indeg = vec![0usize; k];
        let mut seen = vec![VertexSet::empty(k.max(1)); k];
        for (u, v) in self.edges() {
            let (a, b) = (comp[u], comp[v]);
            if a != b && !seen[a].contains(b) {
                seen[a].insert(b);
                succ[a].push(b);
                indeg[b] += 1;
            }
        }
        let min_vertex: Vec<usize> = sets.iter().map(|s| s.first().unwrap()).collect();
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..k)
            .filter(|&c| indeg[c] == 0)
            .map(|c| Reverse((min_vertex[c], c)))
            .collect();
        let mut order = Vec::with_capacity(k);
        while let Some(Reverse((_, c))) = heap.pop() {
            order.push(c);
            for &d in &succ[c] {
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    heap.push(Reverse((min_vertex[d], d)));
                }
            }
        }
        order.into_iter().map(|c| sets[c].clone()).collect()
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.n <= 1 || self.strongly_connected_components().len() == 1
    }

    /// Component label per vertex (iterative Tarjan; labels are arbitrary).
    fn scc_labels(&self) -> Vec<usize> {
        let n = self.n;
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut comp = vec![usize::MAX; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut next_index = 0;
        let mut next_comp = 0;
        let succ: Vec<Vec<usize>> = (0..n).map(|v| self.out_adj[v].to_vec()).collect();
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut i)) = call.last_mut() {
                if *i < succ[v].len() {
                    let w = succ[v][*i];
                    *i += 1;
                    if index[w] == usize::MAX {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(p, _)) = call.last() {
                        low[p] = low[p].min(low[v]);
                    }
                    if low[v] == index[v] {
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp[w] = next_comp;
                            if w == v {
                                break;
                            }
                        }
                        next_comp += 1;
                    }
                }
            }
        }
        comp
    }

    /// The undirected graph `G*` of double edges.
    pub fn double_edge_graph(&self) -> UndirectedGraph {
        let adj = (0..self.n).map(|v| self.out_adj[v].intersection(&self.in_adj[v])).collect();
        UndirectedGraph { n: self.n, adj }
    }
}

/// Simple undirected graph with bitset adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl UndirectedGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| self.adj[u].iter().all(|v| self.adj[v].contains(u)))
    }

    /// The complete digraph's worth of double edges on this graph's edges.
    pub fn to_digraph(&self) -> Digraph {
        Digraph::from_fn(self.n, |u, v| self.adj[u].contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_blowup_tt, gen_complete_digraph};

    fn directed_cycle(n: usize) -> Digraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Digraph::from_edge_list(n, &edges).unwrap()
    }

    fn two_cliques(a: usize, b: usize) -> Digraph {
        Digraph::from_fn(a + b, |u, v| (u < a) == (v < a))
    }

    #[test]
    fn smallest_double_edge() {
        let g = Digraph::from_edge_list(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        let p = g.degree_profile();
        assert_eq!((p.min_degree, p.min_semi_degree), (2, 1));
    }

    #[test]
    fn empty_and_complete() {
        let g = Digraph::from_edge_list(3, &[]).unwrap();
        assert_eq!(g.min_degree(), 0);
        let all: Vec<_> = (0..4).flat_map(|u| (0..4).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        let k4 = Digraph::from_edge_list(4, &all).unwrap();
        assert!((0..4).all(|v| k4.degree(v) == 6));
        let k5 = gen_complete_digraph(5);
        let p = k5.degree_profile();
        assert_eq!((p.min_degree, p.min_semi_degree), (8, 4));
    }

    #[test]
    fn edge_list_errors_name_the_pair() {
        let e = Digraph::from_edge_list(3, &[(0, 1), (2, 2)]).unwrap_err();
        assert!(e.to_string().contains("(2, 2)"), "{e}");
        let e = Digraph::from_edge_list(3, &[(0, 3)]).unwrap_err();
        assert!(e.to_string().contains("(0, 3)"), "{e}");
    }

    #[test]
    fn g1_degree_and_scc_order() {
        let g = gen_blowup_tt(&[4, 4, 4], 1.0, 0.0, 0);
        assert_eq!(g.min_degree(), 14);
        let g = gen_blowup_tt(&[3, 3, 3], 1.0, 0.0, 0);
        let sccs = g.strongly_connected_components();
        assert_eq!(sccs.len(), 3);
        // later blocks send every edge to earlier ones, so the last block is
        // the source of the condensation
        assert_eq!(sccs[0].to_vec(), vec![6, 7, 8]);
        assert_eq!(sccs[2].to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn cross_counts_examples() {
        let g = two_cliques(3, 3);
        let a = VertexSet::from_iter(6, 0..3);
        let b = VertexSet::from_iter(6, 3..6);
        assert_eq!(g.cross_counts(&a, &b), CrossCounts { forward: 0, backward: 0, total: 0 });

        let g = gen_blowup_tt(&[3, 3, 3], 1.0, 0.0, 0);
        let a = VertexSet::from_iter(9, 0..3);
        let b = VertexSet::from_iter(9, 3..6);
        let c = g.cross_counts(&a, &b);
        assert_eq!((c.forward, c.backward), (0, 9));

        let k3 = gen_complete_digraph(3);
        let v = k3.vertex_set();
        let c = k3.cross_counts(&v, &v);
        assert_eq!((c.forward, c.backward), (6, 6));
    }

    #[test]
    fn scc_examples() {
        assert_eq!(directed_cycle(6).strongly_connected_components().len(), 1);
        let sccs = two_cliques(3, 3).strongly_connected_components();
        assert_eq!(sccs.len(), 2);
        assert_eq!(sccs[0].first(), Some(0));
    }

    #[test]
    fn double_edges() {
        let k4 = gen_complete_digraph(4);
        let gs = k4.double_edge_graph();
        assert_eq!(gs.edge_count(), 6);
        let t = crate::generators::gen_tournament(6, crate::generators::TournamentKind::Random { seed: 3 });
        assert_eq!(t.double_edge_graph().edge_count(), 0);
    }

    #[test]
    fn induced_subgraph() {
        let g = directed_cycle(5);
        let (h, map) = g.induced(&VertexSet::from_iter(5, [0, 1, 2]));
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(h.edge_count(), 2);
    }
}
