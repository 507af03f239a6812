//! Deterministic and seeded-random digraph families.
//!
//! Seeded families draw from `ChaCha8Rng`, so a fixed seed reproduces the
//! same digraph bit for bit on every platform.

use crate::error::{Error, Result};
use crate::graph::Digraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All `n(n−1)` edges.
pub fn gen_complete_digraph(n: usize) -> Digraph {
    Digraph::from_fn(n, |_, _| true)
}

/// Complete bipartite digraph with parts of sizes `⌈n/2⌉−1` (vertices
/// `0..a`) and `⌊n/2⌋+1`.
pub fn gen_bipartite_extremal(n: usize) -> Digraph {
    assert!(n >= 4, "bipartite extremal family needs n >= 4");
    let a = n.div_ceil(2) - 1;
    Digraph::from_fn(n, |u, v| (u < a) != (v < a))
}

/// Disjoint complete digraphs on `⌊n/2⌋` and `⌈n/2⌉` vertices.
pub fn gen_split_cliques(n: usize) -> Digraph {
    assert!(n >= 4, "split cliques family needs n >= 4");
    let a = n / 2;
    Digraph::from_fn(n, |u, v| (u < a) == (v < a))
}

/// Part index of every vertex for consecutive parts of the given sizes.
pub fn part_labels(sizes: &[usize]) -> Vec<usize> {
    sizes.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat(i).take(s)).collect()
}

/// Blow-up of the transitive tournament.
///
/// Parts occupy consecutive index ranges in order. For parts `i < j` every
/// edge `j → i` is present and each edge `i → j` appears independently with
/// probability `forward_noise`. Inside a part each pair carries a double edge
/// with probability `intra`. With `intra = 1` and no noise this is `G₁`.
pub fn gen_blowup_tt(sizes: &[usize], intra: f64, forward_noise: f64, seed: u64) -> Digraph {
    let labels = part_labels(sizes);
    let n = labels.len();
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if labels[u] == labels[v] {
                if intra >= 1.0 || r.gen::<f64>() < intra {
                    edges.push((u, v));
                    edges.push((v, u));
                }
            } else {
                // u lies in the earlier part
                edges.push((v, u));
                if forward_noise > 0.0 && r.gen::<f64>() < forward_noise {
                    edges.push((u, v));
                }
            }
        }
    }
    Digraph::from_edge_list(n, &edges).expect("generator edges are valid")
}

/// A random digraph together with the number of edges added to lift it to
/// the target minimum degree.
#[derive(Clone, Debug)]
pub struct MinDegreeSample {
    pub graph: Digraph,
    pub augmentations: usize,
}

/// Random digraph with `δ(G) ≥ delta_target`.
///
/// Each ordered pair is present with probability
/// `max(1/2, delta_target / (2(n−1)))`; afterwards every deficient vertex
/// receives missing incident edges, each time towards the partner of
/// smallest current degree (ties broken at random), until the target holds.
pub fn gen_random_min_degree(n: usize, delta_target: usize, seed: u64) -> MinDegreeSample {
    assert!(n >= 1);
    assert!(delta_target <= 2 * (n - 1), "delta_target exceeds 2(n-1)");
    let mut r = rng(seed);
    let p = if n > 1 { (delta_target as f64 / (2.0 * (n - 1) as f64)).max(0.5) } else { 0.0 };
    let mut adj = vec![vec![false; n]; n];
    let mut deg = vec![0usize; n];
    for u in 0..n {
        for v in 0..n {
            if u != v && r.gen::<f64>() < p {
                adj[u][v] = true;
                deg[u] += 1;
                deg[v] += 1;
            }
        }
    }
    let mut augmentations = 0;
    loop {
        let deficient: Vec<usize> = (0..n).filter(|&v| deg[v] < delta_target).collect();
        if deficient.is_empty() {
            break;
        }
        for v in deficient {
            while deg[v] < delta_target {
                let mut options: Vec<(usize, usize, usize)> = Vec::new();
                for w in 0..n {
                    if w == v {
                        continue;
                    }
                    if !adj[v][w] {
                        options.push((deg[w], v, w));
                    }
                    if !adj[w][v] {
                        options.push((deg[w], w, v));
                    }
                }
                options.shuffle(&mut r);
                let &(_, a, b) = options.iter().min_by_key(|o| o.0).expect("a deficient vertex has a missing edge");
                adj[a][b] = true;
                deg[a] += 1;
                deg[b] += 1;
                augmentations += 1;
            }
        }
    }
    let graph = Digraph::from_fn(n, |u, v| adj[u][v]);
    MinDegreeSample { graph, augmentations }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TournamentKind {
    Random { seed: u64 },
    Transitive,
}

/// Exactly one edge per unordered pair; the transitive kind has `i → j` iff `i < j`.
pub fn gen_tournament(n: usize, kind: TournamentKind) -> Digraph {
    match kind {
        TournamentKind::Transitive => Digraph::from_fn(n, |u, v| u < v),
        TournamentKind::Random { seed } => {
            let mut r = rng(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    edges.push(if r.gen::<bool>() { (u, v) } else { (v, u) });
                }
            }
            Digraph::from_edge_list(n, &edges).expect("valid tournament")
        }
    }
}

/// A generator family with its parameters, as echoed into edge-list headers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum GenSpec {
    Complete { n: usize },
    BipartiteExtremal { n: usize },
    SplitCliques { n: usize },
    G1 { sizes: Vec<usize>, intra: f64, noise: f64, seed: u64 },
    RandomMinDegree { n: usize, delta: usize, seed: u64 },
    Tournament { n: usize, kind: TournamentKind },
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Input(m));
        match self {
            GenSpec::Complete { n } | GenSpec::Tournament { n, .. } if *n == 0 => bad("n must be positive".into()),
            GenSpec::BipartiteExtremal { n } | GenSpec::SplitCliques { n } if *n < 4 => {
                bad(format!("n={n}: family needs n >= 4"))
            }
            GenSpec::G1 { sizes, intra, noise, .. } => {
                if sizes.is_empty() || sizes.contains(&0) {
                    bad("sizes must be a non-empty list of positive integers".into())
                } else if !(0.0..=1.0).contains(intra) || !(0.0..=1.0).contains(noise) {
                    bad("intra and noise must lie in [0,1]".into())
                } else {
                    Ok(())
                }
            }
            GenSpec::RandomMinDegree { n, delta, .. } => {
                if *n == 0 || *delta > 2 * (n - 1) {
                    bad(format!("delta={delta} is not achievable on n={n} vertices"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<Digraph> {
        self.validate()?;
        Ok(match self {
            GenSpec::Complete { n } => gen_complete_digraph(*n),
            GenSpec::BipartiteExtremal { n } => gen_bipartite_extremal(*n),
            GenSpec::SplitCliques { n } => gen_split_cliques(*n),
            GenSpec::G1 { sizes, intra, noise, seed } => gen_blowup_tt(sizes, *intra, *noise, *seed),
            GenSpec::RandomMinDegree { n, delta, seed } => gen_random_min_degree(*n, *delta, *seed).graph,
            GenSpec::Tournament { n, kind } => gen_tournament(*n, *kind),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete() {
        assert_eq!(gen_complete_digraph(3).edge_count(), 6);
        assert_eq!(gen_complete_digraph(1).edge_count(), 0);
        assert_eq!(gen_complete_digraph(7).min_degree(), 12);
    }

    #[test]
    fn bipartite_extremal_degrees() {
        let g = gen_bipartite_extremal(10);
        assert_eq!(g.min_degree(), 8);
        assert_eq!((0..10).filter(|&v| g.degree(v) == 8).count(), 6);
        let g = gen_bipartite_extremal(4);
        assert_eq!(g.out_degree(0), 3);
        for n in 4..=20 {
            assert_eq!(gen_bipartite_extremal(n).min_degree(), 2 * (n.div_ceil(2) - 1));
        }
    }

    #[test]
    fn split_cliques_degrees() {
        let g = gen_split_cliques(9);
        assert_eq!(g.min_degree(), 6);
        assert!(!g.is_strongly_connected());
    }

    #[test]
    fn blowup_formula() {
        for k in 1..=5usize {
            for n in (k + 1)..=60 {
                let sizes: Vec<usize> = (0..=k).map(|i| n / (k + 1) + usize::from(i < n % (k + 1))).collect();
                let g = gen_blowup_tt(&sizes, 1.0, 0.0, 0);
                assert_eq!(g.min_degree(), n + n / (k + 1) - 2, "k={k} n={n}");
            }
        }
        assert_eq!(gen_blowup_tt(&[3], 1.0, 0.5, 1), gen_complete_digraph(3));
    }

    #[test]
    fn seeded_reproducible() {
        let a = gen_blowup_tt(&[10, 10], 0.9, 0.1, 5);
        let b = gen_blowup_tt(&[10, 10], 0.9, 0.1, 5);
        assert_eq!(a, b);
        let a = gen_random_min_degree(12, 16, 9).graph;
        assert_eq!(a, gen_random_min_degree(12, 16, 9).graph);
    }

    #[test]
    fn min_degree_targets() {
        assert_eq!(gen_random_min_degree(6, 10, 1).graph, gen_complete_digraph(6));
        for seed in 0..100 {
            assert!(gen_random_min_degree(12, 16, seed).graph.min_degree() >= 16);
        }
        let s = gen_random_min_degree(12, 0, 3);
        assert_eq!(s.augmentations, 0);
    }

    #[test]
    fn tournaments() {
        let t = gen_tournament(5, TournamentKind::Transitive);
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(t.has_edge(u, v), u < v);
            }
        }
        let t = gen_tournament(5, TournamentKind::Random { seed: 2 });
        assert_eq!(t.edge_count(), 10);
        assert_eq!(t.double_edge_graph().edge_count(), 0);
    }

    #[test]
    fn spec_validation() {
        assert!(GenSpec::G1 { sizes: vec![], intra: 1.0, noise: 0.0, seed: 0 }.generate().is_err());
        assert!(GenSpec::RandomMinDegree { n: 4, delta: 7, seed: 0 }.generate().is_err());
        let s = GenSpec::G1 { sizes: vec![2, 2], intra: 1.0, noise: 0.0, seed: 0 };
        let j = serde_json::to_string(&s).unwrap();
        assert!(j.contains("\"family\":\"g1\""));
        assert_eq!(serde_json::from_str::<GenSpec>(&j).unwrap(), s);
    }
}
