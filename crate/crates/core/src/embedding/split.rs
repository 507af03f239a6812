//! Random splits of a robust outexpander into expanding pieces.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::expansion::{certify_expander, CheckMode, ExpansionOutcome, ExpansionParams};
use crate::generators::rng;
use crate::graph::Digraph;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitParams {
    /// Expansion parameters `ν′`, `τ′` required of every piece.
    pub nu: f64,
    pub tau: f64,
    /// Degree condition `d±(x, W_i) ≥ η m_i / 4`.
    pub eta: f64,
    pub retries: usize,
    /// Pieces up to this size are checked exhaustively.
    pub exact_cap: usize,
    pub sampled_trials: usize,
    pub seed: u64,
}

impl Default for SplitParams {
    fn default() -> Self {
        SplitParams { nu: 0.02, tau: 0.1, eta: 0.3, retries: 32, exact_cap: 16, sampled_trials: 64, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplitClassReport {
    pub index: usize,
    pub size: usize,
    /// `min_x min(d⁺(x,W_i), d⁻(x,W_i)) / m_i` over all `x ∈ V(G)`.
    pub min_degree_ratio: f64,
    pub degree_ok: bool,
    /// `expander`, `inconclusive` (sampled, nothing found) or `violator`.
    pub expansion: String,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplitOutcome {
    /// `W_0, W_1, …, W_t`.
    pub parts: Vec<VertexSet>,
    /// Samples drawn, including the accepted one.
    pub attempts: usize,
    pub reports: Vec<SplitClassReport>,
    pub degree_failures: usize,
    pub expansion_failures: usize,
}

/// Partitions `V(G) ∖ W₀` uniformly at random into pieces of sizes
/// `m₁,…,m_t` until every piece passes the degree and expansion checks.
pub fn split_expander(g: &Digraph, sizes: &[usize], w0: &VertexSet, p: &SplitParams) -> Result<SplitOutcome> {
    let n = g.n();
    if sizes.len() < 2 || sizes.iter().sum::<usize>() != n {
        return Err(Error::Precondition(format!("sizes {sizes:?} must list m_0..m_t summing to n={n}")));
    }
    if w0.universe() != n || w0.len() != sizes[0] {
        return Err(Error::Precondition(format!("|W_0|={} differs from m_0={}", w0.len(), sizes[0])));
    }
    if let Some(m) = sizes[1..].iter().find(|&&m| m < 2) {
        return Err(Error::Precondition(format!("piece size {m} is below 2")));
    }
    ExpansionParams::new(p.nu, p.tau, CheckMode::Exact)?;
    let mut rest: Vec<usize> = w0.complement().iter().collect();
    let mut r = rng(p.seed);
    let (mut deg_fail, mut exp_fail) = (0, 0);
    for attempt in 1..=p.retries.max(1) {
        rest.shuffle(&mut r);
        let mut parts = vec![w0.clone()];
        let mut off = 0;
        for &m in &sizes[1..] {
            parts.push(VertexSet::from_iter(n, rest[off..off + m].iter().copied()));
            off += m;
        }
        let mut reports = Vec::with_capacity(parts.len() - 1);
        let mut ok = true;
        for (i, w) in parts.iter().enumerate().skip(1) {
            let rep = check_piece(g, w, i, p, p.seed.wrapping_add(attempt as u64))?;
            if !rep.degree_ok {
                deg_fail += 1;
                ok = false;
            }
            if rep.expansion == "violator" {
                exp_fail += 1;
                ok = false;
            }
            reports.push(rep);
        }
        if ok {
            return Ok(SplitOutcome {
                parts,
                attempts: attempt,
                reports,
                degree_failures: deg_fail,
                expansion_failures: exp_fail,
            });
        }
    }
    Err(Error::Resource(format!(
        "no valid split in {} samples ({deg_fail} degree failures, {exp_fail} expansion failures)",
        p.retries.max(1)
    )))
}

fn check_piece(g: &Digraph, w: &VertexSet, index: usize, p: &SplitParams, seed: u64) -> Result<SplitClassReport> {
    let m = w.len();
    let mut worst = usize::MAX;
    for x in 0..g.n() {
        let d = g.out_set(x).intersection_len(w).min(g.in_set(x).intersection_len(w));
        worst = worst.min(d);
    }
    let degree_ok = worst as f64 + 1e-9 >= p.eta * m as f64 / 4.0;
    let (h, _) = g.induced(w);
    let exact = m <= p.exact_cap;
    let mode = if exact { CheckMode::Exact } else { CheckMode::Sampled { trials: p.sampled_trials, seed } };
    let v = certify_expander(&h, &ExpansionParams { nu: p.nu, tau: p.tau, mode })?;
    let expansion = match v.outcome {
        ExpansionOutcome::Expander => "expander",
        ExpansionOutcome::Inconclusive => "inconclusive",
        ExpansionOutcome::Violator { .. } => "violator",
    };
    Ok(SplitClassReport {
        index,
        size: m,
        min_degree_ratio: worst as f64 / m as f64,
        degree_ok,
        expansion: expansion.into(),
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_complete_digraph, gen_random_min_degree};

    #[test]
    fn complete_digraph_first_sample() {
        let g = gen_complete_digraph(24);
        let out = split_expander(&g, &[0, 12, 12], &VertexSet::empty(24), &SplitParams::default()).unwrap();
        assert_eq!(out.attempts, 1);
        assert_eq!(out.parts[1].len() + out.parts[2].len(), 24);
        assert!(out.parts[1].is_disjoint(&out.parts[2]));
    }

    #[test]
    fn dense_random_with_fixed_w0() {
        let g = gen_random_min_degree(40, 64, 3).graph;
        let w0 = VertexSet::from_iter(40, 0..4);
        let out = split_expander(&g, &[4, 18, 18], &w0, &SplitParams::default()).unwrap();
        assert_eq!(out.parts[0], w0);
        assert!(out.reports.iter().all(|r| r.degree_ok));
    }

    #[test]
    fn bad_sizes() {
        let g = gen_complete_digraph(10);
        let e = split_expander(&g, &[0, 5, 4], &VertexSet::empty(10), &SplitParams::default());
        assert!(matches!(e, Err(Error::Precondition(_))));
    }
}
