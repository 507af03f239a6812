//! Robust out-neighbourhoods, robust outexpander certificates and sparse cuts.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::generators::rng;
use crate::graph::Digraph;
use crate::num::{ceil_tol, floor_tol};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Largest `n` for which subset sweeps are exhaustive.
pub const EXACT_CAP: usize = 24;

const EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum CheckMode {
    Exact,
    /// `trials` random sets per size decile plus structured candidates.
    Sampled { trials: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionParams {
    pub nu: f64,
    pub tau: f64,
    pub mode: CheckMode,
}

impl ExpansionParams {
    pub fn new(nu: f64, tau: f64, mode: CheckMode) -> Result<Self> {
        if !(nu > 0.0 && nu <= tau && tau < 0.5) {
            return Err(Error::Input(format!("need 0 < nu <= tau < 1/2, got nu={nu}, tau={tau}")));
        }
        Ok(ExpansionParams { nu, tau, mode })
    }

    pub fn exact(nu: f64, tau: f64) -> Result<Self> {
        Self::new(nu, tau, CheckMode::Exact)
    }

    pub fn sampled(nu: f64, tau: f64, trials: usize, seed: u64) -> Result<Self> {
        Self::new(nu, tau, CheckMode::Sampled { trials, seed })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ExpansionOutcome {
    Expander,
    Violator { set: VertexSet, rn_size: usize },
    /// Sampled mode found no violating set; this is not a proof.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionVerdict {
    pub outcome: ExpansionOutcome,
    pub checked_sets: u64,
    pub exact: bool,
}

impl ExpansionVerdict {
    pub fn is_expander(&self) -> bool {
        matches!(self.outcome, ExpansionOutcome::Expander)
    }

    pub fn is_violator(&self) -> bool {
        matches!(self.outcome, ExpansionOutcome::Violator { .. })
    }
}

/// A cut `(X₁, X₂)` with `e⁺(X₁,X₂)` and `α_achieved = e⁺/(|X₁||X₂|)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutCertificate {
    pub x1: VertexSet,
    pub x2: VertexSet,
    pub e_forward: usize,
    pub alpha_achieved: f64,
}

impl CutCertificate {
    /// Builds the certificate for `X₁ = x1` and `X₂ = V ∖ x1`.
    pub fn from_side(g: &Digraph, x1: VertexSet) -> Self {
        let x2 = x1.complement();
        let e = g.e_plus(&x1, &x2);
        let denom = (x1.len() * x2.len()).max(1) as f64;
        CutCertificate { alpha_achieved: e as f64 / denom, e_forward: e, x1, x2 }
    }

    /// The same vertex sets with the roles swapped.
    pub fn swapped(&self, g: &Digraph) -> Self {
        Self::from_side(g, self.x2.clone())
    }

    pub fn is_sparse(&self, alpha: f64) -> bool {
        !self.x1.is_empty() && !self.x2.is_empty() && self.alpha_achieved <= alpha + EPS
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CutOutcome {
    Found(CutCertificate),
    /// No cut within `α`. `proven` is true only for the exhaustive search;
    /// `best` is the least sparse-violating cut seen, for diagnostics.
    NoneFound { best: Option<CutCertificate>, proven: bool },
}

impl CutOutcome {
    pub fn cut(&self) -> Option<&CutCertificate> {
        match self {
            CutOutcome::Found(c) => Some(c),
            CutOutcome::NoneFound { .. } => None,
        }
    }
}

/// Search effort for [`find_sparse_cut`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutBudget {
    /// Use the exhaustive search when `n` is at most this.
    pub exact_cap: usize,
    /// Random balanced restarts of the local search.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for CutBudget {
    fn default() -> Self {
        CutBudget { exact_cap: EXACT_CAP, restarts: 16, seed: 0 }
    }
}

/// `RN⁺_ν(S) = { v : d⁻(v,S) ≥ ⌈νn⌉ }`.
pub fn robust_out_neighborhood(g: &Digraph, s: &VertexSet, nu: f64) -> VertexSet {
    let thr = rn_threshold(g.n(), nu);
    VertexSet::from_iter(g.n(), (0..g.n()).filter(|&v| g.in_set(v).intersection_len(s) >= thr))
}

#[inline]
pub fn rn_threshold(n: usize, nu: f64) -> usize {
    ceil_tol(nu * n as f64).max(0) as usize
}

/// Inclusive size range `[⌈τn⌉, ⌊(1−τ)n⌋]` of sets the definition constrains.
pub fn size_range(n: usize, tau: f64) -> (usize, usize) {
    let lo = ceil_tol(tau * n as f64).max(0) as usize;
    let hi = floor_tol((1.0 - tau) * n as f64).max(0) as usize;
    (lo, hi)
}

#[inline]
fn violates(rn: usize, size: usize, nu: f64, n: usize) -> bool {
    (rn as f64) + EPS < size as f64 + nu * n as f64
}

/// Certifies `G` as a robust `(ν,τ)`-outexpander or returns a violating set.
pub fn certify_expander(g: &Digraph, p: &ExpansionParams) -> Result<ExpansionVerdict> {
    certify_expander_with_hints(g, p, &[])
}

/// As [`certify_expander`]; in sampled mode `hints` are tested first.
pub fn certify_expander_with_hints(g: &Digraph, p: &ExpansionParams, hints: &[VertexSet]) -> Result<ExpansionVerdict> {
    match p.mode {
        CheckMode::Exact => {
            if g.n() > EXACT_CAP {
                return Err(Error::Capability(format!(
                    "exact expander check supports n <= {EXACT_CAP}, got n={}; use sampled mode",
                    g.n()
                )));
            }
            Ok(exact_sweep(g, p.nu, p.tau))
        }
        CheckMode::Sampled { trials, seed } => Ok(sampled_check(g, p.nu, p.tau, trials, seed, hints)),
    }
}

fn masks(g: &Digraph) -> Vec<u32> {
    (0..g.n()).map(|v| g.out_set(v).words().first().copied().unwrap_or(0) as u32).collect()
}

fn exact_sweep(g: &Digraph, nu: f64, tau: f64) -> ExpansionVerdict {
    let n = g.n();
    let thr = rn_threshold(n, nu);
    let (lo, hi) = size_range(n, tau);
    let out = masks(g);
    let mut cnt = vec![0usize; n];
    // every vertex is in RN⁺ of the empty set when the threshold is 0
    let mut rn = if thr == 0 { n } else { 0 };
    let mut s: u32 = 0;
    let mut size = 0usize;
    let mut checked = 0u64;
    for i in 1u64..(1u64 << n) {
        let u = i.trailing_zeros() as usize;
        let bit = 1u32 << u;
        let adding = s & bit == 0;
        s ^= bit;
        let mut m = out[u];
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            if adding {
                cnt[w] += 1;
                if cnt[w] == thr {
                    rn += 1;
                }
            } else {
                if cnt[w] == thr {
                    rn -= 1;
                }
                cnt[w] -= 1;
            }
        }
        if adding {
            size += 1;
        } else {
            size -= 1;
        }
        if size >= lo && size <= hi {
            checked += 1;
            if violates(rn, size, nu, n) {
                let set = VertexSet::from_mask(n, s as u64);
                return ExpansionVerdict {
                    outcome: ExpansionOutcome::Violator { set, rn_size: rn },
                    checked_sets: checked,
                    exact: true,
                };
            }
        }
    }
    ExpansionVerdict { outcome: ExpansionOutcome::Expander, checked_sets: checked, exact: true }
}

/// Structured candidate sets: SCC prefixes and suffixes plus prefixes of the
/// vertex order sorted by in-degree, out-degree and `d⁺ − d⁻`.
fn structured_candidates(g: &Digraph) -> Vec<VertexSet> {
    let n = g.n();
    let mut out = Vec::new();
    let sccs = g.strongly_connected_components();
    let mut acc = VertexSet::empty(n);
    for c in sccs.iter().take(sccs.len().saturating_sub(1)) {
        acc.union_with(c);
        out.push(acc.clone());
        out.push(acc.complement());
    }
    let keys: [Box<dyn Fn(usize) -> i64>; 3] = [
        Box::new(|v| g.in_degree(v) as i64),
        Box::new(|v| g.out_degree(v) as i64),
        Box::new(|v| g.out_degree(v) as i64 - g.in_degree(v) as i64),
    ];
    for key in keys.iter() {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (key(v), v));
        let mut acc = VertexSet::empty(n);
        for &v in order.iter().take(n.saturating_sub(1)) {
            acc.insert(v);
            out.push(acc.clone());
        }
    }
    out
}

fn sampled_check(g: &Digraph, nu: f64, tau: f64, trials: usize, seed: u64, hints: &[VertexSet]) -> ExpansionVerdict {
    let n = g.n();
    let (lo, hi) = size_range(n, tau);
    let mut checked = 0u64;
    let test = |s: &VertexSet, checked: &mut u64| -> Option<ExpansionOutcome> {
        let size = s.len();
        if size < lo || size > hi {
            return None;
        }
        *checked += 1;
        let rn = robust_out_neighborhood(g, s, nu).len();
        violates(rn, size, nu, n).then(|| ExpansionOutcome::Violator { set: s.clone(), rn_size: rn })
    };
    for s in hints.iter().cloned().chain(structured_candidates(g)) {
        if let Some(o) = test(&s, &mut checked) {
            return ExpansionVerdict { outcome: o, checked_sets: checked, exact: false };
        }
    }
    if lo <= hi && n > 0 {
        let mut r = rng(seed);
        let mut verts: Vec<usize> = (0..n).collect();
        let span = hi - lo + 1;
        for decile in 0..10 {
            let a = lo + span * decile / 10;
            let b = (lo + span * (decile + 1) / 10).max(a + 1);
            for _ in 0..trials {
                let size = r.gen_range(a..b);
                verts.shuffle(&mut r);
                let s = VertexSet::from_iter(n, verts[..size].iter().copied());
                if let Some(o) = test(&s, &mut checked) {
                    return ExpansionVerdict { outcome: o, checked_sets: checked, exact: false };
                }
            }
        }
    }
    ExpansionVerdict { outcome: ExpansionOutcome::Inconclusive, checked_sets: checked, exact: false }
}

/// `a/b < c/d` for cut ratios, breaking ties towards the larger `|X₁||X₂|`.
#[inline]
fn better(e1: usize, d1: usize, e2: usize, d2: usize) -> bool {
    let l = e1 as u128 * d2 as u128;
    let r = e2 as u128 * d1 as u128;
    l < r || (l == r && d1 > d2)
}

/// Searches for an `α`-sparse cut.
///
/// Up to `budget.exact_cap` (at most 24) vertices every cut is enumerated
/// and the sparsest one is returned; otherwise a seeded local search runs
/// from SCC prefix cuts, degree-sorted prefixes and random balanced cuts.
pub fn find_sparse_cut(g: &Digraph, alpha: f64, budget: &CutBudget) -> CutOutcome {
    let n = g.n();
    if n < 2 {
        return CutOutcome::NoneFound { best: None, proven: true };
    }
    let (best, proven) = if n <= budget.exact_cap.min(EXACT_CAP) {
        (exact_cut(g), true)
    } else {
        (heuristic_cut(g, budget), false)
    };
    if best.is_sparse(alpha) {
        CutOutcome::Found(best)
    } else {
        CutOutcome::NoneFound { best: Some(best), proven }
    }
}

/// Sparsest cut by Gray-code enumeration with incremental `e⁺(X₁,X₂)`.
pub fn exact_cut(g: &Digraph) -> CutCertificate {
    let n = g.n();
    assert!((2..=EXACT_CAP).contains(&n));
    let out = masks(g);
    let inn: Vec<u32> = (0..n).map(|v| g.in_set(v).words()[0] as u32).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut x1: u32 = 0;
    let mut e: i64 = 0;
    let mut best: Option<(usize, usize, u32)> = None;
    for i in 1u64..(1u64 << n) {
        let u = i.trailing_zeros() as usize;
        let bit = 1u32 << u;
        if x1 & bit == 0 {
            // u moves from X₂ to X₁
            e += (out[u] & full & !x1 & !bit).count_ones() as i64 - (inn[u] & x1).count_ones() as i64;
            x1 |= bit;
        } else {
            // u moves from X₁ to X₂
            e -= (out[u] & full & !x1).count_ones() as i64;
            x1 &= !bit;
            e += (inn[u] & x1).count_ones() as i64;
        }
        let a = x1.count_ones() as usize;
        if a == 0 || a == n {
            continue;
        }
        let d = a * (n - a);
        let ee = e as usize;
        if best.map_or(true, |(be, bd, _)| better(ee, d, be, bd)) {
            best = Some((ee, d, x1));
        }
    }
    let (_, _, m) = best.expect("n >= 2 has a proper cut");
    CutCertificate::from_side(g, VertexSet::from_mask(n, m as u64))
}

struct LocalCut<'a> {
    g: &'a Digraph,
    side: Vec<bool>,
    x1: VertexSet,
    x2: VertexSet,
    e: usize,
}

impl<'a> LocalCut<'a> {
    fn new(g: &'a Digraph, x1: VertexSet) -> Self {
        let x2 = x1.complement();
        let e = g.e_plus(&x1, &x2);
        let side = (0..g.n()).map(|v| x1.contains(v)).collect();
        LocalCut { g, side, x1, x2, e }
    }

    /// `e⁺` after moving `u` to the other side.
    fn moved(&self, u: usize) -> usize {
        let g = self.g;
        if self.side[u] {
            self.e - g.out_set(u).intersection_len(&self.x2) + g.in_set(u).intersection_len(&self.x1)
        } else {
            self.e - g.in_set(u).intersection_len(&self.x1) + g.out_set(u).intersection_len(&self.x2)
        }
    }

    fn apply(&mut self, u: usize, e: usize) {
        if self.side[u] {
            self.x1.remove(u);
            self.x2.insert(u);
        } else {
            self.x2.remove(u);
            self.x1.insert(u);
        }
        self.side[u] = !self.side[u];
        self.e = e;
    }

    /// Steepest descent over single-vertex moves.
    fn climb(&mut self) {
        let n = self.g.n();
        loop {
            let a = self.x1.len();
            let mut best: Option<(usize, usize, usize)> = None;
            for u in 0..n {
                let na = if self.side[u] { a - 1 } else { a + 1 };
                if na == 0 || na == n {
                    continue;
                }
                let e = self.moved(u);
                let d = na * (n - na);
                if best.map_or(true, |(be, bd, _)| better(e, d, be, bd)) {
                    best = Some((e, d, u));
                }
            }
            match best {
                Some((e, d, u)) if better(e, d, self.e, a * (n - a)) => self.apply(u, e),
                _ => return,
            }
        }
    }
}

fn heuristic_cut(g: &Digraph, budget: &CutBudget) -> CutCertificate {
    let n = g.n();
    let mut seeds: Vec<VertexSet> = Vec::new();
    let sccs = g.strongly_connected_components();
    let mut acc = VertexSet::empty(n);
    for c in sccs.iter().take(sccs.len().saturating_sub(1)) {
        acc.union_with(c);
        seeds.push(acc.clone());
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.out_degree(v) as i64 - g.in_degree(v) as i64, v));
    let step = (n / 16).max(1);
    for k in (step..n).step_by(step) {
        seeds.push(VertexSet::from_iter(n, order[..k].iter().copied()));
    }
    let mut r = rng(budget.seed);
    let mut verts: Vec<usize> = (0..n).collect();
    for _ in 0..budget.restarts {
        verts.shuffle(&mut r);
        seeds.push(VertexSet::from_iter(n, verts[..n / 2].iter().copied()));
    }
    let mut best: Option<(usize, usize, VertexSet)> = None;
    for s in seeds {
        if s.is_empty() || s.len() == n {
            continue;
        }
        let mut lc = LocalCut::new(g, s);
        lc.climb();
        let a = lc.x1.len();
        let d = a * (n - a);
        if best.as_ref().map_or(true, |(be, bd, _)| better(lc.e, d, *be, *bd)) {
            best = Some((lc.e, d, lc.x1));
        }
    }
    let (_, _, x1) = best.expect("at least one seed");
    CutCertificate::from_side(g, x1)
}

/// Outcome of the sparse-cut / expander dichotomy.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Dichotomy {
    Cut(CutCertificate),
    Expander(ExpansionVerdict),
    /// Neither outcome: no sparse cut and a violating set. With the degree
    /// hypothesis in exact mode this cannot happen.
    Neither { best_cut: Option<CutCertificate>, verdict: ExpansionVerdict },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DichotomyOptions {
    pub budget: CutBudget,
    /// Random sets per size decile for the sampled expander check.
    pub sampled_trials: usize,
}

impl Default for DichotomyOptions {
    fn default() -> Self {
        DichotomyOptions { budget: CutBudget::default(), sampled_trials: 64 }
    }
}

/// `ν = ατη/4`.
pub fn dichotomy_nu(eta: f64, alpha: f64, tau: f64) -> f64 {
    alpha * tau * eta / 4.0
}

/// Returns an `α`-sparse cut or a robust `(ατη/4, τ)`-outexpander certificate.
///
/// Requires `δ(G) ≥ (1+η)n`.
pub fn sparse_or_expander(g: &Digraph, eta: f64, alpha: f64, tau: f64, opts: &DichotomyOptions) -> Result<Dichotomy> {
    let n = g.n() as f64;
    if (g.min_degree() as f64) + EPS < (1.0 + eta) * n {
        return Err(Error::Precondition(format!(
            "min degree {} is below (1+eta)n = {:.3}",
            g.min_degree(),
            (1.0 + eta) * n
        )));
    }
    sparse_or_expander_unchecked(g, eta, alpha, tau, opts)
}

/// [`sparse_or_expander`] without the degree precondition, for negative controls.
pub fn sparse_or_expander_unchecked(
    g: &Digraph,
    eta: f64,
    alpha: f64,
    tau: f64,
    opts: &DichotomyOptions,
) -> Result<Dichotomy> {
    if !(tau > 0.0 && tau < 0.5) || !(alpha > 0.0 && alpha < 1.0) || !(eta > 0.0 && eta < 1.0) {
        return Err(Error::Input(format!("bad dichotomy parameters eta={eta}, alpha={alpha}, tau={tau}")));
    }
    let nu = dichotomy_nu(eta, alpha, tau);
    let (best, proven) = match find_sparse_cut(g, alpha, &opts.budget) {
        CutOutcome::Found(c) => return Ok(Dichotomy::Cut(c)),
        CutOutcome::NoneFound { best, proven } => (best, proven),
    };
    let mode = if proven {
        CheckMode::Exact
    } else {
        CheckMode::Sampled { trials: opts.sampled_trials, seed: opts.budget.seed }
    };
    let verdict = certify_expander(g, &ExpansionParams { nu, tau, mode })?;
    Ok(match verdict.outcome {
        ExpansionOutcome::Violator { .. } => Dichotomy::Neither { best_cut: best, verdict },
        _ => Dichotomy::Expander(verdict),
    })
}

/// Serialized certificate emitted by the `verify` subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub set: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cut: Option<Vec<usize>>,
    pub params: CertificateParams,
    pub counts: serde_json::Map<String, serde_json::Value>,
    pub mode: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct CertificateParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<f64>,
}

impl CertificateJson {
    pub fn from_verdict(v: &ExpansionVerdict, nu: f64, tau: f64, alpha: Option<f64>) -> Self {
        let mut counts = serde_json::Map::new();
        counts.insert("checked_sets".into(), v.checked_sets.into());
        let (outcome, set) = match &v.outcome {
            ExpansionOutcome::Expander => ("expander", None),
            ExpansionOutcome::Inconclusive => ("inconclusive", None),
            ExpansionOutcome::Violator { set, rn_size } => {
                counts.insert("rn_size".into(), (*rn_size).into());
                counts.insert("set_size".into(), set.len().into());
                ("violator", Some(set.to_vec()))
            }
        };
        CertificateJson {
            outcome: outcome.into(),
            set,
            cut: None,
            params: CertificateParams { nu: Some(nu), tau: Some(tau), alpha },
            counts,
            mode: if v.exact { "exact" } else { "sampled" }.into(),
        }
    }

    pub fn from_cut(c: &CutCertificate, alpha: f64, exact: bool, nu: Option<f64>, tau: Option<f64>) -> Self {
        let mut counts = serde_json::Map::new();
        counts.insert("e_forward".into(), c.e_forward.into());
        counts.insert("x1_size".into(), c.x1.len().into());
        counts.insert("x2_size".into(), c.x2.len().into());
        counts.insert("alpha_achieved".into(), c.alpha_achieved.into());
        CertificateJson {
            outcome: "sparse_cut".into(),
            set: None,
            cut: Some(c.x1.to_vec()),
            params: CertificateParams { nu, tau, alpha: Some(alpha) },
            counts,
            mode: if exact { "exact" } else { "sampled" }.into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_blowup_tt, gen_complete_digraph, gen_split_cliques};

    fn first(n: usize, k: usize) -> VertexSet {
        VertexSet::from_iter(n, 0..k)
    }

    #[test]
    fn rn_examples() {
        let g = gen_complete_digraph(10);
        assert_eq!(robust_out_neighborhood(&g, &first(10, 5), 0.3).len(), 10);
        let e = Digraph::empty(6);
        assert!(robust_out_neighborhood(&e, &first(6, 3), 0.2).is_empty());
        let g1 = gen_blowup_tt(&[5, 5], 1.0, 0.0, 0);
        // the source class is class 2 here, so it plays the role S
        let s = VertexSet::from_iter(10, 5..10);
        assert_eq!(robust_out_neighborhood(&g1, &s, 0.2).len(), 10);
    }

    #[test]
    fn certify_examples() {
        let p = ExpansionParams::exact(0.1, 0.25).unwrap();
        assert!(certify_expander(&gen_complete_digraph(12), &p).unwrap().is_expander());

        let p = ExpansionParams::exact(0.05, 0.25).unwrap();
        let v = certify_expander(&gen_split_cliques(12), &p).unwrap();
        assert!(v.is_violator());

        let g1 = gen_blowup_tt(&[8, 8], 1.0, 0.0, 0);
        let v = certify_expander(&g1, &p).unwrap();
        assert!(v.is_violator());
        // the sink class is a violator directly
        let sink = first(16, 8);
        let rn = robust_out_neighborhood(&g1, &sink, 0.05);
        assert_eq!(rn, sink);

        let big = gen_complete_digraph(25);
        assert!(matches!(certify_expander(&big, &p), Err(Error::Capability(_))));
    }

    #[test]
    fn sampled_finds_planted() {
        let g1 = gen_blowup_tt(&[20, 20], 1.0, 0.0, 0);
        let p = ExpansionParams::sampled(0.05, 0.25, 8, 1).unwrap();
        assert!(certify_expander(&g1, &p).unwrap().is_violator());
        let p = ExpansionParams::sampled(0.05, 0.25, 8, 1).unwrap();
        let v = certify_expander(&gen_complete_digraph(40), &p).unwrap();
        assert_eq!(v.outcome, ExpansionOutcome::Inconclusive);
    }

    #[test]
    fn cut_examples() {
        let b = CutBudget::default();
        let c = find_sparse_cut(&gen_split_cliques(10), 0.01, &b);
        let c = c.cut().unwrap();
        assert_eq!(c.e_forward, 0);
        assert!(matches!(
            find_sparse_cut(&gen_complete_digraph(10), 0.5, &b),
            CutOutcome::NoneFound { proven: true, .. }
        ));
        let g1 = gen_blowup_tt(&[5, 5, 5], 1.0, 0.0, 0);
        let c = find_sparse_cut(&g1, 0.1, &b);
        let c = c.cut().unwrap();
        assert_eq!(c.e_forward, 0);
        // X₁ is a union of initial classes under the later→earlier convention
        let v = c.x1.to_vec();
        assert!(v == (0..5).collect::<Vec<_>>() || v == (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn heuristic_finds_planted_cut() {
        let g = gen_blowup_tt(&[30, 30], 0.95, 0.001, 4);
        let b = CutBudget { exact_cap: 0, restarts: 4, seed: 2 };
        match find_sparse_cut(&g, 0.01, &b) {
            CutOutcome::Found(c) => assert!(c.alpha_achieved <= 0.01),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exact_cut_matches_direct_count() {
        let g = crate::generators::gen_random_min_degree(10, 8, 3).graph;
        let c = exact_cut(&g);
        assert_eq!(c.e_forward, g.e_plus(&c.x1, &c.x2));
        // brute force minimum
        let mut best = f64::INFINITY;
        for m in 1u64..(1 << 10) - 1 {
            let x1 = VertexSet::from_mask(10, m);
            let x2 = x1.complement();
            best = best.min(g.e_plus(&x1, &x2) as f64 / (x1.len() * x2.len()) as f64);
        }
        assert!((c.alpha_achieved - best).abs() < 1e-12);
    }

    #[test]
    fn dichotomy_examples() {
        let o = DichotomyOptions::default();
        let d = sparse_or_expander(&gen_complete_digraph(14), 0.3, 0.3, 0.25, &o).unwrap();
        assert!(matches!(d, Dichotomy::Expander(_)));
        let g1 = gen_blowup_tt(&[8, 8], 1.0, 0.0, 0);
        match sparse_or_expander(&g1, 0.3, 0.3, 0.25, &o).unwrap() {
            Dichotomy::Cut(c) => assert_eq!(c.e_forward, 0),
            other => panic!("{other:?}"),
        }
        assert!(sparse_or_expander(&gen_split_cliques(10), 0.3, 0.3, 0.25, &o).is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let p = ExpansionParams::exact(0.05, 0.25).unwrap();
        let v = certify_expander(&gen_split_cliques(8), &p).unwrap();
        let j = serde_json::to_value(CertificateJson::from_verdict(&v, 0.05, 0.25, None)).unwrap();
        assert_eq!(j["outcome"], "violator");
        assert_eq!(j["mode"], "exact");
        assert!(j["set"].is_array());
    }
}
