//! Iterative partition into robust outexpander classes.
//!
//! Starting from `V(G)`, every class that is not an expander is cut along a
//! sparse cut, the cut is cleaned so that both sides keep high degree, and
//! the two sides replace the class in place (the sparse side first). Rounds
//! repeat until every class is an expander or the class budget is spent.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::expansion::{
    certify_expander_with_hints, find_sparse_cut, CheckMode, CutBudget, CutCertificate, CutOutcome, ExpansionOutcome,
    ExpansionParams, ExpansionVerdict, EXACT_CAP,
};
use crate::graph::Digraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const EPS: f64 = 1e-9;

/// How the sparsity level changes from round to round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Schedule {
    /// `α_b = α^(2^(k−b))`: round `b` cuts at `α_b` and cleans at `α_{b+1}`.
    #[default]
    Squaring,
    /// `α_b = α` in every round.
    Constant,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionParams {
    pub k: usize,
    pub zeta: f64,
    pub alpha: f64,
    pub tau: f64,
    pub nu: f64,
    /// Classes up to this size get exhaustive cut and expander checks.
    pub exact_threshold: usize,
    #[serde(default)]
    pub schedule: Schedule,
    #[serde(default = "yes")]
    pub enforce_degree_precondition: bool,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default = "default_trials")]
    pub sampled_trials: usize,
}

fn yes() -> bool {
    true
}
fn default_restarts() -> usize {
    16
}
fn default_trials() -> usize {
    64
}

impl DecompositionParams {
    /// Defaults: `α = ζ/(25(k+1))`, `τ = α/10`, `ν = ατζ/16`, exact threshold 20.
    pub fn new(k: usize, zeta: f64) -> Result<Self> {
        let alpha = zeta / (25.0 * (k + 1) as f64);
        let tau = alpha / 10.0;
        let p = DecompositionParams {
            k,
            zeta,
            alpha,
            tau,
            nu: alpha * tau * zeta / 16.0,
            exact_threshold: 20,
            schedule: Schedule::Squaring,
            enforce_degree_precondition: true,
            seed: 0,
            restarts: default_restarts(),
            sampled_trials: default_trials(),
        };
        p.validate()?;
        Ok(p)
    }

    /// Relaxed desk-scale settings: `ζ = 0.15`, `α = 0.01`, constant
    /// schedule, degree precondition reported but not enforced. These break
    /// `α ≤ ζ/(24(k+1))`; [`validate`](Self::validate) rejects them and
    /// [`decompose`] runs them anyway.
    pub fn desk(k: usize) -> Self {
        DecompositionParams {
            k,
            zeta: 0.15,
            alpha: 0.01,
            tau: 0.001,
            nu: 1e-7,
            exact_threshold: 20,
            schedule: Schedule::Constant,
            enforce_degree_precondition: false,
            seed: 1,
            restarts: 8,
            sampled_trials: 16,
        }
    }

    /// Every violated parameter inequality, as text.
    pub fn violations(&self) -> Vec<String> {
        let (k1, z, a, t, nu) = ((self.k + 1) as f64, self.zeta, self.alpha, self.tau, self.nu);
        let mut v = Vec::new();
        if self.k == 0 {
            v.push("k must be at least 1".into());
        }
        if !(z > 0.0 && z < 1.0 - 1.0 / k1) {
            v.push(format!("zeta={z} must lie in (0, 1-1/(k+1))"));
        }
        if !(nu > 0.0 && nu <= a * t * z / 16.0 + EPS * nu) {
            v.push(format!("nu={nu} exceeds alpha*tau*zeta/16={}", a * t * z / 16.0));
        }
        if !(t > 0.0 && t <= a / 8.0 + EPS * t) {
            v.push(format!("tau={t} exceeds alpha/8={}", a / 8.0));
        }
        if !(a > 0.0 && a <= z / (24.0 * k1)) {
            v.push(format!("alpha={a} exceeds zeta/(24(k+1))={}", z / (24.0 * k1)));
        }
        if self.exact_threshold > EXACT_CAP {
            v.push(format!("exact_threshold={} exceeds {EXACT_CAP}", self.exact_threshold));
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Input(v.join("; ")))
        }
    }

    /// `α_b` under the configured schedule.
    pub fn alpha_at(&self, b: usize) -> f64 {
        match self.schedule {
            Schedule::Constant => self.alpha,
            Schedule::Squaring => {
                let e = self.k.saturating_sub(b).min(60) as i32;
                self.alpha.powf(2f64.powi(e))
            }
        }
    }

    /// Minimum degree required of the host.
    pub fn degree_threshold(&self, n: usize) -> f64 {
        (1.0 + 1.0 / (self.k + 1) as f64 + self.zeta) * n as f64
    }

    fn expansion_params(&self, size: usize, seed: u64) -> ExpansionParams {
        let mode = if size <= self.exact_threshold {
            CheckMode::Exact
        } else {
            CheckMode::Sampled { trials: self.sampled_trials, seed }
        };
        ExpansionParams { nu: self.nu, tau: self.tau, mode }
    }
}

/// Pass/fail of one numeric claim together with the measured margin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: String) -> Self {
        Check { name: name.into(), pass, detail }
    }
}

/// Result of cleaning a sparse cut.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CleanedCut {
    pub v1: VertexSet,
    pub v2: VertexSet,
    pub x1_moved: VertexSet,
    pub x2_moved: VertexSet,
    pub x1_gained: VertexSet,
    pub x2_gained: VertexSet,
    pub alpha_achieved: f64,
    pub hypotheses: Vec<Check>,
    pub conclusions: Vec<Check>,
}

impl CleanedCut {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|c| c.pass)
    }

    pub fn conclusions_hold(&self) -> bool {
        self.conclusions.iter().all(|c| c.pass)
    }
}

/// Cleans a cut `(X₁, X₂)` of `G[X]`; fails if any hypothesis is violated.
pub fn clean_cut(g: &Digraph, x: &VertexSet, cut: &CutCertificate, k: usize, zeta: f64, alpha: f64) -> Result<CleanedCut> {
    let c = clean_cut_unchecked(g, x, cut, k, zeta, alpha);
    if c.hypotheses_hold() {
        Ok(c)
    } else {
        let failed: Vec<String> =
            c.hypotheses.iter().filter(|h| !h.pass).map(|h| format!("{} ({})", h.name, h.detail)).collect();
        Err(Error::Precondition(format!("clean_cut hypotheses failed: {}", failed.join("; "))))
    }
}

/// Cleans a cut and reports hypotheses and conclusions without failing.
///
/// `X′ᵢ` holds the vertices of `Xᵢ` with `d(v,Xᵢ) ≤ |Xᵢ| + (1/(k+1)+ζ−9(k+1)α)n`;
/// those of them with large degree into `X₂ ∖ (X′₁∪X′₂)` form `X″₂`, the rest
/// `X″₁`, and `Vᵢ = (Xᵢ ∖ X′ᵢ) ∪ X″ᵢ`.
pub fn clean_cut_unchecked(
    g: &Digraph,
    x: &VertexSet,
    cut: &CutCertificate,
    k: usize,
    zeta: f64,
    alpha: f64,
) -> CleanedCut {
    let n = g.n() as f64;
    let k1 = (k + 1) as f64;
    let x1 = cut.x1.intersection(x);
    let x2 = cut.x2.intersection(x);
    let base = 1.0 / k1 + zeta;

    let mut hyp = Vec::new();
    let dg = g.min_degree() as f64;
    hyp.push(Check::new(
        "host degree",
        dg + EPS >= (1.0 + base) * n,
        format!("delta(G)={dg}, need {:.2}", (1.0 + base) * n),
    ));
    hyp.push(Check::new(
        "alpha bound",
        alpha < zeta / (24.0 * k1),
        format!("alpha={alpha}, need < {:.5}", zeta / (24.0 * k1)),
    ));
    let xs = x.len() as f64;
    hyp.push(Check::new(
        "(a)",
        xs > (1.0 / k1 + zeta / 2.0) * n,
        format!("|X|={xs}, need > {:.2}", (1.0 / k1 + zeta / 2.0) * n),
    ));
    let dx = g.min_degree_within(x) as f64;
    hyp.push(Check::new(
        "(b)",
        dx + EPS >= (1.0 + base - alpha) * xs,
        format!("delta(G[X])={dx}, need {:.2}", (1.0 + base - alpha) * xs),
    ));
    let low = x.iter().filter(|&v| (g.degree_into(v, x) as f64) + EPS < xs + (base - alpha) * n).count();
    hyp.push(Check::new(
        "(c)",
        low as f64 <= alpha * alpha * n + EPS,
        format!("{low} low-degree vertices, allowed {:.3}", alpha * alpha * n),
    ));
    let e12 = g.e_plus(&x1, &x2) as f64;
    let denom = (x1.len() * x2.len()) as f64;
    hyp.push(Check::new(
        "input cut alpha^2-sparse",
        !x1.is_empty() && !x2.is_empty() && e12 <= alpha * alpha * denom + EPS,
        format!("e+={e12}, allowed {:.3}", alpha * alpha * denom),
    ));

    let moved_thr = |xi: &VertexSet| xi.len() as f64 + (base - 9.0 * k1 * alpha) * n;
    let x1p = VertexSet::from_iter(g.n(), x1.iter().filter(|&v| (g.degree_into(v, &x1) as f64) <= moved_thr(&x1) + EPS));
    let x2p = VertexSet::from_iter(g.n(), x2.iter().filter(|&v| (g.degree_into(v, &x2) as f64) <= moved_thr(&x2) + EPS));
    let moved = x1p.union(&x2p);
    let x2_core = x2.difference(&moved);
    let pp_thr = (1.0 + base - alpha) * x2.len() as f64 - alpha * n / (6.0 * k1);
    let x2pp = VertexSet::from_iter(g.n(), moved.iter().filter(|&v| (g.degree_into(v, &x2_core) as f64) + EPS >= pp_thr));
    let x1pp = moved.difference(&x2pp);
    let v1 = x1.difference(&x1p).union(&x1pp);
    let v2 = x2.difference(&x2p).union(&x2pp);

    let e = g.e_plus(&v1, &v2) as f64;
    let d = (v1.len() * v2.len()) as f64;
    let alpha_achieved = if d > 0.0 { e / d } else { f64::INFINITY };
    let mut con = Vec::new();
    for (name, vi) in [("V1", &v1), ("V2", &v2)] {
        let s = vi.len() as f64;
        con.push(Check::new(
            &format!("(i) {name}"),
            s > (1.0 / k1 + zeta / 2.0) * n,
            format!("|{name}|={s}, need > {:.2}", (1.0 / k1 + zeta / 2.0) * n),
        ));
        let dv = g.min_degree_within(vi) as f64;
        let need = (1.0 + base - 10.0 * k1 * alpha) * s;
        con.push(Check::new(&format!("(ii) {name}"), dv + EPS >= need, format!("delta={dv}, need {need:.2}")));
        let bad = vi
            .iter()
            .filter(|&v| (g.degree_into(v, vi) as f64) + EPS < s + (base - 10.0 * k1 * alpha) * n)
            .count();
        con.push(Check::new(
            &format!("(iii) {name}"),
            bad as f64 <= alpha * n + EPS,
            format!("{bad} exceptions, allowed {:.2}", alpha * n),
        ));
    }
    con.push(Check::new(
        "alpha-sparse",
        alpha_achieved <= alpha + EPS,
        format!("achieved {alpha_achieved:.5}, allowed {alpha}"),
    ));
    CleanedCut {
        v1,
        v2,
        x1_moved: x1p,
        x2_moved: x2p,
        x1_gained: x1pp,
        x2_gained: x2pp,
        alpha_achieved,
        hypotheses: hyp,
        conclusions: con,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditAction {
    FrozenExpander,
    FrozenSampled,
    Split,
    SplitSkippedBudget,
    Unresolved,
}

/// One step of the procedure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditEntry {
    pub round: usize,
    pub class_size: usize,
    pub action: AuditAction,
    /// Sparsity level used to search for the cut.
    pub alpha_level: f64,
    /// Sides in order, when the class was split.
    pub first: Option<VertexSet>,
    pub second: Option<VertexSet>,
    pub raw_alpha: Option<f64>,
    pub cleaned: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairCount {
    pub i: usize,
    pub j: usize,
    pub e_plus: usize,
    pub e_minus: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructurePartition {
    pub n: usize,
    pub classes: Vec<VertexSet>,
    pub verdicts: Vec<ExpansionVerdict>,
    pub pair_counts: Vec<PairCount>,
    pub audit: Vec<AuditEntry>,
    pub rounds: usize,
    pub flags: Vec<String>,
}

impl StructurePartition {
    /// Wraps classes given from outside; verdicts are computed with `p`.
    pub fn from_classes(g: &Digraph, classes: Vec<VertexSet>, p: &DecompositionParams) -> Self {
        let verdicts = classes.iter().map(|c| class_verdict(g, c, p, &[])).collect();
        StructurePartition {
            n: g.n(),
            pair_counts: pair_counts(g, &classes),
            classes,
            verdicts,
            audit: Vec::new(),
            rounds: 0,
            flags: Vec::new(),
        }
    }

    pub fn t(&self) -> usize {
        self.classes.len()
    }

    /// Class index of every vertex.
    pub fn labels(&self) -> Vec<usize> {
        let mut l = vec![usize::MAX; self.n];
        for (i, c) in self.classes.iter().enumerate() {
            for v in c.iter() {
                l[v] = i;
            }
        }
        l
    }
}

pub fn pair_counts(g: &Digraph, classes: &[VertexSet]) -> Vec<PairCount> {
    let mut out = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let c = g.cross_counts(&classes[i], &classes[j]);
            out.push(PairCount { i, j, e_plus: c.forward, e_minus: c.backward });
        }
    }
    out
}

fn class_verdict(g: &Digraph, class: &VertexSet, p: &DecompositionParams, hints: &[VertexSet]) -> ExpansionVerdict {
    let (h, map) = g.induced(class);
    let local_hints: Vec<VertexSet> = hints
        .iter()
        .map(|s| VertexSet::from_iter(h.n(), map.iter().enumerate().filter(|(_, &v)| s.contains(v)).map(|(i, _)| i)))
        .collect();
    let ep = p.expansion_params(h.n(), p.seed ^ class.first().unwrap_or(0) as u64);
    if h.n() < 2 {
        return ExpansionVerdict { outcome: ExpansionOutcome::Expander, checked_sets: 0, exact: true };
    }
    certify_expander_with_hints(&h, &ep, &local_hints).expect("mode chosen within caps")
}

enum ClassStep {
    Frozen(ExpansionVerdict),
    Split { first: VertexSet, second: VertexSet, raw_alpha: f64, cleaned: bool, notes: Vec<String> },
    Stuck { verdict: ExpansionVerdict, notes: Vec<String> },
}

fn lift(map: &[usize], n: usize, s: &VertexSet) -> VertexSet {
    VertexSet::from_iter(n, s.iter().map(|i| map[i]))
}

fn process_class(g: &Digraph, class: &VertexSet, p: &DecompositionParams, round: usize) -> ClassStep {
    let (h, map) = g.induced(class);
    let level = p.alpha_at(round);
    let clean_alpha = p.alpha_at(round + 1);
    let budget = CutBudget {
        exact_cap: p.exact_threshold,
        restarts: p.restarts,
        seed: p.seed.wrapping_add(round as u64 * 7919 + class.first().unwrap_or(0) as u64),
    };
    match find_sparse_cut(&h, level, &budget) {
        CutOutcome::Found(c) => {
            // orient so the side with fewer edges into the other comes first
            let c = if g.e_plus(&lift(&map, g.n(), &c.x2), &lift(&map, g.n(), &c.x1)) < c.e_forward {
                c.swapped(&h)
            } else {
                c
            };
            let x1 = lift(&map, g.n(), &c.x1);
            let x2 = lift(&map, g.n(), &c.x2);
            let host_cut = CutCertificate { x1: x1.clone(), x2: x2.clone(), e_forward: c.e_forward, alpha_achieved: c.alpha_achieved };
            let cleaned = clean_cut_unchecked(g, class, &host_cut, p.k, p.zeta, clean_alpha);
            let mut notes = Vec::new();
            if cleaned.hypotheses_hold() && !cleaned.v1.is_empty() && !cleaned.v2.is_empty() {
                if !cleaned.conclusions_hold() {
                    notes.push("cleaned cut misses a conclusion".into());
                }
                ClassStep::Split { first: cleaned.v1, second: cleaned.v2, raw_alpha: c.alpha_achieved, cleaned: true, notes }
            } else {
                let failed: Vec<String> = cleaned.hypotheses.iter().filter(|h| !h.pass).map(|h| h.name.clone()).collect();
                notes.push(format!("clean-up hypotheses failed ({}); raw cut used", failed.join(", ")));
                ClassStep::Split { first: x1, second: x2, raw_alpha: c.alpha_achieved, cleaned: false, notes }
            }
        }
        CutOutcome::NoneFound { best, proven } => {
            let hints: Vec<VertexSet> = best.iter().flat_map(|b| [b.x1.clone(), b.x2.clone()]).map(|s| lift(&map, g.n(), &s)).collect();
            let verdict = class_verdict(g, class, p, &hints);
            if verdict.is_violator() {
                let mut notes = vec!["no sparse cut found but the expander check failed".to_string()];
                if !proven {
                    notes.push("cut search was heuristic".into());
                }
                ClassStep::Stuck { verdict, notes }
            } else {
                ClassStep::Frozen(verdict)
            }
        }
    }
}

/// Partitions `V(G)` into at most `k` ordered classes.
pub fn decompose(g: &Digraph, p: &DecompositionParams) -> Result<StructurePartition> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Input("empty digraph".into()));
    }
    let mut flags = Vec::new();
    let need = p.degree_threshold(n);
    if (g.min_degree() as f64) + EPS < need {
        if p.enforce_degree_precondition {
            return Err(Error::Precondition(format!(
                "min degree {} is below (1+1/(k+1)+zeta)n = {need:.2}",
                g.min_degree()
            )));
        }
        flags.push(format!("degree precondition relaxed: delta={} < {need:.2}", g.min_degree()));
    }
    for v in p.violations() {
        flags.push(format!("parameter: {v}"));
    }

    struct Slot {
        set: VertexSet,
        verdict: Option<ExpansionVerdict>,
    }
    let mut slots = vec![Slot { set: g.vertex_set(), verdict: None }];
    let mut audit = Vec::new();
    let mut rounds = 0;
    for round in 0..p.k.saturating_sub(1) {
        let open: Vec<usize> = (0..slots.len()).filter(|&i| slots[i].verdict.is_none()).collect();
        if open.is_empty() {
            break;
        }
        rounds = round + 1;
        let steps: Vec<ClassStep> = open.par_iter().map(|&i| process_class(g, &slots[i].set, p, round)).collect();
        let mut count = slots.len();
        let mut next: Vec<Slot> = Vec::new();
        let mut steps = steps.into_iter();
        let level = p.alpha_at(round);
        for (i, slot) in slots.into_iter().enumerate() {
            if slot.verdict.is_some() {
                next.push(slot);
                continue;
            }
            debug_assert!(open.contains(&i));
            let entry = |action, first, second, raw_alpha, cleaned, notes| AuditEntry {
                round,
                class_size: slot.set.len(),
                action,
                alpha_level: level,
                first,
                second,
                raw_alpha,
                cleaned,
                notes,
            };
            match steps.next().expect("one step per open class") {
                ClassStep::Frozen(v) => {
                    let action = if v.exact { AuditAction::FrozenExpander } else { AuditAction::FrozenSampled };
                    audit.push(entry(action, None, None, None, false, vec![]));
                    next.push(Slot { set: slot.set, verdict: Some(v) });
                }
                ClassStep::Split { first, second, raw_alpha, cleaned, notes } => {
                    if count + 1 > p.k {
                        audit.push(entry(AuditAction::SplitSkippedBudget, Some(first), Some(second), Some(raw_alpha), cleaned, notes));
                        next.push(slot);
                        continue;
                    }
                    count += 1;
                    audit.push(entry(AuditAction::Split, Some(first.clone()), Some(second.clone()), Some(raw_alpha), cleaned, notes));
                    next.push(Slot { set: first, verdict: None });
                    next.push(Slot { set: second, verdict: None });
                }
                ClassStep::Stuck { verdict, notes } => {
                    audit.push(entry(AuditAction::Unresolved, None, None, None, false, notes));
                    flags.push(format!("class of size {} is neither split nor an expander", slot.set.len()));
                    next.push(Slot { set: slot.set, verdict: Some(verdict) });
                }
            }
        }
        slots = next;
    }
    // final certificates for classes still open when the budget ran out
    let mut verdicts = Vec::with_capacity(slots.len());
    let mut classes = Vec::with_capacity(slots.len());
    for s in slots {
        let v = match s.verdict {
            Some(v) => v,
            None => {
                let v = class_verdict(g, &s.set, p, &[]);
                audit.push(AuditEntry {
                    round: rounds,
                    class_size: s.set.len(),
                    action: if v.is_violator() {
                        AuditAction::Unresolved
                    } else if v.exact {
                        AuditAction::FrozenExpander
                    } else {
                        AuditAction::FrozenSampled
                    },
                    alpha_level: p.alpha_at(rounds),
                    first: None,
                    second: None,
                    raw_alpha: None,
                    cleaned: false,
                    notes: vec!["final check".into()],
                });
                if v.is_violator() {
                    flags.push(format!("class of size {} failed its final expander check", s.set.len()));
                }
                v
            }
        };
        verdicts.push(v);
        classes.push(s.set);
    }
    Ok(StructurePartition { n, pair_counts: pair_counts(g, &classes), classes, verdicts, audit, rounds, flags })
}

/// Clause-by-clause check of a partition, recomputed from the digraph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionReport {
    pub clause1: Check,
    pub clause2_expansion: Check,
    pub clause2_degree: Check,
    pub clause3: Check,
    pub clause4: Check,
    pub verdicts: Vec<ExpansionVerdict>,
}

impl PartitionReport {
    pub fn clause2(&self) -> bool {
        self.clause2_expansion.pass && self.clause2_degree.pass
    }

    pub fn all_pass(&self) -> bool {
        self.clause1.pass && self.clause2() && self.clause3.pass && self.clause4.pass
    }
}

/// Re-derives every numeric claim about `classes` from scratch.
///
/// Expansion is exact for classes up to `p.exact_threshold` vertices and
/// sampled above; an inconclusive sampled check counts as a pass.
pub fn verify_partition(g: &Digraph, classes: &[VertexSet], p: &DecompositionParams) -> PartitionReport {
    let n = g.n() as f64;
    let k1 = (p.k + 1) as f64;
    let t = classes.len();
    let mut cover = VertexSet::empty(g.n());
    let mut disjoint = true;
    for c in classes {
        disjoint &= cover.is_disjoint(c);
        cover.union_with(c);
    }
    let is_partition = disjoint && cover.len() == g.n() && classes.iter().all(|c| !c.is_empty());

    let min_size = classes.iter().map(|c| c.len()).min().unwrap_or(0);
    let need1 = (1.0 / k1 + p.zeta / 2.0) * n;
    let clause1 = Check::new(
        "(1) class sizes",
        is_partition && t <= p.k && min_size as f64 + EPS >= need1,
        format!("t={t}, min |V_i|={min_size}, need >= {need1:.2}; partition={is_partition}"),
    );

    let verdicts: Vec<ExpansionVerdict> = classes.par_iter().map(|c| class_verdict(g, c, p, &[])).collect();
    let bad: Vec<usize> = (0..t).filter(|&i| verdicts[i].is_violator()).collect();
    let clause2_expansion = Check::new(
        "(2) expansion",
        bad.is_empty(),
        format!(
            "violating classes {:?}; exact for {}/{} classes",
            bad,
            verdicts.iter().filter(|v| v.exact).count(),
            t
        ),
    );
    let mut worst = f64::INFINITY;
    let mut deg_ok = true;
    for c in classes {
        let s = c.len() as f64;
        let d = g.min_degree_within(c) as f64;
        let need = (1.0 + 1.0 / k1 + p.zeta / 2.0) * s;
        deg_ok &= d + EPS >= need;
        worst = worst.min(d - need);
    }
    let clause2_degree = Check::new("(2) degree", deg_ok, format!("worst margin {worst:.2}"));

    let pcs = pair_counts(g, classes);
    let need3 = n * n / (k1 * k1);
    let min3 = pcs.iter().map(|c| c.e_minus).min();
    let clause3 = Check::new(
        "(3) backward density",
        t < 2 || pcs.iter().all(|c| c.e_minus as f64 > need3),
        match min3 {
            Some(m) => format!("min e-(V_i,V_j)={m}, need > {need3:.1}"),
            None => "vacuous".into(),
        },
    );
    let sum_plus: usize = pcs.iter().map(|c| c.e_plus).sum();
    let sum_prod: usize = (0..t).flat_map(|i| (i + 1..t).map(move |j| (i, j))).map(|(i, j)| classes[i].len() * classes[j].len()).sum();
    let clause4 = Check::new(
        "(4) forward sparsity",
        t < 2 || sum_plus as f64 <= p.alpha * sum_prod as f64 + EPS,
        format!("sum e+={sum_plus}, allowed {:.2}", p.alpha * sum_prod as f64),
    );
    PartitionReport { clause1, clause2_expansion, clause2_degree, clause3, clause4, verdicts }
}

/// Reverses the class order, so that `e⁺` is dense from earlier to later classes.
pub fn reverse_for_embedding(sp: &StructurePartition) -> StructurePartition {
    let mut r = sp.clone();
    r.classes.reverse();
    r.verdicts.reverse();
    let t = r.classes.len();
    r.pair_counts = sp
        .pair_counts
        .iter()
        .map(|c| PairCount { i: t - 1 - c.j, j: t - 1 - c.i, e_plus: c.e_minus, e_minus: c.e_plus })
        .collect();
    r.pair_counts.sort_by_key(|c| (c.i, c.j));
    r
}

/// Serialized form written by the `partition` subcommand.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionJson {
    pub n: usize,
    pub classes: Vec<Vec<usize>>,
    #[serde(default)]
    pub certificates: serde_json::Value,
    #[serde(default)]
    pub pair_counts: serde_json::Value,
    #[serde(default)]
    pub audit: serde_json::Value,
    #[serde(default)]
    pub report: serde_json::Value,
    #[serde(default)]
    pub flags: Vec<String>,
    /// `"prop21"` for decompose's order, `"embedding"` after reversal.
    #[serde(default = "default_order")]
    pub order: String,
}

fn default_order() -> String {
    "prop21".into()
}

impl PartitionJson {
    pub fn new(sp: &StructurePartition, report: &PartitionReport) -> Self {
        PartitionJson {
            n: sp.n,
            classes: sp.classes.iter().map(|c| c.to_vec()).collect(),
            certificates: serde_json::to_value(&sp.verdicts).unwrap_or_default(),
            pair_counts: serde_json::to_value(&sp.pair_counts).unwrap_or_default(),
            audit: serde_json::to_value(&sp.audit).unwrap_or_default(),
            report: serde_json::to_value(report).unwrap_or_default(),
            flags: sp.flags.clone(),
            order: default_order(),
        }
    }

    /// Class sets, validated against `n`.
    pub fn class_sets(&self) -> Result<Vec<VertexSet>> {
        self.classes.iter().map(|c| VertexSet::from_members(self.n, c).map_err(Error::Input)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_blowup_tt, gen_complete_digraph, part_labels};

    fn relaxed(k: usize) -> DecompositionParams {
        DecompositionParams {
            k,
            zeta: 0.15,
            alpha: 0.01,
            tau: 0.001,
            nu: 1e-7,
            exact_threshold: 20,
            schedule: Schedule::Constant,
            enforce_degree_precondition: false,
            seed: 1,
            restarts: 8,
            sampled_trials: 16,
        }
    }

    #[test]
    fn defaults_satisfy_inequalities() {
        for k in 1..=4 {
            let p = DecompositionParams::new(k, 0.2).unwrap();
            assert!(p.violations().is_empty());
            assert!((p.alpha_at(p.k) - p.alpha).abs() < 1e-15);
            assert!((p.alpha_at(p.k - 1) - p.alpha * p.alpha).abs() < 1e-15);
        }
        let mut p = DecompositionParams::new(2, 0.2).unwrap();
        p.alpha = 0.1;
        assert!(!p.violations().is_empty());
    }

    #[test]
    fn complete_is_one_class() {
        let g = gen_complete_digraph(30);
        let p = DecompositionParams::new(2, 0.2).unwrap();
        let sp = decompose(&g, &p).unwrap();
        assert_eq!(sp.t(), 1);
        let r = verify_partition(&g, &sp.classes, &p);
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn planted_recovery() {
        let sizes = [20, 20, 20];
        let g = gen_blowup_tt(&sizes, 0.95, 0.001, 11);
        let p = relaxed(3);
        let sp = decompose(&g, &p).unwrap();
        assert_eq!(sp.t(), 3);
        let labels = part_labels(&sizes);
        for (i, c) in sp.classes.iter().enumerate() {
            let planted = VertexSet::from_iter(60, (0..60).filter(|&v| labels[v] == i));
            assert!(c.difference(&planted).len() + planted.difference(c).len() <= 2);
        }
        let r = verify_partition(&g, &sp.classes, &p);
        assert!(r.clause1.pass && r.clause3.pass && r.clause4.pass, "{r:?}");
        // ancestor cuts keep their first side first
        let pos = sp.labels();
        for a in sp.audit.iter().filter(|a| a.action == AuditAction::Split) {
            let f = a.first.as_ref().unwrap().iter().map(|v| pos[v]).max().unwrap();
            let s = a.second.as_ref().unwrap().iter().map(|v| pos[v]).min().unwrap();
            assert!(f < s);
        }
    }

    #[test]
    fn degree_precondition() {
        let g = gen_blowup_tt(&[25, 25], 0.95, 0.0, 2);
        let p = DecompositionParams::new(2, 0.2).unwrap();
        assert!(matches!(decompose(&g, &p), Err(Error::Precondition(_))));
    }

    #[test]
    fn clean_cut_nothing_to_do() {
        // two complete blocks joined by all edges from block 2 to block 1;
        // with k = 3 every vertex clears the moved-set threshold
        let g = gen_blowup_tt(&[12, 12], 1.0, 0.0, 0);
        let x = g.vertex_set();
        let cut = CutCertificate::from_side(&g, VertexSet::from_iter(24, 0..12));
        let c = clean_cut_unchecked(&g, &x, &cut, 3, 0.1, 0.001);
        assert!(c.x1_moved.is_empty() && c.x2_moved.is_empty());
        assert_eq!(c.v1, cut.x1);
        assert_eq!(c.v2, cut.x2);
        let again = CutCertificate::from_side(&g, c.v1.clone());
        let c2 = clean_cut_unchecked(&g, &x, &again, 3, 0.1, 0.001);
        assert_eq!((c2.v1, c2.v2), (c.v1, c.v2));
    }

    #[test]
    fn clean_cut_moves_misplaced_vertex() {
        // vertex 0 sits in X₁ but is joined only to X₂, by double edges
        let n = 24;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                let (a, b) = (u < 12, v < 12);
                let keep = if u == 0 || v == 0 {
                    let other = if u == 0 { v } else { u };
                    other >= 12
                } else {
                    a == b || (!a && b)
                };
                if keep {
                    edges.push((u, v));
                }
            }
        }
        let g = Digraph::from_edge_list(n, &edges).unwrap();
        let x = g.vertex_set();
        let cut = CutCertificate::from_side(&g, VertexSet::from_iter(n, 0..12));
        let c = clean_cut_unchecked(&g, &x, &cut, 3, 0.1, 0.001);
        assert!(c.x1_moved.contains(0));
        assert!(c.x2_gained.contains(0));
        assert!(c.v2.contains(0) && !c.v1.contains(0));
    }

    #[test]
    fn verify_negative_control() {
        let sizes = [20, 20, 20];
        let g = gen_blowup_tt(&sizes, 0.95, 0.001, 11);
        let p = relaxed(3);
        let mut classes: Vec<VertexSet> = (0..3).map(|i| VertexSet::from_iter(60, i * 20..(i + 1) * 20)).collect();
        let extra = VertexSet::from_iter(60, 10..20);
        classes[0] = VertexSet::from_iter(60, 0..10);
        classes.insert(1, extra);
        let r = verify_partition(&g, &classes, &p);
        assert!(!r.clause1.pass || !r.clause2());
    }

    #[test]
    fn reversal() {
        let g = gen_blowup_tt(&[20, 20, 20], 0.95, 0.0, 3);
        let p = relaxed(3);
        let sp = decompose(&g, &p).unwrap();
        let r = reverse_for_embedding(&sp);
        for pc in &r.pair_counts {
            assert!(pc.e_plus > pc.e_minus);
        }
        assert_eq!(reverse_for_embedding(&r).classes, sp.classes);
        let one = StructurePartition::from_classes(&g, vec![g.vertex_set()], &p);
        assert_eq!(reverse_for_embedding(&one).classes, one.classes);
    }
}
