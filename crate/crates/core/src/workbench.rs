//! Experiment configs, verification suites and result files.
//!
//! A config lists suites; each suite expands into [`Trial`]s, every trial is
//! a self-contained JSON value that regenerates its instance, and each trial
//! yields one [`TrialRecord`]. Results go to one CSV per suite plus
//! `summary.json`:
//!
//! ```text
//! suite,n,params,seed,outcome,millis,artifact
//! two_factor,12,"{""trial"":""two_factor"",...}",4711,pass,3,artifacts/two_factor_0000.json
//! ```

use crate::decomposition::{decompose, DecompositionParams};
use crate::embedding::{
    check_embedding, embed_hamilton_orientation, exact_embed, pancyclic_suite, two_factor, CellOutcome,
    EmbedParams, OracleOptions, OracleResult, PancyclicOptions, PatternRef,
};
use crate::error::{Error, Result};
use crate::expansion::{sparse_or_expander, sparse_or_expander_unchecked, CertificateJson, Dichotomy, DichotomyOptions};
use crate::generators::{gen_blowup_tt, gen_random_min_degree, gen_split_cliques, rng};
use crate::graph::Digraph;
use crate::pattern::{CyclePattern, PathPattern};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

/// Environment variable holding the worker count for [`run`].
pub const WORKERS_ENV: &str = "HAMORIENT_WORKERS";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    pub suites: Vec<SuiteConfig>,
    #[serde(default = "default_deadline")]
    pub deadline_ms: u64,
    /// Write a JSON artifact per trial that produced one.
    #[serde(default = "yes")]
    pub artifacts: bool,
}

fn default_deadline() -> u64 {
    10_000
}
fn yes() -> bool {
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Cycle,
    Path,
    #[default]
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GhMode {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    #[default]
    Planted,
    Random,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "suite")]
pub enum SuiteConfig {
    GhouilaHouri {
        max_n: usize,
        mode: GhMode,
        #[serde(default)]
        claim: Claim,
        /// Add the split-cliques negative control.
        #[serde(default)]
        control: bool,
    },
    MainTheorem {
        n_grid: Vec<usize>,
        eta: f64,
        pattern_sample: usize,
        instances: usize,
        seed: u64,
        #[serde(default)]
        family: Family,
    },
    Dichotomy {
        n: usize,
        trials: usize,
        eta: f64,
        alpha: f64,
        tau: f64,
        seed: u64,
        /// Negative control: `δ = n`, below the hypothesis.
        #[serde(default)]
        broken: bool,
    },
    Pancyclicity {
        n_grid: Vec<usize>,
        k_grid: Vec<usize>,
        gamma: f64,
        instances: usize,
        seed: u64,
        /// Add the blow-up witness absence check per `(n, k)`.
        #[serde(default = "yes")]
        g1: bool,
    },
    TwoFactor {
        n_grid: Vec<usize>,
        k_grid: Vec<usize>,
        trials: usize,
        seed: u64,
        /// Add the blow-up witness sitting one below the threshold.
        #[serde(default = "yes")]
        tightness: bool,
    },
}

impl SuiteConfig {
    pub fn name(&self) -> &'static str {
        match self {
            SuiteConfig::GhouilaHouri { .. } => "ghouila_houri",
            SuiteConfig::MainTheorem { .. } => "main_theorem",
            SuiteConfig::Dichotomy { .. } => "dichotomy",
            SuiteConfig::Pancyclicity { .. } => "pancyclicity",
            SuiteConfig::TwoFactor { .. } => "two_factor",
        }
    }
}

/// One trial; its JSON form is the reproducer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "trial")]
pub enum TrialSpec {
    GhExhaustive { n: usize },
    GhSampled { n: usize, claim: Claim, seed: u64 },
    GhControl { n: usize },
    MainTheorem { n: usize, eta: f64, family: Family, patterns: usize, seed: u64 },
    Dichotomy { n: usize, degree: usize, eta: f64, alpha: f64, tau: f64, seed: u64, asserting: bool },
    Pancyclicity { n: usize, k: usize, gamma: f64, seed: u64 },
    G1Absence { n: usize, k: usize },
    TwoFactor { n: usize, k: usize, seed: u64 },
    TwoFactorTightness { n: usize, k: usize },
}

impl TrialSpec {
    pub fn n(&self) -> usize {
        match *self {
            TrialSpec::GhExhaustive { n }
            | TrialSpec::GhSampled { n, .. }
            | TrialSpec::GhControl { n }
            | TrialSpec::MainTheorem { n, .. }
            | TrialSpec::Dichotomy { n, .. }
            | TrialSpec::Pancyclicity { n, .. }
            | TrialSpec::G1Absence { n, .. }
            | TrialSpec::TwoFactor { n, .. }
            | TrialSpec::TwoFactorTightness { n, .. } => n,
        }
    }

    pub fn seed(&self) -> u64 {
        match *self {
            TrialSpec::GhSampled { seed, .. }
            | TrialSpec::MainTheorem { seed, .. }
            | TrialSpec::Dichotomy { seed, .. }
            | TrialSpec::Pancyclicity { seed, .. }
            | TrialSpec::TwoFactor { seed, .. } => seed,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trial {
    pub suite: String,
    pub deadline_ms: u64,
    pub spec: TrialSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
    Timeout,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Inconclusive => "inconclusive",
            Outcome::Timeout => "timeout",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub fingerprint: String,
    pub suite: String,
    pub n: usize,
    pub params: String,
    pub seed: u64,
    pub outcome: Outcome,
    pub millis: u128,
    pub detail: String,
    pub artifact: Option<serde_json::Value>,
    /// Set on every failure.
    pub reproducer: Option<String>,
}

/// Exhaustive Ghouila-Houri counts over all digraphs on `n` labelled vertices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GhCounts {
    pub n: usize,
    pub graphs: u64,
    /// `δ ≥ n − 1`.
    pub path_qualifying: u64,
    pub path_violations: u64,
    /// `δ ≥ n` and strongly connected.
    pub cycle_qualifying: u64,
    pub cycle_violations: u64,
    pub timeouts: u64,
}

/// Enumerates all `2^{n(n−1)}` digraphs on `n ≤ 5` vertices and checks both
/// claims with the oracle and the checker.
pub fn ghouila_houri_exhaustive(n: usize) -> Result<GhCounts> {
    if !(3..=5).contains(&n) {
        return Err(Error::Capability(format!("exhaustive enumeration supports 3 <= n <= 5, got {n}")));
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    let opts = OracleOptions { deadline: None, ..OracleOptions::sequential() };
    let path = PathPattern::directed(n);
    let cycle = CyclePattern::directed(n)?;
    let mut c = GhCounts { n, ..GhCounts::default() };
    for mask in 0u64..(1u64 << pairs.len()) {
        c.graphs += 1;
        let mut deg = [0usize; 5];
        for (b, &(u, v)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        let delta = deg[..n].iter().copied().min().unwrap();
        if delta + 1 < n {
            continue;
        }
        let g = Digraph::from_fn(n, |u, v| {
            u != v && mask >> pairs.iter().position(|&p| p == (u, v)).unwrap() & 1 == 1
        });
        c.path_qualifying += 1;
        match exact_embed(&g, PatternRef::Path(&path), &[], &opts)? {
            OracleResult::Found(e) if check_embedding(&g, PatternRef::Path(&path), &e.map, true).valid => {}
            OracleResult::Timeout => c.timeouts += 1,
            _ => c.path_violations += 1,
        }
        if delta >= n && g.is_strongly_connected() {
            c.cycle_qualifying += 1;
            match exact_embed(&g, PatternRef::Cycle(&cycle), &[], &opts)? {
                OracleResult::Found(e) if check_embedding(&g, PatternRef::Cycle(&cycle), &e.map, true).valid => {}
                OracleResult::Timeout => c.timeouts += 1,
                _ => c.cycle_violations += 1,
            }
        }
    }
    Ok(c)
}

/// Balanced blow-up sizes: `k+1` parts of sizes `⌈n/(k+1)⌉` or `⌊n/(k+1)⌋`.
pub fn balanced_sizes(n: usize, k: usize) -> Vec<usize> {
    let parts = k + 1;
    (0..parts).map(|i| n / parts + usize::from(i < n % parts)).collect()
}

fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

fn config_err(path: String, message: &str) -> Error {
    Error::Config { path, message: message.into() }
}

impl ExperimentConfig {
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| config_err(origin.into(), &e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(path.display().to_string(), &format!("cannot read: {e}")))?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn fingerprint(&self) -> String {
        fnv1a(serde_json::to_string(self).expect("config serializes").as_bytes())
    }

    pub fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return Err(config_err("suites".into(), "must not be empty"));
        }
        for (i, s) in self.suites.iter().enumerate() {
            let at = |f: &str| format!("suites[{i}].{f}");
            let nonempty = |v: &Vec<usize>, f: &str| {
                if v.is_empty() {
                    Err(config_err(at(f), "grid must not be empty"))
                } else {
                    Ok(())
                }
            };
            let positive = |x: usize, f: &str| if x == 0 { Err(config_err(at(f), "must be positive")) } else { Ok(()) };
            match s {
                SuiteConfig::GhouilaHouri { max_n, mode, .. } => {
                    match mode {
                        GhMode::Exhaustive if !(3..=5).contains(max_n) => {
                            return Err(config_err(at("max_n"), "exhaustive mode needs 3 <= max_n <= 5"))
                        }
                        GhMode::Sampled { trials, .. } => positive(*trials, "mode.trials")?,
                        _ => {}
                    }
                    if *max_n < 3 {
                        return Err(config_err(at("max_n"), "must be at least 3"));
                    }
                }
                SuiteConfig::MainTheorem { n_grid, eta, pattern_sample, instances, .. } => {
                    nonempty(n_grid, "n_grid")?;
                    positive(*pattern_sample, "pattern_sample")?;
                    positive(*instances, "instances")?;
                    if !(*eta > 0.0 && *eta < 1.0) {
                        return Err(config_err(at("eta"), "must lie in (0,1)"));
                    }
                    if n_grid.iter().any(|&n| n < 4) {
                        return Err(config_err(at("n_grid"), "sizes must be at least 4"));
                    }
                }
                SuiteConfig::Dichotomy { n, trials, .. } => {
                    positive(*trials, "trials")?;
                    if !(2..=14).contains(n) {
                        return Err(config_err(at("n"), "exact mode needs 2 <= n <= 14"));
                    }
                }
                SuiteConfig::Pancyclicity { n_grid, k_grid, gamma, instances, .. } => {
                    nonempty(n_grid, "n_grid")?;
                    nonempty(k_grid, "k_grid")?;
                    positive(*instances, "instances")?;
                    if !(*gamma > 0.0) {
                        return Err(config_err(at("gamma"), "must be positive"));
                    }
                    if k_grid.contains(&0) || n_grid.iter().any(|&n| n < 3) {
                        return Err(config_err(at("k_grid"), "k >= 1 and n >= 3 required"));
                    }
                }
                SuiteConfig::TwoFactor { n_grid, k_grid, trials, .. } => {
                    nonempty(n_grid, "n_grid")?;
                    nonempty(k_grid, "k_grid")?;
                    positive(*trials, "trials")?;
                    if k_grid.contains(&0) {
                        return Err(config_err(at("k_grid"), "k must be positive"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Expands one suite into its trials, in a fixed order.
pub fn expand_suite(s: &SuiteConfig, deadline_ms: u64) -> Vec<Trial> {
    let mut specs = Vec::new();
    match s {
        SuiteConfig::GhouilaHouri { max_n, mode, claim, control } => {
            match mode {
                GhMode::Exhaustive => specs.extend((3..=*max_n).map(|n| TrialSpec::GhExhaustive { n })),
                GhMode::Sampled { trials, seed } => {
                    for i in 0..*trials {
                        specs.push(TrialSpec::GhSampled {
                            n: *max_n,
                            claim: *claim,
                            seed: derive_seed(*seed, i as u64),
                        });
                    }
                }
            }
            if *control {
                specs.push(TrialSpec::GhControl { n: 8 });
            }
        }
        SuiteConfig::MainTheorem { n_grid, eta, pattern_sample, instances, seed, family } => {
            for &n in n_grid {
                for i in 0..*instances {
                    specs.push(TrialSpec::MainTheorem {
                        n,
                        eta: *eta,
                        family: *family,
                        patterns: *pattern_sample,
                        seed: derive_seed(*seed ^ n as u64, i as u64),
                    });
                }
            }
        }
        SuiteConfig::Dichotomy { n, trials, eta, alpha, tau, seed, broken } => {
            let degree = if *broken { *n } else { ((1.0 + eta) * *n as f64).ceil() as usize };
            for i in 0..*trials {
                specs.push(TrialSpec::Dichotomy {
                    n: *n,
                    degree: degree.min(2 * (n - 1)),
                    eta: *eta,
                    alpha: *alpha,
                    tau: *tau,
                    seed: derive_seed(*seed, i as u64),
                    asserting: !broken,
                });
            }
        }
        SuiteConfig::Pancyclicity { n_grid, k_grid, gamma, instances, seed, g1 } => {
            for &n in n_grid {
                for &k in k_grid {
                    for i in 0..*instances {
                        let s = derive_seed(*seed ^ ((n as u64) << 8) ^ k as u64, i as u64);
                        specs.push(TrialSpec::Pancyclicity { n, k, gamma: *gamma, seed: s });
                    }
                    if *g1 && n > k {
                        specs.push(TrialSpec::G1Absence { n, k });
                    }
                }
            }
        }
        SuiteConfig::TwoFactor { n_grid, k_grid, trials, seed, tightness } => {
            for &n in n_grid {
                for &k in k_grid {
                    for i in 0..*trials {
                        let s = derive_seed(*seed ^ ((n as u64) << 8) ^ k as u64, i as u64);
                        specs.push(TrialSpec::TwoFactor { n, k, seed: s });
                    }
                    if *tightness && n >= 2 * (k + 1) {
                        specs.push(TrialSpec::TwoFactorTightness { n, k });
                    }
                }
            }
        }
    }
    specs.into_iter().map(|spec| Trial { suite: s.name().into(), deadline_ms, spec }).collect()
}

struct Verdict {
    outcome: Outcome,
    detail: String,
    artifact: Option<serde_json::Value>,
}

fn verdict(outcome: Outcome, detail: impl Into<String>) -> Verdict {
    Verdict { outcome, detail: detail.into(), artifact: None }
}

/// Runs a single trial; the fingerprint is that of the enclosing config.
pub fn run_trial(trial: &Trial, fingerprint: &str) -> TrialRecord {
    let start = Instant::now();
    let v = match execute(trial) {
        Ok(v) => v,
        Err(Error::Timeout(m)) => verdict(Outcome::Timeout, m),
        Err(e) => verdict(Outcome::Fail, e.to_string()),
    };
    let params = serde_json::to_string(trial).expect("trial serializes");
    let reproducer = (v.outcome == Outcome::Fail).then(|| format!("hamorient experiment --trial '{params}'"));
    TrialRecord {
        fingerprint: fingerprint.into(),
        suite: trial.suite.clone(),
        n: trial.spec.n(),
        params,
        seed: trial.spec.seed(),
        outcome: v.outcome,
        millis: start.elapsed().as_millis(),
        detail: v.detail,
        artifact: v.artifact,
        reproducer,
    }
}

fn execute(trial: &Trial) -> Result<Verdict> {
    let oracle = OracleOptions::default().with_deadline(Some(Duration::from_millis(trial.deadline_ms)));
    match trial.spec {
        TrialSpec::GhExhaustive { n } => {
            let c = ghouila_houri_exhaustive(n)?;
            let bad = c.path_violations + c.cycle_violations;
            let outcome = if bad > 0 {
                Outcome::Fail
            } else if c.timeouts > 0 {
                Outcome::Timeout
            } else {
                Outcome::Pass
            };
            Ok(Verdict {
                outcome,
                detail: format!("{} graphs, {bad} violations", c.graphs),
                artifact: Some(serde_json::to_value(c).unwrap()),
            })
        }
        TrialSpec::GhSampled { n, claim, seed } => {
            let mut notes = Vec::new();
            if claim != Claim::Cycle {
                let g = gen_random_min_degree(n, n - 1, seed).graph;
                let p = PathPattern::directed(n);
                match exact_embed(&g, PatternRef::Path(&p), &[], &oracle)? {
                    OracleResult::Found(e) if check_embedding(&g, PatternRef::Path(&p), &e.map, true).valid => {
                        notes.push("path found".to_string())
                    }
                    OracleResult::Timeout => return Ok(verdict(Outcome::Timeout, "path search timed out")),
                    _ => return Ok(verdict(Outcome::Fail, "no directed Hamilton path with delta >= n-1")),
                }
            }
            if claim != Claim::Path {
                let g = gen_random_min_degree(n, n, seed).graph;
                if !g.is_strongly_connected() {
                    notes.push("cycle claim skipped: not strongly connected".into());
                } else {
                    let c = CyclePattern::directed(n)?;
                    match exact_embed(&g, PatternRef::Cycle(&c), &[], &oracle)? {
                        OracleResult::Found(e) if check_embedding(&g, PatternRef::Cycle(&c), &e.map, true).valid => {
                            notes.push("cycle found".into())
                        }
                        OracleResult::Timeout => return Ok(verdict(Outcome::Timeout, "cycle search timed out")),
                        _ => return Ok(verdict(Outcome::Fail, "no directed Hamilton cycle with delta >= n")),
                    }
                }
            }
            Ok(verdict(Outcome::Pass, notes.join("; ")))
        }
        TrialSpec::GhControl { n } => {
            let g = gen_split_cliques(n);
            let p = PathPattern::directed(n);
            Ok(match exact_embed(&g, PatternRef::Path(&p), &[], &oracle)? {
                OracleResult::None => verdict(Outcome::Pass, "Hamilton path absent as expected"),
                OracleResult::Timeout => verdict(Outcome::Timeout, "control timed out"),
                OracleResult::Found(_) => verdict(Outcome::Fail, "split cliques contain a Hamilton path"),
            })
        }
        TrialSpec::MainTheorem { n, eta, family, patterns, seed } => main_theorem_trial(n, eta, family, patterns, seed, &oracle),
        TrialSpec::Dichotomy { n, degree, eta, alpha, tau, seed, asserting } => {
            let g = gen_random_min_degree(n, degree, seed).graph;
            let opts = DichotomyOptions::default();
            let d = if asserting {
                sparse_or_expander(&g, eta, alpha, tau, &opts)?
            } else {
                sparse_or_expander_unchecked(&g, eta, alpha, tau, &opts)?
            };
            let nu = crate::expansion::dichotomy_nu(eta, alpha, tau);
            Ok(match d {
                Dichotomy::Cut(c) => Verdict {
                    outcome: Outcome::Pass,
                    detail: format!("sparse cut with alpha {:.4}", c.alpha_achieved),
                    artifact: Some(serde_json::to_value(CertificateJson::from_cut(&c, alpha, true, Some(nu), Some(tau))).unwrap()),
                },
                Dichotomy::Expander(v) => Verdict {
                    outcome: if v.exact || !asserting { Outcome::Pass } else { Outcome::Inconclusive },
                    detail: format!("expander ({})", if v.exact { "exact" } else { "sampled" }),
                    artifact: Some(serde_json::to_value(CertificateJson::from_verdict(&v, nu, tau, Some(alpha))).unwrap()),
                },
                Dichotomy::Neither { .. } if asserting => verdict(Outcome::Fail, "neither a sparse cut nor an expander"),
                Dichotomy::Neither { .. } => verdict(Outcome::Inconclusive, "neither outcome, permitted below the degree bound"),
            })
        }
        TrialSpec::Pancyclicity { n, k, gamma, seed } => {
            let target = ((1.0 + 1.0 / (k + 1) as f64 + gamma) * n as f64).ceil() as usize;
            let g = gen_random_min_degree(n, target.min(2 * (n - 1)), seed).graph;
            let opts = PancyclicOptions { deadline_ms: trial.deadline_ms, seed, ..PancyclicOptions::default() };
            let rep = pancyclic_suite(&g, k, gamma, &opts)?;
            let timeouts = rep.cells.iter().filter(|c| c.outcome == CellOutcome::Timeout).count();
            let outcome = if rep.violations > 0 && rep.full_range {
                Outcome::Fail
            } else if rep.violations > 0 {
                Outcome::Inconclusive
            } else if timeouts > 0 {
                Outcome::Timeout
            } else if rep.unresolved > 0 {
                Outcome::Inconclusive
            } else {
                Outcome::Pass
            };
            let missing: Vec<String> = rep
                .cells
                .iter()
                .filter(|c| c.claimed && c.outcome != CellOutcome::Found)
                .map(|c| c.pattern.clone())
                .collect();
            Ok(Verdict {
                outcome,
                detail: format!("{} cells, {} found, {} violations", rep.cells.len(), rep.found, rep.violations),
                artifact: Some(serde_json::json!({
                    "min_degree": rep.min_degree, "degree_ok": rep.degree_ok, "full_range": rep.full_range,
                    "cells": rep.cells.len(), "found": rep.found, "absent": rep.absent,
                    "claimed_missing": missing, "flags": rep.flags,
                })),
            })
        }
        TrialSpec::G1Absence { n, k } => {
            let g = gen_blowup_tt(&balanced_sizes(n, k), 1.0, 0.0, 0);
            let q = n / (k + 1);
            if g.min_degree() + 2 != n + q {
                return Ok(verdict(Outcome::Fail, format!("min degree {} differs from n + {q} - 2", g.min_degree())));
            }
            let opts = OracleOptions { parallel: false, ..oracle.clone() };
            for len in n.div_ceil(k + 1) + 1..=n {
                if len == 2 {
                    if g.double_edge_graph().edge_count() > 0 {
                        return Ok(verdict(Outcome::Fail, "directed cycle of length 2"));
                    }
                    continue;
                }
                let c = CyclePattern::directed(len)?;
                match exact_embed(&g, PatternRef::Cycle(&c), &[], &opts)? {
                    OracleResult::None => {}
                    OracleResult::Timeout => return Ok(verdict(Outcome::Timeout, format!("length {len} timed out"))),
                    OracleResult::Found(_) => return Ok(verdict(Outcome::Fail, format!("directed cycle of length {len}"))),
                }
            }
            Ok(verdict(Outcome::Pass, format!("no directed cycle longer than {}", n.div_ceil(k + 1))))
        }
        TrialSpec::TwoFactor { n, k, seed } => {
            let target = (n + n / (k + 1) - 1).min(2 * (n - 1));
            let g = gen_random_min_degree(n, target, seed).graph;
            let f = two_factor(&g, k, &oracle)?;
            let mut seen = vec![false; n];
            for cyc in &f.cycles {
                for (j, &v) in cyc.iter().enumerate() {
                    if seen[v] || !g.has_edge(v, cyc[(j + 1) % cyc.len()]) {
                        return Ok(verdict(Outcome::Fail, "cycles overlap or use a missing edge"));
                    }
                    seen[v] = true;
                }
            }
            let covered = seen.iter().all(|&s| s);
            Ok(Verdict {
                outcome: if covered && f.cycles.len() <= k { Outcome::Pass } else { Outcome::Fail },
                detail: format!("{} cycles", f.cycles.len()),
                artifact: Some(serde_json::to_value(&f).unwrap()),
            })
        }
        TrialSpec::TwoFactorTightness { n, k } => {
            let g = gen_blowup_tt(&balanced_sizes(n, k), 1.0, 0.0, 0);
            Ok(match two_factor(&g, k, &oracle) {
                Err(Error::Precondition(m)) => verdict(Outcome::Pass, format!("rejected: {m}")),
                Err(e) => return Err(e),
                Ok(_) => verdict(Outcome::Fail, "witness below the threshold was accepted"),
            })
        }
    }
}

fn main_theorem_trial(
    n: usize,
    eta: f64,
    family: Family,
    patterns: usize,
    seed: u64,
    oracle: &OracleOptions,
) -> Result<Verdict> {
    let g = match family {
        Family::Planted => gen_blowup_tt(&[n / 2, n - n / 2], 0.95, 0.001, seed),
        Family::Random => gen_random_min_degree(n, (((1.0 + eta) * n as f64).ceil() as usize).min(2 * (n - 1)), seed).graph,
    };
    if (g.min_degree() as f64) < (1.0 + eta) * n as f64 {
        return Ok(verdict(Outcome::Inconclusive, format!("instance min degree {} below (1+eta)n", g.min_degree())));
    }
    let sp = decompose(&g, &DecompositionParams::desk(3))?;
    let mut r = rng(seed);
    let params = EmbedParams { seed, ..EmbedParams::default() };
    let mut rows = Vec::new();
    let (mut fails, mut open, mut timeouts) = (0, 0, 0);
    for _ in 0..patterns {
        let c = loop {
            let c = CyclePattern::new((0..n).map(|_| r.gen()).collect())?;
            if !c.is_directed() {
                break c;
            }
        };
        let res = embed_hamilton_orientation(&g, &sp, &c, &params);
        let ok = matches!(&res, Ok(o) if check_embedding(&g, PatternRef::Cycle(&c), &o.embedding.map, true).valid);
        let mut cross = "";
        if !ok {
            if n <= 14 {
                match exact_embed(&g, PatternRef::Cycle(&c), &[], oracle)? {
                    OracleResult::Found(_) => {
                        fails += 1;
                        cross = "oracle found a copy";
                    }
                    OracleResult::None => {
                        open += 1;
                        cross = "oracle found none";
                    }
                    OracleResult::Timeout => {
                        timeouts += 1;
                        cross = "oracle timed out";
                    }
                }
            } else {
                open += 1;
            }
        }
        rows.push(serde_json::json!({
            "pattern": c.to_signs(),
            "valid": ok,
            "case": res.as_ref().ok().map(|o| format!("{:?}", o.case)),
            "fallback": res.as_ref().ok().map(|o| o.fallback_used),
            "error": res.as_ref().err().map(|e| e.to_string()),
            "cross_check": cross,
        }));
    }
    let outcome = if fails > 0 {
        Outcome::Fail
    } else if timeouts > 0 {
        Outcome::Timeout
    } else if open > 0 {
        Outcome::Inconclusive
    } else {
        Outcome::Pass
    };
    Ok(Verdict {
        outcome,
        detail: format!("{patterns} patterns, {} classes, {fails} failures, {open} unresolved", sp.t()),
        artifact: Some(serde_json::json!({ "classes": sp.t(), "patterns": rows })),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub csv: String,
    pub trials: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub timeout: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunSummary {
    pub name: String,
    pub fingerprint: String,
    pub suites: Vec<SuiteSummary>,
    /// True when some suite recorded a failure.
    pub failed: bool,
}

fn workers() -> Option<usize> {
    std::env::var(WORKERS_ENV).ok().and_then(|s| s.trim().parse().ok()).filter(|&w| w > 0)
}

/// Runs every suite of `cfg`, writing CSVs, artifacts and `summary.json`
/// under `out`.
pub fn run(cfg: &ExperimentConfig, out: &Path) -> Result<RunSummary> {
    cfg.validate()?;
    let io = |p: &Path, e: std::io::Error| config_err(p.display().to_string(), &e.to_string());
    std::fs::create_dir_all(out).map_err(|e| io(out, e))?;
    let fingerprint = cfg.fingerprint();
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(w) = workers() {
            b = b.num_threads(w);
        }
        b.build().map_err(|e| Error::Resource(e.to_string()))?
    };
    let mut suites = Vec::new();
    let mut used: Vec<String> = Vec::new();
    for s in &cfg.suites {
        let trials = expand_suite(s, cfg.deadline_ms);
        let records: Vec<TrialRecord> = pool.install(|| trials.par_iter().map(|t| run_trial(t, &fingerprint)).collect());
        let mut stem = s.name().to_string();
        let dup = used.iter().filter(|u| u.starts_with(s.name())).count();
        if dup > 0 {
            stem = format!("{stem}_{dup}");
        }
        used.push(stem.clone());
        let csv_name = format!("{stem}.csv");
        write_csv(&records, &out.join(&csv_name), out, &stem, cfg.artifacts)?;
        let count = |o| records.iter().filter(|r| r.outcome == o).count();
        suites.push(SuiteSummary {
            suite: s.name().into(),
            csv: csv_name,
            trials: records.len(),
            pass: count(Outcome::Pass),
            fail: count(Outcome::Fail),
            inconclusive: count(Outcome::Inconclusive),
            timeout: count(Outcome::Timeout),
        });
    }
    let summary = RunSummary {
        name: cfg.name.clone(),
        fingerprint,
        failed: suites.iter().any(|s| s.fail > 0),
        suites,
    };
    let path = out.join("summary.json");
    std::fs::write(&path, serde_json::to_string_pretty(&summary).unwrap()).map_err(|e| io(&path, e))?;
    Ok(summary)
}

fn write_csv(records: &[TrialRecord], path: &Path, out: &Path, stem: &str, artifacts: bool) -> Result<()> {
    let err = |e: &dyn std::fmt::Display| config_err(path.display().to_string(), &e.to_string());
    let mut w = csv::Writer::from_path(path).map_err(|e| err(&e))?;
    w.write_record(["suite", "n", "params", "seed", "outcome", "millis", "artifact"]).map_err(|e| err(&e))?;
    for (i, r) in records.iter().enumerate() {
        let mut artifact = String::new();
        if artifacts && (r.artifact.is_some() || r.outcome == Outcome::Fail) {
            let rel: PathBuf = ["artifacts", &format!("{stem}_{i:04}.json")].iter().collect();
            let full = out.join(&rel);
            std::fs::create_dir_all(full.parent().unwrap()).map_err(|e| err(&e))?;
            let body = serde_json::json!({
                "trial": serde_json::from_str::<serde_json::Value>(&r.params).unwrap(),
                "outcome": r.outcome,
                "detail": r.detail,
                "reproducer": r.reproducer,
                "data": r.artifact,
            });
            std::fs::write(&full, serde_json::to_string_pretty(&body).unwrap()).map_err(|e| err(&e))?;
            artifact = rel.to_string_lossy().replace('\\', "/");
        }
        w.write_record([
            r.suite.as_str(),
            &r.n.to_string(),
            &r.params,
            &r.seed.to_string(),
            r.outcome.as_str(),
            &r.millis.to_string(),
            &artifact,
        ])
        .map_err(|e| err(&e))?;
    }
    w.flush().map_err(|e| err(&e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(json: &str) -> Result<ExperimentConfig> {
        ExperimentConfig::from_json(json, "test.json")
    }

    #[test]
    fn empty_grid_is_config_error() {
        let e = cfg(r#"{"name":"x","suites":[{"suite":"two_factor","n_grid":[],"k_grid":[1],"trials":1,"seed":0}]}"#);
        match e {
            Err(Error::Config { path, .. }) => assert_eq!(path, "suites[0].n_grid"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(cfg(r#"{"name":"x","suites":[]}"#), Err(Error::Config { .. })));
        assert!(matches!(cfg("{"), Err(Error::Config { .. })));
    }

    #[test]
    fn small_exhaustive_counts() {
        let c = ghouila_houri_exhaustive(3).unwrap();
        assert_eq!(c.graphs, 64);
        assert_eq!(c.path_violations + c.cycle_violations, 0);
        assert!(c.cycle_qualifying > 0);
    }

    #[test]
    fn trials_reproduce() {
        let t = Trial { suite: "two_factor".into(), deadline_ms: 5000, spec: TrialSpec::TwoFactor { n: 10, k: 1, seed: 9 } };
        let a = run_trial(&t, "f");
        let back: Trial = serde_json::from_str(&a.params).unwrap();
        let b = run_trial(&back, "f");
        assert_eq!(a.outcome, Outcome::Pass);
        assert_eq!(a.outcome, b.outcome);
        assert_eq!(a.artifact, b.artifact);
    }

    #[test]
    fn balanced() {
        assert_eq!(balanced_sizes(14, 2), vec![5, 5, 4]);
        assert_eq!(balanced_sizes(15, 2), vec![5, 5, 5]);
    }

    #[test]
    fn two_suites_write_two_csvs() {
        let dir = tempfile::tempdir().unwrap();
        let c = cfg(r#"{"name":"x","suites":[
            {"suite":"two_factor","n_grid":[10],"k_grid":[1,2],"trials":2,"seed":1},
            {"suite":"dichotomy","n":8,"trials":3,"eta":0.3,"alpha":0.3,"tau":0.25,"seed":2}]}"#)
        .unwrap();
        let s = run(&c, dir.path()).unwrap();
        assert!(!s.failed, "{s:?}");
        assert!(dir.path().join("two_factor.csv").exists());
        assert!(dir.path().join("dichotomy.csv").exists());
        assert!(dir.path().join("summary.json").exists());
        let first = std::fs::read_to_string(dir.path().join("two_factor.csv")).unwrap();
        run(&c, dir.path()).unwrap();
        let second = std::fs::read_to_string(dir.path().join("two_factor.csv")).unwrap();
        let strip = |s: &str| s.lines().map(|l| l.rsplitn(3, ',').nth(2).unwrap().to_string()).collect::<Vec<_>>();
        assert_eq!(strip(&first), strip(&second));
    }
}
