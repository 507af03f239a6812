//! Directed 2-factors and oriented pancyclicity.

use super::check::{check_embedding, PatternRef};
use super::oracle::{embed_path_between, exact_embed, OracleOptions, OracleResult};
use super::pipeline::{embed_hamilton_orientation, EmbedParams};
use crate::bitset::VertexSet;
use crate::decomposition::{decompose, Check, DecompositionParams};
use crate::error::{Error, Result};
use crate::generators::rng;
use crate::graph::Digraph;
use crate::pattern::{necklaces, CyclePattern};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use std::time::Duration;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwoFactor {
    /// Each cycle lists its vertices in order, `c[i] → c[i+1]`.
    pub cycles: Vec<Vec<usize>>,
    pub claims: Vec<Check>,
}

/// Vertex-disjoint directed cycles covering `V(G)`, at most `k` of them,
/// one Hamilton cycle per strongly connected component.
pub fn two_factor(g: &Digraph, k: usize, opts: &OracleOptions) -> Result<TwoFactor> {
    let n = g.n();
    if k == 0 || n < 2 * (k + 1) {
        return Err(Error::Precondition(format!("need k >= 1 and n >= 2(k+1), got n={n}, k={k}")));
    }
    let q = n / (k + 1);
    let delta = g.min_degree();
    if delta + 1 < n + q {
        return Err(Error::Precondition(format!("min degree {delta} is below n + floor(n/(k+1)) - 1 = {}", n + q - 1)));
    }
    let comps = g.strongly_connected_components();
    let mut claims = Vec::new();
    let mut cycles = Vec::new();
    for (i, h) in comps.iter().enumerate() {
        let size = h.len();
        let dh = g.min_degree_within(h);
        let size_ok = size > q;
        let deg_ok = dh + 1 >= size + q;
        claims.push(Check {
            name: format!("component {i} size"),
            pass: size_ok,
            detail: format!("|H|={size} > {q}"),
        });
        claims.push(Check {
            name: format!("component {i} degree"),
            pass: deg_ok,
            detail: format!("delta(H)={dh} >= {}", size + q - 1),
        });
        if !size_ok || !deg_ok {
            return Err(Error::step("two_factor", format!("component {i} violates the component bounds")));
        }
        let (sub, map) = g.induced(h);
        let c = CyclePattern::directed(size)?;
        match exact_embed(&sub, PatternRef::Cycle(&c), &[], opts)? {
            OracleResult::Found(e) => cycles.push(e.map.iter().map(|&x| map[x]).collect()),
            OracleResult::Timeout => return Err(Error::Timeout(format!("Hamilton cycle in component {i}"))),
            OracleResult::None => {
                return Err(Error::step("two_factor", format!("component {i} of size {size} has no Hamilton cycle")))
            }
        }
    }
    if cycles.len() > k {
        return Err(Error::step("two_factor", format!("{} components exceed k={k}", cycles.len())));
    }
    Ok(TwoFactor { cycles, claims })
}

#[derive(Clone, Debug)]
pub struct PancyclicOptions {
    /// Lengths to test; `None` means `3..=n`.
    pub lengths: Option<Vec<usize>>,
    /// All necklaces are used up to this length, random samples above it.
    pub necklace_cap: usize,
    pub samples: usize,
    /// Lengths up to this use the double-edge route.
    pub short_max: usize,
    pub subset_tries: usize,
    pub decomposition: Option<DecompositionParams>,
    pub embed: EmbedParams,
    pub deadline_ms: u64,
    pub seed: u64,
}

impl Default for PancyclicOptions {
    fn default() -> Self {
        PancyclicOptions {
            lengths: None,
            necklace_cap: 10,
            samples: 16,
            short_max: 6,
            subset_tries: 4,
            decomposition: None,
            embed: EmbedParams::default(),
            deadline_ms: 10_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellOutcome {
    Found,
    /// The oracle proved there is no copy.
    Absent,
    Timeout,
    /// No copy found and the oracle could not run.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PancyclicCell {
    pub length: usize,
    pub pattern: String,
    pub directed: bool,
    /// Whether the theorem asserts this cell.
    pub claimed: bool,
    /// `double_edge`, `odd_extension`, `class_path`, `class_oracle`,
    /// `random_subset` or `oracle`.
    pub method: String,
    pub outcome: CellOutcome,
    pub map: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PancyclicReport {
    pub n: usize,
    pub k: usize,
    pub gamma: f64,
    pub min_degree: usize,
    /// `δ ≥ (1 + 1/(k+1) + γ)n`.
    pub degree_ok: bool,
    /// `δ ≥ ⌊3n/2⌋ − 1`, under which directed cycles are claimed too.
    pub full_range: bool,
    pub cells: Vec<PancyclicCell>,
    pub found: usize,
    pub absent: usize,
    pub unresolved: usize,
    /// Claimed cells proved absent.
    pub violations: usize,
    pub flags: Vec<String>,
}

struct Ctx<'a> {
    g: &'a Digraph,
    opts: &'a PancyclicOptions,
    oracle: OracleOptions,
    star: Digraph,
    star_cycles: HashMap<usize, Option<Vec<usize>>>,
    class: Option<VertexSet>,
}

/// Tests every requested length and orientation class for containment.
pub fn pancyclic_suite(g: &Digraph, k: usize, gamma: f64, opts: &PancyclicOptions) -> Result<PancyclicReport> {
    let n = g.n();
    if k == 0 || !(gamma > 0.0) {
        return Err(Error::Input(format!("need k >= 1 and gamma > 0, got k={k}, gamma={gamma}")));
    }
    let delta = g.min_degree();
    let degree_ok = delta as f64 >= (1.0 + 1.0 / (k + 1) as f64 + gamma) * n as f64 - 1e-9;
    let full_range = n >= 2 && delta + 1 >= 3 * n / 2;
    let mut flags = Vec::new();
    if !degree_ok {
        flags.push("degree condition fails; only the full-range clause can make claims".to_string());
    }
    let oracle = OracleOptions { deadline: Some(Duration::from_millis(opts.deadline_ms)), ..OracleOptions::default() };
    let class = largest_class(g, k, gamma, opts, &mut flags);
    let mut ctx =
        Ctx { g, opts, oracle, star: g.double_edge_graph().to_digraph(), star_cycles: HashMap::new(), class };
    let lengths: Vec<usize> = match &opts.lengths {
        Some(l) => l.iter().copied().filter(|&l| (3..=n).contains(&l)).collect(),
        None => (3..=n).collect(),
    };
    let long_directed = n.div_ceil(k);
    let mut r = rng(opts.seed);
    let mut cells = Vec::new();
    for &len in &lengths {
        for c in patterns(len, opts, &mut r) {
            let directed = c.is_directed();
            let claimed = full_range || (degree_ok && !(directed && len > long_directed));
            let (method, outcome, map) = ctx.cell(&c, &mut r)?;
            cells.push(PancyclicCell {
                length: len,
                pattern: c.to_signs(),
                directed,
                claimed,
                method: method.into(),
                outcome,
                map,
            });
        }
    }
    let count = |o| cells.iter().filter(|c| c.outcome == o).count();
    let (found, absent) = (count(CellOutcome::Found), count(CellOutcome::Absent));
    let unresolved = cells.len() - found - absent;
    let violations = cells.iter().filter(|c| c.claimed && c.outcome == CellOutcome::Absent).count();
    Ok(PancyclicReport {
        n,
        k,
        gamma,
        min_degree: delta,
        degree_ok,
        full_range,
        cells,
        found,
        absent,
        unresolved,
        violations,
        flags,
    })
}

fn patterns(len: usize, opts: &PancyclicOptions, r: &mut impl Rng) -> Vec<CyclePattern> {
    if len <= opts.necklace_cap {
        return necklaces(len);
    }
    let mut set = BTreeSet::new();
    set.insert(CyclePattern::directed(len).unwrap());
    set.insert(CyclePattern::antidirected(len).unwrap_or_else(|_| CyclePattern::directed(len).unwrap()));
    while set.len() < opts.samples.max(2) {
        let c = CyclePattern::new((0..len).map(|_| r.gen()).collect()).unwrap();
        set.insert(c.necklace());
    }
    set.into_iter().collect()
}

fn largest_class(
    g: &Digraph,
    k: usize,
    gamma: f64,
    opts: &PancyclicOptions,
    flags: &mut Vec<String>,
) -> Option<VertexSet> {
    let params = match &opts.decomposition {
        Some(p) => Some(*p),
        None => {
            let zeta = gamma.min(0.5 * (1.0 - 1.0 / (k + 1) as f64));
            DecompositionParams::new(k, zeta).ok().map(|mut p| {
                p.enforce_degree_precondition = false;
                p
            })
        }
    };
    match params.map(|p| decompose(g, &p)) {
        Some(Ok(sp)) => sp.classes.into_iter().max_by_key(|c| c.len()),
        Some(Err(e)) => {
            flags.push(format!("decomposition failed ({e}); mid lengths use the oracle"));
            None
        }
        None => None,
    }
}

type CellResult = (&'static str, CellOutcome, Option<Vec<usize>>);

impl Ctx<'_> {
    fn cell(&mut self, c: &CyclePattern, r: &mut impl Rng) -> Result<CellResult> {
        let len = c.len();
        let attempt = if len <= self.opts.short_max {
            self.short(c)?
        } else if self.class.as_ref().is_some_and(|w| w.len() >= len) {
            self.mid(c)?
        } else if !c.is_directed() {
            self.long(c, r)?
        } else {
            None
        };
        if let Some((method, map)) = attempt {
            if check_embedding(self.g, PatternRef::Cycle(c), &map, false).valid {
                return Ok((method, CellOutcome::Found, Some(map)));
            }
            return Err(Error::step("pancyclic_suite", format!("{method} produced an invalid copy of {c}")));
        }
        Ok(match exact_embed(self.g, PatternRef::Cycle(c), &[], &self.oracle) {
            Ok(OracleResult::Found(e)) => ("oracle", CellOutcome::Found, Some(e.map)),
            Ok(OracleResult::None) => ("oracle", CellOutcome::Absent, None),
            Ok(OracleResult::Timeout) => ("oracle", CellOutcome::Timeout, None),
            Err(Error::Capability(_)) => ("oracle", CellOutcome::Unresolved, None),
            Err(e) => return Err(e),
        })
    }

    /// A cycle on `m` vertices all of whose edges are double edges.
    fn star_cycle(&mut self, m: usize) -> Result<Option<Vec<usize>>> {
        if let Some(c) = self.star_cycles.get(&m) {
            return Ok(c.clone());
        }
        let found = if m == 2 {
            (0..self.g.n())
                .flat_map(|u| (u + 1..self.g.n()).map(move |v| (u, v)))
                .find(|&(u, v)| self.star.has_edge(u, v))
                .map(|(u, v)| vec![u, v])
        } else {
            let d = CyclePattern::directed(m)?;
            match exact_embed(&self.star, PatternRef::Cycle(&d), &[], &self.oracle) {
                Ok(OracleResult::Found(e)) => Some(e.map),
                Ok(_) | Err(Error::Capability(_)) => None,
                Err(e) => return Err(e),
            }
        };
        self.star_cycles.insert(m, found.clone());
        Ok(found)
    }

    fn short(&mut self, c: &CyclePattern) -> Result<Option<(&'static str, Vec<usize>)>> {
        let len = c.len();
        if len % 2 == 0 {
            return Ok(self.star_cycle(len)?.map(|cyc| ("double_edge", cyc)));
        }
        let Some(base) = self.star_cycle(len - 1)? else { return Ok(None) };
        // a position whose two edges agree exists because switches come in pairs
        let Some(i) = (0..len).find(|&i| !c.is_switch(i)) else { return Ok(None) };
        let forward = c.forward(i);
        let m = base.len();
        let on_base = VertexSet::from_iter(self.g.n(), base.iter().copied());
        for rot in 0..m {
            for dir in [1, m - 1] {
                // positions i+1, i+2, …, i−1 follow the base cycle
                let seq: Vec<usize> = (0..m).map(|j| base[(rot + j * dir) % m]).collect();
                let (y, x) = (seq[0], seq[m - 1]);
                let cand = if forward {
                    self.g.out_set(x).intersection(self.g.in_set(y))
                } else {
                    self.g.out_set(y).intersection(self.g.in_set(x))
                };
                if let Some(z) = cand.difference(&on_base).first() {
                    let mut map = vec![0; len];
                    map[i] = z;
                    for (j, &v) in seq.iter().enumerate() {
                        map[(i + 1 + j) % len] = v;
                    }
                    return Ok(Some(("odd_extension", map)));
                }
            }
        }
        Ok(None)
    }

    fn mid(&mut self, c: &CyclePattern) -> Result<Option<(&'static str, Vec<usize>)>> {
        let w = self.class.clone().expect("mid lengths need a class");
        let len = c.len();
        let forbidden = w.complement();
        let path = c.segment(1, len);
        let members: Vec<usize> = w.iter().collect();
        let mut tried = 0;
        'pairs: for &a in &members {
            for &b in &members {
                let ok = if c.forward(0) { self.g.has_edge(a, b) } else { self.g.has_edge(b, a) };
                if a == b || !ok {
                    continue;
                }
                // path positions 1, 2, …, len−1, 0 run from b to a
                if let OracleResult::Found(e) = embed_path_between(self.g, &path, b, a, &forbidden, &self.oracle)? {
                    let mut map = vec![0; len];
                    for (j, &v) in e.map.iter().enumerate() {
                        map[(1 + j) % len] = v;
                    }
                    return Ok(Some(("class_path", map)));
                }
                tried += 1;
                if tried >= 4 {
                    break 'pairs;
                }
            }
        }
        let (sub, back) = self.g.induced(&w);
        match exact_embed(&sub, PatternRef::Cycle(c), &[], &self.oracle) {
            Ok(OracleResult::Found(e)) => Ok(Some(("class_oracle", e.map.iter().map(|&x| back[x]).collect()))),
            Ok(_) | Err(Error::Capability(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn long(&mut self, c: &CyclePattern, r: &mut impl Rng) -> Result<Option<(&'static str, Vec<usize>)>> {
        let n = self.g.n();
        let len = c.len();
        let mut all: Vec<usize> = (0..n).collect();
        for _ in 0..self.opts.subset_tries.max(1) {
            all.shuffle(r);
            let x = VertexSet::from_iter(n, all[..len].iter().copied());
            let (sub, back) = self.g.induced(&x);
            let Some(p) = self.sub_params() else { return Ok(None) };
            let Ok(sp) = decompose(&sub, &p) else { continue };
            if let Ok(out) = embed_hamilton_orientation(&sub, &sp, c, &self.opts.embed) {
                return Ok(Some(("random_subset", out.embedding.map.iter().map(|&v| back[v]).collect())));
            }
        }
        Ok(None)
    }

    fn sub_params(&self) -> Option<DecompositionParams> {
        let mut p = match &self.opts.decomposition {
            Some(p) => *p,
            None => DecompositionParams::new(1, 0.25).ok()?,
        };
        p.enforce_degree_precondition = false;
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_blowup_tt, gen_complete_digraph, gen_random_min_degree};

    #[test]
    fn complete_digraph_single_cycle() {
        let g = gen_complete_digraph(10);
        let f = two_factor(&g, 1, &OracleOptions::default()).unwrap();
        assert_eq!(f.cycles.len(), 1);
        assert_eq!(f.cycles[0].len(), 10);
        assert!(f.claims.iter().all(|c| c.pass));
    }

    #[test]
    fn g1_below_threshold() {
        let g = gen_blowup_tt(&[5, 5, 5], 1.0, 0.0, 0);
        assert_eq!(g.min_degree(), 18);
        assert!(matches!(two_factor(&g, 2, &OracleOptions::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn random_cover() {
        for seed in 0..20 {
            let g = gen_random_min_degree(12, 12 + 4 - 1, seed).graph;
            let f = two_factor(&g, 2, &OracleOptions::default()).unwrap();
            assert!(f.cycles.len() <= 2);
            let mut seen: Vec<usize> = f.cycles.concat();
            seen.sort();
            assert_eq!(seen, (0..12).collect::<Vec<_>>());
            for cyc in &f.cycles {
                for j in 0..cyc.len() {
                    assert!(g.has_edge(cyc[j], cyc[(j + 1) % cyc.len()]));
                }
            }
        }
    }

    #[test]
    fn complete_digraph_pancyclic() {
        let g = gen_complete_digraph(12);
        let rep = pancyclic_suite(&g, 1, 0.1, &PancyclicOptions::default()).unwrap();
        assert_eq!(rep.found, rep.cells.len());
        assert!(rep.cells.iter().any(|c| c.method == "odd_extension"));
        assert!(rep.cells.iter().any(|c| c.method == "double_edge"));
    }

    #[test]
    fn g1_has_no_long_directed_cycle() {
        let g = gen_blowup_tt(&[7, 7], 1.0, 0.0, 0);
        let opts = PancyclicOptions { lengths: Some((8..=14).collect()), necklace_cap: 0, samples: 2, ..Default::default() };
        let rep = pancyclic_suite(&g, 1, 0.05, &opts).unwrap();
        for c in rep.cells.iter().filter(|c| c.directed) {
            assert_eq!(c.outcome, CellOutcome::Absent, "length {}", c.length);
            assert!(!c.claimed);
        }
        assert_eq!(rep.violations, 0);
    }

    #[test]
    fn full_range_small() {
        let g = gen_random_min_degree(8, 11, 5).graph;
        let rep = pancyclic_suite(&g, 1, 0.1, &PancyclicOptions::default()).unwrap();
        assert!(rep.full_range);
        assert_eq!(rep.violations, 0);
        assert_eq!(rep.found, rep.cells.len());
    }

    #[test]
    fn long_lengths_use_random_subsets() {
        let g = gen_blowup_tt(&[10, 10], 0.95, 0.0, 1);
        let opts = PancyclicOptions {
            lengths: Some(vec![16]),
            necklace_cap: 0,
            samples: 4,
            decomposition: Some(DecompositionParams::desk(2)),
            ..Default::default()
        };
        let rep = pancyclic_suite(&g, 1, 0.05, &opts).unwrap();
        let subset: Vec<_> = rep.cells.iter().filter(|c| !c.directed).collect();
        assert!(!subset.is_empty());
        assert!(subset.iter().all(|c| c.outcome == CellOutcome::Found), "{subset:?}");
        assert!(subset.iter().any(|c| c.method == "random_subset"), "{subset:?}");
    }
}
