//! Hamilton cycles of a given orientation in a digraph split into classes
//! `V_1,…,V_t` whose cross edges point forward (`e⁺(V_i,V_j)` large for `i<j`).
//!
//! Every case first fixes which class each position of the cycle goes to,
//! so that each edge of the cycle between two classes runs from the smaller
//! class to the larger one and class `j` receives exactly `|V_j|` positions.
//! The endpoints of those cross edges are then pinned to host vertices
//! (connector edges and sink gadgets), and finally each class is filled by
//! the exact oracle with its residual paths, pins fixed.

use super::check::{check_embedding, CheckReport, Embedding, PatternRef};
use super::connectors::{select_connectors, Direction};
use super::oracle::{embed_template, exact_embed, OracleOptions, OracleResult, Template, TemplateOutcome};
use super::tournament::tt_embed_path;
use crate::bitset::VertexSet;
use crate::decomposition::{reverse_for_embedding, StructurePartition};
use crate::error::{Error, Result};
use crate::generators::rng;
use crate::graph::Digraph;
use crate::num::{ceil_tol, floor_tol};
use crate::pattern::{directed_run_decomposition_case1b, partition_case2, CaseSplit, CyclePattern, PathPattern};
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use std::time::Duration;

const NONE: usize = usize::MAX;
const PIN_NODE_BUDGET: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbedParams {
    pub beta: f64,
    pub rho: f64,
    pub eta: f64,
    /// Case 1(b) block size; by default the smallest `D ≥ max(2,⌊ρn⌋)` whose
    /// blueprint tournament is large enough.
    #[serde(default)]
    pub block_size: Option<usize>,
    /// Number of gadgets when the overshoot is large; default `max(1,⌊η/(12β)⌋)`.
    #[serde(default)]
    pub gadget_cap: Option<usize>,
    /// Whole-graph oracle fallback only for `n` up to this.
    pub oracle_cap: usize,
    pub deadline_ms: u64,
    /// Deadline of each per-class fill.
    pub fill_deadline_ms: u64,
    /// Alternative connector selections before the fallback.
    pub attempts: usize,
    pub seed: u64,
}

impl Default for EmbedParams {
    fn default() -> Self {
        EmbedParams {
            beta: 0.1,
            rho: 0.0025,
            eta: 0.3,
            block_size: None,
            gadget_cap: None,
            oracle_cap: 64,
            deadline_ms: 10_000,
            fill_deadline_ms: 2_000,
            attempts: 16,
            seed: 0,
        }
    }
}

impl EmbedParams {
    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x > 0.0 && x < 1.0;
        if !(ok(self.beta) && ok(self.rho) && ok(self.eta)) {
            return Err(Error::Input("beta, rho and eta must lie in (0,1)".into()));
        }
        if self.rho > self.beta * self.beta / 4.0 + 1e-12 {
            return Err(Error::Input(format!("rho={} exceeds beta^2/4={}", self.rho, self.beta * self.beta / 4.0)));
        }
        if self.attempts == 0 {
            return Err(Error::Input("attempts must be at least 1".into()));
        }
        Ok(())
    }

    fn gadgets_for_large_overshoot(&self) -> usize {
        self.gadget_cap.unwrap_or_else(|| (floor_tol(self.eta / (12.0 * self.beta)).max(0) as usize).max(1))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "case")]
pub enum PipelineCase {
    /// One class: the oracle embeds the whole cycle.
    Single,
    Case1a { ell: usize },
    Case1b { ell: usize, block_size: usize, blocks: usize, tournament: usize },
    Case2 { overshoots: Vec<usize> },
}

/// One cross-class edge of the cycle with its host edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectorRecord {
    pub kind: String,
    pub tail_pos: usize,
    pub head_pos: usize,
    pub tail: usize,
    pub head: usize,
}

/// Imbalance repair at the boundary between classes `s` and `s+1` in Case 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case2Boundary {
    pub s: usize,
    pub overshoot: usize,
    /// Pattern positions of the gadget sinks moved into class `s+1`.
    pub gadgets: Vec<usize>,
    /// First pattern position and length of the directed piece handed to class `s+1`.
    pub handoff: Option<(usize, usize)>,
    /// Whether the gadget positions satisfy the spacing rules literally.
    pub literal_spacing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbedPlan {
    pub case: PipelineCase,
    /// `class_of[i]` is the class receiving pattern position `i`.
    pub class_of: Vec<usize>,
    /// Positions per class; equals the class sizes.
    pub budgets: Vec<usize>,
    /// `(position, vertex)` fixed before the fill.
    pub pins: Vec<(usize, usize)>,
    pub connectors: Vec<ConnectorRecord>,
    pub boundaries: Vec<Case2Boundary>,
    /// Unpinned positions per class, filled by the oracle.
    pub residual: Vec<usize>,
}

impl EmbedPlan {
    /// Residual positions plus pins cover the cycle exactly once.
    pub fn budget_conserved(&self) -> bool {
        self.residual.iter().sum::<usize>() + self.pins.len() == self.class_of.len()
            && self.budgets.iter().sum::<usize>() == self.class_of.len()
    }

    /// Connector edges share no vertex except at a common pinned position.
    pub fn connectors_consistent(&self) -> bool {
        let mut owner = std::collections::HashMap::new();
        self.connectors.iter().all(|c| {
            [(c.tail_pos, c.tail), (c.head_pos, c.head)].iter().all(|&(p, v)| *owner.entry(v).or_insert(p) == p)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineOutcome {
    pub embedding: Embedding,
    pub case: PipelineCase,
    pub plan: Option<EmbedPlan>,
    /// Connector selections tried (0 when the plan could not be built).
    pub attempts: usize,
    pub fallback_used: bool,
    pub flags: Vec<String>,
    pub check: CheckReport,
}

/// Runs the pipeline on the raw output of `decompose` (classes ordered with
/// cross edges pointing backward), reversing the order first.
pub fn embed_hamilton_orientation(
    g: &Digraph,
    sp: &StructurePartition,
    c: &CyclePattern,
    p: &EmbedParams,
) -> Result<PipelineOutcome> {
    let rev = reverse_for_embedding(sp);
    embed_with_classes(g, &rev.classes, c, p)
}

/// Runs the pipeline on classes already in embedding order.
pub fn embed_with_classes(
    g: &Digraph,
    classes: &[VertexSet],
    c: &CyclePattern,
    p: &EmbedParams,
) -> Result<PipelineOutcome> {
    p.validate()?;
    let n = g.n();
    if c.len() != n {
        return Err(Error::Input(format!("pattern has {} positions but G has {n} vertices", c.len())));
    }
    check_partition(n, classes)?;
    let t = classes.len();
    if c.is_directed() && (t >= 2 || !g.is_strongly_connected()) {
        return Err(Error::Precondition(
            "the directed Hamilton cycle is excluded when G is not a single strongly connected class".into(),
        ));
    }
    if t == 1 {
        return single(g, c, p);
    }
    let sizes: Vec<usize> = classes.iter().map(|v| v.len()).collect();
    let draft = match build_draft(c, &sizes, p) {
        Ok(d) => d,
        Err(e) => return fallback(g, c, p, None, 0, vec![e.to_string()], e),
    };
    draft.validate(&sizes)?;

    let arcs = PatternRef::Cycle(&draft.pat).arcs();
    let mut flags = draft.flags.clone();
    let mut last = String::new();
    for attempt in 0..p.attempts {
        let seed = p.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(attempt as u64);
        let pins = match solve_pins(g, classes, &arcs, &draft.class_of, attempt, seed) {
            Ok(f) => f,
            Err(msg) => {
                last = format!("connectors: {msg}");
                continue;
            }
        };
        let mut f = pins.clone();
        match fill(g, classes, &arcs, &draft.class_of, &mut f, p, attempt, seed)? {
            Ok(()) => {}
            Err(msg) => {
                last = format!("fill: {msg}");
                continue;
            }
        }
        let plan = draft.plan(&arcs, &pins, &sizes);
        let mut map = vec![NONE; n];
        for (i, &v) in f.iter().enumerate() {
            map[draft.frame[i]] = v;
        }
        let check = check_embedding(g, PatternRef::Cycle(c), &map, true);
        if !check.valid {
            return Err(Error::step("checker", check.problems.join("; ")));
        }
        if attempt > 0 {
            flags.push(format!("succeeded on connector attempt {}", attempt + 1));
        }
        return Ok(PipelineOutcome {
            embedding: Embedding { map, cycle: true, pattern: c.to_signs() },
            case: draft.case.clone(),
            plan: Some(plan),
            attempts: attempt + 1,
            fallback_used: false,
            flags,
            check,
        });
    }
    flags.push(format!("all {} connector attempts failed, last: {last}", p.attempts));
    let e = Error::step(last.split(':').next().unwrap_or("fill").to_string(), last.clone());
    fallback(g, c, p, Some(draft.case.clone()), p.attempts, flags, e)
}

fn check_partition(n: usize, classes: &[VertexSet]) -> Result<()> {
    if classes.is_empty() {
        return Err(Error::Input("no classes given".into()));
    }
    let mut seen = VertexSet::empty(n);
    for (j, v) in classes.iter().enumerate() {
        if v.universe() != n || v.is_empty() {
            return Err(Error::Input(format!("class {j} is empty or has the wrong universe")));
        }
        if !seen.is_disjoint(v) {
            return Err(Error::Input(format!("class {j} overlaps an earlier class")));
        }
        seen.union_with(v);
    }
    if seen.len() != n {
        return Err(Error::Input("classes do not cover V(G)".into()));
    }
    Ok(())
}

fn oracle_opts(ms: u64) -> OracleOptions {
    OracleOptions { deadline: Some(Duration::from_millis(ms)), parallel: false, ..OracleOptions::default() }
}

fn single(g: &Digraph, c: &CyclePattern, p: &EmbedParams) -> Result<PipelineOutcome> {
    match exact_embed(g, PatternRef::Cycle(c), &[], &oracle_opts(p.deadline_ms))? {
        OracleResult::Found(e) => {
            let check = check_embedding(g, PatternRef::Cycle(c), &e.map, true);
            Ok(PipelineOutcome {
                embedding: e,
                case: PipelineCase::Single,
                plan: None,
                attempts: 0,
                fallback_used: false,
                flags: vec![],
                check,
            })
        }
        OracleResult::None => Err(Error::step("single class", "the class contains no such Hamilton cycle")),
        OracleResult::Timeout => Err(Error::Timeout("single-class oracle".into())),
    }
}

fn fallback(
    g: &Digraph,
    c: &CyclePattern,
    p: &EmbedParams,
    case: Option<PipelineCase>,
    attempts: usize,
    mut flags: Vec<String>,
    err: Error,
) -> Result<PipelineOutcome> {
    if g.n() > p.oracle_cap {
        return Err(err);
    }
    match exact_embed(g, PatternRef::Cycle(c), &[], &oracle_opts(p.deadline_ms))? {
        OracleResult::Found(e) => {
            flags.push("whole-graph oracle fallback".into());
            let check = check_embedding(g, PatternRef::Cycle(c), &e.map, true);
            Ok(PipelineOutcome {
                embedding: e,
                case: case.unwrap_or(PipelineCase::Single),
                plan: None,
                attempts,
                fallback_used: true,
                flags,
                check,
            })
        }
        OracleResult::None => Err(Error::step("fallback", format!("oracle proves no embedding exists ({err})"))),
        OracleResult::Timeout => Err(Error::step("fallback", format!("oracle timed out after: {err}"))),
    }
}

/// Class assignment of every position of a re-indexed copy of the pattern.
struct Draft {
    /// Frame position to original position.
    frame: Vec<usize>,
    pat: CyclePattern,
    class_of: Vec<usize>,
    case: PipelineCase,
    boundaries: Vec<Case2Boundary>,
    /// Frame positions of gadget sinks and hand-off pieces, for labelling.
    gadget: Vec<bool>,
    handoff: Vec<bool>,
    flags: Vec<String>,
}

impl Draft {
    fn validate(&self, sizes: &[usize]) -> Result<()> {
        let mut cnt = vec![0usize; sizes.len()];
        for &j in &self.class_of {
            cnt[j] += 1;
        }
        if cnt != sizes {
            return Err(Error::step("plan", format!("positions per class {cnt:?} differ from sizes {sizes:?}")));
        }
        for (a, b) in PatternRef::Cycle(&self.pat).arcs() {
            if self.class_of[a] > self.class_of[b] {
                return Err(Error::step("plan", format!("cycle edge {a}->{b} runs against the class order")));
            }
        }
        Ok(())
    }

    fn label(&self, a: usize, b: usize) -> &'static str {
        let n = self.class_of.len();
        if self.gadget[a] || self.gadget[b] {
            return "gadget";
        }
        if self.handoff[a] || self.handoff[b] {
            return "handoff";
        }
        if (a, b) == (0, n - 1) && !matches!(self.case, PipelineCase::Case1b { .. }) {
            return "wrap";
        }
        match self.case {
            PipelineCase::Case1b { ell, .. } => {
                let in_run = |x: usize| x == 0 || x > n - ell;
                if in_run(a) && in_run(b) {
                    "run"
                } else {
                    "blueprint"
                }
            }
            _ => "boundary",
        }
    }

    fn plan(&self, arcs: &[(usize, usize)], pins: &[usize], sizes: &[usize]) -> EmbedPlan {
        let n = self.class_of.len();
        let mut class_of = vec![0; n];
        for i in 0..n {
            class_of[self.frame[i]] = self.class_of[i];
        }
        let mut plan_pins: Vec<(usize, usize)> =
            (0..n).filter(|&i| pins[i] != NONE).map(|i| (self.frame[i], pins[i])).collect();
        plan_pins.sort();
        let mut residual = sizes.to_vec();
        for i in 0..n {
            if pins[i] != NONE {
                residual[self.class_of[i]] -= 1;
            }
        }
        let connectors = arcs
            .iter()
            .filter(|&&(a, b)| self.class_of[a] != self.class_of[b])
            .map(|&(a, b)| ConnectorRecord {
                kind: self.label(a, b).into(),
                tail_pos: self.frame[a],
                head_pos: self.frame[b],
                tail: pins[a],
                head: pins[b],
            })
            .collect();
        let boundaries = self
            .boundaries
            .iter()
            .map(|b| Case2Boundary {
                gadgets: b.gadgets.iter().map(|&x| self.frame[x]).collect(),
                handoff: b.handoff.map(|(s, l)| (self.frame[s], l)),
                ..b.clone()
            })
            .collect();
        EmbedPlan {
            case: self.case.clone(),
            class_of,
            budgets: sizes.to_vec(),
            pins: plan_pins,
            connectors,
            boundaries,
            residual,
        }
    }
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[i]).collect()
}

fn build_draft(c: &CyclePattern, sizes: &[usize], p: &EmbedParams) -> Result<Draft> {
    let n = c.len();
    match c.classify_case(p.beta) {
        CaseSplit::Case1 { ell, start } => {
            let (f, frame) = if c.forward(start) {
                c.framed(start, false)
            } else {
                c.framed((start + ell - 1) % n, true)
            };
            let t = sizes.len();
            let small_rest = (n - ell) as f64 <= p.eta * n as f64 / 2.0 + 1e-9;
            let fits = n - sizes[t - 1] < ell;
            if small_rest && fits {
                Ok(draft_1a(f, frame, ell, sizes))
            } else {
                let mut d = draft_1b(&f, &frame, ell, sizes, p)?;
                if small_rest {
                    d.flags.push("short remainder but the last class is too small for case 1a".into());
                }
                Ok(d)
            }
        }
        CaseSplit::Case2 => draft_2(c, sizes, p),
    }
}

fn blank(frame: Vec<usize>, pat: CyclePattern, class_of: Vec<usize>, case: PipelineCase) -> Draft {
    let n = class_of.len();
    Draft { frame, pat, class_of, case, boundaries: vec![], gadget: vec![false; n], handoff: vec![false; n], flags: vec![] }
}

/// Frame: source at 0, forward run `0 → 1 → … → ℓ−1`.
fn draft_1a(f: CyclePattern, frame: Vec<usize>, ell: usize, sizes: &[usize]) -> Draft {
    let mut class_of = Vec::with_capacity(f.len());
    for (j, &m) in sizes.iter().enumerate() {
        class_of.extend(std::iter::repeat(j).take(m));
    }
    blank(frame, f, class_of, PipelineCase::Case1a { ell })
}

/// Frame: source at 0, run `0 → n−1 → … → n−ℓ+1`, and `P′ = 1..=n−ℓ`.
fn draft_1b(f1: &CyclePattern, frame1: &[usize], ell: usize, sizes: &[usize], p: &EmbedParams) -> Result<Draft> {
    let n = f1.len();
    let (g, inner) = f1.framed(0, true);
    let frame = compose(frame1, &inner);
    let rn = p.rho * n as f64;
    let reserve = (ceil_tol(rn).max(0) as usize).max(2);
    let rest = n - ell;
    let capacity = |d: usize| sizes.iter().map(|&m| m.saturating_sub(reserve) / d).collect::<Vec<_>>();
    let fits = |d: usize| capacity(d).iter().sum::<usize>() >= rest.div_ceil(d);
    let d = match p.block_size {
        Some(d) => Some(d).filter(|&d| d >= 2 && fits(d)),
        None => {
            let base = (floor_tol(rn).max(0) as usize).max(2);
            (base..=rest.max(base)).find(|&d| fits(d))
        }
    }
    .ok_or_else(|| Error::step("case 1b blueprint", "no block size gives a large enough tournament"))?;
    let blocks = directed_run_decomposition_case1b(&g, ell, d).map_err(|e| Error::step("case 1b blocks", e.to_string()))?;
    let u = capacity(d);
    let size: usize = u.iter().sum();
    let q = PathPattern::new(blocks.boundary_forward.clone());
    let ranks = tt_embed_path(&q, size).map_err(|e| Error::step("case 1b blueprint", e.to_string()))?;
    let class_of_rank = |r: usize| {
        let mut acc = 0;
        for (j, &x) in u.iter().enumerate() {
            acc += x;
            if r < acc {
                return j;
            }
        }
        unreachable!("rank below tournament size")
    };
    let mut class_of = vec![NONE; n];
    let mut used = vec![0usize; sizes.len()];
    for (i, &(s, len)) in blocks.blocks.iter().enumerate() {
        let j = class_of_rank(ranks[i]);
        class_of[s..s + len].iter_mut().for_each(|c| *c = j);
        used[j] += len;
    }
    let run: Vec<usize> = std::iter::once(0).chain((n - ell + 1..n).rev()).collect();
    let mut it = run.into_iter();
    for (j, &m) in sizes.iter().enumerate() {
        for _ in 0..m - used[j] {
            class_of[it.next().expect("run covers the residual budgets")] = j;
        }
    }
    let case = PipelineCase::Case1b { ell, block_size: d, blocks: blocks.blocks.len(), tournament: size };
    let mut draft = blank(frame, g, class_of, case);
    if p.block_size.is_none() && d != (floor_tol(rn).max(0) as usize) {
        draft.flags.push(format!("block size D={d} instead of floor(rho*n)={}", floor_tol(rn)));
    }
    Ok(draft)
}

/// Frame: the canonical rotation, source at 0.
fn draft_2(c: &CyclePattern, sizes: &[usize], p: &EmbedParams) -> Result<Draft> {
    let n = c.len();
    let (h, rot) = c.canonical();
    let frame: Vec<usize> = (0..n).map(|i| (rot + i) % n).collect();
    let plan = partition_case2(&h, sizes, p.beta).map_err(|e| Error::step("case 2 partition", e.to_string()))?;
    let mut class_of = vec![0; n];
    for s in &plan.segments {
        class_of[s.start..s.start + s.len].iter_mut().for_each(|c| *c = s.class);
    }
    let mut draft = blank(frame, h.clone(), class_of, PipelineCase::Case2 { overshoots: plan.overshoots.clone() });
    let bn = p.beta * n as f64;
    let small = p.eta / (6.0 * p.beta);
    for (s, &d) in plan.overshoots.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let seg = plan.segments[s];
        let (lo, hi) = (seg.start, seg.start + seg.len - 1);
        if !h.is_source(hi) {
            return Err(Error::step("case 2 imbalance", format!("segment {s} does not end at a source")));
        }
        let (count, handoff) = if d as f64 <= small + 1e-9 {
            (d, None)
        } else {
            let g = p.gadgets_for_large_overshoot().min(d);
            let hlen = d - g;
            if hlen == 0 {
                (g, None)
            } else {
                let q = (lo + 1..hi)
                    .rev()
                    .find(|&i| h.is_sink(i))
                    .ok_or_else(|| Error::step("case 2 hand-off", format!("no sink before the end of segment {s}")))?;
                if q + d > hi {
                    return Err(Error::step("case 2 hand-off", format!("directed piece at segment {s} is too short")));
                }
                (g, Some((q, hlen)))
            }
        };
        let avoid = handoff.map(|(q, l)| (q - 1, q + l));
        let literal = pick_sinks(&h, count, |x| (x as f64) > lo as f64 + 2.0 * bn - 1.0 && (x as f64) < hi as f64 - 2.0 * bn, bn, avoid);
        let (gadgets, literal_ok) = match literal {
            Some(v) => (v, true),
            None => {
                let relaxed = pick_sinks(&h, count, |x| x >= lo + 2 && x + 2 <= hi, 3.0, avoid).ok_or_else(|| {
                    Error::step("case 2 gadgets", format!("no room for {count} gadget sinks in segment {s}"))
                })?;
                draft.flags.push(format!("boundary {s}: gadget spacing relaxed"));
                (relaxed, false)
            }
        };
        for &x in &gadgets {
            draft.class_of[x] = s + 1;
            draft.gadget[x] = true;
        }
        if let Some((q, l)) = handoff {
            for x in q..q + l {
                draft.class_of[x] = s + 1;
                draft.handoff[x] = true;
            }
        }
        draft.boundaries.push(Case2Boundary { s, overshoot: d, gadgets, handoff, literal_spacing: literal_ok });
    }
    Ok(draft)
}

/// Leftmost `count` sinks accepted by `ok`, pairwise at least `gap` apart,
/// with their neighbours outside the closed interval `avoid`.
fn pick_sinks(
    h: &CyclePattern,
    count: usize,
    ok: impl Fn(usize) -> bool,
    gap: f64,
    avoid: Option<(usize, usize)>,
) -> Option<Vec<usize>> {
    let mut out: Vec<usize> = Vec::with_capacity(count);
    for x in 1..h.len() - 1 {
        if out.len() == count {
            break;
        }
        if !h.is_sink(x) || !ok(x) {
            continue;
        }
        if let Some((a, b)) = avoid {
            if x + 1 >= a && x <= b + 1 {
                continue;
            }
        }
        if out.last().is_some_and(|&y| ((x - y) as f64) < gap - 1e-9) {
            continue;
        }
        out.push(x);
    }
    (out.len() == count).then_some(out)
}

/// Pins the endpoints of every cross-class edge, component by component.
fn solve_pins(
    g: &Digraph,
    classes: &[VertexSet],
    arcs: &[(usize, usize)],
    class_of: &[usize],
    attempt: usize,
    seed: u64,
) -> std::result::Result<Vec<usize>, String> {
    let n = class_of.len();
    let mut pinned = vec![false; n];
    for &(a, b) in arcs {
        if class_of[a] != class_of[b] {
            pinned[a] = true;
            pinned[b] = true;
        }
    }
    let mut outs = vec![Vec::new(); n];
    let mut ins = vec![Vec::new(); n];
    for &(a, b) in arcs {
        if pinned[a] && pinned[b] {
            outs[a].push(b);
            ins[b].push(a);
        }
    }
    let mut f = vec![NONE; n];
    let mut used = VertexSet::empty(g.n());
    let mut r = rng(seed);
    let mut seen = vec![false; n];
    for s in 0..n {
        if !pinned[s] || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let x = comp[k];
            k += 1;
            for &y in outs[x].iter().chain(&ins[x]) {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        if attempt == 0 && comp.len() == 2 {
            let (a, b) = if outs[comp[0]].contains(&comp[1]) { (comp[0], comp[1]) } else { (comp[1], comp[0]) };
            let (ca, cb) = (class_of[a], class_of[b]);
            if ca != cb {
                if let Ok(sel) = select_connectors(g, &classes[ca], &classes[cb], 1, Direction::Forward, &used) {
                    let (u, v) = sel.edges[0];
                    f[a] = u;
                    f[b] = v;
                    used.insert(u);
                    used.insert(v);
                    continue;
                }
            }
        }
        let mut budget = PIN_NODE_BUDGET;
        let ctx = PinCtx { g, classes, class_of, outs: &outs, ins: &ins, comp: &comp, shuffle: attempt > 0 };
        if !ctx.dfs(0, &mut f, &mut used, &mut budget, &mut r) {
            return Err(format!("no host edges for the cross edges around position {s}"));
        }
    }
    Ok(f)
}

struct PinCtx<'a> {
    g: &'a Digraph,
    classes: &'a [VertexSet],
    class_of: &'a [usize],
    outs: &'a [Vec<usize>],
    ins: &'a [Vec<usize>],
    comp: &'a [usize],
    shuffle: bool,
}

impl PinCtx<'_> {
    fn dfs(
        &self,
        k: usize,
        f: &mut [usize],
        used: &mut VertexSet,
        budget: &mut usize,
        r: &mut rand_chacha::ChaCha8Rng,
    ) -> bool {
        if k == self.comp.len() {
            return true;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let x = self.comp[k];
        let mut cand = self.classes[self.class_of[x]].difference(used);
        for &y in &self.outs[x] {
            if f[y] != NONE {
                cand.intersect_with(self.g.in_set(f[y]));
            }
        }
        for &y in &self.ins[x] {
            if f[y] != NONE {
                cand.intersect_with(self.g.out_set(f[y]));
            }
        }
        let mut list: Vec<(usize, usize)> = cand
            .iter()
            .map(|v| {
                let mut score = 0;
                for &y in &self.outs[x] {
                    if f[y] == NONE {
                        score += self.g.out_set(v).difference(used).intersection_len(&self.classes[self.class_of[y]]);
                    }
                }
                for &y in &self.ins[x] {
                    if f[y] == NONE {
                        score += self.g.in_set(v).difference(used).intersection_len(&self.classes[self.class_of[y]]);
                    }
                }
                (v, score)
            })
            .collect();
        if self.shuffle {
            list.shuffle(r);
        } else {
            list.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        }
        for (v, _) in list {
            f[x] = v;
            used.insert(v);
            if self.dfs(k + 1, f, used, budget, r) {
                return true;
            }
            used.remove(v);
            f[x] = NONE;
            if *budget == 0 {
                return false;
            }
        }
        false
    }
}

/// Fills every class with the oracle; the inner `Err` is a recoverable failure.
#[allow(clippy::too_many_arguments)]
fn fill(
    g: &Digraph,
    classes: &[VertexSet],
    arcs: &[(usize, usize)],
    class_of: &[usize],
    f: &mut [usize],
    p: &EmbedParams,
    attempt: usize,
    seed: u64,
) -> Result<std::result::Result<(), String>> {
    let n = class_of.len();
    for (j, class) in classes.iter().enumerate() {
        let pos: Vec<usize> = (0..n).filter(|&i| class_of[i] == j).collect();
        let mut local = vec![NONE; n];
        for (k, &i) in pos.iter().enumerate() {
            local[i] = k;
        }
        let t_arcs: Vec<(usize, usize)> = arcs
            .iter()
            .filter(|&&(a, b)| class_of[a] == j && class_of[b] == j)
            .map(|&(a, b)| (local[a], local[b]))
            .collect();
        let t = Template::from_arcs(pos.len(), t_arcs)?;
        let pins: Vec<(usize, usize)> = pos.iter().filter(|&&i| f[i] != NONE).map(|&i| (local[i], f[i])).collect();
        let mut opts = oracle_opts(p.fill_deadline_ms);
        if attempt > 0 {
            opts.shuffle_seed = Some(seed);
        }
        match embed_template(g, &t, class, &pins, &opts)?.outcome {
            TemplateOutcome::Found { map } => {
                for (k, &i) in pos.iter().enumerate() {
                    f[i] = map[k];
                }
            }
            TemplateOutcome::None => return Ok(Err(format!("class {j} admits no residual embedding"))),
            TemplateOutcome::Timeout => return Ok(Err(format!("class {j} fill timed out"))),
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_blowup_tt, part_labels};

    fn planted(sizes: &[usize], seed: u64) -> (Digraph, Vec<VertexSet>) {
        let g = gen_blowup_tt(sizes, 0.95, 0.001, seed);
        let labels = part_labels(sizes);
        let n = g.n();
        // generator parts have cross edges later -> earlier; embedding order reverses them
        let mut classes: Vec<VertexSet> =
            (0..sizes.len()).map(|j| VertexSet::from_iter(n, (0..n).filter(|&v| labels[v] == j))).collect();
        classes.reverse();
        (g, classes)
    }

    fn run(g: &Digraph, classes: &[VertexSet], c: &CyclePattern) -> PipelineOutcome {
        let p = EmbedParams { oracle_cap: 0, ..EmbedParams::default() };
        let out = embed_with_classes(g, classes, c, &p).unwrap_or_else(|e| panic!("{c}: {e}"));
        assert!(out.check.valid);
        assert!(check_embedding(g, PatternRef::Cycle(c), &out.embedding.map, true).valid);
        let plan = out.plan.as_ref().unwrap();
        assert!(plan.budget_conserved());
        assert!(plan.connectors_consistent());
        out
    }

    #[test]
    fn antidirected_is_case2() {
        let (g, cl) = planted(&[30, 30], 1);
        let out = run(&g, &cl, &CyclePattern::antidirected(60).unwrap());
        assert!(matches!(out.case, PipelineCase::Case2 { .. }));
    }

    #[test]
    fn one_backward_edge_is_case1a() {
        let (g, cl) = planted(&[24, 24, 24], 2);
        let mut o = vec![true; 72];
        o[40] = false;
        let out = run(&g, &cl, &CyclePattern::new(o).unwrap());
        assert!(matches!(out.case, PipelineCase::Case1a { ell: 72 }));
    }

    #[test]
    fn random_patterns_all_cases() {
        let (g, cl) = planted(&[30, 30], 3);
        let mut r = rng(5);
        use rand::Rng;
        let mut cases = [0usize; 3];
        for _ in 0..30 {
            let o: Vec<bool> = (0..60).map(|_| r.gen()).collect();
            let c = CyclePattern::new(o).unwrap();
            if c.is_directed() {
                continue;
            }
            let out = run(&g, &cl, &c);
            match out.case {
                PipelineCase::Case1a { .. } => cases[0] += 1,
                PipelineCase::Case1b { .. } => cases[1] += 1,
                PipelineCase::Case2 { .. } => cases[2] += 1,
                PipelineCase::Single => {}
            }
        }
        assert!(cases[1] > 0 && cases[2] > 0, "{cases:?}");
    }

    #[test]
    fn long_run_patterns() {
        let (g, cl) = planted(&[20, 20, 20], 4);
        // a forward run of 30 vertices, then alternating
        let o: Vec<bool> = (0..60).map(|i| i < 29 || i % 2 == 0).collect();
        let out = run(&g, &cl, &CyclePattern::new(o).unwrap());
        assert!(matches!(out.case, PipelineCase::Case1b { .. }), "{:?}", out.case);
        // a backward run
        let o: Vec<bool> = (0..60).map(|i| i >= 30 && i % 2 == 0).collect();
        run(&g, &cl, &CyclePattern::new(o).unwrap());
    }

    #[test]
    fn directed_cycle_rejected() {
        let (g, cl) = planted(&[10, 10], 1);
        let e = embed_with_classes(&g, &cl, &CyclePattern::directed(20).unwrap(), &EmbedParams::default());
        assert!(matches!(e, Err(Error::Precondition(_))));
    }

    #[test]
    fn bad_params_rejected() {
        let p = EmbedParams { rho: 0.01, ..EmbedParams::default() };
        assert!(p.validate().is_err());
    }
}
