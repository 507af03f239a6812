//! Exact backtracking embedder for oriented paths, cycles and unions of them.
//!
//! Allowed host vertices are relabelled `0..k` and stored as `u128` masks.
//! Each search node removes used vertices from every domain, enforces arc
//! consistency (`D[b] ⊆ N⁺(D[a])`, `D[a] ⊆ N⁻(D[b])` for every template arc
//! `a → b`) to a fixpoint, assigns singleton domains, and runs a Hall check
//! by bipartite matching. Branching takes the smallest domain; for spanning
//! templates a vertex with fewer candidate positions is branched on instead.

use super::check::{Embedding, PatternRef};
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::generators::rng;
use crate::graph::Digraph;
use crate::pattern::{CyclePattern, PathPattern};
use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

/// Largest number of allowed host vertices the oracle accepts.
pub const ORACLE_VERTEX_CAP: usize = 128;

const NONE: usize = usize::MAX;

/// Positions `0..m` and directed arcs between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub m: usize,
    pub arcs: Vec<(usize, usize)>,
    /// Rotation period of an unpinned cycle, used to break symmetry.
    period: Option<usize>,
}

impl Template {
    pub fn from_arcs(m: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        for &(a, b) in &arcs {
            if a >= m || b >= m || a == b {
                return Err(Error::Input(format!("template arc ({a},{b}) invalid for {m} positions")));
            }
        }
        Ok(Template { m, arcs, period: None })
    }

    pub fn cycle(c: &CyclePattern) -> Self {
        let n = c.len();
        let period = (1..=n).find(|&p| n % p == 0 && (0..n).all(|i| c.forward(i) == c.forward(i + p)));
        Template { m: n, arcs: PatternRef::Cycle(c).arcs(), period: period.filter(|&p| p < n) }
    }

    pub fn path(p: &PathPattern) -> Self {
        Template { m: p.vertices(), arcs: PatternRef::Path(p).arcs(), period: None }
    }

    pub fn from_pattern(p: PatternRef<'_>) -> Self {
        match p {
            PatternRef::Cycle(c) => Self::cycle(c),
            PatternRef::Path(p) => Self::path(p),
        }
    }

    /// Disjoint union of paths, laid out consecutively.
    pub fn paths(ps: &[PathPattern]) -> Self {
        let mut arcs = Vec::new();
        let mut off = 0;
        for p in ps {
            arcs.extend(PatternRef::Path(p).arcs().into_iter().map(|(a, b)| (a + off, b + off)));
            off += p.vertices();
        }
        Template { m: off, arcs, period: None }
    }
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub deadline: Option<Duration>,
    pub cancel: Option<Arc<AtomicBool>>,
    /// Randomise the order in which host vertices are tried.
    pub shuffle_seed: Option<u64>,
    /// Explore top-level branches on the rayon pool.
    pub parallel: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { deadline: Some(Duration::from_secs(10)), cancel: None, shuffle_seed: None, parallel: true }
    }
}

impl OracleOptions {
    pub fn sequential() -> Self {
        OracleOptions { parallel: false, ..Default::default() }
    }

    pub fn with_deadline(mut self, d: Option<Duration>) -> Self {
        self.deadline = d;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TemplateOutcome {
    /// `map[i]` is the host vertex of position `i`.
    Found { map: Vec<usize> },
    /// The search space is exhausted: no embedding exists.
    None,
    Timeout,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TemplateSearch {
    pub outcome: TemplateOutcome,
    pub nodes: u64,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum OracleResult {
    Found(Embedding),
    None,
    Timeout,
}

impl OracleResult {
    pub fn is_found(&self) -> bool {
        matches!(self, OracleResult::Found(_))
    }

    pub fn is_none(&self) -> bool {
        matches!(self, OracleResult::None)
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            OracleResult::Found(e) => Some(e),
            _ => None,
        }
    }
}

/// Embeds a whole pattern into `g`, extending `pins` (`(position, vertex)`).
pub fn exact_embed(
    g: &Digraph,
    pattern: PatternRef<'_>,
    pins: &[(usize, usize)],
    opts: &OracleOptions,
) -> Result<OracleResult> {
    let mut t = Template::from_pattern(pattern);
    if !pins.is_empty() {
        t.period = None;
    }
    let s = embed_template(g, &t, &g.vertex_set(), pins, opts)?;
    Ok(wrap(s.outcome, pattern))
}

/// A copy of `path` starting at `u` and ending at `v`, avoiding `forbidden`.
pub fn embed_path_between(
    g: &Digraph,
    path: &PathPattern,
    u: usize,
    v: usize,
    forbidden: &VertexSet,
    opts: &OracleOptions,
) -> Result<OracleResult> {
    if u == v || u >= g.n() || v >= g.n() {
        return Err(Error::Input(format!("endpoints must be distinct vertices of G, got {u} and {v}")));
    }
    if forbidden.contains(u) || forbidden.contains(v) {
        return Err(Error::Input("an endpoint is forbidden".into()));
    }
    if path.vertices() < 2 {
        return Err(Error::Input("a path between two vertices needs at least 2 vertices".into()));
    }
    let allowed = forbidden.complement();
    let t = Template::path(path);
    let s = embed_template(g, &t, &allowed, &[(0, u), (path.vertices() - 1, v)], opts)?;
    Ok(wrap(s.outcome, PatternRef::Path(path)))
}

fn wrap(o: TemplateOutcome, p: PatternRef<'_>) -> OracleResult {
    match o {
        TemplateOutcome::Found { map } => OracleResult::Found(Embedding {
            map,
            cycle: matches!(p, PatternRef::Cycle(_)),
            pattern: p.signs(),
        }),
        TemplateOutcome::None => OracleResult::None,
        TemplateOutcome::Timeout => OracleResult::Timeout,
    }
}

/// Embeds `t` into `g[allowed]` injectively, extending `pins`.
pub fn embed_template(
    g: &Digraph,
    t: &Template,
    allowed: &VertexSet,
    pins: &[(usize, usize)],
    opts: &OracleOptions,
) -> Result<TemplateSearch> {
    let start = Instant::now();
    let global: Vec<usize> = allowed.iter().filter(|&v| v < g.n()).collect();
    let k = global.len();
    if k > ORACLE_VERTEX_CAP {
        return Err(Error::Capability(format!(
            "oracle supports at most {ORACLE_VERTEX_CAP} allowed vertices, got {k}"
        )));
    }
    let mut local = vec![NONE; g.n()];
    for (i, &v) in global.iter().enumerate() {
        local[v] = i;
    }
    let mut pin_dom = vec![NONE; t.m];
    let mut seen = 0u128;
    for &(p, v) in pins {
        if p >= t.m {
            return Err(Error::Input(format!("pin position {p} out of range 0..{}", t.m)));
        }
        if v >= g.n() || local[v] == NONE {
            return Err(Error::Input(format!("pin vertex {v} is not an allowed vertex")));
        }
        if pin_dom[p] != NONE || seen >> local[v] & 1 == 1 {
            return Err(Error::Input(format!("pins are not injective at position {p} / vertex {v}")));
        }
        pin_dom[p] = local[v];
        seen |= 1u128 << local[v];
    }
    let done = |outcome| TemplateSearch { outcome, nodes: 0, millis: start.elapsed().as_millis() as u64 };
    if t.m == 0 {
        return Ok(done(TemplateOutcome::Found { map: vec![] }));
    }
    if t.m > k {
        return Ok(done(TemplateOutcome::None));
    }

    let bits = |s: &VertexSet| -> u128 {
        let mut m = 0u128;
        for w in s.iter() {
            if local[w] != NONE {
                m |= 1u128 << local[w];
            }
        }
        m
    };
    let out_l: Vec<u128> = global.iter().map(|&v| bits(g.out_set(v))).collect();
    let in_l: Vec<u128> = global.iter().map(|&v| bits(g.in_set(v))).collect();

    let mut outs = vec![Vec::new(); t.m];
    let mut ins = vec![Vec::new(); t.m];
    let mut nbrs = vec![Vec::new(); t.m];
    for &(a, b) in &t.arcs {
        if !outs[a].contains(&b) {
            outs[a].push(b);
        }
        if !ins[b].contains(&a) {
            ins[b].push(a);
        }
        if !nbrs[a].contains(&b) {
            nbrs[a].push(b);
        }
        if !nbrs[b].contains(&a) {
            nbrs[b].push(a);
        }
    }
    let full: u128 = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
    let order = opts.shuffle_seed.map(|s| {
        let mut o: Vec<usize> = (0..k).collect();
        o.shuffle(&mut rng(s));
        o
    });
    let prob = Problem {
        m: t.m,
        k,
        arcs: t.arcs.clone(),
        nbrs,
        out_l,
        in_l,
        period: if pins.is_empty() { t.period } else { None },
        spanning: t.m == k,
        order,
    };

    let mut st = State { dom: vec![full; t.m], val: vec![NONE; t.m], used: 0, assigned: 0, matching: vec![NONE; t.m] };
    for i in 0..t.m {
        if pin_dom[i] != NONE {
            st.dom[i] = 1u128 << pin_dom[i];
        } else {
            let (a, b) = (outs[i].len() as u32, ins[i].len() as u32);
            let mut d = 0u128;
            for v in 0..k {
                if prob.out_l[v].count_ones() >= a && prob.in_l[v].count_ones() >= b {
                    d |= 1u128 << v;
                }
            }
            st.dom[i] = d;
        }
    }
    for i in 0..t.m {
        if pin_dom[i] != NONE {
            st.assign(i, pin_dom[i]);
        }
    }

    let deadline = opts.deadline.map(|d| start + d);
    let ctx = Ctx { deadline, cancel: opts.cancel.clone(), nodes: AtomicU64::new(0), stop_above: None };
    let result = if !prob.propagate(&mut st) {
        Flow::Exhausted
    } else if opts.parallel {
        prob.search_parallel(st, &ctx)
    } else {
        prob.dfs(st, &ctx, usize::MAX)
    };
    let outcome = match result {
        Flow::Found(vals) => TemplateOutcome::Found { map: vals.into_iter().map(|v| global[v]).collect() },
        Flow::Exhausted => TemplateOutcome::None,
        Flow::Aborted => TemplateOutcome::Timeout,
    };
    Ok(TemplateSearch {
        outcome,
        nodes: ctx.nodes.load(Ordering::Relaxed),
        millis: start.elapsed().as_millis() as u64,
    })
}

struct Problem {
    m: usize,
    k: usize,
    arcs: Vec<(usize, usize)>,
    nbrs: Vec<Vec<usize>>,
    out_l: Vec<u128>,
    in_l: Vec<u128>,
    period: Option<usize>,
    spanning: bool,
    order: Option<Vec<usize>>,
}

#[derive(Clone)]
struct State {
    dom: Vec<u128>,
    val: Vec<usize>,
    used: u128,
    assigned: usize,
    matching: Vec<usize>,
}

impl State {
    #[inline]
    fn assign(&mut self, i: usize, v: usize) {
        self.dom[i] = 1u128 << v;
        self.val[i] = v;
        self.used |= 1u128 << v;
        self.assigned += 1;
    }
}

struct Ctx {
    deadline: Option<Instant>,
    cancel: Option<Arc<AtomicBool>>,
    nodes: AtomicU64,
    /// Parallel mode: abort when a branch with a smaller index has succeeded.
    stop_above: Option<AtomicUsize>,
}

impl Ctx {
    fn should_stop(&self, branch: usize) -> bool {
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                return true;
            }
        }
        if let Some(c) = &self.cancel {
            if c.load(Ordering::Relaxed) {
                return true;
            }
        }
        if let Some(s) = &self.stop_above {
            if s.load(Ordering::Relaxed) < branch {
                return true;
            }
        }
        false
    }
}

enum Flow {
    Found(Vec<usize>),
    Exhausted,
    Aborted,
}

enum Branch {
    Position(usize),
    Vertex(usize),
}

#[inline]
fn below(x: usize) -> u128 {
    if x >= 128 {
        u128::MAX
    } else {
        (1u128 << x) - 1
    }
}

#[inline]
fn above(x: usize) -> u128 {
    !below(x + 1)
}

impl Problem {
    #[inline]
    fn support(table: &[u128], mut d: u128) -> u128 {
        let mut s = 0u128;
        while d != 0 {
            let v = d.trailing_zeros() as usize;
            d &= d - 1;
            s |= table[v];
        }
        s
    }

    fn propagate(&self, st: &mut State) -> bool {
        loop {
            let mut changed = false;
            for i in 0..self.m {
                if st.val[i] == NONE {
                    st.dom[i] &= !st.used;
                    if st.dom[i] == 0 {
                        return false;
                    }
                }
            }
            for &(a, b) in &self.arcs {
                let nb = st.dom[b] & Self::support(&self.out_l, st.dom[a]);
                if nb != st.dom[b] {
                    if nb == 0 {
                        return false;
                    }
                    st.dom[b] = nb;
                    changed = true;
                }
                let na = st.dom[a] & Self::support(&self.in_l, st.dom[b]);
                if na != st.dom[a] {
                    if na == 0 {
                        return false;
                    }
                    st.dom[a] = na;
                    changed = true;
                }
            }
            if let Some(p) = self.period {
                // f(0) < f(jp) for every rotation jp of position 0
                let min0 = st.dom[0].trailing_zeros() as usize;
                let mut hi_min = usize::MAX;
                for j in (p..self.m).step_by(p) {
                    let nd = st.dom[j] & above(min0);
                    if nd == 0 {
                        return false;
                    }
                    if nd != st.dom[j] {
                        st.dom[j] = nd;
                        changed = true;
                    }
                    hi_min = hi_min.min(127 - st.dom[j].leading_zeros() as usize);
                }
                if hi_min != usize::MAX {
                    let nd = st.dom[0] & below(hi_min);
                    if nd == 0 {
                        return false;
                    }
                    if nd != st.dom[0] {
                        st.dom[0] = nd;
                        changed = true;
                    }
                }
            }
            for i in 0..self.m {
                if st.val[i] == NONE && st.dom[i].count_ones() == 1 {
                    let v = st.dom[i].trailing_zeros() as usize;
                    if st.used >> v & 1 == 1 {
                        return false;
                    }
                    st.assign(i, v);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.hall(st)
    }

    /// Matching of unassigned positions into unused vertices, warm-started.
    fn hall(&self, st: &mut State) -> bool {
        let mut owner = [NONE; 128];
        for i in 0..self.m {
            let v = st.matching[i];
            if st.val[i] != NONE {
                st.matching[i] = NONE;
            } else if v != NONE && st.dom[i] >> v & 1 == 1 && owner[v] == NONE {
                owner[v] = i;
            } else {
                st.matching[i] = NONE;
            }
        }
        for i in 0..self.m {
            if st.val[i] == NONE && st.matching[i] == NONE {
                let mut seen = 0u128;
                if !augment(i, &st.dom, &mut st.matching, &mut owner, &mut seen) {
                    return false;
                }
            }
        }
        true
    }

    fn choose(&self, st: &State) -> Branch {
        let mut best = NONE;
        let mut best_key = (u32::MAX, 0usize);
        for i in 0..self.m {
            if st.val[i] != NONE {
                continue;
            }
            let c = st.dom[i].count_ones();
            let an = self.nbrs[i].iter().filter(|&&j| st.val[j] != NONE).count();
            if c < best_key.0 || (c == best_key.0 && an > best_key.1) {
                best = i;
                best_key = (c, an);
            }
        }
        if self.spanning {
            let mut cnt = [0u32; 128];
            for i in 0..self.m {
                if st.val[i] == NONE {
                    let mut d = st.dom[i];
                    while d != 0 {
                        cnt[d.trailing_zeros() as usize] += 1;
                        d &= d - 1;
                    }
                }
            }
            let free = !st.used & below(self.k);
            let mut bv = NONE;
            let mut bc = best_key.0;
            let mut f = free;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                if cnt[v] < bc {
                    bc = cnt[v];
                    bv = v;
                }
            }
            if bv != NONE {
                return Branch::Vertex(bv);
            }
        }
        Branch::Position(best)
    }

    fn candidates(&self, st: &State, b: &Branch) -> Vec<(usize, usize)> {
        match *b {
            Branch::Position(i) => {
                let d = st.dom[i];
                match &self.order {
                    Some(o) => o.iter().filter(|&&v| d >> v & 1 == 1).map(|&v| (i, v)).collect(),
                    None => bits_of(d).map(|v| (i, v)).collect(),
                }
            }
            Branch::Vertex(v) => {
                (0..self.m).filter(|&i| st.val[i] == NONE && st.dom[i] >> v & 1 == 1).map(|i| (i, v)).collect()
            }
        }
    }

    fn dfs(&self, st: State, ctx: &Ctx, branch: usize) -> Flow {
        let n = ctx.nodes.fetch_add(1, Ordering::Relaxed);
        if n & 255 == 0 && ctx.should_stop(branch) {
            return Flow::Aborted;
        }
        if st.assigned == self.m {
            return Flow::Found(st.val);
        }
        let b = self.choose(&st);
        for (i, v) in self.candidates(&st, &b) {
            let mut child = st.clone();
            child.assign(i, v);
            if !self.propagate(&mut child) {
                continue;
            }
            match self.dfs(child, ctx, branch) {
                Flow::Exhausted => {}
                other => return other,
            }
        }
        Flow::Exhausted
    }

    fn search_parallel(&self, st: State, ctx: &Ctx) -> Flow {
        if st.assigned == self.m {
            return Flow::Found(st.val);
        }
        let b = self.choose(&st);
        let cands = self.candidates(&st, &b);
        let pctx = Ctx {
            deadline: ctx.deadline,
            cancel: ctx.cancel.clone(),
            nodes: AtomicU64::new(0),
            stop_above: Some(AtomicUsize::new(usize::MAX)),
        };
        let results: Vec<Flow> = cands
            .par_iter()
            .enumerate()
            .map(|(idx, &(i, v))| {
                let mut child = st.clone();
                child.assign(i, v);
                if !self.propagate(&mut child) {
                    return Flow::Exhausted;
                }
                let r = self.dfs(child, &pctx, idx);
                if let Flow::Found(_) = r {
                    pctx.stop_above.as_ref().unwrap().fetch_min(idx, Ordering::Relaxed);
                }
                r
            })
            .collect();
        ctx.nodes.fetch_add(pctx.nodes.load(Ordering::Relaxed) + 1, Ordering::Relaxed);
        let winner = pctx.stop_above.as_ref().unwrap().load(Ordering::Relaxed);
        let mut aborted = false;
        for (idx, r) in results.into_iter().enumerate() {
            match r {
                Flow::Found(v) if idx == winner => return Flow::Found(v),
                Flow::Aborted if idx < winner => aborted = true,
                _ => {}
            }
        }
        if aborted {
            Flow::Aborted
        } else {
            Flow::Exhausted
        }
    }
}

fn bits_of(mut d: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if d == 0 {
            None
        } else {
            let v = d.trailing_zeros() as usize;
            d &= d - 1;
            Some(v)
        }
    })
}

fn augment(i: usize, dom: &[u128], matching: &mut [usize], owner: &mut [usize; 128], seen: &mut u128) -> bool {
    let mut d = dom[i] & !*seen;
    // free vertices first
    let mut f = d;
    while f != 0 {
        let v = f.trailing_zeros() as usize;
        f &= f - 1;
        if owner[v] == NONE {
            *seen |= 1u128 << v;
            owner[v] = i;
            matching[i] = v;
            return true;
        }
    }
    while d != 0 {
        let v = d.trailing_zeros() as usize;
        d &= d - 1;
        if *seen >> v & 1 == 1 {
            continue;
        }
        *seen |= 1u128 << v;
        let j = owner[v];
        if augment(j, dom, matching, owner, seen) {
            owner[v] = i;
            matching[i] = v;
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::check::check_embedding;
    use crate::generators::{gen_bipartite_extremal, gen_blowup_tt, gen_complete_digraph, gen_split_cliques};

    fn seq() -> OracleOptions {
        OracleOptions::sequential()
    }

    #[test]
    fn directed_cycle_in_complete() {
        let g = gen_complete_digraph(8);
        let c = CyclePattern::directed(8).unwrap();
        let r = exact_embed(&g, PatternRef::Cycle(&c), &[], &OracleOptions::default()).unwrap();
        let e = r.embedding().unwrap();
        assert!(check_embedding(&g, PatternRef::Cycle(&c), &e.map, true).valid);
    }

    #[test]
    fn bipartite_extremal_has_no_hamilton_cycle() {
        let g = gen_bipartite_extremal(10);
        for c in crate::pattern::necklaces(10).iter().take(40) {
            let r = exact_embed(&g, PatternRef::Cycle(c), &[], &seq()).unwrap();
            assert!(r.is_none(), "{c}");
        }
    }

    #[test]
    fn split_cliques_have_no_hamilton_path() {
        let g = gen_split_cliques(8);
        let p = PathPattern::antidirected(8);
        assert!(exact_embed(&g, PatternRef::Path(&p), &[], &seq()).unwrap().is_none());
    }

    #[test]
    fn path_between_respects_endpoints() {
        let g = gen_complete_digraph(9);
        let p = PathPattern::parse("++-+--++").unwrap();
        let r = embed_path_between(&g, &p, 3, 7, &VertexSet::empty(9), &seq()).unwrap();
        let e = r.embedding().unwrap();
        assert_eq!((e.map[0], e.map[8]), (3, 7));
        assert!(check_embedding(&g, PatternRef::Path(&p), &e.map, true).valid);
    }

    #[test]
    fn no_path_against_orientation() {
        // cross edges of G1 point from the later part to the earlier one
        let g = gen_blowup_tt(&[5, 5], 1.0, 0.0, 1);
        let p = PathPattern::directed(4);
        let r = embed_path_between(&g, &p, 2, 7, &VertexSet::empty(10), &seq()).unwrap();
        assert!(r.is_none());
        let r = embed_path_between(&g, &p, 7, 2, &VertexSet::empty(10), &seq()).unwrap();
        assert!(r.is_found());
    }

    #[test]
    fn pins_are_validated() {
        let g = gen_complete_digraph(5);
        let c = CyclePattern::directed(5).unwrap();
        assert!(exact_embed(&g, PatternRef::Cycle(&c), &[(0, 1), (1, 1)], &seq()).is_err());
        let r = exact_embed(&g, PatternRef::Cycle(&c), &[(0, 4), (2, 0)], &seq()).unwrap();
        let m = &r.embedding().unwrap().map;
        assert_eq!((m[0], m[2]), (4, 0));
    }

    #[test]
    fn multi_path_template() {
        let g = gen_complete_digraph(7);
        let t = Template::paths(&[PathPattern::directed(3), PathPattern::antidirected(4)]);
        let s = embed_template(&g, &t, &g.vertex_set(), &[(0, 6)], &seq()).unwrap();
        match s.outcome {
            TemplateOutcome::Found { map } => {
                assert_eq!(map[0], 6);
                let mut v = map.clone();
                v.sort();
                v.dedup();
                assert_eq!(v.len(), 7);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let g = gen_blowup_tt(&[4, 4], 0.7, 0.05, 3);
        for c in crate::pattern::necklaces(8) {
            let a = exact_embed(&g, PatternRef::Cycle(&c), &[], &seq()).unwrap();
            let b = exact_embed(&g, PatternRef::Cycle(&c), &[], &OracleOptions::default()).unwrap();
            assert_eq!(a.is_found(), b.is_found(), "{c}");
            if let Some(e) = b.embedding() {
                assert!(check_embedding(&g, PatternRef::Cycle(&c), &e.map, true).valid);
            }
        }
    }

    #[test]
    fn timeout_is_reported() {
        let g = gen_complete_digraph(12);
        let c = CyclePattern::directed(12).unwrap();
        let opts = OracleOptions { deadline: Some(Duration::ZERO), ..seq() };
        let r = exact_embed(&g, PatternRef::Cycle(&c), &[], &opts).unwrap();
        assert!(matches!(r, OracleResult::Timeout | OracleResult::Found(_)));
    }
}
