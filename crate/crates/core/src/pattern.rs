//! Oriented cycle and path patterns.
//!
//! A cycle pattern on `n` positions stores one boolean per edge: entry `i`
//! is `true` when the edge between positions `i` and `i+1 (mod n)` points
//! forward, `i → i+1`. Path patterns store `ℓ−1` booleans in the same way.
//! A segment "on m vertices" always means `m` vertices and `m−1` edges.

use crate::error::{Error, Result};
use crate::num::floor_tol;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclePattern {
    orient: Vec<bool>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PathPattern {
    orient: Vec<bool>,
}

/// Outcome of the directed-segment dichotomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseSplit {
    /// A directed segment on at least `⌊βn⌋` vertices exists; `ell` is the
    /// longest one and `start` its first position in index order.
    Case1 { ell: usize, start: usize },
    /// Every segment on `⌊βn⌋` vertices contains a switch.
    Case2,
}

/// One segment of a [`SegmentPlan`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PlannedSegment {
    pub start: usize,
    pub len: usize,
    /// Index of the vertex class this segment targets.
    pub class: usize,
}

/// Consecutive segments covering a cycle pattern exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentPlan {
    pub n: usize,
    pub segments: Vec<PlannedSegment>,
    /// Cumulative overshoot `d_s` for `s = 1..t−1`.
    pub overshoots: Vec<usize>,
}

/// Blocks of the non-directed part `P′` in the Case 1(b) frame.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case1bBlocks {
    /// `(first position, vertex count)` of each block, in order along `P′`.
    pub blocks: Vec<(usize, usize)>,
    /// Orientation of the edge joining block `i` to block `i+1`
    /// (`true` when it points from block `i` into block `i+1`).
    pub boundary_forward: Vec<bool>,
}

fn parse_signs(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '+' => Ok(true),
            '-' | '\u{2212}' => Ok(false),
            _ => Err(Error::Input(format!("pattern character {c:?} is not '+' or '-'"))),
        })
        .collect()
}

fn signs(orient: &[bool]) -> String {
    orient.iter().map(|&b| if b { '+' } else { '-' }).collect()
}

impl CyclePattern {
    pub fn new(orient: Vec<bool>) -> Result<Self> {
        if orient.len() < 3 {
            return Err(Error::Input(format!("a cycle pattern needs n >= 3, got {}", orient.len())));
        }
        Ok(CyclePattern { orient })
    }

    pub fn directed(n: usize) -> Result<Self> {
        Self::new(vec![true; n])
    }

    /// Alternating orientation; only even lengths are anti-directed.
    pub fn antidirected(n: usize) -> Result<Self> {
        if n % 2 == 1 {
            return Err(Error::Input(format!("no anti-directed cycle has odd length {n}")));
        }
        Self::new((0..n).map(|i| i % 2 == 0).collect())
    }

    /// Parses a `+`/`-` string.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_signs(s)?)
    }

    /// Parses a `+`/`-` string or one of the aliases `directed`, `antidirected`.
    pub fn parse_with_len(s: &str, n: usize) -> Result<Self> {
        let p = match s.trim() {
            "directed" => Self::directed(n)?,
            "antidirected" | "anti-directed" => Self::antidirected(n)?,
            other => Self::parse(other)?,
        };
        if p.len() != n {
            return Err(Error::Input(format!("pattern has length {} but the host has {n} vertices", p.len())));
        }
        Ok(p)
    }

    /// Pattern whose bit `i` of `mask` is the orientation of edge `i`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        Self::new((0..n).map(|i| (mask >> i) & 1 == 1).collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.orient.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.orient.is_empty()
    }

    pub fn orientation(&self) -> &[bool] {
        &self.orient
    }

    /// Whether the edge between positions `i` and `i+1` points `i → i+1`.
    #[inline]
    pub fn forward(&self, i: usize) -> bool {
        self.orient[i % self.len()]
    }

    #[inline]
    fn prev_edge(&self, i: usize) -> bool {
        self.orient[(i + self.len() - 1) % self.len()]
    }

    pub fn is_directed(&self) -> bool {
        self.orient.iter().all(|&b| b) || self.orient.iter().all(|&b| !b)
    }

    /// Both incident edges leave position `i`.
    #[inline]
    pub fn is_source(&self, i: usize) -> bool {
        self.forward(i) && !self.prev_edge(i)
    }

    /// Both incident edges enter position `i`.
    #[inline]
    pub fn is_sink(&self, i: usize) -> bool {
        !self.forward(i) && self.prev_edge(i)
    }

    #[inline]
    pub fn is_switch(&self, i: usize) -> bool {
        self.forward(i) != self.prev_edge(i)
    }

    /// Sorted positions that are sources or sinks.
    pub fn switches(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_switch(i)).collect()
    }

    /// Longest directed segment as `(start, vertex count)`.
    ///
    /// Runs of equally oriented edges are followed around the wrap; a run of
    /// `r` edges starting at edge `s` covers positions `s..=s+r` and counts
    /// `r+1` vertices. A directed cycle gives `(0, n)`. Ties go to the
    /// smallest start.
    pub fn longest_directed_segment(&self) -> (usize, usize) {
        let n = self.len();
        if self.is_directed() {
            return (0, n);
        }
        // the first edge that begins a run
        let e0 = (0..n).find(|&i| self.orient[i] != self.prev_edge(i)).unwrap();
        let mut best = (usize::MAX, 0usize);
        let mut i = 0;
        while i < n {
            let s = (e0 + i) % n;
            let mut r = 1;
            while i + r < n && self.orient[(e0 + i + r) % n] == self.orient[s] {
                r += 1;
            }
            let ell = r + 1;
            if ell > best.1 || (ell == best.1 && s < best.0) {
                best = (s, ell);
            }
            i += r;
        }
        best
    }

    /// Directed-segment dichotomy with window `⌊βn⌋`.
    pub fn classify_case(&self, beta: f64) -> CaseSplit {
        let w = floor_tol(beta * self.len() as f64).max(0) as usize;
        let (start, ell) = self.longest_directed_segment();
        if ell >= w {
            CaseSplit::Case1 { ell, start }
        } else {
            debug_assert!(self.every_window_has_switch(w));
            CaseSplit::Case2
        }
    }

    /// Whether every segment on `w` vertices has a switch strictly inside it.
    pub fn every_window_has_switch(&self, w: usize) -> bool {
        let n = self.len();
        if w < 3 {
            return false;
        }
        if w > n {
            return true;
        }
        (0..n).all(|i| (1..w - 1).any(|j| self.is_switch(i + j)))
    }

    /// Re-indexes the cycle from `origin` in direction `+1` (or `−1` when
    /// `reflect`). Returns the new pattern and, for every new position, the
    /// original position it came from.
    pub fn framed(&self, origin: usize, reflect: bool) -> (CyclePattern, Vec<usize>) {
        let n = self.len();
        let map: Vec<usize> = (0..n)
            .map(|i| if reflect { (origin + n - i % n) % n } else { (origin + i) % n })
            .collect();
        let orient = (0..n)
            .map(|i| {
                if reflect {
                    !self.orient[(origin + 2 * n - i - 1) % n]
                } else {
                    self.orient[(origin + i) % n]
                }
            })
            .collect();
        (CyclePattern { orient }, map)
    }

    pub fn rotate(&self, k: usize) -> CyclePattern {
        self.framed(k % self.len(), false).0
    }

    /// The same cycle traversed in the opposite direction from position 0.
    pub fn reflect(&self) -> CyclePattern {
        self.framed(0, true).0
    }

    /// Every edge reversed.
    pub fn reverse_orientations(&self) -> CyclePattern {
        CyclePattern { orient: self.orient.iter().map(|b| !b).collect() }
    }

    /// Canonical rotation: lexicographically smallest orientation string
    /// among rotations that put a source at position 0 (all rotations when
    /// the pattern has no switch). Returns the pattern and the rotation used.
    pub fn canonical(&self) -> (CyclePattern, usize) {
        let n = self.len();
        let cands: Vec<usize> = if self.is_directed() {
            (0..n).collect()
        } else {
            (0..n).filter(|&i| self.is_source(i)).collect()
        };
        cands
            .into_iter()
            .map(|k| (self.rotate(k), k))
            .min()
            .expect("at least one rotation")
    }

    /// Lexicographically smallest rotation, the necklace representative.
    pub fn necklace(&self) -> CyclePattern {
        (0..self.len()).map(|k| self.rotate(k)).min().unwrap()
    }

    /// Path on `count` vertices starting at position `start` in index order.
    pub fn segment(&self, start: usize, count: usize) -> PathPattern {
        assert!(count >= 1 && count <= self.len());
        PathPattern { orient: (0..count - 1).map(|j| self.forward(start + j)).collect() }
    }

    pub fn to_signs(&self) -> String {
        signs(&self.orient)
    }
}

/// One representative per rotation class of orientations of the `n`-cycle.
pub fn necklaces(n: usize) -> Vec<CyclePattern> {
    assert!((3..=30).contains(&n));
    let full = (1u64 << n) - 1;
    let rot = |m: u64, k: usize| ((m >> k) | (m << (n - k))) & full;
    (0..=full)
        .filter(|&m| (1..n).all(|k| rot(m, k) >= m))
        .map(|m| {
            // bit i of m is edge i; the minimal integer rotation is the
            // representative, so every class is visited once
            CyclePattern::from_mask(n, m).unwrap()
        })
        .collect()
}

/// One representative per class of orientations of the path on `l` vertices,
/// identifying a path with its reversal.
pub fn path_classes(l: usize) -> Vec<PathPattern> {
    assert!((1..=31).contains(&l));
    let e = l - 1;
    let mut out = Vec::new();
    for m in 0u64..(1u64 << e) {
        let p = PathPattern { orient: (0..e).map(|i| (m >> i) & 1 == 1).collect() };
        if p <= p.reversed() {
            out.push(p);
        }
    }
    out
}

impl PathPattern {
    pub fn new(orient: Vec<bool>) -> Self {
        PathPattern { orient }
    }

    pub fn single() -> Self {
        PathPattern { orient: Vec::new() }
    }

    pub fn directed(vertices: usize) -> Self {
        assert!(vertices >= 1);
        PathPattern { orient: vec![true; vertices - 1] }
    }

    pub fn antidirected(vertices: usize) -> Self {
        assert!(vertices >= 1);
        PathPattern { orient: (0..vertices - 1).map(|i| i % 2 == 0).collect() }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(PathPattern { orient: parse_signs(s)? })
    }

    /// Parses a `+`/`-` string or an alias for a path on `vertices` vertices.
    pub fn parse_with_len(s: &str, vertices: usize) -> Result<Self> {
        let p = match s.trim() {
            "directed" => Self::directed(vertices),
            "antidirected" | "anti-directed" => Self::antidirected(vertices),
            other => Self::parse(other)?,
        };
        if p.vertices() != vertices {
            return Err(Error::Input(format!("path pattern has {} vertices, expected {vertices}", p.vertices())));
        }
        Ok(p)
    }

    /// Number of vertices.
    #[inline]
    pub fn vertices(&self) -> usize {
        self.orient.len() + 1
    }

    pub fn orientation(&self) -> &[bool] {
        &self.orient
    }

    #[inline]
    pub fn forward(&self, i: usize) -> bool {
        self.orient[i]
    }

    pub fn is_directed(&self) -> bool {
        self.orient.iter().all(|&b| b) || self.orient.iter().all(|&b| !b)
    }

    /// The same path traversed from its other end.
    pub fn reversed(&self) -> PathPattern {
        PathPattern { orient: self.orient.iter().rev().map(|b| !b).collect() }
    }

    pub fn to_signs(&self) -> String {
        signs(&self.orient)
    }
}

impl fmt::Display for CyclePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_signs())
    }
}

impl fmt::Debug for CyclePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclePattern({})", self.to_signs())
    }
}

impl fmt::Display for PathPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_signs())
    }
}

impl fmt::Debug for PathPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PathPattern({})", self.to_signs())
    }
}

/// Sizes of `q = ⌈total/d⌉` blocks that are as equal as possible, larger
/// blocks first.
pub fn equal_split(total: usize, d: usize) -> Vec<usize> {
    assert!(d >= 1);
    if total == 0 {
        return Vec::new();
    }
    let q = total.div_ceil(d);
    let base = total / q;
    let extra = total % q;
    (0..q).map(|i| base + usize::from(i < extra)).collect()
}

/// Case 2 segment partition.
///
/// Requires position 0 to be a source (use [`CyclePattern::canonical`]), the
/// pattern to be in Case 2 for `beta`, `Σ m_i = n` and every `m_i ≥ 3βn`.
/// Segment `P_s` for `s < t` is the shortest continuation whose last edge
/// points forward out of it and whose cumulative length reaches
/// `m₁+…+m_s`; the last segment takes the rest.
pub fn partition_case2(c: &CyclePattern, sizes: &[usize], beta: f64) -> Result<SegmentPlan> {
    let n = c.len();
    let t = sizes.len();
    if t == 0 || sizes.iter().sum::<usize>() != n {
        return Err(Error::Precondition(format!("class sizes {sizes:?} do not sum to n={n}")));
    }
    if t == 1 {
        return Ok(SegmentPlan { n, segments: vec![PlannedSegment { start: 0, len: n, class: 0 }], overshoots: vec![] });
    }
    if c.classify_case(beta) != CaseSplit::Case2 {
        return Err(Error::Precondition(format!("pattern {c} is not in Case 2 for beta={beta}")));
    }
    let bn = beta * n as f64;
    if let Some(m) = sizes.iter().find(|&&m| (m as f64) < 3.0 * bn - 1e-9) {
        return Err(Error::Precondition(format!("class size {m} is below 3*beta*n = {:.2}", 3.0 * bn)));
    }
    if !c.is_source(0) {
        return Err(Error::Precondition("position 0 must be a source; rotate to the canonical form".into()));
    }
    let mut segments = Vec::with_capacity(t);
    let mut overshoots = Vec::with_capacity(t - 1);
    let mut start = 0;
    let mut target = 0;
    for (s, &m) in sizes.iter().enumerate().take(t - 1) {
        target += m;
        let end = (target..n)
            .find(|&e| c.forward(e - 1))
            .ok_or_else(|| Error::Precondition(format!("no forward edge after position {target}")))?;
        let d = end - target;
        if d as f64 > bn + 1e-9 {
            return Err(Error::Precondition(format!("overshoot {d} exceeds beta*n at boundary {}", s + 1)));
        }
        segments.push(PlannedSegment { start, len: end - start, class: s });
        overshoots.push(d);
        start = end;
    }
    if start >= n {
        return Err(Error::Precondition("the last segment is empty".into()));
    }
    segments.push(PlannedSegment { start, len: n - start, class: t - 1 });
    debug_assert!(n - start <= sizes[t - 1]);
    Ok(SegmentPlan { n, segments, overshoots })
}

/// Splits `P′` of a pattern given in the Case 1(b) frame into blocks.
///
/// The frame has a source at position 0 and the directed run
/// `0 → n−1 → … → n−ℓ+1`, so `P′` is positions `1..=n−ℓ`.
pub fn directed_run_decomposition_case1b(c: &CyclePattern, ell: usize, d: usize) -> Result<Case1bBlocks> {
    let n = c.len();
    if ell >= n {
        return Err(Error::Precondition("l = n leaves no segment P' to split".into()));
    }
    if d < 2 {
        return Err(Error::Precondition(format!("block size D={d} must be at least 2")));
    }
    if ell < 2 || !c.is_source(0) || !(n + 1 - ell..n).all(|e| !c.forward(e)) {
        return Err(Error::Precondition("pattern is not in the Case 1(b) frame for this l".into()));
    }
    let mut blocks = Vec::new();
    let mut pos = 1;
    for len in equal_split(n - ell, d) {
        blocks.push((pos, len));
        pos += len;
    }
    let boundary_forward = blocks.iter().take(blocks.len() - 1).map(|&(s, l)| c.forward(s + l - 1)).collect();
    Ok(Case1bBlocks { blocks, boundary_forward })
}
