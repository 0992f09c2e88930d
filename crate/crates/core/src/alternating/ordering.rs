//! Edge orderings with optional block spans and Eulerian tour certificates.

use std::fmt::Write as _;

use serde::Serialize;

use super::OrderingError;
use crate::combinatorics::{factorial, next_permutation};
use crate::graph::{Decomposition, EdgeSet, Graph};

/// A closed walk in a host multigraph. `steps[i]` joins `vertices[i]` and
/// `vertices[i + 1]`; `None` marks an augmentation edge that is not in the
/// graph. Augmentation vertices are numbered from `n` upward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedWalk {
    pub vertices: Vec<usize>,
    pub steps: Vec<Option<usize>>,
}

/// One closed walk per component of the host.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TourCertificate {
    pub walks: Vec<ClosedWalk>,
}

impl TourCertificate {
    /// Original edges in tour order.
    pub fn edge_order(&self) -> Vec<usize> {
        self.walks.iter().flat_map(|w| w.steps.iter().flatten().copied()).collect()
    }

    /// Host degrees of the first `n` vertices, augmentation steps included.
    pub fn host_degrees(&self, n: usize) -> Vec<usize> {
        let mut deg = vec![0; n];
        for w in &self.walks {
            for i in 0..w.steps.len() {
                for v in [w.vertices[i], w.vertices[i + 1]] {
                    if v < n {
                        deg[v] += 1;
                    }
                }
            }
        }
        deg
    }

    pub fn uses_augmentation(&self) -> bool {
        self.walks.iter().any(|w| w.steps.iter().any(Option::is_none))
    }

    /// Every walk is closed and follows real edges; original edges appear
    /// once overall and augmentation pairs at most once.
    pub fn check(&self, g: &Graph) -> Result<(), String> {
        let n = g.vertex_count();
        let mut seen = EdgeSet::new(g.edge_count());
        let mut synthetic = std::collections::HashSet::new();
        for (wi, w) in self.walks.iter().enumerate() {
            if w.steps.is_empty() || w.vertices.len() != w.steps.len() + 1 {
                return Err(format!("walk {wi} is malformed"));
            }
            if w.vertices.first() != w.vertices.last() {
                return Err(format!("walk {wi} is not closed"));
            }
            for (i, step) in w.steps.iter().enumerate() {
                let (a, b) = (w.vertices[i], w.vertices[i + 1]);
                match *step {
                    Some(e) => {
                        if e >= g.edge_count() || (a.min(b), a.max(b)) != g.edge(e) {
                            return Err(format!("walk {wi} step {i} does not match edge {e}"));
                        }
                        if !seen.insert(e) {
                            return Err(format!("edge {e} traversed twice"));
                        }
                    }
                    None => {
                        if a == b || (a < n && b < n) {
                            return Err(format!("walk {wi} step {i} is not an augmentation edge"));
                        }
                        if !synthetic.insert((a.min(b), a.max(b))) {
                            return Err(format!("augmentation edge {a}-{b} used twice"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A contiguous run `perm[start..start + len]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSpan {
    /// Decomposition part the span orders, if any.
    pub part: Option<usize>,
    pub start: usize,
    pub len: usize,
    pub tour: Option<TourCertificate>,
}

impl BlockSpan {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }
}

/// A linear order `σ` of `E(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeOrdering {
    perm: Vec<usize>,
    spans: Vec<BlockSpan>,
    #[serde(skip)]
    position: Vec<usize>,
}

impl EdgeOrdering {
    pub fn new(perm: Vec<usize>) -> Result<Self, OrderingError> {
        Self::with_spans(perm, Vec::new())
    }

    pub fn identity(m: usize) -> Self {
        Self::new((0..m).collect()).expect("identity is a permutation")
    }

    pub fn with_spans(perm: Vec<usize>, mut spans: Vec<BlockSpan>) -> Result<Self, OrderingError> {
        let m = perm.len();
        let mut position = vec![usize::MAX; m];
        for (i, &e) in perm.iter().enumerate() {
            if e >= m {
                return Err(OrderingError::NotPermutation { m });
            }
            if position[e] != usize::MAX {
                return Err(OrderingError::DuplicateEdge(e));
            }
            position[e] = i;
        }
        spans.sort_by_key(|s| s.start);
        let mut end = 0;
        for s in &spans {
            if s.start + s.len > m {
                return Err(OrderingError::SpanOutOfRange { start: s.start, len: s.len, m });
            }
            if s.start < end {
                return Err(OrderingError::SpanOverlap(s.start));
            }
            end = s.start + s.len;
        }
        Ok(EdgeOrdering { perm, spans, position })
    }

    /// Concatenate `blocks` in order, one span per block.
    pub fn from_blocks(blocks: &[(usize, Vec<usize>)]) -> Result<Self, OrderingError> {
        let mut perm = Vec::new();
        let mut spans = Vec::new();
        for (part, edges) in blocks {
            spans.push(BlockSpan {
                part: Some(*part),
                start: perm.len(),
                len: edges.len(),
                tour: None,
            });
            perm.extend_from_slice(edges);
        }
        Self::with_spans(perm, spans)
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Index of edge `e` in `σ`.
    pub fn position(&self, e: usize) -> usize {
        self.position[e]
    }

    pub fn spans(&self) -> &[BlockSpan] {
        &self.spans
    }

    pub fn span_edges(&self, span: &BlockSpan) -> &[usize] {
        &self.perm[span.range()]
    }

    /// `σ` read backwards, spans mirrored.
    pub fn reversed(&self) -> Self {
        let m = self.len();
        let perm: Vec<usize> = self.perm.iter().rev().copied().collect();
        let spans = self
            .spans
            .iter()
            .map(|s| BlockSpan {
                part: s.part,
                start: m - s.start - s.len,
                len: s.len,
                tour: None,
            })
            .collect();
        Self::with_spans(perm, spans).expect("reversal keeps validity")
    }

    /// Length matches `g` and every tour certificate orders exactly its
    /// span.
    pub fn validate(&self, g: &Graph) -> Result<(), OrderingError> {
        if self.len() != g.edge_count() {
            return Err(OrderingError::NotPermutation { m: g.edge_count() });
        }
        for (i, span) in self.spans.iter().enumerate() {
            if let Some(tour) = &span.tour {
                tour.check(g).map_err(|reason| OrderingError::Tour { span: i, reason })?;
                if tour.edge_order() != self.span_edges(span) {
                    return Err(OrderingError::Tour {
                        span: i,
                        reason: "tour order differs from span order".into(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Each block span with `part = Some(i)` holds exactly the edges of part
    /// `i`, and the spans cover `σ`.
    pub fn is_block_consecutive(&self, d: &Decomposition) -> bool {
        let covered: usize = self.spans.iter().map(|s| s.len).sum();
        covered == self.len()
            && self.spans.len() == d.len()
            && self.spans.iter().all(|s| {
                s.part.is_some_and(|p| {
                    p < d.len()
                        && s.len == d.part(p).len()
                        && self.span_edges(s).iter().all(|&e| d.part(p).contains(e))
                })
            })
    }

    /// One edge index per line; spans as leading `#` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.spans {
            let part = s.part.map_or("-".to_string(), |p| p.to_string());
            let _ = writeln!(
                out,
                "# span part={part} start={} len={} tour={}",
                s.start,
                s.len,
                if s.tour.is_some() { "yes" } else { "no" }
            );
        }
        for e in &self.perm {
            let _ = writeln!(out, "{e}");
        }
        out
    }
}

/// `k!·Π|E(G_i)|!`, the number of block-consecutive orderings.
pub fn count_block_orderings(d: &Decomposition) -> u128 {
    d.parts()
        .iter()
        .map(|p| factorial(p.len()))
        .fold(factorial(d.len()), |a, b| a.saturating_mul(b))
}

/// Every block-consecutive ordering, part order outermost, each part's
/// internal order in lexicographic order. Stops when `visit` returns
/// `false`.
pub fn for_each_block_ordering(d: &Decomposition, mut visit: impl FnMut(&[(usize, Vec<usize>)]) -> bool) {
    let k = d.len();
    let mut part_order: Vec<usize> = (0..k).collect();
    loop {
        let mut inner: Vec<Vec<usize>> = part_order.iter().map(|&p| d.part(p).to_vec()).collect();
        loop {
            let blocks: Vec<(usize, Vec<usize>)> =
                part_order.iter().copied().zip(inner.iter().cloned()).collect();
            if !visit(&blocks) {
                return;
            }
            // odometer over the inner permutations, last block fastest
            let mut i = k;
            let mut carried = true;
            while carried && i > 0 {
                i -= 1;
                carried = !next_permutation(&mut inner[i]);
            }
            if carried {
                break;
            }
        }
        if !next_permutation(&mut part_order) {
            return;
        }
    }
}
