use serde::Serialize;
use thiserror::Error;

use super::{EdgeSet, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("a decomposition needs at least one part")]
    NoParts,
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("parts {first} and {second} share edge {edge}")]
    Overlap {
        first: usize,
        second: usize,
        edge: usize,
    },
    #[error("part {part} references edge {edge} but the graph has {m} edges")]
    EdgeOutOfRange { part: usize, edge: usize, m: usize },
    #[error("parts do not cover edges {0:?}")]
    NotCovering(Vec<usize>),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// An ordered family of pairwise edge-disjoint, nonempty edge sets, sorted by
/// size (ties keep input order).
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    parts: Vec<EdgeSet>,
    #[serde(skip)]
    origin: Vec<usize>,
    covering: bool,
    #[serde(skip)]
    part_of: Vec<Option<usize>>,
}

impl PartialEq for Decomposition {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts && self.covering == other.covering
    }
}

impl Eq for Decomposition {}

impl Decomposition {
    /// Validate raw parts against `g` and sort them by size.
    pub fn validate(
        g: &Graph,
        raw_parts: Vec<EdgeSet>,
        covering: bool,
    ) -> Result<Self, DecompositionError> {
        if raw_parts.is_empty() {
            return Err(DecompositionError::NoParts);
        }
        let m = g.edge_count();
        let mut owner: Vec<Option<usize>> = vec![None; m];
        for (i, part) in raw_parts.iter().enumerate() {
            if part.universe() != m {
                let edge = part.iter().find(|&e| e >= m).unwrap_or(part.universe());
                return Err(DecompositionError::EdgeOutOfRange { part: i, edge, m });
            }
            if part.is_empty() {
                return Err(DecompositionError::EmptyPart(i));
            }
            for e in part.iter() {
                if let Some(first) = owner[e] {
                    return Err(DecompositionError::Overlap {
                        first,
                        second: i,
                        edge: e,
                    });
                }
                owner[e] = Some(i);
            }
        }
        if covering {
            let missing: Vec<usize> = (0..m).filter(|&e| owner[e].is_none()).collect();
            if !missing.is_empty() {
                return Err(DecompositionError::NotCovering(missing));
            }
        }
        let mut order: Vec<usize> = (0..raw_parts.len()).collect();
        order.sort_by_key(|&i| (raw_parts[i].len(), i));
        let mut slots: Vec<Option<EdgeSet>> = raw_parts.into_iter().map(Some).collect();
        let parts: Vec<EdgeSet> = order
            .iter()
            .map(|&i| slots[i].take().expect("each part moved once"))
            .collect();
        let mut part_of = vec![None; m];
        for (i, part) in parts.iter().enumerate() {
            for e in part.iter() {
                part_of[e] = Some(i);
            }
        }
        Ok(Decomposition {
            parts,
            origin: order,
            covering,
            part_of,
        })
    }

    /// The one-part decomposition `{G}`. `g` must have at least one edge.
    pub fn trivial(g: &Graph) -> Self {
        Decomposition::validate(g, vec![g.all_edges()], true)
            .expect("a graph with edges is its own decomposition")
    }

    /// One singleton part per edge, in edge order.
    pub fn singletons(g: &Graph) -> Self {
        let m = g.edge_count();
        let parts = (0..m).map(|e| EdgeSet::from_indices(m, [e])).collect();
        Decomposition::validate(g, parts, true).expect("singletons partition the edges")
    }

    pub fn parts(&self) -> &[EdgeSet] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &EdgeSet {
        &self.parts[i]
    }

    /// Number of parts `k`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_covering(&self) -> bool {
        self.covering
    }

    /// Position of sorted part `i` in the caller's original list.
    pub fn origin(&self, i: usize) -> usize {
        self.origin[i]
    }

    #[inline]
    pub fn part_of(&self, e: usize) -> Option<usize> {
        self.part_of.get(e).copied().flatten()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(EdgeSet::len).collect()
    }

    /// Size of the smallest part.
    pub fn smallest(&self) -> usize {
        self.parts[0].len()
    }

    /// True when `k = 1` and the part is every edge of the host.
    pub fn is_whole_graph(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].len() == self.parts[0].universe()
    }

    /// Union of all parts.
    pub fn support(&self) -> EdgeSet {
        let mut all = EdgeSet::new(self.parts[0].universe());
        for p in &self.parts {
            all.union_with(p);
        }
        all
    }

    /// The decomposition formed by parts `0..count` of this one.
    pub fn prefix(&self, g: &Graph, count: usize) -> Result<Self, DecompositionError> {
        Decomposition::validate(g, self.parts[..count].to_vec(), false)
    }

    /// One line per part with space-separated edge indices, in sorted order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.parts {
            let line: Vec<String> = p.iter().map(|e| e.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Parse one part per line (space-separated edge indices, `#` comments).
pub fn parse_decomposition(
    g: &Graph,
    text: &str,
    covering: bool,
) -> Result<Decomposition, DecompositionError> {
    let m = g.edge_count();
    let mut parts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut part = EdgeSet::new(m);
        for field in line.split_whitespace() {
            let e: usize = field.parse().map_err(|_| DecompositionError::Syntax {
                line: i + 1,
                message: format!("not an edge index: {field:?}"),
            })?;
            if e >= m {
                return Err(DecompositionError::EdgeOutOfRange {
                    part: parts.len(),
                    edge: e,
                    m,
                });
            }
            if !part.insert(e) {
                return Err(DecompositionError::Syntax {
                    line: i + 1,
                    message: format!("edge {e} listed twice"),
                });
            }
        }
        parts.push(part);
    }
    Decomposition::validate(g, parts, covering)
}

/// Whether `h` meets every part of `d`.
pub fn is_g_subgraph(h: &EdgeSet, d: &Decomposition) -> bool {
    d.parts().iter().all(|p| p.intersects(h))
}
