//! Simple undirected graphs with stable edge indices, edge subsets,
//! decompositions and subgraph family descriptors.

mod decomposition;
mod dsu;
mod edge_set;
mod euler;
mod family;

pub use decomposition::{is_g_subgraph, parse_decomposition, Decomposition, DecompositionError};
pub(crate) use dsu::UnionFind;
pub(crate) use euler::closed_trail;
pub use edge_set::{EdgeIter, EdgeSet};
pub use family::{FamilyDescriptor, FamilyError};

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

/// A simple undirected graph. Edges are indexed `0..m` in insertion order
/// and the indices never change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    // per vertex: (neighbor, edge index), sorted by neighbor
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.push_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    fn push_edge(&mut self, u: usize, v: usize) -> Result<usize, GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if self.edge_between(a, b).is_some() {
            return Err(GraphError::DuplicateEdge(a, b));
        }
        let id = self.edges.len();
        self.edges.push((a, b));
        for (x, y) in [(a, b), (b, a)] {
            let list = &mut self.adj[x];
            let pos = list.partition_point(|&(w, _)| w < y);
            list.insert(pos, (y, id));
        }
        Ok(id)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.push_edge(u, v).expect("complete graph edges are simple");
            }
        }
        g
    }

    /// The cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are simple")
    }

    /// The path on `n` vertices `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are simple")
    }

    /// The star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star edges are simple")
    }

    /// `k` vertex-disjoint edges `(2i, 2i+1)`.
    pub fn matching(k: usize) -> Self {
        Graph::new(2 * k, (0..k).map(|i| (2 * i, 2 * i + 1))).expect("matching edges are simple")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints `(u, v)` with `u < v`.
    #[inline]
    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(neighbor, edge)` pairs sorted by neighbor.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    #[inline]
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    #[inline]
    pub fn is_incident(&self, e: usize, v: usize) -> bool {
        let (a, b) = self.edges[e];
        a == v || b == v
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edge_count())
    }

    pub fn empty_edges(&self) -> EdgeSet {
        EdgeSet::new(self.edge_count())
    }

    /// Degree of `v` counting only edges in `set`.
    pub fn degree_in(&self, v: usize, set: &EdgeSet) -> usize {
        self.adj[v].iter().filter(|&&(_, e)| set.contains(e)).count()
    }

    /// Vertices touched by at least one edge of `set`, ascending.
    pub fn vertices_of(&self, set: &EdgeSet) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for e in set.iter() {
            let (a, b) = self.edges[e];
            seen[a] = true;
            seen[b] = true;
        }
        (0..self.n).filter(|&v| seen[v]).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || components(self, &self.all_edges()).len() == 1
    }

    /// Parse the edge-list format: a header `n m` followed by `m` lines `u v`.
    /// Lines starting with `#` and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
        let [n, m] = parse_pair(header_line, header)?;
        let mut g = Graph::empty(n);
        for (line, text) in lines {
            if g.edge_count() == m {
                return Err(ParseError::EdgeCount {
                    expected: m,
                    found: m + 1,
                });
            }
            let [u, v] = parse_pair(line, text)?;
            g.push_edge(u, v)
                .map_err(|source| ParseError::Graph { line, source })?;
        }
        if g.edge_count() != m {
            return Err(ParseError::EdgeCount {
                expected: m,
                found: g.edge_count(),
            });
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2], ParseError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(ParseError::Syntax {
            line,
            message: format!("expected two integers, found {:?}", text),
        });
    }
    let mut out = [0; 2];
    for (slot, field) in out.iter_mut().zip(&fields) {
        *slot = field.parse().map_err(|_| ParseError::Syntax {
            line,
            message: format!("not a non-negative integer: {field:?}"),
        })?;
    }
    Ok(out)
}

/// Connected components of the spanning subgraph `(V(g), h)`, including
/// isolated vertices. Components are ordered by smallest vertex and each
/// vertex list is ascending.
pub fn components(g: &Graph, h: &EdgeSet) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(g.vertex_count());
    for e in h.iter() {
        let (a, b) = g.edge(e);
        uf.union(a, b);
    }
    let mut slot = vec![usize::MAX; g.vertex_count()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.vertex_count() {
        let root = uf.find(v);
        if slot[root] == usize::MAX {
            slot[root] = out.len();
            out.push(Vec::new());
        }
        out[slot[root]].push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_triangle() {
        let g = Graph::parse("3 3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(g.edge_between(2, 0), Some(2));
    }

    #[test]
    fn parse_isolated_vertices() {
        let g = Graph::parse("2 0\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_duplicate_names_line() {
        let err = Graph::parse("3 2\n0 1\n0 1\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::Graph {
                line: 3,
                source: GraphError::DuplicateEdge(0, 1)
            }
        );
        assert!(err.to_string().starts_with("line 3"));
    }

    #[test]
    fn parse_rejects_loops_and_range() {
        assert!(matches!(
            Graph::parse("3 1\n1 1\n"),
            Err(ParseError::Graph {
                line: 2,
                source: GraphError::SelfLoop(1)
            })
        ));
        assert!(matches!(
            Graph::parse("# comment\n3 1\n\n0 3\n"),
            Err(ParseError::Graph {
                line: 4,
                source: GraphError::VertexOutOfRange { vertex: 3, n: 3 }
            })
        ));
        assert!(matches!(
            Graph::parse("3 2\n0 1\n"),
            Err(ParseError::EdgeCount { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::complete(5);
        assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn components_of_triangle_in_k4() {
        let g = Graph::complete(4);
        let tri: EdgeSet = EdgeSet::from_indices(
            6,
            [(0, 1), (1, 2), (0, 2)].map(|(u, v)| g.edge_between(u, v).unwrap()),
        );
        assert_eq!(components(&g, &tri), vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn components_empty_and_full() {
        let g = Graph::cycle(5);
        assert_eq!(components(&g, &g.empty_edges()).len(), 5);
        assert_eq!(components(&g, &g.all_edges()), vec![vec![0, 1, 2, 3, 4]]);
    }
}
