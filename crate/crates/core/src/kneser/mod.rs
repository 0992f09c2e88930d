//! General Kneser graphs `KG(G, 𝒢, ℱ)` and their chromatic and clique
//! numbers.

mod bits;
mod clique;
mod coloring;

pub use bits::BitMatrix;
pub use clique::{clique_number, greedy_clique};
pub use coloring::{chromatic_number, chromatic_number_capped, dsatur_coloring, greedy_upper_coloring};

use std::fmt::Write as _;
use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Decomposition, EdgeSet, FamilyDescriptor, FamilyError, Graph};
use crate::par;
use crate::subtree::for_each_member;

/// Largest Kneser vertex count `build_kneser` accepts by default.
pub const DEFAULT_VERTEX_CAP: usize = 50_000;
/// Largest vertex count for which `chromatic_number` runs the exact search.
pub const DEFAULT_EXACT_CAP: usize = 2_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KneserError {
    #[error("Kneser graph has more than {cap} vertices (vertex cap)")]
    TooManyVertices { cap: usize },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("witness contains the forbidden member {member:?}")]
    InvalidWitness { member: EdgeSet },
    #[error("witness has universe {found}, host has {expected} edges")]
    WitnessUniverse { expected: usize, found: usize },
}

/// `KG(G, 𝒢, ℱ)`: vertices are the `𝒢`-subgraphs of `G` in `ℱ`, adjacent
/// when edge-disjoint.
#[derive(Debug, Clone)]
pub struct KneserInstance {
    host: Graph,
    family: FamilyDescriptor,
    decomposition: Decomposition,
    vertices: Vec<EdgeSet>,
    adjacency: BitMatrix,
}

pub fn build_kneser(
    g: &Graph,
    d: &Decomposition,
    f: &FamilyDescriptor,
) -> Result<KneserInstance, KneserError> {
    build_kneser_capped(g, d, f, DEFAULT_VERTEX_CAP)
}

pub fn build_kneser_capped(
    g: &Graph,
    d: &Decomposition,
    f: &FamilyDescriptor,
    cap: usize,
) -> Result<KneserInstance, KneserError> {
    f.validate(g)?;
    let mut vertices = Vec::new();
    let flow = for_each_member(g, f, &g.all_edges(), Some(d), |member| {
        if vertices.len() == cap {
            return ControlFlow::Break(());
        }
        vertices.push(member.clone());
        ControlFlow::Continue(())
    });
    if flow.is_break() {
        return Err(KneserError::TooManyVertices { cap });
    }
    let n = vertices.len();
    let rows = par::map_range(n, |i| {
        let mut row = BitMatrix::empty_row(n);
        for (j, other) in vertices.iter().enumerate() {
            if vertices[i].is_disjoint(other) {
                row[j >> 6] |= 1 << (j & 63);
            }
        }
        row
    });
    Ok(KneserInstance {
        host: g.clone(),
        family: f.clone(),
        decomposition: d.clone(),
        vertices,
        adjacency: BitMatrix::from_rows(n, rows),
    })
}

impl KneserInstance {
    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn family(&self) -> &FamilyDescriptor {
        &self.family
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn vertices(&self) -> &[EdgeSet] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.adjacency.degree(v)).sum::<usize>() / 2
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adjacency
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u, v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency.degree(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.row_iter(v)
    }

    /// No two adjacent vertices share a color.
    pub fn is_proper(&self, colors: &[usize]) -> bool {
        colors.len() == self.vertex_count()
            && (0..self.vertex_count())
                .all(|u| self.neighbors(u).all(|v| colors[u] != colors[v]))
    }

    /// Pairwise adjacent, distinct vertices.
    pub fn is_clique(&self, members: &[usize]) -> bool {
        members.iter().enumerate().all(|(i, &u)| {
            u < self.vertex_count() && members[i + 1..].iter().all(|&v| u != v && self.adjacent(u, v))
        })
    }

    /// `p N E` header, then one line per vertex listing its neighbors.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.vertex_count(), self.edge_count());
        for v in 0..self.vertex_count() {
            let row: Vec<String> = self.neighbors(v).map(|u| u.to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// Color per Kneser vertex.
    Coloring(Vec<usize>),
    /// Pairwise adjacent Kneser vertices.
    Clique(Vec<usize>),
}

/// An exact value or a certified interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedValue {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub certificate: Certificate,
    /// Witness for the other side of the interval, when one exists.
    pub dual: Option<Certificate>,
}

impl BoundedValue {
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }

    /// The interval is ordered and every certificate checks out against `kg`.
    pub fn validate(&self, kg: &KneserInstance) -> bool {
        // The primary certificate attains its bound; the dual only has to be
        // a valid object.
        let check = |c: &Certificate, primary: bool| match c {
            Certificate::Coloring(colors) => {
                kg.is_proper(colors) && (!primary || distinct(colors) <= self.upper)
            }
            Certificate::Clique(members) => {
                kg.is_clique(members) && (!primary || members.len() >= self.lower)
            }
        };
        self.lower <= self.upper
            && self.exact == (self.lower == self.upper)
            && check(&self.certificate, true)
            && self.dual.as_ref().is_none_or(|c| check(c, false))
    }
}

pub(crate) fn distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}
