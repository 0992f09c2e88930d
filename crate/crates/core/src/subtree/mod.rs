//! Family enumeration, forbidden-member oracles, and the forest/tree moves
//! used by the forest-property arguments.

mod enumerate;
mod forest;
mod oracle;

pub use enumerate::{count_family, enumerate_family, for_each_member};
pub use forest::{
    extend_forest_to_tree, extension_premise, find_cycle, find_g_forest, is_forest,
    ExtensionOutcome, TreeExtension,
};
pub use oracle::{contains_g_tree, find_g_tree, ForbiddenOracle, TABLE_MAX_EDGES};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{EdgeSet, Graph, UnionFind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubtreeError {
    #[error("red edges are not a 𝒢-subgraph: some part has no red edge")]
    NotGSubgraph,
    #[error("forest contains the cycle {0:?}")]
    ForestHasCycle(Vec<usize>),
    #[error("forest does not lie in one connected component of the host")]
    Disconnected,
}

/// A tree subgraph given by its edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeWitness {
    pub edges: EdgeSet,
    pub vertex_count: usize,
}

impl TreeWitness {
    /// Acyclic, connected, and `|edges| = vertex_count - 1`.
    pub fn is_valid(&self, g: &Graph) -> bool {
        if self.edges.len() + 1 != self.vertex_count {
            return false;
        }
        let mut uf = UnionFind::new(g.vertex_count());
        for e in self.edges.iter() {
            let (a, b) = g.edge(e);
            if !uf.union(a, b) {
                return false;
            }
        }
        let verts = g.vertices_of(&self.edges);
        verts.len() == self.vertex_count && verts.iter().all(|&v| uf.size_of(v) == self.vertex_count)
    }
}
