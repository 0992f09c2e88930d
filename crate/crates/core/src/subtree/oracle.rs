//! "Does this edge set contain a forbidden member?" in direct and tabulated
//! forms.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use super::enumerate::for_each_member;
use super::TreeWitness;
use crate::graph::{components, is_g_subgraph, Decomposition, EdgeSet, FamilyDescriptor, Graph};

/// Hosts with at most this many edges get a precomputed lookup table.
pub const TABLE_MAX_EDGES: usize = 22;

const LOW: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Answers whether an edge set contains a `d`-subgraph that is a member of
/// `f`. Small hosts precompute the answer for all `2^m` subsets.
#[derive(Debug, Clone)]
pub struct ForbiddenOracle<'a> {
    g: &'a Graph,
    d: &'a Decomposition,
    f: &'a FamilyDescriptor,
    table: Option<Vec<u64>>,
}

impl<'a> ForbiddenOracle<'a> {
    /// Tabulate when the host is small enough, otherwise search directly.
    pub fn new(g: &'a Graph, d: &'a Decomposition, f: &'a FamilyDescriptor) -> Self {
        if g.edge_count() <= TABLE_MAX_EDGES {
            Self::tabulated(g, d, f)
        } else {
            Self::direct(g, d, f)
        }
    }

    pub fn direct(g: &'a Graph, d: &'a Decomposition, f: &'a FamilyDescriptor) -> Self {
        ForbiddenOracle {
            g,
            d,
            f,
            table: None,
        }
    }

    /// Panics if the host has more than [`TABLE_MAX_EDGES`] edges.
    pub fn tabulated(g: &'a Graph, d: &'a Decomposition, f: &'a FamilyDescriptor) -> Self {
        let m = g.edge_count();
        assert!(m <= TABLE_MAX_EDGES, "lookup table needs at most {TABLE_MAX_EDGES} edges");
        let words = (1usize << m).div_ceil(64);
        let mut table = vec![0u64; words];
        let _ = for_each_member(g, f, &g.all_edges(), Some(d), |member| {
            let mask = member.to_mask() as usize;
            table[mask >> 6] |= 1 << (mask & 63);
            ControlFlow::Continue(())
        });
        // Close upwards: a set is forbidden if dropping any one edge leaves a
        // forbidden set.
        for j in 0..m {
            if let Some(&low) = LOW.get(j) {
                let shift = 1u32 << j;
                for w in table.iter_mut() {
                    *w |= (*w & low) << shift;
                }
            } else {
                let stride = 1usize << (j - 6);
                for i in 0..words {
                    if i & stride != 0 {
                        table[i] |= table[i ^ stride];
                    }
                }
            }
        }
        ForbiddenOracle {
            g,
            d,
            f,
            table: Some(table),
        }
    }

    pub fn is_tabulated(&self) -> bool {
        self.table.is_some()
    }

    pub fn graph(&self) -> &'a Graph {
        self.g
    }

    pub fn decomposition(&self) -> &'a Decomposition {
        self.d
    }

    pub fn family(&self) -> &'a FamilyDescriptor {
        self.f
    }

    /// Whether `h` contains a forbidden member.
    pub fn contains(&self, h: &EdgeSet) -> bool {
        if let Some(table) = &self.table {
            let mask = h.to_mask() as usize;
            return table[mask >> 6] >> (mask & 63) & 1 == 1;
        }
        self.contains_mask_free(h)
    }

    /// Lookup by bitmask; only valid for tabulated oracles.
    #[inline]
    pub(crate) fn contains_mask(&self, mask: u64) -> bool {
        match &self.table {
            Some(table) => {
                let mask = mask as usize;
                table[mask >> 6] >> (mask & 63) & 1 == 1
            }
            None => self.contains_mask_free(&EdgeSet::from_mask(self.g.edge_count(), mask)),
        }
    }

    fn contains_mask_free(&self, h: &EdgeSet) -> bool {
        match self.f {
            FamilyDescriptor::Trees(t) => find_g_tree(self.g, h, self.d, *t).is_some(),
            _ => self.find(h).is_some(),
        }
    }

    /// A forbidden member inside `h`, if any.
    pub fn find(&self, h: &EdgeSet) -> Option<EdgeSet> {
        if let FamilyDescriptor::Trees(t) = self.f {
            return find_g_tree(self.g, h, self.d, *t).map(|w| w.edges);
        }
        let mut found = None;
        let _ = for_each_member(self.g, self.f, h, Some(self.d), |member| {
            found = Some(member.clone());
            ControlFlow::Break(())
        });
        found
    }
}

/// Whether `(V(g), h)` contains a tree on `t` vertices meeting every part.
pub fn contains_g_tree(g: &Graph, h: &EdgeSet, d: &Decomposition, t: usize) -> bool {
    find_g_tree(g, h, d, t).is_some()
}

/// A tree on `t` vertices inside `h` meeting every part of `d`.
pub fn find_g_tree(g: &Graph, h: &EdgeSet, d: &Decomposition, t: usize) -> Option<TreeWitness> {
    if t < 2 || t > g.vertex_count() || t - 1 < d.len() || !is_g_subgraph(h, d) {
        return None;
    }
    let mut comp_of = vec![usize::MAX; g.vertex_count()];
    let comps = components(g, h);
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    for (ci, comp) in comps.iter().enumerate() {
        if comp.len() < t {
            continue;
        }
        let local = EdgeSet::from_indices(
            g.edge_count(),
            h.iter().filter(|&e| comp_of[g.edge(e).0] == ci),
        );
        if !is_g_subgraph(&local, d) {
            continue;
        }
        if d.len() == 1 {
            let start = local
                .intersection(d.part(0))
                .first()
                .expect("component meets the part");
            return Some(grow_bfs(g, &local, start, t));
        }
        let mut found = None;
        let _ = for_each_member(g, &FamilyDescriptor::Trees(t), &local, Some(d), |tree| {
            found = Some(TreeWitness {
                edges: tree.clone(),
                vertex_count: t,
            });
            ControlFlow::Break(())
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Breadth-first tree in `h` from edge `start`, stopped at `t` vertices.
/// The component of `start` must have at least `t` vertices.
fn grow_bfs(g: &Graph, h: &EdgeSet, start: usize, t: usize) -> TreeWitness {
    let (a, b) = g.edge(start);
    let mut seen = vec![false; g.vertex_count()];
    seen[a] = true;
    seen[b] = true;
    let mut edges = EdgeSet::from_indices(g.edge_count(), [start]);
    let mut count = 2;
    let mut queue = VecDeque::from([a, b]);
    while count < t {
        let v = queue.pop_front().expect("component has enough vertices");
        for &(x, e) in g.neighbors(v) {
            if count == t {
                break;
            }
            if !seen[x] && h.contains(e) {
                seen[x] = true;
                edges.insert(e);
                count += 1;
                queue.push_back(x);
            }
        }
    }
    TreeWitness {
        edges,
        vertex_count: t,
    }
}
