//! Edge-disjoint Hamiltonian cycles by rotation–extension.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::packing::RESTARTS;
use crate::graph::{EdgeSet, Graph};
use crate::par;

const BACKTRACK_MAX_N: usize = 16;
const BACKTRACK_NODE_LIMIT: usize = 200_000;

/// `vertices[i]` and `vertices[(i + 1) % n]` are joined by `edges[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HamCycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl HamCycle {
    fn from_vertices(g: &Graph, mut vertices: Vec<usize>) -> Self {
        // start at the smallest vertex, going towards its smaller neighbor
        let n = vertices.len();
        let at = vertices.iter().enumerate().min_by_key(|(_, &v)| v).map_or(0, |(i, _)| i);
        vertices.rotate_left(at);
        if n > 2 && vertices[n - 1] < vertices[1] {
            vertices[1..].reverse();
        }
        let edges = (0..n)
            .map(|i| g.edge_between(vertices[i], vertices[(i + 1) % n]).expect("cycle edge present"))
            .collect();
        HamCycle { vertices, edges }
    }

    pub fn edge_set(&self, m: usize) -> EdgeSet {
        EdgeSet::from_indices(m, self.edges.iter().copied())
    }

    /// Visits every vertex of `g` once along edges of `g`.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let n = g.vertex_count();
        let mut seen = vec![false; n];
        n >= 3
            && self.vertices.len() == n
            && self.edges.len() == n
            && self.vertices.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
            && (0..n).all(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                g.edge(self.edges[i]) == (a.min(b), a.max(b))
            })
    }
}

/// Up to `count` pairwise edge-disjoint Hamiltonian cycles of
/// `(V(g), allowed)`, found one after another. Restarts run in parallel;
/// the most cycles win, ties going to the lowest offset.
pub fn hamiltonian_cycles_disjoint(g: &Graph, allowed: &EdgeSet, count: usize, seed: u64) -> Vec<HamCycle> {
    if g.vertex_count() < 3 || count == 0 {
        return Vec::new();
    }
    let runs = par::map_range(RESTARTS as usize * 2, |offset| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(offset as u64));
        let mut left = allowed.clone();
        let mut cycles = Vec::new();
        while cycles.len() < count {
            match find_hamiltonian(g, &left, &mut rng) {
                Some(c) => {
                    left.difference_with(&c.edge_set(g.edge_count()));
                    cycles.push(c);
                }
                None => break,
            }
        }
        cycles
    });
    runs.into_iter()
        .fold(Vec::new(), |best, c| if c.len() > best.len() { c } else { best })
}

fn find_hamiltonian(g: &Graph, allowed: &EdgeSet, rng: &mut ChaCha8Rng) -> Option<HamCycle> {
    let n = g.vertex_count();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut nb: Vec<usize> = g
                .neighbors(v)
                .iter()
                .filter(|&&(_, e)| allowed.contains(e))
                .map(|&(u, _)| u)
                .collect();
            nb.shuffle(rng);
            nb
        })
        .collect();
    if adj.iter().any(|nb| nb.len() < 2) {
        return None;
    }
    let found = rotate_extend(&adj, rng).or_else(|| (n <= BACKTRACK_MAX_N).then(|| backtrack(&adj)).flatten());
    found.map(|vs| HamCycle::from_vertices(g, vs))
}

/// Pósa rotation–extension with a step limit.
fn rotate_extend(adj: &[Vec<usize>], rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let n = adj.len();
    let is_adj = |a: usize, b: usize| adj[a].contains(&b);
    let start = rng.gen_range(0..n);
    let mut path = vec![start];
    let mut pos = vec![usize::MAX; n];
    pos[start] = 0;
    for _ in 0..40 * n * n {
        let end = *path.last().expect("path is never empty");
        if path.len() == n && is_adj(end, path[0]) {
            return Some(path);
        }
        if let Some(&next) = adj[end].iter().find(|&&u| pos[u] == usize::MAX) {
            pos[next] = path.len();
            path.push(next);
            continue;
        }
        // rotate: end–u with u on the path, reverse the segment after u
        let choices: Vec<usize> = adj[end]
            .iter()
            .copied()
            .filter(|&u| pos[u] + 2 < path.len())
            .collect();
        let &u = choices.choose(rng)?;
        let i = pos[u];
        path[i + 1..].reverse();
        for (j, &v) in path.iter().enumerate().skip(i + 1) {
            pos[v] = j;
        }
    }
    None
}

fn backtrack(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut path = vec![0];
    let mut on = vec![false; n];
    on[0] = true;
    let mut nodes = 0;
    fn go(adj: &[Vec<usize>], path: &mut Vec<usize>, on: &mut [bool], nodes: &mut usize) -> Option<bool> {
        *nodes += 1;
        if *nodes > BACKTRACK_NODE_LIMIT {
            return None;
        }
        let end = *path.last().expect("nonempty");
        if path.len() == adj.len() {
            return Some(adj[end].contains(&path[0]));
        }
        for &u in &adj[end] {
            if on[u] {
                continue;
            }
            on[u] = true;
            path.push(u);
            match go(adj, path, on, nodes) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            path.pop();
            on[u] = false;
        }
        Some(false)
    }
    match go(adj, &mut path, &mut on, &mut nodes) {
        Some(true) => Some(path),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(g: &Graph, cycles: &[HamCycle]) {
        let mut used = EdgeSet::new(g.edge_count());
        for c in cycles {
            assert!(c.is_valid(g));
            let s = c.edge_set(g.edge_count());
            assert!(used.is_disjoint(&s));
            used.union_with(&s);
        }
    }

    #[test]
    fn complete_graphs_decompose() {
        let k5 = Graph::complete(5);
        let c = hamiltonian_cycles_disjoint(&k5, &k5.all_edges(), 2, 0);
        assert_eq!(c.len(), 2);
        check(&k5, &c);
        let k9 = Graph::complete(9);
        let c = hamiltonian_cycles_disjoint(&k9, &k9.all_edges(), 4, 0);
        assert_eq!(c.len(), 4);
        check(&k9, &c);
    }

    #[test]
    fn trees_have_none() {
        let t = Graph::star(5);
        assert!(hamiltonian_cycles_disjoint(&t, &t.all_edges(), 1, 0).is_empty());
    }

    #[test]
    fn first_vertex_is_smallest() {
        let g = Graph::cycle(6);
        let c = hamiltonian_cycles_disjoint(&g, &g.all_edges(), 1, 3);
        assert_eq!(c[0].vertices, vec![0, 1, 2, 3, 4, 5]);
    }
}
