//! Brute-force reference implementations. Everything here works on plain
//! edge lists and bitmasks and shares no code with the library beyond the
//! `Graph` accessors.

#![allow(dead_code)]

use kneser_core::{Decomposition, Graph};
use proptest::prelude::*;

pub fn mask_edges(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |e| mask >> e & 1 == 1)
}

pub fn part_masks(d: &Decomposition) -> Vec<u64> {
    d.parts().iter().map(|p| p.iter().fold(0u64, |acc, e| acc | 1 << e)).collect()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// The edges of `mask` form a tree on exactly `t` vertices.
pub fn is_tree(g: &Graph, mask: u64, t: usize) -> bool {
    if mask.count_ones() as usize + 1 != t {
        return false;
    }
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    let mut touched = vec![false; g.vertex_count()];
    for e in mask_edges(mask) {
        let (a, b) = g.edge(e);
        touched[a] = true;
        touched[b] = true;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    touched.iter().filter(|&&x| x).count() == t
}

/// Every submask of `mask` with `s` bits.
pub fn submasks_of_size(mask: u64, s: usize) -> Vec<u64> {
    let bits: Vec<usize> = mask_edges(mask).collect();
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn rec(bits: &[usize], s: usize, from: usize, pick: &mut Vec<usize>, out: &mut Vec<u64>) {
        if pick.len() == s {
            out.push(pick.iter().fold(0, |acc, &e| acc | 1 << e));
            return;
        }
        for i in from..bits.len() {
            if bits.len() - i < s - pick.len() {
                break;
            }
            pick.push(bits[i]);
            rec(bits, s, i + 1, pick, out);
            pick.pop();
        }
    }
    if s <= bits.len() {
        rec(&bits, s, 0, &mut pick, &mut out);
    }
    out
}

/// Some `t`-vertex tree inside `mask` meets every part.
pub fn has_g_tree(g: &Graph, parts: &[u64], mask: u64, t: usize) -> bool {
    if t < 2 {
        return false;
    }
    submasks_of_size(mask, t - 1)
        .into_iter()
        .any(|s| parts.iter().all(|&p| p & s != 0) && is_tree(g, s, t))
}

pub fn full_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Largest edge set with no `t`-vertex 𝒢-tree.
pub fn brute_ex(g: &Graph, d: &Decomposition, t: usize) -> usize {
    let parts = part_masks(d);
    let m = g.edge_count();
    (0..=full_mask(m))
        .filter(|&s| !has_g_tree(g, &parts, s, t))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Red and blue masks when the edges of `colored` alternate along `perm`,
/// starting red.
pub fn alternate(perm: &[usize], colored: u64) -> (u64, u64) {
    let (mut red, mut blue, mut next_red) = (0u64, 0u64, true);
    for &e in perm {
        if colored >> e & 1 == 1 {
            if next_red {
                red |= 1 << e;
            } else {
                blue |= 1 << e;
            }
            next_red = !next_red;
        }
    }
    (red, blue)
}

/// Longest colored set along `perm` with neither class holding a
/// `t`-vertex 𝒢-tree.
pub fn brute_ex_alt_fixed(g: &Graph, d: &Decomposition, t: usize, perm: &[usize]) -> usize {
    let parts = part_masks(d);
    (0..=full_mask(g.edge_count()))
        .filter(|&c| {
            let (r, b) = alternate(perm, c);
            !has_g_tree(g, &parts, r, t) && !has_g_tree(g, &parts, b, t)
        })
        .map(|c| c.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Crossing count of the bipartition given by `side`.
pub fn crossing(g: &Graph, side: u64) -> usize {
    g.edges().iter().filter(|&&(a, b)| (side >> a & 1) != (side >> b & 1)).count()
}

/// Minimum crossing count with both sides of at least `r` vertices.
pub fn brute_cut_r(g: &Graph, r: usize) -> Option<usize> {
    let n = g.vertex_count();
    (1u64..(1u64 << n) - 1)
        .filter(|s| {
            let a = s.count_ones() as usize;
            a >= r && n - a >= r
        })
        .map(|s| crossing(g, s))
        .min()
}

/// Chromatic number of a graph given by adjacency rows, by trying every
/// color count in turn.
pub fn brute_chromatic(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    if n == 0 {
        return 0;
    }
    fn fits(adj: &[Vec<bool>], colors: &mut Vec<usize>, k: usize) -> bool {
        let v = colors.len();
        if v == adj.len() {
            return true;
        }
        for c in 0..k {
            if (0..v).all(|u| !(adj[v][u] && colors[u] == c)) {
                colors.push(c);
                if fits(adj, colors, k) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    (1..=n).find(|&k| fits(adj, &mut Vec::new(), k)).expect("n colors always suffice")
}

/// Clique number by subset enumeration.
pub fn brute_clique(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    assert!(n <= 20);
    (0u32..1 << n)
        .filter(|s| {
            let vs: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
            vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| adj[a][b]))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// All `t`-vertex 𝒢-trees of `g` as masks.
pub fn brute_g_trees(g: &Graph, d: &Decomposition, t: usize) -> Vec<u64> {
    let parts = part_masks(d);
    submasks_of_size(full_mask(g.edge_count()), t.saturating_sub(1))
        .into_iter()
        .filter(|&s| t >= 2 && parts.iter().all(|&p| p & s != 0) && is_tree(g, s, t))
        .collect()
}

/// Kneser adjacency on the given vertex masks: edge-disjointness.
pub fn disjointness(vertices: &[u64]) -> Vec<Vec<bool>> {
    vertices
        .iter()
        .map(|&a| vertices.iter().map(|&b| a != b && a & b == 0).collect())
        .collect()
}

// ---- proptest strategies ----

/// A simple graph on `2..=max_n` vertices with at least one edge and at
/// most `max_m` edges.
pub fn arb_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(move |n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let count = pairs.len();
            (Just(n), Just(pairs), proptest::collection::vec(any::<bool>(), count))
        })
        .prop_map(move |(n, pairs, keep)| {
            let mut edges: Vec<(usize, usize)> =
                pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&p, _)| p).take(max_m).collect();
            if edges.is_empty() {
                edges.push(pairs[0]);
            }
            Graph::new(n, edges).unwrap()
        })
}

/// A connected graph: a random tree plus extra edges, at most `max_m`
/// edges in total where possible.
pub fn arb_connected(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let parents = (1..n).map(|v| 0..v).collect::<Vec<_>>();
            let extra = proptest::collection::vec((0..n, 0..n), 0..n * 2);
            (Just(n), parents, extra)
        })
        .prop_map(move |(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            for (a, b) in extra {
                let e = (a.min(b), a.max(b));
                if a != b && edges.len() < max_m.max(n - 1) && !edges.contains(&e) {
                    edges.push(e);
                }
            }
            Graph::new(n, edges).unwrap()
        })
}

/// A covering decomposition of `g` from a per-edge label in `0..k`.
pub fn arb_decomposition(g: Graph, max_k: usize) -> impl Strategy<Value = (Graph, Decomposition)> {
    let m = g.edge_count();
    proptest::collection::vec(0..max_k.max(1), m).prop_map(move |labels| {
        let mut parts: Vec<kneser_core::EdgeSet> = Vec::new();
        let mut slot = vec![usize::MAX; max_k.max(1)];
        for (e, &l) in labels.iter().enumerate() {
            if slot[l] == usize::MAX {
                slot[l] = parts.len();
                parts.push(kneser_core::EdgeSet::new(m));
            }
            parts[slot[l]].insert(e);
        }
        let d = Decomposition::validate(&g, parts, true).unwrap();
        (g.clone(), d)
    })
}
