//! Seeded random instances and the small-graph catalog.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::HarnessError;
use crate::forest::forest_slack;
use crate::graph::{Decomposition, EdgeSet, Graph};

/// `⌈delta_floor·n⌉`, with a tolerance so that exact products such as
/// `0.875·8` are not rounded up by float noise.
pub fn degree_floor(n: usize, delta_floor: f64) -> usize {
    (delta_floor * n as f64 - 1e-9).ceil().max(0.0) as usize
}

/// Start from `K_n` and drop edges in seeded random order whenever both
/// ends stay at degree `>= ⌈delta_floor·n⌉`. Edges keep the lexicographic
/// order of `K_n`.
pub fn random_dense_graph(n: usize, delta_floor: f64, seed: u64) -> Result<Graph, HarnessError> {
    if !(delta_floor > 0.0 && delta_floor < 1.0) {
        return Err(HarnessError::InvalidDelta(delta_floor));
    }
    let need = degree_floor(n, delta_floor);
    if n == 0 || need > n - 1 {
        return Err(HarnessError::InfeasibleFloor { n, need });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.shuffle(&mut rng);
    let mut degree = vec![n - 1; n];
    let mut keep = vec![true; edges.len()];
    for i in order {
        let (u, v) = edges[i];
        if degree[u] > need && degree[v] > need {
            keep[i] = false;
            degree[u] -= 1;
            degree[v] -= 1;
        }
    }
    let mut i = 0;
    edges.retain(|_| {
        i += 1;
        keep[i - 1]
    });
    Ok(Graph::new(n, edges).expect("subgraph of a complete graph"))
}

/// A random spanning tree (each vertex joined to a random earlier one)
/// plus every other pair independently with probability `p`.
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.insert((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("pairs are distinct")
}

/// Split off `k − 1` small connected parts (one to three edges each) and
/// keep the rest as the largest part. Edges whose removal would leave a
/// vertex without a remaining edge are not taken, so the last part stays
/// spanning when `g` has no isolated vertices.
pub fn random_decomposition(g: &Graph, k: usize, seed: u64) -> Result<Decomposition, HarnessError> {
    let m = g.edge_count();
    if k == 0 || k > m {
        return Err(HarnessError::PartCount { k, m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rest = g.all_edges();
    let mut parts = Vec::with_capacity(k);
    let removable = |rest: &EdgeSet, e: usize| {
        let (a, b) = g.edge(e);
        rest.contains(e) && g.degree_in(a, rest) > 1 && g.degree_in(b, rest) > 1
    };
    for _ in 1..k {
        let mut candidates: Vec<usize> = rest.iter().filter(|&e| removable(&rest, e)).collect();
        if candidates.len() < 2 {
            // fall back to any edge that keeps the rest nonempty
            candidates = rest.iter().collect();
        }
        let &first = candidates.choose(&mut rng).ok_or(HarnessError::PartCount { k, m })?;
        let mut part = EdgeSet::from_indices(m, [first]);
        rest.remove(first);
        let target = rng.gen_range(1..=3usize);
        while part.len() < target && rest.len() > k - parts.len() {
            let touching: Vec<usize> = g
                .vertices_of(&part)
                .into_iter()
                .flat_map(|v| g.neighbors(v).iter().map(|&(_, e)| e))
                .filter(|&e| removable(&rest, e))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let Some(&e) = touching.choose(&mut rng) else { break };
            part.insert(e);
            rest.remove(e);
        }
        parts.push(part);
        if rest.is_empty() {
            return Err(HarnessError::PartCount { k, m });
        }
    }
    parts.push(rest);
    Ok(Decomposition::validate(g, parts, true)?)
}

/// `k <= 2`, or the three smallest parts hold at least
/// `3·C(2k − 3, 2) + 4` edges.
pub fn side_condition(d: &Decomposition) -> bool {
    let k = d.len();
    k <= 2 || d.sizes()[..3].iter().sum::<usize>() as u128 >= 3 * forest_slack(k) + 4
}

type EdgeList = Vec<(usize, usize)>;

/// Every connected graph with `1..=max_edges` edges, one per isomorphism
/// class, grown edge by edge from `K_2`. Ordered by edge count, then
/// vertex count, then canonical edge list.
pub fn connected_catalog(max_edges: usize) -> Vec<Graph> {
    let mut layer: BTreeSet<(usize, Vec<(usize, usize)>)> = BTreeSet::new();
    if max_edges == 0 {
        return Vec::new();
    }
    layer.insert((2, vec![(0, 1)]));
    // (edge count, vertex count, canonical edges)
    let mut all: Vec<(usize, usize, EdgeList)> = vec![(1, 2, vec![(0, 1)])];
    for m in 2..=max_edges {
        let mut next = BTreeSet::new();
        for (n, edges) in &layer {
            let n = *n;
            let present: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
            let mut grow = |n2: usize, e: (usize, usize)| {
                let mut es = edges.clone();
                es.push(e);
                next.insert((n2, canonical_form(n2, &es)));
            };
            for u in 0..n {
                for v in u + 1..n {
                    if !present.contains(&(u, v)) {
                        grow(n, (u, v));
                    }
                }
                grow(n + 1, (u, n));
            }
        }
        all.extend(next.iter().map(|(n, es)| (m, *n, es.clone())));
        layer = next;
    }
    all.sort();
    all.into_iter()
        .map(|(_, n, es)| Graph::new(n, es).expect("catalog graphs are simple"))
        .collect()
}

/// Lexicographically least sorted edge list over all vertex relabelings
/// that list vertices by nonincreasing degree.
pub(crate) fn canonical_form(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut degree = vec![0usize; n];
    for &(u, v) in edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    // classes of equal degree, highest first; relabel within classes only
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(degree[v]), v));
    for v in by_degree {
        match classes.last_mut() {
            Some(c) if degree[c[0]] == degree[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut label = vec![0usize; n];
    fn rec(
        classes: &mut [Vec<usize>],
        at: usize,
        next_label: usize,
        label: &mut [usize],
        edges: &[(usize, usize)],
        best: &mut Option<Vec<(usize, usize)>>,
    ) {
        if at == classes.len() {
            let mut es: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(u, v)| (label[u].min(label[v]), label[u].max(label[v])))
                .collect();
            es.sort_unstable();
            if best.as_ref().is_none_or(|b| es < *b) {
                *best = Some(es);
            }
            return;
        }
        let mut perm = classes[at].clone();
        perm.sort_unstable();
        loop {
            for (i, &v) in perm.iter().enumerate() {
                label[v] = next_label + i;
            }
            let len = perm.len();
            rec(classes, at + 1, next_label + len, label, edges, best);
            if !crate::combinatorics::next_permutation(&mut perm) {
                break;
            }
        }
    }
    rec(&mut classes, 0, 0, &mut label, edges, &mut best);
    best.unwrap_or_default()
}

/// Covering decompositions with at most `max_k` parts; `max_k <= 2`.
/// Two-part splits are listed once, the part holding edge 0 first.
pub fn small_decompositions(g: &Graph, max_k: usize) -> Vec<Decomposition> {
    let m = g.edge_count();
    let mut out = Vec::new();
    if m == 0 || max_k == 0 {
        return out;
    }
    out.push(Decomposition::trivial(g));
    if max_k >= 2 && (2..64).contains(&m) {
        for mask in 0u64..(1u64 << (m - 1)) {
            let a = EdgeSet::from_mask(m, (mask << 1) | 1);
            let b = a.complement();
            if b.is_empty() {
                continue;
            }
            out.push(Decomposition::validate(g, vec![a, b], true).expect("a split is a partition"));
        }
    }
    out
}
