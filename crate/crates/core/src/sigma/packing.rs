//! K₄-factor packings, monogamous 4-blocks and their Hall assignment.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{EdgeSet, Graph};
use crate::par;

/// Restarts tried by the randomized searches.
pub const RESTARTS: u64 = 8;
const FACTOR_NODE_LIMIT: usize = 200_000;

/// Vertex-disjoint K₄s covering the padded vertex set. Vertices `>= n` are
/// the virtual padding vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K4Factor {
    pub cliques: Vec<[usize; 4]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorPacking {
    pub real_vertices: usize,
    pub padded_vertices: usize,
    pub factors: Vec<K4Factor>,
    /// Restart offset that produced this packing.
    pub restart: u64,
}

impl FactorPacking {
    /// Factors pairwise edge-disjoint, each a partition of the padded
    /// vertices into K₄s of `allowed` edges or padding edges.
    pub fn is_valid(&self, g: &Graph, allowed: &EdgeSet) -> bool {
        let p = self.padded_vertices;
        let mut used = vec![false; p * p];
        self.factors.iter().all(|f| {
            let mut covered = vec![false; p];
            f.cliques.iter().all(|q| {
                q.iter().all(|&v| v < p && !std::mem::replace(&mut covered[v], true))
                    && pairs(q).all(|(a, b)| {
                        let real = b < self.real_vertices;
                        let ok = !real || g.edge_between(a, b).is_some_and(|e| allowed.contains(e));
                        ok && !std::mem::replace(&mut used[a * p + b], true)
                    })
            }) && covered.iter().all(|&c| c)
        })
    }
}

fn pairs(q: &[usize; 4]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..4).flat_map(move |i| (i + 1..4).map(move |j| (q[i].min(q[j]), q[i].max(q[j]))))
}

/// Up to `wanted` pairwise edge-disjoint K₄-factors of `(V(g), allowed)`
/// joined with `K_{4−b}` padding vertices, where `n = 4a + b`, `1 <= b <= 4`.
/// Each factor is found by randomized backtracking; restarts run in
/// parallel and the most factors win, ties going to the lowest offset.
pub fn k4_factor_packing(g: &Graph, allowed: &EdgeSet, wanted: usize, seed: u64) -> FactorPacking {
    let n = g.vertex_count();
    let pad = if n == 0 { 0 } else { (4 - n % 4) % 4 };
    let p = n + pad;
    let mut avail = vec![false; p * p];
    for a in 0..p {
        for b in 0..p {
            avail[a * p + b] = a != b
                && (a >= n || b >= n || g.edge_between(a, b).is_some_and(|e| allowed.contains(e)));
        }
    }
    let runs = par::map_range(RESTARTS as usize, |offset| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(offset as u64));
        let mut avail = avail.clone();
        let mut factors = Vec::new();
        while factors.len() < wanted && p > 0 {
            match find_factor(p, &avail, &mut rng) {
                Some(cliques) => {
                    for q in &cliques {
                        for (a, b) in pairs(q) {
                            avail[a * p + b] = false;
                            avail[b * p + a] = false;
                        }
                    }
                    factors.push(K4Factor { cliques });
                }
                None => break,
            }
        }
        factors
    });
    let (restart, factors) = runs
        .into_iter()
        .enumerate()
        .fold((0, Vec::new()), |best, (i, f)| if f.len() > best.1.len() { (i, f) } else { best });
    FactorPacking {
        real_vertices: n,
        padded_vertices: p,
        factors,
        restart: restart as u64,
    }
}

fn find_factor(p: usize, avail: &[bool], rng: &mut ChaCha8Rng) -> Option<Vec<[usize; 4]>> {
    let mut covered = vec![false; p];
    let mut out = Vec::with_capacity(p / 4);
    let mut nodes = 0usize;
    // per vertex, a shuffled neighbor order
    let order: Vec<Vec<usize>> = (0..p)
        .map(|v| {
            let mut nb: Vec<usize> = (0..p).filter(|&u| avail[v * p + u]).collect();
            nb.shuffle(rng);
            nb
        })
        .collect();
    fn go(
        p: usize,
        avail: &[bool],
        order: &[Vec<usize>],
        covered: &mut [bool],
        out: &mut Vec<[usize; 4]>,
        nodes: &mut usize,
    ) -> Option<bool> {
        *nodes += 1;
        if *nodes > FACTOR_NODE_LIMIT {
            return None;
        }
        let Some(v) = (0..p).find(|&v| !covered[v]) else {
            return Some(true);
        };
        let nb: Vec<usize> = order[v].iter().copied().filter(|&u| !covered[u]).collect();
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                if !avail[a * p + b] {
                    continue;
                }
                for &c in &nb[j + 1..] {
                    if !avail[a * p + c] || !avail[b * p + c] {
                        continue;
                    }
                    let mut q = [v, a, b, c];
                    q.sort_unstable();
                    for &x in &q {
                        covered[x] = true;
                    }
                    out.push(q);
                    match go(p, avail, order, covered, out, nodes) {
                        Some(true) => return Some(true),
                        None => return None,
                        Some(false) => {}
                    }
                    out.pop();
                    for &x in &q {
                        covered[x] = false;
                    }
                }
            }
        }
        Some(false)
    }
    match go(p, avail, &order, &mut covered, &mut out, &mut nodes) {
        Some(true) => Some(out),
        _ => None,
    }
}

/// A 4-cycle `v0 v1 v2 v3 v0` chosen inside a K₄ of a factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourBlock {
    pub vertices: [usize; 4],
    /// `edges[i]` joins `vertices[i]` and `vertices[(i + 1) % 4]`.
    pub edges: [usize; 4],
    pub factor: usize,
}

impl FourBlock {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSelection {
    pub blocks: Vec<FourBlock>,
    /// K₄s skipped because they touch a padding vertex.
    pub synthetic: usize,
    /// Blocks dropped because they repeated a vertex pair.
    pub dropped: Vec<[usize; 4]>,
}

/// One C₄ per real K₄ of each factor; any block repeating a vertex pair
/// of an earlier block is dropped and recorded.
pub fn monogamous_c4_blocks(g: &Graph, packing: &FactorPacking) -> BlockSelection {
    let n = packing.real_vertices;
    let mut seen = vec![false; n * n];
    let mut out = BlockSelection {
        blocks: Vec::new(),
        synthetic: 0,
        dropped: Vec::new(),
    };
    for (fi, factor) in packing.factors.iter().enumerate() {
        for q in &factor.cliques {
            if q.iter().any(|&v| v >= n) {
                out.synthetic += 1;
                continue;
            }
            if pairs(q).any(|(a, b)| seen[a * n + b]) {
                out.dropped.push(*q);
                continue;
            }
            for (a, b) in pairs(q) {
                seen[a * n + b] = true;
            }
            let vertices = *q;
            let edges = std::array::from_fn(|i| {
                g.edge_between(vertices[i], vertices[(i + 1) % 4]).expect("K4 edge present")
            });
            out.blocks.push(FourBlock {
                vertices,
                edges,
                factor: fi,
            });
        }
    }
    out
}

/// No vertex pair lies in two blocks.
pub fn is_monogamous(blocks: &[FourBlock]) -> bool {
    let mut seen = std::collections::HashSet::new();
    blocks.iter().all(|b| pairs(&b.vertices).all(|pr| seen.insert(pr)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockAssignment {
    pub l: usize,
    /// Block indices assigned to each vertex.
    pub assigned: Vec<Vec<usize>>,
    /// `H_v`: union of the blocks assigned to `v`.
    pub h: Vec<EdgeSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallFailure {
    /// Vertices whose copies cannot all be matched.
    pub deficient: Vec<usize>,
    /// Copies reachable from the unmatched one by alternating paths.
    pub copies: usize,
    /// Blocks adjacent to those copies.
    pub neighborhood: usize,
}

/// Match `l` copies of each vertex to distinct blocks containing it by
/// augmenting paths.
pub fn assign_blocks_hall(g: &Graph, blocks: &[FourBlock], l: usize) -> Result<BlockAssignment, HallFailure> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let containing: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..blocks.len()).filter(|&b| blocks[b].contains(v)).collect())
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; blocks.len()];
    // copy c of vertex v is w = v * l + c
    for w in 0..n * l {
        let mut seen = vec![false; blocks.len()];
        if !augment(w, l, &containing, &mut owner, &mut seen) {
            let mut deficient: Vec<usize> = Vec::new();
            let mut seen_w = vec![false; n * l];
            let mut reach = vec![false; blocks.len()];
            alternating_reach(w, l, &containing, &owner, &mut seen_w, &mut reach);
            for (x, &s) in seen_w.iter().enumerate() {
                if s && !deficient.contains(&(x / l)) {
                    deficient.push(x / l);
                }
            }
            deficient.sort_unstable();
            return Err(HallFailure {
                deficient,
                copies: seen_w.iter().filter(|&&s| s).count(),
                neighborhood: reach.iter().filter(|&&r| r).count(),
            });
        }
    }
    let mut assigned = vec![Vec::new(); n];
    for (b, o) in owner.iter().enumerate() {
        if let Some(w) = o {
            assigned[w / l].push(b);
        }
    }
    let h = assigned
        .iter()
        .map(|bs| EdgeSet::from_indices(m, bs.iter().flat_map(|&b| blocks[b].edges)))
        .collect();
    Ok(BlockAssignment { l, assigned, h })
}

fn augment(
    w: usize,
    l: usize,
    containing: &[Vec<usize>],
    owner: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &b in &containing[w / l] {
        if seen[b] {
            continue;
        }
        seen[b] = true;
        if owner[b].is_none_or(|o| augment(o, l, containing, owner, seen)) {
            owner[b] = Some(w);
            return true;
        }
    }
    false
}

fn alternating_reach(
    w: usize,
    l: usize,
    containing: &[Vec<usize>],
    owner: &[Option<usize>],
    seen_w: &mut [bool],
    reach: &mut [bool],
) {
    if std::mem::replace(&mut seen_w[w], true) {
        return;
    }
    for &b in &containing[w / l] {
        reach[b] = true;
        if let Some(o) = owner[b] {
            alternating_reach(o, l, containing, owner, seen_w, reach);
        }
    }
}

impl BlockAssignment {
    /// The `H_v` are pairwise edge-disjoint and every vertex of `H_v` other
    /// than `v` has degree 2 in it.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let disjoint = self
            .h
            .iter()
            .enumerate()
            .all(|(i, a)| self.h[i + 1..].iter().all(|b| a.is_disjoint(b)));
        disjoint
            && self.h.iter().enumerate().all(|(v, hv)| {
                (0..g.vertex_count()).all(|u| {
                    let d = g.degree_in(u, hv);
                    u == v || d == 0 || d == 2
                }) && g.degree_in(v, hv) == 2 * self.assigned[v].len()
                    && self.assigned[v].len() == self.l
            })
    }
}
