//! Odd-vertex pairing, triangle blocks, the staged tour and the final
//! assembly of `σ`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::hamilton::HamCycle;
use super::packing::RESTARTS;
use super::{EulerOrder, SigmaError};
use crate::alternating::{BlockSpan, ClosedWalk, EdgeOrdering, TourCertificate};
use crate::graph::{closed_trail, components, EdgeSet, Graph};
use crate::par;

/// Vertex-disjoint subpaths of `cycle` whose end points are exactly the
/// `odd` vertices. Consecutive odd vertices around the cycle are paired;
/// of the two possible pairings the one with fewer edges is kept. Each
/// path is listed edge by edge from one end to the other.
pub fn odd_pairing_paths(cycle: &HamCycle, odd: &[usize]) -> Result<Vec<Vec<usize>>, SigmaError> {
    if odd.len() % 2 == 1 {
        return Err(SigmaError::OddCount(odd.len()));
    }
    let n = cycle.vertices.len();
    let mut at: Vec<usize> = Vec::with_capacity(odd.len());
    for &v in odd {
        let p = cycle
            .vertices
            .iter()
            .position(|&u| u == v)
            .ok_or(SigmaError::NotOnCycle(v))?;
        at.push(p);
    }
    at.sort_unstable();
    let arc = |from: usize, to: usize| -> Vec<usize> {
        let len = (to + n - from) % n;
        (0..len).map(|j| cycle.edges[(from + j) % n]).collect()
    };
    let pairing = |shift: usize| -> Vec<Vec<usize>> {
        let t = at.len();
        (0..t / 2)
            .map(|j| arc(at[(2 * j + shift) % t], at[(2 * j + 1 + shift) % t]))
            .collect()
    };
    if at.is_empty() {
        return Ok(Vec::new());
    }
    let a = pairing(0);
    let b = pairing(1);
    let size = |p: &Vec<Vec<usize>>| p.iter().map(Vec::len).sum::<usize>();
    Ok(if size(&b) < size(&a) { b } else { a })
}

/// A triangle `vertices[0] vertices[1] vertices[2]`, `edges[i]` joining
/// `vertices[i]` and `vertices[(i + 1) % 3]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub vertices: [usize; 3],
    pub edges: [usize; 3],
}

/// Greedy maximal edge-disjoint triangle packing of `(V(g), remainder)`.
/// Edges are scanned in a seeded random order; restarts keep the largest
/// packing, ties going to the lowest offset.
pub fn triangle_blocks(g: &Graph, remainder: &EdgeSet, seed: u64) -> Vec<Triangle> {
    let runs = par::map_range(RESTARTS as usize, |offset| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(offset as u64));
        let mut order = remainder.to_vec();
        order.shuffle(&mut rng);
        let mut free = remainder.clone();
        let mut out = Vec::new();
        for e in order {
            if !free.contains(e) {
                continue;
            }
            let (a, b) = g.edge(e);
            let third = g.neighbors(a).iter().find_map(|&(w, ea)| {
                let eb = g.edge_between(b, w)?;
                (free.contains(ea) && free.contains(eb)).then_some((w, ea, eb))
            });
            if let Some((w, ea, eb)) = third {
                for x in [e, ea, eb] {
                    free.remove(x);
                }
                out.push(Triangle {
                    vertices: [a, b, w],
                    edges: [e, eb, ea],
                });
            }
        }
        out
    });
    runs.into_iter()
        .fold(Vec::new(), |best, t| if t.len() > best.len() { t } else { best })
}

/// The staged closed tour of `H ∪ 3-blocks ∪ residual ∪ C_n` and its edge
/// order `π`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StagedTour {
    pub order: Vec<usize>,
    pub walk: ClosedWalk,
}

/// Stage `i` walks, from `v_i`: an Eulerian tour of `H_{v_i}`, every
/// untraversed 3-block at `v_i`, the untraversed residual component at
/// `v_i`, then the cycle edge `v_i v_{i+1}`. The closing edge `v_n v_1`
/// comes last.
pub fn staged_euler_order(
    g: &Graph,
    h: &[EdgeSet],
    triangles: &[Triangle],
    residual: &EdgeSet,
    c_n: &HamCycle,
) -> Result<StagedTour, SigmaError> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut union = c_n.edge_set(m);
    for hv in h {
        union.union_with(hv);
    }
    for t in triangles {
        union.union_with(&EdgeSet::from_indices(m, t.edges));
    }
    union.union_with(residual);
    let cn = c_n.vertices.len();
    let listed = h.iter().map(EdgeSet::len).sum::<usize>() + 3 * triangles.len() + residual.len() + cn;
    if listed != union.len() {
        return Err(SigmaError::Overlap);
    }
    if let Some(v) = (0..n).find(|&v| g.degree_in(v, &union) % 2 == 1) {
        return Err(SigmaError::Parity(v));
    }
    let comps: Vec<Vec<usize>> = components(g, residual)
        .into_iter()
        .filter(|c| c.iter().any(|&v| g.degree_in(v, residual) > 0))
        .collect();
    let mut comp_of = vec![None; n];
    for (ci, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = Some(ci);
        }
    }
    let mut comp_done = vec![false; comps.len()];
    let mut tri_done = vec![false; triangles.len()];
    let mut vertices = vec![c_n.vertices[0]];
    let mut steps: Vec<Option<usize>> = Vec::new();
    let push_trail = |set: &EdgeSet, from: usize, vertices: &mut Vec<usize>, steps: &mut Vec<Option<usize>>| {
        let ids = set.to_vec();
        let local: Vec<(usize, usize)> = ids.iter().map(|&e| g.edge(e)).collect();
        let (vs, order) = closed_trail(n, &local, from);
        vertices.extend_from_slice(&vs[1..]);
        steps.extend(order.iter().map(|&i| Some(ids[i])));
        order.len()
    };
    for i in 0..cn {
        let v = c_n.vertices[i];
        if let Some(hv) = h.get(v).filter(|hv| !hv.is_empty()) {
            if push_trail(hv, v, &mut vertices, &mut steps) != hv.len() {
                return Err(SigmaError::Unreachable(v));
            }
        }
        for (ti, t) in triangles.iter().enumerate() {
            if tri_done[ti] || !t.vertices.contains(&v) {
                continue;
            }
            tri_done[ti] = true;
            let at = t.vertices.iter().position(|&x| x == v).expect("checked");
            for j in 0..3 {
                steps.push(Some(t.edges[(at + j) % 3]));
                vertices.push(t.vertices[(at + j + 1) % 3]);
            }
        }
        if let Some(ci) = comp_of[v].filter(|&ci| !comp_done[ci]) {
            comp_done[ci] = true;
            let set = EdgeSet::from_indices(
                m,
                residual.iter().filter(|&e| comps[ci].contains(&g.edge(e).0)),
            );
            if push_trail(&set, v, &mut vertices, &mut steps) != set.len() {
                return Err(SigmaError::Unreachable(v));
            }
        }
        steps.push(Some(c_n.edges[i]));
        vertices.push(c_n.vertices[(i + 1) % cn]);
    }
    let order: Vec<usize> = steps.iter().flatten().copied().collect();
    if order.len() != union.len() {
        return Err(SigmaError::Unreachable(c_n.vertices[0]));
    }
    Ok(StagedTour {
        order,
        walk: ClosedWalk { vertices, steps },
    })
}

/// `σ = σ_1 ‖ … ‖ σ_{k−1} ‖ π ‖ M ‖ f_1 < f'_1 < f_2 < f'_2 < …`.
/// Every Eulerian span is annotated with its tour.
pub fn assemble_sigma(
    m: usize,
    sub_orders: &[(usize, EulerOrder)],
    pi: (usize, &[usize], TourCertificate),
    paths: &[Vec<usize>],
    c2: Option<&HamCycle>,
    c3: Option<&HamCycle>,
) -> Result<EdgeOrdering, SigmaError> {
    let mut perm = Vec::with_capacity(m);
    let mut spans = Vec::new();
    for (part, eo) in sub_orders {
        spans.push(BlockSpan {
            part: Some(*part),
            start: perm.len(),
            len: eo.order.len(),
            tour: Some(eo.tour.clone()),
        });
        perm.extend_from_slice(&eo.order);
    }
    let (k_part, pi_order, pi_tour) = pi;
    spans.push(BlockSpan {
        part: Some(k_part),
        start: perm.len(),
        len: pi_order.len(),
        tour: Some(pi_tour),
    });
    perm.extend_from_slice(pi_order);
    for p in paths {
        perm.extend_from_slice(p);
    }
    let f2 = c2.map_or(&[][..], |c| &c.edges[..]);
    let f3 = c3.map_or(&[][..], |c| &c.edges[..]);
    for i in 0..f2.len().max(f3.len()) {
        perm.extend(f2.get(i));
        perm.extend(f3.get(i));
    }
    let mut count = vec![0usize; m];
    for &e in &perm {
        if e < m {
            count[e] += 1;
        }
    }
    let missing: Vec<usize> = (0..m).filter(|&e| count[e] == 0).collect();
    let duplicate: Vec<usize> = (0..m).filter(|&e| count[e] > 1).collect();
    if !missing.is_empty() || !duplicate.is_empty() || perm.len() != m {
        return Err(SigmaError::NotPartition { missing, duplicate });
    }
    Ok(EdgeOrdering::with_spans(perm, spans)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma::hamiltonian_cycles_disjoint;

    fn cycle_of(g: &Graph) -> HamCycle {
        hamiltonian_cycles_disjoint(g, &g.all_edges(), 1, 0).remove(0)
    }

    #[test]
    fn pairing() {
        let c8 = Graph::cycle(8);
        let c = cycle_of(&c8);
        assert!(odd_pairing_paths(&c, &[]).unwrap().is_empty());
        let two = odd_pairing_paths(&c, &[1, 3]).unwrap();
        assert_eq!(two.iter().map(Vec::len).sum::<usize>(), 2);
        let four = odd_pairing_paths(&c, &[0, 2, 4, 6]).unwrap();
        assert_eq!(four.len(), 2);
        let mut verts = std::collections::HashSet::new();
        for p in &four {
            for v in c8.vertices_of(&EdgeSet::from_indices(8, p.iter().copied())) {
                assert!(verts.insert(v), "paths share {v}");
            }
        }
        assert!(odd_pairing_paths(&c, &[1]).is_err());
    }

    fn max_packing(g: &Graph) -> usize {
        let tris: Vec<[usize; 3]> = (0..g.vertex_count())
            .flat_map(|a| (a + 1..g.vertex_count()).flat_map(move |b| (b + 1..g.vertex_count()).map(move |c| [a, b, c])))
            .filter_map(|[a, b, c]| Some([g.edge_between(a, b)?, g.edge_between(b, c)?, g.edge_between(a, c)?]))
            .collect();
        fn rec(tris: &[[usize; 3]], used: &mut EdgeSet) -> usize {
            let Some((first, rest)) = tris.split_first() else { return 0 };
            let skip = rec(rest, used);
            if first.iter().all(|&e| !used.contains(e)) {
                first.iter().for_each(|&e| {
                    used.insert(e);
                });
                let take = 1 + rec(rest, used);
                first.iter().for_each(|&e| {
                    used.remove(e);
                });
                return take.max(skip);
            }
            skip
        }
        rec(&tris, &mut EdgeSet::new(g.edge_count()))
    }

    #[test]
    fn triangles_in_k7() {
        let g = Graph::complete(7);
        assert_eq!(max_packing(&g), 7);
        let t = triangle_blocks(&g, &g.all_edges(), 0);
        assert!(t.len() >= 5, "greedy found {}", t.len());
        let mut used = EdgeSet::new(21);
        for tri in &t {
            for e in tri.edges {
                assert!(used.insert(e));
            }
        }
        assert!(triangle_blocks(&Graph::cycle(6), &Graph::cycle(6).all_edges(), 0).is_empty());
        assert_eq!(triangle_blocks(&Graph::complete(3), &Graph::complete(3).all_edges(), 0).len(), 1);
    }

    #[test]
    fn staged_cycle_only() {
        let g = Graph::cycle(6);
        let c = cycle_of(&g);
        let tour = staged_euler_order(&g, &[], &[], &EdgeSet::new(6), &c).unwrap();
        assert_eq!(tour.order, c.edges);
    }

    #[test]
    fn staged_block_precedes_first_cycle_edge() {
        // C6 on 0..5 plus a triangle 0-6-7
        let g = Graph::new(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 6), (6, 7), (0, 7)]).unwrap();
        let c = HamCycle {
            vertices: vec![0, 1, 2, 3, 4, 5],
            edges: vec![0, 1, 2, 3, 4, 5],
        };
        let tri = Triangle {
            vertices: [0, 6, 7],
            edges: [6, 7, 8],
        };
        let tour = staged_euler_order(&g, &[], &[tri], &EdgeSet::new(9), &c).unwrap();
        assert_eq!(&tour.order[..4], &[6, 7, 8, 0]);
    }

    #[test]
    fn assembly_checks_partition() {
        let err = assemble_sigma(3, &[], (0, &[0, 1], TourCertificate { walks: vec![] }), &[], None, None).unwrap_err();
        assert_eq!(
            err,
            SigmaError::NotPartition {
                missing: vec![2],
                duplicate: vec![]
            }
        );
    }
}
