//! Eulerian-induced orders of a single part.

use serde::Serialize;

use crate::alternating::{ClosedWalk, TourCertificate};
use crate::graph::{closed_trail, EdgeSet, Graph};

/// Edges of a part in tour order, with the tour that induced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerOrder {
    pub order: Vec<usize>,
    pub tour: TourCertificate,
}

/// Join a new vertex `z` (numbered `n`) to every odd-degree vertex of
/// `part`, walk an Eulerian tour of each component of the result, and keep
/// only the original edges. Components are taken in order of their
/// smallest edge index; each tour starts at the lower end of that edge.
pub fn eulerize_and_order(part: &EdgeSet, host: &Graph) -> EulerOrder {
    let n = host.vertex_count();
    let z = n;
    let original: Vec<usize> = part.to_vec();
    let mut edges: Vec<(usize, usize)> = original.iter().map(|&e| host.edge(e)).collect();
    for v in 0..n {
        if host.degree_in(v, part) % 2 == 1 {
            edges.push((v, z));
        }
    }
    let mut used = vec![false; edges.len()];
    let mut order = Vec::with_capacity(original.len());
    let mut walks = Vec::new();
    for (id, &e) in original.iter().enumerate() {
        if used[id] {
            continue;
        }
        let start = host.edge(e).0;
        let (vertices, ids) = closed_trail(n + 1, &edges, start);
        let steps: Vec<Option<usize>> = ids
            .iter()
            .map(|&i| {
                used[i] = true;
                original.get(i).copied()
            })
            .collect();
        order.extend(steps.iter().flatten());
        walks.push(ClosedWalk { vertices, steps });
    }
    EulerOrder {
        order,
        tour: TourCertificate { walks },
    }
}

/// Consecutive edges of `order` share a vertex, cyclically.
pub fn is_edge_tour(g: &Graph, order: &[usize]) -> bool {
    let shares = |a: usize, b: usize| {
        let (x, y) = g.edge(a);
        g.is_incident(b, x) || g.is_incident(b, y)
    };
    order.len() < 2
        || (order.windows(2).all(|w| shares(w[0], w[1])) && shares(order[order.len() - 1], order[0]))
}
