//! Hierholzer closed trails on small multigraphs.

/// Closed trail from `start` through every edge of `start`'s component in
/// the multigraph on `n` vertices with edge list `edges`. Every vertex of
/// that component must have even degree. Neighbors are tried in edge-id
/// order, so the result is deterministic.
///
/// Returns the vertex sequence (first equals last) and the edge ids in
/// traversal order.
pub(crate) fn closed_trail(
    n: usize,
    edges: &[(usize, usize)],
    start: usize,
) -> (Vec<usize>, Vec<usize>) {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, id));
        adj[b].push((a, id));
    }
    let mut used = vec![false; edges.len()];
    let mut cursor = vec![0usize; n];
    // stack of (vertex, edge used to arrive)
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut vertices = Vec::new();
    let mut ids = Vec::new();
    while let Some(&(v, via)) = stack.last() {
        let mut advanced = false;
        while cursor[v] < adj[v].len() {
            let (w, id) = adj[v][cursor[v]];
            cursor[v] += 1;
            if !used[id] {
                used[id] = true;
                stack.push((w, Some(id)));
                advanced = true;
                break;
            }
        }
        if !advanced {
            stack.pop();
            vertices.push(v);
            if let Some(id) = via {
                ids.push(id);
            }
        }
    }
    vertices.reverse();
    ids.reverse();
    (vertices, ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bowtie() {
        let edges = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)];
        let (vs, ids) = closed_trail(5, &edges, 0);
        assert_eq!(ids.len(), 6);
        assert_eq!(vs.first(), vs.last());
        for (i, &id) in ids.iter().enumerate() {
            let (a, b) = edges[id];
            assert!((vs[i], vs[i + 1]) == (a, b) || (vs[i], vs[i + 1]) == (b, a));
        }
    }

    #[test]
    fn isolated_start() {
        let (vs, ids) = closed_trail(3, &[(1, 2), (1, 2)], 0);
        assert_eq!(vs, vec![0]);
        assert!(ids.is_empty());
    }
}
