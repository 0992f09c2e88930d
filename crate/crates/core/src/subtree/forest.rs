//! Constructive forest selection and forest-to-tree extension.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use serde::Serialize;

use super::enumerate::for_each_member_metered;
use super::{SubtreeError, TreeWitness};
use crate::budget::Budget;
use crate::graph::{components, is_g_subgraph, Decomposition, EdgeSet, FamilyDescriptor, Graph, UnionFind};

/// Edges of some cycle in `set`, or `None` when `set` is a forest.
pub fn find_cycle(g: &Graph, set: &EdgeSet) -> Option<Vec<usize>> {
    let mut uf = UnionFind::new(g.vertex_count());
    let mut kept = EdgeSet::new(g.edge_count());
    for e in set.iter() {
        let (a, b) = g.edge(e);
        if !uf.union(a, b) {
            let mut cycle = tree_path(g, &kept, a, b).expect("endpoints already joined");
            cycle.push(e);
            return Some(cycle);
        }
        kept.insert(e);
    }
    None
}

pub fn is_forest(g: &Graph, set: &EdgeSet) -> bool {
    let mut uf = UnionFind::new(g.vertex_count());
    set.iter().all(|e| {
        let (a, b) = g.edge(e);
        uf.union(a, b)
    })
}

/// Edge path from `from` to `to` inside the forest `tree`.
pub(crate) fn tree_path(g: &Graph, tree: &EdgeSet, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut via = vec![usize::MAX; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(x, e) in g.neighbors(v) {
            if !seen[x] && tree.contains(e) {
                seen[x] = true;
                via[x] = e;
                queue.push_back(x);
            }
        }
    }
    if !seen[to] {
        return None;
    }
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        let e = via[v];
        path.push(e);
        v = g.other_end(e, v);
    }
    path.reverse();
    Some(path)
}

/// An acyclic choice of one `red` edge per part of `d`.
///
/// Starts from the lowest red edge of each part and, while the choice has a
/// cycle, swaps a cycle edge for a red edge of the same part that reaches a
/// vertex the choice does not touch. If that stalls, every per-part choice is
/// searched.
pub fn find_g_forest(
    g: &Graph,
    red: &EdgeSet,
    d: &Decomposition,
) -> Result<Option<EdgeSet>, SubtreeError> {
    if !is_g_subgraph(red, d) {
        return Err(SubtreeError::NotGSubgraph);
    }
    let m = g.edge_count();
    let options: Vec<Vec<usize>> = d.parts().iter().map(|p| p.intersection(red).to_vec()).collect();
    let mut choice: Vec<usize> = options.iter().map(|o| o[0]).collect();
    for _ in 0..=d.len() * m {
        let f = EdgeSet::from_indices(m, choice.iter().copied());
        let Some(cycle) = find_cycle(g, &f) else {
            return Ok(Some(f));
        };
        let mut touched = vec![false; g.vertex_count()];
        for e in f.iter() {
            let (a, b) = g.edge(e);
            touched[a] = true;
            touched[b] = true;
        }
        let swap = cycle.iter().find_map(|&ce| {
            let p = d.part_of(ce).expect("chosen edges lie in parts");
            options[p]
                .iter()
                .find(|&&e| {
                    let (a, b) = g.edge(e);
                    e != choice[p] && (!touched[a] || !touched[b])
                })
                .map(|&e| (p, e))
        });
        match swap {
            Some((p, e)) => choice[p] = e,
            None => break,
        }
    }
    Ok(exhaustive_forest(g, &options))
}

fn exhaustive_forest(g: &Graph, options: &[Vec<usize>]) -> Option<EdgeSet> {
    fn rec(
        g: &Graph,
        options: &[Vec<usize>],
        order: &[usize],
        depth: usize,
        uf: &UnionFind,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        for &e in &options[order[depth]] {
            let (a, b) = g.edge(e);
            let mut next = uf.clone();
            if next.union(a, b) {
                chosen.push(e);
                if rec(g, options, order, depth + 1, &next, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut order: Vec<usize> = (0..options.len()).collect();
    order.sort_by_key(|&p| (options[p].len(), p));
    let mut chosen = Vec::new();
    let uf = UnionFind::new(g.vertex_count());
    rec(g, options, &order, 0, &uf, &mut chosen)
        .then(|| EdgeSet::from_indices(g.edge_count(), chosen))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExtensionOutcome {
    Found(TreeWitness),
    /// No tree of the requested size meets every part.
    Impossible,
    /// The budget ran out before the search closed.
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeExtension {
    pub outcome: ExtensionOutcome,
    /// The edge-count premise of the extension argument for this instance.
    pub premise_holds: bool,
    pub pendant_deletions: usize,
    pub cycle_moves: usize,
    /// Whether the exact search had to take over from the moves.
    pub exhaustive: bool,
    /// Whether the returned tree still contains every forest edge.
    pub keeps_forest: bool,
}

impl TreeExtension {
    pub fn tree(&self) -> Option<&TreeWitness> {
        match &self.outcome {
            ExtensionOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// `n >= k + r + 1` and `|E| > k(3k-2)(n-2)/2 + (r+k-1)(n-1)` with
/// `r = n - target_t`.
pub fn extension_premise(g: &Graph, d: &Decomposition, target_t: usize) -> bool {
    let n = g.vertex_count() as u128;
    let k = d.len() as u128;
    let t = target_t as u128;
    if t > n || n < 2 {
        return false;
    }
    let r = n - t;
    let m = g.edge_count() as u128;
    n > k + r && 2 * m > k * (3 * k).saturating_sub(2) * (n - 2) + 2 * (r + k).saturating_sub(1) * (n - 1)
}

struct TreeState<'a> {
    g: &'a Graph,
    d: &'a Decomposition,
    tree: EdgeSet,
    degree: Vec<usize>,
    part_count: Vec<usize>,
}

impl<'a> TreeState<'a> {
    fn new(g: &'a Graph, d: &'a Decomposition, tree: EdgeSet) -> Self {
        let mut degree = vec![0; g.vertex_count()];
        let mut part_count = vec![0; d.len()];
        for e in tree.iter() {
            let (a, b) = g.edge(e);
            degree[a] += 1;
            degree[b] += 1;
            if let Some(p) = d.part_of(e) {
                part_count[p] += 1;
            }
        }
        TreeState {
            g,
            d,
            tree,
            degree,
            part_count,
        }
    }

    fn vertex_count(&self) -> usize {
        self.degree.iter().filter(|&&x| x > 0).count()
    }

    /// Removing `e` keeps every part covered.
    fn removable(&self, e: usize) -> bool {
        self.d.part_of(e).is_none_or(|p| self.part_count[p] >= 2)
    }

    fn add(&mut self, e: usize) {
        let (a, b) = self.g.edge(e);
        self.tree.insert(e);
        self.degree[a] += 1;
        self.degree[b] += 1;
        if let Some(p) = self.d.part_of(e) {
            self.part_count[p] += 1;
        }
    }

    fn remove(&mut self, e: usize) {
        let (a, b) = self.g.edge(e);
        self.tree.remove(e);
        self.degree[a] -= 1;
        self.degree[b] -= 1;
        if let Some(p) = self.d.part_of(e) {
            self.part_count[p] -= 1;
        }
    }

    /// Pendant edges whose removal keeps the tree a `d`-tree.
    fn deletable_pendants(&self) -> Vec<usize> {
        self.tree
            .iter()
            .filter(|&e| {
                let (a, b) = self.g.edge(e);
                (self.degree[a] == 1 || self.degree[b] == 1) && self.removable(e)
            })
            .collect()
    }

    /// Add a chord `e` between two inner vertices and drop a tree edge `f`
    /// on the closed cycle whose ends both have degree 2 and which avoids
    /// `e`. Chords closing a cycle of length at least `long` go first, then
    /// longer cycles.
    fn cycle_move(&mut self, long: usize, forest: &EdgeSet) -> bool {
        let g = self.g;
        let inner = |v: usize| self.degree[v] >= 2;
        let mut chords: Vec<(usize, Vec<usize>)> = (0..g.edge_count())
            .filter(|&e| !self.tree.contains(e))
            .filter(|&e| {
                let (a, b) = g.edge(e);
                inner(a) && inner(b)
            })
            .filter_map(|e| {
                let (a, b) = g.edge(e);
                tree_path(g, &self.tree, a, b).map(|p| (e, p))
            })
            .collect();
        chords.sort_by_key(|(e, p)| (p.len() + 1 < long, std::cmp::Reverse(p.len()), *e));
        for (e, path) in chords {
            let (ea, eb) = g.edge(e);
            let pick = |avoid_forest: bool| {
                path.iter().copied().find(|&f| {
                    let (a, b) = g.edge(f);
                    self.degree[a] == 2
                        && self.degree[b] == 2
                        && ![a, b].contains(&ea)
                        && ![a, b].contains(&eb)
                        && self.removable(f)
                        && !(avoid_forest && forest.contains(f))
                })
            };
            if let Some(f) = pick(true).or_else(|| pick(false)) {
                self.add(e);
                self.remove(f);
                return true;
            }
        }
        false
    }
}

/// Extend an acyclic `forest` to a tree on exactly `target_t` vertices that
/// meets every part of `d`.
///
/// The forest is first completed to a spanning tree of its host component.
/// Then pendant vertices are deleted while every part stays covered; when
/// none can go, a chord is added and a degree-2 cycle edge dropped to create
/// new pendants. If both moves stall, an exact budgeted search decides.
pub fn extend_forest_to_tree(
    g: &Graph,
    d: &Decomposition,
    forest: &EdgeSet,
    target_t: usize,
    budget: Budget,
) -> Result<TreeExtension, SubtreeError> {
    if let Some(cycle) = find_cycle(g, forest) {
        return Err(SubtreeError::ForestHasCycle(cycle));
    }
    let premise_holds = extension_premise(g, d, target_t);
    let mut report = TreeExtension {
        outcome: ExtensionOutcome::Impossible,
        premise_holds,
        pendant_deletions: 0,
        cycle_moves: 0,
        exhaustive: false,
        keeps_forest: false,
    };
    let comps = components(g, &g.all_edges());
    let hosts = g.vertices_of(forest);
    let comp = match hosts.first() {
        Some(&v) => comps.iter().find(|c| c.contains(&v)).expect("every vertex has a component"),
        None => comps
            .iter()
            .find(|c| c.len() >= 2)
            .ok_or(SubtreeError::Disconnected)?,
    };
    if hosts.iter().any(|v| comp.binary_search(v).is_err()) {
        return Err(SubtreeError::Disconnected);
    }
    if target_t < 2 || target_t > comp.len() || target_t - 1 < d.len() {
        return Ok(report);
    }
    let m = g.edge_count();
    let in_comp = {
        let mut flag = vec![false; g.vertex_count()];
        comp.iter().for_each(|&v| flag[v] = true);
        flag
    };
    let local = EdgeSet::from_indices(m, (0..m).filter(|&e| in_comp[g.edge(e).0]));
    if !is_g_subgraph(&local, d) {
        return Ok(report);
    }

    // Spanning tree: forest first, then part edges, then the rest.
    let mut uf = UnionFind::new(g.vertex_count());
    let mut tree = EdgeSet::new(m);
    let in_part = |e: usize| d.part_of(e).is_some();
    let order = forest
        .iter()
        .chain(local.iter().filter(|&e| in_part(e)))
        .chain(local.iter().filter(|&e| !in_part(e)));
    for e in order {
        let (a, b) = g.edge(e);
        if uf.union(a, b) {
            tree.insert(e);
        }
    }
    let mut state = TreeState::new(g, d, tree);
    let meter = budget.meter();
    let long = 3 * d.len();
    if is_g_subgraph(&state.tree, d) {
        while state.vertex_count() > target_t && meter.tick() {
            let pendants = state.deletable_pendants();
            if let Some(&f) = pendants.iter().find(|&&f| !forest.contains(f)) {
                state.remove(f);
                report.pendant_deletions += 1;
            } else if state.cycle_move(long, forest) {
                report.cycle_moves += 1;
            } else if let Some(&f) = pendants.first() {
                state.remove(f);
                report.pendant_deletions += 1;
            } else {
                break;
            }
        }
    }
    if state.vertex_count() == target_t && is_g_subgraph(&state.tree, d) {
        report.keeps_forest = forest.is_subset(&state.tree);
        report.outcome = ExtensionOutcome::Found(TreeWitness {
            edges: state.tree,
            vertex_count: target_t,
        });
        return Ok(report);
    }

    report.exhaustive = true;
    let mut first_any: Option<EdgeSet> = None;
    let mut with_forest: Option<EdgeSet> = None;
    let _ = for_each_member_metered(
        g,
        &FamilyDescriptor::Trees(target_t),
        &local,
        Some(d),
        Some(&meter),
        |t| {
            if forest.is_subset(t) {
                with_forest = Some(t.clone());
                return ControlFlow::Break(());
            }
            if first_any.is_none() {
                first_any = Some(t.clone());
            }
            ControlFlow::Continue(())
        },
    );
    let exhausted = meter.exhausted() && with_forest.is_none();
    report.keeps_forest = with_forest.is_some();
    report.outcome = match with_forest.or(first_any) {
        Some(edges) => ExtensionOutcome::Found(TreeWitness {
            edges,
            vertex_count: target_t,
        }),
        None if exhausted => ExtensionOutcome::Indeterminate,
        None => ExtensionOutcome::Impossible,
    };
    Ok(report)
}
