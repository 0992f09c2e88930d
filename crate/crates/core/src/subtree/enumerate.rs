//! Streaming enumeration of family members inside a host graph.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::budget::Meter;
use crate::graph::{Decomposition, EdgeSet, FamilyDescriptor, Graph};

/// Tracks how many parts of a decomposition the current partial member hits.
struct Cover<'a> {
    d: Option<&'a Decomposition>,
    counts: Vec<u32>,
    uncovered: usize,
}

impl<'a> Cover<'a> {
    fn new(d: Option<&'a Decomposition>) -> Self {
        let k = d.map_or(0, Decomposition::len);
        Cover {
            d,
            counts: vec![0; k],
            uncovered: k,
        }
    }

    #[inline]
    fn add(&mut self, e: usize) {
        if let Some(p) = self.d.and_then(|d| d.part_of(e)) {
            if self.counts[p] == 0 {
                self.uncovered -= 1;
            }
            self.counts[p] += 1;
        }
    }

    #[inline]
    fn remove(&mut self, e: usize) {
        if let Some(p) = self.d.and_then(|d| d.part_of(e)) {
            self.counts[p] -= 1;
            if self.counts[p] == 0 {
                self.uncovered += 1;
            }
        }
    }
}

fn tick(meter: Option<&Meter>) -> ControlFlow<()> {
    match meter {
        Some(m) if !m.tick() => ControlFlow::Break(()),
        _ => ControlFlow::Continue(()),
    }
}

/// Visit every member of `f` whose edges lie in `within`, restricted to
/// `d`-subgraphs when `d` is given. Each member is visited once, in a fixed
/// order. Returns `Break` if the visitor stopped the stream.
pub fn for_each_member<F>(
    g: &Graph,
    f: &FamilyDescriptor,
    within: &EdgeSet,
    d: Option<&Decomposition>,
    visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&EdgeSet) -> ControlFlow<()>,
{
    for_each_member_metered(g, f, within, d, None, visit)
}

/// As [`for_each_member`], charging one meter tick per search node. The
/// stream ends with `Break` once the meter runs out; callers distinguish that
/// from a visitor break through `Meter::exhausted`.
pub(crate) fn for_each_member_metered<F>(
    g: &Graph,
    f: &FamilyDescriptor,
    within: &EdgeSet,
    d: Option<&Decomposition>,
    meter: Option<&Meter>,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&EdgeSet) -> ControlFlow<()>,
{
    if let Some(d) = d {
        if d.parts().iter().any(|p| p.is_disjoint(within)) {
            return ControlFlow::Continue(());
        }
    }
    match f {
        FamilyDescriptor::Trees(t) => trees(g, *t, within, d, meter, &mut visit),
        FamilyDescriptor::Matching(k) => matchings(g, *k, within, d, meter, &mut visit),
        FamilyDescriptor::Path(len) => paths(g, *len, within, d, meter, &mut visit),
        FamilyDescriptor::Explicit(list) => {
            let mut seen = HashSet::new();
            for member in list {
                tick(meter)?;
                if !member.is_subset(within) || !seen.insert(member.clone()) {
                    continue;
                }
                if d.is_some_and(|d| d.parts().iter().any(|p| p.is_disjoint(member))) {
                    continue;
                }
                visit(member)?;
            }
            ControlFlow::Continue(())
        }
    }
}

/// Collect every member of `f` in `g`, in emission order.
pub fn enumerate_family(g: &Graph, f: &FamilyDescriptor) -> Vec<EdgeSet> {
    let mut out = Vec::new();
    let _ = for_each_member(g, f, &g.all_edges(), None, |s| {
        out.push(s.clone());
        ControlFlow::Continue(())
    });
    out
}

/// Number of members of `f` in `g`.
pub fn count_family(g: &Graph, f: &FamilyDescriptor) -> u64 {
    let mut count = 0u64;
    let _ = for_each_member(g, f, &g.all_edges(), None, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

struct TreeGrow<'a, 'v, F> {
    g: &'a Graph,
    within: &'a EdgeSet,
    target: usize,
    root: usize,
    in_tree: Vec<bool>,
    tree: EdgeSet,
    size: usize,
    cover: Cover<'a>,
    meter: Option<&'a Meter>,
    visit: &'v mut F,
}

impl<F> TreeGrow<'_, '_, F>
where
    F: FnMut(&EdgeSet) -> ControlFlow<()>,
{
    // Each tree is produced once: its minimum edge is the root, and every
    // frontier edge is either taken or dropped for good.
    fn grow(&mut self, frontier: &[usize]) -> ControlFlow<()> {
        tick(self.meter)?;
        if self.cover.uncovered > self.target - self.size {
            return ControlFlow::Continue(());
        }
        if self.size == self.target {
            return (self.visit)(&self.tree);
        }
        for (i, &e) in frontier.iter().enumerate() {
            let (a, b) = self.g.edge(e);
            let w = if self.in_tree[a] { b } else { a };
            let mut next: Vec<usize> = frontier[i + 1..]
                .iter()
                .copied()
                .filter(|&x| !self.g.is_incident(x, w))
                .collect();
            for &(x, ex) in self.g.neighbors(w) {
                if ex > self.root && !self.in_tree[x] && self.within.contains(ex) {
                    next.push(ex);
                }
            }
            self.in_tree[w] = true;
            self.tree.insert(e);
            self.size += 1;
            self.cover.add(e);
            let flow = self.grow(&next);
            self.cover.remove(e);
            self.size -= 1;
            self.tree.remove(e);
            self.in_tree[w] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

fn trees<F>(
    g: &Graph,
    t: usize,
    within: &EdgeSet,
    d: Option<&Decomposition>,
    meter: Option<&Meter>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&EdgeSet) -> ControlFlow<()>,
{
    if t < 2 || t > g.vertex_count() || t - 1 > within.len() {
        return ControlFlow::Continue(());
    }
    let mut search = TreeGrow {
        g,
        within,
        target: t - 1,
        root: 0,
        in_tree: vec![false; g.vertex_count()],
        tree: EdgeSet::new(g.edge_count()),
        size: 0,
        cover: Cover::new(d),
        meter,
        visit,
    };
    for root in within.iter() {
        let (a, b) = g.edge(root);
        search.root = root;
        search.in_tree[a] = true;
        search.in_tree[b] = true;
        search.tree.insert(root);
        search.size = 1;
        search.cover.add(root);
        let mut frontier: Vec<usize> = g
            .neighbors(a)
            .iter()
            .chain(g.neighbors(b))
            .filter(|&&(x, e)| e > root && x != a && x != b && within.contains(e))
            .map(|&(_, e)| e)
            .collect();
        frontier.sort_unstable();
        let flow = search.grow(&frontier);
        search.cover.remove(root);
        search.tree.remove(root);
        search.in_tree[a] = false;
        search.in_tree[b] = false;
        flow?;
    }
    ControlFlow::Continue(())
}

fn matchings<F>(
    g: &Graph,
    k: usize,
    within: &EdgeSet,
    d: Option<&Decomposition>,
    meter: Option<&Meter>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&EdgeSet) -> ControlFlow<()>,
{
    struct State<'a> {
        g: &'a Graph,
        edges: Vec<usize>,
        used: Vec<bool>,
        chosen: EdgeSet,
        cover: Cover<'a>,
        meter: Option<&'a Meter>,
    }
    fn rec<F>(s: &mut State<'_>, start: usize, left: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&EdgeSet) -> ControlFlow<()>,
    {
        tick(s.meter)?;
        if s.cover.uncovered > left {
            return ControlFlow::Continue(());
        }
        if left == 0 {
            return visit(&s.chosen);
        }
        for i in start..s.edges.len() {
            if s.edges.len() - i < left {
                break;
            }
            let e = s.edges[i];
            let (a, b) = s.g.edge(e);
            if s.used[a] || s.used[b] {
                continue;
            }
            s.used[a] = true;
            s.used[b] = true;
            s.chosen.insert(e);
            s.cover.add(e);
            let flow = rec(s, i + 1, left - 1, visit);
            s.cover.remove(e);
            s.chosen.remove(e);
            s.used[a] = false;
            s.used[b] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
    if k == 0 || 2 * k > g.vertex_count() {
        return ControlFlow::Continue(());
    }
    let mut state = State {
        g,
        edges: within.to_vec(),
        used: vec![false; g.vertex_count()],
        chosen: EdgeSet::new(g.edge_count()),
        cover: Cover::new(d),
        meter,
    };
    rec(&mut state, 0, k, visit)
}

fn paths<F>(
    g: &Graph,
    len: usize,
    within: &EdgeSet,
    d: Option<&Decomposition>,
    meter: Option<&Meter>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&EdgeSet) -> ControlFlow<()>,
{
    struct State<'a> {
        g: &'a Graph,
        within: &'a EdgeSet,
        on_path: Vec<bool>,
        start: usize,
        chosen: EdgeSet,
        cover: Cover<'a>,
        meter: Option<&'a Meter>,
    }
    fn rec<F>(s: &mut State<'_>, at: usize, left: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&EdgeSet) -> ControlFlow<()>,
    {
        tick(s.meter)?;
        if s.cover.uncovered > left {
            return ControlFlow::Continue(());
        }
        if left == 0 {
            // Each path is walked from both ends; keep the walk from the
            // smaller end.
            if s.start < at {
                return visit(&s.chosen);
            }
            return ControlFlow::Continue(());
        }
        for &(x, e) in s.g.neighbors(at) {
            if s.on_path[x] || !s.within.contains(e) {
                continue;
            }
            s.on_path[x] = true;
            s.chosen.insert(e);
            s.cover.add(e);
            let flow = rec(s, x, left - 1, visit);
            s.cover.remove(e);
            s.chosen.remove(e);
            s.on_path[x] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
    if len == 0 || len >= g.vertex_count() || len > within.len() {
        return ControlFlow::Continue(());
    }
    let mut state = State {
        g,
        within,
        on_path: vec![false; g.vertex_count()],
        start: 0,
        chosen: EdgeSet::new(g.edge_count()),
        cover: Cover::new(d),
        meter,
    };
    for v in 0..g.vertex_count() {
        state.start = v;
        state.on_path[v] = true;
        let flow = rec(&mut state, v, len, visit);
        state.on_path[v] = false;
        flow?;
    }
    ControlFlow::Continue(())
}
