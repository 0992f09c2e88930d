//! Rainbow cycles, the sufficient conditions for the 𝒢-forest property, and
//! an exhaustive check of the property itself on small instances.

mod exhaustive;

pub use exhaustive::{
    verify_forest_property_exhaustive, verify_forest_property_sampled, ForestCounterexample, ForestError,
    ForestVerdict, FOREST_ORDERING_CAP,
};

use serde::Serialize;

use crate::combinatorics::binomial;
use crate::graph::{Decomposition, EdgeSet, Graph};

/// A cycle meeting every part in at most one edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RainbowCycle {
    /// Cycle vertices in order, starting at the smallest.
    pub vertices: Vec<usize>,
    pub edges: EdgeSet,
    /// Parts met by the cycle, ascending.
    pub parts_touched: Vec<usize>,
}

impl RainbowCycle {
    /// A closed walk on distinct vertices whose edges are `edges`, with at
    /// most one edge from each part.
    pub fn is_valid(&self, g: &Graph, d: &Decomposition) -> bool {
        let len = self.vertices.len();
        if len < 3 || self.edges.len() != len {
            return false;
        }
        let mut seen = vec![false; g.vertex_count()];
        if !self.vertices.iter().all(|&v| v < seen.len() && !std::mem::replace(&mut seen[v], true)) {
            return false;
        }
        let closes = (0..len).all(|i| {
            g.edge_between(self.vertices[i], self.vertices[(i + 1) % len])
                .is_some_and(|e| self.edges.contains(e))
        });
        let mut parts: Vec<usize> = Vec::with_capacity(len);
        for e in self.edges.iter() {
            match d.part_of(e) {
                Some(p) if !parts.contains(&p) => parts.push(p),
                _ => return false,
            }
        }
        parts.sort_unstable();
        closes && parts == self.parts_touched
    }
}

/// Visit every rainbow cycle whose edges lie in `allowed`. Each cycle is
/// reported once, starting at its smallest vertex. Stops when `visit`
/// returns `false`.
pub fn for_each_rainbow_cycle(
    g: &Graph,
    d: &Decomposition,
    allowed: &EdgeSet,
    mut visit: impl FnMut(&RainbowCycle) -> bool,
) {
    struct Walk<'a> {
        g: &'a Graph,
        d: &'a Decomposition,
        allowed: &'a EdgeSet,
        start: usize,
        path: Vec<usize>,
        edges: Vec<usize>,
        on_path: Vec<bool>,
        part_used: Vec<bool>,
    }
    impl Walk<'_> {
        fn go(&mut self, visit: &mut dyn FnMut(&RainbowCycle) -> bool) -> bool {
            let end = *self.path.last().expect("path starts at the start vertex");
            let k = self.d.len();
            for &(u, e) in self.g.neighbors(end) {
                if !self.allowed.contains(e) {
                    continue;
                }
                let Some(p) = self.d.part_of(e) else { continue };
                if self.part_used[p] {
                    continue;
                }
                if u == self.start {
                    // close; each cycle is seen in both directions, keep one
                    if self.path.len() >= 3 && self.path[1] < end {
                        let m = self.g.edge_count();
                        let mut edges = self.edges.clone();
                        edges.push(e);
                        let mut parts: Vec<usize> = edges.iter().map(|&x| self.d.part_of(x).expect("in a part")).collect();
                        parts.sort_unstable();
                        let cycle = RainbowCycle {
                            vertices: self.path.clone(),
                            edges: EdgeSet::from_indices(m, edges),
                            parts_touched: parts,
                        };
                        if !visit(&cycle) {
                            return false;
                        }
                    }
                    continue;
                }
                if u < self.start || self.on_path[u] || self.path.len() >= k {
                    continue;
                }
                self.on_path[u] = true;
                self.part_used[p] = true;
                self.path.push(u);
                self.edges.push(e);
                let go_on = self.go(visit);
                self.edges.pop();
                self.path.pop();
                self.part_used[p] = false;
                self.on_path[u] = false;
                if !go_on {
                    return false;
                }
            }
            true
        }
    }
    let n = g.vertex_count();
    for start in 0..n {
        let mut walk = Walk {
            g,
            d,
            allowed,
            start,
            path: vec![start],
            edges: Vec::new(),
            on_path: vec![false; n],
            part_used: vec![false; d.len()],
        };
        walk.on_path[start] = true;
        if !walk.go(&mut visit) {
            return;
        }
    }
}

/// Every rainbow cycle of `g` with respect to `d`.
pub fn rainbow_cycles(g: &Graph, d: &Decomposition) -> Vec<RainbowCycle> {
    let mut out = Vec::new();
    for_each_rainbow_cycle(g, d, &d.support(), |c| {
        out.push(c.clone());
        true
    });
    out
}

/// `C(2k − 3, 2)`, zero for `k < 3`.
pub fn forest_slack(k: usize) -> u128 {
    if k < 2 {
        0
    } else {
        binomial(2 * k - 3, 2)
    }
}

/// Which of the two per-cycle conditions a rainbow cycle satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleCondition {
    /// The parts it meets are large in total.
    PartSum,
    /// One part it meets is much larger than the smallest part.
    PartGap,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCheck {
    pub cycle: RainbowCycle,
    pub condition: Option<CycleCondition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RainbowVerdict {
    pub holds: bool,
    pub checks: Vec<CycleCheck>,
    /// First cycle meeting neither condition.
    pub witness: Option<RainbowCycle>,
}

/// Conditions on one rainbow cycle. With `t = |E(C)|`, `S` the total size
/// of the parts met by `C`, and `B = C(2k − 3, 2)`:
/// the sum condition is `S > 2t/(t − 1)·B + t`, tested as
/// `(t − 1)·S > 2t·B + t(t − 1)`; the gap condition asks for a part met by
/// `C` with `|E(G_i)| − |E(G_1)| >= 2B + 1`.
pub fn cycle_condition(d: &Decomposition, cycle: &RainbowCycle) -> Option<CycleCondition> {
    let b = forest_slack(d.len());
    let t = cycle.edges.len() as u128;
    let sizes = d.sizes();
    let s: u128 = cycle.parts_touched.iter().map(|&p| sizes[p] as u128).sum();
    let smallest = d.smallest() as u128;
    let sum = (t - 1) * s > 2 * t * b + t * (t - 1);
    let gap = cycle.parts_touched.iter().any(|&p| sizes[p] as u128 > smallest + 2 * b);
    match (sum, gap) {
        (true, true) => Some(CycleCondition::Both),
        (true, false) => Some(CycleCondition::PartSum),
        (false, true) => Some(CycleCondition::PartGap),
        (false, false) => None,
    }
}

/// Every rainbow cycle meets the sum or the gap condition; sufficient for
/// the 𝒢-forest property.
pub fn rainbow_cycle_condition(g: &Graph, d: &Decomposition) -> RainbowVerdict {
    let mut checks = Vec::new();
    let mut witness = None;
    for_each_rainbow_cycle(g, d, &d.support(), |c| {
        let condition = cycle_condition(d, c);
        if condition.is_none() && witness.is_none() {
            witness = Some(c.clone());
        }
        checks.push(CycleCheck {
            cycle: c.clone(),
            condition,
        });
        true
    });
    RainbowVerdict {
        holds: witness.is_none(),
        checks,
        witness,
    }
}

/// The size criteria that each imply the 𝒢-forest property, in the order
/// they are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ForestCriterion {
    /// `k <= 2`.
    AtMostTwoParts,
    /// `k = 3` and `|E(G_3)| >= |E(G_1)| + 7`.
    ThreePartsGap,
    /// `|E(G_1)| + |E(G_2)| + |E(G_3)| >= 3·C(2k − 3, 2) + 4`.
    SmallestThreeSum,
    /// No rainbow cycle avoids `G_k`, and
    /// `|E(G_k)| − |E(G_1)| >= 2·C(2k − 3, 2) + 1`.
    RainbowFreeLargestGap,
}

impl ForestCriterion {
    /// Position in the list, from 1.
    pub fn index(self) -> usize {
        match self {
            ForestCriterion::AtMostTwoParts => 1,
            ForestCriterion::ThreePartsGap => 2,
            ForestCriterion::SmallestThreeSum => 3,
            ForestCriterion::RainbowFreeLargestGap => 4,
        }
    }
}

/// The first size criterion that holds, if any.
pub fn forest_property_criteria(g: &Graph, d: &Decomposition) -> Option<ForestCriterion> {
    let k = d.len();
    if k <= 2 {
        return Some(ForestCriterion::AtMostTwoParts);
    }
    let sizes: Vec<u128> = d.sizes().into_iter().map(|s| s as u128).collect();
    let b = forest_slack(k);
    if k == 3 && sizes[2] >= sizes[0] + 7 {
        return Some(ForestCriterion::ThreePartsGap);
    }
    if sizes[..3].iter().sum::<u128>() >= 3 * b + 4 {
        return Some(ForestCriterion::SmallestThreeSum);
    }
    if sizes[k - 1] > sizes[0] + 2 * b {
        let rest = d.support().difference(d.part(k - 1));
        let mut rainbow_free = true;
        for_each_rainbow_cycle(g, d, &rest, |_| {
            rainbow_free = false;
            false
        });
        if rainbow_free {
            return Some(ForestCriterion::RainbowFreeLargestGap);
        }
    }
    None
}
