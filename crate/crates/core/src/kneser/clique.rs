//! Cliques of Kneser instances: families of pairwise edge-disjoint members.

use super::bits::{and_into, count_bits, iter_bits};
use super::{BoundedValue, Certificate, KneserInstance};
use crate::budget::{Budget, Meter};
use crate::graph::EdgeSet;

/// Greedy clique from the highest-degree starts; deterministic.
pub fn greedy_clique(kg: &KneserInstance) -> Vec<usize> {
    let n = kg.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(kg.degree(v)), v));
    let mut best: Vec<usize> = Vec::new();
    for &start in order.iter().take(32) {
        let mut clique = vec![start];
        for &v in &order {
            if clique.iter().all(|&u| kg.adjacent(u, v)) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

struct Search<'a> {
    kg: &'a KneserInstance,
    meter: Meter,
    min_size: usize,
    ceiling: usize,
    chosen: Vec<usize>,
    best: Vec<usize>,
    aborted: bool,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.aborted || self.best.len() >= self.ceiling
    }

    fn bound(&self, cands: &[u64], used: &EdgeSet) -> usize {
        let count = count_bits(cands);
        let mut free = EdgeSet::new(used.universe());
        for v in iter_bits(cands) {
            free.union_with(&self.kg.vertices()[v]);
        }
        free.difference_with(used);
        count.min(free.len() / self.min_size)
    }

    fn rec(&mut self, cands: &mut [u64], used: &EdgeSet) {
        if !self.meter.tick() {
            self.aborted = true;
            return;
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
            if self.done() {
                return;
            }
        }
        if self.chosen.len() + self.bound(cands, used) <= self.best.len() {
            return;
        }
        let words = cands.len();
        let mut next = vec![0u64; words];
        while let Some(v) = first_bit(cands) {
            if self.chosen.len() + count_bits(cands) <= self.best.len() {
                return;
            }
            cands[v >> 6] &= !(1 << (v & 63));
            and_into(&mut next, cands, self.kg.adjacency().row(v));
            self.chosen.push(v);
            let grown = used.union(&self.kg.vertices()[v]);
            self.rec(&mut next, &grown);
            self.chosen.pop();
            if self.done() {
                return;
            }
        }
    }
}

fn first_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

/// ω of `kg`: the most pairwise edge-disjoint members. Exact when the search
/// closes within `budget`; otherwise the interval runs from the best clique
/// found to `⌊|E| / smallest member⌋`.
pub fn clique_number(kg: &KneserInstance, budget: Budget) -> BoundedValue {
    let n = kg.vertex_count();
    if n == 0 {
        return BoundedValue {
            lower: 0,
            upper: 0,
            exact: true,
            certificate: Certificate::Clique(Vec::new()),
            dual: None,
        };
    }
    let min_size = kg.vertices().iter().map(EdgeSet::len).min().unwrap_or(1).max(1);
    let ceiling = n.min(kg.host().edge_count() / min_size).max(1);
    let mut search = Search {
        kg,
        meter: budget.meter(),
        min_size,
        ceiling,
        chosen: Vec::new(),
        best: greedy_clique(kg),
        aborted: false,
    };
    if !search.done() {
        let mut all = vec![0u64; n.div_ceil(64)];
        for v in 0..n {
            all[v >> 6] |= 1 << (v & 63);
        }
        let used = EdgeSet::new(kg.host().edge_count());
        search.rec(&mut all, &used);
    }
    let lower = search.best.len();
    let upper = if search.aborted { ceiling } else { lower };
    BoundedValue {
        lower,
        upper,
        exact: lower == upper,
        certificate: Certificate::Clique(search.best),
        dual: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Decomposition, FamilyDescriptor, Graph};
    use crate::kneser::build_kneser;

    fn tree_graph(n: usize) -> KneserInstance {
        let g = Graph::complete(n);
        build_kneser(&g, &Decomposition::trivial(&g), &FamilyDescriptor::Trees(n)).unwrap()
    }

    #[test]
    fn spanning_tree_cliques() {
        for (n, want) in [(3, 1), (4, 2), (5, 2)] {
            let kg = tree_graph(n);
            let omega = clique_number(&kg, Budget::default());
            assert_eq!(omega.value(), Some(want), "K{n}");
            assert!(omega.validate(&kg));
        }
    }

    #[test]
    fn petersen_clique() {
        let g = Graph::matching(5);
        let kg = build_kneser(&g, &Decomposition::trivial(&g), &FamilyDescriptor::Matching(2)).unwrap();
        assert_eq!(clique_number(&kg, Budget::default()).value(), Some(2));
    }

    #[test]
    fn sparse_host_search_closes() {
        // Two-edge trees of a star are leaf pairs; two disjoint pairs fit.
        let g = Graph::star(5);
        let kg = build_kneser(&g, &Decomposition::trivial(&g), &FamilyDescriptor::Trees(3)).unwrap();
        assert_eq!(clique_number(&kg, Budget::default()).value(), Some(2));
    }
}
