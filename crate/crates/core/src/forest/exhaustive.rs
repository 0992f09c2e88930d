//! Direct check of the 𝒢-forest property over block-consecutive orderings.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::alternating::{
    count_block_orderings, for_each_block_ordering, realize_coloring, AlternatingColoring, EdgeOrdering, Parity,
};
use crate::budget::{Budget, Meter};
use crate::combinatorics::binomial;
use crate::graph::{Decomposition, EdgeSet, Graph, UnionFind};
use crate::par;
use crate::subtree::find_g_forest;

/// Default limit on the number of block-consecutive orderings.
pub const FOREST_ORDERING_CAP: u128 = 100_000;
const CHUNK: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("{count} block-consecutive orderings exceed the cap of {cap}; use sampled checking")]
    TooManyOrderings { count: u128, cap: u128 },
    #[error("{0} edges is too many for exhaustive checking (limit 63)")]
    TooLarge(usize),
    #[error("decomposition must cover every edge")]
    NotCovering,
    #[error("node budget exhausted after {0} orderings; use sampled checking")]
    OutOfBudget(u64),
}

/// An alternating coloring whose `color` class is a connected spanning
/// 𝒢-subgraph without a 𝒢-forest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForestCounterexample {
    pub ordering: Vec<usize>,
    pub coloring: AlternatingColoring,
    pub color: Parity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForestVerdict {
    /// No counterexample among the colorings examined.
    pub holds: bool,
    /// The colorings examined were a random sample.
    pub sampled: bool,
    pub orderings_examined: u64,
    pub colorings_examined: u64,
    /// Color classes that were connected spanning 𝒢-subgraphs.
    pub premise_hits: u64,
    pub counterexample: Option<ForestCounterexample>,
}

struct Checker<'a> {
    g: &'a Graph,
    d: &'a Decomposition,
    part_masks: Vec<u64>,
    min_len: usize,
}

#[derive(Default)]
struct ChunkOutcome {
    orderings: u64,
    colorings: u64,
    hits: u64,
    failure: Option<(Vec<usize>, u64, Parity)>,
}

impl<'a> Checker<'a> {
    fn new(g: &'a Graph, d: &'a Decomposition) -> Result<Self, ForestError> {
        let m = g.edge_count();
        if m > 63 {
            return Err(ForestError::TooLarge(m));
        }
        if !d.is_covering() {
            return Err(ForestError::NotCovering);
        }
        Ok(Checker {
            g,
            d,
            part_masks: d.parts().iter().map(EdgeSet::to_mask).collect(),
            min_len: m + 1 - d.smallest(),
        })
    }

    fn colorings_per_ordering(&self) -> u64 {
        let m = self.g.edge_count();
        (self.min_len..=m).map(|s| binomial(m, s)).sum::<u128>().min(u64::MAX as u128) as u64
    }

    /// `Some(true)` when `mask` is a connected spanning 𝒢-subgraph with no
    /// 𝒢-forest, `Some(false)` when it has one, `None` when the premise fails.
    fn violates(&self, mask: u64, cache: &mut HashMap<u64, Option<bool>>) -> Option<bool> {
        *cache.entry(mask).or_insert_with(|| {
            if self.part_masks.iter().any(|&p| p & mask == 0) {
                return None;
            }
            let n = self.g.vertex_count();
            let mut uf = UnionFind::new(n);
            let mut joined = 0;
            let mut bits = mask;
            while bits != 0 {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let (a, b) = self.g.edge(e);
                if uf.union(a, b) {
                    joined += 1;
                }
            }
            if joined + 1 != n {
                return None;
            }
            let red = EdgeSet::from_mask(self.g.edge_count(), mask);
            let forest = find_g_forest(self.g, &red, self.d).expect("premise checked");
            Some(forest.is_none())
        })
    }

    /// First violation along `perm`, checking the red and the blue class of
    /// every colored set in order of size then lexicographic position.
    fn check_ordering(
        &self,
        perm: &[usize],
        cache: &mut HashMap<u64, Option<bool>>,
        out: &mut ChunkOutcome,
    ) -> Option<(u64, Parity)> {
        let m = self.g.edge_count();
        for s in self.min_len..=m {
            let mut found = None;
            for_each_mask(m, s, |colored| {
                out.colorings += 1;
                let (red, blue) = crate::alternating::split_mask(perm, colored);
                for (mask, color) in [(red, Parity::Red), (blue, Parity::Blue)] {
                    match self.violates(mask, cache) {
                        Some(true) => {
                            out.hits += 1;
                            found = Some((colored, color));
                            return false;
                        }
                        Some(false) => out.hits += 1,
                        None => {}
                    }
                }
                true
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn counterexample(&self, perm: Vec<usize>, colored: u64, color: Parity) -> ForestCounterexample {
        let sigma = EdgeOrdering::new(perm.clone()).expect("block orderings are permutations");
        let colored = EdgeSet::from_mask(self.g.edge_count(), colored);
        ForestCounterexample {
            ordering: perm,
            coloring: realize_coloring(&sigma, &colored, Parity::Red),
            color,
        }
    }

    fn run(&self, orderings: &[Vec<usize>], meter: &Meter, sampled: bool) -> Result<ForestVerdict, ForestError> {
        let per = self.colorings_per_ordering();
        let first_failure = AtomicUsize::new(usize::MAX);
        let chunks: Vec<&[Vec<usize>]> = orderings.chunks(CHUNK).collect();
        let outcomes = par::map_range(chunks.len(), |c| {
            let mut out = ChunkOutcome::default();
            if c > first_failure.load(Ordering::Relaxed) {
                return Some(out);
            }
            let mut cache = HashMap::new();
            for perm in chunks[c] {
                if !meter.tick_n(per.max(1)) {
                    return None;
                }
                out.orderings += 1;
                if let Some((colored, color)) = self.check_ordering(perm, &mut cache, &mut out) {
                    out.failure = Some((perm.clone(), colored, color));
                    first_failure.fetch_min(c, Ordering::Relaxed);
                    break;
                }
            }
            Some(out)
        });
        let mut verdict = ForestVerdict {
            holds: true,
            sampled,
            orderings_examined: 0,
            colorings_examined: 0,
            premise_hits: 0,
            counterexample: None,
        };
        for out in outcomes {
            let Some(out) = out else {
                return Err(ForestError::OutOfBudget(verdict.orderings_examined));
            };
            verdict.orderings_examined += out.orderings;
            verdict.colorings_examined += out.colorings;
            verdict.premise_hits += out.hits;
            if let Some((perm, colored, color)) = out.failure {
                verdict.holds = false;
                verdict.counterexample = Some(self.counterexample(perm, colored, color));
                break;
            }
        }
        Ok(verdict)
    }
}

/// Gosper's walk over the `s`-bit masks below `1 << m`.
fn for_each_mask(m: usize, s: usize, mut visit: impl FnMut(u64) -> bool) {
    if s == 0 {
        visit(0);
        return;
    }
    if s > m {
        return;
    }
    let limit = 1u64 << m;
    let mut x = (1u64 << s) - 1;
    while x < limit {
        if !visit(x) {
            return;
        }
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
}

/// Check every block-consecutive ordering and every alternating coloring of
/// length at least `|E(G)| − |E(G_1)| + 1`: whenever the red or the blue
/// class is a connected spanning 𝒢-subgraph it must contain a 𝒢-forest.
/// A coloring and its parity flip swap the two classes, so colorings are
/// taken starting red and both classes are checked.
pub fn verify_forest_property_exhaustive(
    g: &Graph,
    d: &Decomposition,
    budget: Budget,
) -> Result<ForestVerdict, ForestError> {
    let checker = Checker::new(g, d)?;
    let count = count_block_orderings(d);
    if count > FOREST_ORDERING_CAP {
        return Err(ForestError::TooManyOrderings {
            count,
            cap: FOREST_ORDERING_CAP,
        });
    }
    let mut orderings = Vec::with_capacity(count as usize);
    for_each_block_ordering(d, |blocks| {
        orderings.push(blocks.iter().flat_map(|(_, edges)| edges.iter().copied()).collect());
        true
    });
    checker.run(&orderings, &budget.meter(), false)
}

/// Random block-consecutive orderings, each checked against every
/// coloring of the required length.
pub fn verify_forest_property_sampled(
    g: &Graph,
    d: &Decomposition,
    orderings: usize,
    seed: u64,
    budget: Budget,
) -> Result<ForestVerdict, ForestError> {
    let checker = Checker::new(g, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<Vec<usize>> = (0..orderings)
        .map(|_| {
            let mut parts: Vec<usize> = (0..d.len()).collect();
            parts.shuffle(&mut rng);
            parts
                .iter()
                .flat_map(|&p| {
                    let mut edges = d.part(p).to_vec();
                    edges.shuffle(&mut rng);
                    edges
                })
                .collect()
        })
        .collect();
    checker.run(&sample, &budget.meter(), true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::rainbow_cycle_condition;

    #[test]
    fn gosper_counts() {
        let mut n = 0;
        for_each_mask(6, 3, |_| {
            n += 1;
            true
        });
        assert_eq!(n, 20);
    }

    #[test]
    fn triangle_whole_graph() {
        let g = Graph::complete(3);
        let v = verify_forest_property_exhaustive(&g, &Decomposition::trivial(&g), Budget::default()).unwrap();
        assert!(v.holds);
        assert_eq!(v.orderings_examined, 6);
    }

    #[test]
    fn triangle_singletons_holds_despite_condition() {
        let g = Graph::complete(3);
        let d = Decomposition::singletons(&g);
        assert!(!rainbow_cycle_condition(&g, &d).holds);
        let v = verify_forest_property_exhaustive(&g, &d, Budget::default()).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn too_many_orderings() {
        let g = Graph::complete(6);
        let err = verify_forest_property_exhaustive(&g, &Decomposition::trivial(&g), Budget::default()).unwrap_err();
        assert!(err.to_string().contains("sampled"));
        let v = verify_forest_property_sampled(&g, &Decomposition::trivial(&g), 3, 0, Budget::default()).unwrap();
        assert!(v.sampled);
        assert_eq!(v.orderings_examined, 3);
    }
}
