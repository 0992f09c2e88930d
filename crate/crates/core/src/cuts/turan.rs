//! Generalized Turán numbers `ex(G, 𝒢, ℱ)` and decomposition cut numbers.

use serde::Serialize;

use super::CutError;
use crate::budget::Budget;
use crate::combinatorics::{first_subset, Search};
use crate::graph::{Decomposition, EdgeSet, FamilyDescriptor, Graph};
use crate::subtree::ForbiddenOracle;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TuranResult {
    /// `|witness|`; equals ex when `exact`.
    pub value: usize,
    /// A spanning subgraph with no forbidden member.
    pub witness: EdgeSet,
    pub exact: bool,
    /// Proven upper bound on ex.
    pub upper: usize,
}

/// `ex(G, 𝒢, ℱ)` by searching removal sets smallest-first.
///
/// Every `𝒢`-subgraph meets `G₁`, so removing `G₁` always works and no
/// level beyond `|G₁|` needs searching. Within a level the lexicographically
/// first removal set wins.
pub fn turan_ex(g: &Graph, d: &Decomposition, f: &FamilyDescriptor, budget: Budget) -> TuranResult {
    let oracle = ForbiddenOracle::new(g, d, f);
    turan_ex_with(&oracle, budget)
}

pub fn turan_ex_with(oracle: &ForbiddenOracle<'_>, budget: Budget) -> TuranResult {
    let g = oracle.graph();
    let d = oracle.decomposition();
    let m = g.edge_count();
    let all = g.all_edges();
    let g1 = d.part(0).len();
    let fallback = all.difference(d.part(0));
    let meter = budget.meter();
    let pool: Vec<usize> = (0..m).collect();
    for s in 0..g1 {
        let hit = if oracle.is_tabulated() {
            let full = all.to_mask();
            first_subset(&pool, s, &meter, |removed| {
                let mask = removed.iter().fold(full, |acc, &e| acc & !(1u64 << e));
                (!oracle.contains_mask(mask)).then_some(mask)
            })
            .map(|mask| EdgeSet::from_mask(m, mask))
        } else {
            first_subset(&pool, s, &meter, |removed| {
                let mut kept = all.clone();
                removed.iter().for_each(|&e| {
                    kept.remove(e);
                });
                (!oracle.contains(&kept)).then_some(kept)
            })
        };
        match hit {
            Search::Found(witness) => {
                return TuranResult {
                    value: m - s,
                    witness,
                    exact: true,
                    upper: m - s,
                }
            }
            Search::Empty => continue,
            Search::OutOfBudget => {
                return TuranResult {
                    value: fallback.len(),
                    witness: fallback,
                    exact: false,
                    upper: m - s,
                }
            }
        }
    }
    TuranResult {
        value: fallback.len(),
        witness: fallback,
        exact: true,
        upper: m - g1,
    }
}

/// `cut_i(G, 𝒢) = |E| − ex(G, 𝒢, 𝒯_{n−i+1})` as an interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompCut {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    /// The Turán witness behind `upper`.
    pub witness: EdgeSet,
}

impl DecompCut {
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.upper)
    }
}

pub fn cut_decomp(g: &Graph, d: &Decomposition, i: usize, budget: Budget) -> Result<DecompCut, CutError> {
    let n = g.vertex_count();
    if i == 0 || i + 1 > n {
        return Err(CutError::IndexOutOfRange { i, n });
    }
    let f = FamilyDescriptor::Trees(n - i + 1);
    let ex = turan_ex(g, d, &f, budget);
    let m = g.edge_count();
    Ok(DecompCut {
        lower: m - ex.upper,
        upper: m - ex.value,
        exact: ex.exact,
        witness: ex.witness,
    })
}
