//! Alternating Turán numbers for a fixed ordering and minimized over
//! orderings.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::coloring::split_mask;
use super::{realize_coloring, AltError, AlternatingColoring, EdgeOrdering, Parity};
use crate::budget::{Budget, Meter};
use crate::combinatorics::{factorial, first_subset, next_permutation, Search};
use crate::cuts::turan_ex_with;
use crate::graph::{Decomposition, EdgeSet, FamilyDescriptor, Graph};
use crate::par;
use crate::sigma::eulerize_and_order;
use crate::subtree::ForbiddenOracle;

/// Default edge limit for exhaustive minimization over all orderings.
pub const EXHAUSTIVE_THRESHOLD: usize = 8;
/// Parts up to this size get every internal order in block-structured mode.
pub const WITHIN_PART_THRESHOLD: usize = 5;
/// Block-structured mode samples when the ordering space is larger.
pub const BLOCK_ORDERING_CAP: usize = 20_000;

/// `ex_alt(G, 𝒢, ℱ, σ)` or an interval around it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AltResult {
    /// Length of `coloring`, a certified lower bound.
    pub value: usize,
    pub upper: usize,
    pub exact: bool,
    pub coloring: AlternatingColoring,
}

/// Longest valid alternating coloring along `sigma`. Among colorings of
/// the maximum length the lexicographically least colored set is returned,
/// colored starting red.
pub fn ex_alt_fixed(
    g: &Graph,
    d: &Decomposition,
    f: &FamilyDescriptor,
    sigma: &EdgeOrdering,
    budget: Budget,
) -> AltResult {
    let oracle = ForbiddenOracle::new(g, d, f);
    ex_alt_fixed_with(&oracle, sigma, &budget.meter())
}

pub fn ex_alt_fixed_with(oracle: &ForbiddenOracle<'_>, sigma: &EdgeOrdering, meter: &Meter) -> AltResult {
    let g = oracle.graph();
    let d = oracle.decomposition();
    let m = g.edge_count();
    let perm = sigma.perm();
    let pool: Vec<usize> = (0..m).collect();
    for len in (0..=m).rev() {
        let hit = if oracle.is_tabulated() {
            first_subset(&pool, len, meter, |chosen| {
                let colored = chosen.iter().fold(0u64, |acc, &e| acc | 1 << e);
                let (red, blue) = split_mask(perm, colored);
                (!oracle.contains_mask(red) && !oracle.contains_mask(blue)).then_some(colored)
            })
            .map(|mask| EdgeSet::from_mask(m, mask))
        } else {
            first_subset(&pool, len, meter, |chosen| {
                let colored = EdgeSet::from_indices(m, chosen.iter().copied());
                let c = realize_coloring(sigma, &colored, Parity::Red);
                (!oracle.contains(c.red()) && !oracle.contains(c.blue())).then_some(colored)
            })
        };
        match hit {
            Search::Found(colored) => {
                return AltResult {
                    value: len,
                    upper: len,
                    exact: true,
                    coloring: realize_coloring(sigma, &colored, Parity::Red),
                }
            }
            Search::Empty => continue,
            Search::OutOfBudget => {
                // Leaving out G₁ removes every 𝒢-subgraph from both colors.
                let safe = g.all_edges().difference(d.part(0));
                return AltResult {
                    value: safe.len(),
                    upper: len,
                    exact: false,
                    coloring: realize_coloring(sigma, &safe, Parity::Red),
                };
            }
        }
    }
    unreachable!("the empty coloring is always valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum AltMode {
    /// Every ordering of `E(G)`.
    Exhaustive,
    /// Orderings keeping each part consecutive.
    BlockStructured,
    /// `count` seeded uniform orderings.
    Sampled { count: usize, seed: u64 },
}

impl std::fmt::Display for AltMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AltMode::Exhaustive => f.write_str("exhaustive"),
            AltMode::BlockStructured => f.write_str("block-structured"),
            AltMode::Sampled { count, seed } => write!(f, "sampled({count}, {seed})"),
        }
    }
}

/// Minimum of `ex_alt_fixed` over the orderings the mode examines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AltMinResult {
    /// Exact `ex_alt` when `exact`, otherwise an upper bound on it.
    pub value: usize,
    pub exact: bool,
    pub mode: AltMode,
    pub orderings_examined: u64,
    /// An ordering attaining `value` and its longest valid coloring.
    pub ordering: EdgeOrdering,
    pub coloring: AlternatingColoring,
}

pub fn ex_alt_min(
    g: &Graph,
    d: &Decomposition,
    f: &FamilyDescriptor,
    mode: AltMode,
    budget: Budget,
) -> Result<AltMinResult, AltError> {
    ex_alt_min_with_threshold(g, d, f, mode, budget, EXHAUSTIVE_THRESHOLD)
}

pub fn ex_alt_min_with_threshold(
    g: &Graph,
    d: &Decomposition,
    f: &FamilyDescriptor,
    mode: AltMode,
    budget: Budget,
    threshold: usize,
) -> Result<AltMinResult, AltError> {
    let m = g.edge_count();
    let oracle = ForbiddenOracle::new(g, d, f);
    let meter = budget.meter();
    match mode {
        AltMode::Exhaustive => {
            if m > threshold {
                return Err(AltError::ThresholdExceeded { m, threshold });
            }
            // ex_alt(σ) >= ex for every σ, so reaching ex ends the search.
            let ex = turan_ex_with(&oracle, budget);
            let floor = ex.exact.then_some(ex.value);
            // σ and its reverse have the same value.
            let mut perms = Vec::with_capacity((factorial(m) / 2 + 1) as usize);
            let mut perm: Vec<usize> = (0..m).collect();
            loop {
                if m < 2 || perm[0] < perm[m - 1] {
                    perms.push(perm.clone());
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            Ok(minimize(&oracle, perms, mode, floor, true, &meter))
        }
        AltMode::BlockStructured => {
            let perms = block_structured_orderings(g, d);
            Ok(minimize(&oracle, perms, mode, None, false, &meter))
        }
        AltMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let perms = (0..count.max(1))
                .map(|_| {
                    let mut p: Vec<usize> = (0..m).collect();
                    p.shuffle(&mut rng);
                    p
                })
                .collect();
            Ok(minimize(&oracle, perms, mode, None, false, &meter))
        }
    }
}

/// Evaluate `perms` in chunks, keeping the first minimum in input order.
fn minimize(
    oracle: &ForbiddenOracle<'_>,
    perms: Vec<Vec<usize>>,
    mode: AltMode,
    floor: Option<usize>,
    complete: bool,
    meter: &Meter,
) -> AltMinResult {
    const CHUNK: usize = 1024;
    let mut best: Option<(AltResult, Vec<usize>)> = None;
    let mut examined = 0u64;
    let mut all_exact = true;
    let mut finished = true;
    for chunk in perms.chunks(CHUNK) {
        let results = par::map(chunk, |p| {
            let sigma = EdgeOrdering::new(p.clone()).expect("generated permutation");
            ex_alt_fixed_with(oracle, &sigma, meter)
        });
        for (res, p) in results.into_iter().zip(chunk) {
            examined += 1;
            all_exact &= res.exact;
            // Inexact results only bound this σ from above.
            let key = if res.exact { res.value } else { res.upper };
            if best.as_ref().is_none_or(|(b, _)| key < b.upper) {
                best = Some((res, p.clone()));
            }
        }
        let reached_floor = best.as_ref().is_some_and(|(b, _)| Some(b.upper) == floor);
        if reached_floor {
            break;
        }
        if meter.exhausted() {
            finished = false;
            break;
        }
    }
    let (res, perm) = best.expect("at least one ordering");
    let floor_hit = Some(res.upper) == floor && res.exact;
    AltMinResult {
        value: if res.exact { res.value } else { res.upper },
        exact: floor_hit || (complete && finished && all_exact),
        mode,
        orderings_examined: examined,
        ordering: EdgeOrdering::new(perm).expect("generated permutation"),
        coloring: res.coloring,
    }
}

/// Block-consecutive orderings: every part order, every internal order of
/// small parts, Eulerian-induced orders (both directions) of large parts.
/// Seeded sampling replaces enumeration beyond `BLOCK_ORDERING_CAP`.
pub fn block_structured_orderings(g: &Graph, d: &Decomposition) -> Vec<Vec<usize>> {
    let choices: Vec<Vec<Vec<usize>>> = d
        .parts()
        .iter()
        .map(|part| {
            if part.len() <= WITHIN_PART_THRESHOLD {
                let mut p = part.to_vec();
                let mut all = vec![p.clone()];
                while next_permutation(&mut p) {
                    all.push(p.clone());
                }
                all
            } else {
                let forward = eulerize_and_order(part, g).order;
                let backward: Vec<usize> = forward.iter().rev().copied().collect();
                vec![forward, backward]
            }
        })
        .collect();
    let k = d.len();
    let total = choices
        .iter()
        .map(|c| c.len() as u128)
        .fold(factorial(k), |a, b| a.saturating_mul(b));
    let assemble = |order: &[usize], picks: &[usize]| -> Vec<usize> {
        order.iter().flat_map(|&p| choices[p][picks[p]].iter().copied()).collect()
    };
    if total <= BLOCK_ORDERING_CAP as u128 {
        let mut out = Vec::with_capacity(total as usize);
        let mut order: Vec<usize> = (0..k).collect();
        loop {
            let mut picks = vec![0usize; k];
            loop {
                out.push(assemble(&order, &picks));
                let mut i = k;
                let mut carried = true;
                while carried && i > 0 {
                    i -= 1;
                    picks[i] += 1;
                    carried = picks[i] == choices[i].len();
                    if carried {
                        picks[i] = 0;
                    }
                }
                if carried {
                    break;
                }
            }
            if !next_permutation(&mut order) {
                break;
            }
        }
        out
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        (0..BLOCK_ORDERING_CAP)
            .map(|_| {
                let mut order: Vec<usize> = (0..k).collect();
                order.shuffle(&mut rng);
                let picks: Vec<usize> = choices
                    .iter()
                    .map(|c| rand::Rng::gen_range(&mut rng, 0..c.len()))
                    .collect();
                assemble(&order, &picks)
            })
            .collect()
    }
}
