//! `χ(KG(G, 𝒢, 𝒯_{n−r}))` against `cut_{r+1}(G, 𝒢)` on one instance, and
//! the alternating sandwich around `χ`.

use serde::Serialize;

use super::HarnessError;
use crate::alternating::{ex_alt_min, AltMode, EXHAUSTIVE_THRESHOLD};
use crate::budget::Budget;
use crate::cuts::{cut_decomp, cut_r, turan_ex, CutResult};
use crate::kneser::{build_kneser_capped, chromatic_number_capped, greedy_upper_coloring, BoundedValue, DEFAULT_EXACT_CAP};
use crate::graph::{Decomposition, EdgeSet, FamilyDescriptor, Graph};

/// Three-valued comparison of two possibly inexact quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equality {
    Yes,
    No,
    Indeterminate,
}

impl Equality {
    /// Compare the intervals `a` and `b`.
    pub fn of(a: (usize, usize), b: (usize, usize)) -> Self {
        if a.0 == a.1 && b.0 == b.1 && a.0 == b.0 {
            Equality::Yes
        } else if a.1 < b.0 || b.1 < a.0 {
            Equality::No
        } else {
            Equality::Indeterminate
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutValue {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    /// Spanning subgraph with no forbidden tree; `m − |witness| = upper`.
    pub witness: EdgeSet,
    /// Vertex bipartition attaining `cut_{r+1}(G)` for the one-part
    /// decomposition.
    pub partition: Option<CutResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremRecord {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub r: usize,
    /// Tree size `n − r` of the Kneser vertices.
    pub t: usize,
    pub kneser_vertices: usize,
    pub chi: BoundedValue,
    pub cut: CutValue,
    pub equal: Equality,
    /// Colors used by the coloring read off the cut witness; at most
    /// `cut.upper` when the one-sided bound is confirmed.
    pub greedy_colors: usize,
    pub upper_bound_holds: bool,
}

pub struct TheoremOptions {
    pub vertex_cap: usize,
    pub exact_cap: usize,
}

impl Default for TheoremOptions {
    fn default() -> Self {
        TheoremOptions {
            vertex_cap: crate::kneser::DEFAULT_VERTEX_CAP,
            exact_cap: DEFAULT_EXACT_CAP,
        }
    }
}

pub fn verify_theorem(g: &Graph, d: &Decomposition, r: usize, budget: Budget) -> Result<TheoremRecord, HarnessError> {
    verify_theorem_with(g, d, r, budget, &TheoremOptions::default())
}

/// Compute both sides and compare. The coloring that gives every tree its
/// least edge outside the cut witness is checked to be proper with at most
/// `cut.upper` colors, which is the inequality `χ <= cut_{r+1}`.
pub fn verify_theorem_with(
    g: &Graph,
    d: &Decomposition,
    r: usize,
    budget: Budget,
    opts: &TheoremOptions,
) -> Result<TheoremRecord, HarnessError> {
    let n = g.vertex_count();
    if n < r + 2 {
        return Err(HarnessError::TreeTooSmall { n, r });
    }
    let t = n - r;
    let f = FamilyDescriptor::Trees(t);
    let kg = build_kneser_capped(g, d, &f, opts.vertex_cap)?;
    let chi = chromatic_number_capped(&kg, budget, opts.exact_cap);
    let dc = cut_decomp(g, d, r + 1, budget)?;
    let partition = if d.is_whole_graph() && dc.exact {
        let p = cut_r(g, r + 1)?;
        Some(p)
    } else {
        None
    };
    let colors = greedy_upper_coloring(&kg, &dc.witness)?;
    let greedy_colors = crate::kneser::distinct(&colors);
    let upper_bound_holds = kg.is_proper(&colors) && greedy_colors <= dc.upper;
    let equal = Equality::of((chi.lower, chi.upper), (dc.lower, dc.upper));
    Ok(TheoremRecord {
        n,
        m: g.edge_count(),
        k: d.len(),
        r,
        t,
        kneser_vertices: kg.vertex_count(),
        chi,
        cut: CutValue {
            lower: dc.lower,
            upper: dc.upper,
            exact: dc.exact,
            witness: dc.witness,
            partition,
        },
        equal,
        greedy_colors,
        upper_bound_holds,
    })
}

/// `m − ex_alt <= χ <= m − ex` for trees on `t` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandwichRecord {
    pub m: usize,
    pub t: usize,
    pub ex: usize,
    pub ex_exact: bool,
    /// Minimum over the orderings examined; exact `ex_alt` when
    /// `ex_alt_exact`, otherwise an upper bound on it.
    pub ex_alt: usize,
    pub ex_alt_exact: bool,
    pub ex_alt_mode: AltMode,
    pub chi: BoundedValue,
    /// `χ` and `ex` are both exact, so the two checks are decisive.
    pub exact: bool,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

impl SandwichRecord {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

/// Both sandwich inequalities, using exhaustive ordering search up to
/// `EXHAUSTIVE_THRESHOLD` edges and block-structured orderings beyond.
/// Any single ordering gives a valid lower side, so an inexact `ex_alt`
/// still yields a sound check.
pub fn sandwich_check(g: &Graph, d: &Decomposition, t: usize, budget: Budget) -> Result<SandwichRecord, HarnessError> {
    let f = FamilyDescriptor::Trees(t);
    let m = g.edge_count();
    let kg = build_kneser_capped(g, d, &f, crate::kneser::DEFAULT_VERTEX_CAP)?;
    let chi = crate::kneser::chromatic_number(&kg, budget);
    let ex = turan_ex(g, d, &f, budget);
    let mode = if m <= EXHAUSTIVE_THRESHOLD {
        AltMode::Exhaustive
    } else {
        AltMode::BlockStructured
    };
    let alt = ex_alt_min(g, d, &f, mode, budget)?;
    // neither side is refuted by the computed intervals
    let lower_holds = chi.upper + alt.value >= m;
    let upper_holds = chi.lower + ex.value <= m;
    Ok(SandwichRecord {
        m,
        t,
        ex: ex.value,
        ex_exact: ex.exact,
        ex_alt: alt.value,
        ex_alt_exact: alt.exact,
        ex_alt_mode: alt.mode,
        exact: chi.exact && ex.exact,
        chi,
        lower_holds,
        upper_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counterexamples() {
        for (n, chi, cut) in [(3, 1, 2), (4, 2, 3)] {
            let g = Graph::complete(n);
            let rec = verify_theorem(&g, &Decomposition::trivial(&g), 0, Budget::default()).unwrap();
            assert_eq!(rec.chi.value(), Some(chi));
            assert_eq!((rec.cut.lower, rec.cut.upper), (cut, cut));
            assert_eq!(rec.equal, Equality::No);
            assert!(rec.upper_bound_holds);
            assert_eq!(rec.cut.partition.as_ref().map(|p| p.value), Some(cut));
        }
    }

    #[test]
    fn five_cycle() {
        let g = Graph::cycle(5);
        let rec = verify_theorem(&g, &Decomposition::trivial(&g), 0, Budget::default()).unwrap();
        assert_eq!(rec.chi.value(), Some(1));
        assert_eq!(rec.cut.upper, 2);
        assert_eq!(rec.equal, Equality::No);
    }

    #[test]
    fn too_small() {
        let g = Graph::complete(3);
        assert!(matches!(
            verify_theorem(&g, &Decomposition::trivial(&g), 2, Budget::default()),
            Err(HarnessError::TreeTooSmall { .. })
        ));
    }

    #[test]
    fn triangle_sandwich() {
        let g = Graph::complete(3);
        let s = sandwich_check(&g, &Decomposition::trivial(&g), 3, Budget::default()).unwrap();
        assert_eq!((s.ex, s.ex_alt), (1, 2));
        assert!(s.holds());
    }

    #[test]
    fn equality_intervals() {
        assert_eq!(Equality::of((2, 2), (2, 2)), Equality::Yes);
        assert_eq!(Equality::of((1, 2), (3, 4)), Equality::No);
        assert_eq!(Equality::of((1, 3), (3, 4)), Equality::Indeterminate);
    }
}
