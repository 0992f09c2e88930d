//! Library results against brute-force references, and the structural
//! invariants as properties.

mod common;

use std::collections::BTreeSet;

use common::*;
use kneser_core::alternating::{
    ex_alt_fixed, ex_alt_min, is_valid_alt, realize_coloring, AltMode, EdgeOrdering, Parity,
};
use kneser_core::cuts::{cut_decomp, cut_r, min_cut_global, turan_ex};
use kneser_core::forest::{rainbow_cycles, verify_forest_property_exhaustive};
use kneser_core::graph::{components, is_g_subgraph};
use kneser_core::kneser::{build_kneser, chromatic_number, clique_number, greedy_upper_coloring};
use kneser_core::sigma::{build_sigma, DegradationPolicy};
use kneser_core::subtree::{contains_g_tree, count_family, find_g_forest, find_g_tree};
use kneser_core::{Budget, Decomposition, EdgeSet, FamilyDescriptor, Graph};
use proptest::prelude::*;

fn mask_of(s: &EdgeSet) -> u64 {
    s.iter().fold(0, |acc, e| acc | 1 << e)
}

fn any_subset(g: &Graph) -> impl Strategy<Value = EdgeSet> {
    let m = g.edge_count();
    proptest::collection::vec(any::<bool>(), m)
        .prop_map(move |bits| EdgeSet::from_indices(m, (0..m).filter(|&e| bits[e])))
}

fn decomposed(max_n: usize, max_m: usize, max_k: usize) -> impl Strategy<Value = (Graph, Decomposition)> {
    arb_graph(max_n, max_m).prop_flat_map(move |g| arb_decomposition(g, max_k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn edge_list_round_trip(g in arb_graph(8, 28)) {
        prop_assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn set_operations_are_exact(a in proptest::collection::btree_set(0usize..70, 0..40),
                                b in proptest::collection::btree_set(0usize..70, 0..40)) {
        let sa = EdgeSet::from_indices(70, a.iter().copied());
        let sb = EdgeSet::from_indices(70, b.iter().copied());
        let as_set = |s: EdgeSet| s.iter().collect::<BTreeSet<_>>();
        prop_assert_eq!(as_set(sa.union(&sb)), a.union(&b).copied().collect());
        prop_assert_eq!(as_set(sa.intersection(&sb)), a.intersection(&b).copied().collect());
        prop_assert_eq!(as_set(sa.difference(&sb)), a.difference(&b).copied().collect());
        prop_assert_eq!(sa.is_disjoint(&sb), a.is_disjoint(&b));
    }

    #[test]
    fn components_partition_the_vertices((g, h) in arb_graph(9, 20).prop_flat_map(|g| (Just(g.clone()), any_subset(&g)))) {
        let comps = components(&g, &h);
        let mut seen = vec![0usize; g.vertex_count()];
        for c in &comps {
            for &v in c {
                seen[v] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        for e in h.iter() {
            let (a, b) = g.edge(e);
            prop_assert!(comps.iter().any(|c| c.contains(&a) && c.contains(&b)));
        }
    }

    #[test]
    fn validation_is_idempotent((g, d) in decomposed(7, 14, 4)) {
        let again = Decomposition::validate(&g, d.parts().to_vec(), true).unwrap();
        prop_assert_eq!(&again, &d);
        let sizes = d.sizes();
        prop_assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn g_subgraph_is_monotone(((g, d), h, extra) in decomposed(7, 14, 4)
        .prop_flat_map(|(g, d)| { let s1 = any_subset(&g); let s2 = any_subset(&g); (Just((g, d)), s1, s2) }))
    {
        let _ = g;
        if is_g_subgraph(&h, &d) {
            prop_assert!(is_g_subgraph(&h.union(&extra), &d));
        }
    }

    #[test]
    fn tree_counts_match_brute_force(g in arb_graph(7, 12), t in 2usize..8) {
        let t = t.min(g.vertex_count());
        let brute = submasks_of_size(full_mask(g.edge_count()), t - 1)
            .into_iter()
            .filter(|&s| is_tree(&g, s, t))
            .count() as u64;
        prop_assert_eq!(count_family(&g, &FamilyDescriptor::Trees(t)), brute);
    }

    #[test]
    fn tree_oracle_matches_brute_force(((g, d), h) in decomposed(6, 10, 3)
        .prop_flat_map(|(g, d)| { let s = any_subset(&g); (Just((g, d)), s) }), t in 2usize..7)
    {
        let t = t.min(g.vertex_count());
        let parts = part_masks(&d);
        let expect = has_g_tree(&g, &parts, mask_of(&h), t);
        prop_assert_eq!(contains_g_tree(&g, &h, &d, t), expect);
        if let Some(w) = find_g_tree(&g, &h, &d, t) {
            prop_assert!(w.is_valid(&g));
            prop_assert!(w.edges.is_subset(&h));
            prop_assert_eq!(w.vertex_count, t);
        }
    }

    #[test]
    fn g_forest_has_one_edge_per_part((g, d) in arb_connected(7, 14).prop_flat_map(|g| arb_decomposition(g, 4))) {
        let all = g.all_edges();
        if let Some(forest) = find_g_forest(&g, &all, &d).unwrap() {
            prop_assert_eq!(forest.len(), d.len());
            prop_assert!(d.parts().iter().all(|p| p.intersection_len(&forest) == 1));
            prop_assert!(kneser_core::subtree::is_forest(&g, &forest));
        }
    }

    #[test]
    fn cut_r_is_monotone_and_matches_brute_force(g in arb_connected(8, 16)) {
        let n = g.vertex_count();
        let mut last = 0;
        for r in 1..=n / 2 {
            let c = cut_r(&g, r).unwrap();
            prop_assert!(c.is_valid(&g, r));
            prop_assert_eq!(Some(c.value), brute_cut_r(&g, r));
            prop_assert!(c.value >= last);
            last = c.value;
        }
    }

    #[test]
    fn turan_witness_is_free((g, d) in decomposed(6, 9, 3), t in 2usize..7) {
        let t = t.min(g.vertex_count());
        let ex = turan_ex(&g, &d, &FamilyDescriptor::Trees(t), Budget::default());
        prop_assert!(ex.exact);
        prop_assert_eq!(ex.witness.len(), ex.value);
        prop_assert!(!has_g_tree(&g, &part_masks(&d), mask_of(&ex.witness), t));
        prop_assert_eq!(ex.value, brute_ex(&g, &d, t));
    }

    #[test]
    fn kneser_graph_is_symmetric_and_solved((g, d) in decomposed(5, 7, 2), t in 2usize..6) {
        let t = t.min(g.vertex_count());
        let kg = build_kneser(&g, &d, &FamilyDescriptor::Trees(t)).unwrap();
        let expected: BTreeSet<u64> = brute_g_trees(&g, &d, t).into_iter().collect();
        let got: BTreeSet<u64> = kg.vertices().iter().map(mask_of).collect();
        prop_assert_eq!(&got, &expected);
        let nv = kg.vertex_count();
        for u in 0..nv {
            prop_assert!(!kg.adjacent(u, u));
            for v in 0..nv {
                prop_assert_eq!(kg.adjacent(u, v), kg.adjacent(v, u));
            }
        }
        if (1..=12).contains(&nv) {
            let masks: Vec<u64> = kg.vertices().iter().map(mask_of).collect();
            let adj = disjointness(&masks);
            let chi = chromatic_number(&kg, Budget::default());
            prop_assert_eq!(chi.value(), Some(brute_chromatic(&adj)));
            prop_assert!(chi.validate(&kg));
            prop_assert_eq!(clique_number(&kg, Budget::default()).value(), Some(brute_clique(&adj)));
        }
    }

    #[test]
    fn least_free_edge_coloring_is_proper((g, d) in decomposed(6, 9, 2)) {
        let t = g.vertex_count();
        let kg = build_kneser(&g, &d, &FamilyDescriptor::Trees(t)).unwrap();
        let ex = turan_ex(&g, &d, &FamilyDescriptor::Trees(t), Budget::default());
        let colors = greedy_upper_coloring(&kg, &ex.witness).unwrap();
        prop_assert!(kg.is_proper(&colors));
        let distinct: BTreeSet<usize> = colors.iter().copied().collect();
        prop_assert!(distinct.len() <= g.edge_count() - ex.value);
    }

    #[test]
    fn parity_flip_keeps_validity(((g, d), perm, colored) in decomposed(6, 9, 3)
        .prop_flat_map(|(g, d)| {
            let m = g.edge_count();
            let perm = Just((0..m).collect::<Vec<_>>()).prop_shuffle();
            let colored = any_subset(&g);
            (Just((g, d)), perm, colored)
        }), t in 2usize..7)
    {
        let f = FamilyDescriptor::Trees(t.min(g.vertex_count()));
        let sigma = EdgeOrdering::new(perm).unwrap();
        let red = realize_coloring(&sigma, &colored, Parity::Red);
        let blue = realize_coloring(&sigma, &colored, Parity::Blue);
        prop_assert!(red.is_alternating(&sigma));
        prop_assert_eq!(red.red(), blue.blue());
        prop_assert_eq!(is_valid_alt(&g, &d, &f, &red), is_valid_alt(&g, &d, &f, &blue));
    }

    #[test]
    fn fixed_order_bounds_and_reversal(((g, d), perm) in decomposed(5, 7, 2)
        .prop_flat_map(|(g, d)| {
            let m = g.edge_count();
            (Just((g, d)), Just((0..m).collect::<Vec<_>>()).prop_shuffle())
        }), t in 2usize..6)
    {
        let t = t.min(g.vertex_count());
        let f = FamilyDescriptor::Trees(t);
        let sigma = EdgeOrdering::new(perm.clone()).unwrap();
        let fixed = ex_alt_fixed(&g, &d, &f, &sigma, Budget::default());
        prop_assert!(fixed.exact);
        prop_assert_eq!(fixed.value, brute_ex_alt_fixed(&g, &d, t, &perm));
        let ex = brute_ex(&g, &d, t);
        prop_assert!(ex <= fixed.value && fixed.value <= 2 * ex);
        let back = ex_alt_fixed(&g, &d, &f, &sigma.reversed(), Budget::default());
        prop_assert_eq!(back.value, fixed.value);
    }

    #[test]
    fn sampled_minimum_is_no_better((g, d) in decomposed(5, 6, 2), seed in any::<u64>()) {
        let f = FamilyDescriptor::Trees(g.vertex_count());
        let exhaustive = ex_alt_min(&g, &d, &f, AltMode::Exhaustive, Budget::default()).unwrap();
        let sampled = ex_alt_min(&g, &d, &f, AltMode::Sampled { count: 5, seed }, Budget::default()).unwrap();
        prop_assert!(exhaustive.exact);
        prop_assert!(sampled.value >= exhaustive.value);
        prop_assert!(exhaustive.value >= brute_ex(&g, &d, g.vertex_count()));
    }

    #[test]
    fn rainbow_cycles_match_brute_force((g, d) in decomposed(6, 10, 5)) {
        let found = rainbow_cycles(&g, &d);
        for c in &found {
            prop_assert!(c.is_valid(&g, &d));
            prop_assert!(c.edges.len() <= d.len());
        }
        if d.len() <= 2 {
            prop_assert!(found.is_empty());
        }
        let parts = part_masks(&d);
        let brute = (1..=full_mask(g.edge_count()))
            .filter(|&s| is_cycle(&g, s) && parts.iter().all(|&p| (p & s).count_ones() <= 1))
            .count();
        prop_assert_eq!(found.len(), brute);
    }

    #[test]
    fn forest_check_is_deterministic((g, d) in arb_connected(5, 6).prop_flat_map(|g| arb_decomposition(g, 3))) {
        let a = verify_forest_property_exhaustive(&g, &d, Budget::default());
        let b = verify_forest_property_exhaustive(&g, &d, Budget::default());
        prop_assert_eq!(a, b);
    }
}

/// All degrees in `s` are 0 or 2 and `s` is connected.
fn is_cycle(g: &Graph, s: u64) -> bool {
    let mut deg = vec![0; g.vertex_count()];
    for e in mask_edges(s) {
        let (a, b) = g.edge(e);
        deg[a] += 1;
        deg[b] += 1;
    }
    if deg.iter().any(|&x| x != 0 && x != 2) || s == 0 {
        return false;
    }
    let verts = deg.iter().filter(|&&x| x == 2).count();
    // a union of cycles is one cycle iff it has as many edges as vertices
    // in a single component; a spanning tree on the touched vertices
    // has verts - 1 of them
    let drop_one = s & (s - 1);
    is_tree(g, drop_one, verts)
}

#[test]
fn cut_decomposition_of_the_whole_graph_is_cut_r() {
    for seed in 0..40 {
        let g = kneser_core::harness::random_connected_graph(6, 0.4, seed);
        let d = Decomposition::trivial(&g);
        for i in 1..=3 {
            let c = cut_decomp(&g, &d, i, Budget::default()).unwrap();
            assert_eq!(c.value(), Some(cut_r(&g, i).unwrap().value), "seed {seed} i {i}");
        }
    }
}

#[test]
fn global_min_cut_matches_subsets() {
    for seed in 0..30 {
        let g = kneser_core::harness::random_connected_graph(10, 0.3, 100 + seed);
        let c = min_cut_global(&g).unwrap();
        assert_eq!(Some(c.value), brute_cut_r(&g, 1));
        assert_eq!(crossing(&g, c.side.iter().fold(0, |acc, &v| acc | 1 << v)), c.value);
    }
}

#[test]
fn sigma_is_deterministic_and_valid() {
    for (g, seed) in [(Graph::complete(9), 1u64), (kneser_core::harness::random_dense_graph(12, 0.85, 5).unwrap(), 2)] {
        let d = Decomposition::trivial(&g);
        let a = build_sigma(&g, &d, 0, seed, DegradationPolicy::BestEffort).unwrap();
        let b = build_sigma(&g, &d, 0, seed, DegradationPolicy::BestEffort).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let sigma = a.ordering.expect("best effort emits σ");
        sigma.validate(&g).unwrap();
        let mut perm = sigma.perm().to_vec();
        perm.sort_unstable();
        assert_eq!(perm, (0..g.edge_count()).collect::<Vec<_>>());
    }
}
