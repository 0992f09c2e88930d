//! Acceptance suite. Each test prints one `PASS`/`FAIL` line with its
//! numbered criterion, the measured quantities and the elapsed time, then
//! asserts. Run with `--nocapture` to see the lines.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use kneser_core::alternating::{ex_alt_fixed, ex_alt_fixed_with, sample_colorings, verify_part_degree_bound, EdgeOrdering};
use kneser_core::cuts::{cut_decomp, cut_r, min_cut_global, turan_ex};
use kneser_core::forest::{rainbow_cycle_condition, verify_forest_property_exhaustive, ForestError};
use kneser_core::harness::{
    connected_catalog, families_crosscheck, gap_table, random_connected_graph, random_dense_graph, render_gap_table,
    run_campaign, sandwich_check, small_decompositions, verify_theorem, CampaignConfig, Equality, KnownFamily,
};
use kneser_core::kneser::{build_kneser, chromatic_number, clique_number};
use kneser_core::sigma::{build_sigma, is_monogamous, DegradationPolicy, SigmaPipelineReport};
use kneser_core::subtree::ForbiddenOracle;
use kneser_core::{Budget, Decomposition, EdgeSet, FamilyDescriptor, Graph};

fn report(criterion: u32, name: &str, pass: bool, detail: String, start: Instant) -> bool {
    println!(
        "acceptance {criterion:>2} {} {name}: {detail} ({:.2?})",
        if pass { "PASS" } else { "FAIL" },
        start.elapsed()
    );
    pass
}

fn within(start: Instant, limit: Duration) -> bool {
    start.elapsed() < limit
}

/// The sandwich grid: connected graphs up to six edges, covering
/// decompositions into at most two parts, trees on `n − 1` or `n` vertices.
fn sandwich_grid() -> Vec<(Graph, Decomposition, usize)> {
    let mut out = Vec::new();
    for g in connected_catalog(6) {
        let n = g.vertex_count();
        for d in small_decompositions(&g, 2) {
            for t in [n - 1, n] {
                if t >= 2 {
                    out.push((g.clone(), d.clone(), t));
                }
            }
        }
    }
    out
}

#[test]
fn small_complete_graph_counterexamples() {
    let total = Instant::now();
    let mut pass = true;
    let mut detail = Vec::new();
    for (n, chi, cut) in [(3, 1, 2), (4, 2, 3)] {
        let start = Instant::now();
        let g = Graph::complete(n);
        let rec = verify_theorem(&g, &Decomposition::trivial(&g), 0, Budget::default()).unwrap();
        let cut1 = cut_r(&g, 1).unwrap().value;
        let ok = rec.chi.value() == Some(chi)
            && cut1 == cut
            && rec.cut.lower == cut
            && rec.cut.upper == cut
            && rec.equal == Equality::No
            && within(start, Duration::from_secs(1));
        pass &= ok;
        detail.push(format!("K{n}: chi {:?} cut {cut1} equal {:?} in {:.0?}", rec.chi.value(), rec.equal, start.elapsed()));
    }
    assert!(report(1, "small complete graphs", pass, detail.join("; "), total));
}

#[test]
fn clique_numbers_of_complete_graph_tree_kneser() {
    let start = Instant::now();
    let mut pass = true;
    let mut detail = Vec::new();
    for (n, omega) in [(4, 2), (6, 3)] {
        let g = Graph::complete(n);
        let kg = build_kneser(&g, &Decomposition::trivial(&g), &FamilyDescriptor::Trees(n)).unwrap();
        let w = clique_number(&kg, Budget::default());
        pass &= w.value() == Some(omega) && w.validate(&kg);
        detail.push(format!("K{n}: {} vertices, omega {:?}", kg.vertex_count(), w.value()));
    }
    pass &= within(start, Duration::from_secs(60));
    assert!(report(2, "clique numbers", pass, detail.join("; "), start));
}

#[test]
fn sandwich_suite() {
    let start = Instant::now();
    let grid = sandwich_grid();
    let mut violations = Vec::new();
    let mut inexact = 0;
    for (g, d, t) in &grid {
        let s = sandwich_check(g, d, *t, Budget::default()).unwrap();
        if !(s.exact && s.ex_alt_exact) {
            inexact += 1;
        }
        // both computed values exact, so the inequalities are checked
        // directly rather than through intervals
        let chi = s.chi.lower;
        if !(s.m - s.ex_alt <= chi && chi + s.ex <= s.m) {
            violations.push(format!("{:?} parts {:?} t {t}", g.edges(), d.sizes()));
        }
    }
    let pass = violations.is_empty() && inexact == 0 && within(start, Duration::from_secs(600));
    let detail = format!("{} instances, {} violations, {inexact} inexact {:?}", grid.len(), violations.len(), violations.first());
    assert!(report(3, "sandwich", pass, detail, start));
}

#[test]
fn whole_graph_cut_equals_cut_r() {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut checks = 0;
    for seed in 0..200u64 {
        let n = 2 + (seed % 6) as usize;
        let p = 0.15 + 0.1 * (seed % 7) as f64;
        let g = random_connected_graph(n, p, seed);
        let d = Decomposition::trivial(&g);
        for i in 1..=n / 2 {
            checks += 1;
            let a = cut_decomp(&g, &d, i, Budget::default()).unwrap();
            let b = cut_r(&g, i).unwrap().value;
            let brute = brute_cut_r(&g, i);
            if a.value() != Some(b) || Some(b) != brute {
                mismatches += 1;
            }
        }
    }
    let pass = mismatches == 0;
    assert!(report(4, "cut of the one-part decomposition", pass, format!("{checks} checks on 200 graphs, {mismatches} mismatches"), start));
}

#[test]
fn global_min_cut_oracle() {
    let start = Instant::now();
    let mut mismatches = 0;
    for seed in 0..100u64 {
        let n = 2 + (seed % 11) as usize;
        let g = random_connected_graph(n, 0.1 + 0.08 * (seed % 10) as f64, 1000 + seed);
        let c = min_cut_global(&g).unwrap();
        let side = c.side.iter().fold(0u64, |acc, &v| acc | 1 << v);
        if Some(c.value) != brute_cut_r(&g, 1) || crossing(&g, side) != c.value {
            mismatches += 1;
        }
    }
    let pass = mismatches == 0 && within(start, Duration::from_secs(120));
    assert!(report(5, "global min cut", pass, format!("100 graphs, {mismatches} mismatches"), start));
}

#[test]
fn fixed_order_alternating_bounds() {
    let start = Instant::now();
    let grid = sandwich_grid();
    let mut orderings = 0u64;
    let mut violations = 0;
    let mut inexact = 0;
    for (g, d, t) in &grid {
        let f = FamilyDescriptor::Trees(*t);
        let ex = turan_ex(g, d, &f, Budget::default());
        if !ex.exact {
            inexact += 1;
        }
        let oracle = ForbiddenOracle::new(g, d, &f);
        let m = g.edge_count();
        let mut perm: Vec<usize> = (0..m).collect();
        loop {
            let sigma = EdgeOrdering::new(perm.clone()).unwrap();
            let alt = ex_alt_fixed_with(&oracle, &sigma, &Budget::default().meter());
            orderings += 1;
            if !alt.exact {
                inexact += 1;
            }
            if !(ex.value <= alt.value && alt.value <= 2 * ex.value) {
                violations += 1;
            }
            if !next_perm(&mut perm) {
                break;
            }
        }
    }
    let k3 = Graph::complete(3);
    let whole = Decomposition::trivial(&k3);
    let f3 = FamilyDescriptor::Trees(3);
    let ex3 = brute_ex(&k3, &whole, 3);
    let alt3 = (0..6)
        .map(|i| {
            let perm = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]][i].to_vec();
            ex_alt_fixed(&k3, &whole, &f3, &EdgeOrdering::new(perm).unwrap(), Budget::default()).value
        })
        .min()
        .unwrap();
    let pass = violations == 0 && inexact == 0 && ex3 == 1 && alt3 == 2;
    let detail = format!(
        "{} instances, {orderings} orderings, {violations} violations; triangle ex {ex3}, ex_alt {alt3}",
        grid.len()
    );
    assert!(report(6, "alternating number between ex and 2ex", pass, detail, start));
}

fn next_perm(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[test]
fn known_family_chromatic_numbers() {
    let start = Instant::now();
    let cases = [
        (KnownFamily::Kneser { n: 5, k: 2 }, 3),
        (KnownFamily::Kneser { n: 6, k: 2 }, 4),
        (KnownFamily::Circular { n: 6, d: 2 }, 3),
        (KnownFamily::Circular { n: 7, d: 3 }, 3),
    ];
    let selection: Vec<KnownFamily> = cases.iter().map(|c| c.0).collect();
    let recs = families_crosscheck(&selection, 10_000, Budget::default());
    let mut pass = true;
    let mut detail = Vec::new();
    for ((family, expected), rec) in cases.iter().zip(&recs) {
        let (g, f) = family.realize();
        let kg = build_kneser(&g, &Decomposition::trivial(&g), &f).unwrap();
        let masks: Vec<u64> = kg.vertices().iter().map(|s| s.iter().fold(0, |a, e| a | 1 << e)).collect();
        let brute = brute_chromatic(&disjointness(&masks));
        let exact = rec.chi.as_ref().and_then(|c| c.value());
        pass &= exact == Some(*expected) && brute == *expected && family.known_chi() == *expected;
        detail.push(format!("{family}: {exact:?}"));
    }
    pass &= within(start, Duration::from_secs(120));
    assert!(report(7, "known families", pass, detail.join(", "), start));
}

#[test]
fn clique_lower_bound_from_the_cut() {
    let start = Instant::now();
    let mut violations = 0;
    let mut inexact = 0;
    for seed in 0..100u64 {
        let n = 3 + (seed % 5) as usize;
        let g = random_connected_graph(n, 0.2 + 0.1 * (seed % 6) as f64, 7000 + seed);
        let cut1 = cut_r(&g, 1).unwrap().value;
        let kg = build_kneser(&g, &Decomposition::trivial(&g), &FamilyDescriptor::Trees(n)).unwrap();
        let w = clique_number(&kg, Budget::nodes(5_000_000));
        if !w.exact {
            inexact += 1;
        }
        // the certified clique alone must reach the bound
        if w.lower < cut1.saturating_sub(1) / 2 {
            violations += 1;
        }
    }
    let pass = violations == 0;
    assert!(report(8, "clique lower bound", pass, format!("100 graphs, {violations} violations, {inexact} inexact"), start));
}

fn sigma_instance_ok(g: &Graph, rep: &SigmaPipelineReport, seed: u64) -> Result<(), String> {
    let d = Decomposition::trivial(g);
    let sigma = rep.ordering.as_ref().ok_or("no σ emitted")?;
    sigma.validate(g).map_err(|e| e.to_string())?;
    let perm: BTreeSet<usize> = sigma.perm().iter().copied().collect();
    if perm.len() != g.edge_count() {
        return Err("σ is not a permutation of E(G)".into());
    }
    for span in sigma.spans() {
        if let Some(tour) = &span.tour {
            if tour.edge_order() != sigma.span_edges(span) {
                return Err("span differs from its tour".into());
            }
        }
    }
    let a = &rep.artifacts;
    if !is_monogamous(&a.blocks) {
        return Err("blocks repeat a vertex pair".into());
    }
    for b in &a.blocks {
        let cyc: BTreeSet<usize> = b.edges.iter().copied().collect();
        if cyc.len() != 4 || (0..4).any(|i| {
            let (u, v) = (b.vertices[i], b.vertices[(i + 1) % 4]);
            g.edge(b.edges[i]) != (u.min(v), u.max(v))
        }) {
            return Err("malformed 4-block".into());
        }
    }
    for (i, x) in a.h.iter().enumerate() {
        if a.h[i + 1..].iter().any(|y| x.intersects(y)) {
            return Err("H sets overlap".into());
        }
    }
    let m = g.edge_count();
    let mut used = EdgeSet::new(m);
    for c in &a.cycles {
        let es = c.edge_set(m);
        if !c.is_valid(g) || used.intersects(&es) || a.h.iter().any(|h| h.intersects(&es)) {
            return Err("Hamiltonian cycles invalid or overlapping".into());
        }
        used.union_with(&es);
    }
    if rep.stage("hamiltonian_cycles").is_none_or(|s| s.achieved == 0) {
        return Err("no Hamiltonian cycle".into());
    }
    let last = d.part(d.len() - 1);
    for c in sample_colorings(sigma, 1000, seed) {
        if !verify_part_degree_bound(g, last, &c, 7) {
            return Err("degree bound violated".into());
        }
    }
    Ok(())
}

#[test]
fn sigma_pipeline_structure() {
    let start = Instant::now();
    let mut instances: Vec<(String, Graph)> = vec![("K12".into(), Graph::complete(12)), ("K16".into(), Graph::complete(16))];
    for i in 0..20u64 {
        let n = 12 + (i % 5) as usize;
        instances.push((format!("dense n={n} seed={i}"), random_dense_graph(n, 0.85, 500 + i).unwrap()));
    }
    let mut failures = Vec::new();
    for (i, (name, g)) in instances.iter().enumerate() {
        let d = Decomposition::trivial(g);
        let rep = build_sigma(g, &d, 0, i as u64, DegradationPolicy::BestEffort).unwrap();
        if let Err(e) = sigma_instance_ok(g, &rep, i as u64) {
            failures.push(format!("{name}: {e}"));
        }
    }
    let pass = failures.is_empty() && within(start, Duration::from_secs(600));
    let detail = format!("{} instances, {} failures {:?}", instances.len(), failures.len(), failures.first());
    assert!(report(9, "sigma construction", pass, detail, start));
}

#[test]
fn gap_table_and_upper_bound() {
    let start = Instant::now();
    let config = CampaignConfig::parse(
        r#"
        name = "gap"
        seeds = [0, 1]
        [[grid]]
        n = "5..7"
        r = [0, 1]
        delta = [0.5, 0.6, 0.7, 0.8, 0.9, 1.0]
        "#,
    )
    .unwrap();
    let records = run_campaign(&config, &BTreeSet::new()).unwrap();
    let theorem: Vec<_> = records.iter().filter_map(|r| r.theorem.as_ref()).collect();
    let unconfirmed = theorem.iter().filter(|t| !t.upper_bound_holds).count();
    let errors: Vec<_> = records.iter().filter_map(|r| r.error.as_ref()).collect();
    let rows = gap_table(&records);
    println!("{}", render_gap_table(&rows));
    let pass = unconfirmed == 0 && errors.is_empty() && !theorem.is_empty();
    let detail = format!(
        "{} instances, {} with the upper bound confirmed, {} rows, errors {:?}",
        records.len(),
        theorem.len() - unconfirmed,
        rows.len(),
        errors.first()
    );
    assert!(report(10, "gap table and upper bound", pass, detail, start));
}

/// Every set partition of `0..m` into nonempty parts.
fn set_partitions(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(labels: &mut Vec<usize>, m: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if labels.len() == m {
            out.push(labels.clone());
            return;
        }
        for l in 0..=max + 1 {
            labels.push(l);
            rec(labels, m, max.max(l), out);
            labels.pop();
        }
    }
    if m > 0 {
        let mut labels = vec![0];
        rec(&mut labels, m, 0, &mut out);
    }
    out
}

#[test]
fn rainbow_condition_implies_forest_property() {
    let start = Instant::now();
    let mut instances = 0;
    let mut premise = 0;
    let mut counterexamples = Vec::new();
    let mut skipped = 0;
    let mut check = |g: &Graph, d: &Decomposition| {
        if !rainbow_cycle_condition(g, d).holds {
            return;
        }
        match verify_forest_property_exhaustive(g, d, Budget::default()) {
            Ok(v) => {
                instances += 1;
                premise += 1;
                if !v.holds {
                    counterexamples.push(format!("{:?} parts {:?}", g.edges(), d.sizes()));
                }
            }
            Err(ForestError::TooManyOrderings { .. }) => skipped += 1,
            Err(e) => panic!("{e}"),
        }
    };
    for g in connected_catalog(6) {
        let m = g.edge_count();
        for labels in set_partitions(m) {
            let k = labels.iter().max().unwrap() + 1;
            let parts: Vec<EdgeSet> =
                (0..k).map(|p| EdgeSet::from_indices(m, (0..m).filter(|&e| labels[e] == p))).collect();
            let d = Decomposition::validate(&g, parts, true).unwrap();
            check(&g, &d);
        }
    }
    for seed in 0..40u64 {
        let g = random_dense_graph(5 + (seed % 2) as usize, 0.6, 9000 + seed).unwrap();
        let k = 2 + (seed % 3) as usize;
        let d = kneser_core::harness::random_decomposition(&g, k, seed).unwrap();
        check(&g, &d);
    }
    let pass = counterexamples.is_empty() && instances > 0 && within(start, Duration::from_secs(600));
    let detail = format!(
        "{premise} instances satisfy the condition, {instances} checked directly, {skipped} over the ordering cap, {} counterexamples {:?}",
        counterexamples.len(),
        counterexamples.first()
    );
    assert!(report(11, "forest property soundness", pass, detail, start));
}

#[test]
fn brute_force_chromatic_agrees_on_small_tree_kneser_graphs() {
    // the exact solver on the instances behind the first criterion,
    // checked against plain backtracking
    for n in 3..=4 {
        let g = Graph::complete(n);
        let d = Decomposition::trivial(&g);
        let kg = build_kneser(&g, &d, &FamilyDescriptor::Trees(n)).unwrap();
        let masks: Vec<u64> = kg.vertices().iter().map(|s| s.iter().fold(0, |a, e| a | 1 << e)).collect();
        assert_eq!(chromatic_number(&kg, Budget::default()).value(), Some(brute_chromatic(&disjointness(&masks))));
    }
}
