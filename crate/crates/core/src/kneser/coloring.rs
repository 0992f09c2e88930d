//! Vertex colorings of Kneser instances: exact saturation branch and bound,
//! the saturation heuristic, and the least-non-witness-edge coloring.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::bits::iter_bits;
use super::{distinct, greedy_clique, BoundedValue, Certificate, KneserError, KneserInstance, DEFAULT_EXACT_CAP};
use crate::budget::{Budget, Meter};
use crate::graph::EdgeSet;
use crate::subtree::ForbiddenOracle;

const NONE: usize = usize::MAX;

/// Saturation-order heuristic coloring. Ties go to the larger degree, then
/// the smaller index.
pub fn dsatur_coloring(kg: &KneserInstance) -> Vec<usize> {
    let n = kg.vertex_count();
    let mut colors = vec![NONE; n];
    let mut seen: Vec<Vec<u64>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    let degree: Vec<usize> = (0..n).map(|v| kg.degree(v)).collect();
    let mut heap: BinaryHeap<(usize, usize, Reverse<usize>)> =
        (0..n).map(|v| (0, degree[v], Reverse(v))).collect();
    while let Some((s, _, Reverse(v))) = heap.pop() {
        if colors[v] != NONE || s != sat[v] {
            continue;
        }
        let c = (0..).find(|&c| !has_color(&seen[v], c)).expect("some color is free");
        colors[v] = c;
        for u in kg.neighbors(v) {
            if colors[u] == NONE && !has_color(&seen[u], c) {
                set_color(&mut seen[u], c);
                sat[u] += 1;
                heap.push((sat[u], degree[u], Reverse(u)));
            }
        }
    }
    colors
}

fn has_color(set: &[u64], c: usize) -> bool {
    set.get(c >> 6).is_some_and(|w| w >> (c & 63) & 1 == 1)
}

fn set_color(set: &mut Vec<u64>, c: usize) {
    if set.len() <= c >> 6 {
        set.resize((c >> 6) + 1, 0);
    }
    set[c >> 6] |= 1 << (c & 63);
}

struct Exact<'a> {
    kg: &'a KneserInstance,
    meter: Meter,
    palette: usize,
    colors: Vec<usize>,
    // neighbor count per (vertex, color)
    hits: Vec<u32>,
    sat: Vec<usize>,
    degree: Vec<usize>,
    best: usize,
    best_colors: Vec<usize>,
    lower: usize,
    aborted: bool,
}

impl Exact<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        let row = self.kg.adjacency().row(v);
        for u in iter_bits(row) {
            let slot = &mut self.hits[u * self.palette + c];
            if *slot == 0 {
                self.sat[u] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colors[v] = NONE;
        let row = self.kg.adjacency().row(v);
        for u in iter_bits(row) {
            let slot = &mut self.hits[u * self.palette + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[u] -= 1;
            }
        }
    }

    fn pick(&self) -> usize {
        let mut best = NONE;
        for v in 0..self.colors.len() {
            if self.colors[v] != NONE {
                continue;
            }
            if best == NONE || (self.sat[v], self.degree[v]) > (self.sat[best], self.degree[best]) {
                best = v;
            }
        }
        best
    }

    fn search(&mut self, colored: usize, used: usize) {
        if self.aborted || self.best == self.lower || used >= self.best {
            return;
        }
        if !self.meter.tick() {
            self.aborted = true;
            return;
        }
        if colored == self.colors.len() {
            self.best = used;
            self.best_colors = self.colors.clone();
            return;
        }
        let v = self.pick();
        for c in 0..=used.min(self.palette - 1) {
            if c == used && used + 1 >= self.best {
                break;
            }
            if self.hits[v * self.palette + c] != 0 {
                continue;
            }
            self.assign(v, c);
            self.search(colored + 1, used.max(c + 1));
            self.unassign(v, c);
            if self.aborted || self.best == self.lower {
                return;
            }
        }
    }
}

/// χ of `kg`, exact when the search closes within `budget` and the instance
/// has at most [`DEFAULT_EXACT_CAP`] vertices.
pub fn chromatic_number(kg: &KneserInstance, budget: Budget) -> BoundedValue {
    chromatic_number_capped(kg, budget, DEFAULT_EXACT_CAP)
}

pub fn chromatic_number_capped(kg: &KneserInstance, budget: Budget, exact_cap: usize) -> BoundedValue {
    let n = kg.vertex_count();
    if n == 0 {
        return BoundedValue {
            lower: 0,
            upper: 0,
            exact: true,
            certificate: Certificate::Coloring(Vec::new()),
            dual: Some(Certificate::Clique(Vec::new())),
        };
    }
    let clique = greedy_clique(kg);
    let heuristic = dsatur_coloring(kg);
    let upper = distinct(&heuristic);
    let lower = clique.len();
    if lower == upper || n > exact_cap {
        return BoundedValue {
            lower,
            upper,
            exact: lower == upper,
            certificate: Certificate::Coloring(heuristic),
            dual: Some(Certificate::Clique(clique)),
        };
    }
    let palette = upper;
    let mut exact = Exact {
        kg,
        meter: budget.meter(),
        palette,
        colors: vec![NONE; n],
        hits: vec![0; n * palette],
        sat: vec![0; n],
        degree: (0..n).map(|v| kg.degree(v)).collect(),
        best: upper,
        best_colors: heuristic,
        lower,
        aborted: false,
    };
    // A clique's colors can always be taken as 0..q.
    for (c, &v) in clique.iter().enumerate() {
        exact.assign(v, c);
    }
    exact.search(clique.len(), clique.len());
    let lower = if exact.aborted { lower } else { exact.best };
    BoundedValue {
        lower,
        upper: exact.best,
        exact: lower == exact.best,
        certificate: Certificate::Coloring(exact.best_colors),
        dual: Some(Certificate::Clique(clique)),
    }
}

/// Color each Kneser vertex by the least edge index it has outside
/// `witness`. Proper whenever `witness` contains no forbidden member, and
/// uses at most `|E| - |witness|` colors.
pub fn greedy_upper_coloring(kg: &KneserInstance, witness: &EdgeSet) -> Result<Vec<usize>, KneserError> {
    let m = kg.host().edge_count();
    if witness.universe() != m {
        return Err(KneserError::WitnessUniverse {
            expected: m,
            found: witness.universe(),
        });
    }
    let oracle = ForbiddenOracle::direct(kg.host(), kg.decomposition(), kg.family());
    if let Some(member) = oracle.find(witness) {
        return Err(KneserError::InvalidWitness { member });
    }
    Ok(kg
        .vertices()
        .iter()
        .map(|v| {
            v.difference(witness)
                .first()
                .expect("a member outside the witness has a non-witness edge")
        })
        .collect())
}
