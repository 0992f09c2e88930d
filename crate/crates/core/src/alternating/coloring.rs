//! Alternating 2-colorings along an edge ordering.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{EdgeOrdering, OrderingError};
use crate::graph::{Decomposition, EdgeSet, FamilyDescriptor, Graph};
use crate::subtree::ForbiddenOracle;

/// Color of the first colored edge along `σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Red,
    Blue,
}

impl Parity {
    pub fn flip(self) -> Self {
        match self {
            Parity::Red => Parity::Blue,
            Parity::Blue => Parity::Red,
        }
    }
}

/// Colored edges alternate red and blue along `σ`; the rest are neutral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternatingColoring {
    colored: EdgeSet,
    parity: Parity,
    red: EdgeSet,
    blue: EdgeSet,
}

pub fn realize_coloring(sigma: &EdgeOrdering, colored: &EdgeSet, parity: Parity) -> AlternatingColoring {
    let m = colored.universe();
    let mut red = EdgeSet::new(m);
    let mut blue = EdgeSet::new(m);
    let mut next = parity;
    for &e in sigma.perm() {
        if colored.contains(e) {
            match next {
                Parity::Red => red.insert(e),
                Parity::Blue => blue.insert(e),
            };
            next = next.flip();
        }
    }
    AlternatingColoring {
        colored: colored.clone(),
        parity,
        red,
        blue,
    }
}

/// Red and blue masks of the coloring of `colored` starting red.
pub(crate) fn split_mask(perm: &[usize], colored: u64) -> (u64, u64) {
    let (mut red, mut blue) = (0u64, 0u64);
    let mut turn_red = true;
    for &e in perm {
        let bit = 1u64 << e;
        if colored & bit != 0 {
            if turn_red {
                red |= bit;
            } else {
                blue |= bit;
            }
            turn_red = !turn_red;
        }
    }
    (red, blue)
}

impl AlternatingColoring {
    pub fn colored(&self) -> &EdgeSet {
        &self.colored
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn red(&self) -> &EdgeSet {
        &self.red
    }

    pub fn blue(&self) -> &EdgeSet {
        &self.blue
    }

    /// Number of colored edges.
    pub fn len(&self) -> usize {
        self.colored.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colored.is_empty()
    }

    pub fn neutral(&self) -> EdgeSet {
        self.colored.complement()
    }

    /// Same colored set, colors swapped.
    pub fn flipped(&self) -> Self {
        AlternatingColoring {
            colored: self.colored.clone(),
            parity: self.parity.flip(),
            red: self.blue.clone(),
            blue: self.red.clone(),
        }
    }

    /// `R`, `B` or `N` per edge, in `σ` order.
    pub fn to_letters(&self, sigma: &EdgeOrdering) -> String {
        sigma
            .perm()
            .iter()
            .map(|&e| {
                if self.red.contains(e) {
                    'R'
                } else if self.blue.contains(e) {
                    'B'
                } else {
                    'N'
                }
            })
            .collect()
    }

    /// Colors strictly alternate along `sigma` and partition the colored set.
    pub fn is_alternating(&self, sigma: &EdgeOrdering) -> bool {
        *self == realize_coloring(sigma, &self.colored, self.parity)
    }
}

/// No monochromatic `𝒢`-subgraph in `f`.
pub fn is_valid_alt(g: &Graph, d: &Decomposition, f: &FamilyDescriptor, coloring: &AlternatingColoring) -> bool {
    is_valid_alt_with(&ForbiddenOracle::direct(g, d, f), coloring)
}

pub fn is_valid_alt_with(oracle: &ForbiddenOracle<'_>, coloring: &AlternatingColoring) -> bool {
    !oracle.contains(coloring.red()) && !oracle.contains(coloring.blue())
}

/// `(σ, v)`-consecutive paths through `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConsecutivePaths {
    /// Positions `i` with edges `i` and `i + 1` both at `v`.
    pub consecutive: usize,
    /// Pairwise edge-disjoint ones, taken greedily left to right.
    pub edge_disjoint: usize,
}

pub fn count_consecutive_paths(sigma: &EdgeOrdering, g: &Graph, v: usize) -> ConsecutivePaths {
    let perm = sigma.perm();
    let mut consecutive = 0;
    let mut edge_disjoint = 0;
    let mut last_taken = None;
    for i in 1..perm.len() {
        if g.is_incident(perm[i - 1], v) && g.is_incident(perm[i], v) {
            consecutive += 1;
            if last_taken != Some(i - 1) {
                edge_disjoint += 1;
                last_taken = Some(i);
            }
        }
    }
    ConsecutivePaths {
        consecutive,
        edge_disjoint,
    }
}

/// Red and blue degrees within `g_sub` stay at most `(deg_H(v) + 2)/2`,
/// where `H` is the host of the tour certificate of the span ordering
/// exactly `g_sub`.
pub fn verify_euler_degree_bound(
    sigma: &EdgeOrdering,
    host: &Graph,
    g_sub: &EdgeSet,
    coloring: &AlternatingColoring,
) -> Result<bool, OrderingError> {
    let span = sigma
        .spans()
        .iter()
        .find(|s| {
            s.tour.is_some()
                && s.len == g_sub.len()
                && sigma.span_edges(s).iter().all(|&e| g_sub.contains(e))
        })
        .ok_or(OrderingError::MissingCertificate)?;
    let tour = span.tour.as_ref().expect("span filtered on tour");
    let deg_h = tour.host_degrees(host.vertex_count());
    let red = coloring.red().intersection(g_sub);
    let blue = coloring.blue().intersection(g_sub);
    Ok((0..host.vertex_count()).all(|v| {
        let worst = host.degree_in(v, &red).max(host.degree_in(v, &blue));
        2 * worst <= deg_h[v] + 2
    }))
}

/// Red and blue degrees within `part` stay at most `(deg_part(v) + slack)/2`.
pub fn verify_part_degree_bound(g: &Graph, part: &EdgeSet, coloring: &AlternatingColoring, slack: usize) -> bool {
    let red = coloring.red().intersection(part);
    let blue = coloring.blue().intersection(part);
    (0..g.vertex_count()).all(|v| {
        let worst = g.degree_in(v, &red).max(g.degree_in(v, &blue));
        2 * worst <= g.degree_in(v, part) + slack
    })
}

/// `count` seeded random colorings along `sigma`. Each picks a density in
/// `[0, 1]`, colors every edge with that probability and a random parity;
/// every fourth one is full length.
pub fn sample_colorings(sigma: &EdgeOrdering, count: usize, seed: u64) -> Vec<AlternatingColoring> {
    let m = sigma.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let colored = if i % 4 == 0 {
                EdgeSet::full(m)
            } else {
                let p: f64 = rng.gen();
                EdgeSet::from_indices(m, (0..m).filter(|_| rng.gen_bool(p)))
            };
            let parity = if rng.gen() { Parity::Red } else { Parity::Blue };
            realize_coloring(sigma, &colored, parity)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn realize_examples() {
        let sigma = EdgeOrdering::identity(3);
        let c = realize_coloring(&sigma, &EdgeSet::from_indices(3, [0, 2]), Parity::Red);
        assert_eq!(c.red().to_vec(), vec![0]);
        assert_eq!(c.blue().to_vec(), vec![2]);
        assert_eq!(c.to_letters(&sigma), "RNB");
        let empty = realize_coloring(&sigma, &EdgeSet::new(3), Parity::Red);
        assert_eq!(empty.len(), 0);
        let full = realize_coloring(&sigma, &EdgeSet::full(3), Parity::Red);
        assert_eq!(full.red().to_vec(), vec![0, 2]);
        assert_eq!(full.blue().to_vec(), vec![1]);
        assert!(full.flipped().is_alternating(&sigma));
    }

    #[test]
    fn triangle_validity() {
        let g = Graph::complete(3);
        let d = Decomposition::trivial(&g);
        let sigma = EdgeOrdering::identity(3);
        let t3 = FamilyDescriptor::Trees(3);
        let two = realize_coloring(&sigma, &EdgeSet::from_indices(3, [0, 1]), Parity::Red);
        assert!(is_valid_alt(&g, &d, &t3, &two));
        let full = realize_coloring(&sigma, &EdgeSet::full(3), Parity::Red);
        assert!(!is_valid_alt(&g, &d, &t3, &full));
        let one = realize_coloring(&sigma, &EdgeSet::from_indices(3, [1]), Parity::Blue);
        assert!(!is_valid_alt(&g, &d, &FamilyDescriptor::Trees(2), &one));
    }

    #[test]
    fn consecutive_examples() {
        let star = Graph::star(3);
        let c = count_consecutive_paths(&EdgeOrdering::identity(3), &star, 0);
        assert_eq!((c.consecutive, c.edge_disjoint), (2, 1));
        // triangle edges 01 < 12 < 02
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(count_consecutive_paths(&EdgeOrdering::identity(3), &tri, 0).consecutive, 0);
        assert_eq!(count_consecutive_paths(&EdgeOrdering::identity(3), &Graph::path(3), 0).consecutive, 0);
    }
}
