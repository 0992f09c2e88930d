//! Global minimum cut and minimum r-cuts.

use serde::Serialize;

use super::CutError;
use crate::graph::Graph;
use crate::par;

/// A vertex bipartition and its crossing-edge count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutResult {
    pub value: usize,
    /// One side of the bipartition, sorted.
    pub side: Vec<usize>,
    pub other: Vec<usize>,
}

impl CutResult {
    fn from_mask(g: &Graph, in_side: &[bool]) -> Self {
        let side: Vec<usize> = (0..g.vertex_count()).filter(|&v| in_side[v]).collect();
        let other: Vec<usize> = (0..g.vertex_count()).filter(|&v| !in_side[v]).collect();
        CutResult {
            value: crossing(g, in_side),
            side,
            other,
        }
    }

    /// Both sides have at least `r` vertices, partition `V(g)`, and `value`
    /// matches the recount.
    pub fn is_valid(&self, g: &Graph, r: usize) -> bool {
        let n = g.vertex_count();
        let mut flag = vec![None; n];
        for (&v, s) in self.side.iter().map(|v| (v, true)).chain(self.other.iter().map(|v| (v, false))) {
            if v >= n || flag[v].is_some() {
                return false;
            }
            flag[v] = Some(s);
        }
        if flag.iter().any(Option::is_none) || self.side.len() < r || self.other.len() < r {
            return false;
        }
        let in_side: Vec<bool> = flag.into_iter().map(|f| f == Some(true)).collect();
        crossing(g, &in_side) == self.value
    }
}

fn crossing(g: &Graph, in_side: &[bool]) -> usize {
    g.edges().iter().filter(|&&(a, b)| in_side[a] != in_side[b]).count()
}

/// Exact global minimum cut by Stoer–Wagner maximum-adjacency phases.
pub fn min_cut_global(g: &Graph) -> Result<CutResult, CutError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(CutError::TooFewVertices(n));
    }
    let mut w = vec![vec![0u64; n]; n];
    for &(a, b) in g.edges() {
        w[a][b] += 1;
        w[b][a] += 1;
    }
    // groups[v]: original vertices merged into v
    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    let mut best_group: Vec<usize> = Vec::new();
    while alive.len() > 1 {
        let mut key = vec![0u64; n];
        let mut added = vec![false; n];
        let mut prev = alive[0];
        let mut last = alive[0];
        added[last] = true;
        for &v in &alive {
            key[v] = w[last][v];
        }
        for _ in 1..alive.len() {
            let next = alive
                .iter()
                .copied()
                .filter(|&v| !added[v])
                .fold(None, |acc: Option<usize>, v| match acc {
                    Some(b) if key[b] >= key[v] => Some(b),
                    _ => Some(v),
                })
                .expect("an unadded vertex remains");
            added[next] = true;
            prev = last;
            last = next;
            for &v in &alive {
                if !added[v] {
                    key[v] += w[next][v];
                }
            }
        }
        let phase = key[last];
        if phase < best {
            best = phase;
            best_group = groups[last].clone();
        }
        // merge last into prev
        let moved = std::mem::take(&mut groups[last]);
        groups[prev].extend(moved);
        for &v in &alive {
            w[prev][v] += w[last][v];
            w[v][prev] = w[prev][v];
        }
        w[prev][prev] = 0;
        alive.retain(|&v| v != last);
    }
    let mut in_side = vec![false; n];
    for &v in &best_group {
        in_side[v] = true;
    }
    let cut = CutResult::from_mask(g, &in_side);
    debug_assert_eq!(cut.value as u64, best);
    Ok(cut)
}

/// Minimum crossing count over bipartitions with both sides of size at
/// least `r`, by enumerating sides of size `r..=⌊n/2⌋`.
pub fn cut_r_brute(g: &Graph, r: usize) -> Result<CutResult, CutError> {
    let n = g.vertex_count();
    if r == 0 || r > n / 2 {
        return Err(CutError::InfeasibleSides { r, n });
    }
    if n > 64 {
        return Err(CutError::TooLarge(n));
    }
    let nbr: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &(x, _)| m | 1 << x))
        .collect();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let sizes: Vec<usize> = (r..=n / 2).collect();
    let per_size = par::map(&sizes, |&s| {
        let mut best: Option<(usize, u64)> = None;
        let mut mask: u64 = (1u64 << s) - 1;
        loop {
            // With equal halves, S and its complement are the same cut.
            if !(2 * s == n && mask & 1 == 0) {
                let value: usize = bits(mask)
                    .map(|v| (nbr[v] & !mask & full).count_ones() as usize)
                    .sum();
                if best.is_none_or(|(b, _)| value < b) {
                    best = Some((value, mask));
                }
            }
            // Gosper's hack: next mask with the same popcount
            let c = mask & mask.wrapping_neg();
            let rr = mask.wrapping_add(c);
            if rr == 0 || rr & !full != 0 {
                break;
            }
            mask = (((rr ^ mask) >> 2) / c) | rr;
            if mask & !full != 0 {
                break;
            }
        }
        best
    });
    let (_, mask) = per_size
        .into_iter()
        .flatten()
        .min_by_key(|&(v, _)| v)
        .expect("at least one feasible side size");
    let in_side: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
    Ok(CutResult::from_mask(g, &in_side))
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(b)
    })
}

/// `cut_r(g)`: `r = 1` runs Stoer–Wagner (cross-checked by brute force for
/// `n <= 12`), larger `r` enumerates sides.
pub fn cut_r(g: &Graph, r: usize) -> Result<CutResult, CutError> {
    let n = g.vertex_count();
    if r == 0 || r > n / 2 {
        return Err(CutError::InfeasibleSides { r, n });
    }
    if r > 1 {
        return cut_r_brute(g, r);
    }
    let cut = min_cut_global(g)?;
    if n <= 12 {
        let brute = cut_r_brute(g, 1)?;
        if brute.value != cut.value {
            return Err(CutError::CrossCheck {
                fast: cut.value,
                brute: brute.value,
            });
        }
    }
    Ok(cut)
}
