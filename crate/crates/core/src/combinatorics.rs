//! Lexicographic subset and permutation walks shared by the exact searches.

use crate::budget::Meter;
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Search<R> {
    Found(R),
    /// The whole space was searched without success.
    Empty,
    OutOfBudget,
}

impl<R> Search<R> {
    pub(crate) fn map<S>(self, f: impl FnOnce(R) -> S) -> Search<S> {
        match self {
            Search::Found(r) => Search::Found(f(r)),
            Search::Empty => Search::Empty,
            Search::OutOfBudget => Search::OutOfBudget,
        }
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).try_fold(1u128, |a, x| a.checked_mul(x)).unwrap_or(u128::MAX)
}

/// Visit the `s`-subsets of `pool` in lexicographic order of positions.
/// Stops early when `visit` returns `Some` or the meter runs out.
pub(crate) fn walk_subsets<R>(
    pool: &[usize],
    s: usize,
    meter: &Meter,
    mut visit: impl FnMut(&[usize]) -> Option<R>,
) -> Search<R> {
    let n = pool.len();
    if s > n {
        return Search::Empty;
    }
    let mut idx: Vec<usize> = (0..s).collect();
    let mut items: Vec<usize> = idx.iter().map(|&i| pool[i]).collect();
    loop {
        if !meter.tick() {
            return Search::OutOfBudget;
        }
        if let Some(r) = visit(&items) {
            return Search::Found(r);
        }
        // advance to the next combination
        let mut i = s;
        loop {
            if i == 0 {
                return Search::Empty;
            }
            i -= 1;
            if idx[i] != i + n - s {
                break;
            }
        }
        idx[i] += 1;
        items[i] = pool[idx[i]];
        for j in i + 1..s {
            idx[j] = idx[j - 1] + 1;
            items[j] = pool[idx[j]];
        }
    }
}

/// The lexicographically first `s`-subset of `pool` accepted by `test`.
/// Branches on the first element run in parallel; the result is the same
/// as a sequential walk whenever the budget suffices.
pub(crate) fn first_subset<R, F>(pool: &[usize], s: usize, meter: &Meter, test: F) -> Search<R>
where
    R: Send,
    F: Fn(&[usize]) -> Option<R> + Sync + Send,
{
    if s == 0 {
        return match test(&[]) {
            Some(r) => Search::Found(r),
            None => Search::Empty,
        };
    }
    if s > pool.len() {
        return Search::Empty;
    }
    let branches = pool.len() - s + 1;
    let hit = par::find_map_first_range(branches, |i| {
        let head = pool[i];
        let mut buf = Vec::with_capacity(s);
        match walk_subsets(&pool[i + 1..], s - 1, meter, |rest| {
            buf.clear();
            buf.push(head);
            buf.extend_from_slice(rest);
            test(&buf)
        }) {
            Search::Found(r) => Some(Search::Found(r)),
            Search::OutOfBudget => Some(Search::OutOfBudget),
            Search::Empty => None,
        }
    });
    hit.unwrap_or(Search::Empty)
}

/// Rearrange `perm` into the next permutation in lexicographic order.
/// Returns `false` (leaving `perm` sorted) after the last one.
pub(crate) fn next_permutation<T: Ord>(perm: &mut [T]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        perm.reverse();
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}
