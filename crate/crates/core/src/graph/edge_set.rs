use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};
use smallvec::SmallVec;

/// A subset of the edge indices `0..universe` of some host graph.
///
/// Inline storage covers hosts with up to 128 edges.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    universe: usize,
    words: SmallVec<[u64; 2]>,
}

impl EdgeSet {
    pub fn new(universe: usize) -> Self {
        EdgeSet {
            universe,
            words: SmallVec::from_elem(0, universe.div_ceil(64)),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = EdgeSet::new(universe);
        for (i, w) in set.words.iter_mut().enumerate() {
            let lo = i * 64;
            let hi = (lo + 64).min(universe);
            *w = if hi - lo == 64 {
                u64::MAX
            } else {
                (1u64 << (hi - lo)) - 1
            };
        }
        set
    }

    /// Panics if an index is outside the universe.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut set = EdgeSet::new(universe);
        for e in indices {
            set.insert(e);
        }
        set
    }

    /// Bit `i` of `mask` is edge `i`. Requires `universe <= 64`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64, "mask form needs at most 64 edges");
        let mut set = EdgeSet::new(universe);
        if universe > 0 {
            set.words[0] = mask & low_bits(universe);
        }
        set
    }

    /// Low 64 bits as a mask; meaningful when `universe <= 64`.
    pub fn to_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        e < self.universe && self.words[e >> 6] & (1u64 << (e & 63)) != 0
    }

    #[inline]
    pub fn insert(&mut self, e: usize) -> bool {
        assert!(e < self.universe, "edge {e} outside universe {}", self.universe);
        let word = &mut self.words[e >> 6];
        let bit = 1u64 << (e & 63);
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, e: usize) -> bool {
        if e >= self.universe {
            return false;
        }
        let word = &mut self.words[e >> 6];
        let bit = 1u64 << (e & 63);
        let present = *word & bit != 0;
        *word &= !bit;
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> EdgeIter<'_> {
        EdgeIter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> EdgeSet {
        EdgeSet::full(self.universe).difference(self)
    }

    pub fn union_with(&mut self, other: &EdgeSet) {
        self.check(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &EdgeSet) {
        self.check(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    #[inline]
    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &EdgeSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection_len(&self, other: &EdgeSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Compare by sorted member lists.
    pub fn lex_cmp(&self, other: &EdgeSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }

    fn zip_with(&self, other: &EdgeSet, op: impl Fn(u64, u64) -> u64) -> EdgeSet {
        self.check(other);
        EdgeSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    fn check(&self, other: &EdgeSet) {
        debug_assert_eq!(
            self.universe, other.universe,
            "edge sets from different hosts"
        );
    }
}

#[inline]
fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for EdgeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for e in self.iter() {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

pub struct EdgeIter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for EdgeIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_respects_universe() {
        assert_eq!(EdgeSet::full(0).len(), 0);
        assert_eq!(EdgeSet::full(5).to_vec(), vec![0, 1, 2, 3, 4]);
        assert_eq!(EdgeSet::full(64).len(), 64);
        assert_eq!(EdgeSet::full(130).len(), 130);
    }

    #[test]
    fn mask_round_trip() {
        let s = EdgeSet::from_indices(10, [1, 3, 9]);
        assert_eq!(s.to_mask(), 0b10_0000_1010);
        assert_eq!(EdgeSet::from_mask(10, s.to_mask()), s);
    }

    proptest! {
        #[test]
        fn set_algebra_matches_vectors(
            a in proptest::collection::btree_set(0usize..150, 0..40),
            b in proptest::collection::btree_set(0usize..150, 0..40),
        ) {
            let sa = EdgeSet::from_indices(150, a.iter().copied());
            let sb = EdgeSet::from_indices(150, b.iter().copied());
            let union: Vec<_> = a.union(&b).copied().collect();
            let inter: Vec<_> = a.intersection(&b).copied().collect();
            let diff: Vec<_> = a.difference(&b).copied().collect();
            prop_assert_eq!(sa.union(&sb).to_vec(), union);
            prop_assert_eq!(sa.intersection(&sb).to_vec(), inter.clone());
            prop_assert_eq!(sa.difference(&sb).to_vec(), diff);
            prop_assert_eq!(sa.is_disjoint(&sb), inter.is_empty());
            prop_assert_eq!(sa.len(), a.len());
        }
    }
}
