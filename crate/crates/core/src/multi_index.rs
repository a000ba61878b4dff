//! Index sets for exterior and symmetric powers.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Strictly increasing tuple `i_1 < ... < i_k` of basis indices below 32,
/// stored as a bit set. Ordering is lexicographic on the tuples.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u32);

pub const MAX_DIM: usize = 32;

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    pub fn from_mask(mask: u32) -> Self {
        Self(mask)
    }

    /// Builds the index from a strictly increasing slice; `None` otherwise.
    pub fn from_sorted(indices: &[usize]) -> Option<Self> {
        let mut mask = 0u32;
        let mut last = None;
        for &i in indices {
            if i >= MAX_DIM || last.is_some_and(|l| l >= i) {
                return None;
            }
            mask |= 1 << i;
            last = Some(i);
        }
        Some(Self(mask))
    }

    /// Sorts an arbitrary tuple of indices, returning the sign of the sorting
    /// permutation, or `None` when an index repeats.
    pub fn sort_signed(indices: &[usize]) -> Option<(Self, i32)> {
        let mut mask = 0u32;
        let mut sign = 1;
        for &i in indices {
            if i >= MAX_DIM || mask & (1 << i) != 0 {
                return None;
            }
            if (mask >> i).count_ones() % 2 == 1 {
                sign = -sign;
            }
            mask |= 1 << i;
        }
        Some((Self(mask), sign))
    }

    pub fn single(i: usize) -> Self {
        Self(1 << i)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_DIM && self.0 & (1 << i) != 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        core::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn with(self, i: usize) -> Self {
        Self(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        Self(self.0 & !(1 << i))
    }

    /// Sign of the shuffle that sorts the concatenation `self ++ other`;
    /// `None` when they overlap.
    pub fn merge_sign(self, other: Self) -> Option<i32> {
        if !self.is_disjoint(other) {
            return None;
        }
        let inversions: u32 = other.iter().map(|j| (self.0 >> j).count_ones()).sum();
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }

    /// Number of elements of `self` strictly between `a` and `b`.
    pub fn count_between(self, a: usize, b: usize) -> u32 {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if hi <= lo + 1 {
            return 0;
        }
        let window = ((1u64 << hi) - (1u64 << (lo + 1))) as u32;
        (self.0 & window).count_ones()
    }

    /// All `k`-subsets of `0..n` in lexicographic order.
    pub fn all(n: usize, k: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(MultiIndex::from_sorted(&idx).expect("increasing"));
            let Some(p) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
                break;
            };
            idx[p] += 1;
            for q in p + 1..k {
                idx[q] = idx[q - 1] + 1;
            }
        }
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let d = diff.trailing_zeros();
        // The side holding `d` has it as its next element; the other side
        // either ends (and is a prefix) or continues with something larger.
        let (holder, rest) = if self.0 & (1 << d) != 0 {
            (Ordering::Less, other.0)
        } else {
            (Ordering::Greater, self.0)
        };
        if (rest as u64) >> d == 0 {
            holder.reverse()
        } else {
            holder
        }
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

/// Non-strictly increasing tuple `i_1 <= ... <= i_k` (a monomial).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SortedIndex(Vec<u8>);

impl core::borrow::Borrow<[u8]> for SortedIndex {
    fn borrow(&self) -> &[u8] {
        &self.0
    }
}

impl SortedIndex {
    pub fn from_unsorted(indices: &[usize]) -> Self {
        let mut v: Vec<u8> = indices.iter().map(|&i| i as u8).collect();
        v.sort_unstable();
        Self(v)
    }

    pub fn from_sorted(indices: &[usize]) -> Option<Self> {
        if indices.windows(2).any(|w| w[0] > w[1]) || indices.iter().any(|&i| i > u8::MAX as usize) {
            return None;
        }
        Some(Self(indices.iter().map(|&i| i as u8).collect()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn get(&self, p: usize) -> usize {
        self.0[p] as usize
    }

    pub fn multiplicity(&self, i: usize) -> usize {
        self.0.iter().filter(|&&x| x as usize == i).count()
    }

    /// Distinct entries, increasing.
    pub fn distinct(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.iter().collect();
        v.dedup();
        v
    }

    /// Replaces one occurrence of `from` by `to` and re-sorts.
    pub fn replace(&self, from: usize, to: usize) -> Self {
        let mut v = self.0.clone();
        let p = v.iter().position(|&x| x as usize == from).expect("present");
        v[p] = to as u8;
        v.sort_unstable();
        Self(v)
    }

    pub fn merge(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        Self(v)
    }

    /// All monomials of degree `k` in `n` variables, lexicographic.
    pub fn all(n: usize, k: usize) -> Vec<SortedIndex> {
        let mut out = Vec::new();
        if n == 0 {
            if k == 0 {
                out.push(SortedIndex::default());
            }
            return out;
        }
        let mut idx = alloc::vec![0usize; k];
        loop {
            out.push(SortedIndex::from_sorted(&idx).expect("sorted"));
            let Some(p) = (0..k).rev().find(|&p| idx[p] < n - 1) else {
                break;
            };
            idx[p] += 1;
            for q in p + 1..k {
                idx[q] = idx[p];
            }
        }
        out
    }
}

impl fmt::Debug for SortedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order_matches_tuples() {
        let all: Vec<MultiIndex> = (0u32..64).map(MultiIndex::from_mask).collect();
        for a in &all {
            for b in &all {
                assert_eq!(a.cmp(b), a.to_vec().cmp(&b.to_vec()), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn enumerations_are_sorted_and_complete() {
        let subsets = MultiIndex::all(5, 3);
        assert_eq!(subsets.len(), 10);
        assert!(subsets.windows(2).all(|w| w[0] < w[1]));
        let monomials = SortedIndex::all(3, 3);
        assert_eq!(monomials.len(), 10);
        assert!(monomials.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(MultiIndex::all(3, 0), alloc::vec![MultiIndex::EMPTY]);
        assert_eq!(SortedIndex::all(4, 0).len(), 1);
    }

    #[test]
    fn signs() {
        assert_eq!(MultiIndex::sort_signed(&[2, 0, 1]).unwrap().1, 1);
        assert_eq!(MultiIndex::sort_signed(&[1, 0]).unwrap().1, -1);
        assert!(MultiIndex::sort_signed(&[1, 1]).is_none());
        let a = MultiIndex::from_sorted(&[1, 3]).unwrap();
        let b = MultiIndex::from_sorted(&[0, 2]).unwrap();
        // (1,3,0,2) -> 3 inversions
        assert_eq!(a.merge_sign(b), Some(-1));
        assert_eq!(a.count_between(0, 4), 2);
        assert_eq!(a.count_between(3, 1), 0);
    }
}
