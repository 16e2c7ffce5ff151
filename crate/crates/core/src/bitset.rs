//! Subsets of a small ground set packed into a machine word.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

/// Hard cap on ground-set size. Matroids are stored as full rank tables, so
/// anything bigger than this is out of reach anyway.
pub const MAX_ELEMENTS: usize = 24;

/// A subset of `{0, .., n-1}` where bit `i` stands for the element at
/// position `i` of the owning structure's (sorted) element list.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElementSet(pub u32);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    /// The whole ground set `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n == 32 {
            ElementSet(u32::MAX)
        } else {
            ElementSet((1u32 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(i: usize) -> Self {
        ElementSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(Self::EMPTY, |s, i| s.with(i))
    }

    #[inline]
    pub fn from_bits(bits: u32) -> Self {
        ElementSet(bits)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        ElementSet(self.0 | 1 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        ElementSet(self.0 & !(1 << i))
    }

    #[inline]
    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: ElementSet) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn meets(self, other: ElementSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement relative to `{0, .., n-1}`.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        ElementSet(!self.0) & Self::full(n)
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest member, if any.
    #[inline]
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Order used for tie-breaking: smaller sets first, then lexicographic on
    /// the sorted member positions.
    pub fn lex_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.iter().collect())
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    #[inline]
    fn bitor(self, rhs: Self) -> Self {
        ElementSet(self.0 | rhs.0)
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    #[inline]
    fn bitand(self, rhs: Self) -> Self {
        ElementSet(self.0 & rhs.0)
    }
}

impl BitXor for ElementSet {
    type Output = ElementSet;
    #[inline]
    fn bitxor(self, rhs: Self) -> Self {
        ElementSet(self.0 ^ rhs.0)
    }
}

impl Sub for ElementSet {
    type Output = ElementSet;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        ElementSet(self.0 & !rhs.0)
    }
}

impl Not for ElementSet {
    type Output = ElementSet;
    #[inline]
    fn not(self) -> Self {
        ElementSet(!self.0)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::from_indices(iter)
    }
}

/// Iterator over member positions, ascending.
pub struct Members(u32);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(i as usize)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Iterator over all subsets of a mask in increasing numeric order.
pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = ElementSet;

    #[inline]
    fn next(&mut self) -> Option<ElementSet> {
        let cur = self.next?;
        // Standard "increment within mask" trick.
        let nxt = (cur | !self.mask).wrapping_add(1) & self.mask;
        self.next = (nxt != 0).then_some(nxt);
        Some(ElementSet(cur))
    }
}

/// Every subset of an `n`-element ground set, in numeric order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = ElementSet> {
    (0..1u32 << n).map(ElementSet)
}

/// A family of subsets of an `n`-element ground set, stored as a bitmap over
/// all `2^n` masks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    n: usize,
    words: Vec<u64>,
}

impl Family {
    pub fn empty(n: usize) -> Self {
        let len = ((1usize << n) + 63) / 64;
        Family {
            n,
            words: vec![0; len],
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, s: ElementSet) -> bool {
        let i = s.index();
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, s: ElementSet) {
        let i = s.index();
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, s: ElementSet) {
        let i = s.index();
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in numeric mask order.
    pub fn iter(&self) -> impl Iterator<Item = ElementSet> + '_ {
        all_subsets(self.n).filter(move |&s| self.contains(s))
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_power_set() {
        let m = ElementSet(0b1011);
        let subs: Vec<u32> = m.subsets().map(|s| s.0).collect();
        assert_eq!(subs, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(ElementSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn members_ascending() {
        let s = ElementSet::from_indices([5, 0, 3]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 5]);
        assert_eq!(s.first(), Some(0));
        assert_eq!(s.last(), Some(5));
        assert_eq!(s.complement(6), ElementSet::from_indices([1, 2, 4]));
    }

    #[test]
    fn family_round_trip() {
        let mut f = Family::empty(3);
        f.insert(ElementSet(0));
        f.insert(ElementSet(5));
        assert!(f.contains(ElementSet(5)));
        assert!(!f.contains(ElementSet(4)));
        assert_eq!(f.len(), 2);
        f.remove(ElementSet(5));
        assert_eq!(f.iter().collect::<Vec<_>>(), vec![ElementSet(0)]);
    }
}
