use std::cmp::Ordering;
use std::fmt;

/// Fixed-domain set of element indices backed by 64-bit words.
///
/// Ordering compares sets as binary numbers with element `i` worth `2^i`,
/// which is the order used for every enumeration in the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = BitSet { len, words: vec![!0; len.div_ceil(64)] };
        s.trim();
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, items: I) -> Self {
        let mut s = BitSet::new(len);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Builds a set over a domain of at most 64 elements from a mask.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64);
        let mut s = BitSet::new(len);
        if len > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    /// The first word; the whole set when the domain has at most 64 elements.
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    /// Size of the domain, not the number of members.
    pub fn domain(&self) -> usize {
        self.len
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.len, "index {i} outside domain {}", self.len);
        let had = self.contains(i);
        self.words[i / 64] |= 1 << (i % 64);
        !had
    }

    #[inline]
    pub fn remove(&mut self, i: usize) -> bool {
        let had = self.contains(i);
        if had {
            self.words[i / 64] &= !(1 << (i % 64));
        }
        had
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> BitSet {
        let mut s = BitSet { len: self.len, words: self.words.iter().map(|w| !w).collect() };
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { set: self, word: 0, bits: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    set: &'a BitSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let t = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * 64 + t);
            }
            self.word += 1;
            if self.word >= self.set.words.len() {
                return None;
            }
            self.bits = self.set.words[self.word];
        }
    }
}

impl<'a> IntoIterator for &'a BitSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut a = BitSet::new(70);
        a.insert(3);
        a.insert(65);
        assert!(a.contains(65));
        assert_eq!(a.to_vec(), vec![3, 65]);
        assert_eq!(a.complement().count(), 68);
        assert!(BitSet::full(70).is_full());
        let b = BitSet::from_indices(70, [3, 4]);
        assert_eq!(a.intersection(&b).to_vec(), vec![3]);
        assert!(!a.is_subset(&b));
        assert!(a.intersection(&b).is_subset(&b));
    }

    #[test]
    fn numeric_order() {
        let small = BitSet::from_indices(70, [0, 1, 2]);
        let big = BitSet::from_indices(70, [64]);
        assert!(small < big);
        assert!(BitSet::from_indices(3, [1]) > BitSet::from_indices(3, [0]));
    }
}
