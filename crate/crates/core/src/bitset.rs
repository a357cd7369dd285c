//! Fixed-universe vertex sets stored as 64-bit words.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{input, Result};

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// `|a ∩ b|` over raw word slices of equal length.
#[inline]
pub(crate) fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// A subset of `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> VertexSet {
        VertexSet {
            n,
            bits: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> VertexSet {
        let mut s = VertexSet::empty(n);
        for (i, w) in s.bits.iter_mut().enumerate() {
            let lo = i * 64;
            let hi = (lo + 64).min(n);
            *w = if hi - lo == 64 {
                u64::MAX
            } else {
                (1u64 << (hi - lo)) - 1
            };
        }
        s
    }

    /// Builds a set, rejecting out-of-range or repeated members.
    pub fn from_members(n: usize, members: &[usize]) -> Result<VertexSet> {
        let mut s = VertexSet::empty(n);
        for &v in members {
            if v >= n {
                return input(format!("vertex {v} out of range for n = {n}"));
            }
            if !s.insert(v) {
                return input(format!("vertex {v} listed twice"));
            }
        }
        Ok(s)
    }

    /// Like [`VertexSet::from_members`] but ignores duplicates.
    pub(crate) fn collect(n: usize, members: impl IntoIterator<Item = usize>) -> VertexSet {
        let mut s = VertexSet::empty(n);
        for v in members {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.bits
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && (self.bits[v >> 6] >> (v & 63)) & 1 == 1
    }

    /// Returns `true` if `v` was not already present.
    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        debug_assert!(v < self.n);
        let w = &mut self.bits[v >> 6];
        let mask = 1u64 << (v & 63);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        debug_assert!(v < self.n);
        let w = &mut self.bits[v >> 6];
        let mask = 1u64 << (v & 63);
        let had = *w & mask != 0;
        *w &= !mask;
        had
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Members<'_> {
        Members {
            bits: &self.bits,
            word: 0,
            current: self.bits.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.subtract(other);
        s
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet::full(self.n).difference(self)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        and_count(&self.bits, &other.bits)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }
}

pub struct Members<'a> {
    bits: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Members<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let t = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * 64 + t);
            }
            self.word += 1;
            if self.word >= self.bits.len() {
                return None;
            }
            self.current = self.bits[self.word];
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_set_masks_tail_bits() {
        for n in [0, 1, 63, 64, 65, 130] {
            let s = VertexSet::full(n);
            assert_eq!(s.len(), n);
            assert_eq!(s.to_vec(), (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn from_members_rejects_bad_input() {
        assert!(VertexSet::from_members(4, &[0, 4]).is_err());
        assert!(VertexSet::from_members(4, &[1, 1]).is_err());
        let s = VertexSet::from_members(70, &[69, 3, 64]).unwrap();
        assert_eq!(s.to_vec(), vec![3, 64, 69]);
    }

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_members(10, &[1, 2, 3]).unwrap();
        let b = VertexSet::from_members(10, &[3, 4]).unwrap();
        assert_eq!(a.intersection(&b).to_vec(), vec![3]);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 2]);
        assert_eq!(a.intersection_len(&b), 1);
        assert!(!a.is_disjoint(&b));
        assert_eq!(a.complement().len(), 7);
    }
}
