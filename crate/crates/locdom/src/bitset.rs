//! Fixed-universe bitsets used for vertex sets, edge direction vectors and
//! code masks. The universe size is fixed at construction; sets over the
//! same universe can be combined without reallocation. Up to 128 bits are
//! stored inline.

use smallvec::SmallVec;
use std::fmt;

const WORD_BITS: usize = 64;

#[inline]
fn word_count(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A set of indices drawn from a fixed universe `0..len`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitSet {
    words: SmallVec<[u64; 2]>,
    len: usize,
}

impl BitSet {
    /// Empty set over the universe `0..len`.
    pub fn new(len: usize) -> Self {
        BitSet {
            words: smallvec::smallvec![0; word_count(len)],
            len,
        }
    }

    /// Full set over the universe `0..len`.
    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for i in 0..word_count(len) {
            s.words[i] = !0u64;
        }
        s.trim();
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, iter: I) -> Self {
        let mut s = Self::new(len);
        for i in iter {
            s.insert(i);
        }
        s
    }

    /// Universe size (not the number of elements).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 != 0
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] &= !(1u64 << (i % WORD_BITS));
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn clear(&mut self) {
        for w in self.words.iter_mut() {
            *w = 0;
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Clears any bits at positions `>= len` (invariant after whole-word ops).
    fn trim(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn invert(&mut self) {
        for w in self.words.iter_mut() {
            *w = !*w;
        }
        self.trim();
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            set: self,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Compares as 0/1 strings indexed by position: the first position where
    /// the sets differ decides, absent-before-present.
    pub fn lex_cmp(&self, other: &BitSet) -> std::cmp::Ordering {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().zip(&other.words) {
            if a != b {
                let diff = a ^ b;
                let pos = diff.trailing_zeros();
                let a_bit = a >> pos & 1;
                return a_bit.cmp(&(1 - a_bit));
            }
        }
        std::cmp::Ordering::Equal
    }

    /// Hex encoding, lowest positions in the least-significant digits.
    pub fn to_hex(&self) -> String {
        let mut s = String::new();
        for &w in self.words.iter().rev() {
            if s.is_empty() {
                if w != 0 {
                    s = format!("{w:x}");
                }
            } else {
                s.push_str(&format!("{w:016x}"));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// Parses the `to_hex` encoding into a set over `0..len`.
    pub fn from_hex(hex: &str, len: usize) -> Option<Self> {
        let hex = hex.trim().trim_start_matches("0x");
        if hex.is_empty() || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return None;
        }
        let mut s = Self::new(len);
        for (pos, b) in hex.bytes().rev().enumerate() {
            let digit = (b as char).to_digit(16).unwrap() as u64;
            if digit == 0 {
                continue;
            }
            let bit = pos * 4;
            let wi = bit / WORD_BITS;
            if wi >= s.words.len() {
                return None;
            }
            s.words[wi] |= digit << (bit % WORD_BITS);
        }
        // reject encodings that set bits beyond the universe
        let mut check = s.clone();
        check.trim();
        if check != s {
            return None;
        }
        Some(s)
    }
}

pub struct Ones<'a> {
    set: &'a BitSet,
    word_idx: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.set.words.len() {
                return None;
            }
            self.current = self.set.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * WORD_BITS + bit)
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let mut s = BitSet::new(130);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.count(), 3);
        assert!(s.contains(64));
        assert!(!s.contains(63));
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
        s.remove(64);
        assert_eq!(s.to_vec(), vec![0, 129]);
        assert_eq!(s.first(), Some(0));
    }

    #[test]
    fn full_and_invert() {
        let full = BitSet::full(67);
        assert_eq!(full.count(), 67);
        let mut s = BitSet::from_indices(67, [0, 5, 66]);
        s.invert();
        assert_eq!(s.count(), 64);
        assert!(!s.contains(66));
        assert!(s.contains(1));
    }

    #[test]
    fn hex_roundtrip_known() {
        let s = BitSet::from_indices(8, [0, 2, 7]);
        assert_eq!(s.to_hex(), "85");
        assert_eq!(BitSet::from_hex("85", 8).unwrap(), s);
        assert_eq!(BitSet::new(5).to_hex(), "0");
        assert!(BitSet::from_hex("zz", 8).is_none());
        assert!(BitSet::from_hex("100", 8).is_none()); // bit 8 outside 0..8
    }

    #[test]
    fn lex_cmp_by_position() {
        let a = BitSet::from_indices(6, [1]);
        let b = BitSet::from_indices(6, [0, 1]);
        // position 0: a absent, b present -> a < b
        assert_eq!(a.lex_cmp(&b), std::cmp::Ordering::Less);
        let c = BitSet::from_indices(6, [1, 5]);
        assert_eq!(a.lex_cmp(&c), std::cmp::Ordering::Less);
        assert_eq!(c.lex_cmp(&c), std::cmp::Ordering::Equal);
    }

    proptest! {
        #[test]
        fn prop_hex_roundtrip(bits in proptest::collection::btree_set(0usize..200, 0..40), len in 200usize..260) {
            let s = BitSet::from_indices(len, bits.iter().copied());
            let hex = s.to_hex();
            let back = BitSet::from_hex(&hex, len).unwrap();
            prop_assert_eq!(back, s);
        }

        #[test]
        fn prop_set_algebra(xs in proptest::collection::btree_set(0usize..90, 0..30),
                            ys in proptest::collection::btree_set(0usize..90, 0..30)) {
            let a = BitSet::from_indices(90, xs.iter().copied());
            let b = BitSet::from_indices(90, ys.iter().copied());
            let inter: std::collections::BTreeSet<_> = xs.intersection(&ys).copied().collect();
            prop_assert_eq!(a.intersection(&b).to_vec(), inter.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(a.intersection_count(&b), inter.len());
            prop_assert_eq!(a.is_disjoint(&b), inter.is_empty());
            prop_assert_eq!(a.is_subset(&b), xs.is_subset(&ys));
        }
    }
}
