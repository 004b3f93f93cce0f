//! Fixed-universe vertex bit sets.
//!
//! Every set carries the word count of its universe, so sets drawn from the
//! same host graph (or any induced subgraph of it) combine directly. Up to
//! 128 vertices the words live inline; larger universes spill to the heap.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::{smallvec, SmallVec};

type Words = SmallVec<[u64; 2]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Words,
}

#[inline]
fn word_count(universe: usize) -> usize {
    universe.div_ceil(64)
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet { universe, words: smallvec![0; word_count(universe)] }
    }

    /// The set `{0, .., universe-1}`.
    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            let hi = (lo + 64).min(universe);
            *w = if hi - lo == 64 { u64::MAX } else { (1u64 << (hi - lo)) - 1 };
        }
        s
    }

    pub fn singleton(universe: usize, v: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(v);
        s
    }

    /// Builds a set from members. Panics if a member is outside the universe.
    pub fn from_iter_in<I: IntoIterator<Item = usize>>(universe: usize, it: I) -> Self {
        let mut s = Self::empty(universe);
        for v in it {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && (self.words[v >> 6] >> (v & 63)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let w = &mut self.words[v >> 6];
        let bit = 1u64 << (v & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let w = &mut self.words[v >> 6];
        let bit = 1u64 << (v & 63);
        let had = *w & bit != 0;
        *w &= !bit;
        had
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn min(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn max(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & b == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &VertexSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
    }

    /// Size of the intersection without materializing it.
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, idx: 0, cur: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the ascending member sequences.
    pub fn lex_cmp(&self, other: &VertexSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&VertexSet> for &VertexSet {
            type Output = VertexSet;
            fn $method(self, rhs: &VertexSet) -> VertexSet {
                debug_assert_eq!(self.universe, rhs.universe);
                let words = self.words.iter().zip(rhs.words.iter()).map(|(a, b)| a $op b).collect();
                VertexSet { universe: self.universe, words }
            }
        }

        impl $trait<&VertexSet> for VertexSet {
            type Output = VertexSet;
            fn $method(self, rhs: &VertexSet) -> VertexSet {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(BitOr, bitor, |);
binop!(BitAnd, bitand, &);
binop!(BitXor, bitxor, ^);

impl Sub<&VertexSet> for &VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.universe, rhs.universe);
        let words = self.words.iter().zip(rhs.words.iter()).map(|(a, b)| a & !b).collect();
        VertexSet { universe: self.universe, words }
    }
}

impl Sub<&VertexSet> for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: &VertexSet) -> VertexSet {
        &self - rhs
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = std::vec::IntoIter<usize>;
    fn into_iter(self) -> Self::IntoIter {
        self.to_vec().into_iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Deserializes a bare member list; the universe becomes `max + 1`. Callers
/// that need a specific universe should go through [`VertexSet::from_iter_in`].
impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(d)?;
        let universe = members.iter().max().map_or(0, |m| m + 1);
        Ok(VertexSet::from_iter_in(universe, members))
    }
}
