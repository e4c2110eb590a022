//! Fixed-width vertex sets backed by 64-bit words.

use std::fmt;

const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A set of vertex indices in `0..capacity`, stored as packed bits.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: Vec<u64>,
    capacity: usize,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        Self {
            words: vec![0; words_for(capacity)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        for v in 0..capacity {
            s.insert(v);
        }
        s
    }

    pub fn from_iter_with_capacity<I: IntoIterator<Item = usize>>(capacity: usize, it: I) -> Self {
        let mut s = Self::new(capacity);
        for v in it {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        debug_assert!(v < self.capacity);
        let (w, b) = (v / WORD, v % WORD);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        debug_assert!(v < self.capacity);
        let (w, b) = (v / WORD, v % WORD);
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        present
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity && self.words[v / WORD] & (1 << (v % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn intersect_with(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a &= *b;
        }
    }

    pub fn union_with(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a |= *b;
        }
    }

    pub fn difference_with(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a &= !*b;
        }
    }

    /// Size of `self ∩ other` without materialising it.
    pub fn intersection_len(&self, other: &[u64]) -> usize {
        self.words
            .iter()
            .zip(other)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter<'_> {
        iter_words(&self.words)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterates the set bits of a word slice in ascending order.
pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

pub(crate) fn iter_words(words: &[u64]) -> Iter<'_> {
    Iter {
        words,
        idx: 0,
        cur: words.first().copied().unwrap_or(0),
    }
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}
