//! Index sets used for extents and intents.

use std::fmt;

use serde::{Deserialize, Serialize};

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Fixed-capacity bit set over `0..capacity`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    capacity: usize,
}

impl BitSet {
    pub fn new(capacity: usize) -> Self {
        BitSet {
            words: vec![0; words_for(capacity)],
            capacity,
        }
    }

    /// The set `{0, .., capacity - 1}`.
    pub fn full(capacity: usize) -> Self {
        let mut set = BitSet {
            words: vec![!0; words_for(capacity)],
            capacity,
        };
        set.trim();
        set
    }

    pub fn from_indices(capacity: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = BitSet::new(capacity);
        for i in indices {
            set.insert(i);
        }
        set
    }

    fn trim(&mut self) {
        let tail = self.capacity % WORD_BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
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
    pub fn insert(&mut self, i: usize) {
        assert!(
            i < self.capacity,
            "bit {i} outside capacity {}",
            self.capacity
        );
        self.words[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        assert!(
            i < self.capacity,
            "bit {i} outside capacity {}",
            self.capacity
        );
        self.words[i / WORD_BITS] &= !(1u64 << (i % WORD_BITS));
    }

    #[inline]
    /// Removes every element, keeping the capacity.
    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    /// Replaces the contents with `items`.
    pub fn assign(&mut self, items: &IndexSet) {
        self.clear();
        for i in items.iter() {
            self.insert(i);
        }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.capacity && self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersect_with(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a &= b;
        }
    }

    pub fn is_subset_of(&self, other: &[u64]) -> bool {
        self.words.iter().zip(other).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> BitIter<'_> {
        BitIter::new(&self.words)
    }

    pub fn to_index_set(&self) -> IndexSet {
        IndexSet {
            items: self.iter().map(|i| i as u32).collect(),
        }
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the set bits of a word slice.
pub struct BitIter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

/// Sorted, duplicate-free set of indices.
///
/// Extents and intents are stored this way: iteration is ascending and the
/// memory footprint is proportional to the cardinality, which matters when
/// hundreds of thousands of concepts are held at once.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet {
    items: Vec<u32>,
}

/// Set of object (row) indices.
pub type ObjectSet = IndexSet;
/// Set of attribute (column) indices.
pub type AttributeSet = IndexSet;

impl IndexSet {
    pub fn new() -> Self {
        IndexSet { items: Vec::new() }
    }

    /// `{0, .., n - 1}`.
    pub fn full(n: usize) -> Self {
        IndexSet {
            items: (0..n as u32).collect(),
        }
    }

    /// Wraps a vector that is already strictly ascending.
    pub fn from_sorted(items: Vec<u32>) -> Self {
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        IndexSet { items }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.items.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.items
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.items.iter().map(|&i| i as usize)
    }

    pub fn contains(&self, i: usize) -> bool {
        u32::try_from(i).is_ok_and(|i| self.items.binary_search(&i).is_ok())
    }

    pub fn max(&self) -> Option<usize> {
        self.items.last().map(|&i| i as usize)
    }

    /// Cardinality of the intersection, by merge.
    pub fn intersection_len(&self, other: &IndexSet) -> usize {
        let (a, b) = (&self.items, &other.items);
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        let mut out = Vec::new();
        let (a, b) = (&self.items, &other.items);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        IndexSet { items: out }
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.intersection_len(other) == self.len()
    }

    pub fn to_bitset(&self, capacity: usize) -> BitSet {
        BitSet::from_indices(capacity, self.iter())
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut items: Vec<u32> = iter
            .into_iter()
            .map(|i| u32::try_from(i).expect("index exceeds u32"))
            .collect();
        items.sort_unstable();
        items.dedup();
        IndexSet { items }
    }
}

impl<const N: usize> From<[usize; N]> for IndexSet {
    fn from(items: [usize; N]) -> Self {
        items.into_iter().collect()
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.items.iter()).finish()
    }
}
