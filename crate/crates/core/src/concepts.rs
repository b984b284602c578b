//! Formal concepts: closure, Close-by-One enumeration and the size-ordered
//! concept stream consumed by the factorization algorithms.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::bitmatrix::{words_for, AttributeSet, BitSet, BooleanMatrix, IndexSet, ObjectSet};
use crate::error::Result;

/// A pair `<extent, intent>` with `extent↑ = intent` and `intent↓ = extent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormalConcept {
    pub extent: ObjectSet,
    pub intent: AttributeSet,
}

impl FormalConcept {
    pub fn new(extent: ObjectSet, intent: AttributeSet) -> Self {
        FormalConcept { extent, intent }
    }

    /// Area of the rectangle, `|extent| * |intent|`.
    #[inline]
    pub fn size(&self) -> u64 {
        self.extent.len() as u64 * self.intent.len() as u64
    }

    pub fn is_closed_in(&self, matrix: &BooleanMatrix) -> bool {
        matrix.up(&self.extent).is_ok_and(|i| i == self.intent)
            && matrix.down(&self.intent).is_ok_and(|e| e == self.extent)
    }
}

/// `<D↓, D↓↑>`, the concept generated by an attribute set.
pub fn closure(matrix: &BooleanMatrix, attributes: &AttributeSet) -> Result<FormalConcept> {
    let extent = matrix.down(attributes)?;
    let intent = matrix.up(&extent)?;
    Ok(FormalConcept { extent, intent })
}

/// Enumerates every formal concept of `matrix` with Close-by-One.
///
/// Failed canonicity tests are inherited by the subtree below the concept
/// where they failed: an attribute whose closure was already found
/// non-canonical with a smaller intent is skipped without recomputing it.
///
/// The top concept `<X, X↑>` comes first; the rest follow in a
/// deterministic order that carries no size information. Use
/// [`ConceptStream::canonical`] before factorizing.
pub fn enumerate_concepts(matrix: &BooleanMatrix) -> Vec<FormalConcept> {
    let mut out = Vec::new();
    let extent: Vec<u32> = (0..matrix.rows() as u32).collect();
    let intent = matrix.common_attributes(0..matrix.rows());
    let stride = words_for(matrix.cols());
    let failed = vec![0u64; stride * matrix.cols()];
    let mut cbo = CloseByOne {
        matrix,
        stride,
        out: &mut out,
    };
    cbo.generate(extent, intent, 0, &failed);
    out
}

struct CloseByOne<'a> {
    matrix: &'a BooleanMatrix,
    /// Words per attribute set in the flattened `failed` tables.
    stride: usize,
    out: &'a mut Vec<FormalConcept>,
}

impl CloseByOne<'_> {
    /// Row `j` of `failed` holds an intent that failed the canonicity test
    /// for attribute `j` at an ancestor; it is a subset of every closure of
    /// `j` below that ancestor.
    fn generate(&mut self, extent: Vec<u32>, intent: BitSet, start: usize, failed: &[u64]) {
        let n = self.matrix.cols();
        let done = start >= n || intent.count() == n;
        self.out.push(FormalConcept {
            extent: IndexSet::from_sorted(extent.clone()),
            intent: intent.to_index_set(),
        });
        if done {
            return;
        }
        let mut inherited = failed.to_vec();
        let mut children = Vec::new();
        for j in start..n {
            let w = self.stride;
            if intent.contains(j) || !adds_nothing_below(&failed[j * w..(j + 1) * w], &intent, j) {
                continue;
            }
            let child_extent: Vec<u32> = extent
                .iter()
                .copied()
                .filter(|&i| self.matrix.get(i as usize, j))
                .collect();
            let child_intent = self
                .matrix
                .common_attributes(child_extent.iter().map(|&i| i as usize));
            if adds_nothing_below(child_intent.words(), &intent, j) {
                children.push((child_extent, child_intent, j));
            } else {
                inherited[j * w..(j + 1) * w].copy_from_slice(child_intent.words());
            }
        }
        for (child_extent, child_intent, j) in children {
            self.generate(child_extent, child_intent, j + 1, &inherited);
        }
    }
}

/// Canonicity test: every attribute of `candidate` below `j` is already in
/// `intent`.
fn adds_nothing_below(candidate: &[u64], intent: &BitSet, j: usize) -> bool {
    let full = j / 64;
    let (c, b) = (candidate, intent.words());
    if c[..full].iter().zip(&b[..full]).any(|(c, b)| c & !b != 0) {
        return false;
    }
    let rem = j % 64;
    rem == 0 || (c[full] & !b[full]) & ((1u64 << rem) - 1) == 0
}

/// The total order used to feed the greedy algorithms: size descending,
/// then extent cardinality descending, then intent ascending as a
/// lexicographic sequence of attribute indices.
pub fn canonical_cmp(a: &FormalConcept, b: &FormalConcept) -> Ordering {
    b.size()
        .cmp(&a.size())
        .then_with(|| b.extent.len().cmp(&a.extent.len()))
        .then_with(|| a.intent.as_slice().cmp(b.intent.as_slice()))
}

/// Concepts in canonical order, read one at a time.
///
/// Zero-size concepts are dropped on construction: they cover nothing.
#[derive(Debug)]
pub struct ConceptStream {
    inner: std::vec::IntoIter<FormalConcept>,
    emitted: usize,
}

impl ConceptStream {
    pub fn canonical(mut concepts: Vec<FormalConcept>) -> Self {
        concepts.retain(|c| c.size() > 0);
        concepts.sort_by(canonical_cmp);
        ConceptStream {
            inner: concepts.into_iter(),
            emitted: 0,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.inner.len() == 0
    }

    /// Number of concepts read so far; also the stream position of the
    /// next concept.
    pub fn position(&self) -> usize {
        self.emitted
    }

    pub fn remaining(&self) -> usize {
        self.inner.len()
    }
}

impl Iterator for ConceptStream {
    type Item = FormalConcept;

    fn next(&mut self) -> Option<FormalConcept> {
        let c = self.inner.next()?;
        self.emitted += 1;
        Some(c)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

impl ExactSizeIterator for ConceptStream {}

/// Orders a concept set for consumption by the factorization algorithms.
pub fn canonical_stream(concepts: Vec<FormalConcept>) -> ConceptStream {
    ConceptStream::canonical(concepts)
}
