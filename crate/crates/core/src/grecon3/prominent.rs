//! Closed-form coverage while fewer than three factors are chosen.
//!
//! With factors `<A,B>` (and `<C,D>`) already chosen, the live ones under
//! a concept `<E,F>` are its rectangle minus the parts overlapping the
//! factor rectangles, by inclusion-exclusion.

use crate::bitmatrix::{BitSet, IndexSet};
use crate::concepts::FormalConcept;

/// Live coverage of `c` once only `f1` is chosen:
/// `|E||F| - |A∩E||B∩F|`.
pub fn second_factor_coverage(c: &FormalConcept, f1: &FormalConcept) -> u64 {
    c.size() - overlap(c, &f1.extent, &f1.intent)
}

/// Live coverage of `c` once `f1` and `f2` are chosen:
/// `|E||F| - |A∩E||B∩F| - |C∩E||D∩F| + |A∩C∩E||B∩D∩F|`.
pub fn third_factor_coverage(c: &FormalConcept, f1: &FormalConcept, f2: &FormalConcept) -> u64 {
    let both_extent = f1.extent.intersection(&f2.extent);
    let both_intent = f1.intent.intersection(&f2.intent);
    c.size() + overlap(c, &both_extent, &both_intent)
        - overlap(c, &f1.extent, &f1.intent)
        - overlap(c, &f2.extent, &f2.intent)
}

fn overlap(c: &FormalConcept, extent: &IndexSet, intent: &IndexSet) -> u64 {
    c.extent.intersection_len(extent) as u64 * c.intent.intersection_len(intent) as u64
}

/// Rectangle as bit masks, so overlaps cost one probe per member of the
/// candidate rather than a merge over both sets.
#[derive(Clone, Debug)]
pub(crate) struct RectMask {
    rows: BitSet,
    cols: BitSet,
}

impl RectMask {
    pub(crate) fn new(extent: &IndexSet, intent: &IndexSet, m: usize, n: usize) -> Self {
        RectMask {
            rows: extent.to_bitset(m),
            cols: intent.to_bitset(n),
        }
    }

    pub(crate) fn intersect(&self, other: &RectMask) -> RectMask {
        let mut rows = self.rows.clone();
        rows.intersect_with(other.rows.words());
        let mut cols = self.cols.clone();
        cols.intersect_with(other.cols.words());
        RectMask { rows, cols }
    }

    #[inline]
    pub(crate) fn overlap(&self, c: &FormalConcept) -> u64 {
        let r = c.extent.iter().filter(|&i| self.rows.contains(i)).count() as u64;
        if r == 0 {
            return 0;
        }
        let s = c.intent.iter().filter(|&j| self.cols.contains(j)).count() as u64;
        r * s
    }
}

/// Masks of the first (and second) factor plus their intersection.
#[derive(Clone, Debug)]
pub(crate) enum Prominent {
    One(RectMask),
    Two(RectMask, RectMask, RectMask),
}

impl Prominent {
    pub(crate) fn coverage(&self, c: &FormalConcept) -> u64 {
        match self {
            Prominent::One(a) => c.size() - a.overlap(c),
            Prominent::Two(a, b, ab) => c.size() + ab.overlap(c) - a.overlap(c) - b.overlap(c),
        }
    }
}
