//! GreCon2: every concept's cells are indexed up front, then factors are
//! picked by argmax over the coverage counters.

use crate::bitmatrix::BooleanMatrix;
use crate::concepts::{ConceptStream, FormalConcept};
use crate::error::{check_epsilon, BmfError, Result};
use crate::factorization::{reached, Factorization, RunStats};

/// One growable list of concept indices per matrix cell.
///
/// A list is non-empty only for ones not yet covered by a chosen factor.
#[derive(Debug)]
pub struct DenseCellIndex {
    cols: usize,
    cells: Vec<Vec<u32>>,
}

impl DenseCellIndex {
    fn new(rows: usize, cols: usize) -> Self {
        DenseCellIndex {
            cols,
            cells: vec![Vec::new(); rows * cols],
        }
    }

    pub fn list(&self, i: usize, j: usize) -> &[u32] {
        &self.cells[i * self.cols + j]
    }
}

/// The full GreCon2 working state: concepts, coverage counters, cell lists.
#[derive(Debug)]
pub struct Grecon2State {
    concepts: Vec<FormalConcept>,
    covers: Vec<u64>,
    cells: DenseCellIndex,
    uncovered: u64,
    live_entries: u64,
    stats: RunStats,
}

impl Grecon2State {
    /// Indexes every concept in `concepts`; the position in the vector is
    /// the concept index.
    pub fn new(matrix: &BooleanMatrix, concepts: Vec<FormalConcept>) -> Self {
        let n = matrix.cols();
        let mut cells = DenseCellIndex::new(matrix.rows(), n);
        let mut covers = Vec::with_capacity(concepts.len());
        let mut appends = 0u64;
        for (l, c) in concepts.iter().enumerate() {
            covers.push(c.size());
            for i in c.extent.iter() {
                let row = &mut cells.cells[i * n..(i + 1) * n];
                for j in c.intent.iter() {
                    row[j].push(l as u32);
                }
            }
            appends += c.size();
        }
        Grecon2State {
            stats: RunStats {
                cell_appends: appends,
                peak_list_entries: appends,
                peak_slots: concepts.len() as u64,
            },
            concepts,
            covers,
            cells,
            uncovered: matrix.ones_count(),
            live_entries: appends,
        }
    }

    pub fn covers(&self) -> &[u64] {
        &self.covers
    }

    pub fn cells(&self) -> &DenseCellIndex {
        &self.cells
    }

    pub fn concepts(&self) -> &[FormalConcept] {
        &self.concepts
    }

    pub fn uncovered(&self) -> u64 {
        self.uncovered
    }

    pub fn stats(&self) -> RunStats {
        self.stats
    }

    /// Index with maximal coverage, earliest index on ties; `None` when
    /// nothing covers an uncovered one.
    pub fn argmax(&self) -> Option<usize> {
        let mut best: Option<(usize, u64)> = None;
        for (l, &c) in self.covers.iter().enumerate() {
            if c > best.map_or(0, |(_, b)| b) {
                best = Some((l, c));
            }
        }
        best.map(|(l, _)| l)
    }

    /// Marks concept `l`'s ones as covered, decrementing the counters of
    /// every concept sharing them. Returns how many ones were newly covered.
    pub fn uncover(&mut self, l: usize) -> u64 {
        let n = self.cells.cols;
        let mut newly = 0u64;
        let concept = &self.concepts[l];
        for i in concept.extent.iter() {
            for j in concept.intent.iter() {
                let list = std::mem::take(&mut self.cells.cells[i * n + j]);
                if list.is_empty() {
                    continue;
                }
                newly += 1;
                self.live_entries -= list.len() as u64;
                for k in list {
                    self.covers[k as usize] -= 1;
                }
            }
        }
        self.uncovered -= newly;
        newly
    }

    /// Recounts every concept's live ones from the cell lists.
    pub fn rescan_covers(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.concepts.len()];
        for list in &self.cells.cells {
            for &k in list {
                counts[k as usize] += 1;
            }
        }
        counts
    }
}

pub fn grecon2_factorize(
    matrix: &BooleanMatrix,
    stream: ConceptStream,
    epsilon: f64,
) -> Result<Factorization> {
    check_epsilon(epsilon)?;
    let mut state = Grecon2State::new(matrix, stream.collect());
    let total = matrix.ones_count();
    let mut result = Factorization::empty(total);
    let audit = cfg!(debug_assertions) && matrix.rows() * matrix.cols() <= 1 << 12;

    while !reached(result.covered(), total, epsilon) {
        let Some(l) = state.argmax() else {
            return Err(BmfError::Incomplete {
                uncovered: state.uncovered,
            });
        };
        let expected = state.covers[l];
        let newly = state.uncover(l);
        debug_assert_eq!(newly, expected);
        if audit {
            debug_assert_eq!(state.rescan_covers(), state.covers);
        }
        result.push(state.concepts[l].clone(), newly);
    }
    result.stats = state.stats;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concepts::canonical_stream;
    use crate::fixtures;

    const A: usize = 0;
    const C: usize = 2;
    const D: usize = 3;

    #[test]
    fn initial_state_of_small_context() {
        let m = fixtures::context_3x4();
        let state = Grecon2State::new(&m, fixtures::context_3x4_concepts());
        assert_eq!(state.covers(), &[3, 3, 0, 2, 4]);
        assert_eq!(state.cells().list(0, C), &[0, 1, 4]);
        assert_eq!(state.cells().list(0, A), &[1]);
        assert_eq!(state.cells().list(0, D), &[1, 4]);
        // (2, d) is covered only by <{0,2},{c,d}>
        assert_eq!(state.cells().list(2, D), &[4]);
        assert!(state.cells().list(0, 1).is_empty());
        assert_eq!(state.rescan_covers(), state.covers());
    }

    #[test]
    fn uncover_decrements_sharing_concepts() {
        let m = fixtures::context_3x4();
        let mut state = Grecon2State::new(&m, fixtures::context_3x4_concepts());
        assert_eq!(state.argmax(), Some(4));
        assert_eq!(state.uncover(4), 4);
        assert_eq!(state.covers(), &[1, 1, 0, 2, 0]);
        assert_eq!(state.uncovered(), 3);
        assert_eq!(state.rescan_covers(), state.covers());
    }

    #[test]
    fn factorizes_small_context() {
        let m = fixtures::context_3x4();
        let f =
            grecon2_factorize(&m, canonical_stream(fixtures::context_3x4_concepts()), 1.0).unwrap();
        let c = fixtures::context_3x4_concepts();
        assert_eq!(f.factors, vec![c[4].clone(), c[3].clone(), c[1].clone()]);
        assert_eq!(f.new_coverage, vec![4, 2, 1]);
        assert_eq!(f.error, 0);
        assert_eq!(f.stats.cell_appends, 12);
    }

    #[test]
    fn incomplete_supply_is_an_error() {
        let m = fixtures::context_3x4();
        let partial = vec![fixtures::context_3x4_concepts()[4].clone()];
        assert!(matches!(
            grecon2_factorize(&m, canonical_stream(partial), 1.0),
            Err(BmfError::Incomplete { uncovered: 3 })
        ));
    }
}
