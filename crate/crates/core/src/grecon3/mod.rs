//! GreCon3: GreCon2's greedy factor selection with lazily loaded
//! candidates, incremental coverage computation, a sparse cell store and
//! closed-form coverage for the second and third factor.
//!
//! Concepts are read from a size-ordered [`ConceptStream`] only while they
//! could still beat the best candidate found so far. Loaded candidates live
//! in a [`CandidatePool`] and are kept in a queue ordered by their coverage
//! upper bound `covers + potential`. Cell lists are not materialized until
//! three factors are known; before that the coverage of a candidate follows
//! from set intersections with the chosen factors.
//!
//! The factor sequence equals GreCon2's under the same concept order: ties
//! on coverage go to the candidate that appears first in the stream.

mod cells;
mod pool;
mod prominent;

pub use cells::CellStore;
pub use pool::CandidatePool;
pub use prominent::{second_factor_coverage, third_factor_coverage};

use std::collections::HashSet;

use crate::bitmatrix::{BitSet, BooleanMatrix};
use crate::concepts::{ConceptStream, FormalConcept};
use crate::error::{check_epsilon, BmfError, Result};
use crate::factorization::{reached, Factorization, RunStats};
use prominent::{Prominent, RectMask};

/// Extent size from which a candidate is indexed row by row with
/// suspension rather than all at once.
pub const DEFAULT_SMALL_THRESHOLD: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grecon3Options {
    /// Candidates with fewer objects than this are indexed en bloc.
    pub small_threshold: usize,
}

impl Default for Grecon3Options {
    fn default() -> Self {
        Grecon3Options {
            small_threshold: DEFAULT_SMALL_THRESHOLD,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Best {
    slot: u32,
    coverage: u64,
    stream_pos: usize,
}

/// State of one GreCon3 run.
#[derive(Debug)]
pub struct Grecon3<'a> {
    matrix: &'a BooleanMatrix,
    stream: ConceptStream,
    pool: CandidatePool,
    cells: CellStore,
    queue: Vec<u32>,
    prominent: Option<Prominent>,
    result: Factorization,
    options: Grecon3Options,
    /// Bounds of `queue[..keys.len()]` as of the last reordering.
    keys: Vec<u64>,
    /// Scratch bit mask of the intent being indexed.
    mask: BitSet,
}

impl<'a> Grecon3<'a> {
    pub fn new(matrix: &'a BooleanMatrix, stream: ConceptStream, options: Grecon3Options) -> Self {
        Grecon3 {
            matrix,
            stream,
            pool: CandidatePool::new(),
            cells: CellStore::new(matrix.rows()),
            queue: Vec::new(),
            prominent: None,
            result: Factorization::empty(matrix.ones_count()),
            options,
            keys: Vec::new(),
            mask: BitSet::new(matrix.cols()),
        }
    }

    pub fn factorization(&self) -> &Factorization {
        &self.result
    }

    pub fn pool(&self) -> &CandidatePool {
        &self.pool
    }

    pub fn cells(&self) -> &CellStore {
        &self.cells
    }

    pub fn queue(&self) -> &[u32] {
        &self.queue
    }

    pub fn stream(&self) -> &ConceptStream {
        &self.stream
    }

    pub fn stats(&self) -> RunStats {
        RunStats {
            cell_appends: self.cells.appends(),
            peak_list_entries: self.cells.peak_list_entries(),
            peak_slots: self.pool.peak() as u64,
        }
    }

    pub fn into_factorization(mut self) -> Factorization {
        self.result.stats = self.stats();
        self.result
    }

    /// Selects the next factor and returns it with the number of ones it
    /// newly covers, or `None` once every one is covered.
    pub fn step(&mut self) -> Result<Option<(FormalConcept, u64)>> {
        if self.result.error == 0 {
            return Ok(None);
        }
        if self.result.k() == 0 {
            // the largest concept covers only fresh ones
            let Some(first) = self.stream.next() else {
                return Err(BmfError::Incomplete {
                    uncovered: self.result.error,
                });
            };
            let covered = first.size();
            self.choose(first.clone(), covered);
            return Ok(Some((first, covered)));
        }
        if self.result.k() == 3 && !self.cells.is_initialized() {
            self.initialize_cells();
        }
        let (slot, coverage) = self.load_concepts()?;
        let winner = self.pool.concept(slot).clone();
        let covered = if self.cells.is_initialized() {
            self.uncover(&winner)
        } else {
            coverage
        };
        debug_assert_eq!(covered, coverage);
        // a factor covers nothing afterwards
        self.pool.set_covers(slot, 0);
        self.pool.set_potential(slot, 0);
        self.choose(winner.clone(), covered);
        self.reorder_queue();
        Ok(Some((winner, covered)))
    }

    fn choose(&mut self, factor: FormalConcept, covered: u64) {
        let (m, n) = (self.matrix.rows(), self.matrix.cols());
        let mask = RectMask::new(&factor.extent, &factor.intent, m, n);
        self.prominent = match self.prominent.take() {
            None if self.result.k() == 0 => Some(Prominent::One(mask)),
            Some(Prominent::One(a)) => {
                let both = a.intersect(&mask);
                Some(Prominent::Two(a, mask, both))
            }
            _ => None,
        };
        self.result.push(factor, covered);
    }

    /// Gives every still uncovered one an empty slot list.
    fn initialize_cells(&mut self) {
        let mut residual = self.matrix.clone();
        for f in &self.result.factors {
            residual.clear_rectangle(&f.extent, &f.intent);
        }
        self.cells.initialize(&residual);
    }

    /// Finds the candidate with the highest live coverage, loading new
    /// concepts from the stream as long as they might win.
    pub fn load_concepts(&mut self) -> Result<(u32, u64)> {
        let mut best: Option<Best> = None;

        // The queue is ordered by bound, so once a bound falls below the
        // best coverage nothing later in the queue can win.
        for qi in 0..self.queue.len() {
            let slot = self.queue[qi];
            if best.is_some_and(|b| self.pool.bound(slot) < b.coverage) {
                break;
            }
            let coverage = self.cover(slot, best.map_or(0, |b| b.coverage));
            let stream_pos = self.pool.stream_pos(slot);
            let better = best.is_none_or(|b| {
                coverage > b.coverage || (coverage == b.coverage && stream_pos < b.stream_pos)
            });
            if better {
                best = Some(Best {
                    slot,
                    coverage,
                    stream_pos,
                });
            }
        }

        while let Some(concept) = self.stream.next() {
            let stream_pos = self.stream.position() - 1;
            let size = concept.size();
            let slot = self.pool.allocate(concept, stream_pos);
            self.queue.push(slot);
            // the stream is size-ordered: nothing further can win
            if best.is_some_and(|b| size < b.coverage) {
                break;
            }
            let coverage = self.cover(slot, best.map_or(0, |b| b.coverage));
            if best.is_none_or(|b| coverage > b.coverage) {
                best = Some(Best {
                    slot,
                    coverage,
                    stream_pos,
                });
            }
        }

        match best {
            Some(b) if b.coverage > 0 => Ok((b.slot, b.coverage)),
            _ => Err(BmfError::Incomplete {
                uncovered: self.result.error,
            }),
        }
    }

    /// Live coverage of `slot`, possibly partial (below `best_coverage`)
    /// when computed incrementally.
    pub fn cover(&mut self, slot: u32, best_coverage: u64) -> u64 {
        if let Some(p) = &self.prominent {
            if self.result.k() < 3 {
                return p.coverage(self.pool.concept(slot));
            }
        }
        if self.pool.potential(slot) == 0 {
            return self.pool.covers(slot);
        }
        if self.pool.concept(slot).extent.len() < self.options.small_threshold {
            let c = self.cover_concept(slot);
            self.pool.set_potential(slot, 0);
            c
        } else {
            self.cover_incremental(slot, best_coverage)
        }
    }

    /// Indexes the whole rectangle of `slot` at once; sets `covers`.
    /// The caller is responsible for clearing `potential`.
    pub fn cover_concept(&mut self, slot: u32) -> u64 {
        let concept = self.pool.concept(slot);
        self.mask.assign(&concept.intent);
        let mut count = 0;
        for i in concept.extent.iter() {
            count += self.cells.append_row(i, &self.mask, slot);
        }
        self.pool.set_covers(slot, count);
        count
    }

    /// Indexes the rows of `slot` not yet processed, one row at a time,
    /// suspending as soon as its bound drops below `best_coverage`.
    pub fn cover_incremental(&mut self, slot: u32, best_coverage: u64) -> u64 {
        let concept = self.pool.concept(slot);
        let extent = concept.extent.as_slice();
        let width = concept.intent.len() as u64;
        self.mask.assign(&concept.intent);
        let start = match self.pool.progress(slot) {
            None => 0,
            Some(p) => extent.partition_point(|&i| i <= p),
        };
        let mut cover = self.pool.covers(slot);
        let mut potential = self.pool.potential(slot);
        let mut last = self.pool.progress(slot);
        for &i in &extent[start..] {
            cover += self.cells.append_row(i as usize, &self.mask, slot);
            potential -= width;
            last = Some(i);
            if cover + potential < best_coverage {
                break;
            }
        }
        self.pool.set_covers(slot, cover);
        self.pool.set_potential(slot, potential);
        self.pool.set_progress(slot, last);
        cover
    }

    /// Deletes the live cells under `factor`, decrementing the coverage of
    /// every slot indexed there. Returns the number of cells deleted.
    pub fn uncover(&mut self, factor: &FormalConcept) -> u64 {
        self.mask.assign(&factor.intent);
        let pool = &mut self.pool;
        let mut removed = 0;
        for i in factor.extent.iter() {
            removed += self.cells.remove_row(i, &self.mask, |k| pool.decrement(k));
        }
        removed
    }

    /// Stable sort by bound, descending; exhausted slots leave the queue
    /// and are freed.
    ///
    /// Bounds never grow, so the entries whose bound is unchanged since the
    /// last reordering are still in order. Only the others are sorted, then
    /// both runs are merged, ties going to the earlier queue position.
    fn reorder_queue(&mut self) {
        let pool = &self.pool;
        let mut kept = Vec::with_capacity(self.queue.len());
        let mut moved = Vec::new();
        for (pos, &slot) in self.queue.iter().enumerate() {
            let bound = pool.bound(slot);
            if self.keys.get(pos) == Some(&bound) {
                kept.push((bound, pos, slot));
            } else {
                moved.push((bound, pos, slot));
            }
        }
        moved.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        self.queue.clear();
        self.keys.clear();
        let (mut a, mut b) = (kept.into_iter().peekable(), moved.into_iter().peekable());
        loop {
            let next = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => {
                    if (y.0, std::cmp::Reverse(y.1)) > (x.0, std::cmp::Reverse(x.1)) {
                        b.next()
                    } else {
                        a.next()
                    }
                }
                (Some(_), None) => a.next(),
                (None, Some(_)) => b.next(),
                (None, None) => break,
            };
            let (bound, _, slot) = next.expect("peeked");
            if bound == 0 {
                self.pool.free(slot);
            } else {
                self.queue.push(slot);
                self.keys.push(bound);
            }
        }
    }

    /// Checks every structural invariant against a from-scratch residual.
    /// Meant for tests; cost is proportional to the matrix times the pool.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let mut residual = self.matrix.clone();
        for f in &self.result.factors {
            residual.clear_rectangle(&f.extent, &f.intent);
        }
        if residual.ones_count() != self.result.error {
            return Err("uncovered counter disagrees with residual".into());
        }

        let mut occurrences = vec![0u64; self.pool.capacity()];
        if self.cells.is_initialized() {
            for i in 0..residual.rows() {
                let cols: Vec<usize> = self.cells.row_cols(i).iter().map(|&c| c as usize).collect();
                let live: Vec<usize> = residual.row_ones(i).collect();
                if cols != live {
                    return Err(format!(
                        "row {i}: cell entries {cols:?} vs live ones {live:?}"
                    ));
                }
                for list in self.cells.row_lists(i) {
                    for &s in list {
                        occurrences[s as usize] += 1;
                    }
                }
            }
        }

        for slot in 0..self.pool.capacity() as u32 {
            let seen = occurrences[slot as usize];
            if !self.pool.is_occupied(slot) {
                if seen != 0 {
                    return Err(format!("free slot {slot} still listed {seen} times"));
                }
                continue;
            }
            let c = self.pool.concept(slot);
            let truth = residual.count_in_rectangle(&c.extent, &c.intent);
            let (covers, potential) = (self.pool.covers(slot), self.pool.potential(slot));
            if covers != seen {
                return Err(format!(
                    "slot {slot}: covers {covers} but listed {seen} times"
                ));
            }
            if covers > truth || covers + potential < truth {
                return Err(format!(
                    "slot {slot}: covers {covers} + potential {potential} does not bound {truth}"
                ));
            }
            if potential == 0 && covers != truth {
                return Err(format!(
                    "slot {slot}: complete but covers {covers} != {truth}"
                ));
            }
        }

        let queued: HashSet<u32> = self.queue.iter().copied().collect();
        if queued.len() != self.queue.len() {
            return Err("duplicate slot in queue".into());
        }
        let occupied: HashSet<u32> = (0..self.pool.capacity() as u32)
            .filter(|&s| self.pool.is_occupied(s))
            .collect();
        if queued != occupied {
            return Err("queue and occupied slots differ".into());
        }
        if self
            .queue
            .windows(2)
            .any(|w| self.pool.bound(w[0]) < self.pool.bound(w[1]))
        {
            return Err("queue not ordered by bound".into());
        }
        Ok(())
    }
}

pub fn grecon3_factorize(
    matrix: &BooleanMatrix,
    stream: ConceptStream,
    epsilon: f64,
) -> Result<Factorization> {
    grecon3_factorize_with(matrix, stream, epsilon, Grecon3Options::default())
}

pub fn grecon3_factorize_with(
    matrix: &BooleanMatrix,
    stream: ConceptStream,
    epsilon: f64,
    options: Grecon3Options,
) -> Result<Factorization> {
    check_epsilon(epsilon)?;
    let audit = cfg!(debug_assertions) && matrix.rows() * matrix.cols() <= 1 << 12;
    let mut run = Grecon3::new(matrix, stream, options);
    let total = matrix.ones_count();
    while !reached(run.result.covered(), total, epsilon) {
        if run.step()?.is_none() {
            break;
        }
        if audit {
            if let Err(e) = run.audit() {
                panic!("grecon3 invariant violated: {e}");
            }
        }
    }
    Ok(run.into_factorization())
}
