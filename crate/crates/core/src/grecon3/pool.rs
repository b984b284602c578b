//! Slot storage for candidate concepts with recycled indices.

use crate::concepts::FormalConcept;

/// Parallel per-slot arrays: the concept, its confirmed live coverage, its
/// unconfirmed remainder, and how far its rows have been indexed.
///
/// `covers[l] + potential[l]` bounds the live ones slot `l` can cover;
/// once `potential[l] == 0`, `covers[l]` is exact.
#[derive(Debug, Default)]
pub struct CandidatePool {
    concepts: Vec<Option<FormalConcept>>,
    covers: Vec<u64>,
    potential: Vec<u64>,
    progress: Vec<Option<u32>>,
    stream_pos: Vec<usize>,
    free: Vec<u32>,
    occupied: usize,
    peak: usize,
}

impl CandidatePool {
    pub fn new() -> Self {
        Self::default()
    }

    /// Stores `concept` in a free slot (recycling freed ones first) with
    /// `covers = 0`, `potential = size` and no rows processed.
    pub fn allocate(&mut self, concept: FormalConcept, stream_pos: usize) -> u32 {
        let potential = concept.size();
        let slot = match self.free.pop() {
            Some(s) => {
                let l = s as usize;
                debug_assert!(self.concepts[l].is_none());
                self.concepts[l] = Some(concept);
                self.covers[l] = 0;
                self.potential[l] = potential;
                self.progress[l] = None;
                self.stream_pos[l] = stream_pos;
                s
            }
            None => {
                self.concepts.push(Some(concept));
                self.covers.push(0);
                self.potential.push(potential);
                self.progress.push(None);
                self.stream_pos.push(stream_pos);
                (self.concepts.len() - 1) as u32
            }
        };
        self.occupied += 1;
        self.peak = self.peak.max(self.occupied);
        slot
    }

    /// Releases `slot` for reuse. Freeing an already free slot is a no-op.
    pub fn free(&mut self, slot: u32) {
        let l = slot as usize;
        if self.concepts[l].take().is_some() {
            self.covers[l] = 0;
            self.potential[l] = 0;
            self.free.push(slot);
            self.occupied -= 1;
        }
    }

    pub fn is_occupied(&self, slot: u32) -> bool {
        self.concepts[slot as usize].is_some()
    }

    /// # Panics
    ///
    /// If the slot is free.
    pub fn concept(&self, slot: u32) -> &FormalConcept {
        self.concepts[slot as usize]
            .as_ref()
            .expect("access to a free slot")
    }

    #[inline]
    pub fn covers(&self, slot: u32) -> u64 {
        self.covers[slot as usize]
    }

    #[inline]
    pub fn potential(&self, slot: u32) -> u64 {
        self.potential[slot as usize]
    }

    #[inline]
    pub fn bound(&self, slot: u32) -> u64 {
        self.covers[slot as usize] + self.potential[slot as usize]
    }

    #[inline]
    pub fn progress(&self, slot: u32) -> Option<u32> {
        self.progress[slot as usize]
    }

    #[inline]
    pub fn stream_pos(&self, slot: u32) -> usize {
        self.stream_pos[slot as usize]
    }

    pub fn occupied(&self) -> usize {
        self.occupied
    }

    pub fn peak(&self) -> usize {
        self.peak
    }

    /// Number of slots ever created (occupied or free).
    pub fn capacity(&self) -> usize {
        self.concepts.len()
    }

    pub(crate) fn set_covers(&mut self, slot: u32, covers: u64) {
        self.covers[slot as usize] = covers;
    }

    pub(crate) fn set_potential(&mut self, slot: u32, potential: u64) {
        self.potential[slot as usize] = potential;
    }

    pub(crate) fn set_progress(&mut self, slot: u32, row: Option<u32>) {
        self.progress[slot as usize] = row;
    }

    /// Decrements the confirmed coverage of `slot`, freeing it once
    /// nothing remains.
    pub(crate) fn decrement(&mut self, slot: u32) {
        let l = slot as usize;
        self.covers[l] -= 1;
        if self.covers[l] + self.potential[l] == 0 {
            self.free(slot);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn concept(e: usize, i: usize) -> FormalConcept {
        FormalConcept::new((0..e).collect(), (0..i).collect())
    }

    #[test]
    fn fresh_slot_state() {
        let mut pool = CandidatePool::new();
        let l = pool.allocate(concept(3, 2), 0);
        assert_eq!(pool.covers(l), 0);
        assert_eq!(pool.potential(l), 6);
        assert_eq!(pool.progress(l), None);
        assert_eq!(pool.bound(l), 6);
    }

    #[test]
    fn freed_slot_is_reused() {
        let mut pool = CandidatePool::new();
        let a = pool.allocate(concept(1, 1), 0);
        let b = pool.allocate(concept(2, 1), 1);
        pool.set_potential(a, 0);
        pool.set_covers(a, 1);
        pool.decrement(a);
        assert!(!pool.is_occupied(a));
        assert_eq!(pool.occupied(), 1);
        let c = pool.allocate(concept(2, 2), 2);
        assert_eq!(c, a);
        assert_eq!(pool.potential(c), 4);
        assert_eq!(pool.stream_pos(c), 2);
        assert!(pool.is_occupied(b));
        assert_eq!(pool.capacity(), 2);
        assert_eq!(pool.peak(), 2);
    }

    #[test]
    fn double_free_is_harmless() {
        let mut pool = CandidatePool::new();
        let a = pool.allocate(concept(1, 1), 0);
        pool.free(a);
        pool.free(a);
        assert_eq!(pool.occupied(), 0);
        let b = pool.allocate(concept(1, 1), 1);
        let c = pool.allocate(concept(1, 1), 2);
        assert_ne!(b, c);
    }
}
