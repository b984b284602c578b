//! Sparse per-row index of uncovered ones.

use crate::bitmatrix::{BitSet, BooleanMatrix};

/// The live ones of one row: their columns in ascending order and, at the
/// same positions, the slots whose coverage counts them.
///
/// Columns are kept apart from the lists so that scanning a row for the
/// columns of an intent touches one compact array.
#[derive(Clone, Debug, Default)]
struct Row {
    cols: Vec<u32>,
    lists: Vec<Vec<u32>>,
}

/// Jagged array: for each row, the live ones ordered by column, each with
/// the list of slots whose coverage counts it.
///
/// Rows are empty until [`CellStore::initialize`] is called; afterwards a
/// cell exists exactly for every one not yet covered by a factor.
#[derive(Debug, Default)]
pub struct CellStore {
    rows: Vec<Row>,
    initialized: bool,
    appends: u64,
    list_entries: u64,
    peak_list_entries: u64,
}

impl CellStore {
    pub fn new(rows: usize) -> Self {
        CellStore {
            rows: vec![Row::default(); rows],
            ..CellStore::default()
        }
    }

    /// Creates an empty list for every one of `residual`.
    pub fn initialize(&mut self, residual: &BooleanMatrix) {
        debug_assert_eq!(residual.rows(), self.rows.len());
        for (i, row) in self.rows.iter_mut().enumerate() {
            row.cols = residual.row_ones(i).map(|j| j as u32).collect();
            row.lists = vec![Vec::new(); row.cols.len()];
        }
        self.initialized = true;
    }

    pub fn is_initialized(&self) -> bool {
        self.initialized
    }

    /// Columns of the live ones of row `i`, ascending.
    pub fn row_cols(&self, i: usize) -> &[u32] {
        &self.rows[i].cols
    }

    /// Slot lists of row `i`, aligned with [`CellStore::row_cols`].
    pub fn row_lists(&self, i: usize) -> &[Vec<u32>] {
        &self.rows[i].lists
    }

    /// Slot list of the live one at `(i, j)`, if it is live.
    pub fn entry(&self, i: usize, j: usize) -> Option<&[u32]> {
        let row = &self.rows[i];
        row.cols
            .binary_search(&(j as u32))
            .ok()
            .map(|p| row.lists[p].as_slice())
    }

    /// Total number of live ones.
    pub fn live_ones(&self) -> u64 {
        self.rows.iter().map(|r| r.cols.len() as u64).sum()
    }

    /// Slot indices appended over the lifetime of the store.
    pub fn appends(&self) -> u64 {
        self.appends
    }

    pub fn peak_list_entries(&self) -> u64 {
        self.peak_list_entries
    }

    /// Appends `slot` to every live cell of row `i` whose column is in
    /// `intent`; returns how many cells that was.
    pub fn append_row(&mut self, i: usize, intent: &BitSet, slot: u32) -> u64 {
        let row = &mut self.rows[i];
        let mut count = 0u64;
        for (k, &c) in row.cols.iter().enumerate() {
            if intent.contains(c as usize) {
                row.lists[k].push(slot);
                count += 1;
            }
        }
        self.appends += count;
        self.list_entries += count;
        self.peak_list_entries = self.peak_list_entries.max(self.list_entries);
        count
    }

    /// Deletes the live cells of row `i` under `intent`, handing every slot
    /// index found in their lists to `on_slot`. Returns the number of cells
    /// deleted.
    pub fn remove_row(&mut self, i: usize, intent: &BitSet, mut on_slot: impl FnMut(u32)) -> u64 {
        let row = &mut self.rows[i];
        let before = row.cols.len();
        let mut released = 0u64;
        let mut kept = 0;
        for k in 0..before {
            let c = row.cols[k];
            if intent.contains(c as usize) {
                let list = std::mem::take(&mut row.lists[k]);
                released += list.len() as u64;
                for s in list {
                    on_slot(s);
                }
            } else {
                row.cols[kept] = c;
                row.lists.swap(kept, k);
                kept += 1;
            }
        }
        row.cols.truncate(kept);
        row.lists.truncate(kept);
        self.list_entries -= released;
        (before - kept) as u64
    }
}
