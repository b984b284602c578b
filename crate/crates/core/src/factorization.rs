//! The result of a factorization run.

use serde::Serialize;

use crate::bitmatrix::BooleanMatrix;
use crate::concepts::FormalConcept;
use crate::error::Result;

/// Ordered factor concepts with the number of ones each one newly covered.
///
/// Invariants: `new_coverage` entries are strictly positive and
/// `new_coverage.sum() + error == total_ones`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<FormalConcept>,
    pub new_coverage: Vec<u64>,
    pub total_ones: u64,
    pub error: u64,
    pub stats: RunStats,
}

/// Counters collected during a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunStats {
    /// Concept indices appended to cell lists.
    pub cell_appends: u64,
    /// Largest number of concept indices held in cell lists at once.
    pub peak_list_entries: u64,
    /// Largest number of concepts held in candidate storage at once.
    pub peak_slots: u64,
}

impl Factorization {
    pub(crate) fn empty(total_ones: u64) -> Self {
        Factorization {
            factors: Vec::new(),
            new_coverage: Vec::new(),
            total_ones,
            error: total_ones,
            stats: RunStats::default(),
        }
    }

    pub(crate) fn push(&mut self, factor: FormalConcept, covered: u64) {
        debug_assert!(covered > 0 && covered <= self.error);
        self.factors.push(factor);
        self.new_coverage.push(covered);
        self.error -= covered;
    }

    /// Number of factors.
    pub fn k(&self) -> usize {
        self.factors.len()
    }

    pub fn covered(&self) -> u64 {
        self.total_ones - self.error
    }

    /// Covered ones as a fraction of all ones; 1 for a zero matrix.
    pub fn coverage_ratio(&self) -> f64 {
        coverage_ratio(self.covered(), self.total_ones)
    }

    /// `(A_F, B_F)`: the object-factor and factor-attribute matrices.
    pub fn factor_matrices(&self, rows: usize, cols: usize) -> (BooleanMatrix, BooleanMatrix) {
        let k = self.k();
        let mut a = BooleanMatrix::zeros(rows, k);
        let mut b = BooleanMatrix::zeros(k, cols);
        for (l, f) in self.factors.iter().enumerate() {
            for i in f.extent.iter() {
                a.set(i, l, true);
            }
            for j in f.intent.iter() {
                b.set(l, j, true);
            }
        }
        (a, b)
    }

    /// `A_F ∘ B_F`.
    pub fn reconstruct(&self, rows: usize, cols: usize) -> Result<BooleanMatrix> {
        let (a, b) = self.factor_matrices(rows, cols);
        a.bool_product(&b)
    }

    /// Recomputes the residual error from scratch against `matrix`.
    pub fn verify_error(&self, matrix: &BooleanMatrix) -> Result<u64> {
        matrix.residual_error(&self.reconstruct(matrix.rows(), matrix.cols())?)
    }
}

pub fn coverage_ratio(covered: u64, total: u64) -> f64 {
    if total == 0 {
        1.0
    } else {
        covered as f64 / total as f64
    }
}

/// The stopping rule shared by every algorithm: enough ones are covered
/// once `covered / total >= epsilon`.
#[inline]
pub fn reached(covered: u64, total: u64, epsilon: f64) -> bool {
    total == 0 || coverage_ratio(covered, total) >= epsilon
}
