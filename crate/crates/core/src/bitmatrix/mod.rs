//! Bit-packed Boolean matrices and the concept-forming operators.

mod sets;

pub(crate) use sets::{words_for, WORD_BITS};
pub use sets::{AttributeSet, BitIter, BitSet, IndexSet, ObjectSet};

use std::fmt;

use crate::error::{BmfError, Result};

/// An `m x n` binary matrix stored row-major, one bit per entry.
///
/// Rows are padded to whole 64-bit words; padding bits are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BooleanMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BooleanMatrix {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BooleanMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from per-row lists of column indices.
    pub fn from_index_rows<R, I>(cols: usize, rows: R) -> Result<Self>
    where
        R: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let rows: Vec<Vec<usize>> = rows.into_iter().map(|r| r.into_iter().collect()).collect();
        let mut m = BooleanMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for &j in row {
                if j >= cols {
                    return Err(BmfError::IndexOutOfRange {
                        what: "attributes",
                        index: j,
                        bound: cols,
                    });
                }
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    /// `k x k` matrix with ones on the diagonal.
    pub fn identity(k: usize) -> Self {
        BooleanMatrix::from_fn(k, k, |i, j| i == j)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of 64-bit words per row.
    #[inline]
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.words[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            i < self.rows && j < self.cols,
            "({i}, {j}) outside {}x{}",
            self.rows,
            self.cols
        );
        let w = &mut self.words[i * self.stride + j / WORD_BITS];
        let bit = 1u64 << (j % WORD_BITS);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.words[i * self.stride..(i + 1) * self.stride]
    }

    /// Column indices of the ones in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> BitIter<'_> {
        BitIter::new(self.row_words(i))
    }

    pub fn row_count(&self, i: usize) -> usize {
        self.row_words(i)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn ones_count(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Fraction of entries equal to one; zero for an empty shape.
    pub fn density(&self) -> f64 {
        let cells = self.rows * self.cols;
        if cells == 0 {
            0.0
        } else {
            self.ones_count() as f64 / cells as f64
        }
    }

    /// Materialized column-major copy.
    pub fn transpose(&self) -> BooleanMatrix {
        let mut t = BooleanMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Zeroes every entry of the rectangle `extent x intent`.
    pub fn clear_rectangle(&mut self, extent: &ObjectSet, intent: &AttributeSet) {
        let mask = intent.to_bitset(self.cols);
        for i in extent.iter() {
            for (w, m) in self.row_words_mut(i).iter_mut().zip(mask.words()) {
                *w &= !m;
            }
        }
    }

    /// Number of ones inside the rectangle `extent x intent`.
    pub fn count_in_rectangle(&self, extent: &ObjectSet, intent: &AttributeSet) -> u64 {
        let mask = intent.to_bitset(self.cols);
        extent
            .iter()
            .map(|i| {
                self.row_words(i)
                    .iter()
                    .zip(mask.words())
                    .map(|(w, m)| u64::from((w & m).count_ones()))
                    .sum::<u64>()
            })
            .sum()
    }

    fn check_objects(&self, set: &ObjectSet) -> Result<()> {
        match set.max() {
            Some(i) if i >= self.rows => Err(BmfError::IndexOutOfRange {
                what: "objects",
                index: i,
                bound: self.rows,
            }),
            _ => Ok(()),
        }
    }

    fn check_attributes(&self, set: &AttributeSet) -> Result<()> {
        match set.max() {
            Some(j) if j >= self.cols => Err(BmfError::IndexOutOfRange {
                what: "attributes",
                index: j,
                bound: self.cols,
            }),
            _ => Ok(()),
        }
    }

    /// Attributes shared by every object of `objects`, as a bit set.
    pub(crate) fn common_attributes(&self, objects: impl IntoIterator<Item = usize>) -> BitSet {
        let mut acc = BitSet::full(self.cols);
        for i in objects {
            acc.intersect_with(self.row_words(i));
        }
        acc
    }

    /// Objects having every attribute of `mask`.
    pub(crate) fn objects_having(&self, mask: &BitSet) -> ObjectSet {
        let items = (0..self.rows)
            .filter(|&i| mask.is_subset_of(self.row_words(i)))
            .map(|i| i as u32)
            .collect();
        IndexSet::from_sorted(items)
    }

    /// `C↑`: the attributes common to all objects in `objects`.
    ///
    /// The empty object set maps to the full attribute set.
    pub fn up(&self, objects: &ObjectSet) -> Result<AttributeSet> {
        self.check_objects(objects)?;
        Ok(self.common_attributes(objects.iter()).to_index_set())
    }

    /// `D↓`: the objects having all attributes in `attributes`.
    ///
    /// The empty attribute set maps to the full object set.
    pub fn down(&self, attributes: &AttributeSet) -> Result<ObjectSet> {
        self.check_attributes(attributes)?;
        Ok(self.objects_having(&attributes.to_bitset(self.cols)))
    }

    /// Boolean (max-min) product `self ∘ rhs`.
    pub fn bool_product(&self, rhs: &BooleanMatrix) -> Result<BooleanMatrix> {
        if self.cols != rhs.rows {
            return Err(BmfError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = BooleanMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in self.row_ones(i) {
                let src = rhs.row_words(l);
                for (d, s) in out.row_words_mut(i).iter_mut().zip(src) {
                    *d |= s;
                }
            }
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &BooleanMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(BmfError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Elementwise `self <= other`.
    pub fn leq(&self, other: &BooleanMatrix) -> Result<bool> {
        self.check_same_shape(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0))
    }

    /// Number of ones of `self` not reproduced by the from-below
    /// approximation `approx`.
    ///
    /// Fails with [`BmfError::NotFromBelow`] if `approx` has a one where
    /// `self` has a zero.
    pub fn residual_error(&self, approx: &BooleanMatrix) -> Result<u64> {
        self.check_same_shape(approx)?;
        let mut error = 0u64;
        for i in 0..self.rows {
            for (w, (a, b)) in self
                .row_words(i)
                .iter()
                .zip(approx.row_words(i))
                .enumerate()
            {
                let extra = b & !a;
                if extra != 0 {
                    return Err(BmfError::NotFromBelow {
                        row: i,
                        col: w * WORD_BITS + extra.trailing_zeros() as usize,
                    });
                }
                error += u64::from((a & !b).count_ones());
            }
        }
        Ok(error)
    }
}

impl fmt::Debug for BooleanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BooleanMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
