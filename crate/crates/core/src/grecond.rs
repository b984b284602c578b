//! GreConD: builds each factor on demand by greedily growing an intent one
//! attribute at a time.

use crate::bitmatrix::{BitSet, BooleanMatrix};
use crate::concepts::FormalConcept;
use crate::error::{check_epsilon, BmfError, Result};
use crate::factorization::{reached, Factorization};

pub fn grecond_factorize(matrix: &BooleanMatrix, epsilon: f64) -> Result<Factorization> {
    check_epsilon(epsilon)?;
    let (m, n) = (matrix.rows(), matrix.cols());
    let columns = matrix.transpose();
    let total = matrix.ones_count();
    let mut residual = matrix.clone();
    let mut result = Factorization::empty(total);

    while !reached(result.covered(), total, epsilon) {
        let mut extent = BitSet::full(m);
        let mut intent = BitSet::new(n);
        let mut value = 0u64;
        loop {
            // strict `>` keeps the lowest attribute index on ties
            let mut best: Option<(u64, BitSet, BitSet)> = None;
            for j in 0..n {
                if intent.contains(j) {
                    continue;
                }
                let mut ext = extent.clone();
                ext.intersect_with(columns.row_words(j));
                if ext.is_empty() {
                    continue;
                }
                let int = matrix.common_attributes(ext.iter());
                let cov = covered_by(&residual, &ext, &int);
                if best.as_ref().is_none_or(|(b, _, _)| cov > *b) {
                    best = Some((cov, ext, int));
                }
            }
            match best {
                Some((cov, ext, int)) if cov > value => {
                    value = cov;
                    extent = ext;
                    intent = int;
                }
                _ => break,
            }
        }
        if value == 0 {
            return Err(BmfError::Incomplete {
                uncovered: result.error,
            });
        }
        let factor = FormalConcept::new(extent.to_index_set(), intent.to_index_set());
        residual.clear_rectangle(&factor.extent, &factor.intent);
        result.push(factor, value);
    }
    Ok(result)
}

fn covered_by(residual: &BooleanMatrix, extent: &BitSet, intent: &BitSet) -> u64 {
    extent
        .iter()
        .map(|i| {
            residual
                .row_words(i)
                .iter()
                .zip(intent.words())
                .map(|(r, d)| u64::from((r & d).count_ones()))
                .sum::<u64>()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn assert_exact(m: &BooleanMatrix) -> Factorization {
        let f = grecond_factorize(m, 1.0).unwrap();
        assert_eq!(f.error, 0);
        assert_eq!(f.reconstruct(m.rows(), m.cols()).unwrap(), *m);
        assert!(f.factors.iter().all(|c| c.is_closed_in(m)));
        assert_eq!(f.new_coverage.iter().sum::<u64>(), m.ones_count());
        f
    }

    #[test]
    fn zero_matrix_has_no_factors() {
        let f = grecond_factorize(&BooleanMatrix::zeros(4, 3), 1.0).unwrap();
        assert_eq!(f.k(), 0);
    }

    #[test]
    fn exact_on_worked_example() {
        let (i, _, _) = fixtures::product_5x6();
        assert_exact(&i);
    }

    #[test]
    fn exact_on_small_contexts() {
        let f = assert_exact(&fixtures::context_3x4());
        assert_eq!(f.new_coverage[0], 4);
        assert_exact(&fixtures::context_5x7());
    }

    #[test]
    fn approximate_stops_early() {
        let m = fixtures::context_5x7();
        let f = grecond_factorize(&m, 0.5).unwrap();
        assert!(f.coverage_ratio() >= 0.5);
        assert!(f.reconstruct(5, 7).unwrap().leq(&m).unwrap());
    }
}
