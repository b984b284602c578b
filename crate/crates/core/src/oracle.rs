//! Slow reference implementations used as ground truth in tests.
//!
//! Nothing here shares a code path with the optimized algorithms beyond the
//! matrix primitives and the canonical concept order.

use std::collections::HashSet;

use crate::bitmatrix::{BitSet, BooleanMatrix};
use crate::concepts::{canonical_cmp, FormalConcept};
use crate::error::{check_epsilon, BmfError, Result};
use crate::factorization::{reached, Factorization};

/// Largest attribute count accepted by [`brute_force_concepts`].
pub const BRUTE_FORCE_MAX_ATTRIBUTES: usize = 20;

/// All concepts, found by closing every one of the `2^n` attribute subsets.
pub fn brute_force_concepts(matrix: &BooleanMatrix) -> Result<Vec<FormalConcept>> {
    let n = matrix.cols();
    if n > BRUTE_FORCE_MAX_ATTRIBUTES {
        return Err(BmfError::TooManyAttributes {
            cols: n,
            limit: BRUTE_FORCE_MAX_ATTRIBUTES,
        });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let attrs = BitSet::from_indices(n, (0..n).filter(|j| mask >> j & 1 == 1));
        let extent = matrix.objects_having(&attrs);
        let intent = matrix.common_attributes(extent.iter()).to_index_set();
        let c = FormalConcept::new(extent, intent);
        if seen.insert(c.clone()) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Plain GreCon over brute-forced concepts: recompute every coverage
/// against a shrinking working copy of the matrix at every step.
pub fn naive_grecon(matrix: &BooleanMatrix, epsilon: f64) -> Result<Factorization> {
    let concepts = brute_force_concepts(matrix)?;
    naive_grecon_with(matrix, concepts, epsilon)
}

/// Plain GreCon over a caller-supplied complete concept set.
pub fn naive_grecon_with(
    matrix: &BooleanMatrix,
    mut concepts: Vec<FormalConcept>,
    epsilon: f64,
) -> Result<Factorization> {
    check_epsilon(epsilon)?;
    concepts.retain(|c| c.size() > 0);
    concepts.sort_by(canonical_cmp);

    let total = matrix.ones_count();
    let mut residual = matrix.clone();
    let mut result = Factorization::empty(total);
    while !reached(result.covered(), total, epsilon) {
        let mut best: Option<(usize, u64)> = None;
        for (l, c) in concepts.iter().enumerate() {
            let cov = residual.count_in_rectangle(&c.extent, &c.intent);
            if best.is_none_or(|(_, b)| cov > b) {
                best = Some((l, cov));
            }
        }
        let (l, cov) = match best {
            Some((l, cov)) if cov > 0 => (l, cov),
            _ => {
                return Err(BmfError::Incomplete {
                    uncovered: result.error,
                })
            }
        };
        let factor = concepts[l].clone();
        residual.clear_rectangle(&factor.extent, &factor.intent);
        result.push(factor, cov);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitmatrix::IndexSet;
    use crate::fixtures;

    #[test]
    fn brute_force_small_context() {
        let found: HashSet<_> = brute_force_concepts(&fixtures::context_3x4())
            .unwrap()
            .into_iter()
            .collect();
        let expected: HashSet<_> = fixtures::context_3x4_concepts().into_iter().collect();
        assert_eq!(found, expected);
    }

    #[test]
    fn brute_force_zero_matrix() {
        let found = brute_force_concepts(&BooleanMatrix::zeros(2, 2)).unwrap();
        assert_eq!(found.len(), 2);
        assert!(found.contains(&FormalConcept::new([0, 1].into(), IndexSet::new())));
        assert!(found.contains(&FormalConcept::new(IndexSet::new(), [0, 1].into())));
    }

    #[test]
    fn brute_force_contains_5x7_concepts() {
        let found = brute_force_concepts(&fixtures::context_5x7()).unwrap();
        for c in fixtures::context_5x7_concepts() {
            assert!(found.contains(&c));
        }
    }

    #[test]
    fn brute_force_refuses_wide_matrices() {
        assert!(matches!(
            brute_force_concepts(&BooleanMatrix::zeros(1, 21)),
            Err(BmfError::TooManyAttributes { cols: 21, .. })
        ));
    }

    #[test]
    fn naive_small_context() {
        let f = naive_grecon(&fixtures::context_3x4(), 1.0).unwrap();
        let c = fixtures::context_3x4_concepts();
        assert_eq!(f.factors, vec![c[4].clone(), c[3].clone(), c[1].clone()]);
        assert_eq!(f.new_coverage, vec![4, 2, 1]);
        assert_eq!(f.error, 0);
    }

    #[test]
    fn naive_zero_matrix() {
        let f = naive_grecon(&BooleanMatrix::zeros(3, 3), 0.5).unwrap();
        assert_eq!(f.k(), 0);
        assert_eq!(f.error, 0);
    }

    #[test]
    fn naive_worked_example_is_exact() {
        let (i, _, _) = fixtures::product_5x6();
        let f = naive_grecon(&i, 1.0).unwrap();
        // The size-8 tie goes to the larger extent <{0,1,2,3},{1,2}>, which
        // costs one factor over the hand-made three-factor decomposition.
        assert_eq!(
            f.factors[0],
            FormalConcept::new([0, 1, 2, 3].into(), [1, 2].into())
        );
        assert_eq!(f.new_coverage, vec![8, 5, 3, 2]);
        assert_eq!(f.k(), 4);
        assert_eq!(f.error, 0);
        assert_eq!(f.reconstruct(5, 6).unwrap(), i);
    }

    #[test]
    fn naive_rejects_bad_epsilon() {
        let m = fixtures::context_3x4();
        assert!(naive_grecon(&m, 0.0).is_err());
        assert!(naive_grecon(&m, 1.5).is_err());
    }
}
