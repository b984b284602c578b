//! The three concept-based algorithms select the same factors.

mod common;

use grecon::concepts::{canonical_stream, enumerate_concepts};
use grecon::grecon2::grecon2_factorize;
use grecon::grecon3::{grecon3_factorize_with, Grecon3Options};
use grecon::oracle::{brute_force_concepts, naive_grecon_with};
use grecon::{BooleanMatrix, Factorization};

fn grecon3(m: &BooleanMatrix, eps: f64, small_threshold: usize) -> Factorization {
    let stream = canonical_stream(enumerate_concepts(m));
    grecon3_factorize_with(m, stream, eps, Grecon3Options { small_threshold }).unwrap()
}

#[test]
fn random_corpus_agrees_with_oracle() {
    let corpus = common::random_corpus(240, common::CORPUS_SEED);
    for (idx, (density, m)) in corpus.iter().enumerate() {
        let concepts = brute_force_concepts(m).unwrap();
        for eps in [0.75, 1.0] {
            let naive = naive_grecon_with(m, concepts.clone(), eps).unwrap();
            let g2 = grecon2_factorize(m, canonical_stream(concepts.clone()), eps).unwrap();
            assert_eq!(
                g2.factors, naive.factors,
                "grecon2 #{idx} d={density} eps={eps}\n{m:?}"
            );
            assert_eq!(g2.new_coverage, naive.new_coverage);
            // every candidate en bloc, every candidate incremental, mixed
            for threshold in [100, 0, 3] {
                let g3 = grecon3(m, eps, threshold);
                assert_eq!(
                    g3.factors, naive.factors,
                    "grecon3 #{idx} d={density} eps={eps} threshold={threshold}\n{m:?}"
                );
                assert_eq!(g3.new_coverage, naive.new_coverage);
                assert!(g3.stats.cell_appends <= g2.stats.cell_appends);
            }
        }
    }
}

#[test]
fn ties_everywhere() {
    // block-diagonal with equal blocks: every step is a tie
    let m = BooleanMatrix::from_fn(9, 9, |i, j| i / 3 == j / 3);
    let naive = naive_grecon_with(&m, enumerate_concepts(&m), 1.0).unwrap();
    for threshold in [0, 2, 100] {
        assert_eq!(grecon3(&m, 1.0, threshold).factors, naive.factors);
    }
    let order: Vec<Vec<u32>> = naive
        .factors
        .iter()
        .map(|c| c.extent.as_slice().to_vec())
        .collect();
    assert_eq!(order, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]);
}

#[test]
fn larger_matrices_agree_with_grecon2() {
    // beyond brute force; exercises many suspensions and slot reuse
    let corpus = [
        BooleanMatrix::from_fn(40, 30, |i, j| (i * 13 + j * 7 + i * j) % 5 < 2),
        BooleanMatrix::from_fn(60, 25, |i, j| (i ^ j) % 3 == 0 || (i + j) % 7 == 0),
        BooleanMatrix::from_fn(50, 40, |i, j| (i * j + i + 3 * j) % 11 < 6),
    ];
    for m in &corpus {
        let stream = || canonical_stream(enumerate_concepts(m));
        let g2 = grecon2_factorize(m, stream(), 1.0).unwrap();
        for threshold in [0, 4, 100] {
            let g3 = grecon3_factorize_with(
                m,
                stream(),
                1.0,
                Grecon3Options {
                    small_threshold: threshold,
                },
            )
            .unwrap();
            assert_eq!(g3.factors, g2.factors);
            assert_eq!(g3.new_coverage, g2.new_coverage);
            assert_eq!(g3.error, 0);
            if g3.k() >= 4 {
                assert!(g3.stats.cell_appends < g2.stats.cell_appends);
            }
        }
    }
}
