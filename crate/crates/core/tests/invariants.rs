//! Structural properties of enumeration and factorization on random inputs.

mod common;

use proptest::prelude::*;

use grecon::bitmatrix::BooleanMatrix;
use grecon::concepts::{canonical_cmp, canonical_stream, enumerate_concepts, FormalConcept};
use grecon::grecon3::{Grecon3, Grecon3Options};
use grecon::oracle::brute_force_concepts;
use grecon::{grecon2_factorize, grecon3_factorize_with, grecond_factorize, Factorization};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BooleanMatrix> {
    (
        1..=max_rows,
        1..=max_cols,
        prop::sample::select(vec![0.1, 0.3, 0.5, 0.8]),
    )
        .prop_flat_map(|(m, n, d)| {
            prop::collection::vec(prop::bool::weighted(d), m * n)
                .prop_map(move |bits| BooleanMatrix::from_fn(m, n, |i, j| bits[i * n + j]))
        })
}

fn sorted(mut v: Vec<FormalConcept>) -> Vec<FormalConcept> {
    v.sort_by(canonical_cmp);
    v
}

/// From-below, error bookkeeping and positivity of every step.
fn check_factorization(m: &BooleanMatrix, f: &Factorization, epsilon: f64) {
    let approx = f.reconstruct(m.rows(), m.cols()).unwrap();
    assert!(approx.leq(m).unwrap(), "reconstruction exceeds the input");
    assert_eq!(f.total_ones, m.ones_count());
    assert_eq!(f.new_coverage.iter().sum::<u64>() + f.error, m.ones_count());
    assert_eq!(f.verify_error(m).unwrap(), f.error);
    assert!(f.new_coverage.iter().all(|&c| c > 0));
    for c in &f.factors {
        assert!(c.is_closed_in(m), "factor is not a concept");
    }
    if epsilon >= 1.0 {
        assert_eq!(f.error, 0);
        assert_eq!(&approx, m);
    }
}

fn g3(m: &BooleanMatrix, eps: f64, small_threshold: usize) -> Factorization {
    grecon3_factorize_with(
        m,
        canonical_stream(enumerate_concepts(m)),
        eps,
        Grecon3Options { small_threshold },
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn enumeration_matches_brute_force(m in matrix(14, 15)) {
        let fast = sorted(enumerate_concepts(&m));
        let slow = sorted(brute_force_concepts(&m).unwrap());
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn galois_connection(m in matrix(10, 10), picks in prop::collection::vec(any::<bool>(), 10)) {
        let objects: grecon::ObjectSet =
            (0..m.rows()).filter(|&i| picks[i]).collect();
        let up = m.up(&objects).unwrap();
        let down = m.down(&up).unwrap();
        prop_assert!(objects.is_subset(&down));
        prop_assert_eq!(&m.up(&down).unwrap(), &up);
        let smaller: grecon::ObjectSet = objects.iter().skip(1).collect();
        prop_assert!(up.is_subset(&m.up(&smaller).unwrap()));
    }

    #[test]
    fn stream_is_canonical(m in matrix(12, 12)) {
        let stream = canonical_stream(enumerate_concepts(&m));
        let mut prev: Option<FormalConcept> = None;
        for c in stream {
            prop_assert!(c.size() > 0);
            if let Some(p) = &prev {
                prop_assert!(canonical_cmp(p, &c).is_lt());
            }
            prev = Some(c);
        }
    }

    #[test]
    fn every_algorithm_factorizes_from_below(m in matrix(12, 12), eps in prop::sample::select(vec![0.5, 0.8, 1.0])) {
        let concepts = enumerate_concepts(&m);
        let runs = [
            grecond_factorize(&m, eps).unwrap(),
            grecon2_factorize(&m, canonical_stream(concepts.clone()), eps).unwrap(),
            g3(&m, eps, 100),
            g3(&m, eps, 0),
        ];
        for f in &runs {
            check_factorization(&m, f, eps);
        }
    }

    #[test]
    fn approximate_run_is_minimal_prefix(m in matrix(12, 12), eps in prop::sample::select(vec![0.5, 0.75, 0.9])) {
        let full = g3(&m, 1.0, 100);
        let part = g3(&m, eps, 100);
        prop_assert_eq!(&full.factors[..part.k()], &part.factors[..]);
        prop_assert_eq!(&full.new_coverage[..part.k()], &part.new_coverage[..]);
        let total = m.ones_count() as f64;
        prop_assert!(part.coverage_ratio() >= eps);
        if part.k() > 0 {
            let last = *part.new_coverage.last().unwrap() as f64;
            prop_assert!((part.covered() as f64 - last) / total < eps);
        }
    }

    #[test]
    fn grecon3_never_appends_more(m in matrix(20, 16)) {
        let stream = || canonical_stream(enumerate_concepts(&m));
        let g2 = grecon2_factorize(&m, stream(), 1.0).unwrap();
        for threshold in [0, 3, 100] {
            let f = g3(&m, 1.0, threshold);
            prop_assert_eq!(&f.factors, &g2.factors);
            prop_assert!(f.stats.cell_appends <= g2.stats.cell_appends);
            if f.k() >= 4 {
                prop_assert!(f.stats.cell_appends < g2.stats.cell_appends);
            } else {
                prop_assert_eq!(f.stats.cell_appends, 0);
            }
        }
    }

    /// Bounds stay sound after every step however candidates are indexed.
    #[test]
    fn pool_bounds_hold_at_every_step(m in matrix(16, 12), threshold in 0usize..6) {
        let stream = canonical_stream(enumerate_concepts(&m));
        let mut run = Grecon3::new(&m, stream, Grecon3Options { small_threshold: threshold });
        while run.step().unwrap().is_some() {
            if let Err(e) = run.audit() {
                return Err(TestCaseError::fail(e));
            }
        }
    }
}

/// A candidate suspended and resumed several times ends with the same
/// coverage as one indexed at once on an identical state.
#[test]
fn resumed_coverage_equals_en_bloc() {
    for m in common::wide_corpus(120, common::CORPUS_SEED ^ 0x77) {
        let stream = || canonical_stream(enumerate_concepts(&m));
        let mut incremental = Grecon3::new(&m, stream(), Grecon3Options { small_threshold: 0 });
        let mut en_bloc = Grecon3::new(
            &m,
            stream(),
            Grecon3Options {
                small_threshold: usize::MAX,
            },
        );
        loop {
            let a = incremental.step().unwrap();
            let b = en_bloc.step().unwrap();
            assert_eq!(a, b);
            if a.is_none() {
                break;
            }
            if !incremental.cells().is_initialized() {
                continue;
            }
            // every slot fully indexed in both runs must agree
            let (pi, pb) = (incremental.pool(), en_bloc.pool());
            for &s in incremental.queue() {
                if pi.potential(s) != 0 {
                    continue;
                }
                let c = pi.concept(s);
                if let Some(&t) = en_bloc
                    .queue()
                    .iter()
                    .find(|&&t| pb.concept(t) == c && pb.potential(t) == 0)
                {
                    assert_eq!(pi.covers(s), pb.covers(t));
                }
            }
        }
    }
}
