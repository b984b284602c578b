//! Shared random corpus for the integration suites.
#![allow(dead_code)]

use grecon::BooleanMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed_b00f;
pub const DENSITIES: [f64; 3] = [0.2, 0.35, 0.5];

/// `count` random matrices with up to 12 rows and 12 columns, cycling
/// through the three densities.
pub fn random_corpus(count: usize, seed: u64) -> Vec<(f64, BooleanMatrix)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let density = DENSITIES[k % DENSITIES.len()];
            let rows = rng.gen_range(1..=12);
            let cols = rng.gen_range(1..=12);
            let m = BooleanMatrix::from_fn(rows, cols, |_, _| rng.gen_bool(density));
            (density, m)
        })
        .collect()
}

/// Random matrices with up to 15 columns for enumeration checks.
pub fn wide_corpus(count: usize, seed: u64) -> Vec<BooleanMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let density = DENSITIES[k % DENSITIES.len()];
            let rows = rng.gen_range(1..=14);
            let cols = rng.gen_range(1..=15);
            BooleanMatrix::from_fn(rows, cols, |_, _| rng.gen_bool(density))
        })
        .collect()
}
