//! Fixed inputs shared by the benchmarks.

use cicy_core::random::random_configuration;
use cicy_core::{ConfigurationMatrix, ReducedConfiguration, SquareMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config(id: &str, ambient: &[u32], degrees: &[&[u32]]) -> ConfigurationMatrix {
    ConfigurationMatrix::new(id, ambient.to_vec(), degrees.iter().map(|r| r.to_vec()).collect()).unwrap()
}

/// The first seeded random configuration with exactly `m` factors.
pub fn random_with_factors(m: usize, max_k: usize, seed: u64) -> ReducedConfiguration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let c = random_configuration(&mut rng, format!("m{m}"), m, max_k);
        if c.m() == m {
            return c.reduce().unwrap();
        }
    }
}

/// Named configurations from one factor up to the dataset's largest shapes.
pub fn configurations() -> Vec<ReducedConfiguration> {
    let mut out: Vec<ReducedConfiguration> = [
        config("quintic", &[4], &[&[5]]),
        config("bicubic", &[2, 2], &[&[3], &[3]]),
        config("tetraquadric", &[1, 1, 1, 1], &[&[2], &[2], &[2], &[2]]),
        config("p7_2222", &[7], &[&[2, 2, 2, 2]]),
    ]
    .into_iter()
    .map(|c| c.reduce().unwrap())
    .collect();
    for m in [6, 9, 12, 15] {
        out.push(random_with_factors(m, 18, 7 + m as u64));
    }
    out
}

/// Dense `n x n` matrix with entries in `0..=max`.
pub fn dense_matrix(n: usize, max: i64, seed: u64) -> SquareMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SquareMatrix::from_rows(
        (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..=max)).collect())
            .collect(),
    )
    .unwrap()
}
