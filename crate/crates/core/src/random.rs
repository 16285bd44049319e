//! Random valid configurations and permutations for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::config::{ConfigurationMatrix, TARGET_DIMENSION};

/// A uniformly shaped random configuration with `1 <= m <= max_m`,
/// `1 <= k <= max_k`, no zero column, and every defining condition met.
pub fn random_configuration<R: Rng + ?Sized>(
    rng: &mut R,
    id: impl Into<String>,
    max_m: usize,
    max_k: usize,
) -> ConfigurationMatrix {
    assert!(max_m >= 1 && max_k >= 1);
    let (m, k) = loop {
        let m = rng.gen_range(1..=max_m);
        let k = rng.gen_range(1..=max_k);
        if k + TARGET_DIMENSION as usize >= m {
            break (m, k);
        }
    };

    // Ambient dimensions: a random composition of k + 3 into m positive parts.
    let mut dims = vec![1u32; m];
    for _ in 0..(k + TARGET_DIMENSION as usize - m) {
        dims[rng.gen_range(0..m)] += 1;
    }

    // Each row distributes n_i + 1 units of degree. Seed every column with one
    // unit first so no polynomial is constant.
    let mut left: Vec<u32> = dims.iter().map(|&n| n + 1).collect();
    let mut degrees = vec![vec![0u32; k]; m];
    let seeded_rows: Vec<usize> = (0..k)
        .map(|_| {
            let candidates: Vec<usize> = (0..m).filter(|&i| left[i] > 0).collect();
            let &i = candidates.choose(rng).expect("total degree exceeds column count");
            left[i] -= 1;
            i
        })
        .collect();
    for (col, &i) in seeded_rows.iter().enumerate() {
        degrees[i][col] += 1;
    }
    for (i, row) in degrees.iter_mut().enumerate() {
        for _ in 0..left[i] {
            row[rng.gen_range(0..k)] += 1;
        }
    }
    ConfigurationMatrix::new(id, dims, degrees).expect("generated shape is rectangular")
}

pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
