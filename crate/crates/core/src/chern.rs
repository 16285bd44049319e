//! Second and third Chern classes, the contracted second Chern class, and the
//! Euler characteristic.
//!
//! `[c2]_rs` is half-integral and `[c3]_rst` third-integral in general, so
//! they are stored as `2 [c2]_rs` and `3 [c3]_rst`. All contractions run over
//! ordered index tuples and divide exactly at the end.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::config::ReducedConfiguration;
use crate::error::{exact_div, to_i64, Error, Result};
use crate::intersection::SymmetricRank3Tensor;
use crate::poly::{TruncatedPoly, Truncation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernData {
    /// `2 [c2]_rs`, symmetric.
    pub c2_doubled: Vec<Vec<i64>>,
    /// `3 [c3]_rst`.
    pub c3_tripled: SymmetricRank3Tensor,
    /// `[c2]_t = sum_{r,s} [c2]_rs d_rst`.
    pub c2_contracted: Vec<i64>,
    pub euler: i64,
}

/// `2 [c2]_rs = -delta_rs (n_r + 1) + sum_j q_r^j q_s^j`.
pub fn chern2_matrix(config: &ReducedConfiguration) -> Vec<Vec<i64>> {
    let m = config.m();
    let q = config.degrees();
    let mut out = vec![vec![0i64; m]; m];
    for r in 0..m {
        for s in 0..m {
            let mut v: i64 = q[r].iter().zip(&q[s]).map(|(&a, &b)| i64::from(a) * i64::from(b)).sum();
            if r == s {
                v -= i64::from(config.ambient_dims()[r]) + 1;
            }
            out[r][s] = v;
        }
    }
    out
}

/// `3 [c3]_rst = delta_rst (n_r + 1) - sum_j q_r^j q_s^j q_t^j`.
pub fn chern3_tensor(config: &ReducedConfiguration) -> SymmetricRank3Tensor {
    let q = config.degrees();
    let mut out = SymmetricRank3Tensor::zeros(config.m());
    let triples: Vec<_> = out.sorted_triples().collect();
    for (r, s, t) in triples {
        let mut v: i64 = -(0..config.k())
            .map(|j| i64::from(q[r][j]) * i64::from(q[s][j]) * i64::from(q[t][j]))
            .sum::<i64>();
        if r == s && s == t {
            v += i64::from(config.ambient_dims()[r]) + 1;
        }
        out.set((r, s, t), v);
    }
    out
}

/// `[c2]_t` from the doubled matrix, summing over all ordered `(r, s)`.
pub fn chern2_contracted(c2_doubled: &[Vec<i64>], tensor: &SymmetricRank3Tensor) -> Result<Vec<i64>> {
    let h = tensor.dim();
    if c2_doubled.len() != h || c2_doubled.iter().any(|row| row.len() != h) {
        return Err(Error::DimensionMismatch {
            context: "second Chern contraction",
            expected: h,
            got: c2_doubled.len(),
        });
    }
    (0..h)
        .map(|t| {
            let mut acc: i128 = 0;
            for (r, row) in c2_doubled.iter().enumerate() {
                for (s, &c) in row.iter().enumerate() {
                    acc += i128::from(c) * i128::from(tensor.get(r, s, t));
                }
            }
            to_i64(
                "contracted second Chern class",
                exact_div("contracted second Chern class", acc, 2)?,
            )
        })
        .collect()
}

/// `chi = sum_{r,s,t} [c3]_rst d_rst` over all ordered triples.
pub fn euler_characteristic(c3_tripled: &SymmetricRank3Tensor, tensor: &SymmetricRank3Tensor) -> Result<i64> {
    let h = tensor.dim();
    if c3_tripled.dim() != h {
        return Err(Error::DimensionMismatch {
            context: "Euler characteristic",
            expected: h,
            got: c3_tripled.dim(),
        });
    }
    let mut acc: i128 = 0;
    for r in 0..h {
        for s in 0..h {
            for t in 0..h {
                acc += i128::from(c3_tripled.get(r, s, t)) * i128::from(tensor.get(r, s, t));
            }
        }
    }
    to_i64("Euler characteristic", exact_div("Euler characteristic", acc, 3)?)
}

pub fn chern_data(config: &ReducedConfiguration, tensor: &SymmetricRank3Tensor) -> Result<ChernData> {
    let c2_doubled = chern2_matrix(config);
    let c3_tripled = chern3_tensor(config);
    let c2_contracted = chern2_contracted(&c2_doubled, tensor)?;
    let euler = euler_characteristic(&c3_tripled, tensor)?;
    Ok(ChernData {
        c2_doubled,
        c3_tripled,
        c2_contracted,
        euler,
    })
}

/// Symmetric Chern tensors read off the expanded total Chern class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernSeries {
    /// Degree-one coefficients; zero for every Calabi-Yau configuration.
    pub c1: Vec<i128>,
    /// `[c2]_rs` with `c2 = sum_{r,s} [c2]_rs x_r x_s` over ordered pairs.
    pub c2: Vec<Vec<Ratio<i128>>>,
    /// `[c3]_rst` over ordered triples, flattened as `(r * m + s) * m + t`.
    pub c3: Vec<Ratio<i128>>,
    m: usize,
}

impl ChernSeries {
    pub fn c3(&self, r: usize, s: usize, t: usize) -> Ratio<i128> {
        self.c3[(r * self.m + s) * self.m + t]
    }
}

/// Expands `prod_i (1 + x_i)^{n_i + 1} / prod_j (1 + sum_i q_i^j x_i)` to
/// total degree three and symmetrizes the monomial coefficients.
pub fn chern_series_oracle(config: &ReducedConfiguration) -> Result<ChernSeries> {
    let m = config.m();
    let trunc = Truncation::total_degree(m, 3);
    let mut total = TruncatedPoly::one(&trunc);
    for (i, &n) in config.ambient_dims().iter().enumerate() {
        let mut unit = vec![0i128; m];
        unit[i] = 1;
        total = total.mul(&TruncatedPoly::linear(&trunc, 1, &unit).pow(n + 1)?)?;
    }
    for j in 0..config.k() {
        let coeffs: Vec<i128> = (0..m).map(|i| i128::from(config.degree(i, j))).collect();
        let inverse = TruncatedPoly::linear(&trunc, 0, &coeffs).inverse_of_one_plus()?;
        total = total.mul(&inverse)?;
    }

    let mut c1 = vec![0i128; m];
    for (exps, c) in total.homogeneous_part(1) {
        let i = exps.iter().position(|&e| e == 1).expect("degree-one monomial");
        c1[i] = c;
    }

    let zero = Ratio::from_integer(0);
    let mut c2 = vec![vec![zero; m]; m];
    for (exps, c) in total.homogeneous_part(2) {
        let idx = indices(&exps);
        let (r, s) = (idx[0], idx[1]);
        // x_r x_s (r != s) collects both [c2]_rs and [c2]_sr.
        let orderings = if r == s { 1 } else { 2 };
        let v = Ratio::new(c, orderings);
        c2[r][s] = v;
        c2[s][r] = v;
    }

    let mut c3 = vec![zero; m * m * m];
    for (exps, c) in total.homogeneous_part(3) {
        let idx = indices(&exps);
        let orderings = 6 / exps.iter().map(|&e| factorial(e)).product::<i128>();
        let v = Ratio::new(c, orderings);
        let (a, b, d) = (idx[0], idx[1], idx[2]);
        for (r, s, t) in [(a, b, d), (a, d, b), (b, a, d), (b, d, a), (d, a, b), (d, b, a)] {
            c3[(r * m + s) * m + t] = v;
        }
    }
    Ok(ChernSeries { c1, c2, c3, m })
}

fn indices(exps: &[u8]) -> Vec<usize> {
    exps.iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize))
        .collect()
}

fn factorial(e: u8) -> i128 {
    (1..=i128::from(e)).product()
}
