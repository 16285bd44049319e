//! Triple intersection numbers `d_rst` of a favorable complete intersection.
//!
//! `d_rst` is the coefficient of `prod_i x_i^{n_i}` in
//! `x_r x_s x_t * prod_j (sum_i q_i^j x_i)`. Expanding the product of linear
//! forms, that coefficient counts assignments of the `k` polynomials to the
//! factors in which factor `i` receives exactly
//! `mu_i = n_i - #{occurrences of i in (r, s, t)}` polynomials. Repeating
//! row `i` of the configuration `mu_i` times gives a `k x k` matrix whose
//! permanent counts those assignments `prod_i mu_i!` times over.
//!
//! [`triple_intersection`] follows that permanent route;
//! [`triple_intersection_oracle`] extracts the coefficient directly in a
//! truncated polynomial ring.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::ReducedConfiguration;
use crate::error::{exact_div, to_i64, Error, Result};
use crate::permanent::{permanent_with, Method, SquareMatrix};
use crate::poly::{TruncatedPoly, Truncation};

/// An index triple, zero-based. Order does not matter.
pub type Triple = (usize, usize, usize);

/// Fully symmetric integer tensor of rank three.
///
/// Stored densely; every write goes to all six index orderings so reads
/// need no sorting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SparseTensor", into = "SparseTensor")]
pub struct SymmetricRank3Tensor {
    dim: usize,
    data: Vec<i64>,
}

impl SymmetricRank3Tensor {
    pub fn zeros(dim: usize) -> Self {
        SymmetricRank3Tensor {
            dim,
            data: vec![0; dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn offset(&self, r: usize, s: usize, t: usize) -> usize {
        (r * self.dim + s) * self.dim + t
    }

    pub fn get(&self, r: usize, s: usize, t: usize) -> i64 {
        self.data[self.offset(r, s, t)]
    }

    pub fn set(&mut self, triple: Triple, value: i64) {
        let (r, s, t) = triple;
        assert!(r < self.dim && s < self.dim && t < self.dim, "index out of range");
        for (a, b, c) in [(r, s, t), (r, t, s), (s, r, t), (s, t, r), (t, r, s), (t, s, r)] {
            let o = self.offset(a, b, c);
            self.data[o] = value;
        }
    }

    /// All `r <= s <= t` in lexicographic order.
    pub fn sorted_triples(&self) -> impl Iterator<Item = Triple> {
        let dim = self.dim;
        (0..dim).flat_map(move |r| (r..dim).flat_map(move |s| (s..dim).map(move |t| (r, s, t))))
    }

    /// `(triple, value)` over sorted triples.
    pub fn entries(&self) -> impl Iterator<Item = (Triple, i64)> + '_ {
        self.sorted_triples().map(|(r, s, t)| ((r, s, t), self.get(r, s, t)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Relabels indices: entry `(a, b, c)` of the result is entry
    /// `(perm[a], perm[b], perm[c])` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim);
        let mut out = Self::zeros(self.dim);
        for (a, b, c) in self.sorted_triples() {
            out.set((a, b, c), self.get(perm[a], perm[b], perm[c]));
        }
        out
    }

    /// `(r s t):v` for every nonzero sorted entry, one-based, joined by `;`.
    pub fn to_canonical_string(&self) -> String {
        self.entries()
            .filter(|&(_, v)| v != 0)
            .map(|((r, s, t), v)| format!("({} {} {}):{}", r + 1, s + 1, t + 1, v))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for SymmetricRank3Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

/// Wire form: dimension plus one-based nonzero sorted entries `[r, s, t, v]`.
#[derive(Serialize, Deserialize)]
struct SparseTensor {
    dim: usize,
    entries: Vec<(usize, usize, usize, i64)>,
}

impl From<SymmetricRank3Tensor> for SparseTensor {
    fn from(t: SymmetricRank3Tensor) -> Self {
        SparseTensor {
            dim: t.dim,
            entries: t
                .entries()
                .filter(|&(_, v)| v != 0)
                .map(|((r, s, u), v)| (r + 1, s + 1, u + 1, v))
                .collect(),
        }
    }
}

impl TryFrom<SparseTensor> for SymmetricRank3Tensor {
    type Error = Error;

    fn try_from(w: SparseTensor) -> Result<Self> {
        let mut t = SymmetricRank3Tensor::zeros(w.dim);
        for (r, s, u, v) in w.entries {
            for index in [r, s, u] {
                if index == 0 || index > w.dim {
                    return Err(Error::IndexOutOfRange { index, dim: w.dim });
                }
            }
            t.set((r - 1, s - 1, u - 1), v);
        }
        Ok(t)
    }
}

/// Row multiplicities `mu_i = n_i - mult_i(r, s, t)` or `None` when some
/// factor is hit more often than its dimension allows.
pub fn row_multiplicities(config: &ReducedConfiguration, triple: Triple) -> Result<Option<Vec<u32>>> {
    let m = config.m();
    let (r, s, t) = triple;
    for index in [r, s, t] {
        if index >= m {
            return Err(Error::IndexOutOfRange {
                index: index + 1,
                dim: m,
            });
        }
    }
    let mut mu: Vec<i64> = config.ambient_dims().iter().map(|&n| i64::from(n)).collect();
    for index in [r, s, t] {
        mu[index] -= 1;
    }
    if mu.iter().any(|&x| x < 0) {
        return Ok(None);
    }
    Ok(Some(mu.into_iter().map(|x| x as u32).collect()))
}

/// The square matrix obtained by repeating row `i` of the configuration
/// `mu_i` times. Kept in grouped form; [`materialize`](Self::materialize)
/// expands it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedMatrix {
    rows: Vec<Vec<u32>>,
    multiplicities: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extended {
    Matrix(ExtendedMatrix),
    /// Some `x_i` appears more than `n_i` times; the class vanishes.
    Vanishing,
}

pub fn build_extended(config: &ReducedConfiguration, triple: Triple) -> Result<Extended> {
    Ok(match row_multiplicities(config, triple)? {
        None => Extended::Vanishing,
        Some(multiplicities) => Extended::Matrix(ExtendedMatrix {
            rows: config.degrees().to_vec(),
            multiplicities,
        }),
    })
}

impl ExtendedMatrix {
    pub fn order(&self) -> usize {
        self.multiplicities.iter().map(|&m| m as usize).sum()
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn materialize(&self) -> Result<SquareMatrix> {
        let rows = self
            .rows
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(row, &mu)| {
                std::iter::repeat(row.iter().map(|&q| i64::from(q)).collect::<Vec<_>>()).take(mu as usize)
            })
            .collect();
        SquareMatrix::from_rows(rows)
    }

    /// `prod_i mu_i!`.
    pub fn normalization(&self) -> Result<i128> {
        self.multiplicities.iter().try_fold(1i128, |acc, &mu| {
            (1..=i128::from(mu))
                .try_fold(acc, |a, x| a.checked_mul(x))
                .ok_or(Error::Overflow("normalization factorial"))
        })
    }

    /// Permanent by column expansion over row classes: the minor left after
    /// removing any copy of row `i` is the same, so the `rem_i` copies
    /// contribute `rem_i * a_ic * perm(rem - e_i)` together. Sub-results are
    /// keyed by the remaining multiplicity vector, which is meaningful
    /// across every triple of one configuration.
    pub fn grouped_permanent(&self, cache: &mut PermanentCache) -> Result<i128> {
        let k = self.rows.first().map_or(0, Vec::len);
        if self.order() != k {
            return Err(Error::NonSquare {
                rows: self.order(),
                row: 0,
                cols: k,
            });
        }
        let mut remaining: Vec<u8> = self
            .multiplicities
            .iter()
            .map(|&m| u8::try_from(m).map_err(|_| Error::Overflow("row multiplicity")))
            .collect::<Result<_>>()?;
        self.grouped(&mut remaining, k, cache)
    }

    fn grouped(&self, remaining: &mut Vec<u8>, left: usize, cache: &mut PermanentCache) -> Result<i128> {
        if left == 0 {
            return Ok(1);
        }
        if let Some(&v) = cache.map.get(remaining.as_slice()) {
            cache.hits += 1;
            return Ok(v);
        }
        cache.misses += 1;
        let col = self.rows[0].len() - left;
        let mut total: i128 = 0;
        for i in 0..self.rows.len() {
            let rem = remaining[i];
            let a = self.rows[i][col];
            if rem == 0 || a == 0 {
                continue;
            }
            remaining[i] -= 1;
            let minor = self.grouped(remaining, left - 1, cache);
            remaining[i] += 1;
            let minor = minor?;
            total = i128::from(rem)
                .checked_mul(i128::from(a))
                .and_then(|w| w.checked_mul(minor))
                .and_then(|w| total.checked_add(w))
                .ok_or(Error::Overflow("grouped permanent"))?;
        }
        cache.map.insert(remaining.clone(), total);
        Ok(total)
    }
}

/// Sub-permanent cache for the triples of a single configuration. Never
/// share one between configurations.
#[derive(Debug, Default)]
pub struct PermanentCache {
    map: HashMap<Vec<u8>, i128>,
    hits: u64,
    misses: u64,
}

impl PermanentCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }
}

/// How the permanent of each extended matrix is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Row-class expansion with a per-configuration cache.
    #[default]
    Grouped,
    /// Materialize the `k x k` matrix and use a generic permanent.
    Materialized(Method),
}

/// `d_rst` for one (zero-based) triple.
pub fn triple_intersection(config: &ReducedConfiguration, triple: Triple) -> Result<i64> {
    triple_intersection_with(config, triple, Strategy::Grouped, &mut PermanentCache::new())
}

pub fn triple_intersection_with(
    config: &ReducedConfiguration,
    triple: Triple,
    strategy: Strategy,
    cache: &mut PermanentCache,
) -> Result<i64> {
    let ext = match build_extended(config, triple)? {
        Extended::Vanishing => return Ok(0),
        Extended::Matrix(ext) => ext,
    };
    let perm = match strategy {
        Strategy::Grouped => ext.grouped_permanent(cache)?,
        Strategy::Materialized(method) => permanent_with(&ext.materialize()?, method)?,
    };
    let value = exact_div("permanent normalization", perm, ext.normalization()?)?;
    to_i64("intersection number", value)
}

pub fn intersection_tensor(config: &ReducedConfiguration) -> Result<SymmetricRank3Tensor> {
    intersection_tensor_with(config, Strategy::Grouped)
}

pub fn intersection_tensor_with(config: &ReducedConfiguration, strategy: Strategy) -> Result<SymmetricRank3Tensor> {
    let mut tensor = SymmetricRank3Tensor::zeros(config.m());
    let mut cache = PermanentCache::new();
    let triples: Vec<Triple> = tensor.sorted_triples().collect();
    for triple in triples {
        let v = triple_intersection_with(config, triple, strategy, &mut cache)?;
        tensor.set(triple, v);
    }
    Ok(tensor)
}

fn class_product(config: &ReducedConfiguration) -> Result<(Truncation, TruncatedPoly)> {
    let caps = config
        .ambient_dims()
        .iter()
        .map(|&n| u8::try_from(n).map_err(|_| Error::Overflow("ambient dimension")))
        .collect::<Result<Vec<_>>>()?;
    let trunc = Truncation::per_variable(caps);
    let mut product = TruncatedPoly::one(&trunc);
    for j in 0..config.k() {
        let coeffs: Vec<i128> = (0..config.m()).map(|i| i128::from(config.degree(i, j))).collect();
        product = product.mul(&TruncatedPoly::linear(&trunc, 0, &coeffs))?;
    }
    Ok((trunc, product))
}

fn top_coefficient(
    config: &ReducedConfiguration,
    trunc: &Truncation,
    product: &TruncatedPoly,
    triple: Triple,
) -> Result<i64> {
    let m = config.m();
    let mut exps = vec![0u8; m];
    for index in [triple.0, triple.1, triple.2] {
        exps[index] += 1;
    }
    let full = product.mul(&TruncatedPoly::monomial(trunc, &exps, 1))?;
    let top: Vec<u8> = config.ambient_dims().iter().map(|&n| n as u8).collect();
    to_i64("oracle intersection number", full.coefficient(&top))
}

/// `d_rst` read off as a coefficient in `Z[x]/(x_i^{n_i+1})`.
pub fn triple_intersection_oracle(config: &ReducedConfiguration, triple: Triple) -> Result<i64> {
    for index in [triple.0, triple.1, triple.2] {
        if index >= config.m() {
            return Err(Error::IndexOutOfRange {
                index: index + 1,
                dim: config.m(),
            });
        }
    }
    let (trunc, product) = class_product(config)?;
    top_coefficient(config, &trunc, &product, triple)
}

/// Whole tensor via the coefficient route, sharing one product of classes.
pub fn intersection_tensor_oracle(config: &ReducedConfiguration) -> Result<SymmetricRank3Tensor> {
    let (trunc, product) = class_product(config)?;
    let mut tensor = SymmetricRank3Tensor::zeros(config.m());
    let triples: Vec<Triple> = tensor.sorted_triples().collect();
    for triple in triples {
        tensor.set(triple, top_coefficient(config, &trunc, &product, triple)?);
    }
    Ok(tensor)
}
