//! The invariant battery run by `cicy check`.
//!
//! For each favorable (or unlabelled) record it cross-checks the permanent
//! route against coefficient extraction, the closed-form Chern classes
//! against the series expansion, the Euler characteristic against the Hodge
//! numbers, and the invariants under random relabellings of factors and
//! polynomials.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chern::{chern2_matrix, chern3_tensor, chern_data, chern_series_oracle};
use crate::config::ReducedConfiguration;
use crate::dataset::DatasetRecord;
use crate::error::{Error, Result};
use crate::intersection::{intersection_tensor, intersection_tensor_oracle, SymmetricRank3Tensor};
use crate::invariants::{gcd_invariants, Convention, GcdInvariants};
use crate::random::random_permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub permutations: usize,
    pub seed: u64,
    pub convention: Convention,
    pub workers: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            permutations: 10,
            seed: 0x5eed,
            convention: Convention::Literal,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    Validation,
    /// A computation error, including inexact divisions.
    Computation,
    OracleMismatch,
    ChernSeriesMismatch,
    FirstChernNonzero,
    EulerHodge,
    PermutationEquivariance,
    PermutationInvariance,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Validation => "validation",
            CheckKind::Computation => "computation",
            CheckKind::OracleMismatch => "oracle-mismatch",
            CheckKind::ChernSeriesMismatch => "chern-series-mismatch",
            CheckKind::FirstChernNonzero => "first-chern-nonzero",
            CheckKind::EulerHodge => "euler-hodge",
            CheckKind::PermutationEquivariance => "permutation-equivariance",
            CheckKind::PermutationInvariance => "permutation-invariance",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckViolation {
    pub id: String,
    pub kind: CheckKind,
    pub detail: String,
}

impl fmt::Display for CheckViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.id, self.kind, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: usize,
    pub skipped: usize,
    pub inexact_divisions: usize,
    pub violations: Vec<CheckViolation>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_all(records: &[DatasetRecord], options: CheckOptions) -> Result<CheckReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.max(1))
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    let per_record: Vec<Option<Vec<CheckViolation>>> = pool.install(|| {
        records
            .par_iter()
            .enumerate()
            .map(|(i, rec)| check_record(rec, i as u64, &options))
            .collect()
    });
    let mut report = CheckReport::default();
    for outcome in per_record {
        match outcome {
            None => report.skipped += 1,
            Some(v) => {
                report.checked += 1;
                report.inexact_divisions += v
                    .iter()
                    .filter(|x| x.kind == CheckKind::Computation && x.detail.contains("inexact division"))
                    .count();
                report.violations.extend(v);
            }
        }
    }
    Ok(report)
}

/// Violations for one record, or `None` if it is known to be unfavorable.
/// `salt` decorrelates the permutation streams of different records.
pub fn check_record(rec: &DatasetRecord, salt: u64, options: &CheckOptions) -> Option<Vec<CheckViolation>> {
    if rec.favorable == Some(false) {
        return None;
    }
    let mut out = Vec::new();
    let mut flag = |kind, detail: String| {
        out.push(CheckViolation {
            id: rec.id().to_owned(),
            kind,
            detail,
        })
    };
    let reduced = match rec.config.reduce() {
        Ok(r) => r,
        Err(e) => {
            flag(CheckKind::Validation, e.to_string());
            return Some(out);
        }
    };
    if let Err(e) = battery(rec, &reduced, salt, options, &mut flag) {
        flag(CheckKind::Computation, e.to_string());
    }
    Some(out)
}

fn battery(
    rec: &DatasetRecord,
    reduced: &ReducedConfiguration,
    salt: u64,
    options: &CheckOptions,
    flag: &mut impl FnMut(CheckKind, String),
) -> Result<()> {
    let tensor = intersection_tensor(reduced)?;
    let oracle = intersection_tensor_oracle(reduced)?;
    if let Some(((r, s, t), v)) = tensor.entries().find(|&((r, s, t), v)| oracle.get(r, s, t) != v) {
        flag(
            CheckKind::OracleMismatch,
            format!(
                "d_({} {} {}): permanent {} vs coefficient {}",
                r + 1,
                s + 1,
                t + 1,
                v,
                oracle.get(r, s, t)
            ),
        );
    }

    let series = chern_series_oracle(reduced)?;
    if series.c1.iter().any(|&c| c != 0) {
        flag(CheckKind::FirstChernNonzero, format!("c1 = {:?}", series.c1));
    }
    let c2 = chern2_matrix(reduced);
    let c3 = chern3_tensor(reduced);
    let c2_mismatch = c2.iter().enumerate().find_map(|(r, row)| {
        row.iter()
            .enumerate()
            .find(|&(s, &v)| series.c2[r][s] * 2 != i128::from(v).into())
            .map(|(s, &v)| (r, s, v))
    });
    if let Some((r, s, v)) = c2_mismatch {
        flag(
            CheckKind::ChernSeriesMismatch,
            format!(
                "2[c2]_({} {}): closed form {} vs series {}",
                r + 1,
                s + 1,
                v,
                series.c2[r][s] * 2
            ),
        );
    }
    if let Some(((r, s, t), v)) = c3
        .entries()
        .find(|&((r, s, t), v)| series.c3(r, s, t) * 3 != i128::from(v).into())
    {
        flag(
            CheckKind::ChernSeriesMismatch,
            format!(
                "3[c3]_({} {} {}): closed form {} vs series {}",
                r + 1,
                s + 1,
                t + 1,
                v,
                series.c3(r, s, t) * 3
            ),
        );
    }

    let chern = chern_data(reduced, &tensor)?;
    if let Some(hodge) = rec.hodge {
        if chern.euler != hodge.euler() {
            flag(
                CheckKind::EulerHodge,
                format!(
                    "euler {} but 2(h11 - h21) = 2({} - {}) = {}",
                    chern.euler,
                    hodge.h11,
                    hodge.h21,
                    hodge.euler()
                ),
            );
        }
    }

    let gcds = gcd_invariants(&tensor, &chern.c2_contracted, options.convention)?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    for _ in 0..options.permutations {
        let rows = random_permutation(&mut rng, reduced.m());
        let cols = random_permutation(&mut rng, reduced.k());
        let permuted = reduced.permuted(&rows, &cols)?.reduce()?;
        let (p_tensor, p_gcds) = invariants_of(&permuted, options.convention)?;
        if p_tensor != tensor.permuted(&rows) {
            flag(
                CheckKind::PermutationEquivariance,
                format!("rows {rows:?} cols {cols:?}: tensor is not the relabelled original"),
            );
        }
        if p_gcds != gcds {
            flag(
                CheckKind::PermutationInvariance,
                format!("rows {rows:?} cols {cols:?}: {gcds:?} became {p_gcds:?}"),
            );
        }
    }
    Ok(())
}

fn invariants_of(
    config: &ReducedConfiguration,
    convention: Convention,
) -> Result<(SymmetricRank3Tensor, GcdInvariants)> {
    let tensor = intersection_tensor(config)?;
    let chern = chern_data(config, &tensor)?;
    let gcds = gcd_invariants(&tensor, &chern.c2_contracted, convention)?;
    Ok((tensor, gcds))
}
