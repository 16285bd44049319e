//! Configuration matrices of complete intersections in products of
//! projective spaces.
//!
//! Orientation is fixed throughout the crate: row `i` belongs to the
//! projective factor `P^{n_i}`, column `j` to the `j`-th defining polynomial,
//! and entry `(i, j)` is the degree of polynomial `j` in the coordinates of
//! factor `i`. Indices are zero-based in the API and one-based in every
//! human-readable message.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of projective factors accepted in a dataset record.
pub const MAX_FACTORS: usize = 15;
/// Largest number of defining polynomials accepted in a dataset record.
pub const MAX_POLYNOMIALS: usize = 18;

/// Complex dimension of the complete intersection.
pub const TARGET_DIMENSION: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawConfiguration", into = "RawConfiguration")]
pub struct ConfigurationMatrix {
    id: String,
    ambient_dims: Vec<u32>,
    degrees: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct RawConfiguration {
    id: String,
    ambient: Vec<u32>,
    degrees: Vec<Vec<u32>>,
}

impl TryFrom<RawConfiguration> for ConfigurationMatrix {
    type Error = Error;

    fn try_from(raw: RawConfiguration) -> Result<Self> {
        ConfigurationMatrix::new(raw.id, raw.ambient, raw.degrees)
    }
}

impl From<ConfigurationMatrix> for RawConfiguration {
    fn from(c: ConfigurationMatrix) -> Self {
        RawConfiguration {
            id: c.id,
            ambient: c.ambient_dims,
            degrees: c.degrees,
        }
    }
}

impl ConfigurationMatrix {
    /// Builds a configuration after checking only its shape: one degree row
    /// per ambient factor and equally long rows. Geometric conditions are
    /// checked by [`validate`](Self::validate).
    pub fn new(id: impl Into<String>, ambient_dims: Vec<u32>, degrees: Vec<Vec<u32>>) -> Result<Self> {
        if ambient_dims.len() != degrees.len() {
            return Err(Error::Shape(format!(
                "{} ambient dimensions but {} degree rows",
                ambient_dims.len(),
                degrees.len()
            )));
        }
        if let Some(first) = degrees.first() {
            let k = first.len();
            if let Some((i, row)) = degrees.iter().enumerate().find(|(_, r)| r.len() != k) {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, row 1 has {}",
                    i + 1,
                    row.len(),
                    k
                )));
            }
        }
        Ok(ConfigurationMatrix {
            id: id.into(),
            ambient_dims,
            degrees,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    /// Number of projective factors.
    pub fn m(&self) -> usize {
        self.ambient_dims.len()
    }

    /// Number of defining polynomials.
    pub fn k(&self) -> usize {
        self.degrees.first().map_or(0, Vec::len)
    }

    pub fn ambient_dims(&self) -> &[u32] {
        &self.ambient_dims
    }

    pub fn degrees(&self) -> &[Vec<u32>] {
        &self.degrees
    }

    pub fn degree(&self, factor: usize, polynomial: usize) -> u32 {
        self.degrees[factor][polynomial]
    }

    /// Checks every defining condition and reports all violations at once.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let (m, k) = (self.m(), self.k());
        if m == 0 || k == 0 {
            violations.push(Violation::Empty { m, k });
        }
        if m > MAX_FACTORS {
            violations.push(Violation::TooManyFactors { m });
        }
        if k > MAX_POLYNOMIALS {
            violations.push(Violation::TooManyPolynomials { k });
        }
        for (i, &n) in self.ambient_dims.iter().enumerate() {
            if n == 0 {
                violations.push(Violation::NonPositiveDimension { row: i });
            }
        }
        let dim_sum: u64 = self.ambient_dims.iter().map(|&n| u64::from(n)).sum();
        let expected = u64::from(TARGET_DIMENSION) + k as u64;
        if m > 0 && dim_sum != expected {
            violations.push(Violation::Codimension { dim_sum, expected });
        }
        for (i, row) in self.degrees.iter().enumerate() {
            let sum: u64 = row.iter().map(|&q| u64::from(q)).sum();
            let expected = u64::from(self.ambient_dims[i]) + 1;
            if sum != expected {
                violations.push(Violation::RowSum { row: i, sum, expected });
            }
        }
        for j in 0..k {
            if self.degrees.iter().all(|row| row[j] == 0) {
                violations.push(Violation::ZeroColumn { column: j });
            }
        }
        ValidationReport { violations }
    }

    /// Strips all-zero columns and re-validates.
    ///
    /// All-zero rows are rejected rather than stripped: a factor `P^n` with
    /// `n >= 1` can never satisfy its row-sum condition with a zero row.
    pub fn reduce(&self) -> Result<ReducedConfiguration> {
        let zero_rows: Vec<usize> = (0..self.m())
            .filter(|&i| self.degrees[i].iter().all(|&q| q == 0))
            .collect();
        if !zero_rows.is_empty() {
            return Err(Error::RejectsInvalid(self.validate()));
        }
        let removed_columns: Vec<usize> = (0..self.k())
            .filter(|&j| self.degrees.iter().all(|row| row[j] == 0))
            .collect();
        let degrees = self
            .degrees
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| !removed_columns.contains(j))
                    .map(|(_, &q)| q)
                    .collect()
            })
            .collect();
        let config = ConfigurationMatrix {
            id: self.id.clone(),
            ambient_dims: self.ambient_dims.clone(),
            degrees,
        };
        let report = config.validate();
        if !report.is_ok() {
            return Err(Error::RejectsInvalid(report));
        }
        Ok(ReducedConfiguration {
            config,
            removed_columns,
        })
    }

    /// Reorders factors and polynomials: new row `i` is old row
    /// `row_perm[i]`, new column `j` is old column `col_perm[j]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        check_permutation(row_perm, self.m())?;
        check_permutation(col_perm, self.k())?;
        let ambient_dims = row_perm.iter().map(|&i| self.ambient_dims[i]).collect();
        let degrees = row_perm
            .iter()
            .map(|&i| col_perm.iter().map(|&j| self.degrees[i][j]).collect())
            .collect();
        Ok(ConfigurationMatrix {
            id: self.id.clone(),
            ambient_dims,
            degrees,
        })
    }
}

fn check_permutation(perm: &[usize], len: usize) -> Result<()> {
    let mut seen = vec![false; len];
    if perm.len() != len {
        return Err(Error::Shape(format!(
            "permutation of length {} for {} items",
            perm.len(),
            len
        )));
    }
    for &p in perm {
        if p >= len || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Shape(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

impl fmt::Display for ConfigurationMatrix {
    /// `[n_1 | q_1^1 .. q_1^k] ...` one bracket per factor.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.degrees.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "[{} |", self.ambient_dims[i])?;
            for q in row {
                write!(f, " {q}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// A validated configuration with zero columns removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedConfiguration {
    config: ConfigurationMatrix,
    removed_columns: Vec<usize>,
}

impl ReducedConfiguration {
    /// Original indices of the columns that were dropped.
    pub fn removed_columns(&self) -> &[usize] {
        &self.removed_columns
    }

    pub fn into_inner(self) -> ConfigurationMatrix {
        self.config
    }
}

impl Deref for ReducedConfiguration {
    type Target = ConfigurationMatrix;

    fn deref(&self) -> &ConfigurationMatrix {
        &self.config
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty { m: usize, k: usize },
    TooManyFactors { m: usize },
    TooManyPolynomials { k: usize },
    NonPositiveDimension { row: usize },
    Codimension { dim_sum: u64, expected: u64 },
    RowSum { row: usize, sum: u64, expected: u64 },
    ZeroColumn { column: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Empty { m, k } => write!(f, "empty configuration ({m}x{k})"),
            Violation::TooManyFactors { m } => {
                write!(f, "{m} projective factors, at most {MAX_FACTORS} allowed")
            }
            Violation::TooManyPolynomials { k } => {
                write!(f, "{k} polynomials, at most {MAX_POLYNOMIALS} allowed")
            }
            Violation::NonPositiveDimension { row } => {
                write!(f, "row {} has ambient dimension 0", row + 1)
            }
            Violation::Codimension { dim_sum, expected } => write!(
                f,
                "ambient dimensions sum to {dim_sum}, expected {expected} (3 + number of polynomials)"
            ),
            Violation::RowSum { row, sum, expected } => {
                write!(f, "row {} sums to {sum}, expected {expected}", row + 1)
            }
            Violation::ZeroColumn { column } => write!(f, "column {} is all zero", column + 1),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(ambient: &[u32], degrees: &[&[u32]]) -> ConfigurationMatrix {
        ConfigurationMatrix::new("t", ambient.to_vec(), degrees.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn quintic_and_bicubic_validate() {
        assert!(cfg(&[4], &[&[5]]).validate().is_ok());
        assert!(cfg(&[2, 2], &[&[3], &[3]]).validate().is_ok());
    }

    #[test]
    fn broken_row_sum_is_named() {
        let report = cfg(&[4], &[&[4]]).validate();
        assert!(!report.is_ok());
        assert!(report.to_string().contains("row 1 sums to 4, expected 5"), "{report}");
    }

    #[test]
    fn codimension_violation() {
        let report = cfg(&[3], &[&[4]]).validate();
        assert!(report.violations().iter().any(|v| matches!(
            v,
            Violation::Codimension {
                dim_sum: 3,
                expected: 4
            }
        )));
    }

    #[test]
    fn all_violations_reported_together() {
        let report = cfg(&[0, 1], &[&[0, 0], &[1, 0]]).validate();
        assert!(report
            .violations()
            .contains(&Violation::NonPositiveDimension { row: 0 }));
        assert!(report.violations().contains(&Violation::ZeroColumn { column: 1 }));
        assert!(report
            .violations()
            .iter()
            .any(|v| matches!(v, Violation::RowSum { row: 0, .. })));
    }

    #[test]
    fn ragged_matrix_rejected_at_construction() {
        let err = ConfigurationMatrix::new("x", vec![1, 1], vec![vec![1, 1], vec![2]]).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
        assert!(ConfigurationMatrix::new("x", vec![1], vec![]).is_err());
    }

    #[test]
    fn size_bounds() {
        let k = MAX_POLYNOMIALS + 1;
        let c = ConfigurationMatrix::new("big", vec![(k + 3) as u32], vec![vec![1; k]]).unwrap();
        assert!(c.validate().violations().contains(&Violation::TooManyPolynomials { k }));
    }

    #[test]
    fn reduce_quintic_is_identity() {
        let q = cfg(&[4], &[&[5]]);
        let r = q.reduce().unwrap();
        assert_eq!(*r, q);
        assert!(r.removed_columns().is_empty());
    }

    #[test]
    fn reduce_strips_appended_zero_column() {
        let bicubic = cfg(&[2, 2], &[&[3], &[3]]);
        let padded = cfg(&[2, 2], &[&[3, 0], &[3, 0]]);
        assert!(!padded.validate().is_ok());
        let r = padded.reduce().unwrap();
        assert_eq!(*r, bicubic);
        assert_eq!(r.removed_columns(), &[1]);
    }

    #[test]
    fn zero_row_never_reduces() {
        let c = cfg(&[4, 1], &[&[5], &[0]]);
        assert!(!c.validate().is_ok());
        assert!(matches!(c.reduce(), Err(Error::RejectsInvalid(_))));
    }

    #[test]
    fn reduce_rejects_invalid() {
        assert!(matches!(cfg(&[4], &[&[4]]).reduce(), Err(Error::RejectsInvalid(_))));
    }

    #[test]
    fn reduce_is_idempotent() {
        let r = cfg(&[1, 4], &[&[0, 2, 0], &[2, 3, 0]]).reduce().unwrap();
        let rr = r.reduce().unwrap();
        assert_eq!(*rr, *r);
    }

    #[test]
    fn permutations_preserve_validity() {
        let c = cfg(&[1, 2, 2], &[&[1, 1], &[3, 0], &[0, 3]]);
        assert!(c.validate().is_ok());
        let p = c.permuted(&[2, 0, 1], &[1, 0]).unwrap();
        assert_eq!(p.ambient_dims(), &[2, 1, 2]);
        assert_eq!(p.degrees()[0], vec![3, 0]);
        assert!(p.validate().is_ok());
        assert!(c.permuted(&[0, 0, 1], &[0, 1]).is_err());
    }

    #[test]
    fn json_shape() {
        let c: ConfigurationMatrix = serde_json::from_str(r#"{"id":"quintic","ambient":[4],"degrees":[[5]]}"#).unwrap();
        assert_eq!(c, cfg(&[4], &[&[5]]).with_id("quintic"));
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"id":"quintic","ambient":[4],"degrees":[[5]]}"#
        );
        assert!(serde_json::from_str::<ConfigurationMatrix>(r#"{"id":"x","ambient":[4,1],"degrees":[[5]]}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(cfg(&[2, 2], &[&[3], &[3]]).to_string(), "[2 | 3] [2 | 3]");
    }
}
