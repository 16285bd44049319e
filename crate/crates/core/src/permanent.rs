//! Exact matrix permanents.
//!
//! Two independent algorithms share one contract:
//!
//! * [`permanent_expansion`]: cofactor expansion along the first column,
//!   skipping zero entries and memoizing sub-permanents by the set of rows
//!   still available. Fast on the sparse matrices coming from configuration
//!   data.
//! * [`permanent_ryser`]: Ryser's inclusion-exclusion formula in Gray-code
//!   order, `O(2^n n)` regardless of sparsity.
//!
//! [`permanent`] picks one by size and density.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Largest order accepted. Both algorithms keep row subsets in a `u64`.
pub const MAX_ORDER: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<i64>,
}

impl SquareMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::NonSquare {
                rows: n,
                row,
                cols: r.len(),
            });
        }
        if n > MAX_ORDER {
            return Err(Error::Overflow("permanent order"));
        }
        Ok(SquareMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.n + col]
    }

    fn density(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        self.data.iter().filter(|&&x| x != 0).count() as f64 / (self.n * self.n) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Auto,
    Expansion,
    Ryser,
}

/// Permanent by the given method.
pub fn permanent_with(m: &SquareMatrix, method: Method) -> Result<i128> {
    match method {
        Method::Auto => permanent(m),
        Method::Expansion => permanent_expansion(m),
        Method::Ryser => permanent_ryser(m),
    }
}

/// Permanent, choosing Ryser for dense matrices of moderate order and the
/// pruned expansion otherwise.
pub fn permanent(m: &SquareMatrix) -> Result<i128> {
    if m.n >= 8 && m.n <= 30 && m.density() > 0.5 {
        permanent_ryser(m)
    } else {
        permanent_expansion(m)
    }
}

/// Cofactor expansion along the first remaining column with zero pruning.
pub fn permanent_expansion(m: &SquareMatrix) -> Result<i128> {
    match m.n {
        0 => return Ok(1),
        1 => return Ok(i128::from(m.get(0, 0))),
        2 => {
            let a = i128::from(m.get(0, 0)) * i128::from(m.get(1, 1));
            let b = i128::from(m.get(0, 1)) * i128::from(m.get(1, 0));
            return a.checked_add(b).ok_or(Error::Overflow("permanent"));
        }
        _ => {}
    }
    let full = (1u64 << m.n) - 1;
    let mut memo = HashMap::new();
    expand(m, full, &mut memo)
}

fn expand(m: &SquareMatrix, rows: u64, memo: &mut HashMap<u64, i128>) -> Result<i128> {
    let remaining = rows.count_ones() as usize;
    if remaining == 0 {
        return Ok(1);
    }
    if let Some(&v) = memo.get(&rows) {
        return Ok(v);
    }
    let col = m.n - remaining;
    let mut total: i128 = 0;
    let mut bits = rows;
    while bits != 0 {
        let row = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = m.get(row, col);
        if a == 0 {
            continue;
        }
        let minor = expand(m, rows & !(1u64 << row), memo)?;
        if minor == 0 {
            continue;
        }
        total = i128::from(a)
            .checked_mul(minor)
            .and_then(|t| total.checked_add(t))
            .ok_or(Error::Overflow("permanent"))?;
    }
    memo.insert(rows, total);
    Ok(total)
}

/// Ryser's formula
/// `perm(A) = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} a_ij`,
/// visiting column subsets in Gray-code order so each step updates the row
/// sums by one column. Runs in `i128` with overflow checks and restarts in
/// arbitrary precision if any intermediate product overflows.
pub fn permanent_ryser(m: &SquareMatrix) -> Result<i128> {
    if m.n == 0 {
        return Ok(1);
    }
    if m.n > 40 {
        return Err(Error::Overflow("Ryser subset count"));
    }
    match ryser_i128(m) {
        Some(v) => Ok(v),
        None => {
            let big = ryser_big(m);
            i128::try_from(big).map_err(|_| Error::Overflow("permanent"))
        }
    }
}

fn ryser_i128(m: &SquareMatrix) -> Option<i128> {
    let n = m.n;
    let mut row_sums = vec![0i128; n];
    let mut total: i128 = 0;
    let mut gray: u64 = 0;
    for step in 1u64..(1u64 << n) {
        let col = step.trailing_zeros() as usize;
        let bit = 1u64 << col;
        let adding = gray & bit == 0;
        gray ^= bit;
        for (i, s) in row_sums.iter_mut().enumerate() {
            let a = i128::from(m.get(i, col));
            *s = if adding { s.checked_add(a)? } else { s.checked_sub(a)? };
        }
        let mut prod: i128 = 1;
        for &s in &row_sums {
            prod = prod.checked_mul(s)?;
            if prod == 0 {
                break;
            }
        }
        let sign_negative = (n - gray.count_ones() as usize) % 2 == 1;
        total = if sign_negative {
            total.checked_sub(prod)?
        } else {
            total.checked_add(prod)?
        };
    }
    Some(total)
}

fn ryser_big(m: &SquareMatrix) -> BigInt {
    let n = m.n;
    let mut row_sums = vec![0i128; n];
    let mut total = BigInt::from(0);
    let mut gray: u64 = 0;
    for step in 1u64..(1u64 << n) {
        let col = step.trailing_zeros() as usize;
        let bit = 1u64 << col;
        let adding = gray & bit == 0;
        gray ^= bit;
        for (i, s) in row_sums.iter_mut().enumerate() {
            let a = i128::from(m.get(i, col));
            if adding {
                *s += a;
            } else {
                *s -= a;
            }
        }
        let mut prod = BigInt::from(1);
        for &s in &row_sums {
            if s == 0 {
                prod = BigInt::from(0);
                break;
            }
            prod *= s;
        }
        if (n - gray.count_ones() as usize) % 2 == 1 {
            total -= prod;
        } else {
            total += prod;
        }
    }
    total
}
