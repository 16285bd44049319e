//! Sparse multivariate polynomials over the integers, truncated by a
//! per-variable exponent cap and/or a total-degree cap.
//!
//! This is the arithmetic behind the coefficient-extraction oracles; it
//! shares no code with the permanent route.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Up to this many variables fit in a packed [`Monomial`].
pub const MAX_VARS: usize = 16;

/// Exponent vector packed into 8-bit lanes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_exponents(exps: &[u8]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        Monomial(
            exps.iter()
                .enumerate()
                .fold(0u128, |acc, (i, &e)| acc | (u128::from(e) << (8 * i))),
        )
    }

    pub fn variable(i: usize) -> Self {
        Monomial(1u128 << (8 * i))
    }

    pub fn exponent(self, i: usize) -> u8 {
        (self.0 >> (8 * i)) as u8
    }

    pub fn exponents(self, nvars: usize) -> Vec<u8> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    pub fn degree(self, nvars: usize) -> u32 {
        (0..nvars).map(|i| u32::from(self.exponent(i))).sum()
    }

    /// Product, or `None` if some lane would exceed 255.
    fn checked_mul(self, other: Monomial, nvars: usize) -> Option<Monomial> {
        let mut out = 0u128;
        for i in 0..nvars {
            let e = u16::from(self.exponent(i)) + u16::from(other.exponent(i));
            if e > 255 {
                return None;
            }
            out |= u128::from(e) << (8 * i);
        }
        Some(Monomial(out))
    }
}

/// Which monomials survive multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    caps: Option<Vec<u8>>,
    max_degree: Option<u32>,
}

impl Truncation {
    /// Keep `x_i^e` only for `e <= caps[i]`: the cohomology ring of a product
    /// of projective spaces `P^{caps[0]} x P^{caps[1]} x ...`.
    pub fn per_variable(caps: Vec<u8>) -> Self {
        assert!(caps.len() <= MAX_VARS, "too many variables");
        Truncation {
            caps: Some(caps),
            max_degree: None,
        }
    }

    /// Keep monomials of total degree at most `max_degree` in `nvars` variables.
    pub fn total_degree(nvars: usize, max_degree: u32) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        let cap = u8::try_from(max_degree).unwrap_or(u8::MAX);
        Truncation {
            caps: Some(vec![cap; nvars]),
            max_degree: Some(max_degree),
        }
    }

    pub fn nvars(&self) -> usize {
        self.caps.as_ref().map_or(0, Vec::len)
    }

    fn keeps(&self, mono: Monomial) -> bool {
        let n = self.nvars();
        if let Some(caps) = &self.caps {
            if (0..n).any(|i| mono.exponent(i) > caps[i]) {
                return false;
            }
        }
        self.max_degree.map_or(true, |d| mono.degree(n) <= d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPoly {
    trunc: Truncation,
    terms: HashMap<Monomial, i128>,
}

impl TruncatedPoly {
    pub fn zero(trunc: &Truncation) -> Self {
        TruncatedPoly {
            trunc: trunc.clone(),
            terms: HashMap::new(),
        }
    }

    pub fn constant(trunc: &Truncation, c: i128) -> Self {
        let mut p = Self::zero(trunc);
        p.add_term(Monomial::ONE, c).expect("constant term cannot overflow");
        p
    }

    pub fn one(trunc: &Truncation) -> Self {
        Self::constant(trunc, 1)
    }

    /// `constant + sum_i coeffs[i] * x_i`.
    pub fn linear(trunc: &Truncation, constant: i128, coeffs: &[i128]) -> Self {
        assert_eq!(coeffs.len(), trunc.nvars(), "coefficient count");
        let mut p = Self::constant(trunc, constant);
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::variable(i), c)
                .expect("single term cannot overflow");
        }
        p
    }

    pub fn monomial(trunc: &Truncation, exps: &[u8], coeff: i128) -> Self {
        let mut p = Self::zero(trunc);
        p.add_term(Monomial::from_exponents(exps), coeff)
            .expect("single term cannot overflow");
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u8]) -> i128 {
        self.terms.get(&Monomial::from_exponents(exps)).copied().unwrap_or(0)
    }

    /// Nonzero terms of total degree `degree`, sorted by monomial.
    pub fn homogeneous_part(&self, degree: u32) -> Vec<(Vec<u8>, i128)> {
        let n = self.trunc.nvars();
        let mut out: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree(n) == degree)
            .map(|(m, &c)| (m.exponents(n), c))
            .collect();
        out.sort();
        out
    }

    fn add_term(&mut self, mono: Monomial, coeff: i128) -> Result<()> {
        if coeff == 0 || !self.trunc.keeps(mono) {
            return Ok(());
        }
        let entry = self.terms.entry(mono).or_insert(0);
        *entry = entry
            .checked_add(coeff)
            .ok_or(Error::Overflow("truncated polynomial addition"))?;
        if *entry == 0 {
            self.terms.remove(&mono);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.trunc, other.trunc, "mismatched truncations");
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.add_term(m, c)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.trunc, other.trunc, "mismatched truncations");
        let n = self.trunc.nvars();
        let mut out = Self::zero(&self.trunc);
        for (&ma, &ca) in &self.terms {
            for (&mb, &cb) in &other.terms {
                let Some(mono) = ma.checked_mul(mb, n) else {
                    continue;
                };
                if !self.trunc.keeps(mono) {
                    continue;
                }
                let c = ca
                    .checked_mul(cb)
                    .ok_or(Error::Overflow("truncated polynomial product"))?;
                out.add_term(mono, c)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<Self> {
        let mut out = Self::one(&self.trunc);
        for _ in 0..exp {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `(1 + self)^{-1}` as the geometric series `sum_p (-self)^p`. Requires a
    /// total-degree cap and `self` without constant term, so the series is
    /// finite.
    pub fn inverse_of_one_plus(&self) -> Result<Self> {
        let max_degree = self
            .trunc
            .max_degree
            .expect("geometric series needs a total-degree cap");
        assert_eq!(self.coefficient(&[]), 0, "series argument has a constant term");
        let neg = self.scale(-1)?;
        let mut out = Self::one(&self.trunc);
        let mut power = Self::one(&self.trunc);
        for _ in 0..max_degree {
            power = power.mul(&neg)?;
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: i128) -> Result<Self> {
        let mut out = Self::zero(&self.trunc);
        for (&m, &v) in &self.terms {
            out.add_term(m, v.checked_mul(c).ok_or(Error::Overflow("polynomial scaling"))?)?;
        }
        Ok(out)
    }
}
