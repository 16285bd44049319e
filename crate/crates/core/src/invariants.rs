//! gcd divisibility invariants of the intersection form and second Chern
//! class, and the topological key built from them.
//!
//! With `gcd(empty) = 0` and `gcd(0, a) = |a|`:
//!
//! * `d1 = gcd { d_rst }`
//! * `d2 = gcd { d_rrs : all r, s } u { 2 d_rst : r < s < t }`
//! * `d3 = gcd { d_rrr } u { 3 (d_rrs + d_rss), 3 (d_rrs - d_rss) : r < s } u { 6 d_rst : r < s < t }`
//!   under [`Convention::Literal`], or with `{ 3 d_rrs : r != s }` in place of
//!   the middle family under [`Convention::CubicForm`] (the coefficients of
//!   the cubic form `d(x, x, x)`).
//! * `dp = gcd { [c2]_t }`

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::DatasetRecord;
use crate::error::{Error, Result};
use crate::intersection::SymmetricRank3Tensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    #[default]
    Literal,
    CubicForm,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Literal => "literal",
            Convention::CubicForm => "cubic-form",
        })
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(Convention::Literal),
            "cubic-form" => Ok(Convention::CubicForm),
            _ => Err(Error::Parse {
                what: "invariant convention",
                value: s.to_owned(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GcdInvariants {
    pub d1: u64,
    pub d2: u64,
    pub d3: u64,
    pub dp: u64,
}

#[derive(Default)]
struct Gcd(u64);

impl Gcd {
    fn push(&mut self, v: i128) {
        let v = u64::try_from(v.unsigned_abs()).expect("gcd input fits in u64");
        self.0 = self.0.gcd(&v);
    }
}

pub fn gcd_invariants(
    tensor: &SymmetricRank3Tensor,
    c2_contracted: &[i64],
    convention: Convention,
) -> Result<GcdInvariants> {
    let h = tensor.dim();
    if c2_contracted.len() != h {
        return Err(Error::DimensionMismatch {
            context: "gcd invariants",
            expected: h,
            got: c2_contracted.len(),
        });
    }
    let d = |r: usize, s: usize, t: usize| i128::from(tensor.get(r, s, t));

    let mut d1 = Gcd::default();
    for (_, v) in tensor.entries() {
        d1.push(i128::from(v));
    }

    let mut d2 = Gcd::default();
    for r in 0..h {
        for s in 0..h {
            d2.push(d(r, r, s));
        }
    }
    for_distinct(h, |r, s, t| d2.push(2 * d(r, s, t)));

    let mut d3 = Gcd::default();
    for r in 0..h {
        d3.push(d(r, r, r));
    }
    for r in 0..h {
        for s in r + 1..h {
            match convention {
                Convention::Literal => {
                    d3.push(3 * (d(r, r, s) + d(r, s, s)));
                    d3.push(3 * (d(r, r, s) - d(r, s, s)));
                }
                Convention::CubicForm => {
                    d3.push(3 * d(r, r, s));
                    d3.push(3 * d(r, s, s));
                }
            }
        }
    }
    for_distinct(h, |r, s, t| d3.push(6 * d(r, s, t)));

    let mut dp = Gcd::default();
    for &c in c2_contracted {
        dp.push(i128::from(c));
    }

    Ok(GcdInvariants {
        d1: d1.0,
        d2: d2.0,
        d3: d3.0,
        dp: dp.0,
    })
}

fn for_distinct(h: usize, mut f: impl FnMut(usize, usize, usize)) {
    for r in 0..h {
        for s in r + 1..h {
            for t in s + 1..h {
                f(r, s, t);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hodge {
    pub h11: u32,
    pub h21: u32,
}

impl Hodge {
    /// `2 (h11 - h21)`.
    pub fn euler(self) -> i64 {
        2 * (i64::from(self.h11) - i64::from(self.h21))
    }
}

/// `(h11, h21, d1, d2, d3, dp)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantTuple {
    pub h11: u32,
    pub h21: u32,
    pub d1: u64,
    pub d2: u64,
    pub d3: u64,
    pub dp: u64,
}

impl InvariantTuple {
    pub fn new(hodge: Hodge, gcds: GcdInvariants) -> Self {
        InvariantTuple {
            h11: hodge.h11,
            h21: hodge.h21,
            d1: gcds.d1,
            d2: gcds.d2,
            d3: gcds.d3,
            dp: gcds.dp,
        }
    }
}

impl fmt::Display for InvariantTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {}, {})",
            self.h11, self.h21, self.d1, self.d2, self.d3, self.dp
        )
    }
}

/// Assembles the key of a computed record.
pub fn topological_key(record: &DatasetRecord) -> Result<InvariantTuple> {
    let hodge = record
        .hodge
        .ok_or_else(|| Error::MissingHodge(record.id().to_owned()))?;
    let gcds = record
        .invariants
        .ok_or_else(|| Error::NotComputed(record.id().to_owned()))?;
    Ok(InvariantTuple::new(hodge, gcds))
}

/// Records grouped by key. Bucket member ids keep input order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Classification {
    pub buckets: BTreeMap<InvariantTuple, Vec<String>>,
    /// Ids of records without a key.
    pub unclassified: Vec<String>,
}

impl Classification {
    pub fn bucket_count(&self) -> usize {
        self.buckets.len()
    }

    /// bucket size -> number of buckets of that size.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for ids in self.buckets.values() {
            *out.entry(ids.len()).or_insert(0) += 1;
        }
        out
    }
}

type Partial = (BTreeMap<InvariantTuple, Vec<(usize, String)>>, Vec<(usize, String)>);

pub fn classify(records: &[DatasetRecord]) -> Classification {
    let (buckets, unclassified): Partial = records
        .par_iter()
        .enumerate()
        .fold(Partial::default, |mut acc, (i, rec)| {
            match rec.tuple {
                Some(key) => acc.0.entry(key).or_default().push((i, rec.id().to_owned())),
                None => acc.1.push((i, rec.id().to_owned())),
            }
            acc
        })
        .reduce(Partial::default, |mut a, b| {
            for (key, mut ids) in b.0 {
                a.0.entry(key).or_default().append(&mut ids);
            }
            a.1.extend(b.1);
            a
        });
    let strip = |mut v: Vec<(usize, String)>| {
        v.sort_unstable_by_key(|(i, _)| *i);
        v.into_iter().map(|(_, id)| id).collect::<Vec<_>>()
    };
    Classification {
        buckets: buckets.into_iter().map(|(k, v)| (k, strip(v))).collect(),
        unclassified: strip(unclassified),
    }
}
