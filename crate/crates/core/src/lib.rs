//! Exact topological data of complete intersection Calabi-Yau threefolds.
//!
//! Given a configuration matrix (degrees of `k` polynomials in a product of
//! `m` projective spaces) this crate computes
//!
//! * the triple intersection numbers `d_rst` as normalized permanents, with
//!   an independent coefficient-extraction oracle ([`intersection`]);
//! * the second and third Chern classes, the contracted second Chern class
//!   and the Euler characteristic ([`chern`]);
//! * gcd divisibility invariants and the topological key
//!   `(h11, h21, d1, d2, d3, dp)` ([`invariants`]);
//!
//! and runs those over whole datasets in parallel ([`dataset`]).
//!
//! ```
//! use cicy_core::{ConfigurationMatrix, intersection_tensor, chern_data};
//!
//! let quintic = ConfigurationMatrix::new("quintic", vec![4], vec![vec![5]])?.reduce()?;
//! let d = intersection_tensor(&quintic)?;
//! assert_eq!(d.get(0, 0, 0), 5);
//! assert_eq!(chern_data(&quintic, &d)?.euler, -200);
//! # Ok::<(), cicy_core::Error>(())
//! ```

pub mod check;
pub mod chern;
pub mod config;
pub mod dataset;
mod error;
pub mod intersection;
pub mod invariants;
pub mod permanent;
pub mod poly;
pub mod random;

pub use chern::{
    chern2_contracted, chern2_matrix, chern3_tensor, chern_data, chern_series_oracle, euler_characteristic, ChernData,
};
pub use config::{ConfigurationMatrix, ReducedConfiguration, ValidationReport, Violation};
pub use dataset::{compute_all, ComputeOptions, ComputeReport, DatasetRecord, Diagnostic, Status};
pub use error::{Error, Result};
pub use intersection::{
    build_extended, intersection_tensor, triple_intersection, triple_intersection_oracle, Extended, ExtendedMatrix,
    SymmetricRank3Tensor, Triple,
};
pub use invariants::{
    classify, gcd_invariants, topological_key, Classification, Convention, GcdInvariants, Hodge, InvariantTuple,
};
pub use permanent::{permanent, SquareMatrix};
