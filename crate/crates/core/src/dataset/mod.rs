//! Records, ingestion, batch computation and export.

mod export;
mod features;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chern::{chern_data, ChernData};
use crate::config::ConfigurationMatrix;
use crate::error::{Error, Result};
use crate::intersection::{intersection_tensor, SymmetricRank3Tensor};
use crate::invariants::{gcd_invariants, Convention, GcdInvariants, Hodge, InvariantTuple};

pub use export::{read_json, write_csv, write_json, ExportDocument, CSV_HEADER};
pub use features::{export_features, feature_row, FeatureFrame, FeatureManifest, FeatureReport};
pub use parse::{parse_config_list, InputFormat, ParseOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", content = "reason", rename_all = "kebab-case")]
pub enum Status {
    Pending,
    Computed,
    Skipped(String),
    Failed(String),
}

/// One manifold: its configuration, ingested Hodge numbers and everything
/// computed from them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub config: ConfigurationMatrix,
    pub hodge: Option<Hodge>,
    /// `h11 == m`; unknown without Hodge data.
    pub favorable: Option<bool>,
    pub tensor: Option<SymmetricRank3Tensor>,
    pub chern: Option<ChernData>,
    pub invariants: Option<GcdInvariants>,
    pub tuple: Option<InvariantTuple>,
    pub status: Status,
}

impl DatasetRecord {
    pub fn new(config: ConfigurationMatrix) -> Self {
        DatasetRecord {
            config,
            hodge: None,
            favorable: None,
            tensor: None,
            chern: None,
            invariants: None,
            tuple: None,
            status: Status::Pending,
        }
    }

    pub fn id(&self) -> &str {
        self.config.id()
    }

    pub fn set_hodge(&mut self, hodge: Hodge) {
        self.hodge = Some(hodge);
        self.favorable = Some(hodge.h11 as usize == self.config.m());
    }

    pub fn is_computed(&self) -> bool {
        self.status == Status::Computed
    }
}

/// A per-record problem. Never aborts a batch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub id: Option<String>,
    pub line: Option<usize>,
    pub message: String,
}

impl Diagnostic {
    pub fn for_record(id: &str, message: impl Into<String>) -> Self {
        Diagnostic {
            id: Some(id.to_owned()),
            line: None,
            message: message.into(),
        }
    }

    pub fn at_line(line: usize, message: impl Into<String>) -> Self {
        Diagnostic {
            id: None,
            line: Some(line),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        if let Some(id) = &self.id {
            write!(f, "{id}: ")?;
        }
        f.write_str(&self.message)
    }
}

pub type HodgeTable = BTreeMap<String, Hodge>;

/// Reads `id,h11,h21` CSV with a header row.
pub fn read_hodge_table<R: Read>(reader: R) -> Result<HodgeTable> {
    #[derive(Deserialize)]
    struct Row {
        id: String,
        h11: u32,
        h21: u32,
    }
    let mut table = HodgeTable::new();
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    for row in rdr.deserialize() {
        let row: Row = row?;
        let hodge = Hodge {
            h11: row.h11,
            h21: row.h21,
        };
        if table.insert(row.id.clone(), hodge).is_some() {
            return Err(Error::DuplicateId(row.id));
        }
    }
    Ok(table)
}

/// Attaches Hodge numbers by id and sets favorability. Records absent from
/// the table are kept and reported.
pub fn join_hodge(records: &mut [DatasetRecord], table: &HodgeTable) -> Vec<Diagnostic> {
    let mut unmatched = Vec::new();
    for rec in records.iter_mut() {
        match table.get(rec.id()) {
            Some(&hodge) => rec.set_hodge(hodge),
            None => unmatched.push(Diagnostic::for_record(rec.id(), "no Hodge numbers in table")),
        }
    }
    unmatched
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComputeOptions {
    pub workers: usize,
    pub convention: Convention,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions {
            workers: 1,
            convention: Convention::Literal,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ComputeReport {
    /// Wall time per record, in input order.
    pub timings: Vec<Duration>,
    pub diagnostics: Vec<Diagnostic>,
    pub computed: usize,
    pub skipped: usize,
    pub failed: usize,
}

/// Fills tensors, Chern data and invariants of every record that is not
/// known to be unfavorable. Results are independent of `workers`.
pub fn compute_all(records: &mut [DatasetRecord], options: ComputeOptions) -> Result<ComputeReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.max(1))
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    let timings: Vec<Duration> = pool.install(|| {
        records
            .par_iter_mut()
            .map(|rec| {
                let start = Instant::now();
                compute_record(rec, options.convention);
                start.elapsed()
            })
            .collect()
    });

    let mut report = ComputeReport {
        timings,
        ..ComputeReport::default()
    };
    for rec in records.iter() {
        match &rec.status {
            Status::Computed => report.computed += 1,
            Status::Skipped(_) => report.skipped += 1,
            Status::Failed(reason) => {
                report.failed += 1;
                report
                    .diagnostics
                    .push(Diagnostic::for_record(rec.id(), reason.clone()));
            }
            Status::Pending => unreachable!("compute_record always settles a record"),
        }
    }
    Ok(report)
}

/// Computes one record in place.
pub fn compute_record(rec: &mut DatasetRecord, convention: Convention) {
    rec.tensor = None;
    rec.chern = None;
    rec.invariants = None;
    rec.tuple = None;
    if rec.favorable == Some(false) {
        rec.status = Status::Skipped("unfavorable description".to_owned());
        return;
    }
    rec.status = match fill(rec, convention) {
        Ok(()) => Status::Computed,
        Err(e) => Status::Failed(e.to_string()),
    };
}

fn fill(rec: &mut DatasetRecord, convention: Convention) -> Result<()> {
    let reduced = rec.config.reduce()?;
    let tensor = intersection_tensor(&reduced)?;
    let chern = chern_data(&reduced, &tensor)?;
    let gcds = gcd_invariants(&tensor, &chern.c2_contracted, convention)?;
    rec.tuple = rec.hodge.map(|h| InvariantTuple::new(h, gcds));
    rec.invariants = Some(gcds);
    rec.tensor = Some(tensor);
    rec.chern = Some(chern);
    Ok(())
}
