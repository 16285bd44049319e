//! Zero-padded configuration matrices and gcd labels for model training.
//!
//! Each feature line holds `rows * cols` comma-separated integers, the
//! padded matrix flattened row-major; each label line holds `d1,d2,d3,dp`
//! for the same record.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{DatasetRecord, Diagnostic};
use crate::config::ConfigurationMatrix;
use crate::error::{Error, Result};
use crate::invariants::Convention;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureFrame {
    pub rows: usize,
    pub cols: usize,
}

impl Default for FeatureFrame {
    fn default() -> Self {
        FeatureFrame { rows: 12, cols: 15 }
    }
}

impl fmt::Display for FeatureFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

impl FromStr for FeatureFrame {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "feature frame (expected RxC)",
            value: s.to_owned(),
        };
        let (r, c) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        let rows: usize = r.trim().parse().map_err(|_| bad())?;
        let cols: usize = c.trim().parse().map_err(|_| bad())?;
        if rows == 0 || cols == 0 {
            return Err(bad());
        }
        Ok(FeatureFrame { rows, cols })
    }
}

/// The configuration copied into the top-left corner of a zero frame.
pub fn feature_row(config: &ConfigurationMatrix, frame: FeatureFrame) -> Result<Vec<u32>> {
    let (m, k) = (config.m(), config.k());
    if m > frame.rows || k > frame.cols {
        return Err(Error::FrameOverflow {
            id: config.id().to_owned(),
            m,
            k,
            rows: frame.rows,
            cols: frame.cols,
        });
    }
    let mut out = vec![0; frame.rows * frame.cols];
    for (i, row) in config.degrees().iter().enumerate() {
        out[i * frame.cols..i * frame.cols + k].copy_from_slice(row);
    }
    Ok(out)
}

/// Written next to the feature and label files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureManifest {
    pub frame: FeatureFrame,
    pub layout: String,
    pub convention: Convention,
    pub label_columns: Vec<String>,
    pub records: usize,
    /// Ids in line order.
    pub ids: Vec<String>,
    /// Ids left out: not computed or not fitting the frame.
    pub excluded: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct FeatureReport {
    pub manifest: FeatureManifest,
    /// Frame overflows. Records that were never computed are excluded
    /// silently.
    pub diagnostics: Vec<Diagnostic>,
}

pub fn export_features<F: Write, L: Write>(
    records: &[DatasetRecord],
    frame: FeatureFrame,
    convention: Convention,
    mut features: F,
    mut labels: L,
) -> Result<FeatureReport> {
    let mut ids = Vec::new();
    let mut excluded = Vec::new();
    let mut diagnostics = Vec::new();
    for rec in records {
        let Some(g) = rec.invariants else {
            excluded.push(rec.id().to_owned());
            continue;
        };
        let row = match feature_row(&rec.config, frame) {
            Ok(row) => row,
            Err(e) => {
                diagnostics.push(Diagnostic::for_record(rec.id(), e.to_string()));
                excluded.push(rec.id().to_owned());
                continue;
            }
        };
        let line = row.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        writeln!(features, "{line}")?;
        writeln!(labels, "{},{},{},{}", g.d1, g.d2, g.d3, g.dp)?;
        ids.push(rec.id().to_owned());
    }
    features.flush()?;
    labels.flush()?;
    Ok(FeatureReport {
        manifest: FeatureManifest {
            frame,
            layout: "row-major".to_owned(),
            convention,
            label_columns: ["d1", "d2", "d3", "dp"].map(String::from).to_vec(),
            records: ids.len(),
            ids,
            excluded,
        },
        diagnostics,
    })
}
