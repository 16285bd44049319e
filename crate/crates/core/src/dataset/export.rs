use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::DatasetRecord;
use crate::error::Result;
use crate::invariants::Convention;

pub const CSV_HEADER: [&str; 13] = [
    "id",
    "m",
    "k",
    "h11",
    "h21",
    "favorable",
    "d1",
    "d2",
    "d3",
    "dp",
    "euler",
    "tensor",
    "c2_contracted",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One row per record; fields that were not computed are left empty.
pub fn write_csv<W: Write>(records: &[DatasetRecord], writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    w.write_record(CSV_HEADER)?;
    for rec in records {
        let gcds = rec.invariants;
        let row = [
            rec.id().to_owned(),
            rec.config.m().to_string(),
            rec.config.k().to_string(),
            opt(rec.hodge.map(|h| h.h11)),
            opt(rec.hodge.map(|h| h.h21)),
            opt(rec.favorable),
            opt(gcds.map(|g| g.d1)),
            opt(gcds.map(|g| g.d2)),
            opt(gcds.map(|g| g.d3)),
            opt(gcds.map(|g| g.dp)),
            opt(rec.chern.as_ref().map(|c| c.euler)),
            rec.tensor.as_ref().map(|t| t.to_canonical_string()).unwrap_or_default(),
            rec.chern
                .as_ref()
                .map(|c| c.c2_contracted.iter().map(i64::to_string).collect::<Vec<_>>().join(";"))
                .unwrap_or_default(),
        ];
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Full JSON export. `convention` names the index ranges behind `d2`, `d3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportDocument {
    pub convention: Convention,
    pub records: Vec<DatasetRecord>,
}

pub fn write_json<W: Write>(records: &[DatasetRecord], convention: Convention, mut writer: W) -> Result<()> {
    #[derive(Serialize)]
    struct Doc<'a> {
        convention: Convention,
        records: &'a [DatasetRecord],
    }
    serde_json::to_writer_pretty(&mut writer, &Doc { convention, records })?;
    writer.write_all(b"\n")?;
    Ok(())
}

pub fn read_json<R: Read>(reader: R) -> Result<ExportDocument> {
    Ok(serde_json::from_reader(reader)?)
}
