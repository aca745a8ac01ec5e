//! The versioned trial-record CSV.
//!
//! A file starts with the line [`SCHEMA_LINE`], then a header naming the
//! [`TrialRecord`] fields in declaration order, then one row per trial.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::BenchError;

pub const SCHEMA_LINE: &str = "# phaseshift-bench trials v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    /// `det`, `lv` or `dense`.
    pub variant: String,
    pub adaptive: bool,
    pub k: usize,
    #[serde(rename = "N")]
    pub n: u64,
    pub sigma: f64,
    pub trial: usize,
    pub seed: u64,
    pub samples: u64,
    pub elapsed_ns: u64,
    pub passes: usize,
    pub exact: bool,
    pub l2_error: f64,
    pub emd1_error: f64,
    /// `target_reached`, `max_passes`, or `complete` for dense rows.
    pub terminated_by: String,
}

pub fn write_records<W: Write>(mut out: W, records: &[TrialRecord]) -> Result<(), BenchError> {
    writeln!(out, "{SCHEMA_LINE}").map_err(csv::Error::from)?;
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record([
        "variant",
        "adaptive",
        "k",
        "N",
        "sigma",
        "trial",
        "seed",
        "samples",
        "elapsed_ns",
        "passes",
        "exact",
        "l2_error",
        "emd1_error",
        "terminated_by",
    ])?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<TrialRecord>, BenchError> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input);
    r.deserialize()
        .map(|row| row.map_err(BenchError::from))
        .collect()
}
