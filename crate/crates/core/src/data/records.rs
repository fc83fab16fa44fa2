//! Benchmark result rows, persisted as CSV or JSON lines.

use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "algorithm,dataset,items,best_value,optimal_value,shortfall,time_s";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchRecord {
    pub algorithm: String,
    pub dataset: String,
    pub items: usize,
    pub best_value: f64,
    pub optimal_value: f64,
    /// `optimal_value − best_value`.
    pub shortfall: f64,
    pub time_s: f64,
}

impl BenchRecord {
    pub fn new(
        algorithm: impl Into<String>,
        dataset: impl Into<String>,
        items: usize,
        best_value: f64,
        optimal_value: f64,
        time_s: f64,
    ) -> Self {
        Self {
            algorithm: algorithm.into(),
            dataset: dataset.into(),
            items,
            best_value,
            optimal_value,
            shortfall: optimal_value - best_value,
            time_s,
        }
    }
}

pub fn write_records_csv<W: Write>(records: &[BenchRecord], sink: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(sink);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records_csv<R: Read>(source: R) -> Result<Vec<BenchRecord>> {
    let mut rd = csv::Reader::from_reader(source);
    let header = rd.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != CSV_HEADER {
        return Err(Error::Schema(format!("unexpected CSV header {header:?}")));
    }
    rd.deserialize()
        .map(|r| r.map_err(|e| Error::Schema(e.to_string())))
        .collect()
}

pub fn write_records_jsonl<W: Write>(records: &[BenchRecord], mut sink: W) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut sink, r)?;
        sink.write_all(b"\n")?;
    }
    sink.flush()?;
    Ok(())
}

pub fn read_records_jsonl<R: Read>(source: R) -> Result<Vec<BenchRecord>> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(source).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line)
            .map_err(|e| Error::Schema(format!("line {}: {e}", i + 1)))?;
        out.push(rec);
    }
    Ok(out)
}
