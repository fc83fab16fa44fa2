use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const TRAJECTORY_HEADER: &str = "step,x,y,v,w,gamma,case";

/// One iterate of a 2-D run. `case` is 0 inside the feasible region,
/// otherwise the AGA branch (1–3) that would apply at this point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub step: usize,
    pub x: f64,
    pub y: f64,
    pub v: f64,
    pub w: f64,
    pub gamma: f64,
    pub case: u8,
}

pub fn write_trajectory_csv<W: Write>(rows: &[TrajectoryRow], sink: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(sink);
    w.write_record(TRAJECTORY_HEADER.split(','))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_trajectory_csv<R: std::io::Read>(source: R) -> Result<Vec<TrajectoryRow>> {
    let mut rd = csv::Reader::from_reader(source);
    Ok(rd.deserialize().collect::<Result<Vec<_>, _>>()?)
}
