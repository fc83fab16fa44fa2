use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("brute force limited to {max} items, got {n}")]
    TooManyItems { n: usize, max: usize },

    #[error("dynamic programming needs integral weights and capacity ({0})")]
    NonIntegral(String),

    #[error("dynamic programming table of {cells} cells exceeds the budget of {budget}")]
    CellBudget { cells: u128, budget: u128 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("record schema mismatch: {0}")]
    Schema(String),

    #[error("no records to summarize")]
    EmptyRecords,

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
