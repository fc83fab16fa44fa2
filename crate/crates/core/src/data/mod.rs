//! Instance files, instance generation, result records and metrics.

pub mod format;
pub mod generate;
pub mod metrics;
pub mod records;
pub mod trajectory;

pub use format::{parse_instance, read_instance_file, serialize_instance};
pub use generate::{generate_instance, CorrelationClass, DatasetSpec};
pub use metrics::{compute_metrics, mu_histogram, reaches_optimum, Metrics, MuBin};
pub use records::{
    read_records_csv, read_records_jsonl, write_records_csv, write_records_jsonl, BenchRecord,
};
pub use trajectory::{read_trajectory_csv, write_trajectory_csv, TrajectoryRow};
