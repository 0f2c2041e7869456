//! Price-table ingestion, the analysis pipeline and report formats on top
//! of `knotmarket-core`.

pub use knotmarket_core as core;

pub mod ingest;
pub mod parallel;
pub mod report;

pub use ingest::{parse_price_table, read_price_table, to_csv};
pub use report::{run_pipeline, windowed_report, PipelineOptions, PipelineReport, WindowedReport};
