//! Experiment runner for `phaseshift`: parameter sweeps, a dense FFT
//! baseline, CSV trial records and SVG charts.

pub mod baseline;
pub mod clock;
pub mod error;
pub mod plan;
pub mod record;
pub mod runner;
pub mod svg;

pub use baseline::{baseline_dense, DENSE_CAP};
pub use clock::MonotonicClock;
pub use error::BenchError;
pub use plan::{
    parse_size, AdaptiveArg, EngineTemplate, ExperimentPlan, GridPoint, Sweep, VariantArg,
};
pub use record::{read_records, write_records, TrialRecord, SCHEMA_LINE};
pub use runner::{format_summary, run_plan, run_trial, score, summarize, Score, Stat, Summary};
pub use svg::{emit_svg, Table};
