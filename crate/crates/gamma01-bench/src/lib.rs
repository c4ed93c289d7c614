//! Benchmark and verification harness for the `gamma01` generators.
//!
//! Two timing settings are exposed: rebuilding sampler state on every draw
//! ([`run_setting1`]) and bulk generation with one-time initialization
//! ([`run_setting2`]), plus an acceptance-efficiency sweep and a KS
//! verification run. The [`registry`] module is the plugin point for
//! benchmarking external baseline generators next to the built-ins.

pub mod harness;
pub mod records;
pub mod registry;

pub use harness::{ordinal_report, run_setting1, run_setting2};
pub use records::{
    write_benchmark_csv, write_benchmark_json, write_efficiency_rows_csv,
    write_efficiency_rows_json, write_ks_csv, write_ks_json, BenchmarkRecord, EfficiencyRow, KsRow,
    Setting,
};
pub use registry::{BenchTarget, ExternalSampler, PreparedSampler, Registry};

/// The standard eleven-point shape grid, selected on the command line with
/// `--alpha paper-grid`.
pub const DEFAULT_ALPHA_GRID: [f64; 11] = gamma01::verify::ALPHA_GRID;
