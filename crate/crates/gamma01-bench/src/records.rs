//! Result records and CSV/JSON writers.

use std::io::{self, Write};

use gamma01::verify::{EfficiencyReport, KsCell};
use serde::Serialize;

/// Benchmark setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Setting {
    /// State rebuilt on every draw.
    SingleDraw,
    /// State built once, variates drawn all at once.
    Bulk,
}

impl Setting {
    /// Stable string id for result files.
    pub fn id(&self) -> &'static str {
        match self {
            Setting::SingleDraw => "single_draw",
            Setting::Bulk => "bulk",
        }
    }
}

/// One row of benchmark output.
#[derive(Debug, Clone, Serialize)]
pub struct BenchmarkRecord {
    /// Generator id.
    pub algorithm: String,
    /// Shape parameter.
    pub alpha: f64,
    /// `single_draw` or `bulk`.
    pub setting: String,
    /// Variates generated per repeat.
    pub n: u64,
    /// Mean wall time over the repeats, in seconds.
    pub elapsed_seconds: f64,
    /// Timing repeats averaged.
    pub repeats: u32,
    /// Uniform variates consumed per output (two per rejection-loop pass).
    pub uniforms_per_output: f64,
}

/// Write benchmark records as CSV, columns in record field order.
pub fn write_benchmark_csv<W: Write>(mut w: W, records: &[BenchmarkRecord]) -> io::Result<()> {
    writeln!(
        w,
        "algorithm,alpha,setting,n,elapsed_seconds,repeats,uniforms_per_output"
    )?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{:.6},{},{:.9}",
            r.algorithm,
            r.alpha,
            r.setting,
            r.n,
            r.elapsed_seconds,
            r.repeats,
            r.uniforms_per_output
        )?;
    }
    Ok(())
}

/// Write benchmark records as a JSON array.
pub fn write_benchmark_json<W: Write>(w: W, records: &[BenchmarkRecord]) -> io::Result<()> {
    serde_json::to_writer_pretty(w, records).map_err(io::Error::other)
}

/// One row of KS verification output.
#[derive(Debug, Clone, Serialize)]
pub struct KsRow {
    /// Generator id.
    pub algorithm: String,
    /// Shape parameter.
    pub alpha: f64,
    /// Uniform-source seed.
    pub seed: u64,
    /// Samples entering the test after zero exclusion.
    pub n: u64,
    /// Outputs that underflowed to exactly zero, excluded from the test.
    pub excluded_zeros: u64,
    /// KS statistic.
    pub statistic: f64,
    /// Asymptotic p-value.
    pub p_value: f64,
    /// True when `p_value > 0.01`.
    pub pass: bool,
}

impl From<KsCell> for KsRow {
    fn from(cell: KsCell) -> Self {
        KsRow {
            algorithm: cell.algorithm.id().to_string(),
            alpha: cell.alpha,
            seed: cell.seed,
            n: cell.n as u64,
            excluded_zeros: cell.excluded_zeros,
            statistic: cell.statistic,
            p_value: cell.p_value,
            pass: cell.p_value > 0.01,
        }
    }
}

/// Write KS rows as CSV.
pub fn write_ks_csv<W: Write>(mut w: W, rows: &[KsRow]) -> io::Result<()> {
    writeln!(
        w,
        "algorithm,alpha,seed,n,excluded_zeros,statistic,p_value,pass"
    )?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{:.6e},{:.6e},{}",
            r.algorithm, r.alpha, r.seed, r.n, r.excluded_zeros, r.statistic, r.p_value, r.pass
        )?;
    }
    Ok(())
}

/// Write KS rows as a JSON array.
pub fn write_ks_json<W: Write>(w: W, rows: &[KsRow]) -> io::Result<()> {
    serde_json::to_writer_pretty(w, rows).map_err(io::Error::other)
}

/// Serializable mirror of the library's efficiency report.
#[derive(Debug, Clone, Serialize)]
pub struct EfficiencyRow {
    /// Generator id.
    pub algorithm: String,
    /// Shape parameter.
    pub alpha: f64,
    /// Outputs produced.
    pub n: u64,
    /// Measured uniform pairs per output.
    pub measured: f64,
    /// Theoretical envelope density.
    pub theoretical: f64,
    /// Relative error of measured vs theoretical.
    pub rel_error: f64,
}

impl From<EfficiencyReport> for EfficiencyRow {
    fn from(r: EfficiencyReport) -> Self {
        EfficiencyRow {
            algorithm: r.algorithm.id().to_string(),
            alpha: r.alpha,
            n: r.n_outputs,
            measured: r.pairs_per_output,
            theoretical: r.theoretical,
            rel_error: r.relative_error,
        }
    }
}

/// Write efficiency rows as CSV (same columns as
/// [`gamma01::verify::write_efficiency_csv`]).
pub fn write_efficiency_rows_csv<W: Write>(mut w: W, rows: &[EfficiencyRow]) -> io::Result<()> {
    writeln!(w, "algorithm,alpha,n,measured,theoretical,rel_error")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{:.9},{:.9},{:.3e}",
            r.algorithm, r.alpha, r.n, r.measured, r.theoretical, r.rel_error
        )?;
    }
    Ok(())
}

/// Write efficiency rows as a JSON array.
pub fn write_efficiency_rows_json<W: Write>(w: W, rows: &[EfficiencyRow]) -> io::Result<()> {
    serde_json::to_writer_pretty(w, rows).map_err(io::Error::other)
}
