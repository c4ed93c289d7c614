use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use gamma01::uniform::derive_seed;
use gamma01::verify::{efficiency_cell, ks_run};
use gamma01::Algorithm;
use gamma01_bench::{
    ordinal_report, run_setting1, run_setting2, write_benchmark_csv, write_benchmark_json,
    write_efficiency_rows_csv, write_efficiency_rows_json, write_ks_csv, write_ks_json,
    BenchTarget, EfficiencyRow, KsRow, Registry, Setting, DEFAULT_ALPHA_GRID,
};

#[derive(Parser)]
#[command(
    name = "gamma01-bench",
    about = "Benchmark and verification harness for the gamma01 generators",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Measure acceptance efficiency against the theoretical envelope densities
    Efficiency(EfficiencyArgs),
    /// Time single-draw generation: sampler state is rebuilt on every draw
    Bench1(BenchArgs),
    /// Time bulk generation: sampler state is built once per (generator, shape)
    Bench2(BenchArgs),
    /// Kolmogorov-Smirnov verification of generator output
    Ks(CommonArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Shape parameter in (0,1); repeatable. The value `paper-grid` expands
    /// to the standard 11-point grid {0.01, 0.1, ..., 0.9, 0.99}, which is
    /// also the default.
    #[arg(long = "alpha", value_name = "ALPHA|paper-grid")]
    alpha: Vec<String>,

    /// Generator id (alg1, alg2, alg3-star, alg3-unit, a registered baseline,
    /// or `all`); repeatable.
    #[arg(long = "algo", value_name = "ID", default_value = "all")]
    algo: Vec<String>,

    /// Variates per (generator, shape) cell.
    #[arg(long, default_value_t = 1_000_000)]
    n: u64,

    /// Base seed; every cell derives its own stream from it.
    #[arg(long, default_value_t = 12345)]
    seed: u64,

    /// Output path; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Timing repeats per cell; the mean is reported.
    #[arg(long, default_value_t = 3)]
    repeats: u32,
}

#[derive(Args)]
struct EfficiencyArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Run the (generator, shape) cells on a thread pool. Only the
    /// efficiency sweep may run in parallel; timing is always
    /// single-threaded.
    #[arg(long)]
    parallel: bool,
}

fn parse_alphas(raw: &[String]) -> Result<Vec<f64>> {
    if raw.is_empty() {
        return Ok(DEFAULT_ALPHA_GRID.to_vec());
    }
    let mut alphas = Vec::new();
    for item in raw {
        if item == "paper-grid" {
            alphas.extend_from_slice(&DEFAULT_ALPHA_GRID);
        } else {
            let value: f64 = item.parse().with_context(|| {
                format!("--alpha {item:?} is neither a number nor `paper-grid`")
            })?;
            if !(value > 0.0 && value < 1.0) {
                bail!("--alpha {value} outside the open interval (0,1)");
            }
            alphas.push(value);
        }
    }
    Ok(alphas)
}

fn resolve_targets(registry: &Registry, raw: &[String]) -> Result<Vec<BenchTarget>> {
    let mut targets: Vec<BenchTarget> = Vec::new();
    for name in raw {
        let resolved = registry
            .resolve(name)
            .with_context(|| format!("unknown generator {name:?}"))?;
        for target in resolved {
            if !targets.iter().any(|t| t.id() == target.id()) {
                targets.push(target);
            }
        }
    }
    Ok(targets)
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) => {
            let file = File::create(p)
                .with_context(|| format!("cannot create output file {}", p.display()))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn builtin_algorithms(targets: &[BenchTarget]) -> Result<Vec<Algorithm>> {
    targets
        .iter()
        .map(|t| match t {
            BenchTarget::Builtin(a) => Ok(*a),
            BenchTarget::External(e) => bail!(
                "generator {:?} has no theoretical envelope density; \
                 the efficiency and ks subcommands support built-ins only",
                e.id()
            ),
        })
        .collect()
}

fn run_efficiency(args: &EfficiencyArgs, registry: &Registry) -> Result<()> {
    let alphas = parse_alphas(&args.common.alpha)?;
    let algorithms = builtin_algorithms(&resolve_targets(registry, &args.common.algo)?)?;
    let cells: Vec<(usize, Algorithm, f64)> = algorithms
        .iter()
        .flat_map(|&a| alphas.iter().map(move |&alpha| (a, alpha)))
        .enumerate()
        .map(|(i, (a, alpha))| (i, a, alpha))
        .collect();
    let run_one = |&(i, algorithm, alpha): &(usize, Algorithm, f64)| -> Result<EfficiencyRow> {
        let report = efficiency_cell(
            algorithm,
            alpha,
            args.common.n,
            derive_seed(args.common.seed, i as u64),
        )?;
        Ok(EfficiencyRow::from(report))
    };
    let rows: Result<Vec<EfficiencyRow>> = if args.parallel {
        cells.par_iter().map(run_one).collect()
    } else {
        cells.iter().map(run_one).collect()
    };
    let rows = rows?;
    let mut out = open_output(&args.common.out)?;
    match args.common.format {
        OutputFormat::Csv => write_efficiency_rows_csv(&mut out, &rows)?,
        OutputFormat::Json => write_efficiency_rows_json(&mut out, &rows)?,
    }
    out.flush()?;
    let worst = rows.iter().map(|r| r.rel_error).fold(0.0f64, f64::max);
    eprintln!(
        "efficiency: {} cells at n={}, worst relative error {:.3e}",
        rows.len(),
        args.common.n,
        worst
    );
    Ok(())
}

fn run_bench(setting: Setting, args: &BenchArgs, registry: &Registry) -> Result<()> {
    if args.repeats < 1 {
        bail!("--repeats must be at least 1");
    }
    let alphas = parse_alphas(&args.common.alpha)?;
    let targets = resolve_targets(registry, &args.common.algo)?;
    let (records, sink) = match setting {
        Setting::SingleDraw => run_setting1(
            &targets,
            &alphas,
            args.common.n,
            args.repeats,
            args.common.seed,
        ),
        Setting::Bulk => run_setting2(
            &targets,
            &alphas,
            args.common.n,
            args.repeats,
            args.common.seed,
        ),
    };
    let mut out = open_output(&args.common.out)?;
    match args.common.format {
        OutputFormat::Csv => write_benchmark_csv(&mut out, &records)?,
        OutputFormat::Json => write_benchmark_json(&mut out, &records)?,
    }
    out.flush()?;
    // Anti-elision sink; also a cheap cross-run reproducibility witness.
    eprintln!("sink: {sink:016x}");
    for line in ordinal_report(setting, &records) {
        eprintln!("{line}");
    }
    Ok(())
}

fn run_ks(args: &CommonArgs, registry: &Registry) -> Result<()> {
    let alphas = parse_alphas(&args.alpha)?;
    let algorithms = builtin_algorithms(&resolve_targets(registry, &args.algo)?)?;
    if args.n < 100 {
        bail!("--n must be at least 100 for the KS test");
    }
    let mut rows = Vec::new();
    for (i, &algorithm) in algorithms.iter().enumerate() {
        for (j, &alpha) in alphas.iter().enumerate() {
            let seed = derive_seed(args.seed, (i * 1009 + j) as u64);
            let cell = ks_run(algorithm, alpha, args.n as usize, seed)?;
            rows.push(KsRow::from(cell));
        }
    }
    let mut out = open_output(&args.out)?;
    match args.format {
        OutputFormat::Csv => write_ks_csv(&mut out, &rows)?,
        OutputFormat::Json => write_ks_json(&mut out, &rows)?,
    }
    out.flush()?;
    let failures = rows.iter().filter(|r| !r.pass).count();
    eprintln!(
        "ks: {} cells at n={}, {} below the 0.01 significance level",
        rows.len(),
        args.n,
        failures
    );
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    // Plugin point: external baseline generators would be registered here.
    let registry = Registry::new();
    match &cli.command {
        Command::Efficiency(args) => run_efficiency(args, &registry),
        Command::Bench1(args) => run_bench(Setting::SingleDraw, args, &registry),
        Command::Bench2(args) => run_bench(Setting::Bulk, args, &registry),
        Command::Ks(args) => run_ks(args, &registry),
    }
}
