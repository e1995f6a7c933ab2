//! `mcq` command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use crate::circuit::{dump_stream, generate_stream, CircuitSpec, DEFAULT_TOTAL_GATES};
use crate::complexity::haar_reference;
use crate::runner::{
    output, run_experiment_with, with_threads, ExperimentConfig, ExperimentResult,
    DEFAULT_ENSEMBLE_SIZE, DEFAULT_HAAR_SAMPLES,
};
use crate::topology::{Architecture, Partition};

#[derive(Debug, Parser)]
#[command(name = "mcq", version, about = "Complexity benchmarks for multicore random circuits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Execute an experiment config file.
    Run(RunArgs),
    /// Emit a Haar reference fluctuation curve.
    Haar(HaarArgs),
    /// GPC sweep for one architecture and partition.
    Sweep(SweepArgs),
    /// Dump the gate stream of one circuit.
    Stream(StreamArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Points CSV; the summary is written beside it as `<stem>_summary.csv`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub ensemble: Option<usize>,
    #[arg(long)]
    pub gates: Option<usize>,
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct HaarArgs {
    #[arg(long)]
    pub qubits: usize,
    #[arg(long, default_value_t = DEFAULT_HAAR_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CircuitArgs {
    #[arg(long)]
    pub arch: Architecture,
    #[arg(long)]
    pub cores: usize,
    #[arg(long = "qubits-per-core")]
    pub qubits_per_core: usize,
    #[arg(long, default_value_t = DEFAULT_TOTAL_GATES)]
    pub gates: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    #[arg(long, value_delimiter = ',')]
    pub gpc: Option<Vec<usize>>,
    #[arg(long, default_value_t = DEFAULT_ENSEMBLE_SIZE)]
    pub ensemble: usize,
    #[arg(long = "haar-samples", default_value_t = DEFAULT_HAAR_SAMPLES)]
    pub haar_samples: usize,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Points CSV; without it the summary CSV goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct StreamArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    #[arg(long)]
    pub gpc: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name), runs, and returns the
/// process exit status.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

pub fn execute(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Run(args) => run(args),
        Command::Haar(args) => haar(args),
        Command::Sweep(args) => sweep(args),
        Command::Stream(args) => stream(args),
    }
}

fn progress(quiet: bool) -> impl FnMut(&ExperimentResult) {
    move |r| {
        if !quiet {
            let id_h = r
                .id_h
                .map(output::fmt_sig)
                .unwrap_or_else(|| "n/a".into());
            eprintln!("{}  sw/gpc={}  id_h={id_h}", r.cell.label(), output::fmt_sig(r.sw_over_gpc));
        }
    }
}

fn execute_config(
    config: &ExperimentConfig,
    threads: Option<usize>,
    quiet: bool,
) -> anyhow::Result<Vec<ExperimentResult>> {
    let results = with_threads(threads, || run_experiment_with(config, progress(quiet)))?;
    Ok(results)
}

fn run(args: RunArgs) -> anyhow::Result<()> {
    let mut config = ExperimentConfig::load(&args.config)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(m) = args.ensemble {
        config.ensemble_size = m;
    }
    if let Some(g) = args.gates {
        config.total_gates = g;
    }
    config.validate()?;
    let Some(out) = args.out.or_else(|| config.output_path.clone()) else {
        bail!("no output path: pass --out or set output_path in the config");
    };
    let results = execute_config(&config, args.threads, args.quiet)?;
    let summary = output::write_results(&out, &results)?;
    if let Some(json) = args.json {
        let text = serde_json::to_string_pretty(&results)?;
        output::write_file(&json, &text)?;
    }
    if !args.quiet {
        eprintln!("wrote {} and {}", out.display(), summary.display());
    }
    Ok(())
}

fn haar(args: HaarArgs) -> anyhow::Result<()> {
    let curve = with_threads(args.threads, || {
        haar_reference(args.qubits, args.samples, args.seed)
    })?;
    emit(args.out, &output::haar_csv(&curve))
}

fn sweep(args: SweepArgs) -> anyhow::Result<()> {
    let c = &args.circuit;
    let partition = Partition::new(c.cores, c.qubits_per_core)?;
    let mut config = ExperimentConfig::new(vec![partition], vec![c.arch]);
    if let Some(gpc) = args.gpc {
        config.gpc_values = gpc;
    }
    config.total_gates = c.gates;
    config.ensemble_size = args.ensemble;
    config.haar_samples = args.haar_samples;
    config.seed = c.seed;
    config.validate()?;
    let results = execute_config(&config, args.threads, args.quiet)?;
    match args.out {
        Some(out) => {
            output::write_results(&out, &results)?;
            Ok(())
        }
        None => emit(None, &output::summary_csv(&results)),
    }
}

fn stream(args: StreamArgs) -> anyhow::Result<()> {
    let c = &args.circuit;
    let spec = CircuitSpec::new(
        Partition::new(c.cores, c.qubits_per_core)?,
        c.arch,
        args.gpc,
        c.gates,
        c.seed,
    )?;
    emit(args.out, &dump_stream(&generate_stream(&spec)?))
}

fn emit(out: Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => Ok(output::write_file(&path, text)?),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .context("writing to stdout")?;
            Ok(())
        }
    }
}
