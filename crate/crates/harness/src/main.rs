use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use harness::{emit_convergence, report, run_experiment, ExperimentSpec, RunOptions};

#[derive(Parser)]
#[command(name = "ebgwo", version, about = "Grey-wolf optimizer experiments: run, report, plot data, suite data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every (algorithm, problem, run) cell of an experiment config.
    Run {
        config: PathBuf,
        /// Output directory (overrides `output_dir` in the config).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        pop_size: Option<usize>,
        #[arg(long)]
        max_iters: Option<usize>,
        #[arg(long)]
        st: Option<f64>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Skip writing per-run convergence traces.
        #[arg(long)]
        no_traces: bool,
    },
    /// Recompute and print summary statistics for a results directory.
    Report { dir: PathBuf },
    /// Mean best-so-far curves for one problem, as CSV.
    Curves {
        dir: PathBuf,
        #[arg(long)]
        problem: String,
        #[arg(long)]
        dim: usize,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate suite data (shifts, rotations, permutations) for one dimension.
    SuiteGen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match Cli::parse().command {
        Command::Run {
            config,
            out,
            runs,
            seed,
            pop_size,
            max_iters,
            st,
            threads,
            no_traces,
        } => {
            let mut spec = ExperimentSpec::from_file(&config)?;
            if let Some(v) = runs {
                spec.runs = v;
            }
            if let Some(v) = seed {
                spec.base_seed = v;
            }
            if let Some(v) = pop_size {
                spec.pop_size = v;
            }
            if let Some(v) = max_iters {
                spec.max_iters = v;
            }
            if let Some(v) = st {
                spec.st = v;
            }
            spec.validate()?;
            let dir = out
                .or_else(|| spec.output_dir.clone())
                .context("no output directory: pass --out or set `output_dir` in the config")?;
            let opts = RunOptions {
                threads,
                write_traces: !no_traces,
            };
            let output = run_experiment(&spec, &dir, &opts)?;
            print!("{}", output.summary.render());
            log::info!("wrote {} rows to {}", output.rows.len(), dir.display());
        }
        Command::Report { dir } => print!("{}", report(&dir)?.render()),
        Command::Curves { dir, problem, dim, out } => {
            let csv = emit_convergence(&dir, &problem, dim)?.to_csv();
            match out {
                Some(path) => std::fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{csv}"),
            }
        }
        Command::SuiteGen { seed, dim, out } => {
            let suite = ebgwo::cec::generate_suite_data(seed, dim)?;
            ebgwo::cec::write_suite_data(&suite, &out)?;
            log::info!("wrote suite data for dimension {dim} to {}", out.display());
        }
    }
    Ok(())
}
