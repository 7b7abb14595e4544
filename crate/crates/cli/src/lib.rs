//! Command-line front end for `gaussian-bai`.
//!
//! Subcommands: `solve` (optimal weights and characteristic time),
//! `ebweights` (exploration-biased weights of a confidence region),
//! `simulate` (Monte-Carlo table as CSV) and `trace` (one run's sampling
//! frequencies and target weights as CSV).

pub mod error;
pub mod experiment;
pub mod report;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gaussian_bai::simulator::{monte_carlo, run_once, TrajectoryConfig};
use gaussian_bai::{BanditInstance, DEFAULT_TOL};

pub use error::CliError;
use experiment::{ExperimentFile, Overrides};

#[derive(Debug, Parser)]
#[command(name = "bai", version, about = "Best-arm identification for Gaussian bandits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal weights, characteristic time and closed-form bounds.
    Solve {
        /// Arm means (at least two).
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        means: Vec<f64>,
        /// Stopping tolerance on the Newton residual.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Exploration-biased weights of a box confidence region.
    Ebweights {
        /// One `lo,hi` interval per arm. Put `--` before the intervals when
        /// the first one starts with a minus sign.
        #[arg(required = true, num_args = 1..)]
        intervals: Vec<String>,
        /// Clamp intervals to [0, 1] first.
        #[arg(long)]
        clamp: bool,
        /// Also run the grid oracle (at most 3 arms) with this spacing.
        #[arg(long)]
        oracle_step: Option<f64>,
    },
    /// Run every (strategy, delta) of an experiment file; one CSV row each.
    Simulate(RunArgs),
    /// Trajectory of one run of a single-strategy, single-delta experiment.
    Trace {
        #[command(flatten)]
        common: RunArgs,
        /// Run index within the experiment's seed.
        #[arg(long, default_value_t = 0)]
        run: u64,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Experiment file (JSON).
    pub experiment: PathBuf,
    /// Output CSV path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override the experiment's master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the experiment's replication count.
    #[arg(long)]
    pub reps: Option<u64>,
    /// Clamp exploration-biased confidence intervals to [0, 1].
    #[arg(long)]
    pub clamp: bool,
}

impl RunArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            replications: self.reps,
            clamp: self.clamp,
        }
    }
}

fn output<'a>(path: Option<&Path>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            CliError::Usage(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(stdout),
    })
}

/// Executes a parsed command. Reports, and CSV without `--out`, go to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { means, tol } => {
            let instance = BanditInstance::new(means)?;
            stdout.write_all(report::solve_report(&instance, tol)?.as_bytes())?;
        }
        Command::Ebweights { intervals, clamp, oracle_step } => {
            let intervals = report::parse_intervals(&intervals)?;
            stdout.write_all(report::ebweights_report(intervals, clamp, oracle_step)?.as_bytes())?;
        }
        Command::Simulate(args) => {
            let file = ExperimentFile::load(&args.experiment)?;
            let jobs = file.jobs(args.overrides())?;
            let stats = jobs
                .iter()
                .map(|j| monte_carlo(&j.config))
                .collect::<Result<Vec<_>, _>>()?;
            report::write_simulation_csv(output(args.out.as_deref(), stdout)?, &jobs, &stats)?;
        }
        Command::Trace { common, run } => {
            let file = ExperimentFile::load(&common.experiment)?;
            let mut jobs = file.jobs(common.overrides())?;
            if jobs.len() != 1 {
                return Err(CliError::Validation(format!(
                    "trace needs exactly one strategy and one delta, the file expands to {} runs",
                    jobs.len()
                )));
            }
            let mut config = jobs.remove(0).config;
            config.trajectory.get_or_insert_with(TrajectoryConfig::default);
            let result = run_once(&config, run)?;
            report::write_trace_csv(output(common.out.as_deref(), stdout)?, config.instance.num_arms(), &result)?;
        }
    }
    Ok(())
}
