//! Text reports and CSV tables.

use std::fmt::Write as _;
use std::io::Write;

use gaussian_bai::simulator::{AggregateStats, RunResult};
use gaussian_bai::{
    brute_force_eb_bandit, characteristic_bounds, compute_gaps, exploration_biased_weights,
    kl_bernoulli, solve_allocation, BanditInstance, CharacteristicTime, ConfidenceRegion, DEFAULT_TOL,
};

use crate::error::CliError;
use crate::experiment::Job;

pub const SIMULATE_HEADER: [&str; 9] = [
    "strategy",
    "delta",
    "gamma",
    "replications",
    "mean_tau",
    "std_tau",
    "error_rate",
    "truncated",
    "lower_bound",
];

fn join(values: &[f64], decimals: usize) -> String {
    values
        .iter()
        .map(|v| format!("{v:.decimals$}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// `T(μ) · kl(δ, 1 − δ)`, infinite for instances with several best arms.
pub fn lower_bound(instance: &BanditInstance, delta: f64) -> Result<f64, CliError> {
    let sol = solve_allocation(instance, DEFAULT_TOL)?;
    let kl = kl_bernoulli(delta, 1.0 - delta)?;
    Ok(match sol.characteristic_time {
        CharacteristicTime::Finite(t) => t * kl,
        CharacteristicTime::Infinite => f64::INFINITY,
    })
}

pub fn solve_report(instance: &BanditInstance, tol: f64) -> Result<String, CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let sol = solve_allocation(instance, tol)?;
    let gaps = compute_gaps(instance);
    let mut out = String::new();
    writeln!(out, "K = {}", instance.num_arms()).unwrap();
    writeln!(out, "gaps = {}", join(&gaps.gaps, 6)).unwrap();
    if sol.degenerate {
        let best: Vec<String> = gaps.best_arms.iter().map(|a| (a + 1).to_string()).collect();
        writeln!(out, "degenerate: arms {} share the best mean; weights are uniform over them", best.join(", ")).unwrap();
        writeln!(out, "r = n/a").unwrap();
        writeln!(out, "w = {}", join(&sol.weights, 6)).unwrap();
        writeln!(out, "T = inf").unwrap();
        return Ok(out);
    }
    writeln!(out, "r = {:.6}", sol.r.expect("nondegenerate solution has r")).unwrap();
    writeln!(out, "w = {}", join(&sol.weights, 6)).unwrap();
    writeln!(out, "T = {:.6}", sol.characteristic_time).unwrap();
    writeln!(out, "iterations = {}", sol.iterations).unwrap();
    let b = characteristic_bounds(&gaps)?;
    writeln!(out, "bounds r in [{:.6}, {:.6}]", b.r_lo, b.r_hi).unwrap();
    writeln!(out, "bounds w_max in [{:.6}, {:.6}]", b.wmax_lo, b.wmax_hi).unwrap();
    writeln!(out, "bounds T in [{:.6}, {:.6}]", b.t_lo, b.t_hi).unwrap();
    Ok(out)
}

/// Parses `lo,hi` interval arguments.
pub fn parse_intervals(args: &[String]) -> Result<Vec<(f64, f64)>, CliError> {
    args.iter()
        .map(|s| {
            let (lo, hi) = s
                .split_once(',')
                .ok_or_else(|| CliError::Usage(format!("interval '{s}' is not of the form lo,hi")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("interval '{s}': '{x}' is not a number")))
            };
            Ok((num(lo)?, num(hi)?))
        })
        .collect()
}

pub fn ebweights_report(
    intervals: Vec<(f64, f64)>,
    clamp: bool,
    oracle_step: Option<f64>,
) -> Result<String, CliError> {
    let mut region = ConfidenceRegion::new(intervals)?;
    if clamp {
        region = region.clamped_to_unit();
    }
    let alloc = exploration_biased_weights(&region)?;
    let mut out = String::new();
    writeln!(out, "K = {}", region.num_arms()).unwrap();
    if alloc.uniform {
        writeln!(out, "intervals overlap: uniform weights").unwrap();
    } else {
        writeln!(out, "intervals separated").unwrap();
    }
    writeln!(out, "mu_tilde = {}", join(&alloc.biased_bandit, 6)).unwrap();
    writeln!(out, "w_tilde = {}", join(&alloc.weights, 6)).unwrap();
    writeln!(out, "w_min = {:.6}", alloc.min_weight()).unwrap();
    if let Some(step) = oracle_step {
        let grid = brute_force_eb_bandit(&region, step)?;
        let grid_wmin = solve_allocation(&grid, DEFAULT_TOL)?.min_weight();
        writeln!(out, "oracle mu = {}", join(grid.means(), 6)).unwrap();
        writeln!(out, "oracle w_min = {grid_wmin:.6} (grid step {step})").unwrap();
    }
    Ok(out)
}

/// Writes one CSV row per job. `stats[i]` belongs to `jobs[i]`.
pub fn write_simulation_csv<W: Write>(
    out: W,
    jobs: &[Job],
    stats: &[AggregateStats],
) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(SIMULATE_HEADER)?;
    for (job, s) in jobs.iter().zip(stats) {
        let cfg = &job.config;
        let lb = lower_bound(&cfg.instance, cfg.delta())?;
        w.write_record([
            cfg.strategy.id(),
            cfg.delta().to_string(),
            cfg.strategy.gamma().map(|g| g.to_string()).unwrap_or_default(),
            s.replications.to_string(),
            format!("{:.3}", s.mean_tau),
            format!("{:.3}", s.std_tau),
            format!("{:.6}", s.error_rate),
            s.truncation_count.to_string(),
            format!("{lb:.3}"),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn trace_header(num_arms: usize) -> Vec<String> {
    std::iter::once("t".to_string())
        .chain((1..=num_arms).map(|a| format!("freq_{a}")))
        .chain((1..=num_arms).map(|a| format!("target_{a}")))
        .collect()
}

/// Trajectory of one run. Rules without target weights leave the target
/// columns empty.
pub fn write_trace_csv<W: Write>(out: W, num_arms: usize, run: &RunResult) -> Result<(), CliError> {
    let traj = run
        .trajectory
        .as_ref()
        .ok_or_else(|| CliError::Validation("trajectory recording is disabled".into()))?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(trace_header(num_arms))?;
    for p in traj {
        let mut row = Vec::with_capacity(1 + 2 * num_arms);
        row.push(p.t.to_string());
        row.extend(p.frequencies.iter().map(|f| format!("{f:.6}")));
        match &p.targets {
            Some(ts) => row.extend(ts.iter().map(|x| format!("{x:.6}"))),
            None => row.extend(std::iter::repeat_n(String::new(), num_arms)),
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
