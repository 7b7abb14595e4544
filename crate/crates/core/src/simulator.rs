//! Seeded Gaussian simulations and Monte-Carlo aggregation.
//!
//! A run is a pure function of `(master_seed, run_index)`. Each arm owns a
//! pre-committed reward stream, so the `s`-th draw of arm `a` is the same for
//! every strategy run on the same seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::confidence::{build_region, RadiusScheme};
use crate::error::{BaiError, Result};
use crate::model::{compute_gaps, BanditInstance};
use crate::strategies::{should_stop, StrategySpec, StrategyState, ThresholdSpec};

pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;

/// Which steps end up in a recorded trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrajectoryConfig {
    /// Every step up to and including this time is recorded.
    pub dense_until: u64,
    /// Beyond `dense_until`, one step out of `stride`.
    pub stride: u64,
}

impl Default for TrajectoryConfig {
    fn default() -> Self {
        Self {
            dense_until: 1200,
            stride: 10,
        }
    }
}

impl TrajectoryConfig {
    fn records(&self, t: u64) -> bool {
        t <= self.dense_until || t % self.stride == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub instance: BanditInstance,
    pub strategy: StrategySpec,
    pub threshold: ThresholdSpec,
    pub replications: u64,
    pub master_seed: u64,
    pub max_steps: u64,
    pub trajectory: Option<TrajectoryConfig>,
    /// When set, every run also reports whether the true means ever left the
    /// region built with this scheme, for `K ≤ t ≤ τ`.
    pub coverage: Option<RadiusScheme>,
}

impl SimulationConfig {
    pub fn new(instance: BanditInstance, strategy: StrategySpec, threshold: ThresholdSpec) -> Self {
        Self {
            instance,
            strategy,
            threshold,
            replications: 1,
            master_seed: 0,
            max_steps: DEFAULT_MAX_STEPS,
            trajectory: None,
            coverage: None,
        }
    }

    pub fn delta(&self) -> f64 {
        self.threshold.delta
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.instance.num_arms() as u64;
        if self.replications < 1 {
            return Err(BaiError::Config("replications must be at least 1".into()));
        }
        if self.max_steps < k {
            return Err(BaiError::Config(format!(
                "max_steps ({}) must be at least the number of arms ({k})",
                self.max_steps
            )));
        }
        if let Some(tr) = self.trajectory {
            if tr.stride < 1 {
                return Err(BaiError::Config("trajectory stride must be at least 1".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint {
    pub t: u64,
    /// `N(t) / t`.
    pub frequencies: Vec<f64>,
    /// `w̃(t)` as last recorded by the strategy; `None` for rules without
    /// target weights (racing, LUCB++).
    pub targets: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub tau: u64,
    pub recommended: usize,
    pub correct: bool,
    /// `max_steps` was reached before the stopping rule fired.
    pub truncated: bool,
    pub trajectory: Option<Vec<TrajectoryPoint>>,
    pub coverage_miss: Option<bool>,
}

/// Per-run seed derived from the master seed.
pub fn run_seed(master_seed: u64, run_index: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(run_index.wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent `N(μ_a, 1)` streams, one ChaCha stream per arm.
#[derive(Debug, Clone)]
pub struct RewardStreams {
    means: Vec<f64>,
    rngs: Vec<ChaCha8Rng>,
}

impl RewardStreams {
    pub fn new(means: &[f64], seed: u64) -> Self {
        let rngs = (0..means.len())
            .map(|a| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(a as u64);
                rng
            })
            .collect();
        Self {
            means: means.to_vec(),
            rngs,
        }
    }

    pub fn draw(&mut self, arm: usize) -> f64 {
        let z: f64 = StandardNormal.sample(&mut self.rngs[arm]);
        self.means[arm] + z
    }
}

/// View of a run handed to observers after every observation.
#[derive(Debug)]
pub struct StepView<'a> {
    pub state: &'a StrategyState,
    pub arm: usize,
}

pub fn run_once(config: &SimulationConfig, run_index: u64) -> Result<RunResult> {
    run_observed(config, run_index, |_| {})
}

/// [`run_once`] with a callback invoked after each observation.
pub fn run_observed<F>(config: &SimulationConfig, run_index: u64, mut observer: F) -> Result<RunResult>
where
    F: FnMut(&StepView<'_>),
{
    config.validate()?;
    let means = config.instance.means();
    let k = means.len();
    let mut streams = RewardStreams::new(means, run_seed(config.master_seed, run_index));
    let mut rule = config.strategy.build(k, &config.threshold);
    let mut state = StrategyState::new(k);
    let mut trajectory = config.trajectory.map(|_| Vec::new());
    let mut coverage_miss = config.coverage.map(|_| false);

    let record = |state: &StrategyState, traj: &mut Vec<TrajectoryPoint>| {
        let t = state.t() as f64;
        traj.push(TrajectoryPoint {
            t: state.t(),
            frequencies: state.counts().iter().map(|&n| n as f64 / t).collect(),
            targets: state.last_targets().map(<[f64]>::to_vec),
        });
    };

    let truncated = loop {
        if let (Some(scheme), Some(miss)) = (&config.coverage, coverage_miss.as_mut()) {
            if !*miss && state.all_sampled() {
                let region = build_region(state.empirical_means(), state.counts(), scheme)?;
                *miss = !region.contains(means);
            }
        }
        if should_stop(&state, &config.threshold) {
            break false;
        }
        if state.t() >= config.max_steps {
            break true;
        }
        let arm = rule.select(&mut state)?;
        state.observe(arm, streams.draw(arm));
        rule.after_observe(&state);
        observer(&StepView { state: &state, arm });
        if let (Some(tc), Some(traj)) = (&config.trajectory, trajectory.as_mut()) {
            if tc.records(state.t()) {
                record(&state, traj);
            }
        }
    };

    if let Some(traj) = trajectory.as_mut() {
        if traj.last().map(|p| p.t) != Some(state.t()) {
            record(&state, traj);
        }
    }
    let recommended = state.recommend();
    let best = compute_gaps(&config.instance).best_arms;
    Ok(RunResult {
        tau: state.t(),
        recommended,
        correct: !truncated && best.contains(&recommended),
        truncated,
        trajectory,
        coverage_miss,
    })
}

/// Summary over the runs `0..replications`.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateStats {
    pub replications: u64,
    /// Runs that stopped before `max_steps`.
    pub completed: u64,
    /// Mean stopping time over completed runs.
    pub mean_tau: f64,
    /// Sample standard deviation over completed runs (0 for a single run).
    pub std_tau: f64,
    /// Fraction of completed runs with a wrong recommendation.
    pub error_rate: f64,
    pub truncation_count: u64,
    /// Fraction of runs whose coverage check failed, when enabled.
    pub coverage_miss_rate: Option<f64>,
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Reduces run results given in run-index order.
pub fn aggregate(results: &[RunResult]) -> AggregateStats {
    let completed: Vec<&RunResult> = results.iter().filter(|r| !r.truncated).collect();
    let n = completed.len();
    let mut sum = CompensatedSum::default();
    for r in &completed {
        sum.add(r.tau as f64);
    }
    let mean_tau = if n > 0 { sum.total() / n as f64 } else { f64::NAN };
    let std_tau = if n >= 2 {
        let mut sq = CompensatedSum::default();
        for r in &completed {
            let d = r.tau as f64 - mean_tau;
            sq.add(d * d);
        }
        (sq.total() / (n - 1) as f64).sqrt()
    } else if n == 1 {
        0.0
    } else {
        f64::NAN
    };
    let errors = completed.iter().filter(|r| !r.correct).count();
    let misses: Vec<bool> = results.iter().filter_map(|r| r.coverage_miss).collect();
    AggregateStats {
        replications: results.len() as u64,
        completed: n as u64,
        mean_tau,
        std_tau,
        error_rate: if n > 0 { errors as f64 / n as f64 } else { 0.0 },
        truncation_count: (results.len() - n) as u64,
        coverage_miss_rate: (!misses.is_empty())
            .then(|| misses.iter().filter(|&&m| m).count() as f64 / misses.len() as f64),
    }
}

/// All runs of `config`, in run-index order.
pub fn run_all(config: &SimulationConfig) -> Result<Vec<RunResult>> {
    config.validate()?;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..config.replications)
            .into_par_iter()
            .map(|i| run_once(config, i))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_all_serial(config)
    }
}

pub fn run_all_serial(config: &SimulationConfig) -> Result<Vec<RunResult>> {
    config.validate()?;
    (0..config.replications).map(|i| run_once(config, i)).collect()
}

pub fn monte_carlo(config: &SimulationConfig) -> Result<AggregateStats> {
    Ok(aggregate(&run_all(config)?))
}

pub fn monte_carlo_serial(config: &SimulationConfig) -> Result<AggregateStats> {
    Ok(aggregate(&run_all_serial(config)?))
}
