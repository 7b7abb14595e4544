//! Experiment files: JSON documents describing a batch of simulations.
//!
//! ```json
//! {
//!   "instance": [0.9, 0.8, 0.6, 0.4, 0.4],
//!   "strategies": [
//!     { "id": "ebs-c", "gamma": 0.05 },
//!     { "id": "racing", "threshold": { "theoretical": { "R": 1, "alpha": 1 } } }
//!   ],
//!   "delta": 0.01,
//!   "replications": 500,
//!   "seed": 7
//! }
//! ```
//!
//! Unknown keys are rejected at every level.

use std::path::Path;

use gaussian_bai::simulator::{SimulationConfig, TrajectoryConfig, DEFAULT_MAX_STEPS};
use gaussian_bai::strategies::{StrategySpec, ThresholdSpec, TrackingMode, STRATEGY_IDS};
use gaussian_bai::{BanditInstance, RadiusKind, RadiusScheme};
use serde::Deserialize;

use crate::error::CliError;

/// Confidence level used when a strategy entry does not set `gamma`.
pub const DEFAULT_GAMMA: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    pub instance: Vec<f64>,
    pub strategies: Vec<StrategyEntry>,
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default)]
    pub deltas: Option<Vec<f64>>,
    #[serde(default = "default_replications")]
    pub replications: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub max_steps: Option<u64>,
    #[serde(default)]
    pub trajectory: Option<TrajectoryEntry>,
}

fn default_replications() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyEntry {
    pub id: String,
    #[serde(default)]
    pub gamma: Option<f64>,
    #[serde(default)]
    pub threshold: Option<ThresholdEntry>,
    #[serde(default)]
    pub tracking: Option<TrackingEntry>,
    #[serde(default)]
    pub radius: Option<RadiusEntry>,
    /// Clamp exploration-biased confidence intervals to `[0, 1]`.
    #[serde(default)]
    pub clamp: Option<bool>,
    /// Racing only: test every active arm, not just the worst ones.
    #[serde(default)]
    pub test_all_active: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ThresholdEntry {
    Empirical,
    Theoretical {
        #[serde(rename = "R", default = "one")]
        r: f64,
        #[serde(default = "one")]
        alpha: f64,
    },
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum TrackingEntry {
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusEntry {
    Empirical,
    Theoretical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryEntry {
    #[serde(default = "default_dense_until")]
    pub dense_until: u64,
    #[serde(default = "default_stride")]
    pub stride: u64,
}

fn default_dense_until() -> u64 {
    TrajectoryConfig::default().dense_until
}

fn default_stride() -> u64 {
    TrajectoryConfig::default().stride
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub replications: Option<u64>,
    pub clamp: bool,
}

/// One validated simulation: a strategy at one confidence level.
#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub config: SimulationConfig,
}

impl ExperimentFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("experiment file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn deltas(&self) -> Result<Vec<f64>, CliError> {
        match (&self.delta, &self.deltas) {
            (Some(d), None) => Ok(vec![*d]),
            (None, Some(ds)) if !ds.is_empty() => Ok(ds.clone()),
            (None, Some(_)) => Err(CliError::Validation("'deltas' must not be empty".into())),
            (Some(_), Some(_)) => Err(CliError::Validation("give either 'delta' or 'deltas', not both".into())),
            (None, None) => Err(CliError::Validation("missing 'delta' (or 'deltas')".into())),
        }
    }

    /// Expands the file into jobs, strategy-major then delta order.
    pub fn jobs(&self, overrides: Overrides) -> Result<Vec<Job>, CliError> {
        let instance = BanditInstance::new(self.instance.clone())?;
        if self.strategies.is_empty() {
            return Err(CliError::Validation("'strategies' must not be empty".into()));
        }
        let deltas = self.deltas()?;
        let mut jobs = Vec::with_capacity(self.strategies.len() * deltas.len());
        for entry in &self.strategies {
            let strategy = entry.to_spec(overrides.clamp)?;
            for &delta in &deltas {
                let threshold = entry.threshold_spec(delta)?;
                let mut config = SimulationConfig::new(instance.clone(), strategy, threshold);
                config.replications = overrides.replications.unwrap_or(self.replications);
                config.master_seed = overrides.seed.unwrap_or(self.seed);
                config.max_steps = self.max_steps.unwrap_or(DEFAULT_MAX_STEPS);
                config.trajectory = self.trajectory.map(|t| TrajectoryConfig {
                    dense_until: t.dense_until,
                    stride: t.stride,
                });
                config.validate()?;
                jobs.push(Job { config });
            }
        }
        Ok(jobs)
    }
}

impl StrategyEntry {
    pub fn to_spec(&self, force_clamp: bool) -> Result<StrategySpec, CliError> {
        let (base, suffix) = match self.id.rsplit_once('-') {
            Some((b @ ("ebs" | "tas"), s)) => (b, Some(s)),
            _ => (self.id.as_str(), None),
        };
        let tracking = match (suffix, self.tracking) {
            (Some(s), Some(t)) if !s.eq_ignore_ascii_case(t.suffix()) => {
                return Err(CliError::Validation(format!(
                    "strategy '{}' conflicts with tracking \"{}\"",
                    self.id,
                    t.suffix()
                )))
            }
            (_, Some(t)) => Some(t.mode()),
            (Some(_), None) => None,
            (None, None) => Some(TrackingMode::C),
        };
        let gamma = self.gamma.unwrap_or(DEFAULT_GAMMA);
        let kind = match self.radius {
            Some(RadiusEntry::Theoretical) => RadiusKind::Theoretical,
            Some(RadiusEntry::Empirical) | None => RadiusKind::Empirical,
        };
        let radius = RadiusScheme::new(kind, gamma)?;
        let id = match (base, suffix) {
            ("ebs" | "tas", None) => format!("{base}-c"),
            _ => self.id.clone(),
        };
        let mut spec = StrategySpec::from_id(&id, radius).map_err(|_| {
            CliError::Validation(format!(
                "unknown strategy '{}', expected one of {STRATEGY_IDS:?} (or \"ebs\"/\"tas\" with \"tracking\")",
                self.id
            ))
        })?;
        match &mut spec {
            StrategySpec::ExplorationBiased { tracking: tr, clamp, .. } => {
                if let Some(t) = tracking {
                    *tr = t;
                }
                *clamp = self.clamp.unwrap_or(false) || force_clamp;
            }
            StrategySpec::TrackAndStop { tracking: tr } => {
                if let Some(t) = tracking {
                    *tr = t;
                }
            }
            StrategySpec::Racing { test_all_active } => {
                *test_all_active = self.test_all_active.unwrap_or(false);
            }
            StrategySpec::LucbPlusPlus | StrategySpec::Uniform => {}
        }
        let uses_radius = matches!(spec, StrategySpec::ExplorationBiased { .. });
        if !uses_radius && (self.gamma.is_some() || self.radius.is_some() || self.clamp.is_some()) {
            return Err(CliError::Validation(format!(
                "'gamma', 'radius' and 'clamp' only apply to exploration-biased sampling, not '{}'",
                self.id
            )));
        }
        if self.tracking.is_some() && !matches!(base, "ebs" | "tas") {
            return Err(CliError::Validation(format!("'tracking' does not apply to '{}'", self.id)));
        }
        if self.test_all_active.is_some() && !matches!(spec, StrategySpec::Racing { .. }) {
            return Err(CliError::Validation(format!(
                "'test_all_active' only applies to racing, not '{}'",
                self.id
            )));
        }
        Ok(spec)
    }

    pub fn threshold_spec(&self, delta: f64) -> Result<ThresholdSpec, CliError> {
        Ok(match self.threshold.unwrap_or(ThresholdEntry::Empirical) {
            ThresholdEntry::Empirical => ThresholdSpec::empirical(delta)?,
            ThresholdEntry::Theoretical { r, alpha } => ThresholdSpec::theoretical(r, alpha, delta)?,
        })
    }
}

impl TrackingEntry {
    fn mode(self) -> TrackingMode {
        match self {
            TrackingEntry::C => TrackingMode::C,
            TrackingEntry::D => TrackingMode::D,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            TrackingEntry::C => "c",
            TrackingEntry::D => "d",
        }
    }
}
