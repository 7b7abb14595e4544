//! Sampling rules for fixed-confidence best-arm identification.
//!
//! Every rule implements [`SamplingRule`]: it picks the next arm from the
//! current [`StrategyState`] and may record target weights in it. All rules
//! start with one sweep over the arms and share the GLR stopping rule
//! ([`should_stop`]) and the empirical-best recommendation.

mod ebs;
mod lucb;
mod racing;
mod state;
mod tas;
mod threshold;
mod tracking;
mod uniform;

pub use ebs::{ebs_step, ebs_targets, ExplorationBiasedSampling};
pub use lucb::{lucb_index, lucb_step, LucbPlusPlus};
pub use racing::ChernoffRacing;
pub use state::StrategyState;
pub use tas::{forced_exploration_arm, plug_in_targets, tas_step, TrackAndStop};
pub use threshold::{should_stop, ThresholdKind, ThresholdSpec};
pub use tracking::{track_select, TrackingMode};
pub use uniform::UniformSampling;

use crate::confidence::RadiusScheme;
use crate::error::{BaiError, Result};

pub trait SamplingRule: Send {
    /// Identifier as used in experiment files (`"ebs-c"`, `"racing"`, ...).
    fn id(&self) -> String;

    /// Chooses `A_{t+1}`. May push target weights into `state`.
    fn select(&mut self, state: &mut StrategyState) -> Result<usize>;

    /// Hook run after the reward of the selected arm has been recorded.
    fn after_observe(&mut self, _state: &StrategyState) {}
}

/// First `K` steps: arm `t`, with uniform targets.
pub(crate) fn initial_sweep(state: &mut StrategyState) -> Option<usize> {
    let arm = initial_arm(state)?;
    let k = state.num_arms();
    state.push_targets(&vec![1.0 / k as f64; k]);
    Some(arm)
}

/// First `K` steps: arm `t`. Rules without target weights use this.
pub(crate) fn initial_arm(state: &StrategyState) -> Option<usize> {
    let t = state.t() as usize;
    (t < state.num_arms()).then_some(t)
}

/// Strategy identifiers accepted by [`StrategySpec::from_id`].
pub const STRATEGY_IDS: [&str; 7] = ["ebs-c", "ebs-d", "tas-c", "tas-d", "racing", "lucb++", "uniform"];

/// Parameters of a strategy, independent of any run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StrategySpec {
    ExplorationBiased {
        radius: RadiusScheme,
        tracking: TrackingMode,
        /// Clamp confidence intervals to `[0, 1]` before biasing.
        clamp: bool,
    },
    TrackAndStop {
        tracking: TrackingMode,
    },
    Racing {
        /// Test every active arm against the leader instead of only the worst.
        test_all_active: bool,
    },
    LucbPlusPlus,
    Uniform,
}

impl StrategySpec {
    /// Parses an identifier; `radius` is used by the exploration-biased rules.
    pub fn from_id(id: &str, radius: RadiusScheme) -> Result<Self> {
        Ok(match id {
            "ebs-c" => Self::ExplorationBiased { radius, tracking: TrackingMode::C, clamp: false },
            "ebs-d" => Self::ExplorationBiased { radius, tracking: TrackingMode::D, clamp: false },
            "tas-c" => Self::TrackAndStop { tracking: TrackingMode::C },
            "tas-d" => Self::TrackAndStop { tracking: TrackingMode::D },
            "racing" => Self::Racing { test_all_active: false },
            "lucb++" => Self::LucbPlusPlus,
            "uniform" => Self::Uniform,
            other => {
                return Err(BaiError::Config(format!(
                    "unknown strategy '{other}', expected one of {STRATEGY_IDS:?}"
                )))
            }
        })
    }

    pub fn id(&self) -> String {
        match self {
            Self::ExplorationBiased { tracking, .. } => format!("ebs-{}", tracking.suffix()),
            Self::TrackAndStop { tracking } => format!("tas-{}", tracking.suffix()),
            Self::Racing { .. } => "racing".into(),
            Self::LucbPlusPlus => "lucb++".into(),
            Self::Uniform => "uniform".into(),
        }
    }

    pub fn gamma(&self) -> Option<f64> {
        match self {
            Self::ExplorationBiased { radius, .. } => Some(radius.gamma),
            _ => None,
        }
    }

    pub fn build(&self, num_arms: usize, threshold: &ThresholdSpec) -> Box<dyn SamplingRule> {
        match *self {
            Self::ExplorationBiased { radius, tracking, clamp } => {
                Box::new(ExplorationBiasedSampling::new(radius, tracking).with_clamp(clamp))
            }
            Self::TrackAndStop { tracking } => Box::new(TrackAndStop::new(tracking)),
            Self::Racing { test_all_active } => {
                Box::new(ChernoffRacing::new(num_arms, *threshold).with_test_all(test_all_active))
            }
            Self::LucbPlusPlus => Box::new(LucbPlusPlus::new(threshold.delta)),
            Self::Uniform => Box::new(UniformSampling),
        }
    }
}
