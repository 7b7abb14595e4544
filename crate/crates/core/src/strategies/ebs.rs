use super::tracking::track_select;
use super::{initial_sweep, SamplingRule, StrategyState, TrackingMode};
use crate::confidence::{build_region, exploration_biased_weights, BiasedAllocation, RadiusScheme};
use crate::error::Result;

/// Exploration-biased weights for the current state: the region
/// `Π_a [μ̂_a ± C_{γ/K}(N_a)]` (optionally clamped to `[0, 1]`) fed to
/// [`exploration_biased_weights`].
pub fn ebs_targets(state: &StrategyState, scheme: &RadiusScheme, clamp: bool) -> Result<BiasedAllocation> {
    let mut region = build_region(state.empirical_means(), state.counts(), scheme)?;
    if clamp {
        region = region.clamped_to_unit();
    }
    exploration_biased_weights(&region)
}

/// One step of exploration-biased sampling. The first `K` steps sweep the
/// arms with uniform targets.
pub fn ebs_step(state: &mut StrategyState, scheme: &RadiusScheme, mode: TrackingMode) -> Result<usize> {
    if let Some(arm) = initial_sweep(state) {
        return Ok(arm);
    }
    let biased = ebs_targets(state, scheme, false)?;
    Ok(track_select(state, &biased.weights, mode))
}

#[derive(Debug, Clone)]
pub struct ExplorationBiasedSampling {
    scheme: RadiusScheme,
    mode: TrackingMode,
    clamp: bool,
    last: Option<BiasedAllocation>,
}

impl ExplorationBiasedSampling {
    pub fn new(scheme: RadiusScheme, mode: TrackingMode) -> Self {
        Self {
            scheme,
            mode,
            clamp: false,
            last: None,
        }
    }

    pub fn with_clamp(mut self, clamp: bool) -> Self {
        self.clamp = clamp;
        self
    }

    /// The most recent exploration-biased bandit and weights.
    pub fn last_allocation(&self) -> Option<&BiasedAllocation> {
        self.last.as_ref()
    }
}

impl SamplingRule for ExplorationBiasedSampling {
    fn id(&self) -> String {
        format!("ebs-{}", self.mode.suffix())
    }

    fn select(&mut self, state: &mut StrategyState) -> Result<usize> {
        if let Some(arm) = initial_sweep(state) {
            return Ok(arm);
        }
        let biased = ebs_targets(state, &self.scheme, self.clamp)?;
        let arm = track_select(state, &biased.weights, self.mode);
        self.last = Some(biased);
        Ok(arm)
    }
}
