use super::tracking::track_select;
use super::{initial_sweep, SamplingRule, StrategyState, TrackingMode};
use crate::complexity::{solve_gaps, DEFAULT_TOL};
use crate::error::Result;
use crate::model::{compute_gaps, BanditInstance};

/// Least-sampled arm among `{a : N_a(t) < √t − K/2}`, if any.
pub fn forced_exploration_arm(state: &StrategyState) -> Option<usize> {
    let t = state.t() as f64;
    let k = state.num_arms() as f64;
    let floor = t.sqrt() - k / 2.0;
    let counts = state.counts();
    (0..counts.len())
        .filter(|&a| (counts[a] as f64) < floor)
        .min_by_key(|&a| counts[a])
}

/// `w(μ̂(t))`, with uniform weights over the empirical best arms on ties.
pub fn plug_in_targets(state: &StrategyState) -> Result<Vec<f64>> {
    let mu = BanditInstance::new(state.empirical_means().to_vec())?;
    Ok(solve_gaps(&compute_gaps(&mu), DEFAULT_TOL)?.weights)
}

/// One step of Track-and-Stop. Plug-in targets are computed and recorded on
/// every step, forced exploration only overrides the arm choice.
pub fn tas_step(state: &mut StrategyState, mode: TrackingMode) -> Result<usize> {
    if let Some(arm) = initial_sweep(state) {
        return Ok(arm);
    }
    let targets = plug_in_targets(state)?;
    match forced_exploration_arm(state) {
        Some(arm) => {
            state.push_targets(&targets);
            Ok(arm)
        }
        None => Ok(track_select(state, &targets, mode)),
    }
}

#[derive(Debug, Clone)]
pub struct TrackAndStop {
    mode: TrackingMode,
    forced_steps: u64,
}

impl TrackAndStop {
    pub fn new(mode: TrackingMode) -> Self {
        Self { mode, forced_steps: 0 }
    }

    /// Steps decided by forced exploration so far.
    pub fn forced_steps(&self) -> u64 {
        self.forced_steps
    }
}

impl SamplingRule for TrackAndStop {
    fn id(&self) -> String {
        format!("tas-{}", self.mode.suffix())
    }

    fn select(&mut self, state: &mut StrategyState) -> Result<usize> {
        if state.t() as usize >= state.num_arms() && forced_exploration_arm(state).is_some() {
            self.forced_steps += 1;
        }
        tas_step(state, self.mode)
    }
}
