use super::{initial_sweep, SamplingRule, StrategyState};
use crate::error::Result;

/// Round-robin over all arms.
#[derive(Debug, Clone, Copy, Default)]
pub struct UniformSampling;

impl SamplingRule for UniformSampling {
    fn id(&self) -> String {
        "uniform".into()
    }

    fn select(&mut self, state: &mut StrategyState) -> Result<usize> {
        if let Some(arm) = initial_sweep(state) {
            return Ok(arm);
        }
        let k = state.num_arms();
        state.push_targets(&vec![1.0 / k as f64; k]);
        Ok(state.t() as usize % k)
    }
}
