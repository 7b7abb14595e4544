use std::collections::VecDeque;

use super::state::argmin_by;
use super::{initial_arm, SamplingRule, StrategyState};
use crate::error::Result;

/// Upper index `μ̂ + √(3/N · log((log N + 1) · 2K / δ))`.
///
/// The `+ 1` keeps the inner logarithm positive at `N = 1`.
pub fn lucb_index(mean: f64, count: u64, delta: f64, num_arms: usize) -> f64 {
    let n = count as f64;
    let inner = (n.ln() + 1.0) * 2.0 * num_arms as f64 / delta;
    mean + (3.0 / n * inner.ln()).sqrt()
}

/// The empirical best arm and, among the others, the highest upper index.
/// Both ties go to the lowest index.
pub fn lucb_step(state: &StrategyState, delta: f64) -> (usize, usize) {
    let k = state.num_arms();
    let leader = state.recommend();
    let means = state.empirical_means();
    let counts = state.counts();
    let challenger = argmin_by((0..k).filter(|&a| a != leader), |a| {
        -lucb_index(means[a], counts[a], delta, k)
    });
    (leader, challenger)
}

/// LUCB++: each round samples the leader and the challenger. Stopping is the
/// shared GLR rule, checked after every single sample.
#[derive(Debug, Clone)]
pub struct LucbPlusPlus {
    delta: f64,
    pending: VecDeque<usize>,
}

impl LucbPlusPlus {
    pub fn new(delta: f64) -> Self {
        Self {
            delta,
            pending: VecDeque::with_capacity(2),
        }
    }
}

impl SamplingRule for LucbPlusPlus {
    fn id(&self) -> String {
        "lucb++".into()
    }

    fn select(&mut self, state: &mut StrategyState) -> Result<usize> {
        if let Some(arm) = initial_arm(state) {
            return Ok(arm);
        }
        if self.pending.is_empty() {
            let (leader, challenger) = lucb_step(state, self.delta);
            self.pending.push_back(leader);
            self.pending.push_back(challenger);
        }
        Ok(self.pending.pop_front().expect("pending pair"))
    }
}
