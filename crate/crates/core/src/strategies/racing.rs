use std::collections::VecDeque;

use super::state::argmin_by;
use super::{SamplingRule, StrategyState, ThresholdSpec};
use crate::error::Result;

/// Chernoff racing (successive elimination).
///
/// Rounds sample every active arm once, in index order. At the end of round
/// `r` the empirically worst active arm(s) `b` are eliminated when
/// `(r/4)(μ̂_lead − μ̂_b)² > β(t, δ)`, `t` being the global sample count.
/// Elimination only shapes sampling; stopping is the shared GLR rule. Once a
/// single arm survives, the rule samples the less-sampled arm of the pair
/// that currently limits the GLR statistic, so that stopping can still fire.
#[derive(Debug, Clone)]
pub struct ChernoffRacing {
    active: Vec<bool>,
    round: u64,
    queue: VecDeque<usize>,
    threshold: ThresholdSpec,
    test_all: bool,
}

impl ChernoffRacing {
    pub fn new(num_arms: usize, threshold: ThresholdSpec) -> Self {
        Self {
            active: vec![true; num_arms],
            round: 0,
            queue: VecDeque::new(),
            threshold,
            test_all: false,
        }
    }

    /// Test every active arm against the leader, not only the worst ones.
    pub fn with_test_all(mut self, test_all: bool) -> Self {
        self.test_all = test_all;
        self
    }

    pub fn active_set(&self) -> Vec<usize> {
        (0..self.active.len()).filter(|&a| self.active[a]).collect()
    }

    /// Completed rounds.
    pub fn round(&self) -> u64 {
        self.round
    }

    /// Next arm of the current round, starting a new round when needed.
    pub fn racing_step(&mut self, state: &StrategyState) -> usize {
        let active = self.active_set();
        if active.len() == 1 {
            let a = state.recommend();
            let b = argmin_by((0..self.active.len()).filter(|&b| b != a), |b| {
                state.glr_pair_unchecked(a, b)
            });
            return if state.counts()[b] <= state.counts()[a] { b } else { a };
        }
        if self.queue.is_empty() {
            self.queue.extend(self.active_set());
        }
        self.queue.pop_front().expect("active set never empties")
    }

    /// Closes round `r` and applies the elimination test.
    pub fn racing_round_end(&mut self, state: &StrategyState) {
        self.round += 1;
        let active = self.active_set();
        if active.len() < 2 {
            return;
        }
        let means = state.empirical_means();
        let leader = active
            .iter()
            .copied()
            .fold(active[0], |b, a| if means[a] > means[b] { a } else { b });
        let worst = active.iter().map(|&a| means[a]).fold(f64::INFINITY, f64::min);
        let beta = self.threshold.beta(state.t());
        let r = self.round as f64;
        for &b in &active {
            if b == leader || !(self.test_all || means[b] == worst) {
                continue;
            }
            let d = means[leader] - means[b];
            if r / 4.0 * d * d > beta {
                self.active[b] = false;
            }
        }
    }
}

impl SamplingRule for ChernoffRacing {
    fn id(&self) -> String {
        "racing".into()
    }

    fn select(&mut self, state: &mut StrategyState) -> Result<usize> {
        Ok(self.racing_step(state))
    }

    fn after_observe(&mut self, state: &StrategyState) {
        if self.queue.is_empty() {
            self.racing_round_end(state);
        }
    }
}
