//! Bandit instances and gap vectors.

use crate::error::{BaiError, Result};

/// Means of a standard (unit-variance) Gaussian bandit.
///
/// At least two arms, every mean finite. Means are nominally in `[0, 1]`
/// but nothing here enforces it: the optimization problem only depends on
/// the gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditInstance {
    means: Vec<f64>,
}

impl BanditInstance {
    pub fn new(means: Vec<f64>) -> Result<Self> {
        if means.len() < 2 {
            return Err(BaiError::InvalidInstance(format!(
                "need at least 2 arms, got {}",
                means.len()
            )));
        }
        if let Some(i) = means.iter().position(|m| !m.is_finite()) {
            return Err(BaiError::InvalidInstance(format!(
                "mean of arm {} is not finite ({})",
                i + 1,
                means[i]
            )));
        }
        Ok(Self { means })
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn num_arms(&self) -> usize {
        self.means.len()
    }

    pub fn best_mean(&self) -> f64 {
        self.means.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn gaps(&self) -> GapVector {
        compute_gaps(self)
    }

    pub fn into_means(self) -> Vec<f64> {
        self.means
    }
}

/// Gaps to the best mean, with the set of best arms.
#[derive(Debug, Clone, PartialEq)]
pub struct GapVector {
    pub gaps: Vec<f64>,
    /// Zero-based indices of every arm attaining the maximal mean.
    pub best_arms: Vec<usize>,
    /// Smallest strictly positive gap; `None` when all arms are tied.
    pub delta_min: Option<f64>,
    pub delta_max: f64,
}

impl GapVector {
    pub fn num_arms(&self) -> usize {
        self.gaps.len()
    }

    /// `true` when the instance has a unique best arm.
    pub fn is_unique(&self) -> bool {
        self.best_arms.len() == 1
    }

    /// The lowest-index best arm.
    pub fn best_arm(&self) -> usize {
        self.best_arms[0]
    }

    /// Average squared gap over the `K - 1` arms other than the best one.
    pub fn mean_sq_gap(&self) -> f64 {
        let best = self.best_arm();
        let sum: f64 = self
            .gaps
            .iter()
            .enumerate()
            .filter(|&(a, _)| a != best)
            .map(|(_, d)| d * d)
            .sum();
        sum / (self.num_arms() - 1) as f64
    }

    /// Gaps of the suboptimal arms (all arms but the lowest-index best one).
    pub(crate) fn suboptimal(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        let best = self.best_arm();
        self.gaps
            .iter()
            .copied()
            .enumerate()
            .filter(move |&(a, _)| a != best)
    }
}

/// Ties between best arms are detected by exact equality of the means.
pub fn compute_gaps(instance: &BanditInstance) -> GapVector {
    let best = instance.best_mean();
    let gaps: Vec<f64> = instance.means().iter().map(|m| best - m).collect();
    let best_arms: Vec<usize> = instance
        .means()
        .iter()
        .enumerate()
        .filter(|&(_, &m)| m == best)
        .map(|(a, _)| a)
        .collect();
    let delta_min = gaps
        .iter()
        .copied()
        .filter(|&d| d > 0.0)
        .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |m| m.min(d))));
    let delta_max = gaps.iter().copied().fold(0.0, f64::max);
    GapVector {
        gaps,
        best_arms,
        delta_min,
        delta_max,
    }
}
