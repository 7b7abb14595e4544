use crate::error::{BaiError, Result};

/// Sufficient statistics of one run: counts, reward sums and the sequence of
/// target weights chosen so far.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyState {
    t: u64,
    counts: Vec<u64>,
    sums: Vec<f64>,
    means: Vec<f64>,
    cum_targets: Vec<f64>,
    last_targets: Option<Vec<f64>>,
}

impl StrategyState {
    pub fn new(num_arms: usize) -> Self {
        Self {
            t: 0,
            counts: vec![0; num_arms],
            sums: vec![0.0; num_arms],
            means: vec![0.0; num_arms],
            cum_targets: vec![0.0; num_arms],
            last_targets: None,
        }
    }

    /// Builds a state from raw counts and reward sums, with the given
    /// cumulative targets. Arms with zero count get mean 0.
    pub fn from_parts(counts: Vec<u64>, sums: Vec<f64>, cum_targets: Vec<f64>) -> Result<Self> {
        let k = counts.len();
        if k < 2 || sums.len() != k || cum_targets.len() != k {
            return Err(BaiError::Domain("inconsistent state dimensions".into()));
        }
        let means = counts
            .iter()
            .zip(&sums)
            .map(|(&n, &s)| if n > 0 { s / n as f64 } else { 0.0 })
            .collect();
        Ok(Self {
            t: counts.iter().sum(),
            counts,
            sums,
            means,
            cum_targets,
            last_targets: None,
        })
    }

    pub fn num_arms(&self) -> usize {
        self.counts.len()
    }

    /// Number of observations so far.
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn sums(&self) -> &[f64] {
        &self.sums
    }

    pub fn empirical_means(&self) -> &[f64] {
        &self.means
    }

    /// `Σ_{s ≤ t} w̃(s)`, the running sum of every target vector pushed.
    pub fn cum_targets(&self) -> &[f64] {
        &self.cum_targets
    }

    pub fn last_targets(&self) -> Option<&[f64]> {
        self.last_targets.as_deref()
    }

    pub fn all_sampled(&self) -> bool {
        self.counts.iter().all(|&n| n > 0)
    }

    pub fn observe(&mut self, arm: usize, reward: f64) {
        self.t += 1;
        self.counts[arm] += 1;
        self.sums[arm] += reward;
        self.means[arm] = self.sums[arm] / self.counts[arm] as f64;
    }

    /// Records `w̃(t)` and adds it to the cumulative sums.
    pub fn push_targets(&mut self, targets: &[f64]) {
        for (c, w) in self.cum_targets.iter_mut().zip(targets) {
            *c += w;
        }
        match &mut self.last_targets {
            Some(last) => last.copy_from_slice(targets),
            None => self.last_targets = Some(targets.to_vec()),
        }
    }

    /// Signed pairwise GLR statistic
    /// `½ N_a N_b / (N_a + N_b) · (μ̂_a − μ̂_b) |μ̂_a − μ̂_b|`.
    pub fn glr_pair(&self, a: usize, b: usize) -> Result<f64> {
        for arm in [a, b] {
            if self.counts[arm] == 0 {
                return Err(BaiError::Domain(format!("arm {} was never sampled", arm + 1)));
            }
        }
        Ok(self.glr_pair_unchecked(a, b))
    }

    #[inline]
    pub(crate) fn glr_pair_unchecked(&self, a: usize, b: usize) -> f64 {
        let na = self.counts[a] as f64;
        let nb = self.counts[b] as f64;
        let d = self.means[a] - self.means[b];
        0.5 * na * nb / (na + nb) * d * d.abs()
    }

    /// `Z(t) = max_a min_{b≠a} Z_{a,b}(t)`.
    pub fn glr_stat(&self) -> Result<f64> {
        if let Some(a) = self.counts.iter().position(|&n| n == 0) {
            return Err(BaiError::Domain(format!("arm {} was never sampled", a + 1)));
        }
        Ok(self.glr_stat_unchecked())
    }

    pub(crate) fn glr_stat_unchecked(&self) -> f64 {
        let k = self.num_arms();
        (0..k)
            .map(|a| {
                (0..k)
                    .filter(|&b| b != a)
                    .map(|b| self.glr_pair_unchecked(a, b))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Empirical best arm, lowest index on ties.
    pub fn recommend(&self) -> usize {
        argmax(&self.means)
    }
}

/// Lowest index attaining the minimum.
pub(crate) fn argmin_by<F: Fn(usize) -> f64>(arms: impl Iterator<Item = usize>, key: F) -> usize {
    let mut best: Option<(usize, f64)> = None;
    for a in arms {
        let v = key(a);
        if best.is_none_or(|(_, bv)| v < bv) {
            best = Some((a, v));
        }
    }
    best.expect("argmin over an empty set").0
}

pub(crate) fn argmax(values: &[f64]) -> usize {
    argmin_by(0..values.len(), |a| -values[a])
}
