//! Product confidence regions and the exploration-biased bandit.
//!
//! Given a box `Π_a [lo_a, hi_a]`, [`exploration_biased_weights`] returns the
//! point of the box whose optimal weight vector has the largest minimal
//! component. When every interval shares a common point the answer is the
//! uniform allocation; otherwise only one candidate per potential best arm
//! needs to be solved.

use crate::complexity::{solve_gaps, OptimalAllocation, DEFAULT_TOL};
use crate::error::{BaiError, Result};
use crate::model::{compute_gaps, BanditInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RadiusKind {
    /// `2 √(log(4s/γ) / s)`, time-uniform over all sample counts.
    Theoretical,
    /// `√(log(s/γ) / s)`, the tighter lengths used in experiments.
    Empirical,
}

/// Confidence-interval half-length as a function of a sample count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusScheme {
    pub kind: RadiusKind,
    pub gamma: f64,
}

impl RadiusScheme {
    pub fn new(kind: RadiusKind, gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(BaiError::Config(format!("gamma must lie in (0, 1), got {gamma}")));
        }
        Ok(Self { kind, gamma })
    }

    pub fn theoretical(gamma: f64) -> Result<Self> {
        Self::new(RadiusKind::Theoretical, gamma)
    }

    pub fn empirical(gamma: f64) -> Result<Self> {
        Self::new(RadiusKind::Empirical, gamma)
    }

    /// Same kind with risk `γ / k`, as used for each arm of a `k`-armed region.
    pub fn per_arm(&self, k: usize) -> Self {
        Self {
            kind: self.kind,
            gamma: self.gamma / k as f64,
        }
    }

    /// Half-length after `count ≥ 1` samples.
    pub fn radius(&self, count: u64) -> f64 {
        radius_with(self.kind, self.gamma, count)
    }
}

#[inline]
fn radius_with(kind: RadiusKind, gamma: f64, count: u64) -> f64 {
    let s = count as f64;
    match kind {
        RadiusKind::Theoretical => 2.0 * ((4.0 * s / gamma).ln() / s).sqrt(),
        RadiusKind::Empirical => ((s / gamma).ln() / s).sqrt(),
    }
}

/// `radius` as a free function, mirroring [`RadiusScheme::radius`].
pub fn radius(scheme: &RadiusScheme, count: u64) -> f64 {
    scheme.radius(count)
}

/// A box `Π_a [lo_a, hi_a]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceRegion {
    intervals: Vec<(f64, f64)>,
}

impl ConfidenceRegion {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.len() < 2 {
            return Err(BaiError::Domain(format!(
                "a region needs at least 2 arms, got {}",
                intervals.len()
            )));
        }
        for (a, &(lo, hi)) in intervals.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(BaiError::Domain(format!("interval {} is not finite", a + 1)));
            }
            if lo > hi {
                return Err(BaiError::Domain(format!(
                    "interval {} has lo {lo} > hi {hi}",
                    a + 1
                )));
            }
        }
        Ok(Self { intervals })
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn num_arms(&self) -> usize {
        self.intervals.len()
    }

    pub fn max_lower(&self) -> f64 {
        self.intervals.iter().map(|i| i.0).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_upper(&self) -> f64 {
        self.intervals.iter().map(|i| i.1).fold(f64::INFINITY, f64::min)
    }

    /// All intervals share at least one point.
    pub fn overlapping(&self) -> bool {
        self.min_upper() >= self.max_lower()
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.intervals.len()
            && self
                .intervals
                .iter()
                .zip(point)
                .all(|(&(lo, hi), &x)| lo <= x && x <= hi)
    }

    /// Intersects every interval with `[0, 1]`; an interval lying entirely
    /// outside collapses onto the nearest endpoint.
    pub fn clamped_to_unit(&self) -> Self {
        let intervals = self
            .intervals
            .iter()
            .map(|&(lo, hi)| (lo.clamp(0.0, 1.0), hi.clamp(0.0, 1.0)))
            .collect();
        Self { intervals }
    }
}

/// `[μ̂_a ± C_{γ/K}(N_a)]` for every arm. Intervals are not clamped.
pub fn build_region(
    empirical_means: &[f64],
    counts: &[u64],
    scheme: &RadiusScheme,
) -> Result<ConfidenceRegion> {
    if empirical_means.len() != counts.len() {
        return Err(BaiError::Domain("means and counts differ in length".into()));
    }
    if let Some(a) = counts.iter().position(|&c| c == 0) {
        return Err(BaiError::Domain(format!("arm {} was never sampled", a + 1)));
    }
    let per_arm = scheme.per_arm(counts.len());
    let intervals = empirical_means
        .iter()
        .zip(counts)
        .map(|(&m, &n)| {
            let c = per_arm.radius(n);
            (m - c, m + c)
        })
        .collect();
    ConfidenceRegion::new(intervals)
}

/// Output of [`exploration_biased_weights`].
#[derive(Debug, Clone, PartialEq)]
pub struct BiasedAllocation {
    /// The exploration-biased bandit `μ̃`, a point of the region.
    pub biased_bandit: Vec<f64>,
    /// `w(μ̃)`.
    pub weights: Vec<f64>,
    /// All intervals overlapped and the weights are uniform.
    pub uniform: bool,
}

impl BiasedAllocation {
    pub fn min_weight(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Point of `region` maximizing the minimal optimal weight, with its weights.
///
/// Candidates are tried in arm order and replaced only on a strictly larger
/// minimal weight, so ties go to the lowest arm index.
pub fn exploration_biased_weights(region: &ConfidenceRegion) -> Result<BiasedAllocation> {
    let k = region.num_arms();
    let max_lb = region.max_lower();
    let min_ub = region.min_upper();
    if min_ub >= max_lb {
        return Ok(BiasedAllocation {
            biased_bandit: vec![min_ub; k],
            weights: vec![1.0 / k as f64; k],
            uniform: true,
        });
    }

    let mut potential: Vec<usize> = (0..k).filter(|&a| region.intervals[a].1 > max_lb).collect();
    if potential.is_empty() {
        // Only reachable when the top interval is a single point at maxLB.
        potential = (0..k).filter(|&a| region.intervals[a].1 >= max_lb).collect();
    }

    let floor: Vec<f64> = region.intervals.iter().map(|&(lo, _)| lo.max(min_ub)).collect();
    let mut best: Option<(f64, Vec<f64>, OptimalAllocation)> = None;
    for a in potential {
        let mut candidate = floor.clone();
        candidate[a] = region.intervals[a].1;
        let gaps = compute_gaps(&BanditInstance::new(candidate.clone())?);
        let sol = solve_gaps(&gaps, DEFAULT_TOL)?;
        let score = if sol.degenerate { 0.0 } else { sol.min_weight() };
        if best.as_ref().is_none_or(|(s, _, _)| score > *s) {
            best = Some((score, candidate, sol));
        }
    }
    let (_, biased_bandit, sol) = best.expect("at least one potential best arm");
    Ok(BiasedAllocation {
        biased_bandit,
        weights: sol.weights,
        uniform: false,
    })
}

pub const EB_ORACLE_MAX_ARMS: usize = 3;

/// Exhaustive search of the region on a grid of spacing `grid_step` per axis
/// (endpoints included), scoring each point by its minimal optimal weight.
/// Points with tied best arms score 0. Test oracle for
/// [`exploration_biased_weights`].
pub fn brute_force_eb_bandit(region: &ConfidenceRegion, grid_step: f64) -> Result<BanditInstance> {
    let k = region.num_arms();
    if k > EB_ORACLE_MAX_ARMS {
        return Err(BaiError::OracleRefused(format!(
            "region oracle supports at most {EB_ORACLE_MAX_ARMS} arms, got {k}"
        )));
    }
    if !(grid_step > 0.0 && grid_step <= 0.05) {
        return Err(BaiError::OracleRefused(format!(
            "grid step must lie in (0, 0.05], got {grid_step}"
        )));
    }
    let axes: Vec<Vec<f64>> = region
        .intervals
        .iter()
        .map(|&(lo, hi)| {
            let n = ((hi - lo) / grid_step).floor() as usize;
            let mut pts: Vec<f64> = (0..=n).map(|i| lo + i as f64 * grid_step).collect();
            if *pts.last().unwrap_or(&lo) < hi {
                pts.push(hi);
            }
            pts
        })
        .collect();

    let mut idx = vec![0usize; k];
    let mut point = vec![0.0; k];
    let mut best = (f64::NEG_INFINITY, Vec::new());
    loop {
        for a in 0..k {
            point[a] = axes[a][idx[a]];
        }
        let gaps = compute_gaps(&BanditInstance::new(point.clone())?);
        let score = if gaps.is_unique() {
            solve_gaps(&gaps, DEFAULT_TOL)?.min_weight()
        } else {
            0.0
        };
        if score > best.0 {
            best = (score, point.clone());
        }
        // Odometer increment.
        let mut a = k;
        loop {
            if a == 0 {
                return BanditInstance::new(best.1);
            }
            a -= 1;
            idx[a] += 1;
            if idx[a] < axes[a].len() {
                break;
            }
            idx[a] = 0;
        }
    }
}
