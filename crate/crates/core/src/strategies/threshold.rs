use crate::error::{BaiError, Result};

use super::state::StrategyState;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdKind {
    /// `log(R t^α / δ)`.
    Theoretical { r: f64, alpha: f64 },
    /// `log((log t + 1) / δ)`.
    Empirical,
}

/// Stopping threshold `β(t, δ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdSpec {
    pub kind: ThresholdKind,
    pub delta: f64,
}

impl ThresholdSpec {
    pub fn empirical(delta: f64) -> Result<Self> {
        Self::new(ThresholdKind::Empirical, delta)
    }

    /// `R` is left to the caller; 1 is a reasonable default.
    pub fn theoretical(r: f64, alpha: f64, delta: f64) -> Result<Self> {
        Self::new(ThresholdKind::Theoretical { r, alpha }, delta)
    }

    pub fn new(kind: ThresholdKind, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(BaiError::Config(format!("delta must lie in (0, 1), got {delta}")));
        }
        if let ThresholdKind::Theoretical { r, alpha } = kind {
            if !(r > 0.0 && r.is_finite()) {
                return Err(BaiError::Config(format!("threshold constant R must be positive, got {r}")));
            }
            if !(1.0..=2.0).contains(&alpha) {
                return Err(BaiError::Config(format!("alpha must lie in [1, 2], got {alpha}")));
            }
        }
        Ok(Self { kind, delta })
    }

    pub fn beta(&self, t: u64) -> f64 {
        let t = t as f64;
        match self.kind {
            ThresholdKind::Theoretical { r, alpha } => (r * t.powf(alpha) / self.delta).ln(),
            ThresholdKind::Empirical => ((t.ln() + 1.0) / self.delta).ln(),
        }
    }
}

/// GLR stopping rule: stop as soon as `Z(t) > β(t, δ)`. Never fires before
/// every arm has been sampled.
pub fn should_stop(state: &StrategyState, threshold: &ThresholdSpec) -> bool {
    state.all_sampled() && state.glr_stat_unchecked() > threshold.beta(state.t())
}
