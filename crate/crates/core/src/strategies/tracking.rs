use super::state::{argmin_by, StrategyState};

/// How target weights are turned into arm choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrackingMode {
    /// Cumulative tracking: `argmin_a N_a(t) − Σ_{s ≤ t} w̃_a(s)`.
    C,
    /// Direct tracking: `argmin_a N_a(t) − t · w̃_a(t)`.
    D,
}

impl TrackingMode {
    pub fn suffix(self) -> &'static str {
        match self {
            TrackingMode::C => "c",
            TrackingMode::D => "d",
        }
    }
}

/// Records `targets` as `w̃(t)` and returns the most lagging arm under `mode`.
/// Ties go to the lowest index.
pub fn track_select(state: &mut StrategyState, targets: &[f64], mode: TrackingMode) -> usize {
    state.push_targets(targets);
    select_lagging(state, targets, mode)
}

fn select_lagging(state: &StrategyState, targets: &[f64], mode: TrackingMode) -> usize {
    let counts = state.counts();
    match mode {
        TrackingMode::C => {
            let cum = state.cum_targets();
            argmin_by(0..counts.len(), |a| counts[a] as f64 - cum[a])
        }
        TrackingMode::D => {
            let t = state.t() as f64;
            argmin_by(0..counts.len(), |a| counts[a] as f64 - t * targets[a])
        }
    }
}
