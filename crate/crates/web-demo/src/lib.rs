//! Browser bindings for `gaussian-bai`.
//!
//! Three operations are exported to JavaScript: [`solve`], [`eb_weights`]
//! and [`trace`]. Each one wraps a plain Rust function of the same name with
//! a `_native` suffix so the logic can be tested without a browser.

use gaussian_bai::simulator::{run_once, SimulationConfig, TrajectoryConfig};
use gaussian_bai::strategies::{StrategySpec, ThresholdSpec};
use gaussian_bai::{
    exploration_biased_weights, solve_allocation, BanditInstance, ConfidenceRegion, RadiusScheme,
    DEFAULT_TOL,
};
use wasm_bindgen::prelude::*;

/// Longest run the demo will simulate.
pub const DEMO_MAX_STEPS: u64 = 200_000;

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    weights: Vec<f64>,
    characteristic_time: f64,
    degenerate: bool,
    iterations: usize,
}

#[wasm_bindgen]
impl Solution {
    #[wasm_bindgen(getter)]
    pub fn weights(&self) -> Vec<f64> {
        self.weights.clone()
    }

    /// `Infinity` when several arms share the best mean.
    #[wasm_bindgen(getter, js_name = characteristicTime)]
    pub fn characteristic_time(&self) -> f64 {
        self.characteristic_time
    }

    #[wasm_bindgen(getter)]
    pub fn degenerate(&self) -> bool {
        self.degenerate
    }

    #[wasm_bindgen(getter)]
    pub fn iterations(&self) -> usize {
        self.iterations
    }
}

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct BiasedWeights {
    biased_bandit: Vec<f64>,
    weights: Vec<f64>,
    uniform: bool,
}

#[wasm_bindgen]
impl BiasedWeights {
    #[wasm_bindgen(getter, js_name = biasedBandit)]
    pub fn biased_bandit(&self) -> Vec<f64> {
        self.biased_bandit.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn weights(&self) -> Vec<f64> {
        self.weights.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn uniform(&self) -> bool {
        self.uniform
    }
}

/// One simulated run. Frequencies and targets are row-major,
/// `num_arms` values per recorded step.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    num_arms: usize,
    times: Vec<f64>,
    frequencies: Vec<f64>,
    targets: Vec<f64>,
    tau: u64,
    recommended: usize,
    truncated: bool,
}

#[wasm_bindgen]
impl Trace {
    #[wasm_bindgen(getter, js_name = numArms)]
    pub fn num_arms(&self) -> usize {
        self.num_arms
    }

    #[wasm_bindgen(getter)]
    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn frequencies(&self) -> Vec<f64> {
        self.frequencies.clone()
    }

    /// Empty for rules without target weights.
    #[wasm_bindgen(getter)]
    pub fn targets(&self) -> Vec<f64> {
        self.targets.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn tau(&self) -> f64 {
        self.tau as f64
    }

    /// Zero-based index of the recommended arm.
    #[wasm_bindgen(getter)]
    pub fn recommended(&self) -> usize {
        self.recommended
    }

    #[wasm_bindgen(getter)]
    pub fn truncated(&self) -> bool {
        self.truncated
    }
}

pub fn solve_native(means: &[f64]) -> Result<Solution, String> {
    let instance = BanditInstance::new(means.to_vec()).map_err(|e| e.to_string())?;
    let sol = solve_allocation(&instance, DEFAULT_TOL).map_err(|e| e.to_string())?;
    Ok(Solution {
        characteristic_time: sol.characteristic_time.finite().unwrap_or(f64::INFINITY),
        weights: sol.weights,
        degenerate: sol.degenerate,
        iterations: sol.iterations,
    })
}

pub fn eb_weights_native(lower: &[f64], upper: &[f64]) -> Result<BiasedWeights, String> {
    if lower.len() != upper.len() {
        return Err(format!(
            "{} lower bounds but {} upper bounds",
            lower.len(),
            upper.len()
        ));
    }
    let region = ConfidenceRegion::new(lower.iter().copied().zip(upper.iter().copied()).collect())
        .map_err(|e| e.to_string())?;
    let alloc = exploration_biased_weights(&region).map_err(|e| e.to_string())?;
    Ok(BiasedWeights {
        biased_bandit: alloc.biased_bandit,
        weights: alloc.weights,
        uniform: alloc.uniform,
    })
}

pub fn trace_native(
    means: &[f64],
    strategy: &str,
    delta: f64,
    gamma: f64,
    seed: u64,
) -> Result<Trace, String> {
    let instance = BanditInstance::new(means.to_vec()).map_err(|e| e.to_string())?;
    let radius = RadiusScheme::empirical(gamma).map_err(|e| e.to_string())?;
    let spec = StrategySpec::from_id(strategy, radius).map_err(|e| e.to_string())?;
    let threshold = ThresholdSpec::empirical(delta).map_err(|e| e.to_string())?;
    let mut config = SimulationConfig::new(instance, spec, threshold);
    config.master_seed = seed;
    config.max_steps = DEMO_MAX_STEPS;
    config.trajectory = Some(TrajectoryConfig::default());
    let run = run_once(&config, 0).map_err(|e| e.to_string())?;
    let points = run.trajectory.unwrap_or_default();
    let has_targets = points.iter().all(|p| p.targets.is_some());
    Ok(Trace {
        num_arms: means.len(),
        times: points.iter().map(|p| p.t as f64).collect(),
        frequencies: points.iter().flat_map(|p| p.frequencies.iter().copied()).collect(),
        targets: if has_targets {
            points.iter().flat_map(|p| p.targets.iter().flatten().copied()).collect()
        } else {
            Vec::new()
        },
        tau: run.tau,
        recommended: run.recommended,
        truncated: run.truncated,
    })
}

/// Optimal weights and characteristic time of a Gaussian bandit.
#[wasm_bindgen]
pub fn solve(means: Vec<f64>) -> Result<Solution, JsError> {
    solve_native(&means).map_err(|e| JsError::new(&e))
}

/// Exploration-biased weights of the box `[lower_a, upper_a]`.
#[wasm_bindgen(js_name = ebWeights)]
pub fn eb_weights(lower: Vec<f64>, upper: Vec<f64>) -> Result<BiasedWeights, JsError> {
    eb_weights_native(&lower, &upper).map_err(|e| JsError::new(&e))
}

/// One run of `strategy` with empirical radii and threshold.
#[wasm_bindgen]
pub fn trace(means: Vec<f64>, strategy: &str, delta: f64, gamma: f64, seed: u32) -> Result<Trace, JsError> {
    trace_native(&means, strategy, delta, gamma, seed as u64).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_matches_two_arm_closed_form() {
        let s = solve_native(&[0.9, 0.4]).unwrap();
        assert_eq!(s.weights, vec![0.5, 0.5]);
        assert!((s.characteristic_time - 32.0).abs() < 1e-9);
        assert!(solve_native(&[0.3, 0.3]).unwrap().characteristic_time.is_infinite());
        assert!(solve_native(&[0.3]).is_err());
    }

    #[test]
    fn eb_weights_checks_lengths() {
        assert!(eb_weights_native(&[0.1, 0.2], &[0.3]).is_err());
        let w = eb_weights_native(&[0.1, 0.2], &[0.4, 0.5]).unwrap();
        assert!(w.uniform);
    }

    #[test]
    fn trace_rows_are_consistent() {
        let t = trace_native(&[0.9, 0.5, 0.45, 0.4], "ebs-c", 0.1, 0.1, 1).unwrap();
        let rows = t.times.len();
        assert_eq!(t.frequencies.len(), rows * 4);
        assert_eq!(t.targets.len(), rows * 4);
        assert_eq!(*t.times.last().unwrap(), t.tau as f64);
        let racing = trace_native(&[0.9, 0.5], "racing", 0.1, 0.1, 1).unwrap();
        assert!(racing.targets.is_empty());
        assert!(trace_native(&[0.9, 0.5], "nope", 0.1, 0.1, 1).is_err());
    }
}
