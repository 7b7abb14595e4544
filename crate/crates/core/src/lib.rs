//! Fixed-confidence best-arm identification for unit-variance Gaussian bandits.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`]: bandit instances and their gap structure.
//! - [`complexity`]: the characteristic-time problem, solved by a Newton
//!   iteration on a scalar convex function, together with closed-form bounds,
//!   the inner value `g` and a brute-force grid oracle.
//! - [`confidence`]: product confidence regions and the exploration-biased
//!   bandit that maximizes the minimal optimal weight inside a region.
//! - [`strategies`]: sampling rules (exploration-biased sampling,
//!   track-and-stop, Chernoff racing, LUCB++, uniform) sharing one GLR
//!   stopping rule.
//! - [`simulator`]: seeded Gaussian reward streams, single runs with optional
//!   trajectories and Monte-Carlo aggregation.

pub mod complexity;
pub mod confidence;
pub mod error;
pub mod model;
pub mod simulator;
pub mod strategies;

pub use complexity::{
    brute_force_weights, characteristic_bounds, g_value, kl_bernoulli, phi, solve_allocation,
    CharacteristicBounds, CharacteristicTime, OptimalAllocation, DEFAULT_TOL,
};
pub use confidence::{
    brute_force_eb_bandit, build_region, exploration_biased_weights, BiasedAllocation,
    ConfidenceRegion, RadiusKind, RadiusScheme,
};
pub use error::{BaiError, Result};
pub use model::{compute_gaps, BanditInstance, GapVector};
