//! The characteristic-time problem for Gaussian best-arm identification.
//!
//! For a bandit with a unique best arm `a*` and gaps `Δ`, the optimal
//! sampling proportions `w` and the characteristic time `T` are obtained from
//! the unique root `r` of
//!
//! ```text
//! φ(r) = Σ_{a≠a*} 1 / (r Δ_a² − 1)² − 1,      r > 1/Δ_min²
//! ```
//!
//! through `w_{a*} = 1 / (1 + Σ_{a≠a*} 1/(rΔ_a² − 1))`,
//! `w_a = w_{a*} / (rΔ_a² − 1)` and `T = 2r / w_{a*}`.
//!
//! `φ` is convex and strictly decreasing, so Newton's method started below the
//! root climbs monotonically towards it at quadratic speed.

use crate::error::{BaiError, Result};
use crate::model::{compute_gaps, BanditInstance, GapVector};

pub const DEFAULT_TOL: f64 = 1e-10;

/// Hard cap on Newton steps. Quadratic convergence makes this unreachable for
/// valid input; it only stops NaN propagation.
pub const MAX_NEWTON_ITERATIONS: usize = 200;

/// Characteristic time, `+∞` for instances with several best arms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CharacteristicTime {
    Finite(f64),
    Infinite,
}

impl CharacteristicTime {
    pub fn finite(self) -> Option<f64> {
        match self {
            CharacteristicTime::Finite(t) => Some(t),
            CharacteristicTime::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, CharacteristicTime::Infinite)
    }
}

impl std::fmt::Display for CharacteristicTime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CharacteristicTime::Finite(t) => match f.precision() {
                Some(p) => write!(f, "{t:.p$}"),
                None => write!(f, "{t}"),
            },
            CharacteristicTime::Infinite => f.write_str("inf"),
        }
    }
}

/// Solution of the characteristic-time problem.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalAllocation {
    /// Root of `φ`; `None` for degenerate instances.
    pub r: Option<f64>,
    pub weights: Vec<f64>,
    pub characteristic_time: CharacteristicTime,
    /// The instance has at least two best arms.
    pub degenerate: bool,
    /// Newton steps taken (0 for the closed-form cases).
    pub iterations: usize,
}

impl OptimalAllocation {
    pub fn min_weight(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Uniform weights over the best arms, `T = +∞`.
    pub fn degenerate(gaps: &GapVector) -> Self {
        let mut weights = vec![0.0; gaps.num_arms()];
        let share = 1.0 / gaps.best_arms.len() as f64;
        for &a in &gaps.best_arms {
            weights[a] = share;
        }
        Self {
            r: None,
            weights,
            characteristic_time: CharacteristicTime::Infinite,
            degenerate: true,
            iterations: 0,
        }
    }
}

fn nondegenerate_min_gap(gaps: &GapVector) -> Result<f64> {
    match gaps.delta_min {
        Some(d) if gaps.is_unique() => Ok(d),
        _ => Err(BaiError::Degenerate),
    }
}

/// `φ(r)` for an instance with a unique best arm.
pub fn phi(gaps: &GapVector, r: f64) -> Result<f64> {
    let dmin = nondegenerate_min_gap(gaps)?;
    if !(r > 1.0 / (dmin * dmin)) {
        return Err(BaiError::Domain(format!(
            "phi is defined for r > 1/Δ_min² = {}, got {r}",
            1.0 / (dmin * dmin)
        )));
    }
    Ok(phi_unchecked(gaps, r).0)
}

/// `(φ(r), φ'(r))` without domain checks.
fn phi_unchecked(gaps: &GapVector, r: f64) -> (f64, f64) {
    let mut value = -1.0;
    let mut slope = 0.0;
    for (_, d) in gaps.suboptimal() {
        let d2 = d * d;
        let x = r * d2 - 1.0;
        let inv = 1.0 / x;
        let inv2 = inv * inv;
        value += inv2;
        slope -= 2.0 * d2 * inv2 * inv;
    }
    (value, slope)
}

/// Optimal weights and characteristic time of `instance`.
///
/// Degenerate instances (several best arms) get uniform weights over the best
/// arms and `T = +∞`. Two-armed instances are closed-form.
pub fn solve_allocation(instance: &BanditInstance, tol: f64) -> Result<OptimalAllocation> {
    if !(tol > 0.0) {
        return Err(BaiError::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let gaps = compute_gaps(instance);
    solve_gaps(&gaps, tol)
}

pub(crate) fn solve_gaps(gaps: &GapVector, tol: f64) -> Result<OptimalAllocation> {
    if !gaps.is_unique() || gaps.delta_min.is_none() {
        return Ok(OptimalAllocation::degenerate(gaps));
    }
    let k = gaps.num_arms();
    let best = gaps.best_arm();
    let dmin = gaps.delta_min.unwrap_or_default();

    if k == 2 {
        let d2 = dmin * dmin;
        if !(8.0 / d2).is_finite() {
            return Err(BaiError::SolverFailure {
                iterations: 0,
                residual: f64::NAN,
            });
        }
        return Ok(OptimalAllocation {
            r: Some(2.0 / d2),
            weights: vec![0.5, 0.5],
            characteristic_time: CharacteristicTime::Finite(8.0 / d2),
            degenerate: false,
            iterations: 0,
        });
    }

    let sqrt_k1 = ((k - 1) as f64).sqrt();
    let mut r = f64::max(2.0 / (dmin * dmin), (1.0 + sqrt_k1) / gaps.mean_sq_gap());
    if !r.is_finite() {
        return Err(BaiError::SolverFailure {
            iterations: 0,
            residual: f64::NAN,
        });
    }

    let mut iterations = 0;
    let (mut value, mut slope) = phi_unchecked(gaps, r);
    // At r = 2/Δmin² the runner-up term is exactly 1, which would tie its
    // weight with the best arm's; one step moves r off that point.
    while !(value.abs() < tol) || (iterations == 0 && value > 0.0) {
        if iterations >= MAX_NEWTON_ITERATIONS || !value.is_finite() || !(slope < 0.0) {
            return Err(BaiError::SolverFailure {
                iterations,
                residual: value.abs(),
            });
        }
        r -= value / slope;
        iterations += 1;
        (value, slope) = phi_unchecked(gaps, r);
    }

    let mut weights = vec![0.0; k];
    let mut denom = 1.0;
    for (a, d) in gaps.suboptimal() {
        let q = 1.0 / (r * d * d - 1.0);
        weights[a] = q;
        denom += q;
    }
    let w_best = 1.0 / denom;
    for (a, w) in weights.iter_mut().enumerate() {
        if a == best {
            *w = w_best;
        } else {
            *w *= w_best;
        }
    }
    Ok(OptimalAllocation {
        r: Some(r),
        weights,
        characteristic_time: CharacteristicTime::Finite(2.0 * r / w_best),
        degenerate: false,
        iterations,
    })
}

/// Tolerance on `Σ v = 1` accepted by [`g_value`].
pub const SIMPLEX_TOL: f64 = 1e-9;

/// Value of the inner (transportation) problem at proportions `v`:
/// `½ min_{a≠a*} v_{a*} v_a / (v_{a*} + v_a) · Δ_a²`.
///
/// Any best arm may serve as `a*`; with ties the minimum hits a zero gap and
/// the value is 0.
pub fn g_value(instance: &BanditInstance, v: &[f64]) -> Result<f64> {
    check_simplex(v, instance.num_arms())?;
    Ok(g_unchecked(instance.means(), v))
}

pub(crate) fn check_simplex(v: &[f64], k: usize) -> Result<()> {
    if v.len() != k {
        return Err(BaiError::Domain(format!(
            "weight vector has {} entries, expected {k}",
            v.len()
        )));
    }
    if v.iter().any(|x| !(*x >= 0.0)) {
        return Err(BaiError::Domain("weights must be nonnegative".into()));
    }
    let sum: f64 = v.iter().sum();
    if (sum - 1.0).abs() > SIMPLEX_TOL {
        return Err(BaiError::Domain(format!("weights sum to {sum}, not 1")));
    }
    Ok(())
}

pub(crate) fn g_unchecked(means: &[f64], v: &[f64]) -> f64 {
    let (best, best_mean) = means
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (a, m)| if m > acc.1 { (a, m) } else { acc });
    let vb = v[best];
    let mut min = f64::INFINITY;
    for (a, (&m, &va)) in means.iter().zip(v).enumerate() {
        if a == best {
            continue;
        }
        let s = vb + va;
        let ratio = if s > 0.0 { vb * va / s } else { 0.0 };
        let d = best_mean - m;
        min = min.min(ratio * d * d);
    }
    0.5 * min
}

/// Closed-form brackets on `r`, `w_max` and `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicBounds {
    pub r_lo: f64,
    pub r_hi: f64,
    pub wmax_lo: f64,
    pub wmax_hi: f64,
    pub t_lo: f64,
    pub t_hi: f64,
    /// Average squared gap over the `K − 1` suboptimal arms.
    pub mean_sq_gap: f64,
}

pub fn characteristic_bounds(gaps: &GapVector) -> Result<CharacteristicBounds> {
    let dmin = nondegenerate_min_gap(gaps)?;
    let k = gaps.num_arms() as f64;
    let c = 1.0 + (k - 1.0).sqrt();
    let dmin2 = dmin * dmin;
    let msq = gaps.mean_sq_gap();
    Ok(CharacteristicBounds {
        r_lo: f64::max(2.0 / dmin2, c / msq),
        r_hi: c / dmin2,
        wmax_lo: 1.0 / c,
        wmax_hi: 0.5,
        t_lo: f64::max(8.0 / dmin2, 4.0 * c / msq),
        t_hi: 2.0 * c * c / dmin2,
        mean_sq_gap: msq,
    })
}

/// Bernoulli relative entropy `kl(p, q)` for `p, q ∈ (0, 1)`.
pub fn kl_bernoulli(p: f64, q: f64) -> Result<f64> {
    let open = |x: f64| x > 0.0 && x < 1.0;
    if !open(p) || !open(q) {
        return Err(BaiError::Domain(format!(
            "kl_bernoulli needs p, q in (0, 1), got ({p}, {q})"
        )));
    }
    let v = p * (p / q).ln() + (1.0 - p) * ((1.0 - p) / (1.0 - q)).ln();
    Ok(v.max(0.0))
}

/// Largest number of arms accepted by [`brute_force_weights`].
pub const BRUTE_FORCE_MAX_ARMS: usize = 4;

/// Exhaustive maximization of [`g_value`] over the simplex grid with spacing
/// `grid_step`. Exponential in `K`; meant as a test oracle.
///
/// Ties keep the first maximizer in lexicographic enumeration order.
pub fn brute_force_weights(instance: &BanditInstance, grid_step: f64) -> Result<Vec<f64>> {
    let k = instance.num_arms();
    if k > BRUTE_FORCE_MAX_ARMS {
        return Err(BaiError::OracleRefused(format!(
            "grid oracle supports at most {BRUTE_FORCE_MAX_ARMS} arms, got {k}"
        )));
    }
    if !(grid_step > 0.0 && grid_step <= 0.1) {
        return Err(BaiError::OracleRefused(format!(
            "grid step must lie in (0, 0.1], got {grid_step}"
        )));
    }
    let n = (1.0 / grid_step).round() as usize;
    let scale = 1.0 / n as f64;
    let means = instance.means();

    let mut parts = vec![0usize; k];
    let mut point = vec![0.0; k];
    let mut best = (f64::NEG_INFINITY, vec![0.0; k]);
    // Odometer over compositions of n into k nonnegative parts.
    parts[k - 1] = n;
    loop {
        for (p, &c) in point.iter_mut().zip(&parts) {
            *p = c as f64 * scale;
        }
        let value = g_unchecked(means, &point);
        if value > best.0 {
            best = (value, point.clone());
        }
        if !next_composition(&mut parts) {
            break;
        }
    }
    Ok(best.1)
}

/// Advances `parts` (nonnegative, fixed sum) to the next composition in
/// lexicographic order. Returns `false` after the last one.
fn next_composition(parts: &mut [usize]) -> bool {
    let k = parts.len();
    // The last part holds the remainder; find the rightmost free slot that can
    // grow by borrowing from it.
    let rest = parts[k - 1];
    if rest > 0 {
        parts[k - 2] += 1;
        parts[k - 1] -= 1;
        return true;
    }
    // Carry: find rightmost i < k-1 with parts[i] > 0 and i > 0.
    let mut i = k - 2;
    loop {
        if i == 0 {
            return false;
        }
        if parts[i] > 0 {
            let moved = parts[i];
            parts[i] = 0;
            parts[i - 1] += 1;
            parts[k - 1] = moved - 1;
            return true;
        }
        i -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn inst(m: &[f64]) -> BanditInstance {
        BanditInstance::new(m.to_vec()).unwrap()
    }

    /// Independent root finder for φ: plain bisection on the bracketing
    /// interval (1/Δ_min², (1+√(K−1))/Δ_min²].
    fn bisect_phi(gaps: &GapVector) -> f64 {
        let d = gaps.delta_min.unwrap();
        let k = gaps.num_arms() as f64;
        let f = |r: f64| -> f64 {
            gaps.suboptimal()
                .map(|(_, g)| 1.0 / (r * g * g - 1.0).powi(2))
                .sum::<f64>()
                - 1.0
        };
        let mut lo = 1.0 / (d * d) * (1.0 + 1e-12);
        let mut hi = (1.0 + (k - 1.0).sqrt()) / (d * d) * 1.01;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn phi_trivial_roots() {
        let g = compute_gaps(&inst(&[1.0, 0.0]));
        assert_abs_diff_eq!(phi(&g, 2.0).unwrap(), 0.0, epsilon = 1e-15);
        let g = compute_gaps(&inst(&[1.0, 0.0, 0.0]));
        assert_abs_diff_eq!(phi(&g, 1.0 + 2f64.sqrt()).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn phi_near_root_recovered_from_table_weights() {
        // r = (w1/w2 + 1)/Δ2² from the reported weights of (0.9, 0.5, 0.45, 0.4).
        let g = compute_gaps(&inst(&[0.9, 0.5, 0.45, 0.4]));
        let r_table = (0.375 / 0.286 + 1.0) / 0.16;
        assert_abs_diff_eq!(r_table, 14.445, epsilon = 1e-3);
        assert!(phi(&g, r_table).unwrap().abs() < 1e-2);
        let r_bisect = bisect_phi(&g);
        assert!((r_bisect - r_table).abs() < 0.05, "bisection root {r_bisect}");
    }

    #[test]
    fn phi_domain_errors() {
        let g = compute_gaps(&inst(&[1.0, 0.0]));
        assert!(matches!(phi(&g, 1.0), Err(BaiError::Domain(_))));
        assert!(matches!(phi(&g, 0.5), Err(BaiError::Domain(_))));
        let tied = compute_gaps(&inst(&[1.0, 1.0, 0.0]));
        assert_eq!(phi(&tied, 10.0), Err(BaiError::Degenerate));
    }

    #[test]
    fn newton_matches_bisection() {
        for m in [
            vec![0.9, 0.8, 0.6, 0.4, 0.4],
            vec![0.9, 0.5, 0.45, 0.4],
            vec![0.3, 0.9, 0.1, 0.85, 0.0, 0.5],
        ] {
            let i = inst(&m);
            let sol = solve_allocation(&i, DEFAULT_TOL).unwrap();
            let r = sol.r.unwrap();
            let oracle = bisect_phi(&compute_gaps(&i));
            assert!((r - oracle).abs() <= 1e-8 * oracle, "{r} vs {oracle}");
            assert!(sol.iterations < 20);
        }
    }

    #[test]
    fn table_weights() {
        let w1 = solve_allocation(&inst(&[0.9, 0.8, 0.6, 0.4, 0.4]), DEFAULT_TOL).unwrap();
        for (got, want) in w1.weights.iter().zip([0.477, 0.476, 0.028, 0.010, 0.010]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-3);
        }
        let w2 = solve_allocation(&inst(&[0.9, 0.5, 0.45, 0.4]), DEFAULT_TOL).unwrap();
        for (got, want) in w2.weights.iter().zip([0.375, 0.286, 0.195, 0.144]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-3);
        }
    }

    #[test]
    fn two_arms_closed_form() {
        let sol = solve_allocation(&inst(&[0.9, 0.4]), DEFAULT_TOL).unwrap();
        assert_eq!(sol.weights, vec![0.5, 0.5]);
        assert_abs_diff_eq!(sol.characteristic_time.finite().unwrap(), 32.0, epsilon = 1e-9);
        let sol = solve_allocation(&inst(&[-0.2, 0.3]), DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(sol.characteristic_time.finite().unwrap(), 32.0, epsilon = 1e-9);
    }

    #[test]
    fn equal_gaps_closed_form() {
        let d = 0.1;
        let sol = solve_allocation(&inst(&[0.9, 0.9 - d, 0.9 - d, 0.9 - d, 0.9 - d]), DEFAULT_TOL)
            .unwrap();
        let want = [1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0];
        for (got, want) in sol.weights.iter().zip(want) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-9);
        }
        let t = sol.characteristic_time.finite().unwrap();
        let dd = 0.9 - (0.9 - d);
        assert_abs_diff_eq!(t, 18.0 / (dd * dd), epsilon = 1e-6);
    }

    #[test]
    fn degenerate_convention() {
        let sol = solve_allocation(&inst(&[0.5, 0.7, 0.7, 0.1]), DEFAULT_TOL).unwrap();
        assert!(sol.degenerate);
        assert_eq!(sol.weights, vec![0.0, 0.5, 0.5, 0.0]);
        assert!(sol.characteristic_time.is_infinite());
        assert_eq!(sol.r, None);
        assert_eq!(sol.characteristic_time.to_string(), "inf");
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(solve_allocation(&inst(&[1.0, 0.0, 0.5]), 0.0).is_err());
        assert!(solve_allocation(&inst(&[1.0, 0.0, 0.5]), f64::NAN).is_err());
    }

    #[test]
    fn near_tie_keeps_best_weight_strictly_largest() {
        let sol = solve_allocation(&inst(&[0.837, 0.838, 0.045, 0.199]), DEFAULT_TOL).unwrap();
        assert!(sol.weights[1] > sol.weights[0], "{:?}", sol.weights);
        assert!(sol.weights[0] > sol.weights[3] && sol.weights[3] > sol.weights[2]);
    }

    #[test]
    fn vanishing_gap_is_a_solver_failure() {
        let err = solve_allocation(&inst(&[1e-300, 0.0]), DEFAULT_TOL).unwrap_err();
        assert!(err.is_solver_failure());
        let err = solve_allocation(&inst(&[1e-300, 0.0, 0.0]), DEFAULT_TOL).unwrap_err();
        assert!(err.is_solver_failure(), "{err:?}");
    }

    #[test]
    fn g_value_examples() {
        let d = 0.7;
        let g = g_value(&inst(&[d, 0.0]), &[0.5, 0.5]).unwrap();
        assert_abs_diff_eq!(g, d * d / 8.0, epsilon = 1e-15);
        let g = g_value(&inst(&[0.4, 0.4, 0.1]), &[0.2, 0.3, 0.5]).unwrap();
        assert_eq!(g, 0.0);
        assert!(g_value(&inst(&[1.0, 0.0]), &[0.6, 0.6]).is_err());
        assert!(g_value(&inst(&[1.0, 0.0]), &[1.1, -0.1]).is_err());
        assert!(g_value(&inst(&[1.0, 0.0]), &[1.0]).is_err());
        // Zero mass on both arms of a pair contributes 0.
        let g = g_value(&inst(&[1.0, 0.0, 0.5]), &[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(g, 0.0);
    }

    #[test]
    fn g_at_optimum_is_inverse_time() {
        let mu = inst(&[0.9, 0.8, 0.6, 0.4, 0.4]);
        let sol = solve_allocation(&mu, DEFAULT_TOL).unwrap();
        let t = sol.characteristic_time.finite().unwrap();
        let g = g_value(&mu, &sol.weights).unwrap();
        assert_abs_diff_eq!(g * t, 1.0, epsilon = 1e-9);
        // T reported through the kl column: 3782 / kl(0.01, 0.99).
        let t_table = 3782.0 / kl_bernoulli(0.01, 0.99).unwrap();
        assert!((t - t_table).abs() < 1.0, "T = {t}, table {t_table}");
    }

    #[test]
    fn kl_examples() {
        assert_eq!(kl_bernoulli(0.5, 0.5).unwrap(), 0.0);
        // 0.01 ln(1/99) + 0.99 ln 99 = 0.98 ln 99
        assert_abs_diff_eq!(kl_bernoulli(0.01, 0.99).unwrap(), 0.98 * 99f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(kl_bernoulli(0.01, 0.99).unwrap(), 4.5032, epsilon = 1e-4);
        assert!(kl_bernoulli(0.0, 0.5).is_err());
        assert!(kl_bernoulli(0.5, 1.0).is_err());
        let mu2 = inst(&[0.9, 0.5, 0.45, 0.4]);
        let t = solve_allocation(&mu2, DEFAULT_TOL).unwrap().characteristic_time.finite().unwrap();
        assert!((t * kl_bernoulli(0.1, 0.9).unwrap() - 135.0).abs() <= 1.0);
    }

    #[test]
    fn bounds_examples() {
        let b = characteristic_bounds(&compute_gaps(&inst(&[0.5, 0.0]))).unwrap();
        assert_abs_diff_eq!(b.t_lo, 32.0, epsilon = 1e-9);
        assert_abs_diff_eq!(b.t_hi, 32.0, epsilon = 1e-9);
        // Equal gaps: the r bracket and the upper bound on T are tight, the
        // lower bound on T is not (T = 18/Δ² = 1800 while 4(1+√4)/Δ² = 1200).
        let eq = inst(&[0.1, 0.0, 0.0, 0.0, 0.0]);
        let b = characteristic_bounds(&compute_gaps(&eq)).unwrap();
        assert_abs_diff_eq!(b.r_lo, 300.0, epsilon = 1e-9);
        assert_abs_diff_eq!(b.r_hi, 300.0, epsilon = 1e-9);
        assert_abs_diff_eq!(b.t_hi, 1800.0, epsilon = 1e-6);
        assert_abs_diff_eq!(b.t_lo, 1200.0, epsilon = 1e-6);
        let t = solve_allocation(&eq, DEFAULT_TOL).unwrap().characteristic_time.finite().unwrap();
        assert_abs_diff_eq!(t, 1800.0, epsilon = 1e-6);
        let mu1 = inst(&[0.9, 0.8, 0.6, 0.4, 0.4]);
        let b = characteristic_bounds(&compute_gaps(&mu1)).unwrap();
        assert_abs_diff_eq!(b.t_lo, 800.0, epsilon = 1e-6);
        assert_abs_diff_eq!(b.t_hi, 1800.0, epsilon = 1e-6);
        let t = solve_allocation(&mu1, DEFAULT_TOL).unwrap().characteristic_time.finite().unwrap();
        assert!(b.t_lo <= t && t <= b.t_hi);
        assert!(characteristic_bounds(&compute_gaps(&inst(&[0.5, 0.5]))).is_err());
    }

    #[test]
    fn compositions_are_exhaustive() {
        let mut parts = vec![0, 0, 5];
        let mut count = 1;
        while next_composition(&mut parts) {
            assert_eq!(parts.iter().sum::<usize>(), 5);
            count += 1;
        }
        // C(5 + 2, 2)
        assert_eq!(count, 21);
    }

    #[test]
    fn brute_force_examples() {
        let w = brute_force_weights(&inst(&[0.5, 0.0]), 0.01).unwrap();
        assert_abs_diff_eq!(w[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(w[1], 0.5, epsilon = 1e-12);

        let w = brute_force_weights(&inst(&[0.9, 0.5, 0.45, 0.4]), 0.005).unwrap();
        for (got, want) in w.iter().zip([0.375, 0.286, 0.195, 0.144]) {
            assert!((got - want).abs() <= 0.01, "{w:?}");
        }

        let d = 0.3;
        let w = brute_force_weights(&inst(&[d, 0.0, 0.0]), 0.005).unwrap();
        let w1 = 1.0 / (1.0 + 2f64.sqrt());
        let rest = (1.0 - w1) / 2.0;
        for (got, want) in w.iter().zip([w1, rest, rest]) {
            assert!((got - want).abs() <= 0.01, "{w:?}");
        }
    }

    #[test]
    fn brute_force_refusals() {
        assert!(brute_force_weights(&inst(&[1.0, 0.8, 0.6, 0.4, 0.2]), 0.05).is_err());
        assert!(brute_force_weights(&inst(&[1.0, 0.8]), 0.2).is_err());
        assert!(brute_force_weights(&inst(&[1.0, 0.8]), 0.0).is_err());
    }
}
