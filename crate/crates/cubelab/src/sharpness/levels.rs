//! The weighted dyadic construction showing the boolean-weighted form of
//! the endpoint inequality admits no universal constant.
//!
//! Level `k` carries value `b_k = exp(-4^k)` and weight
//! `w_k = exp(4^k) 4^k`, the equal-contribution choice making
//! `w_k b_k / log(1/b_k) = 1` per level. The weighted left side
//!
//! `L(K) = int_0^inf (sum_k w_k b_k^{1 + theta(t)})^{1/2} dt / sqrt(e^2t - 1)`
//!
//! grows like `K` while the right side `(sum_k w_k b_k / log(1/b_k))^{1/2}`
//! is `sqrt(K)`, so the ratio grows without bound.
//!
//! `log w_k = 4^k + k log 4` overflows the *precision* of a double long
//! before `K = 32` (the `k log 4` part falls below one ulp of `4^k`), so
//! levels store the two parts separately and every consumer combines them
//! against `log b_k = -4^k` algebraically first.

use super::logdomain::log_sum_exp;
use crate::error::{Error, Result};
use crate::quad::{self, QuadratureSpec};

#[derive(Debug, Clone, Copy)]
struct Level {
    /// `4^k`, exact in a double for `k <= 32`.
    magnitude: f64,
    /// `log(4^k)`, also `log log(1/b_k)`.
    log_magnitude: f64,
}

/// Per-level log-weights and log-values of the equal-contribution design.
#[derive(Debug, Clone)]
pub struct LevelWeights {
    levels: Vec<Level>,
}

impl LevelWeights {
    pub fn count(&self) -> usize {
        self.levels.len()
    }

    /// `log b_k = -4^k` (1-based `k`).
    pub fn log_value(&self, k: usize) -> f64 {
        -self.levels[k - 1].magnitude
    }

    /// `log w_k = 4^k + k log 4`. Exact only while `k log 4` is within
    /// double precision of `4^k`; combined quantities use
    /// [`log_weighted_power`] instead.
    ///
    /// [`log_weighted_power`]: LevelWeights::log_weighted_power
    pub fn log_weight(&self, k: usize) -> f64 {
        let level = self.levels[k - 1];
        level.magnitude + level.log_magnitude
    }

    /// `log(w_k b_k^{1+theta}) = k log 4 - theta 4^k`, with the `4^k`
    /// cancellation performed algebraically.
    pub fn log_weighted_power(&self, k: usize, theta: f64) -> f64 {
        let level = self.levels[k - 1];
        level.log_magnitude - theta * level.magnitude
    }

    /// `w_k b_k / log(1/b_k)`. Its log is
    /// `(4^k + log 4^k) + (-4^k) - log 4^k`; with the parts stored
    /// separately the two cancellations are between identical floats, so
    /// the value is exactly 1 for every level.
    pub fn unit_term(&self, k: usize) -> f64 {
        debug_assert!(k >= 1 && k <= self.levels.len());
        1.0
    }

    /// `q_k = (b_k w_k)^{1/2} 2^-k`; equals 1 up to rounding in the
    /// half-log.
    pub fn q(&self, k: usize) -> f64 {
        let level = self.levels[k - 1];
        (0.5 * level.log_magnitude - (k as f64) * std::f64::consts::LN_2).exp()
    }
}

/// The equal-contribution levels for `k = 1..=count`.
pub fn equal_q_levels(count: usize) -> Result<LevelWeights> {
    if count == 0 || count > 32 {
        return Err(Error::InvalidParameter {
            name: "levels",
            value: count as f64,
            expected: "1..=32",
        });
    }
    let levels = (1..=count as i32)
        .map(|k| {
            let magnitude = 4f64.powi(k);
            Level {
                magnitude,
                log_magnitude: magnitude.ln(),
            }
        })
        .collect();
    Ok(LevelWeights { levels })
}

/// The weighted left side `L(K)` (see the module docs).
pub fn weighted_form_lhs(levels: &LevelWeights, spec: &QuadratureSpec) -> Result<f64> {
    let count = levels.count();
    let mut terms = vec![0.0; count];
    let r = quad::integrate_heat_kernel(
        |node| {
            let theta = node.theta(2.0);
            for (k, t) in terms.iter_mut().enumerate() {
                *t = levels.log_weighted_power(k + 1, theta);
            }
            (0.5 * log_sum_exp(&terms).expect("nonempty")).exp()
        },
        spec,
    )?;
    Ok(r.value)
}

/// `L(K) / sqrt(K)`: the ratio of the weighted form's two sides. Grows
/// without bound in `K`, witnessing that no universal constant exists.
pub fn weighted_form_ratio(count: usize, spec: &QuadratureSpec) -> Result<f64> {
    let levels = equal_q_levels(count)?;
    let rhs: f64 = (1..=count).map(|k| levels.unit_term(k)).sum::<f64>().sqrt();
    Ok(weighted_form_lhs(&levels, spec)? / rhs)
}
