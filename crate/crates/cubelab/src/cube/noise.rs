//! The one-coordinate noise variable behind the heat-flow decomposition.
//!
//! At time `t > 0`, `xi(t)` takes the value `+1` with probability
//! `(1 + e^-t)/2` and `-1` with probability `(1 - e^-t)/2`; `delta(t)` is
//! its standardization `(xi - E xi)/sqrt(Var xi)`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct NoiseModel {
    t: f64,
    exp_neg_t: f64,
    /// `sqrt(1 - e^-2t)`, computed cancellation-free.
    sigma: f64,
    p_plus: f64,
    p_minus: f64,
    delta_plus: f64,
    delta_minus: f64,
}

impl NoiseModel {
    pub fn new(t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::InvalidTime {
                t,
                bound: "strictly positive",
            });
        }
        let exp_neg_t = (-t).exp();
        // 1 - e^-t and 1 - e^-2t via expm1 so small t stays accurate
        let one_minus_u = -(-t).exp_m1();
        let one_minus_u2 = -(-2.0 * t).exp_m1();
        let sigma = one_minus_u2.sqrt();
        Ok(Self {
            t,
            exp_neg_t,
            sigma,
            p_plus: (1.0 + exp_neg_t) / 2.0,
            p_minus: one_minus_u / 2.0,
            delta_plus: one_minus_u / sigma,
            delta_minus: -(1.0 + exp_neg_t) / sigma,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn exp_neg_t(&self) -> f64 {
        self.exp_neg_t
    }

    /// `sqrt(Var xi) = sqrt(1 - e^-2t)`; also `E[delta xi]`.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn p_plus(&self) -> f64 {
        self.p_plus
    }

    pub fn p_minus(&self) -> f64 {
        self.p_minus
    }

    pub fn delta_plus(&self) -> f64 {
        self.delta_plus
    }

    pub fn delta_minus(&self) -> f64 {
        self.delta_minus
    }

    /// `delta` evaluated at a sign of `xi`.
    pub fn delta(&self, xi_is_minus: bool) -> f64 {
        if xi_is_minus {
            self.delta_minus
        } else {
            self.delta_plus
        }
    }

    /// `1 / sqrt(e^2t - 1) = e^-t / sigma`, the kernel in front of the
    /// decomposition identity.
    pub fn kernel_prefactor(&self) -> f64 {
        self.exp_neg_t / self.sigma
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probabilities_and_standardization() {
        for &t in &[1e-8, 0.1, 0.5, 1.0, 2.0, 10.0] {
            let m = NoiseModel::new(t).unwrap();
            assert!((m.p_plus() + m.p_minus() - 1.0).abs() < 1e-15);
            let mean = m.p_plus() * m.delta_plus() + m.p_minus() * m.delta_minus();
            let second = m.p_plus() * m.delta_plus().powi(2) + m.p_minus() * m.delta_minus().powi(2);
            assert!(mean.abs() < 1e-14, "t={t}: E delta = {mean}");
            assert!((second - 1.0).abs() < 1e-14, "t={t}: E delta^2 = {second}");
        }
    }

    #[test]
    fn independent_copies_have_mean_square_difference_two() {
        // over the 4-point joint law of (xi, xi')
        let m = NoiseModel::new(0.7).unwrap();
        let outcomes = [(m.p_plus(), m.delta_plus()), (m.p_minus(), m.delta_minus())];
        let mut sum = 0.0;
        for &(p, d) in &outcomes {
            for &(q, e) in &outcomes {
                sum += p * q * (d - e) * (d - e);
            }
        }
        assert!((sum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_nonpositive_time() {
        assert!(NoiseModel::new(0.0).is_err());
        assert!(NoiseModel::new(-1.0).is_err());
        assert!(NoiseModel::new(f64::NAN).is_err());
    }

    #[test]
    fn delta_xi_correlation_is_sigma() {
        let m = NoiseModel::new(0.3).unwrap();
        let corr = m.p_plus() * m.delta_plus() - m.p_minus() * m.delta_minus();
        assert!((corr - m.sigma()).abs() < 1e-14);
    }
}
