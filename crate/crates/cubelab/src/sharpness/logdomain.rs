//! Log-domain accumulation.

use crate::error::{Error, Result};

/// `log(sum_i exp(terms_i))`, safe against overflow and underflow via the
/// usual max shift. `-inf` terms drop out; an all-`-inf` input returns
/// `-inf`.
pub fn log_sum_exp(terms: &[f64]) -> Result<f64> {
    if terms.is_empty() {
        return Err(Error::EmptyInput("log_sum_exp terms"));
    }
    let max = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    let sum: f64 = terms.iter().map(|t| (t - max).exp()).sum();
    Ok(max + sum.ln())
}
