//! The scalar integrals appearing in the proofs: the heat-kernel integral
//! `I_p(a) = int_0^inf a^theta_p(t) dt / sqrt(e^2t - 1)`, its Gaussian
//! closed-form bound, and weight tail integrals.

use crate::error::{Error, Result};
use crate::quad::{self, QuadratureSpec};
use crate::weights::WeightFunction;

/// `int_0^inf a^{(1 - e^-2t)/(1 + (p-1) e^-2t)} dt / sqrt(e^2t - 1)`
/// for `a in (0, 1]`. At `p = 2` this is the kernel of the type-2 bound;
/// `I_p(1) = pi/2` for every `p`.
pub fn kernel_integral(a: f64, p: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            expected: "in (0, 1]",
        });
    }
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent {
            p,
            expected: "p >= 1",
        });
    }
    let ln_a = a.ln();
    let r = quad::integrate_heat_kernel(|node| (node.theta(p) * ln_a).exp(), spec)?;
    Ok(r.value)
}

/// The closed-form majorant `e sqrt(pi) / sqrt(log(e/a))` of the `p = 2`
/// kernel integral.
pub fn kernel_gaussian_bound(a: f64) -> Result<f64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            expected: "in (0, 1]",
        });
    }
    Ok(std::f64::consts::E * std::f64::consts::PI.sqrt() / (1.0 - a.ln()).sqrt())
}

/// `int_1^inf h(t) / t^2 dt` for a validated weight.
pub fn weight_integral(h: &WeightFunction, spec: &QuadratureSpec) -> Result<f64> {
    h.validate(spec)?;
    h.integral_h_over_t2(spec)
}
