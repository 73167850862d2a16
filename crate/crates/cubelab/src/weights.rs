//! Nondecreasing weight functions `h` with a finite tail integral
//! `int_1^inf h(t)/t^2 dt`, and the companion `g(y) = h(y^2)` used by the
//! one-dimensional lemma machinery.
//!
//! Admissible weights can put most of their tail mass at astronomically
//! large `t` (e.g. `h(t) = t / log^1.5(2 + t)` keeps mass out to
//! `t ~ e^10^18`), so every weight also carries a log-axis form
//! `x -> h(e^x) e^-x` that never materializes `e^x`. Registry weights get
//! exact log-axis forms; weights built from a plain closure fall back to a
//! truncation at `t = e^700` (beyond double range, but still short of the
//! slowest admissible tails).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad::{self, QuadratureSpec};

/// Cap above which a weight tail integral is reported divergent.
pub const TAIL_INTEGRAL_CAP: f64 = 1e15;

type Eval = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A weight `h` on `[0, inf)` together with `g(y) = h(y^2)` and stable
/// log-axis evaluators.
#[derive(Clone)]
pub struct WeightFunction {
    label: String,
    h: Eval,
    /// `x -> h(e^x) e^-x`, stable for huge `x`.
    log_scaled: Eval,
    /// `y -> e^y h(e^{e^y}) e^{-e^y}`, the tail integrand on the doubly-log
    /// axis; needed because log-family weights keep mass out to
    /// `x = log t ~ e^10^9`.
    tail_q: Eval,
}

impl fmt::Debug for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightFunction")
            .field("label", &self.label)
            .finish()
    }
}

/// Derives the doubly-log tail integrand from a log-axis form, truncating
/// at `x = e^690` (safe for any tail decaying at least polynomially on the
/// `x` axis; the log families override this with exact forms).
fn derived_tail_q(log_scaled: Eval) -> Eval {
    Arc::new(move |y: f64| {
        if y < 690.0 {
            let x = y.exp();
            log_scaled(x) * x
        } else {
            0.0
        }
    })
}

impl WeightFunction {
    /// Weight from a plain closure; the log-axis form truncates at
    /// `t = e^700`.
    pub fn from_h(label: impl Into<String>, h: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        let h: Eval = Arc::new(h);
        let h2 = h.clone();
        let log_scaled: Eval =
            Arc::new(move |x| if x < 700.0 { h2(x.exp()) * (-x).exp() } else { 0.0 });
        Self {
            label: label.into(),
            h,
            tail_q: derived_tail_q(log_scaled.clone()),
            log_scaled,
        }
    }

    /// Weight from the `g` side (`h(t) = g(sqrt t)`); same truncation rule.
    pub fn from_g(label: impl Into<String>, g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        let g: Eval = Arc::new(g);
        let g2 = g.clone();
        let log_scaled: Eval = Arc::new(move |x| {
            if x < 1400.0 {
                g2((x / 2.0).exp()) * (-x).exp()
            } else {
                0.0
            }
        });
        Self {
            label: label.into(),
            h: Arc::new(move |t: f64| g(t.sqrt())),
            tail_q: derived_tail_q(log_scaled.clone()),
            log_scaled,
        }
    }

    fn exact(label: String, h: Eval, log_scaled: Eval) -> Self {
        Self {
            label,
            h,
            tail_q: derived_tail_q(log_scaled.clone()),
            log_scaled,
        }
    }

    fn with_tail_q(mut self, tail_q: Eval) -> Self {
        self.tail_q = tail_q;
        self
    }

    /// Looks up a label of the built-in registry:
    /// `one`, `sqrt`, `pow:<alpha>`, `t-over-log:<eps>`,
    /// `t-over-loglog:<eps>`.
    pub fn registry(label: &str) -> Result<Self> {
        if label == "one" {
            return Ok(Self::exact(
                "one".into(),
                Arc::new(|_| 1.0),
                Arc::new(|x: f64| (-x).exp()),
            ));
        }
        if label == "sqrt" {
            return Ok(Self::exact(
                "sqrt".into(),
                Arc::new(|t: f64| t.sqrt()),
                Arc::new(|x: f64| (-x / 2.0).exp()),
            ));
        }
        if let Some(rest) = label.strip_prefix("pow:") {
            let alpha: f64 = rest
                .parse()
                .map_err(|_| Error::UnknownWeightLabel(label.into()))?;
            return Ok(Self::exact(
                label.into(),
                Arc::new(move |t: f64| t.powf(alpha)),
                Arc::new(move |x: f64| ((alpha - 1.0) * x).exp()),
            ));
        }
        if let Some(rest) = label.strip_prefix("t-over-log:") {
            let eps: f64 = rest
                .parse()
                .map_err(|_| Error::UnknownWeightLabel(label.into()))?;
            return Ok(Self::exact(
                label.into(),
                Arc::new(move |t: f64| t / (2.0 + t).ln().powf(1.0 + eps)),
                // h(e^x) e^-x = ln(2 + e^x)^-(1+eps), with
                // ln(2 + e^x) = x + ln(1 + 2 e^-x)
                Arc::new(move |x: f64| {
                    let ln2ex = x + (2.0 * (-x).exp()).ln_1p();
                    ln2ex.powf(-(1.0 + eps))
                }),
            )
            // tail integrand x^-eps at x = e^y, with the x * x^-(1+eps)
            // cancellation done algebraically so x beyond doubles works
            .with_tail_q(Arc::new(move |y: f64| {
                let x = y.exp();
                if x <= 40.0 {
                    x * (x + (2.0 * (-x).exp()).ln_1p()).powf(-(1.0 + eps))
                } else {
                    (-eps * y).exp()
                }
            })));
        }
        if let Some(rest) = label.strip_prefix("t-over-loglog:") {
            let eps: f64 = rest
                .parse()
                .map_err(|_| Error::UnknownWeightLabel(label.into()))?;
            return Ok(Self::exact(
                label.into(),
                Arc::new(move |t: f64| {
                    t / ((2.0 + t).ln() * (10.0 + t).ln().ln().powf(1.0 + eps))
                }),
                Arc::new(move |x: f64| {
                    let ln2ex = x + (2.0 * (-x).exp()).ln_1p();
                    let lnln10ex = (x + (10.0 * (-x).exp()).ln_1p()).ln();
                    1.0 / (ln2ex * lnln10ex.powf(1.0 + eps))
                }),
            )
            // tail integrand -> (ln x)^-(1+eps) = y^-(1+eps); the mass sits
            // at x ~ e^10^9 and beyond, far outside double range
            .with_tail_q(Arc::new(move |y: f64| {
                let x = y.exp();
                if x <= 40.0 {
                    let l1 = x + (2.0 * (-x).exp()).ln_1p();
                    let l2 = (x + (10.0 * (-x).exp()).ln_1p()).ln();
                    x / (l1 * l2.powf(1.0 + eps))
                } else {
                    y.powf(-(1.0 + eps))
                }
            })));
        }
        Err(Error::UnknownWeightLabel(label.into()))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn h(&self, t: f64) -> f64 {
        (self.h)(t)
    }

    /// `g(y) = h(y^2)`.
    pub fn g(&self, y: f64) -> f64 {
        (self.h)(y * y)
    }

    /// `h(e^x) e^-x`.
    pub fn log_scaled(&self, x: f64) -> f64 {
        (self.log_scaled)(x)
    }

    /// Checks `h >= 0` and nondecreasing on a sampled grid, and that the
    /// tail integral is finite and positive.
    pub fn validate(&self, spec: &QuadratureSpec) -> Result<()> {
        let mut last = 0.0f64;
        for k in 0..=120 {
            let t = (0.1 * k as f64).exp() - 1.0; // grid from 0 to ~e^12
            let v = self.h(t);
            if !(v >= 0.0) {
                return Err(Error::InvalidWeight(format!(
                    "{}: h({t:.3e}) = {v:.3e} is negative or NaN",
                    self.label
                )));
            }
            if v < last * (1.0 - 1e-9) {
                return Err(Error::InvalidWeight(format!(
                    "{}: h decreases near t = {t:.3e}",
                    self.label
                )));
            }
            last = v;
        }
        let integral = self.integral_h_over_t2(spec)?;
        if integral <= 0.0 {
            return Err(Error::InvalidWeight(format!(
                "{}: tail integral is zero",
                self.label
            )));
        }
        Ok(())
    }

    /// `int_1^inf h(t) / t^2 dt`, split as the head `x = log t in [0, 1]`
    /// plus the tail on the doubly-log axis `y = log log t`.
    pub fn integral_h_over_t2(&self, spec: &QuadratureSpec) -> Result<f64> {
        let head = quad::integrate(|x| self.log_scaled(x), 0.0, 1.0, spec)?;
        let tail = quad::integrate_log_axis_tail(|y| (self.tail_q)(y), spec)?;
        let value = head.value + tail.value;
        if value > TAIL_INTEGRAL_CAP {
            return Err(Error::DivergentIntegral {
                value,
                cap: TAIL_INTEGRAL_CAP,
            });
        }
        Ok(value)
    }

    /// `int_1^inf g(s) / s^3 ds`, which is half the `h` tail integral.
    pub fn integral_g_over_s3(&self, spec: &QuadratureSpec) -> Result<f64> {
        Ok(self.integral_h_over_t2(spec)? / 2.0)
    }

    /// `int_1^B g(s) / s^3 ds` for a finite truncation level `B`.
    pub fn integral_g_over_s3_truncated(&self, upper: f64, spec: &QuadratureSpec) -> Result<f64> {
        if !(upper > 1.0) {
            return Err(Error::InvalidParameter {
                name: "upper",
                value: upper,
                expected: "> 1",
            });
        }
        // int_1^B g/s^3 ds = (1/2) int_1^{B^2} h(t)/t^2 dt
        //                  = (1/2) int_0^{2 ln B} h(e^x) e^-x dx
        let r = quad::integrate(|x| self.log_scaled(x), 0.0, 2.0 * upper.ln(), spec)?;
        Ok(r.value / 2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn constant_weight_integrates_to_one() {
        let w = WeightFunction::registry("one").unwrap();
        assert!((w.integral_h_over_t2(&spec()).unwrap() - 1.0).abs() < 1e-10);
        assert!((w.integral_g_over_s3(&spec()).unwrap() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn sqrt_weight_integrates_to_two() {
        let w = WeightFunction::registry("sqrt").unwrap();
        assert!((w.integral_h_over_t2(&spec()).unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn power_weight_closed_form() {
        // int_1^inf t^(1-eps) / t^2 dt = 1/eps
        let w = WeightFunction::registry("pow:0.75").unwrap();
        assert!((w.integral_h_over_t2(&spec()).unwrap() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn g_truncation_matches_closed_forms() {
        let one = WeightFunction::registry("one").unwrap();
        // int_1^B s^-3 ds = (1 - B^-2)/2
        let b: f64 = 8.0;
        let expected = (1.0 - b.powi(-2)) / 2.0;
        assert!((one.integral_g_over_s3_truncated(b, &spec()).unwrap() - expected).abs() < 1e-11);

        // g(s) = s (h = sqrt): int_1^B s^-2 ds = 1 - 1/B
        let sqrt = WeightFunction::registry("sqrt").unwrap();
        assert!(
            (sqrt.integral_g_over_s3_truncated(b, &spec()).unwrap() - (1.0 - 1.0 / b)).abs()
                < 1e-11
        );
    }

    #[test]
    fn slow_log_tail_is_captured() {
        // int_1^inf dt / (t ln^(1+eps)(2+t)) has mass out to t ~ e^10^9 at
        // eps = 0.5; the log-axis route must still converge
        let w = WeightFunction::registry("t-over-log:0.5").unwrap();
        let v = w.integral_h_over_t2(&spec()).unwrap();
        assert!(v.is_finite() && v > 1.0, "value {v}");
        // cross-check against the same integral on the x = ln t axis,
        // integrand (x + ln(1+2e^-x))^-1.5, with an analytic remainder
        // bound: int_X^inf x^-1.5 dx = 2/sqrt(X)
        let x_cut = 1e8;
        let head = quad::integrate(|x| w.log_scaled(x), 0.0, x_cut, &spec()).unwrap().value;
        let tail_low = 2.0 / (x_cut + 1.0f64).sqrt();
        let tail_high = 2.0 / x_cut.sqrt() * 1.01;
        assert!(v > head + tail_low * 0.9, "v={v} head={head}");
        assert!(v < head + tail_high * 1.1, "v={v} head={head}");
    }

    #[test]
    fn loglog_weight_is_finite() {
        let w = WeightFunction::registry("t-over-loglog:1.0").unwrap();
        let v = w.integral_h_over_t2(&spec()).unwrap();
        assert!(v.is_finite() && v > 0.0);
        w.validate(&spec()).unwrap();
    }

    #[test]
    fn divergent_weight_is_rejected() {
        let w = WeightFunction::registry("pow:1.0").unwrap();
        assert!(w.integral_h_over_t2(&spec()).is_err());
    }

    #[test]
    fn decreasing_weight_fails_validation() {
        let w = WeightFunction::from_h("bad", |t| 1.0 / (1.0 + t));
        assert!(matches!(w.validate(&spec()), Err(Error::InvalidWeight(_))));
    }

    #[test]
    fn registry_rejects_unknown_labels() {
        assert!(WeightFunction::registry("cubed").is_err());
        assert!(WeightFunction::registry("pow:x").is_err());
    }

    #[test]
    fn from_g_matches_h_side() {
        // g(y) = y corresponds to h(t) = sqrt t
        let via_g = WeightFunction::from_g("g=t", |y| y);
        let via_h = WeightFunction::registry("sqrt").unwrap();
        assert!((via_g.integral_h_over_t2(&spec()).unwrap()
            - via_h.integral_h_over_t2(&spec()).unwrap())
        .abs()
            < 1e-9);
        assert!((via_g.g(3.0) - 3.0).abs() < 1e-15);
        assert!((via_g.h(9.0) - 3.0).abs() < 1e-15);
    }
}
