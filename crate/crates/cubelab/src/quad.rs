//! Adaptive Gauss-Kronrod quadrature and the substitutions used throughout
//! the crate.
//!
//! Two improper forms recur:
//!
//! - heat-kernel integrals `int_0^inf F(t) dt / sqrt(e^2t - 1)`, which the
//!   substitution `w = sqrt(1 - e^-t)` turns into the regular integral
//!   `int_0^1 2 F(t(w)) / sqrt(2 - w^2) dw`;
//! - weight tails `int_1^inf h(t) / t^2 dt = int_0^inf h(e^x) e^-x dx`,
//!   which `x = 1/rho^2 - 1` turns into
//!   `2 int_0^1 h_log(1/rho^2 - 1) rho^-3 drho`. Working on the `x = log t`
//!   axis keeps slowly-decaying tails (mass out to `t ~ e^10^18`)
//!   reachable.
//!
//! Panels are refined worst-error-first; ties break on the left endpoint
//! and final sums run in interval order, so results are bit-reproducible.

use crate::error::{Error, Result};

/// Tolerances and panel budget for one adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Relative tolerance on the accumulated value.
    pub rel_tol: f64,
    /// Absolute floor below which the relative test is not tightened.
    pub abs_floor: f64,
    /// Maximum number of panels before giving up.
    pub max_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_floor: 1e-14,
            max_panels: 4096,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    fn target(&self, value_scale: f64) -> f64 {
        self.abs_floor.max(self.rel_tol * value_scale)
    }
}

/// Value and error estimate of a converged integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub panels: usize,
}

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const MIN_PANEL_WIDTH: f64 = 1e-290;

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut fv = [[0.0f64; 2]; 8];
    fv[7] = [f_center, f_center];
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    let mut res_abs = kronrod.abs();
    for k in 0..7 {
        let x = half * XGK[k];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[k] = [f1, f2];
        kronrod += WGK[k] * (f1 + f2);
        res_abs += WGK[k] * (f1.abs() + f2.abs());
        if k % 2 == 1 {
            gauss += WG[k / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for k in 0..7 {
        res_asc += WGK[k] * ((fv[k][0] - mean).abs() + (fv[k][1] - mean).abs());
    }
    let error = rescale_error((kronrod - gauss) * half, res_abs * half, res_asc * half);
    Panel {
        a,
        b,
        value: kronrod * half,
        error,
    }
}

/// Adaptive integration of `f` over `[a, b]`.
pub fn integrate(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_error: 0.0,
            panels: 0,
        });
    }
    let mut panels = vec![gk15(&mut f, a, b)];
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if !value.is_finite() {
            return Err(Error::DivergentIntegral {
                value,
                cap: f64::MAX,
            });
        }
        if error <= spec.target(value.abs()) {
            // deterministic final sum in interval order
            panels.sort_by(|p, q| p.a.total_cmp(&q.a));
            return Ok(QuadResult {
                value: panels.iter().map(|p| p.value).sum(),
                abs_error: panels.iter().map(|p| p.error).sum(),
                panels: panels.len(),
            });
        }
        if panels.len() >= spec.max_panels {
            return Err(Error::QuadratureNoConvergence {
                error,
                target: spec.target(value.abs()),
                panels: panels.len(),
            });
        }
        // split the worst splittable panel; ties break on the left endpoint
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.b - p.a > MIN_PANEL_WIDTH)
            .max_by(|(_, p), (_, q)| {
                p.error.total_cmp(&q.error).then(q.a.total_cmp(&p.a))
            })
            .map(|(i, _)| i);
        let Some(i) = worst else {
            return Err(Error::QuadratureNoConvergence {
                error,
                target: spec.target(value.abs()),
                panels: panels.len(),
            });
        };
        let Panel { a, b, .. } = panels[i];
        let mid = 0.5 * (a + b);
        panels[i] = gk15(&mut f, a, mid);
        panels.push(gk15(&mut f, mid, b));
    }
}

/// Result of a vector-valued adaptive integration.
#[derive(Debug, Clone)]
pub struct VectorQuadResult {
    pub value: Vec<f64>,
    pub abs_error: f64,
    pub panels: usize,
}

struct VectorPanel {
    a: f64,
    b: f64,
    value: Vec<f64>,
    error: f64,
}

fn gk15_vector(
    f: &mut impl FnMut(f64, &mut [f64]),
    a: f64,
    b: f64,
    dim: usize,
) -> VectorPanel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sample = vec![0.0; dim];
    let mut nodes: Vec<(f64, f64)> = Vec::with_capacity(15); // (kronrod w, gauss w)
    let mut values: Vec<Vec<f64>> = Vec::with_capacity(15);

    f(center, &mut sample);
    nodes.push((WGK[7], WG[3]));
    values.push(sample.clone());
    for k in 0..7 {
        let gauss_w = if k % 2 == 1 { WG[k / 2] } else { 0.0 };
        for x in [center - half * XGK[k], center + half * XGK[k]] {
            f(x, &mut sample);
            nodes.push((WGK[k], gauss_w));
            values.push(sample.clone());
        }
    }

    let mut kronrod = vec![0.0; dim];
    let mut gauss = vec![0.0; dim];
    for (i, (wk, wgauss)) in nodes.iter().enumerate() {
        for c in 0..dim {
            kronrod[c] += wk * values[i][c];
            gauss[c] += wgauss * values[i][c];
        }
    }
    // worst-component error with the same rescaling as the scalar rule
    let mut error = 0.0f64;
    for c in 0..dim {
        let mean = 0.5 * kronrod[c];
        let mut res_abs = 0.0;
        let mut res_asc = 0.0;
        for (i, (wk, _)) in nodes.iter().enumerate() {
            res_abs += wk * values[i][c].abs();
            res_asc += wk * (values[i][c] - mean).abs();
        }
        error = error.max(rescale_error(
            (kronrod[c] - gauss[c]) * half,
            res_abs * half,
            res_asc * half,
        ));
    }
    for c in &mut kronrod {
        *c *= half;
    }
    VectorPanel {
        a,
        b,
        value: kronrod,
        error,
    }
}

/// Adaptive integration of a vector-valued integrand; the error is
/// controlled in the max norm across components.
pub fn integrate_vector(
    mut f: impl FnMut(f64, &mut [f64]),
    a: f64,
    b: f64,
    dim: usize,
    spec: &QuadratureSpec,
) -> Result<VectorQuadResult> {
    let mut panels = vec![gk15_vector(&mut f, a, b, dim)];
    loop {
        let mut scale = 0.0f64;
        let mut error = 0.0f64;
        for p in &panels {
            error += p.error;
        }
        for c in 0..dim {
            let total: f64 = panels.iter().map(|p| p.value[c]).sum();
            if !total.is_finite() {
                return Err(Error::DivergentIntegral {
                    value: total,
                    cap: f64::MAX,
                });
            }
            scale = scale.max(total.abs());
        }
        if error <= spec.target(scale) {
            panels.sort_by(|p, q| p.a.total_cmp(&q.a));
            let mut value = vec![0.0; dim];
            for p in &panels {
                for (acc, v) in value.iter_mut().zip(&p.value) {
                    *acc += v;
                }
            }
            return Ok(VectorQuadResult {
                value,
                abs_error: panels.iter().map(|p| p.error).sum(),
                panels: panels.len(),
            });
        }
        if panels.len() >= spec.max_panels {
            return Err(Error::QuadratureNoConvergence {
                error,
                target: spec.target(scale),
                panels: panels.len(),
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.b - p.a > MIN_PANEL_WIDTH)
            .max_by(|(_, p), (_, q)| p.error.total_cmp(&q.error).then(q.a.total_cmp(&p.a)))
            .map(|(i, _)| i);
        let Some(i) = worst else {
            return Err(Error::QuadratureNoConvergence {
                error,
                target: spec.target(scale),
                panels: panels.len(),
            });
        };
        let (a, b) = (panels[i].a, panels[i].b);
        let mid = 0.5 * (a + b);
        panels[i] = gk15_vector(&mut f, a, mid, dim);
        panels.push(gk15_vector(&mut f, mid, b, dim));
    }
}

/// One evaluation point of a heat-kernel integral, carrying the
/// cancellation-free forms the integrands need.
#[derive(Debug, Clone, Copy)]
pub struct HeatNode {
    /// Time `t in (0, inf)`.
    pub t: f64,
    /// `e^-t`, exactly `1 - w^2`.
    pub exp_neg_t: f64,
    /// `e^-2t`.
    pub exp_neg_2t: f64,
    /// `1 - e^-2t`, computed as `w^2 (2 - w^2)`; accurate for tiny `t`.
    pub one_minus_exp_neg_2t: f64,
}

impl HeatNode {
    fn from_w(w: f64) -> Self {
        let w2 = w * w;
        let exp_neg_t = 1.0 - w2;
        Self {
            t: -(-w2).ln_1p(),
            exp_neg_t,
            exp_neg_2t: exp_neg_t * exp_neg_t,
            one_minus_exp_neg_2t: w2 * (2.0 - w2),
        }
    }

    /// Exponent `theta_p(t) = (1 - e^-2t) / (1 + (p-1) e^-2t)`.
    pub fn theta(&self, p: f64) -> f64 {
        self.one_minus_exp_neg_2t / (1.0 + (p - 1.0) * self.exp_neg_2t)
    }
}

/// `int_0^inf F(t) dt / sqrt(e^2t - 1)` for scalar `F`.
pub fn integrate_heat_kernel(
    mut f: impl FnMut(&HeatNode) -> f64,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    integrate(
        move |w| {
            let node = HeatNode::from_w(w);
            2.0 * f(&node) / (2.0 - w * w).sqrt()
        },
        0.0,
        1.0,
        spec,
    )
}

/// `int_0^inf F(t) dt / sqrt(e^2t - 1)` for vector-valued `F`.
pub fn integrate_heat_kernel_vector(
    mut f: impl FnMut(&HeatNode, &mut [f64]),
    dim: usize,
    spec: &QuadratureSpec,
) -> Result<VectorQuadResult> {
    integrate_vector(
        move |w, out| {
            let node = HeatNode::from_w(w);
            f(&node, out);
            let factor = 2.0 / (2.0 - w * w).sqrt();
            for v in out.iter_mut() {
                *v *= factor;
            }
        },
        0.0,
        1.0,
        dim,
        spec,
    )
}

/// `int_0^inf q(x) dx` for a nonnegative integrand on the log axis with a
/// possibly very slow power-law tail (`x` reaches ~1e300).
pub fn integrate_log_axis_tail(
    mut q: impl FnMut(f64) -> f64,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    integrate(
        move |rho| {
            let x = 1.0 / (rho * rho) - 1.0;
            2.0 * q(x) / (rho * rho * rho)
        },
        0.0,
        1.0,
        spec,
    )
}
