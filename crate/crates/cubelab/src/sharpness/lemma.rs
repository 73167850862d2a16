//! The square-root moment lemma and its matching lower-bound construction.
//!
//! The lemma: for any random variable `0 <= X <= 1` and any admissible `g`,
//!
//! `int_0^1 (E X^{s^2} g(sqrt(log(1/X))))^{1/2} ds
//!    <= (sqrt 2 + 8 sqrt pi) (int_1^inf g(s)/s^3 ds)^{1/2}`.
//!
//! The matching variable concentrates `X = exp(-Y^2)` on dyadic levels
//! `Y = 2^k` with masses proportional to `g(2^k) 4^-k` and gets within the
//! constant `e^-8 / 2` of the same integral (with the square root; the
//! two bounds bracket the integral between fixed multiples).

use std::f64::consts::{PI, SQRT_2};

use super::logdomain::log_sum_exp;
use crate::error::{Error, Result};
use crate::quad::{self, QuadratureSpec};
use crate::report::InequalityReport;
use crate::weights::WeightFunction;

/// `sqrt 2 + 8 sqrt pi`, the lemma's constant.
pub fn lemma_constant() -> f64 {
    SQRT_2 + 8.0 * PI.sqrt()
}

/// `e^-8 / 2`, the lower-bound constant of the sharp construction.
pub fn sharpness_constant() -> f64 {
    (-8.0f64).exp() / 2.0
}

/// A finite random variable on `(0, 1]` stored as `log X` atoms with
/// log-domain probabilities, so values like `exp(-4^K)` stay exact.
#[derive(Debug, Clone)]
pub struct DiscreteRandomVariable {
    /// `log` of each atom; all `<= 0`.
    log_atoms: Vec<f64>,
    /// `log` of each probability; `log_sum_exp` is 0 within 1e-12.
    log_probs: Vec<f64>,
}

impl DiscreteRandomVariable {
    pub fn from_log_parts(log_atoms: Vec<f64>, log_probs: Vec<f64>) -> Result<Self> {
        if log_atoms.is_empty() || log_atoms.len() != log_probs.len() {
            return Err(Error::EmptyInput("atoms"));
        }
        for &l in &log_atoms {
            if !(l <= 0.0) {
                return Err(Error::InvalidParameter {
                    name: "log atom",
                    value: l,
                    expected: "<= 0 (atoms in (0, 1])",
                });
            }
        }
        let total = log_sum_exp(&log_probs)?;
        if !(total.abs() <= 1e-12) {
            return Err(Error::ProbabilityNotNormalized { sum: total.exp() });
        }
        Ok(Self {
            log_atoms,
            log_probs,
        })
    }

    /// From linear atoms in `(0, 1]` and linear probabilities.
    pub fn from_linear(atoms: &[f64], probs: &[f64]) -> Result<Self> {
        if atoms.len() != probs.len() {
            return Err(Error::ValueLengthMismatch {
                got: probs.len(),
                expected: atoms.len(),
            });
        }
        for &a in atoms {
            if !(a > 0.0 && a <= 1.0) {
                return Err(Error::InvalidParameter {
                    name: "atom",
                    value: a,
                    expected: "in (0, 1]",
                });
            }
        }
        for &p in probs {
            if !(p > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "probability",
                    value: p,
                    expected: "> 0",
                });
            }
        }
        Self::from_log_parts(
            atoms.iter().map(|a| a.ln()).collect(),
            probs.iter().map(|p| p.ln()).collect(),
        )
    }

    /// The degenerate variable `X = atom` with probability one.
    pub fn point_mass(atom: f64) -> Result<Self> {
        Self::from_linear(&[atom], &[1.0])
    }

    /// Seeded random variable with `atoms` support points. Atom logs are
    /// `-4^u` with `u` uniform in `[-3, 8]`, mixing mild atoms with ones
    /// far below double-precision underflow.
    pub fn random(atoms: usize, seed: u64) -> Result<Self> {
        use rand::{Rng, SeedableRng};
        if atoms == 0 {
            return Err(Error::EmptyInput("atoms"));
        }
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        let mut log_atoms = Vec::with_capacity(atoms);
        let mut weights = Vec::with_capacity(atoms);
        for _ in 0..atoms {
            let u = rng.gen::<f64>() * 11.0 - 3.0;
            log_atoms.push(-(4f64.powf(u)));
            weights.push(rng.gen::<f64>() + 1e-3);
        }
        let total: f64 = weights.iter().sum();
        let log_probs = weights.iter().map(|w| (w / total).ln()).collect();
        Self::from_log_parts(log_atoms, log_probs)
    }

    pub fn support_len(&self) -> usize {
        self.log_atoms.len()
    }

    pub fn log_atoms(&self) -> &[f64] {
        &self.log_atoms
    }

    pub fn log_probs(&self) -> &[f64] {
        &self.log_probs
    }
}

/// `int_0^1 (E X^{s^2} g(sqrt(log(1/X))))^{1/2} ds` with the expectation
/// accumulated in log domain. Atoms at `X = 1` contribute `g(0)`.
pub fn lemma_lhs(
    x: &DiscreteRandomVariable,
    g: &WeightFunction,
    spec: &QuadratureSpec,
) -> Result<f64> {
    // per-atom constant part: log p_i + log g(sqrt(-log X_i))
    let base: Vec<f64> = x
        .log_atoms
        .iter()
        .zip(&x.log_probs)
        .map(|(&l, &lp)| lp + g.g((-l).sqrt()).ln())
        .collect();
    let log_atoms = x.log_atoms.clone();
    let mut terms = vec![0.0; base.len()];
    let r = quad::integrate(
        move |s| {
            let s2 = s * s;
            for (t, (b, l)) in terms.iter_mut().zip(base.iter().zip(&log_atoms)) {
                *t = b + s2 * l;
            }
            let lse = log_sum_exp(&terms).expect("nonempty");
            (0.5 * lse).exp()
        },
        0.0,
        1.0,
        spec,
    )?;
    Ok(r.value)
}

/// Checks the lemma: `lemma_lhs <= (sqrt2 + 8 sqrt pi) (int_1^inf g/s^3)^{1/2}`.
pub fn lemma_check(
    x: &DiscreteRandomVariable,
    g: &WeightFunction,
    spec: &QuadratureSpec,
) -> Result<InequalityReport> {
    g.validate(spec)?;
    let lhs = lemma_lhs(x, g, spec)?;
    let g_integral = g.integral_g_over_s3(spec)?;
    let rhs = lemma_constant() * g_integral.sqrt();
    Ok(InequalityReport::upper("lemma", lhs, rhs, lemma_constant())
        .with_inputs(format!("atoms={};g={}", x.support_len(), g.label()))
        .with_detail("g_integral", g_integral))
}

/// The sharp dyadic variable: `X = exp(-Y^2)` with
/// `P(Y = 2^k) = g(2^k) 4^-k / normalizer` for `k = 1..=levels`.
pub fn lemma_sharp_variable(g: &WeightFunction, levels: usize) -> Result<DiscreteRandomVariable> {
    if levels == 0 {
        return Err(Error::InvalidParameter {
            name: "levels",
            value: 0.0,
            expected: ">= 1",
        });
    }
    let mut masses = Vec::with_capacity(levels);
    let mut log_atoms = Vec::with_capacity(levels);
    for k in 1..=levels as i32 {
        let y = 2f64.powi(k);
        masses.push(g.g(y) * 0.25f64.powi(k));
        log_atoms.push(-(y * y)); // log X = -Y^2 = -4^k
    }
    let normalizer: f64 = masses.iter().sum();
    if normalizer <= 0.0 {
        return Err(Error::ZeroNormalizer("sum of g(2^k) 4^-k"));
    }
    let log_probs = masses.iter().map(|m| (m / normalizer).ln()).collect();
    DiscreteRandomVariable::from_log_parts(log_atoms, log_probs)
}

/// Checks the lower bound of the sharp construction:
/// `lemma_lhs(X_g) >= (e^-8 / 2) (int_1^{2^(levels+1)} g/s^3)^{1/2}`,
/// with the integral truncated at the construction's top level.
pub fn lemma_sharpness_check(
    g: &WeightFunction,
    levels: usize,
    spec: &QuadratureSpec,
) -> Result<InequalityReport> {
    let x = lemma_sharp_variable(g, levels)?;
    let lhs = lemma_lhs(&x, g, spec)?;
    let truncated = g.integral_g_over_s3_truncated(2f64.powi(levels as i32 + 1), spec)?;
    let rhs = sharpness_constant() * truncated.sqrt();
    Ok(
        InequalityReport::lower("lemma_sharpness", lhs, rhs, sharpness_constant())
            .with_inputs(format!("levels={levels};g={}", g.label()))
            .with_detail("g_integral_truncated", truncated),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn g_one() -> WeightFunction {
        WeightFunction::registry("one").unwrap()
    }

    /// Oracle: plain double-precision Simpson over a fine fixed grid, no
    /// log-domain tricks. Valid when nothing underflows.
    fn simpson_oracle(atoms: &[(f64, f64)], g: &WeightFunction) -> f64 {
        let steps = 20_000;
        let h = 1.0 / steps as f64;
        let integrand = |s: f64| -> f64 {
            let mean: f64 = atoms
                .iter()
                .map(|&(x, p)| p * x.powf(s * s) * g.g((x.recip().ln()).max(0.0).sqrt()))
                .sum();
            mean.sqrt()
        };
        let mut acc = integrand(0.0) + integrand(1.0);
        for i in 1..steps {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * integrand(i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn one_atom_gaussian_integral() {
        // X = e^-1, g = 1: int_0^1 e^{-s^2/2} ds
        let x = DiscreteRandomVariable::point_mass((-1.0f64).exp()).unwrap();
        let v = lemma_lhs(&x, &g_one(), &spec()).unwrap();
        let oracle = simpson_oracle(&[((-1.0f64).exp(), 1.0)], &g_one());
        assert!((v - oracle).abs() < 1e-9, "{v} vs {oracle}");
        assert!((v - 0.8556243918921488).abs() < 1e-6);
    }

    #[test]
    fn degenerate_atom_at_one() {
        let x = DiscreteRandomVariable::point_mass(1.0).unwrap();
        let v = lemma_lhs(&x, &g_one(), &spec()).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_atom_sum_matches_direct_quadrature() {
        // X uniform on {e^-1, e^-4}, g(y) = y
        let g = WeightFunction::registry("sqrt").unwrap(); // g(y) = h(y^2) = y
        let atoms = [((-1.0f64).exp(), 0.5), ((-4.0f64).exp(), 0.5)];
        let x = DiscreteRandomVariable::from_linear(
            &[atoms[0].0, atoms[1].0],
            &[0.5, 0.5],
        )
        .unwrap();
        let v = lemma_lhs(&x, &g, &spec()).unwrap();
        let oracle = simpson_oracle(&atoms, &g);
        assert!((v - oracle).abs() < 1e-9, "{v} vs {oracle}");
    }

    #[test]
    fn lemma_holds_on_examples() {
        let x = DiscreteRandomVariable::point_mass((-1.0f64).exp()).unwrap();
        let r = lemma_check(&x, &g_one(), &spec()).unwrap();
        assert!(r.pass);
        assert!((r.rhs - lemma_constant() * 0.5f64.sqrt()).abs() < 1e-9);
        assert!((r.rhs - 11.026).abs() < 1e-2);

        let degenerate = DiscreteRandomVariable::point_mass(1.0).unwrap();
        let r = lemma_check(&degenerate, &g_one(), &spec()).unwrap();
        assert!(r.pass);
        assert!((r.lhs - 1.0).abs() < 1e-9);
    }

    #[test]
    fn deep_atoms_do_not_underflow() {
        // atoms at exp(-4^k) for k up to 12 underflow doubles; the lemma
        // evaluation must survive and stay bounded
        let log_atoms: Vec<f64> = (1..=12).map(|k| -(4f64.powi(k))).collect();
        let n = log_atoms.len() as f64;
        let log_probs = vec![-(n.ln()); log_atoms.len()];
        let x = DiscreteRandomVariable::from_log_parts(log_atoms, log_probs).unwrap();
        let r = lemma_check(&x, &g_one(), &spec()).unwrap();
        assert!(r.pass);
        assert!(r.lhs.is_finite() && r.lhs > 0.0);
    }

    #[test]
    fn variable_validation() {
        assert!(DiscreteRandomVariable::from_linear(&[0.5], &[0.9]).is_err());
        assert!(DiscreteRandomVariable::from_linear(&[1.5], &[1.0]).is_err());
        assert!(DiscreteRandomVariable::from_linear(&[0.5, 0.1], &[0.5]).is_err());
        assert!(DiscreteRandomVariable::from_log_parts(vec![0.1], vec![0.0]).is_err());
        assert!(DiscreteRandomVariable::from_log_parts(vec![], vec![]).is_err());
    }

    #[test]
    fn sharp_variable_masses() {
        // g = 1, two levels: masses 1/4 : 1/16, so p_1 = 4/5
        let x = lemma_sharp_variable(&g_one(), 2).unwrap();
        assert_eq!(x.support_len(), 2);
        assert!((x.log_probs()[0].exp() - 0.8).abs() < 1e-14);
        assert!((x.log_probs()[1].exp() - 0.2).abs() < 1e-14);
        assert_eq!(x.log_atoms(), &[-4.0, -16.0]);

        // g(t) = t: masses 2^k 4^-k = 2^-k, so (4/7, 2/7, 1/7)
        let g_t = WeightFunction::registry("sqrt").unwrap();
        let x = lemma_sharp_variable(&g_t, 3).unwrap();
        for (i, expected) in [4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0].iter().enumerate() {
            assert!((x.log_probs()[i].exp() - expected).abs() < 1e-14);
        }

        // g(t) = t^2 (h = t), one level: a single atom
        let g_t2 = WeightFunction::registry("pow:1.0").unwrap();
        let x = lemma_sharp_variable(&g_t2, 1).unwrap();
        assert_eq!(x.support_len(), 1);
        assert!((x.log_probs()[0]).abs() < 1e-14);
    }

    #[test]
    fn sharp_variable_rejects_vanishing_weight() {
        let zero = WeightFunction::from_h("zero", |_| 0.0);
        assert!(matches!(
            lemma_sharp_variable(&zero, 3),
            Err(crate::Error::ZeroNormalizer(_))
        ));
        assert!(lemma_sharp_variable(&g_one(), 0).is_err());
    }

    #[test]
    fn sharpness_lower_bound_holds() {
        for (g, label) in [
            (g_one(), "one"),
            (WeightFunction::registry("pow:0.25").unwrap(), "g=sqrt"),
            (WeightFunction::registry("sqrt").unwrap(), "g=t"),
            (
                WeightFunction::from_g("g=t-over-log2", |y| y / (2.0 + y).ln().powi(2)),
                "g=t/log^2(2+t)",
            ),
        ] {
            for levels in [2, 4, 6] {
                let r = lemma_sharpness_check(&g, levels, &spec()).unwrap();
                assert!(r.pass, "{label} levels={levels}: slack {}", r.slack);
                // and the lemma upper bound holds on the same variable
                let x = lemma_sharp_variable(&g, levels).unwrap();
                let upper = lemma_check(&x, &g, &spec()).unwrap();
                assert!(upper.pass, "{label} levels={levels} upper");
            }
        }
    }
}
