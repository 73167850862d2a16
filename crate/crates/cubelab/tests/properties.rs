//! Property tests for the numerical invariants that hold on every input.

use cubelab::cube::CubeFunction;
use cubelab::report::InequalityReport;
use cubelab::sharpness::log_sum_exp;
use cubelab::space::{self, NormedSpace};
use cubelab::zoo;
use cubelab::NoiseModel;

use proptest::prelude::*;

fn value_table(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0f64, 1 << n)
}

proptest! {
    #[test]
    fn log_sum_exp_matches_naive_in_mild_range(
        terms in prop::collection::vec(-30.0..30.0f64, 1..12)
    ) {
        let naive = terms.iter().map(|t| t.exp()).sum::<f64>().ln();
        let stable = log_sum_exp(&terms).unwrap();
        prop_assert!((naive - stable).abs() <= 1e-10 * naive.abs().max(1.0));
    }

    #[test]
    fn log_sum_exp_is_shift_equivariant(
        terms in prop::collection::vec(-1e6..1e6f64, 1..12),
        shift in -1e6..1e6f64
    ) {
        let shifted: Vec<f64> = terms.iter().map(|t| t + shift).collect();
        let a = log_sum_exp(&terms).unwrap() + shift;
        let b = log_sum_exp(&shifted).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
    }

    #[test]
    fn parseval_and_roundtrip(n in 1usize..7, seed in 0u64..1000) {
        let values = {
            // deterministic table from the seed, independent of proptest's rng
            let f = zoo::random_vector(n, 1, seed, zoo::VectorModel::Cube).unwrap();
            f.values().to_vec()
        };
        let f = CubeFunction::scalar(n, values).unwrap();
        let s = f.walsh_transform();
        prop_assert!((s.total_energy() - f.mean_square()).abs() <= 1e-12 * f.mean_square().max(1.0));
        let back = s.inverse_walsh();
        prop_assert!(f.max_pointwise_distance(&back) <= 1e-12);
    }

    #[test]
    fn lp_norm_is_nondecreasing_in_p(n in 1usize..5, table in value_table(4)) {
        let len = 1 << n;
        let f = CubeFunction::scalar(n, table[..len].to_vec()).unwrap();
        let scalar = NormedSpace::scalar();
        let mut last = 0.0;
        for p in [1.0, 1.5, 2.0, 3.0] {
            let norm = space::lp_norm(&f, p, &scalar).unwrap();
            prop_assert!(norm + 1e-9 * norm.max(1.0) >= last);
            last = norm;
        }
    }

    #[test]
    fn variance_energy_sandwich(n in 1usize..5, table in value_table(4)) {
        let len = 1 << n;
        let f = CubeFunction::scalar(n, table[..len].to_vec()).unwrap();
        let scalar = NormedSpace::scalar();
        let (var2, energy) = space::variance_and_energy(&f, &scalar).unwrap();
        prop_assert!(var2 <= energy + 1e-9 * energy.max(1.0));
        prop_assert!(energy.sqrt() <= 2.0 * var2.sqrt() + 1e-9);
    }

    #[test]
    fn noise_model_is_standardized(t in 1e-6..20.0f64) {
        let m = NoiseModel::new(t).unwrap();
        let mean = m.p_plus() * m.delta_plus() + m.p_minus() * m.delta_minus();
        let second = m.p_plus() * m.delta_plus().powi(2) + m.p_minus() * m.delta_minus().powi(2);
        prop_assert!(mean.abs() <= 1e-13);
        prop_assert!((second - 1.0).abs() <= 1e-13);
    }

    #[test]
    fn tribes_formula_matches_enumeration(w in 1usize..5, s in 1usize..5) {
        prop_assume!(w * s <= 12);
        let params = zoo::TribesParams::new(w, s).unwrap();
        let f = zoo::tribes(&params).unwrap();
        let formula = zoo::tribes_influence_formula(&params);
        for j in 1..=params.n() {
            let measured = space::influence(&f, j).unwrap();
            prop_assert!((measured - formula).abs() <= 1e-12);
        }
    }

    #[test]
    fn report_pass_iff_slack_at_least_one(lhs in 1e-6..1e6f64, rhs in 1e-6..1e6f64) {
        let upper = InequalityReport::upper("p", lhs, rhs, 1.0);
        prop_assert_eq!(upper.pass, upper.slack >= 1.0 - 1e-9);
        let lower = InequalityReport::lower("p", lhs, rhs, 1.0);
        prop_assert_eq!(lower.pass, lower.slack >= 1.0 - 1e-9);
    }

    #[test]
    fn restriction_commutes_with_untouched_derivative(seed in 0u64..200) {
        let f = zoo::random_boolean(4, seed).unwrap();
        // restrict coordinate 2, differentiate original coordinate 4 (new 3)
        let a = zoo::restrict(&f.derivative(4).unwrap(), 2, zoo::Sign::Plus).unwrap();
        let b = zoo::restrict(&f, 2, zoo::Sign::Plus).unwrap().derivative(3).unwrap();
        prop_assert!(a.max_pointwise_distance(&b) == 0.0);
    }
}
