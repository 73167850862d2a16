//! Evaluators producing LHS/RHS/slack reports for the influence and
//! type inequalities, the scalar quadrature kernels behind their proofs,
//! and exhaustive truth-table scans at small `n`.

mod evaluators;
mod kernels;
mod scan;

pub use evaluators::{
    check_hypercontractivity, eval_kkl_boolean, eval_kkl_corollary, eval_kkl_vector,
    eval_poincare, eval_talagrand_eps_ratio, eval_talagrand_general, eval_type_p,
    DerivativeBounds,
};
pub use kernels::{kernel_gaussian_bound, kernel_integral, weight_integral};
pub use scan::{exhaustive_scan, truth_table_function, ScanEvaluator, ScanOutcome, MAX_SCAN_DIMENSION};
