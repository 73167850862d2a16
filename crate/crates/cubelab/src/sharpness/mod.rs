//! One-dimensional sharpness machinery in log-domain arithmetic.
//!
//! The constructions here involve atoms like `exp(-4^K)` that underflow
//! doubles long before the interesting range of `K`, so everything is
//! carried as natural logarithms and combined with [`log_sum_exp`].

mod lemma;
mod levels;
mod logdomain;

pub use lemma::{lemma_check, lemma_lhs, lemma_sharp_variable, lemma_sharpness_check, DiscreteRandomVariable};
pub use levels::{equal_q_levels, weighted_form_lhs, weighted_form_ratio, LevelWeights};
pub use logdomain::log_sum_exp;
