//! Analysis of functions on the discrete hypercube `{-1,1}^n`.
//!
//! The crate provides, at desk scale (n up to 30 for materialized tables,
//! exhaustive scans up to n = 4):
//!
//! - the Walsh-Fourier calculus: fast Walsh-Hadamard transform, discrete
//!   derivatives, Laplacian, and the heat semigroup ([`cube`]);
//! - target-space geometry: `l_q^d` norms, influences, independent-copy
//!   energy, empirical Rademacher type ratios, finite metric targets
//!   ([`space`]);
//! - evaluators that produce LHS/RHS/slack reports for Poincare-,
//!   KKL- and Talagrand-type inequalities, with the scalar quadrature
//!   kernels behind them and exhaustive truth-table scans ([`ineq`]);
//! - log-domain one-dimensional machinery for sharpness experiments whose
//!   atoms underflow doubles, e.g. `exp(-4^K)` ([`sharpness`]);
//! - a zoo of canonical functions: dictator, parity, majority, tribes,
//!   linear vector-valued maps, restrictions, and a greedy vote-fixing
//!   experiment ([`zoo`]);
//! - file formats and suite running for the `cubelab` CLI ([`fileio`],
//!   [`suite`], [`report`]).
//!
//! Everything is deterministic: randomized helpers take explicit seeds and
//! floating-point reductions run in a fixed order.

// parameter guards are written `!(x > 0.0)` so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cube;
pub mod error;
pub mod fileio;
pub mod ineq;
pub mod quad;
pub mod report;
pub mod sharpness;
pub mod space;
pub mod suite;
pub mod weights;
pub mod zoo;

pub use cube::{CubeFunction, CubePoint, NoiseModel, WalshSpectrum};
pub use error::{Error, Result};
pub use quad::QuadratureSpec;
pub use report::{Direction, InequalityReport};
pub use space::{FiniteMetricSpace, NormedSpace};
pub use weights::WeightFunction;
