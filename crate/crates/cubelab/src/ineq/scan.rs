//! Exhaustive verification over every boolean function at small `n`.
//!
//! Truth tables are integers: bit `i` of the table is `0` when the function
//! is `+1` at point index `i` and `1` when it is `-1`, mirroring the point
//! bit convention. Functions are scanned in truth-table order and the
//! minimum-slack report is returned; ties break on the smaller integer.

use rayon::prelude::*;

use super::evaluators;
use crate::cube::CubeFunction;
use crate::error::{Error, Result};
use crate::report::InequalityReport;
use crate::space::NormedSpace;

/// Largest scan dimension (`2^2^4 = 65536` functions).
pub const MAX_SCAN_DIMENSION: usize = 4;

/// Which evaluator an exhaustive scan drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanEvaluator {
    KklBoolean,
    KklCorollary,
    Poincare,
}

impl ScanEvaluator {
    pub fn name(&self) -> &'static str {
        match self {
            ScanEvaluator::KklBoolean => "kkl_boolean",
            ScanEvaluator::KklCorollary => "kkl_corollary",
            ScanEvaluator::Poincare => "poincare",
        }
    }

    fn run(&self, f: &CubeFunction) -> Result<InequalityReport> {
        match self {
            ScanEvaluator::KklBoolean => evaluators::eval_kkl_boolean(f),
            ScanEvaluator::KklCorollary => evaluators::eval_kkl_corollary(f),
            ScanEvaluator::Poincare => evaluators::eval_poincare(f, &NormedSpace::scalar()),
        }
    }
}

/// The worst case found by an exhaustive scan.
#[derive(Debug, Clone)]
pub struct ScanOutcome {
    /// Report of the minimum-slack function.
    pub worst: InequalityReport,
    /// Truth table of that function.
    pub argmin_truth_table: u64,
    pub argmin: CubeFunction,
    /// Nonconstant functions evaluated.
    pub scanned: u64,
    /// True when every scanned function passed.
    pub all_pass: bool,
}

/// The boolean function encoded by `table` (see the module docs).
pub fn truth_table_function(n: usize, table: u64) -> Result<CubeFunction> {
    if n == 0 || n > MAX_SCAN_DIMENSION {
        return Err(Error::DimensionOutOfRange {
            n,
            min: 1,
            max: MAX_SCAN_DIMENSION,
        });
    }
    CubeFunction::boolean(
        n,
        (0..1u64 << n)
            .map(|i| if table >> i & 1 == 0 { 1.0 } else { -1.0 })
            .collect(),
    )
}

/// Evaluates every nonconstant boolean function on `n <= 4` coordinates
/// and returns the minimum slack. Chunks run in parallel; the reduction is
/// a total-order min on `(slack, truth table)`, so the result does not
/// depend on scheduling.
pub fn exhaustive_scan(n: usize, evaluator: ScanEvaluator) -> Result<ScanOutcome> {
    if n == 0 || n > MAX_SCAN_DIMENSION {
        return Err(Error::DimensionOutOfRange {
            n,
            min: 1,
            max: MAX_SCAN_DIMENSION,
        });
    }
    let tables = 1u64 << (1u64 << n);
    let all_ones = tables - 1;

    let (min_slack, argmin, fail_count) = (0..tables)
        .into_par_iter()
        .map(|table| -> Result<(f64, u64, u64)> {
            if table == 0 || table == all_ones {
                return Ok((f64::INFINITY, table, 0));
            }
            let f = truth_table_function(n, table)?;
            let report = evaluator.run(&f)?;
            Ok((report.slack, table, u64::from(!report.pass)))
        })
        .try_reduce(
            || (f64::INFINITY, u64::MAX, 0),
            |a, b| {
                let min = match a.0.total_cmp(&b.0) {
                    std::cmp::Ordering::Less => (a.0, a.1),
                    std::cmp::Ordering::Greater => (b.0, b.1),
                    std::cmp::Ordering::Equal => (a.0, a.1.min(b.1)),
                };
                Ok((min.0, min.1, a.2 + b.2))
            },
        )?;

    let argmin_fn = truth_table_function(n, argmin)?;
    let worst = evaluator.run(&argmin_fn)?;
    debug_assert_eq!(worst.slack.total_cmp(&min_slack), std::cmp::Ordering::Equal);
    Ok(ScanOutcome {
        worst,
        argmin_truth_table: argmin,
        argmin: argmin_fn,
        scanned: tables - 2,
        all_pass: fail_count == 0,
    })
}
