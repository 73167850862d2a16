//! Functions on the discrete hypercube and their spectral calculus.
//!
//! Points of `{-1,1}^n` are addressed by index: coordinate `j` (1-based) of
//! the point with index `i` is `+1` when bit `j-1` of `i` is `0` and `-1`
//! when it is `1`. Every table in this crate (values, Walsh coefficients,
//! truth tables, file format) uses this layout.

mod calculus;
mod decomposition;
mod noise;
mod walsh;

pub use decomposition::SampledRhs;
pub use noise::NoiseModel;
pub use walsh::WalshSpectrum;

use crate::error::{Error, Result};

/// Largest dimension for which value tables are materialized.
pub const MAX_DIMENSION: usize = 30;

/// Largest dimension for which expectations over the noise variable are
/// summed exactly.
pub const MAX_EXACT_NOISE_DIMENSION: usize = 20;

/// A point of `{-1,1}^n` addressed by its table index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubePoint {
    n: usize,
    index: u64,
}

impl CubePoint {
    pub fn new(n: usize, index: u64) -> Result<Self> {
        if n == 0 || n > MAX_DIMENSION {
            return Err(Error::DimensionOutOfRange {
                n,
                min: 1,
                max: MAX_DIMENSION,
            });
        }
        if index >> n != 0 {
            return Err(Error::PointOutOfRange { index, n });
        }
        Ok(Self { n, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Coordinate `j` (1-based) as `+1.0` or `-1.0`.
    pub fn coordinate(&self, j: usize) -> Result<f64> {
        check_coordinate(j, self.n)?;
        Ok(coordinate_of_index(self.index, j))
    }

    /// The point with coordinate `j` flipped.
    pub fn flip(&self, j: usize) -> Result<Self> {
        check_coordinate(j, self.n)?;
        Ok(Self {
            n: self.n,
            index: self.index ^ (1 << (j - 1)),
        })
    }
}

pub(crate) fn check_coordinate(j: usize, n: usize) -> Result<()> {
    if j == 0 || j > n {
        return Err(Error::CoordinateOutOfRange { j, n });
    }
    Ok(())
}

pub(crate) fn coordinate_of_index(index: u64, j: usize) -> f64 {
    if index >> (j - 1) & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// A function `{-1,1}^n -> R^d` stored as `2^n` points of `d` components.
///
/// Values are flat and point-major: component `c` of the value at point
/// index `i` sits at `values[i * d + c]`. A function is flagged boolean
/// when `d = 1` and every value is exactly `+1.0` or `-1.0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CubeFunction {
    n: usize,
    d: usize,
    boolean: bool,
    values: Vec<f64>,
}

impl CubeFunction {
    /// Scalar function from its value table. Flags the result boolean when
    /// every value is exactly `+1` or `-1`.
    pub fn scalar(n: usize, values: Vec<f64>) -> Result<Self> {
        Self::vector(n, 1, values)
    }

    /// Vector-valued function from its flat, point-major value table.
    pub fn vector(n: usize, d: usize, values: Vec<f64>) -> Result<Self> {
        if n > MAX_DIMENSION {
            return Err(Error::DimensionOutOfRange {
                n,
                min: 0,
                max: MAX_DIMENSION,
            });
        }
        if d == 0 {
            return Err(Error::InvalidParameter {
                name: "d",
                value: 0.0,
                expected: ">= 1",
            });
        }
        let expected = d << n;
        if values.len() != expected {
            return Err(Error::ValueLengthMismatch {
                got: values.len(),
                expected,
            });
        }
        let boolean = d == 1 && values.iter().all(|&v| v == 1.0 || v == -1.0);
        Ok(Self { n, d, boolean, values })
    }

    /// Boolean function; every value must be exactly `+1` or `-1`.
    pub fn boolean(n: usize, values: Vec<f64>) -> Result<Self> {
        let f = Self::scalar(n, values)?;
        if !f.boolean {
            return Err(Error::NotBoolean);
        }
        Ok(f)
    }

    /// Scalar function defined pointwise on table indices.
    pub fn from_index_fn(n: usize, f: impl Fn(u64) -> f64) -> Result<Self> {
        if n > MAX_DIMENSION {
            return Err(Error::DimensionOutOfRange { n, min: 0, max: MAX_DIMENSION });
        }
        let values = (0..1u64 << n).map(f).collect();
        Self::scalar(n, values)
    }

    /// The constant function with the given value.
    pub fn constant(n: usize, value: &[f64]) -> Result<Self> {
        let d = value.len();
        let mut values = Vec::with_capacity(d << n);
        for _ in 0..1u64 << n {
            values.extend_from_slice(value);
        }
        Self::vector(n, d, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of points, `2^n`.
    pub fn points(&self) -> usize {
        1 << self.n
    }

    pub fn is_boolean(&self) -> bool {
        self.boolean
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at point index `i` as a `d`-component slice.
    pub fn value(&self, i: usize) -> &[f64] {
        &self.values[i * self.d..(i + 1) * self.d]
    }

    /// Value at point index `i` of a scalar function.
    pub fn scalar_value(&self, i: usize) -> f64 {
        debug_assert_eq!(self.d, 1);
        self.values[i]
    }

    /// Coordinatewise average `E f`.
    pub fn mean(&self) -> Vec<f64> {
        let mut mean = vec![0.0; self.d];
        for point in self.values.chunks_exact(self.d) {
            for (m, v) in mean.iter_mut().zip(point) {
                *m += v;
            }
        }
        let scale = 1.0 / self.points() as f64;
        for m in &mut mean {
            *m *= scale;
        }
        mean
    }

    /// The centered function `f - E f`.
    pub fn minus_mean(&self) -> Self {
        let mean = self.mean();
        let mut values = self.values.clone();
        for point in values.chunks_exact_mut(self.d) {
            for (v, m) in point.iter_mut().zip(&mean) {
                *v -= m;
            }
        }
        Self {
            n: self.n,
            d: self.d,
            boolean: false,
            values,
        }
    }

    /// Largest Euclidean distance between values of `self` and `other`
    /// over all points.
    pub fn max_pointwise_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        assert_eq!(self.d, other.d);
        let mut worst = 0.0f64;
        for (a, b) in self
            .values
            .chunks_exact(self.d)
            .zip(other.values.chunks_exact(self.d))
        {
            let dist2: f64 = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum();
            worst = worst.max(dist2.sqrt());
        }
        worst
    }

    pub(crate) fn from_parts(n: usize, d: usize, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), d << n);
        let boolean = d == 1 && values.iter().all(|&v| v == 1.0 || v == -1.0);
        Self { n, d, boolean, values }
    }
}
