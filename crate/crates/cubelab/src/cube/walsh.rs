//! Walsh-Hadamard transform between value tables and Fourier coefficients.
//!
//! The coefficient at bitmask `m` is `a_S` for `S = { j : bit j-1 of m set }`,
//! normalized as `a_S = E eps^S f`, so the forward transform carries the
//! full `2^-n` and the inverse carries no factor.

use super::CubeFunction;

/// Walsh-Fourier coefficients of a [`CubeFunction`], stored flat and
/// mask-major like the value table.
#[derive(Debug, Clone, PartialEq)]
pub struct WalshSpectrum {
    n: usize,
    d: usize,
    coeffs: Vec<f64>,
}

impl WalshSpectrum {
    /// Spectrum from a flat coefficient table (`coeffs[m * d + c]`).
    pub fn new(n: usize, d: usize, coeffs: Vec<f64>) -> crate::Result<Self> {
        if coeffs.len() != d << n {
            return Err(crate::Error::ValueLengthMismatch {
                got: coeffs.len(),
                expected: d << n,
            });
        }
        Ok(Self { n, d, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient `a_S` for the subset encoded by `mask`.
    pub fn coeff(&self, mask: usize) -> &[f64] {
        &self.coeffs[mask * self.d..(mask + 1) * self.d]
    }

    /// Scalar coefficient `a_S` (d = 1).
    pub fn scalar_coeff(&self, mask: usize) -> f64 {
        debug_assert_eq!(self.d, 1);
        self.coeffs[mask]
    }

    /// Evaluates `f(eps) = sum_S a_S eps^S` back into a value table.
    pub fn inverse_walsh(&self) -> CubeFunction {
        let mut values = self.coeffs.clone();
        fwht_in_place(&mut values, self.n, self.d);
        CubeFunction::from_parts(self.n, self.d, values)
    }

    /// Applies the heat multiplier `exp(-t |S|)` coefficientwise.
    pub fn heat(&self, t: f64) -> crate::Result<Self> {
        if !(t >= 0.0) {
            return Err(crate::Error::InvalidTime {
                t,
                bound: "nonnegative",
            });
        }
        let decay = (-t).exp();
        Ok(self.multiplier(|size| decay.powi(size as i32)))
    }

    /// Applies a multiplier depending only on `|S|`.
    pub fn multiplier(&self, m: impl Fn(u32) -> f64) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (mask, chunk) in coeffs.chunks_exact_mut(self.d).enumerate() {
            let factor = m((mask as u64).count_ones());
            for c in chunk {
                *c *= factor;
            }
        }
        Self {
            n: self.n,
            d: self.d,
            coeffs,
        }
    }

    /// `sum_S |S| a_S^2` summed over all components (left side of the
    /// derivative-energy identity).
    pub fn degree_weighted_energy(&self) -> f64 {
        self.coeffs
            .chunks_exact(self.d)
            .enumerate()
            .map(|(mask, chunk)| {
                let size = (mask as u64).count_ones() as f64;
                size * chunk.iter().map(|c| c * c).sum::<f64>()
            })
            .sum()
    }

    /// `sum_S |a_S|^2`, the spectral side of Parseval.
    pub fn total_energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }
}

impl CubeFunction {
    /// Fourier coefficients `a_S = E eps^S f`, by an in-place butterfly in
    /// `O(n 2^n)` per component.
    pub fn walsh_transform(&self) -> WalshSpectrum {
        let mut coeffs = self.values().to_vec();
        fwht_in_place(&mut coeffs, self.n(), self.d());
        let scale = 1.0 / self.points() as f64;
        for c in &mut coeffs {
            *c *= scale;
        }
        WalshSpectrum {
            n: self.n(),
            d: self.d(),
            coeffs,
        }
    }

    /// `E |f|^2` with the Euclidean norm on components (value side of
    /// Parseval).
    pub fn mean_square(&self) -> f64 {
        self.values().iter().map(|v| v * v).sum::<f64>() / self.points() as f64
    }
}

/// Unnormalized in-place Walsh-Hadamard butterfly over a flat point-major
/// table with `d` components per point.
fn fwht_in_place(values: &mut [f64], n: usize, d: usize) {
    let len = 1usize << n;
    let mut h = 1;
    while h < len {
        let stride = 2 * h;
        let mut block = 0;
        while block < len {
            for i in block..block + h {
                let lo = i * d;
                let hi = (i + h) * d;
                for c in 0..d {
                    let x = values[lo + c];
                    let y = values[hi + c];
                    values[lo + c] = x + y;
                    values[hi + c] = x - y;
                }
            }
            block += stride;
        }
        h = stride;
    }
}
