//! Discrete derivatives, the Laplacian, and the heat semigroup.

use super::{check_coordinate, CubeFunction};
use crate::error::Result;

impl CubeFunction {
    /// Discrete derivative `D_j f(eps) = (f(eps) - f(eps^flip j)) / 2`.
    ///
    /// On the Fourier side this keeps exactly the masks containing `j`.
    pub fn derivative(&self, j: usize) -> Result<CubeFunction> {
        check_coordinate(j, self.n())?;
        let bit = 1usize << (j - 1);
        let d = self.d();
        let vals = self.values();
        let mut out = vec![0.0; vals.len()];
        for i in 0..self.points() {
            let flipped = i ^ bit;
            for c in 0..d {
                out[i * d + c] = 0.5 * (vals[i * d + c] - vals[flipped * d + c]);
            }
        }
        Ok(CubeFunction::from_parts(self.n(), d, out))
    }

    /// Discrete Laplacian `-sum_j D_j f`, the generator of the heat
    /// semigroup (Fourier multiplier `-|S|`).
    pub fn laplacian(&self) -> CubeFunction {
        let d = self.d();
        let vals = self.values();
        let mut out = vec![0.0; vals.len()];
        for i in 0..self.points() {
            for j in 0..self.n() {
                let flipped = i ^ (1usize << j);
                for c in 0..d {
                    out[i * d + c] += 0.5 * (vals[flipped * d + c] - vals[i * d + c]);
                }
            }
        }
        CubeFunction::from_parts(self.n(), d, out)
    }

    /// Heat semigroup `P_t f`, the Fourier multiplier `exp(-t |S|)`.
    pub fn heat(&self, t: f64) -> Result<CubeFunction> {
        Ok(self.walsh_transform().heat(t)?.inverse_walsh())
    }
}
