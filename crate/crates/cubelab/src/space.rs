//! Target-space geometry: `l_q^d` norms, function norms, influences,
//! independent-copy energy, empirical Rademacher type ratios, and finite
//! metric targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::cube::CubeFunction;
use crate::error::{Error, Result};

/// Largest family size enumerated exactly in [`empirical_type_ratio`].
pub const MAX_EXACT_SIGNS: usize = 20;
/// Largest dimension for which the energy double sum runs exactly.
pub const MAX_EXACT_ENERGY_DIMENSION: usize = 13;

/// A finite-dimensional `l_q` target with optional type-constant bounds.
///
/// Built-in defaults follow the standard estimates: `T_2 = 1` for `q = 2`
/// and `T_2 = sqrt(q - 1)` for `2 < q < inf`. Other exponents carry no
/// built-in bound; callers supply one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormedSpace {
    /// Target dimension `d >= 1`.
    pub d: usize,
    /// Norm exponent in `[1, inf]` (`f64::INFINITY` for the max norm).
    pub q: f64,
    /// Optional upper bound on the type 2 constant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type2_bound: Option<f64>,
    /// Optional upper bounds on type p constants, as `(p, T_p)` pairs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub typep_bounds: Vec<(f64, f64)>,
}

impl NormedSpace {
    /// `l_q^d` with the built-in type-2 default where one exists.
    pub fn lq(d: usize, q: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter {
                name: "d",
                value: 0.0,
                expected: ">= 1",
            });
        }
        if !(q >= 1.0) {
            return Err(Error::InvalidExponent {
                p: q,
                expected: "q >= 1",
            });
        }
        let type2_bound = if q == 2.0 {
            Some(1.0)
        } else if q > 2.0 && q.is_finite() {
            Some((q - 1.0).sqrt())
        } else {
            None
        };
        Ok(Self {
            d,
            q,
            type2_bound,
            typep_bounds: Vec::new(),
        })
    }

    /// The scalar target `(R, |.|)`.
    pub fn scalar() -> Self {
        Self::lq(1, 2.0).expect("valid")
    }

    pub fn with_type2_bound(mut self, t2: f64) -> Self {
        self.type2_bound = Some(t2);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidParameter {
                name: "d",
                value: 0.0,
                expected: ">= 1",
            });
        }
        if !(self.q >= 1.0) {
            return Err(Error::InvalidExponent {
                p: self.q,
                expected: "q >= 1",
            });
        }
        for &b in self.type2_bound.iter().chain(
            self.typep_bounds.iter().map(|(_, b)| b),
        ) {
            if !(b >= 1.0) {
                return Err(Error::InvalidParameter {
                    name: "type bound",
                    value: b,
                    expected: ">= 1",
                });
            }
        }
        Ok(())
    }

    /// Short descriptor used in report input summaries, e.g. `l2^3`.
    pub fn descriptor(&self) -> String {
        if self.q.is_infinite() {
            format!("linf^{}", self.d)
        } else {
            format!("l{}^{}", self.q, self.d)
        }
    }

    /// `l_q` norm of one vector.
    pub fn vector_norm(&self, v: &[f64]) -> Result<f64> {
        if v.len() != self.d {
            return Err(Error::VectorDimensionMismatch {
                got: v.len(),
                expected: self.d,
            });
        }
        Ok(self.vector_norm_unchecked(v))
    }

    fn vector_norm_unchecked(&self, v: &[f64]) -> f64 {
        if self.q.is_infinite() {
            v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
        } else if self.q == 2.0 {
            v.iter().map(|x| x * x).sum::<f64>().sqrt()
        } else if self.q == 1.0 {
            v.iter().map(|x| x.abs()).sum()
        } else {
            v.iter()
                .map(|x| x.abs().powf(self.q))
                .sum::<f64>()
                .powf(1.0 / self.q)
        }
    }
}

/// `||f||_p = (E ||f||^p)^{1/p}` in the space norm.
pub fn lp_norm(f: &CubeFunction, p: f64, space: &NormedSpace) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent {
            p,
            expected: "p >= 1",
        });
    }
    if f.d() != space.d {
        return Err(Error::VectorDimensionMismatch {
            got: f.d(),
            expected: space.d,
        });
    }
    let mut sum = 0.0;
    for i in 0..f.points() {
        sum += space.vector_norm_unchecked(f.value(i)).powf(p);
    }
    Ok((sum / f.points() as f64).powf(1.0 / p))
}

/// `||D_j f||_p` in the space norm.
pub fn derivative_norm(f: &CubeFunction, j: usize, p: f64, space: &NormedSpace) -> Result<f64> {
    lp_norm(&f.derivative(j)?, p, space)
}

/// Influence of coordinate `j` on a boolean function: the fraction of
/// points where flipping `j` changes the value. Equals both `E |D_j f|^2`
/// and `E |D_j f|` because `D_j f` takes values in `{-1, 0, 1}`.
pub fn influence(f: &CubeFunction, j: usize) -> Result<f64> {
    if !f.is_boolean() {
        return Err(Error::NotBoolean);
    }
    crate::cube::check_coordinate(j, f.n())?;
    let bit = 1usize << (j - 1);
    let mut flips = 0usize;
    for i in 0..f.points() {
        if f.scalar_value(i) != f.scalar_value(i ^ bit) {
            flips += 1;
        }
    }
    Ok(flips as f64 / f.points() as f64)
}

/// All influences of a boolean function.
pub fn influences(f: &CubeFunction) -> Result<Vec<f64>> {
    (1..=f.n()).map(|j| influence(f, j)).collect()
}

/// `(E ||f - Ef||^2, E ||f(eps) - f(eps')||^2)` over independent copies,
/// by the exact double sum (`n <= 13`).
pub fn variance_and_energy(f: &CubeFunction, space: &NormedSpace) -> Result<(f64, f64)> {
    if f.n() > MAX_EXACT_ENERGY_DIMENSION {
        return Err(Error::ExactModeTooLarge {
            n: f.n(),
            max: MAX_EXACT_ENERGY_DIMENSION,
        });
    }
    let var2 = variance(f, space)?;
    let len = f.points();
    let d = f.d();
    let mut diff = vec![0.0; d];
    let mut energy = 0.0;
    for i in 0..len {
        let vi = f.value(i);
        for k in 0..len {
            let vk = f.value(k);
            for c in 0..d {
                diff[c] = vi[c] - vk[c];
            }
            let dist = space.vector_norm_unchecked(&diff);
            energy += dist * dist;
        }
    }
    Ok((var2, energy / (len * len) as f64))
}

/// Seeded sampled version of the energy for larger `n`; returns
/// `(var2, energy estimate, standard error)`.
pub fn variance_and_energy_sampled(
    f: &CubeFunction,
    space: &NormedSpace,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64, f64)> {
    if samples == 0 {
        return Err(Error::EmptyInput("sample budget"));
    }
    let var2 = variance(f, space)?;
    let d = f.d();
    let len = f.points() as u64;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut diff = vec![0.0; d];
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let i = (rng.gen::<u64>() % len) as usize;
        let k = (rng.gen::<u64>() % len) as usize;
        let vi = f.value(i);
        let vk = f.value(k);
        for c in 0..d {
            diff[c] = vi[c] - vk[c];
        }
        let dist = space.vector_norm_unchecked(&diff);
        sum += dist * dist;
        sum_sq += dist * dist * dist * dist;
    }
    let m = samples as f64;
    let mean = sum / m;
    let std_error = ((sum_sq / m - mean * mean).max(0.0) / m).sqrt();
    Ok((var2, mean, std_error))
}

/// `E ||f - Ef||^2` with the coordinatewise mean.
pub fn variance(f: &CubeFunction, space: &NormedSpace) -> Result<f64> {
    if f.d() != space.d {
        return Err(Error::VectorDimensionMismatch {
            got: f.d(),
            expected: space.d,
        });
    }
    let centered = f.minus_mean();
    let mut sum = 0.0;
    for i in 0..centered.points() {
        let norm = space.vector_norm_unchecked(centered.value(i));
        sum += norm * norm;
    }
    Ok(sum / centered.points() as f64)
}

/// Outcome of one empirical Rademacher type measurement.
#[derive(Debug, Clone)]
pub struct TypeRatioReport {
    /// The vector family the ratio was measured on.
    pub vectors: Vec<Vec<f64>>,
    pub d: usize,
    pub p: f64,
    /// `(E ||sum eps_j x_j||^p / sum ||x_j||^p)^{1/p}`.
    pub ratio: f64,
    /// True when all `2^n` sign patterns were enumerated; the ratio is then
    /// a certified lower bound on `T_p`.
    pub exact: bool,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
}

/// Empirical type-`p` ratio of a vector family: exact enumeration over all
/// sign patterns for `n <= 20`, seeded sampling (budget `(samples, seed)`)
/// above that.
pub fn empirical_type_ratio(
    xs: &[Vec<f64>],
    p: f64,
    space: &NormedSpace,
    budget: Option<(u64, u64)>,
) -> Result<TypeRatioReport> {
    if xs.is_empty() {
        return Err(Error::EmptyInput("vector family"));
    }
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent {
            p,
            expected: "p >= 1",
        });
    }
    let d = space.d;
    let mut denom = 0.0;
    for x in xs {
        if x.len() != d {
            return Err(Error::VectorDimensionMismatch {
                got: x.len(),
                expected: d,
            });
        }
        denom += space.vector_norm_unchecked(x).powf(p);
    }
    if denom == 0.0 {
        return Err(Error::AllZeroVectors);
    }
    let n = xs.len();

    let (mean, exact, samples, seed) = if n <= MAX_EXACT_SIGNS {
        let mut sum = 0.0;
        let mut combo = vec![0.0; d];
        for signs in 0..(1usize << n) {
            combo.iter_mut().for_each(|v| *v = 0.0);
            for (j, x) in xs.iter().enumerate() {
                let s = if signs >> j & 1 == 0 { 1.0 } else { -1.0 };
                for c in 0..d {
                    combo[c] += s * x[c];
                }
            }
            sum += space.vector_norm_unchecked(&combo).powf(p);
        }
        (sum / (1u64 << n) as f64, true, None, None)
    } else {
        let Some((samples, seed)) = budget else {
            return Err(Error::ExactModeTooLarge {
                n,
                max: MAX_EXACT_SIGNS,
            });
        };
        if samples == 0 {
            return Err(Error::EmptyInput("sample budget"));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut sum = 0.0;
        let mut combo = vec![0.0; d];
        for _ in 0..samples {
            combo.iter_mut().for_each(|v| *v = 0.0);
            for x in xs {
                let s = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                for c in 0..d {
                    combo[c] += s * x[c];
                }
            }
            sum += space.vector_norm_unchecked(&combo).powf(p);
        }
        (sum / samples as f64, false, Some(samples), Some(seed))
    };

    Ok(TypeRatioReport {
        vectors: xs.to_vec(),
        d,
        p,
        ratio: (mean / denom).powf(1.0 / p),
        exact,
        samples,
        seed,
    })
}

/// A finite metric space given by its distance matrix; symmetry, zero
/// diagonal, and the triangle inequality are verified at construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteMetricSpace {
    m: usize,
    /// Row-major `m x m` distances.
    dist: Vec<f64>,
}

impl FiniteMetricSpace {
    pub fn new(m: usize, dist: Vec<f64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidMetric("empty space".into()));
        }
        if dist.len() != m * m {
            return Err(Error::InvalidMetric(format!(
                "distance matrix has {} entries, expected {}",
                dist.len(),
                m * m
            )));
        }
        for i in 0..m {
            if dist[i * m + i] != 0.0 {
                return Err(Error::InvalidMetric(format!("nonzero diagonal at {i}")));
            }
            for k in 0..m {
                let v = dist[i * m + k];
                if !(v >= 0.0) {
                    return Err(Error::InvalidMetric(format!(
                        "negative or NaN distance at ({i},{k})"
                    )));
                }
                if v != dist[k * m + i] {
                    return Err(Error::InvalidMetric(format!("asymmetry at ({i},{k})")));
                }
            }
        }
        for i in 0..m {
            for k in 0..m {
                for l in 0..m {
                    if dist[i * m + k] > dist[i * m + l] + dist[l * m + k] + 1e-12 {
                        return Err(Error::InvalidMetric(format!(
                            "triangle inequality fails for ({i},{k}) via {l}"
                        )));
                    }
                }
            }
        }
        Ok(Self { m, dist })
    }

    /// The two-point space `{0, 1}` at distance `scale`.
    pub fn two_point(scale: f64) -> Self {
        Self::new(2, vec![0.0, scale, scale, 0.0]).expect("valid")
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        self.dist[a * self.m + b]
    }

    pub fn dist_matrix(&self) -> &[f64] {
        &self.dist
    }
}

/// Per-coordinate pieces of the metric form of the influence inequality.
#[derive(Debug, Clone)]
pub struct MetricEnergyTerms {
    /// `E d(f(eps), f(eps'))^2` over independent copies.
    pub lhs: f64,
    /// `E d(f(eps), f(eps flip j))^2` per coordinate.
    pub edge_terms: Vec<f64>,
    /// `E d(f, f flip j) / sqrt(E d(f, f flip j)^2)` per coordinate
    /// (`1.0` where the edge term vanishes).
    pub ratio_terms: Vec<f64>,
}

/// Energy and edge terms of an index-valued function into a finite metric
/// space. Values of `f` must be integers in `[0, m)` (stored as doubles).
pub fn metric_energy_terms(f: &CubeFunction, metric: &FiniteMetricSpace) -> Result<MetricEnergyTerms> {
    if f.d() != 1 {
        return Err(Error::VectorDimensionMismatch {
            got: f.d(),
            expected: 1,
        });
    }
    let len = f.points();
    let mut idx = Vec::with_capacity(len);
    for i in 0..len {
        let v = f.scalar_value(i);
        let r = v.round();
        if (v - r).abs() > 1e-9 || r < 0.0 || r >= metric.size() as f64 {
            return Err(Error::MetricIndexOutOfRange { index: i, value: v });
        }
        idx.push(r as usize);
    }

    let mut lhs = 0.0;
    for i in 0..len {
        for k in 0..len {
            let d = metric.distance(idx[i], idx[k]);
            lhs += d * d;
        }
    }
    lhs /= (len * len) as f64;

    let mut edge_terms = Vec::with_capacity(f.n());
    let mut ratio_terms = Vec::with_capacity(f.n());
    for j in 1..=f.n() {
        let bit = 1usize << (j - 1);
        let mut sq = 0.0;
        let mut lin = 0.0;
        for i in 0..len {
            let d = metric.distance(idx[i], idx[i ^ bit]);
            sq += d * d;
            lin += d;
        }
        sq /= len as f64;
        lin /= len as f64;
        edge_terms.push(sq);
        ratio_terms.push(if sq > 0.0 { lin / sq.sqrt() } else { 1.0 });
    }
    Ok(MetricEnergyTerms {
        lhs,
        edge_terms,
        ratio_terms,
    })
}
