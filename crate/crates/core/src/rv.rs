//! Input random variables: specification, linear standardization, sampling
//! and raw moments of the standardized variable.
//!
//! All sampling is driven by [`ChaCha8Rng`], a counter-based generator. Each
//! input dimension `k` draws from its own ChaCha stream `k` of the run seed,
//! and Monte Carlo row `r` of a dimension always consumes the 64-bit word pair
//! at position `2r` of that stream. A block of rows can therefore be generated
//! independently of the rows before it, and the result is identical to
//! generating the whole matrix at once.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use ndarray::Array2;
use rand::distributions::Open01;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc_inv;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Normal,
    Uniform,
    Gumbel,
}

impl Family {
    pub const SUPPORTED: [&'static str; 3] = ["normal", "uniform", "gumbel"];

    pub fn parse(name: &str) -> Option<Family> {
        match name.to_ascii_lowercase().as_str() {
            "normal" => Some(Family::Normal),
            "uniform" => Some(Family::Uniform),
            "gumbel" => Some(Family::Gumbel),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Normal => "normal",
            Family::Uniform => "uniform",
            Family::Gumbel => "gumbel",
        })
    }
}

/// One input dimension.
///
/// `a`/`b` are the mean and standard deviation for Normal and Gumbel
/// variables, and the lower/upper bound for Uniform ones, in original units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomVariableSpec {
    pub name: String,
    pub family: Family,
    pub a: f64,
    pub b: f64,
}

impl RandomVariableSpec {
    pub fn normal(name: impl Into<String>, mean: f64, sd: f64) -> Self {
        Self { name: name.into(), family: Family::Normal, a: mean, b: sd }
    }

    pub fn uniform(name: impl Into<String>, lower: f64, upper: f64) -> Self {
        Self { name: name.into(), family: Family::Uniform, a: lower, b: upper }
    }

    pub fn gumbel(name: impl Into<String>, mean: f64, sd: f64) -> Self {
        Self { name: name.into(), family: Family::Gumbel, a: mean, b: sd }
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |field, reason: &str| Error::InvalidSpec {
            name: self.name.clone(),
            field,
            reason: reason.to_string(),
        };
        if !self.a.is_finite() {
            return Err(invalid("a", "must be finite"));
        }
        if !self.b.is_finite() {
            return Err(invalid("b", "must be finite"));
        }
        match self.family {
            Family::Normal | Family::Gumbel if self.b <= 0.0 => {
                Err(invalid("b", "(standard deviation) must be positive"))
            }
            Family::Uniform if self.a >= self.b => {
                Err(invalid("b", "(upper bound) must exceed the lower bound `a`"))
            }
            _ => Ok(()),
        }
    }

    /// Quantile function in original units, `u` in the open unit interval.
    pub fn inverse_cdf(&self, u: f64) -> f64 {
        match self.family {
            Family::Normal => self.a + self.b * standard_normal_quantile(u),
            Family::Uniform => self.a + (self.b - self.a) * u,
            Family::Gumbel => {
                // validated specs never fail here
                let (location, scale) = gumbel_location_scale(self.a, self.b)
                    .expect("gumbel spec validated");
                location - scale * (-u.ln()).ln()
            }
        }
    }
}

fn standard_normal_quantile(u: f64) -> f64 {
    -SQRT_2 * erfc_inv(2.0 * u)
}

/// Linear map between original units and the standardized variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub mu: f64,
    pub sigma: f64,
}

impl Standardizer {
    pub fn standardize(&self, x: f64) -> f64 {
        (x - self.mu) / self.sigma
    }

    pub fn destandardize(&self, xi: f64) -> f64 {
        xi * self.sigma + self.mu
    }
}

/// Exact mean and standard deviation of the variable's distribution.
pub fn standardizer_for(spec: &RandomVariableSpec) -> Result<Standardizer> {
    spec.validate()?;
    let (mu, sigma) = match spec.family {
        Family::Normal | Family::Gumbel => (spec.a, spec.b),
        Family::Uniform => (0.5 * (spec.a + spec.b), (spec.b - spec.a) / 12f64.sqrt()),
    };
    Ok(Standardizer { mu, sigma })
}

/// Location and scale of a (maximum) Gumbel distribution with the given mean and sd.
pub fn gumbel_location_scale(mean: f64, sd: f64) -> Result<(f64, f64)> {
    if !(sd > 0.0) || !sd.is_finite() || !mean.is_finite() {
        return Err(Error::InvalidSpec {
            name: "gumbel".into(),
            field: "b",
            reason: format!("standard deviation must be positive and finite, got {sd}"),
        });
    }
    let scale = sd * 6f64.sqrt() / PI;
    Ok((mean - EULER_GAMMA * scale, scale))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleKind {
    Mc,
    Lhs,
}

impl fmt::Display for SampleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SampleKind::Mc => "mc",
            SampleKind::Lhs => "lhs",
        })
    }
}

/// Standardized samples, one row per draw and one column per input.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix {
    pub data: Array2<f64>,
    pub seed: u64,
    pub kind: SampleKind,
}

fn stream_rng(seed: u64, stream: u64, start_row: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(u128::from(start_row) * 2);
    rng
}

/// Points in the open unit cube `(0,1)^d` before any quantile map.
pub fn unit_cube(d: usize, n: usize, kind: SampleKind, seed: u64) -> Array2<f64> {
    match kind {
        SampleKind::Mc => unit_cube_block(d, 0, n, seed),
        SampleKind::Lhs => {
            let mut out = Array2::zeros((n, d));
            let inv_n = 1.0 / n as f64;
            for k in 0..d {
                let mut rng = stream_rng(seed, k as u64, 0);
                let mut bins: Vec<usize> = (0..n).collect();
                bins.shuffle(&mut rng);
                for (row, bin) in bins.into_iter().enumerate() {
                    let jitter: f64 = rng.sample(Open01);
                    // keep strictly inside the bin's half-open range
                    out[[row, k]] = ((bin as f64 + jitter) * inv_n).min(1.0 - f64::EPSILON / 2.0);
                }
            }
            out
        }
    }
}

/// Rows `start..start+len` of the Monte Carlo unit-cube stream for `seed`.
pub fn unit_cube_block(d: usize, start: usize, len: usize, seed: u64) -> Array2<f64> {
    let mut out = Array2::zeros((len, d));
    for k in 0..d {
        let mut rng = stream_rng(seed, k as u64, start as u64);
        for row in 0..len {
            out[[row, k]] = rng.sample(Open01);
        }
    }
    out
}

fn validated_standardizers(specs: &[RandomVariableSpec]) -> Result<Vec<Standardizer>> {
    specs.iter().map(standardizer_for).collect()
}

fn map_to_standard(
    specs: &[RandomVariableSpec],
    scalers: &[Standardizer],
    mut cube: Array2<f64>,
) -> Array2<f64> {
    for (k, (spec, scaler)) in specs.iter().zip(scalers).enumerate() {
        cube.column_mut(k)
            .mapv_inplace(|u| scaler.standardize(spec.inverse_cdf(u)));
    }
    cube
}

/// Draw `n` standardized samples of the joint (independent) input vector.
pub fn sample(
    specs: &[RandomVariableSpec],
    n: usize,
    kind: SampleKind,
    seed: u64,
) -> Result<SampleMatrix> {
    if specs.is_empty() {
        return Err(Error::Shape("at least one input variable is required".into()));
    }
    if n == 0 {
        return Err(Error::InsufficientData("sample size must be at least 1".into()));
    }
    let scalers = validated_standardizers(specs)?;
    let cube = unit_cube(specs.len(), n, kind, seed);
    Ok(SampleMatrix { data: map_to_standard(specs, &scalers, cube), seed, kind })
}

/// Standardized Monte Carlo rows `start..start+len`; identical to the same
/// rows of `sample(specs, N, Mc, seed)` for any `N >= start + len`.
pub fn sample_mc_block(
    specs: &[RandomVariableSpec],
    start: usize,
    len: usize,
    seed: u64,
) -> Result<Array2<f64>> {
    let scalers = validated_standardizers(specs)?;
    let cube = unit_cube_block(specs.len(), start, len, seed);
    Ok(map_to_standard(specs, &scalers, cube))
}

/// Map standardized rows back to original units.
pub fn destandardize_rows(specs: &[RandomVariableSpec], xi: &Array2<f64>) -> Result<Array2<f64>> {
    if xi.ncols() != specs.len() {
        return Err(Error::Shape(format!(
            "{} columns for {} variables",
            xi.ncols(),
            specs.len()
        )));
    }
    let scalers = validated_standardizers(specs)?;
    let mut x = xi.clone();
    for (k, s) in scalers.iter().enumerate() {
        x.column_mut(k).mapv_inplace(|v| s.destandardize(v));
    }
    Ok(x)
}

/// Map original-unit rows to standardized coordinates.
pub fn standardize_rows(specs: &[RandomVariableSpec], x: &Array2<f64>) -> Result<Array2<f64>> {
    if x.ncols() != specs.len() {
        return Err(Error::Shape(format!(
            "{} columns for {} variables",
            x.ncols(),
            specs.len()
        )));
    }
    let scalers = validated_standardizers(specs)?;
    let mut xi = x.clone();
    for (k, s) in scalers.iter().enumerate() {
        xi.column_mut(k).mapv_inplace(|v| s.standardize(v));
    }
    Ok(xi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MomentSource {
    Empirical { n: usize },
    Analytic,
}

/// Raw moments `E[xi^0] .. E[xi^max_order]` of a standardized variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentVector {
    pub moments: Vec<f64>,
    pub source: MomentSource,
}

impl MomentVector {
    pub fn max_order(&self) -> usize {
        self.moments.len() - 1
    }
}

/// Sample raw moments `(1/n) sum xi^beta` for `beta = 0..=max_order`.
pub fn raw_moments_empirical(column: &[f64], max_order: usize) -> Result<MomentVector> {
    let n = column.len();
    if n == 0 || n < 10 * max_order {
        return Err(Error::InsufficientData(format!(
            "{n} samples for raw moments up to order {max_order} (need at least {})",
            (10 * max_order).max(1)
        )));
    }
    if let Some(bad) = column.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("sample value {bad} in moment column")));
    }
    let mut sums = vec![0.0; max_order + 1];
    for &x in column {
        let mut power = 1.0;
        for s in sums.iter_mut() {
            *s += power;
            power *= x;
        }
    }
    let inv_n = 1.0 / n as f64;
    Ok(MomentVector {
        moments: sums.into_iter().map(|s| s * inv_n).collect(),
        source: MomentSource::Empirical { n },
    })
}

/// Closed-form raw moments of the standardized Normal or Uniform variable.
pub fn raw_moments_analytic(family: Family, max_order: usize) -> Result<MomentVector> {
    let moment = |beta: usize| -> f64 {
        if beta % 2 == 1 {
            return 0.0;
        }
        match family {
            // (beta - 1)!!
            Family::Normal => (1..beta).step_by(2).map(|k| k as f64).product(),
            // xi ~ U(-sqrt 3, sqrt 3)
            _ => 3f64.powi(beta as i32 / 2) / (beta as f64 + 1.0),
        }
    };
    match family {
        Family::Gumbel => Err(Error::UnsupportedAnalytic(family)),
        _ => Ok(MomentVector {
            moments: (0..=max_order).map(moment).collect(),
            source: MomentSource::Analytic,
        }),
    }
}
