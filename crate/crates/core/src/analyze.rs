//! Accuracy metrics, moment statistics, Monte Carlo failure probability and
//! kernel density estimates.

use ndarray::{Array1, ArrayView2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pcnn::MainModel;
use crate::rv::{sample_mc_block, RandomVariableSpec};

/// Truths with magnitude below this are left out of the relative error.
pub const MRE_GUARD: f64 = 1e-12;

/// Rows per Monte Carlo block.
pub const MCS_BLOCK: usize = 8192;

pub const R2_NOTE: &str = "r2 uses the mean of the predictions as reference level, not the mean of the truths";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub rmse: f64,
    pub mae: f64,
    /// `None` when every truth is within the guard of zero.
    pub mre: Option<f64>,
    /// `None` when the reference sum of squares vanishes.
    pub r2: Option<f64>,
    pub n_test: usize,
    pub mre_excluded: usize,
    pub note: String,
}

pub fn error_metrics(truth: &[f64], pred: &[f64]) -> Result<ErrorReport> {
    if truth.len() != pred.len() {
        return Err(Error::Shape(format!("{} truths but {} predictions", truth.len(), pred.len())));
    }
    let n = truth.len();
    if n < 2 {
        return Err(Error::InsufficientData(format!("need at least 2 test points, got {n}")));
    }
    if truth.iter().chain(pred).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("test truths or predictions".into()));
    }
    let nf = n as f64;
    let sse: f64 = truth.iter().zip(pred).map(|(y, p)| (y - p).powi(2)).sum();
    let mae = truth.iter().zip(pred).map(|(y, p)| (y - p).abs()).sum::<f64>() / nf;

    let mut rel = 0.0;
    let mut used = 0usize;
    for (y, p) in truth.iter().zip(pred) {
        if y.abs() >= MRE_GUARD {
            rel += ((y - p) / y).abs();
            used += 1;
        }
    }
    let mre = (used > 0).then(|| rel / used as f64);

    let reference = pred.iter().sum::<f64>() / nf;
    let sst: f64 = truth.iter().map(|y| (y - reference).powi(2)).sum();
    let r2 = (sst > 0.0).then(|| 1.0 - sse / sst);

    Ok(ErrorReport {
        rmse: (sse / nf).sqrt(),
        mae,
        mre,
        r2,
        n_test: n,
        mre_excluded: n - used,
        note: R2_NOTE.to_string(),
    })
}

pub fn model_error_metrics(model: &MainModel, xi: ArrayView2<f64>, y: &[f64]) -> Result<ErrorReport> {
    let pred = model.eval_batch(xi)?;
    error_metrics(y, pred.as_slice().unwrap())
}

/// Population moments; kurtosis is not excess (a normal gives 3).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentSummary {
    pub mean: f64,
    pub sd: f64,
    pub skewness: Option<f64>,
    pub kurtosis: Option<f64>,
    pub n: usize,
}

pub fn moment_summary(values: &[f64]) -> Result<MomentSummary> {
    let n = values.len();
    if n < 4 {
        return Err(Error::InsufficientData(format!("need at least 4 values, got {n}")));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("moment input".into()));
    }
    let nf = n as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for v in values {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= nf;
    m3 /= nf;
    m4 /= nf;
    let (skewness, kurtosis) = if m2 > 0.0 { (Some(m3 / m2.powf(1.5)), Some(m4 / (m2 * m2))) } else { (None, None) };
    Ok(MomentSummary { mean, sd: m2.sqrt(), skewness, kurtosis, n })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityResult {
    pub pf: f64,
    pub n_mcs: usize,
    pub failures: usize,
    pub std_error: f64,
    pub seed: u64,
}

impl ReliabilityResult {
    pub fn from_counts(failures: usize, n_mcs: usize, seed: u64) -> Self {
        let pf = failures as f64 / n_mcs as f64;
        Self { pf, n_mcs, failures, std_error: (pf * (1.0 - pf) / n_mcs as f64).sqrt(), seed }
    }

    pub fn from_values(values: &[f64], seed: u64) -> Self {
        Self::from_counts(values.iter().filter(|v| **v < 0.0).count(), values.len(), seed)
    }
}

fn blocks(n: usize) -> Vec<(usize, usize)> {
    (0..n).step_by(MCS_BLOCK).map(|s| (s, MCS_BLOCK.min(n - s))).collect()
}

/// Evaluate `f` on `n` standardized Monte Carlo draws, in draw order.
/// `f` maps a block of standardized rows to one value per row.
pub fn mcs_values<F>(f: F, specs: &[RandomVariableSpec], n: usize, seed: u64) -> Result<Vec<f64>>
where
    F: Fn(ArrayView2<f64>) -> Result<Array1<f64>> + Sync,
{
    if n == 0 {
        return Err(Error::InsufficientData("n_mcs must be at least 1".into()));
    }
    let parts: Vec<Result<Array1<f64>>> = blocks(n)
        .into_par_iter()
        .map(|(start, len)| {
            let xi = sample_mc_block(specs, start, len, seed)?;
            let out = f(xi.view())?;
            if out.len() != len {
                return Err(Error::Shape(format!("block of {len} rows produced {} values", out.len())));
            }
            Ok(out)
        })
        .collect();
    let mut values = Vec::with_capacity(n);
    for p in parts {
        values.extend(p?);
    }
    Ok(values)
}

/// Fraction of `n_mcs` standardized Monte Carlo draws where `f < 0`.
pub fn failure_probability<F>(f: F, specs: &[RandomVariableSpec], n_mcs: usize, seed: u64) -> Result<ReliabilityResult>
where
    F: Fn(ArrayView2<f64>) -> Result<Array1<f64>> + Sync,
{
    if n_mcs == 0 {
        return Err(Error::InsufficientData("n_mcs must be at least 1".into()));
    }
    let counts: Vec<Result<usize>> = blocks(n_mcs)
        .into_par_iter()
        .map(|(start, len)| {
            let xi = sample_mc_block(specs, start, len, seed)?;
            let out = f(xi.view())?;
            if out.iter().any(|v| v.is_nan()) {
                return Err(Error::NonFinite(format!("performance value in rows {start}..{}", start + len)));
            }
            Ok(out.iter().filter(|v| **v < 0.0).count())
        })
        .collect();
    let mut failures = 0;
    for c in counts {
        failures += c?;
    }
    Ok(ReliabilityResult::from_counts(failures, n_mcs, seed))
}

/// Failure probability of a trained surrogate.
pub fn model_failure_probability(model: &MainModel, specs: &[RandomVariableSpec], n_mcs: usize, seed: u64) -> Result<ReliabilityResult> {
    if specs.len() != model.basis.dim() {
        return Err(Error::Shape(format!("model has {} inputs, {} specs given", model.basis.dim(), specs.len())));
    }
    failure_probability(|xi| model.eval_batch(xi), specs, n_mcs, seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bandwidth {
    Silverman,
    Fixed(f64),
}

fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

/// `0.9 * min(sd, IQR/1.34) * n^(-1/5)`, falling back to sd when the IQR is 0.
pub fn silverman_bandwidth(values: &[f64]) -> Result<f64> {
    let n = values.len();
    if n < 2 {
        return Err(Error::InsufficientData("bandwidth needs at least 2 values".into()));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let sd = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
    if !(sd > 0.0) {
        return Err(Error::Degenerate("zero-variance data has no density".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let iqr = quantile_sorted(&sorted, 0.75) - quantile_sorted(&sorted, 0.25);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    Ok(0.9 * spread * (n as f64).powf(-0.2))
}

/// Gaussian kernel density of `values` at each grid point.
pub fn kde_pdf(values: &[f64], grid: &[f64], bandwidth: Bandwidth) -> Result<Vec<f64>> {
    if values.len() < 10 {
        return Err(Error::InsufficientData(format!("density estimate needs at least 10 values, got {}", values.len())));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("density input".into()));
    }
    let h = match bandwidth {
        Bandwidth::Silverman => silverman_bandwidth(values)?,
        Bandwidth::Fixed(h) if h > 0.0 && h.is_finite() => {
            silverman_bandwidth(values)?;
            h
        }
        Bandwidth::Fixed(h) => return Err(Error::Config(format!("bandwidth must be positive, got {h}"))),
    };
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    // kernels beyond 40 bandwidths contribute below 1e-300
    let reach = 40.0 * h;
    let norm = 1.0 / (sorted.len() as f64 * h * (2.0 * std::f64::consts::PI).sqrt());
    Ok(grid
        .par_iter()
        .map(|&x| {
            let lo = sorted.partition_point(|v| *v < x - reach);
            let hi = sorted.partition_point(|v| *v <= x + reach);
            sorted[lo..hi].iter().fold(0.0, |acc, v| acc + (-0.5 * ((x - v) / h).powi(2)).exp()) * norm
        })
        .collect())
}

/// `points` evenly spaced values covering the sample plus four bandwidths.
pub fn kde_grid(values: &[f64], points: usize) -> Result<Vec<f64>> {
    let h = silverman_bandwidth(values)?;
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min) - 4.0 * h;
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 4.0 * h;
    let points = points.max(2);
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points).map(|i| lo + step * i as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rv::{sample, SampleKind};

    #[test]
    fn perfect_predictions() {
        let y = [1.0, -2.0, 3.5];
        let r = error_metrics(&y, &y).unwrap();
        assert_eq!((r.rmse, r.mae, r.mre, r.r2), (0.0, 0.0, Some(0.0), Some(1.0)));
    }

    #[test]
    fn hand_metrics() {
        let r = error_metrics(&[1.0, 2.0, 3.0], &[1.0, 2.0, 4.0]).unwrap();
        assert!((r.rmse - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((r.mae - 1.0 / 3.0).abs() < 1e-15);
        assert!((r.mre.unwrap() - 1.0 / 9.0).abs() < 1e-15);
        // reference level 7/3: sst = 16/9 + 1/9 + 4/9 = 21/9, sse = 1
        assert!((r.r2.unwrap() - (1.0 - 9.0 / 21.0)).abs() < 1e-15);
        assert!(!r.note.is_empty());
    }

    #[test]
    fn constant_predictor_at_mean_has_zero_r2() {
        let y = [1.0, 4.0, 2.0, 5.0];
        let r = error_metrics(&y, &[3.0; 4]).unwrap();
        assert!(r.r2.unwrap().abs() < 1e-15);
    }

    #[test]
    fn near_zero_truths_are_skipped() {
        let r = error_metrics(&[0.0, 2.0, 1e-13], &[1.0, 3.0, 0.0]).unwrap();
        assert_eq!(r.mre_excluded, 2);
        assert!((r.mre.unwrap() - 0.5).abs() < 1e-15);
        let r = error_metrics(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert_eq!(r.mre, None);
        assert_eq!(r.mre_excluded, 2);
    }

    #[test]
    fn metrics_reject_bad_input() {
        assert!(error_metrics(&[1.0], &[1.0]).is_err());
        assert!(error_metrics(&[1.0, 2.0], &[1.0]).is_err());
        assert!(error_metrics(&[1.0, f64::NAN], &[1.0, 1.0]).is_err());
    }

    #[test]
    fn two_point_moments() {
        let m = moment_summary(&[-1.0, 1.0, -1.0, 1.0]).unwrap();
        assert_eq!((m.mean, m.sd, m.skewness, m.kurtosis), (0.0, 1.0, Some(0.0), Some(1.0)));
    }

    #[test]
    fn constant_values_have_undefined_shape() {
        let m = moment_summary(&[2.0; 6]).unwrap();
        assert_eq!(m.sd, 0.0);
        assert_eq!(m.skewness, None);
        assert!(moment_summary(&[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn affine_invariance() {
        let v: Vec<f64> = (0..50).map(|i| ((i * 37) % 17) as f64 + 0.1 * i as f64).collect();
        let a = moment_summary(&v).unwrap();
        let w: Vec<f64> = v.iter().map(|x| 3.0 * x - 7.0).collect();
        let b = moment_summary(&w).unwrap();
        assert!((b.mean - (3.0 * a.mean - 7.0)).abs() < 1e-12);
        assert!((b.sd - 3.0 * a.sd).abs() < 1e-12);
        assert!((b.skewness.unwrap() - a.skewness.unwrap()).abs() < 1e-12);
        assert!((b.kurtosis.unwrap() - a.kurtosis.unwrap()).abs() < 1e-12);
    }

    #[test]
    fn standard_normal_sample_moments() {
        let specs = [RandomVariableSpec::normal("z", 0.0, 1.0)];
        let v = mcs_values(|xi| Ok(xi.column(0).to_owned()), &specs, 1_000_000, 5).unwrap();
        let m = moment_summary(&v).unwrap();
        let n = 1e6f64;
        assert!(m.mean.abs() < 3.0 / n.sqrt());
        assert!((m.sd - 1.0).abs() < 3.0 * (0.5 / n).sqrt());
        assert!(m.skewness.unwrap().abs() < 3.0 * (6.0 / n).sqrt());
        assert!((m.kurtosis.unwrap() - 3.0).abs() < 3.0 * (24.0 / n).sqrt());
    }

    #[test]
    fn positive_function_never_fails() {
        let specs = [RandomVariableSpec::normal("z", 0.0, 1.0)];
        let r = failure_probability(|xi| Ok(Array1::from_elem(xi.nrows(), 1.0)), &specs, 10_000, 1).unwrap();
        assert_eq!((r.pf, r.failures, r.std_error), (0.0, 0, 0.0));
    }

    #[test]
    fn symmetric_function_fails_half_the_time() {
        let specs = [RandomVariableSpec::normal("z", 0.0, 1.0), RandomVariableSpec::uniform("u", 0.0, 1.0)];
        let r = failure_probability(|xi| Ok(xi.column(0).to_owned()), &specs, 200_000, 9).unwrap();
        assert!((r.pf - 0.5).abs() < 3.0 * r.std_error, "{r:?}");
        assert_eq!(r.pf, r.failures as f64 / r.n_mcs as f64);
        assert!((r.std_error - (r.pf * (1.0 - r.pf) / 2e5).sqrt()).abs() < 1e-18);
    }

    #[test]
    fn streaming_count_matches_collected_values() {
        let specs = [RandomVariableSpec::normal("a", 0.0, 1.0), RandomVariableSpec::gumbel("b", 1.0, 0.5)];
        let f = |xi: ArrayView2<f64>| Ok(xi.rows().into_iter().map(|r| 1.8 - r[0] - r[1]).collect::<Array1<f64>>());
        let n = 3 * MCS_BLOCK + 17;
        let streamed = failure_probability(f, &specs, n, 4).unwrap();
        let values = mcs_values(f, &specs, n, 4).unwrap();
        assert_eq!(streamed, ReliabilityResult::from_values(&values, 4));
        let direct = sample(&specs, n, SampleKind::Mc, 4).unwrap();
        let expect: Vec<f64> = direct.data.rows().into_iter().map(|r| 1.8 - r[0] - r[1]).collect();
        assert_eq!(values, expect);
    }

    #[test]
    fn kde_matches_normal_density() {
        let specs = [RandomVariableSpec::normal("z", 0.0, 1.0)];
        let v = mcs_values(|xi| Ok(xi.column(0).to_owned()), &specs, 100_000, 2).unwrap();
        let grid: Vec<f64> = (0..=200).map(|i| -5.0 + 0.05 * i as f64).collect();
        let pdf = kde_pdf(&v, &grid, Bandwidth::Silverman).unwrap();
        assert_eq!(pdf.len(), grid.len());
        let peak = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
        assert!((pdf[100] - peak).abs() < 0.1 * peak);
        assert!(pdf.iter().all(|p| *p >= 0.0));
        let integral: f64 = pdf.windows(2).map(|w| 0.5 * (w[0] + w[1]) * 0.05).sum();
        assert!((integral - 1.0).abs() < 0.02, "{integral}");
    }

    #[test]
    fn kde_far_from_data_is_zero() {
        let v: Vec<f64> = (0..20).map(|i| i as f64 * 0.1).collect();
        let pdf = kde_pdf(&v, &[1e3, -1e3], Bandwidth::Fixed(0.2)).unwrap();
        assert!(pdf.iter().all(|p| *p < 1e-300));
    }

    #[test]
    fn kde_rejects_degenerate_data() {
        assert!(matches!(kde_pdf(&[1.0; 20], &[0.0], Bandwidth::Silverman), Err(Error::Degenerate(_))));
        assert!(kde_pdf(&[1.0, 2.0], &[0.0], Bandwidth::Silverman).is_err());
    }

    #[test]
    fn silverman_hand_value() {
        let v: Vec<f64> = (1..=11).map(|i| i as f64).collect();
        let sd = (110.0f64 / 10.0).sqrt();
        let iqr = 8.5 - 3.5;
        let want = 0.9 * sd.min(iqr / 1.34) * 11f64.powf(-0.2);
        assert!((silverman_bandwidth(&v).unwrap() - want).abs() < 1e-15);
    }
}
