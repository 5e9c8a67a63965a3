//! The main model: a polynomial chaos layer followed by one linear output
//! neuron whose weights are the expansion coefficients. Also the least
//! squares baseline and the coefficient initialization built on it.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Axis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::basis::OrthonormalBasis;
use crate::error::{Error, Result};

/// Ridge used by callers when there are fewer labels than basis terms.
pub const UNDERDETERMINED_RIDGE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MainModel {
    pub basis: OrthonormalBasis,
    pub coeffs: Vec<f64>,
}

impl MainModel {
    pub fn new(basis: OrthonormalBasis, coeffs: Vec<f64>) -> Result<Self> {
        let model = Self { basis, coeffs };
        model.validate()?;
        Ok(model)
    }

    pub fn zeros(basis: OrthonormalBasis) -> Self {
        let coeffs = vec![0.0; basis.len()];
        Self { basis, coeffs }
    }

    pub fn validate(&self) -> Result<()> {
        if self.coeffs.len() != self.basis.len() {
            return Err(Error::Shape(format!(
                "{} coefficients for a basis of {} terms",
                self.coeffs.len(),
                self.basis.len()
            )));
        }
        if self.coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("expansion coefficient".into()));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.basis.order()
    }

    pub fn eval(&self, xi: &[f64]) -> Result<f64> {
        let phi = self.basis.eval(xi)?;
        Ok(phi.iter().zip(&self.coeffs).map(|(p, c)| p * c).sum())
    }

    pub fn eval_batch(&self, xi: ArrayView2<f64>) -> Result<Array1<f64>> {
        Ok(self.predict_features(self.basis.eval_batch(xi)?.view()))
    }

    /// Predictions from precomputed basis values (`n x M`).
    pub fn predict_features(&self, phi: ArrayView2<f64>) -> Array1<f64> {
        phi.dot(&ArrayView1::from(&self.coeffs))
    }

    /// Mean and variance implied by an orthonormal expansion.
    pub fn implied_mean_variance(&self) -> (f64, f64) {
        (self.coeffs[0], self.coeffs[1..].iter().map(|c| c * c).sum())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OlsFit {
    pub coeffs: Vec<f64>,
    pub order: usize,
    pub residual_rms: f64,
}

/// Least squares with optional ridge penalty `ridge * |c|^2`, via Householder QR.
pub fn ols_fit(basis: &OrthonormalBasis, xi: ArrayView2<f64>, y: &[f64], ridge: f64) -> Result<OlsFit> {
    if xi.nrows() != y.len() {
        return Err(Error::Shape(format!("{} inputs but {} labels", xi.nrows(), y.len())));
    }
    if y.is_empty() {
        return Err(Error::InsufficientData("no labeled samples".into()));
    }
    if !(ridge >= 0.0) || !ridge.is_finite() {
        return Err(Error::Config(format!("ridge must be a finite non-negative number, got {ridge}")));
    }
    if let Some(v) = y.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("label {v}")));
    }
    let phi = basis.eval_batch(xi)?;
    let coeffs = least_squares(phi.view(), y, ridge)?;
    let pred = phi.dot(&ArrayView1::from(&coeffs));
    let sse: f64 = pred.iter().zip(y).map(|(p, t)| (t - p).powi(2)).sum();
    Ok(OlsFit { coeffs, order: basis.order(), residual_rms: (sse / y.len() as f64).sqrt() })
}

/// Solve `min |A c - y|^2 + ridge |c|^2`.
pub fn least_squares(a: ArrayView2<f64>, y: &[f64], ridge: f64) -> Result<Vec<f64>> {
    let (n, m) = a.dim();
    let rows = if ridge > 0.0 { n + m } else { n };
    let mut r = Array2::<f64>::zeros((rows, m));
    r.slice_mut(ndarray::s![..n, ..]).assign(&a);
    let mut b = Array1::<f64>::zeros(rows);
    b.slice_mut(ndarray::s![..n]).assign(&ArrayView1::from(y));
    if ridge > 0.0 {
        let s = ridge.sqrt();
        for k in 0..m {
            r[[n + k, k]] = s;
        }
    }
    if rows < m {
        return Err(Error::RankDeficient { rank: rows, cols: m });
    }

    let mut diag = vec![0.0; m];
    for k in 0..m {
        let norm = r.slice(ndarray::s![k.., k]).iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            diag[k] = 0.0;
            continue;
        }
        let alpha = if r[[k, k]] > 0.0 { -norm } else { norm };
        let mut v: Array1<f64> = r.slice(ndarray::s![k.., k]).to_owned();
        v[0] -= alpha;
        let vnorm2 = v.dot(&v);
        if vnorm2 > 0.0 {
            let mut block = r.slice_mut(ndarray::s![k.., k..]);
            for mut col in block.axis_iter_mut(Axis(1)) {
                let f = 2.0 * v.dot(&col) / vnorm2;
                col.scaled_add(-f, &v);
            }
            let mut tail = b.slice_mut(ndarray::s![k..]);
            let f = 2.0 * v.dot(&tail) / vnorm2;
            tail.scaled_add(-f, &v);
        }
        diag[k] = r[[k, k]];
    }

    let largest = diag.iter().fold(0.0f64, |acc, d| acc.max(d.abs()));
    let tol = largest * 1e-12 * rows.max(m) as f64;
    let rank = diag.iter().filter(|d| d.abs() > tol).count();
    if rank < m {
        return Err(Error::RankDeficient { rank, cols: m });
    }
    let mut c = vec![0.0; m];
    for i in (0..m).rev() {
        let mut acc = b[i];
        for k in i + 1..m {
            acc -= r[[i, k]] * c[k];
        }
        c[i] = acc / r[[i, i]];
    }
    Ok(c)
}

/// Output of [`init_coeffs`] together with the quantities it was built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffInit {
    pub coeffs: Vec<f64>,
    pub low_fit: OlsFit,
    /// Population variance of the labels.
    pub label_variance: f64,
}

/// Population variance `mean(y^2) - mean(y)^2`.
pub fn label_variance(y: &[f64]) -> f64 {
    let n = y.len() as f64;
    let mean = y.iter().sum::<f64>() / n;
    let mean_sq = y.iter().map(|v| v * v).sum::<f64>() / n;
    mean_sq - mean * mean
}

/// Initial coefficients for the main model.
///
/// `c_1` is the constant term of a least squares fit on the low-order basis;
/// the rest are drawn uniformly from `[-sqrt(D), sqrt(D)]` where `D` is the
/// population variance of the labels. Constant labels give `(y, 0, ..., 0)`.
pub fn init_coeffs(
    xi: ArrayView2<f64>,
    y: &[f64],
    basis_high: &OrthonormalBasis,
    basis_low: &OrthonormalBasis,
    seed: u64,
) -> Result<CoeffInit> {
    if y.is_empty() {
        return Err(Error::InsufficientData("initialization needs labeled data".into()));
    }
    let m = basis_high.len();
    let mut coeffs = vec![0.0; m];
    let constant = y.iter().all(|&v| v == y[0]);
    if constant {
        coeffs[0] = y[0];
        let mut low = vec![0.0; basis_low.len()];
        low[0] = y[0];
        return Ok(CoeffInit {
            coeffs,
            low_fit: OlsFit { coeffs: low, order: basis_low.order(), residual_rms: 0.0 },
            label_variance: 0.0,
        });
    }
    let ridge = if y.len() < basis_low.len() { UNDERDETERMINED_RIDGE } else { 0.0 };
    let low_fit = ols_fit(basis_low, xi, y, ridge)?;
    let variance = label_variance(y).max(0.0);
    let half_width = variance.sqrt();
    coeffs[0] = low_fit.coeffs[0];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if half_width > 0.0 {
        for c in coeffs.iter_mut().skip(1) {
            *c = rng.gen_range(-half_width..=half_width);
        }
    }
    Ok(CoeffInit { coeffs, low_fit, label_variance: variance })
}
