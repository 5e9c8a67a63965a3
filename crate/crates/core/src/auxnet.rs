//! The auxiliary model: a rectified-linear MLP mapping a standardized input
//! to the coefficients of a low-order expansion, and the Adam optimizer.
//!
//! Gradients are derived by hand for this fixed architecture. Weights are
//! stored as `out x in` matrices, so a layer computes `z = a W^T + b` on a
//! batch `a` with one sample per row.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Axis, Zip};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::basis::OrthonormalBasis;
use crate::error::{Error, Result};

/// Default hidden layer widths.
pub const DEFAULT_HIDDEN: [usize; 5] = [32, 64, 128, 64, 64];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "NetExport", try_from = "NetExport")]
pub struct AuxNet {
    layer_sizes: Vec<usize>,
    weights: Vec<Array2<f64>>,
    biases: Vec<Array1<f64>>,
}

/// JSON layout: row-major `out x in` weight arrays.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetExport {
    pub layer_sizes: Vec<usize>,
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<Vec<f64>>,
}

impl From<AuxNet> for NetExport {
    fn from(net: AuxNet) -> Self {
        NetExport {
            weights: net.weights.iter().map(|w| w.iter().copied().collect()).collect(),
            biases: net.biases.iter().map(|b| b.to_vec()).collect(),
            layer_sizes: net.layer_sizes,
        }
    }
}

impl TryFrom<NetExport> for AuxNet {
    type Error = Error;

    fn try_from(e: NetExport) -> Result<Self> {
        check_layer_sizes(&e.layer_sizes)?;
        let layers = e.layer_sizes.len() - 1;
        if e.weights.len() != layers || e.biases.len() != layers {
            return Err(Error::Shape(format!("{layers} layers but {} weight arrays", e.weights.len())));
        }
        let mut weights = Vec::with_capacity(layers);
        let mut biases = Vec::with_capacity(layers);
        for (l, (w, b)) in e.weights.into_iter().zip(e.biases).enumerate() {
            let (fan_in, fan_out) = (e.layer_sizes[l], e.layer_sizes[l + 1]);
            let w = Array2::from_shape_vec((fan_out, fan_in), w)
                .map_err(|_| Error::Shape(format!("layer {l} weights are not {fan_out}x{fan_in}")))?;
            if b.len() != fan_out {
                return Err(Error::Shape(format!("layer {l} bias has {} entries, expected {fan_out}", b.len())));
            }
            weights.push(w);
            biases.push(Array1::from(b));
        }
        let net = AuxNet { layer_sizes: e.layer_sizes, weights, biases };
        net.check_finite()?;
        Ok(net)
    }
}

fn check_layer_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.len() < 2 || sizes.iter().any(|&s| s == 0) {
        return Err(Error::Shape(format!("invalid layer chain {sizes:?}")));
    }
    Ok(())
}

impl AuxNet {
    /// Random network: weights `U(-sqrt(6/fan_in), sqrt(6/fan_in))`, zero biases.
    pub fn new(layer_sizes: &[usize], seed: u64) -> Result<Self> {
        let mut net = Self::zeros(layer_sizes)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for w in net.weights.iter_mut() {
            let bound = (6.0 / w.ncols() as f64).sqrt();
            w.mapv_inplace(|_| rng.gen_range(-bound..bound));
        }
        Ok(net)
    }

    pub fn zeros(layer_sizes: &[usize]) -> Result<Self> {
        check_layer_sizes(layer_sizes)?;
        let weights = layer_sizes.windows(2).map(|w| Array2::zeros((w[1], w[0]))).collect();
        let biases = layer_sizes[1..].iter().map(|&n| Array1::zeros(n)).collect();
        Ok(Self { layer_sizes: layer_sizes.to_vec(), weights, biases })
    }

    pub fn layer_sizes(&self) -> &[usize] {
        &self.layer_sizes
    }

    pub fn input_dim(&self) -> usize {
        self.layer_sizes[0]
    }

    pub fn output_dim(&self) -> usize {
        *self.layer_sizes.last().unwrap()
    }

    pub fn weights(&self) -> &[Array2<f64>] {
        &self.weights
    }

    pub fn biases(&self) -> &[Array1<f64>] {
        &self.biases
    }

    pub fn weights_mut(&mut self) -> &mut [Array2<f64>] {
        &mut self.weights
    }

    pub fn biases_mut(&mut self) -> &mut [Array1<f64>] {
        &mut self.biases
    }

    pub fn num_params(&self) -> usize {
        self.weights.iter().map(|w| w.len()).sum::<usize>() + self.biases.iter().map(|b| b.len()).sum::<usize>()
    }

    /// Parameter tensors in the order `W_1, b_1, W_2, b_2, ...`.
    pub fn param_slices(&self) -> Vec<&[f64]> {
        self.weights
            .iter()
            .zip(&self.biases)
            .flat_map(|(w, b)| [w.as_slice().unwrap(), b.as_slice().unwrap()])
            .collect()
    }

    pub fn param_slices_mut(&mut self) -> Vec<&mut [f64]> {
        self.weights
            .iter_mut()
            .zip(self.biases.iter_mut())
            .flat_map(|(w, b)| [w.as_slice_mut().unwrap(), b.as_slice_mut().unwrap()])
            .collect()
    }

    fn check_finite(&self) -> Result<()> {
        if self.param_slices().iter().any(|s| s.iter().any(|v| !v.is_finite())) {
            return Err(Error::NonFinite("auxiliary network parameter".into()));
        }
        Ok(())
    }

    /// Batch forward pass keeping every layer's activations for [`Self::backward`].
    pub fn forward(&self, x: ArrayView2<f64>) -> Result<ForwardCache> {
        if x.ncols() != self.input_dim() {
            return Err(Error::Shape(format!("input has {} columns, network expects {}", x.ncols(), self.input_dim())));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("auxiliary network input".into()));
        }
        self.check_finite()?;
        let last = self.weights.len() - 1;
        let mut activations = Vec::with_capacity(self.weights.len() + 1);
        activations.push(x.to_owned());
        for (l, (w, b)) in self.weights.iter().zip(&self.biases).enumerate() {
            let mut z = activations[l].dot(&w.t());
            z += b;
            if l < last {
                z.mapv_inplace(|v| v.max(0.0));
            }
            activations.push(z);
        }
        Ok(ForwardCache { activations })
    }

    /// Reverse pass: `upstream` is `dL/d(output)` for the cached batch.
    pub fn backward(&self, cache: &ForwardCache, upstream: ArrayView2<f64>) -> Result<NetGradients> {
        if cache.activations.len() != self.weights.len() + 1 {
            return Err(Error::Usage("forward cache does not belong to this network".into()));
        }
        if upstream.dim() != cache.output().dim() {
            return Err(Error::Usage(format!(
                "upstream gradient {:?} does not match cached output {:?}",
                upstream.dim(),
                cache.output().dim()
            )));
        }
        let layers = self.weights.len();
        let mut grad_w = Vec::with_capacity(layers);
        let mut grad_b = Vec::with_capacity(layers);
        let mut delta = upstream.to_owned();
        for l in (0..layers).rev() {
            let a_prev = &cache.activations[l];
            grad_w.push(delta.t().dot(a_prev).as_standard_layout().into_owned());
            grad_b.push(delta.sum_axis(Axis(0)));
            if l > 0 {
                let mut next = delta.dot(&self.weights[l]);
                // rectifier subgradient is 0 at 0
                Zip::from(&mut next).and(a_prev).for_each(|d, &a| {
                    if a <= 0.0 {
                        *d = 0.0;
                    }
                });
                delta = next;
            }
        }
        grad_w.reverse();
        grad_b.reverse();
        Ok(NetGradients { weights: grad_w, biases: grad_b })
    }
}

#[derive(Debug, Clone)]
pub struct ForwardCache {
    activations: Vec<Array2<f64>>,
}

impl ForwardCache {
    /// Network output, one row of coefficients per sample.
    pub fn output(&self) -> &Array2<f64> {
        self.activations.last().unwrap()
    }

    pub fn batch_len(&self) -> usize {
        self.activations[0].nrows()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetGradients {
    pub weights: Vec<Array2<f64>>,
    pub biases: Vec<Array1<f64>>,
}

impl NetGradients {
    pub fn zeros_like(net: &AuxNet) -> Self {
        Self {
            weights: net.weights.iter().map(|w| Array2::zeros(w.raw_dim())).collect(),
            biases: net.biases.iter().map(|b| Array1::zeros(b.raw_dim())).collect(),
        }
    }

    pub fn accumulate(&mut self, other: &NetGradients) {
        for (a, b) in self.weights.iter_mut().zip(&other.weights) {
            *a += b;
        }
        for (a, b) in self.biases.iter_mut().zip(&other.biases) {
            *a += b;
        }
    }

    /// Same order as [`AuxNet::param_slices`].
    pub fn slices(&self) -> Vec<&[f64]> {
        self.weights
            .iter()
            .zip(&self.biases)
            .flat_map(|(w, b)| [w.as_slice().unwrap(), b.as_slice().unwrap()])
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.slices().iter().all(|s| s.iter().all(|&v| v == 0.0))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuxOutput {
    pub coeffs: Vec<f64>,
    pub prediction: f64,
}

/// Adaptive coefficients and prediction for one input.
pub fn aux_forward(net: &AuxNet, basis_low: &OrthonormalBasis, xi: &[f64]) -> Result<AuxOutput> {
    check_pairing(net, basis_low)?;
    let phi = basis_low.eval(xi)?;
    let cache = net.forward(ArrayView2::from_shape((1, xi.len()), xi).expect("row vector"))?;
    let coeffs = cache.output().row(0).to_vec();
    let prediction = coeffs.iter().zip(&phi).map(|(c, p)| c * p).sum();
    Ok(AuxOutput { coeffs, prediction })
}

fn check_pairing(net: &AuxNet, basis_low: &OrthonormalBasis) -> Result<()> {
    if net.output_dim() != basis_low.len() || net.input_dim() != basis_low.dim() {
        return Err(Error::Shape(format!(
            "network {:?} does not fit a basis with d={} and {} terms",
            net.layer_sizes,
            basis_low.dim(),
            basis_low.len()
        )));
    }
    Ok(())
}

/// Row-wise `sum_i coeffs[l,i] * phi[l,i]`.
pub fn contract_rows(coeffs: ArrayView2<f64>, phi: ArrayView2<f64>) -> Array1<f64> {
    Zip::from(coeffs.rows()).and(phi.rows()).map_collect(|c, p| c.dot(&p))
}

/// Batch predictions from precomputed low-order basis values.
pub fn aux_predict_batch(net: &AuxNet, xi: ArrayView2<f64>, phi_low: ArrayView2<f64>) -> Result<(ForwardCache, Array1<f64>)> {
    let cache = net.forward(xi)?;
    if phi_low.dim() != cache.output().dim() {
        return Err(Error::Shape("low-order basis values do not match network output".into()));
    }
    let pred = contract_rows(cache.output().view(), phi_low);
    Ok((cache, pred))
}

/// Parameter gradients given `dL/d(prediction)` for each cached sample.
pub fn aux_backward(
    net: &AuxNet,
    cache: &ForwardCache,
    phi_low: ArrayView2<f64>,
    dl_dpred: ArrayView1<f64>,
) -> Result<NetGradients> {
    if dl_dpred.len() != cache.batch_len() || phi_low.nrows() != cache.batch_len() {
        return Err(Error::Usage("gradient batch does not match the forward cache".into()));
    }
    let upstream = &phi_low * &dl_dpred.insert_axis(Axis(1));
    net.backward(cache, upstream.view())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdamConfig {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        Self { lr: 1e-3, beta1: 0.9, beta2: 0.999, eps: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdamState {
    pub config: AdamConfig,
    pub t: u64,
    m: Vec<Vec<f64>>,
    v: Vec<Vec<f64>>,
}

impl AdamState {
    pub fn new(config: AdamConfig, shapes: &[usize]) -> Self {
        Self {
            config,
            t: 0,
            m: shapes.iter().map(|&n| vec![0.0; n]).collect(),
            v: shapes.iter().map(|&n| vec![0.0; n]).collect(),
        }
    }

    /// One Adam update. A non-finite gradient aborts with params and state untouched.
    pub fn step(&mut self, params: &mut [&mut [f64]], grads: &[&[f64]]) -> Result<()> {
        if params.len() != self.m.len() || grads.len() != self.m.len() {
            return Err(Error::Shape("parameter groups do not match optimizer state".into()));
        }
        for ((p, g), m) in params.iter().zip(grads).zip(&self.m) {
            if p.len() != m.len() || g.len() != m.len() {
                return Err(Error::Shape("parameter tensor size changed".into()));
            }
        }
        if grads.iter().any(|g| g.iter().any(|v| !v.is_finite())) {
            return Err(Error::NonFinite("gradient".into()));
        }
        self.t += 1;
        let AdamConfig { lr, beta1, beta2, eps } = self.config;
        let bias1 = 1.0 - beta1.powf(self.t as f64);
        let bias2 = 1.0 - beta2.powf(self.t as f64);
        for (((p, g), m), v) in params.iter_mut().zip(grads).zip(&mut self.m).zip(&mut self.v) {
            for i in 0..p.len() {
                m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
                v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
                let m_hat = m[i] / bias1;
                let v_hat = v[i] / bias2;
                p[i] -= lr * m_hat / (v_hat.sqrt() + eps);
            }
        }
        Ok(())
    }
}
