//! Joint training of the main model and the auxiliary model.
//!
//! Every epoch evaluates both models on the labeled set and on the whole
//! unlabeled pool, forms the five loss terms, and takes one Adam step on the
//! coefficients `c` and one on the network parameters `theta`:
//!
//! * `c` receives the supervised main loss and the consistency loss;
//! * `theta` receives the supervised auxiliary loss and the two property
//!   losses. The auxiliary predictions used as pseudo labels in the
//!   consistency loss are constants, so that loss never reaches `theta`.
//!
//! The pool can be swept in chunks. Pool statistics (mean and variance of the
//! auxiliary prediction, mean of each adaptive coefficient) need the whole
//! pool before any gradient is formed, so a chunked sweep runs the network
//! forward twice per chunk. Chunks are reduced in a fixed order.

use ndarray::{s, Array1, Array2, ArrayView1, ArrayView2, Axis, Zip};
use serde::{Deserialize, Serialize};

use crate::auxnet::{contract_rows, AdamConfig, AdamState, AuxNet, ForwardCache, NetGradients, DEFAULT_HIDDEN};
use crate::basis::OrthonormalBasis;
use crate::error::{Error, Result};
use crate::pcnn::{init_coeffs, CoeffInit, MainModel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LossWeights {
    pub supervised_main: f64,
    pub consistency: f64,
    pub supervised_aux: f64,
    pub property_mean: f64,
    pub property_var: f64,
}

impl Default for LossWeights {
    fn default() -> Self {
        Self { supervised_main: 1.0, consistency: 1.0, supervised_aux: 1.0, property_mean: 1.0, property_var: 1.0 }
    }
}

impl LossWeights {
    /// Only the consistency term is active.
    pub fn consistency_only() -> Self {
        Self { supervised_main: 0.0, consistency: 1.0, supervised_aux: 0.0, property_mean: 0.0, property_var: 0.0 }
    }
}

/// Multiply the learning rates by `factor` every `every` epochs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LrDecay {
    pub every: usize,
    pub factor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub p: usize,
    pub p_tilde: usize,
    pub hidden: Vec<usize>,
    pub epochs: usize,
    pub main_optimizer: AdamConfig,
    pub aux_optimizer: AdamConfig,
    pub lr_decay: Option<LrDecay>,
    pub init_seed: u64,
    pub net_seed: u64,
    /// Unlabeled rows per chunk; 0 sweeps the pool in one piece.
    pub chunk_size: usize,
    /// Keep basis values of the pool in memory between epochs.
    pub cache_features: bool,
    /// Start the network at the low-order least squares fit: output bias set
    /// to its coefficients and output weights set to zero.
    pub warm_start_aux: bool,
    pub weights: LossWeights,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            p: 4,
            p_tilde: 2,
            hidden: DEFAULT_HIDDEN.to_vec(),
            epochs: 5000,
            main_optimizer: AdamConfig::default(),
            aux_optimizer: AdamConfig::default(),
            lr_decay: None,
            init_seed: 3,
            net_seed: 4,
            chunk_size: 0,
            cache_features: true,
            warm_start_aux: false,
            weights: LossWeights::default(),
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.p <= self.p_tilde {
            return Err(Error::Config(format!(
                "main order p={} must exceed auxiliary order p_tilde={}",
                self.p, self.p_tilde
            )));
        }
        if self.hidden.iter().any(|&h| h == 0) {
            return Err(Error::Config("hidden layer sizes must be positive".into()));
        }
        for (name, opt) in [("main", &self.main_optimizer), ("aux", &self.aux_optimizer)] {
            let ok = opt.lr > 0.0
                && (0.0..1.0).contains(&opt.beta1)
                && (0.0..1.0).contains(&opt.beta2)
                && opt.eps > 0.0;
            if !ok {
                return Err(Error::Config(format!("invalid {name} optimizer settings {opt:?}")));
            }
        }
        if let Some(d) = self.lr_decay {
            if d.every == 0 || !(d.factor > 0.0 && d.factor <= 1.0) {
                return Err(Error::Config(format!("invalid learning-rate decay {d:?}")));
            }
        }
        let w = &self.weights;
        if [w.supervised_main, w.consistency, w.supervised_aux, w.property_mean, w.property_var]
            .iter()
            .any(|v| !(*v >= 0.0) || !v.is_finite())
        {
            return Err(Error::Config("loss weights must be finite and non-negative".into()));
        }
        Ok(())
    }
}

/// All loss terms of one evaluation. Composite terms are unweighted sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossBreakdown {
    pub supervised_main: f64,
    pub consistency: f64,
    pub supervised_aux: f64,
    pub property_mean: f64,
    pub property_var: f64,
    pub main_total: f64,
    pub aux_total: f64,
    pub total: f64,
}

impl LossBreakdown {
    pub fn from_terms(supervised_main: f64, consistency: f64, supervised_aux: f64, property_mean: f64, property_var: f64) -> Self {
        let main_total = supervised_main + consistency;
        let aux_total = supervised_aux + property_mean + property_var;
        Self {
            supervised_main,
            consistency,
            supervised_aux,
            property_mean,
            property_var,
            main_total,
            aux_total,
            total: main_total + aux_total,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|v| v.is_finite())
    }

    pub fn as_array(&self) -> [f64; 8] {
        [
            self.supervised_main,
            self.consistency,
            self.supervised_aux,
            self.property_mean,
            self.property_var,
            self.main_total,
            self.aux_total,
            self.total,
        ]
    }

    pub const COLUMNS: [&'static str; 8] = [
        "supervised_main",
        "consistency",
        "supervised_aux",
        "property_mean",
        "property_var",
        "main_total",
        "aux_total",
        "total",
    ];
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `phi · c`, one contiguous dot per row.
fn rows_dot(phi: &Array2<f64>, c: ArrayView1<f64>) -> Array1<f64> {
    Zip::from(phi.rows()).map_collect(|row| row.dot(&c))
}

/// `acc += phiᵀ · r`, accumulated row by row.
fn add_rows_weighted(acc: &mut Array1<f64>, phi: &Array2<f64>, r: &Array1<f64>) {
    for (row, &w) in phi.rows().into_iter().zip(r) {
        if w != 0.0 {
            acc.scaled_add(w, &row);
        }
    }
}

fn mean_abs_diff(a: ArrayView1<f64>, b: ArrayView1<f64>) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() / a.len() as f64
}

fn check_labeled(xi: ArrayView2<f64>, y: &[f64]) -> Result<()> {
    if xi.nrows() != y.len() {
        return Err(Error::Shape(format!("{} labeled inputs but {} labels", xi.nrows(), y.len())));
    }
    if y.is_empty() {
        return Err(Error::InsufficientData("labeled set is empty".into()));
    }
    Ok(())
}

/// Mean absolute error of the main model on labeled data.
pub fn loss_supervised_main(main: &MainModel, xi: ArrayView2<f64>, y: &[f64]) -> Result<f64> {
    check_labeled(xi, y)?;
    let pred = main.eval_batch(xi)?;
    Ok(mean_abs_diff(pred.view(), ArrayView1::from(y)))
}

/// Auxiliary predictions and coefficients for a batch.
pub fn aux_predictions(net: &AuxNet, basis_low: &OrthonormalBasis, xi: ArrayView2<f64>) -> Result<(Array2<f64>, Array1<f64>)> {
    let phi = basis_low.eval_batch(xi)?;
    let cache = net.forward(xi)?;
    let pred = contract_rows(cache.output().view(), phi.view());
    let coeffs = cache.output().clone();
    Ok((coeffs, pred))
}

/// Mean absolute gap between pseudo labels and the main model on unlabeled
/// inputs. Pseudo labels are treated as constants by the trainer.
pub fn loss_consistency(main: &MainModel, net: &AuxNet, basis_low: &OrthonormalBasis, xi: ArrayView2<f64>) -> Result<f64> {
    if xi.nrows() == 0 {
        return Err(Error::InsufficientData("unlabeled set is empty".into()));
    }
    let (_, pseudo) = aux_predictions(net, basis_low, xi)?;
    let pred = main.eval_batch(xi)?;
    Ok(mean_abs_diff(pseudo.view(), pred.view()))
}

/// Mean absolute error of the auxiliary model on labeled data.
pub fn loss_supervised_aux(net: &AuxNet, basis_low: &OrthonormalBasis, xi: ArrayView2<f64>, y: &[f64]) -> Result<f64> {
    check_labeled(xi, y)?;
    let (_, pred) = aux_predictions(net, basis_low, xi)?;
    Ok(mean_abs_diff(pred.view(), ArrayView1::from(y)))
}

/// Pool statistics of the auxiliary model.
#[derive(Debug, Clone, PartialEq)]
pub struct PoolStats {
    pub mean: f64,
    pub variance: f64,
    pub coeff_means: Vec<f64>,
}

impl PoolStats {
    pub fn from_outputs(coeffs: ArrayView2<f64>, pred: ArrayView1<f64>) -> Result<Self> {
        let n = pred.len();
        if n < 2 {
            return Err(Error::InsufficientData(format!("property losses need at least 2 unlabeled samples, got {n}")));
        }
        let inv_n = 1.0 / n as f64;
        let mean = pred.sum() * inv_n;
        let variance = pred.iter().map(|v| v * v).sum::<f64>() * inv_n - mean * mean;
        let coeff_means = coeffs.sum_axis(Axis(0)).mapv(|s| s * inv_n).to_vec();
        Ok(Self { mean, variance, coeff_means })
    }

    /// `(|E - E[c_1]|, |D - sum_{i>=2} E[c_i]^2|)`.
    pub fn property_losses(&self) -> (f64, f64) {
        let tail: f64 = self.coeff_means[1..].iter().map(|c| c * c).sum();
        ((self.mean - self.coeff_means[0]).abs(), (self.variance - tail).abs())
    }
}

/// The two property losses of the auxiliary model over an unlabeled pool.
pub fn loss_property(net: &AuxNet, basis_low: &OrthonormalBasis, xi: ArrayView2<f64>) -> Result<(f64, f64)> {
    if xi.nrows() < 2 {
        return Err(Error::InsufficientData(format!("property losses need at least 2 unlabeled samples, got {}", xi.nrows())));
    }
    let (coeffs, pred) = aux_predictions(net, basis_low, xi)?;
    Ok(PoolStats::from_outputs(coeffs.view(), pred.view())?.property_losses())
}

/// Gradients of the weighted objective.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub main: Vec<f64>,
    pub aux: NetGradients,
}

struct PoolChunk {
    xi: Array2<f64>,
    phi_main: Option<Array2<f64>>,
    phi_aux: Option<Array2<f64>>,
}

/// Labeled and unlabeled data with precomputed basis values.
pub struct TrainingSet {
    main_basis: OrthonormalBasis,
    aux_basis: OrthonormalBasis,
    xi_gd: Array2<f64>,
    y_gd: Array1<f64>,
    phi_main_gd: Array2<f64>,
    phi_aux_gd: Array2<f64>,
    chunks: Vec<PoolChunk>,
    n_ce: usize,
}

impl TrainingSet {
    pub fn new(
        main_basis: OrthonormalBasis,
        aux_basis: OrthonormalBasis,
        xi_gd: ArrayView2<f64>,
        y_gd: &[f64],
        xi_ce: ArrayView2<f64>,
        chunk_size: usize,
        cache_features: bool,
    ) -> Result<Self> {
        check_labeled(xi_gd, y_gd)?;
        if let Some(v) = y_gd.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("label {v}")));
        }
        if main_basis.dim() != aux_basis.dim() || xi_gd.ncols() != main_basis.dim() || xi_ce.ncols() != main_basis.dim() {
            return Err(Error::Shape("labeled data, unlabeled data and bases disagree on dimension".into()));
        }
        let n_ce = xi_ce.nrows();
        if n_ce < 2 {
            return Err(Error::InsufficientData(format!("need at least 2 unlabeled samples, got {n_ce}")));
        }
        let chunk = if chunk_size == 0 { n_ce } else { chunk_size.min(n_ce) };
        let mut chunks = Vec::with_capacity(n_ce.div_ceil(chunk));
        for start in (0..n_ce).step_by(chunk) {
            let xi = xi_ce.slice(s![start..(start + chunk).min(n_ce), ..]).to_owned();
            let (phi_main, phi_aux) = if cache_features {
                (Some(main_basis.eval_batch(xi.view())?), Some(aux_basis.eval_batch(xi.view())?))
            } else {
                (None, None)
            };
            chunks.push(PoolChunk { xi, phi_main, phi_aux });
        }
        Ok(Self {
            phi_main_gd: main_basis.eval_batch(xi_gd)?,
            phi_aux_gd: aux_basis.eval_batch(xi_gd)?,
            xi_gd: xi_gd.to_owned(),
            y_gd: Array1::from(y_gd.to_vec()),
            main_basis,
            aux_basis,
            chunks,
            n_ce,
        })
    }

    pub fn main_basis(&self) -> &OrthonormalBasis {
        &self.main_basis
    }

    pub fn aux_basis(&self) -> &OrthonormalBasis {
        &self.aux_basis
    }

    pub fn labeled_inputs(&self) -> ArrayView2<'_, f64> {
        self.xi_gd.view()
    }

    pub fn labels(&self) -> &[f64] {
        self.y_gd.as_slice().unwrap()
    }

    pub fn n_unlabeled(&self) -> usize {
        self.n_ce
    }

    fn chunk_features(&self, chunk: &PoolChunk) -> Result<(Array2<f64>, Array2<f64>)> {
        Ok((self.main_basis.eval_batch(chunk.xi.view())?, self.aux_basis.eval_batch(chunk.xi.view())?))
    }

    /// Loss terms and, if requested, gradients of the weighted objective.
    pub fn evaluate(
        &self,
        coeffs: &[f64],
        net: &AuxNet,
        weights: &LossWeights,
        with_gradients: bool,
    ) -> Result<(LossBreakdown, Option<Gradients>)> {
        if coeffs.len() != self.main_basis.len() || net.output_dim() != self.aux_basis.len() {
            return Err(Error::Shape("parameters do not match the training bases".into()));
        }
        let c = ArrayView1::from(coeffs);
        let n_gd = self.y_gd.len() as f64;
        let n_ce = self.n_ce as f64;

        // labeled set
        let main_gd = rows_dot(&self.phi_main_gd, c);
        let cache_gd = net.forward(self.xi_gd.view())?;
        let aux_gd = contract_rows(cache_gd.output().view(), self.phi_aux_gd.view());
        let supervised_main = mean_abs_diff(self.y_gd.view(), main_gd.view());
        let supervised_aux = mean_abs_diff(self.y_gd.view(), aux_gd.view());

        // pool sweep 1: predictions and statistics
        let mut pseudo = Array1::<f64>::zeros(self.n_ce);
        let mut main_ce = Array1::<f64>::zeros(self.n_ce);
        let mut coeff_sums = Array1::<f64>::zeros(self.aux_basis.len());
        let single_chunk = self.chunks.len() == 1;
        let mut kept: Option<(ForwardCache, Option<(Array2<f64>, Array2<f64>)>)> = None;
        let mut offset = 0;
        for chunk in &self.chunks {
            let computed;
            let (phi_main, phi_aux) = match (&chunk.phi_main, &chunk.phi_aux) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    computed = self.chunk_features(chunk)?;
                    (&computed.0, &computed.1)
                }
            };
            let rows = chunk.xi.nrows();
            let cache = net.forward(chunk.xi.view())?;
            pseudo.slice_mut(s![offset..offset + rows]).assign(&contract_rows(cache.output().view(), phi_aux.view()));
            main_ce.slice_mut(s![offset..offset + rows]).assign(&rows_dot(phi_main, c));
            coeff_sums += &cache.output().sum_axis(Axis(0));
            offset += rows;
            if single_chunk && with_gradients {
                let features = chunk.phi_main.is_none().then(|| (phi_main.clone(), phi_aux.clone()));
                kept = Some((cache, features));
            }
        }
        let mean = pseudo.sum() / n_ce;
        let variance = pseudo.iter().map(|v| v * v).sum::<f64>() / n_ce - mean * mean;
        let stats = PoolStats { mean, variance, coeff_means: coeff_sums.mapv(|s| s / n_ce).to_vec() };
        let (property_mean, property_var) = stats.property_losses();
        let consistency = mean_abs_diff(pseudo.view(), main_ce.view());
        let breakdown = LossBreakdown::from_terms(supervised_main, consistency, supervised_aux, property_mean, property_var);
        if !with_gradients {
            return Ok((breakdown, None));
        }

        // main coefficients: supervised + consistency, pseudo labels held fixed
        let w = weights;
        let r_gd: Array1<f64> = main_gd
            .iter()
            .zip(&self.y_gd)
            .map(|(p, y)| w.supervised_main * sign(p - y) / n_gd)
            .collect();
        let mut grad_c = Array1::<f64>::zeros(coeffs.len());
        add_rows_weighted(&mut grad_c, &self.phi_main_gd, &r_gd);

        // network: supervised aux on labeled rows
        let dl_daux_gd: Array1<f64> = aux_gd
            .iter()
            .zip(&self.y_gd)
            .map(|(p, y)| w.supervised_aux * sign(p - y) / n_gd)
            .collect();
        let upstream_gd = &self.phi_aux_gd * &dl_daux_gd.view().insert_axis(Axis(1));
        let mut grad_net = net.backward(&cache_gd, upstream_gd.view())?;

        // network: property losses on the pool
        let s_mean = w.property_mean * sign(stats.mean - stats.coeff_means[0]);
        let tail: f64 = stats.coeff_means[1..].iter().map(|c| c * c).sum();
        let s_var = w.property_var * sign(stats.variance - tail);
        let mut direct = Array1::<f64>::zeros(self.aux_basis.len());
        direct[0] = -s_mean / n_ce;
        for i in 1..direct.len() {
            direct[i] = -s_var * 2.0 * stats.coeff_means[i] / n_ce;
        }

        let mut offset = 0;
        for chunk in &self.chunks {
            let rows = chunk.xi.nrows();
            let range = s![offset..offset + rows];
            let (cache, features) = match kept.take() {
                Some(k) => k,
                None => {
                    let features = match chunk.phi_main {
                        Some(_) => None,
                        None => Some(self.chunk_features(chunk)?),
                    };
                    (net.forward(chunk.xi.view())?, features)
                }
            };
            let (phi_main, phi_aux) = match (&features, &chunk.phi_main, &chunk.phi_aux) {
                (Some((a, b)), _, _) => (a, b),
                (None, Some(a), Some(b)) => (a, b),
                _ => unreachable!("features are cached or recomputed"),
            };

            let r_ce: Array1<f64> = main_ce
                .slice(range)
                .iter()
                .zip(pseudo.slice(range))
                .map(|(p, q)| w.consistency * sign(p - q) / n_ce)
                .collect();
            add_rows_weighted(&mut grad_c, phi_main, &r_ce);

            let dl_dpseudo: Array1<f64> = pseudo
                .slice(range)
                .iter()
                .map(|&v| (s_mean + s_var * 2.0 * (v - stats.mean)) / n_ce)
                .collect();
            let mut upstream = phi_aux * &dl_dpseudo.view().insert_axis(Axis(1));
            upstream += &direct.view().insert_axis(Axis(0));
            grad_net.accumulate(&net.backward(&cache, upstream.view())?);
            offset += rows;
        }

        Ok((breakdown, Some(Gradients { main: grad_c.to_vec(), aux: grad_net })))
    }
}

/// A view of the trainer after an epoch's update.
pub struct EpochView<'a> {
    pub epoch: usize,
    pub loss: &'a LossBreakdown,
    pub main: &'a MainModel,
    pub aux: &'a AuxNet,
}

#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub main: MainModel,
    pub aux: AuxNet,
    pub history: Vec<LossBreakdown>,
    pub init: CoeffInit,
}

/// Owns both models and their optimizers for the duration of training.
pub struct Trainer {
    config: TrainConfig,
    data: TrainingSet,
    main: MainModel,
    aux: AuxNet,
    main_opt: AdamState,
    aux_opt: AdamState,
    init: CoeffInit,
    history: Vec<LossBreakdown>,
}

impl Trainer {
    pub fn new(config: TrainConfig, data: TrainingSet) -> Result<Self> {
        config.validate()?;
        if data.main_basis.order() != config.p || data.aux_basis.order() != config.p_tilde {
            return Err(Error::Config(format!(
                "bases have orders ({}, {}) but the configuration asks for ({}, {})",
                data.main_basis.order(),
                data.aux_basis.order(),
                config.p,
                config.p_tilde
            )));
        }
        let init = init_coeffs(data.xi_gd.view(), data.labels(), &data.main_basis, &data.aux_basis, config.init_seed)?;
        let main = MainModel::new(data.main_basis.clone(), init.coeffs.clone())?;

        let mut sizes = vec![data.main_basis.dim()];
        sizes.extend(&config.hidden);
        sizes.push(data.aux_basis.len());
        let mut aux = AuxNet::new(&sizes, config.net_seed)?;
        if config.warm_start_aux {
            aux.biases_mut().last_mut().unwrap().assign(&ArrayView1::from(&init.low_fit.coeffs));
            aux.weights_mut().last_mut().unwrap().fill(0.0);
        }
        let main_opt = AdamState::new(config.main_optimizer, &[main.coeffs.len()]);
        let shapes: Vec<usize> = aux.param_slices().iter().map(|s| s.len()).collect();
        let aux_opt = AdamState::new(config.aux_optimizer, &shapes);
        Ok(Self { config, data, main, aux, main_opt, aux_opt, init, history: Vec::new() })
    }

    pub fn main(&self) -> &MainModel {
        &self.main
    }

    pub fn aux(&self) -> &AuxNet {
        &self.aux
    }

    pub fn data(&self) -> &TrainingSet {
        &self.data
    }

    pub fn history(&self) -> &[LossBreakdown] {
        &self.history
    }

    pub fn epoch(&self) -> usize {
        self.history.len()
    }

    /// Current loss terms without updating anything.
    pub fn loss(&self) -> Result<LossBreakdown> {
        Ok(self.data.evaluate(&self.main.coeffs, &self.aux, &self.config.weights, false)?.0)
    }

    fn apply_decay(&mut self) {
        if let Some(decay) = self.config.lr_decay {
            let k = (self.history.len() / decay.every) as i32;
            let scale = decay.factor.powi(k);
            self.main_opt.config.lr = self.config.main_optimizer.lr * scale;
            self.aux_opt.config.lr = self.config.aux_optimizer.lr * scale;
        }
    }

    /// One epoch: evaluate, then one Adam update of `c` and of `theta`.
    pub fn step(&mut self) -> Result<LossBreakdown> {
        let epoch = self.history.len() + 1;
        let (loss, grads) = self.data.evaluate(&self.main.coeffs, &self.aux, &self.config.weights, true)?;
        if !loss.is_finite() {
            return Err(Error::Diverged { epoch, detail: format!("{loss:?}") });
        }
        let grads = grads.expect("requested");
        self.apply_decay();
        self.main_opt
            .step(&mut [&mut self.main.coeffs[..]], &[&grads.main[..]])
            .map_err(|e| Error::Diverged { epoch, detail: e.to_string() })?;
        let grad_slices = grads.aux.slices();
        self.aux_opt
            .step(&mut self.aux.param_slices_mut(), &grad_slices)
            .map_err(|e| Error::Diverged { epoch, detail: e.to_string() })?;
        self.history.push(loss);
        Ok(loss)
    }

    pub fn run(mut self, observer: &mut dyn FnMut(&EpochView) -> Result<()>) -> Result<TrainOutcome> {
        for _ in 0..self.config.epochs {
            let loss = self.step()?;
            observer(&EpochView { epoch: self.history.len(), loss: &loss, main: &self.main, aux: &self.aux })?;
        }
        Ok(self.finish())
    }

    pub fn finish(self) -> TrainOutcome {
        TrainOutcome { main: self.main, aux: self.aux, history: self.history, init: self.init }
    }
}

/// Train from scratch: initialize `c`, then run `config.epochs` epochs.
pub fn train(
    config: &TrainConfig,
    main_basis: OrthonormalBasis,
    aux_basis: OrthonormalBasis,
    xi_gd: ArrayView2<f64>,
    y_gd: &[f64],
    xi_ce: ArrayView2<f64>,
) -> Result<TrainOutcome> {
    config.validate()?;
    let data = TrainingSet::new(main_basis, aux_basis, xi_gd, y_gd, xi_ce, config.chunk_size, config.cache_features)?;
    Trainer::new(config.clone(), data)?.run(&mut |_| Ok(()))
}
