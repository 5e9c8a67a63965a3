//! Browser bindings: orthonormal polynomial curves, Monte Carlo on the
//! cantilever tube, and a one-dimensional training run. Every export returns
//! a JSON string; failures come back as JavaScript exceptions.

use ndarray::Array2;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use dpcnn::analyze::{kde_grid, kde_pdf, mcs_values, moment_summary, Bandwidth, MomentSummary, ReliabilityResult};
use dpcnn::auxnet::AdamConfig;
use dpcnn::basis::{apc_univariate, OrthonormalBasis, UnivariateBasis};
use dpcnn::bench::cantilever_problem;
use dpcnn::rv::{
    raw_moments_analytic, raw_moments_empirical, sample, Family, RandomVariableSpec, SampleKind,
};
use dpcnn::train::{aux_predictions, LrDecay, TrainConfig, Trainer, TrainingSet};

fn js(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

#[derive(Serialize)]
pub struct Curves {
    pub family: String,
    pub x: Vec<f64>,
    /// `curves[j][k]` is the degree-`j` polynomial at `x[k]`.
    pub curves: Vec<Vec<f64>>,
    /// Monic coefficients, lowest power first.
    pub monic: Vec<Vec<f64>>,
}

fn univariate(family: Family, p: usize) -> dpcnn::Result<UnivariateBasis> {
    let moments = match family {
        Family::Gumbel => {
            let spec = RandomVariableSpec::gumbel("x", 0.0, 1.0);
            let xi = sample(&[spec], 200_000, SampleKind::Mc, 1)?.data;
            raw_moments_empirical(&xi.column(0).to_vec(), 2 * p)?
        }
        f => raw_moments_analytic(f, 2 * p)?,
    };
    apc_univariate(&moments, p)
}

/// Orthonormal polynomials of a standardized variable, sampled on a grid.
pub fn polynomial_curves(family: &str, p: usize, points: usize) -> Result<String, String> {
    let fam = Family::parse(family).ok_or_else(|| format!("unknown family {family:?}; supported: {}", Family::SUPPORTED.join(", ")))?;
    if !(1..=10).contains(&p) {
        return Err("order must be between 1 and 10".into());
    }
    let basis = univariate(fam, p).map_err(|e| e.to_string())?;
    let points = points.clamp(2, 2000);
    let (lo, hi) = match fam {
        Family::Uniform => (-3f64.sqrt(), 3f64.sqrt()),
        _ => (-3.5, 3.5),
    };
    let x: Vec<f64> = (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect();
    let curves = (0..=p).map(|j| x.iter().map(|&v| basis.eval(j, v)).collect()).collect();
    let out = Curves { family: family.to_ascii_lowercase(), x, curves, monic: basis.monic_coeffs() };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[derive(Serialize)]
pub struct McsOutput {
    pub reliability: ReliabilityResult,
    pub moments: MomentSummary,
    pub kde_x: Vec<f64>,
    pub kde_density: Vec<f64>,
}

/// Monte Carlo of the cantilever tube's true limit state.
pub fn cantilever_mcs(n: usize, seed: u64, theta1_deg: f64, theta2_deg: f64) -> Result<String, String> {
    if !(1000..=2_000_000).contains(&n) {
        return Err("sample count must be between 1000 and 2000000".into());
    }
    let g = cantilever_problem(theta1_deg, theta2_deg);
    let values = mcs_values(|xi| g.eval_standardized(xi), &g.input_specs, n, seed).map_err(|e| e.to_string())?;
    let moments = moment_summary(&values).map_err(|e| e.to_string())?;
    let kde_x = kde_grid(&values, 160).map_err(|e| e.to_string())?;
    // a subsample keeps the density cheap; it only feeds the plot
    let step = (values.len() / 20_000).max(1);
    let sub: Vec<f64> = values.iter().step_by(step).copied().collect();
    let kde_density = kde_pdf(&sub, &kde_x, Bandwidth::Silverman).map_err(|e| e.to_string())?;
    let out = McsOutput { reliability: ReliabilityResult::from_values(&values, seed), moments, kde_x, kde_density };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

/// The one-dimensional target of the training demo.
pub fn toy_target(x: f64) -> f64 {
    3.0 + x + 0.6 * (2.0 * x).sin()
}

#[derive(Serialize)]
pub struct ToyOutput {
    pub epochs: usize,
    pub loss_total: Vec<f64>,
    pub loss_main: Vec<f64>,
    pub loss_aux: Vec<f64>,
    pub grid: Vec<f64>,
    pub truth: Vec<f64>,
    pub main: Vec<f64>,
    pub aux: Vec<f64>,
    pub labeled_x: Vec<f64>,
    pub labeled_y: Vec<f64>,
    pub main_rmse: f64,
}

/// Train main and auxiliary models on a standard normal input.
pub fn train_toy(n_labeled: usize, epochs: usize, p: usize, seed: u64) -> Result<String, String> {
    let err = |e: dpcnn::Error| e.to_string();
    if !(4..=200).contains(&n_labeled) || epochs > 20_000 || !(3..=8).contains(&p) {
        return Err("labeled points must be 4..200, epochs at most 20000, order 3..8".into());
    }
    let spec = [RandomVariableSpec::normal("x", 0.0, 1.0)];
    let xl = sample(&spec, n_labeled, SampleKind::Lhs, seed).map_err(err)?.data;
    let yl: Vec<f64> = xl.column(0).iter().map(|&x| toy_target(x)).collect();
    let pool = sample(&spec, 2000, SampleKind::Mc, seed.wrapping_add(1)).map_err(err)?.data;
    let main_basis = OrthonormalBasis::analytic(&[Family::Normal], p).map_err(err)?;
    let aux_basis = OrthonormalBasis::analytic(&[Family::Normal], 2).map_err(err)?;
    let cfg = TrainConfig {
        p,
        p_tilde: 2,
        hidden: vec![16, 16],
        epochs,
        main_optimizer: AdamConfig { lr: 0.05, ..AdamConfig::default() },
        aux_optimizer: AdamConfig { lr: 0.005, ..AdamConfig::default() },
        lr_decay: Some(LrDecay { every: (epochs / 8).max(1), factor: 0.6 }),
        init_seed: seed.wrapping_add(2),
        net_seed: seed.wrapping_add(3),
        warm_start_aux: true,
        ..TrainConfig::default()
    };
    let data = TrainingSet::new(main_basis, aux_basis.clone(), xl.view(), &yl, pool.view(), 0, true).map_err(err)?;
    let out = Trainer::new(cfg, data).map_err(err)?.run(&mut |_| Ok(())).map_err(err)?;

    let grid: Vec<f64> = (0..201).map(|i| -2.5 + 0.025 * i as f64).collect();
    let gx = Array2::from_shape_vec((grid.len(), 1), grid.clone()).unwrap();
    let main = out.main.eval_batch(gx.view()).map_err(err)?.to_vec();
    let (_, aux) = aux_predictions(&out.aux, &aux_basis, gx.view()).map_err(err)?;
    let truth: Vec<f64> = grid.iter().map(|&x| toy_target(x)).collect();
    let main_rmse = (truth.iter().zip(&main).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / grid.len() as f64).sqrt();
    let stride = (out.history.len() / 400).max(1);
    let pick = |f: fn(&dpcnn::train::LossBreakdown) -> f64| out.history.iter().step_by(stride).map(f).collect();
    let result = ToyOutput {
        epochs: out.history.len(),
        loss_total: pick(|l| l.total),
        loss_main: pick(|l| l.main_total),
        loss_aux: pick(|l| l.aux_total),
        grid,
        truth,
        main,
        aux: aux.to_vec(),
        labeled_x: xl.column(0).to_vec(),
        labeled_y: yl,
        main_rmse,
    };
    serde_json::to_string(&result).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = polynomialCurves)]
pub fn polynomial_curves_js(family: &str, p: usize, points: usize) -> Result<String, JsValue> {
    polynomial_curves(family, p, points).map_err(js)
}

#[wasm_bindgen(js_name = cantileverMcs)]
pub fn cantilever_mcs_js(n: usize, seed: u32, theta1_deg: f64, theta2_deg: f64) -> Result<String, JsValue> {
    cantilever_mcs(n, u64::from(seed), theta1_deg, theta2_deg).map_err(js)
}

#[wasm_bindgen(js_name = trainToy)]
pub fn train_toy_js(n_labeled: usize, epochs: usize, p: usize, seed: u32) -> Result<String, JsValue> {
    train_toy(n_labeled, epochs, p, u64::from(seed)).map_err(js)
}
