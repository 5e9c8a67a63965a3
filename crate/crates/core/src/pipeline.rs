//! End-to-end run: sample, build bases, label, train, evaluate, run Monte
//! Carlo on the surrogate and write the run bundle.
//!
//! Bundle files (all UTF-8):
//!
//! | file | content |
//! |---|---|
//! | `config.resolved.json` | the config with every default filled in |
//! | `model.json` | both trained models and the input variables |
//! | `loss_history.csv` | one row per epoch |
//! | `metrics.json` | test-set accuracy |
//! | `moments.json` | moments of the surrogate's Monte Carlo outputs |
//! | `reliability.json` | failure probability |
//! | `kde.csv` | density curves for plotting |
//! | `report.csv` | one flat row of headline numbers |
//! | `summary.txt` | human-readable digest |
//!
//! CSV files start with a `# run_id: ...` line. Nothing time-dependent is
//! written, so a config always produces the same bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ndarray::ArrayView2;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analyze::{
    error_metrics, kde_grid, kde_pdf, mcs_values, moment_summary, Bandwidth, ErrorReport, MomentSummary, ReliabilityResult,
};
use crate::auxnet::AuxNet;
use crate::basis::OrthonormalBasis;
use crate::bench::{generate_labels, PerformanceFunction};
use crate::config::{MomentChoice, ProblemConfig};
use crate::error::{Error, Result};
use crate::pcnn::MainModel;
use crate::rv::{sample, RandomVariableSpec, SampleKind};
use crate::train::{aux_predictions, EpochView, LossBreakdown, Trainer, TrainingSet};

pub const MODEL_FORMAT: &str = "dpcnn-model";
pub const MODEL_VERSION: u32 = 1;

/// A failed stage, with the run it belonged to.
#[derive(Debug, thiserror::Error)]
#[error("run {run_id}: stage `{stage}` failed: {source}")]
pub struct StageError {
    pub stage: &'static str,
    pub run_id: String,
    #[source]
    pub source: Error,
}

/// Everything needed to evaluate a trained surrogate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format: String,
    pub version: u32,
    pub run_id: String,
    pub problem: String,
    pub variables: Vec<RandomVariableSpec>,
    pub main: MainModel,
    pub aux_basis: OrthonormalBasis,
    pub aux: AuxNet,
}

impl ModelFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let head: serde_json::Value = serde_json::from_str(&text)?;
        if head.get("format").and_then(|v| v.as_str()) != Some(MODEL_FORMAT) {
            return Err(Error::Shape(format!("{} is not a model file", path.display())));
        }
        if head.get("version").and_then(|v| v.as_u64()) != Some(u64::from(MODEL_VERSION)) {
            return Err(Error::Shape(format!("{}: unsupported model version", path.display())));
        }
        let m: ModelFile = serde_json::from_value(head)?;
        m.main.validate()?;
        m.aux_basis.validate()?;
        if m.variables.len() != m.main.basis.dim() || m.aux.input_dim() != m.main.basis.dim() || m.aux.output_dim() != m.aux_basis.len() {
            return Err(Error::Shape("model parts disagree on dimensions".into()));
        }
        for s in &m.variables {
            s.validate()?;
        }
        Ok(m)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_json(path, self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsFile {
    pub run_id: String,
    pub n_gd: usize,
    pub epochs: usize,
    pub final_loss: Option<LossBreakdown>,
    pub test: ErrorReport,
    /// Accuracy of the auxiliary model on the same test set.
    pub aux_test: ErrorReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentsFile {
    pub run_id: String,
    pub surrogate: MomentSummary,
    pub reference: Option<MomentSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityFile {
    pub run_id: String,
    pub surrogate: ReliabilityResult,
    pub reference: Option<ReliabilityResult>,
    /// `|pf - pf_ref| / pf_ref` when a reference exists and is nonzero.
    pub relative_error: Option<f64>,
}

/// In-memory copy of a written bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct RunBundle {
    pub dir: PathBuf,
    pub run_id: String,
    pub config: ProblemConfig,
    pub model: ModelFile,
    pub history: Vec<LossBreakdown>,
    pub metrics: MetricsFile,
    pub moments: MomentsFile,
    pub reliability: ReliabilityFile,
}

/// Hash of the resolved config, ignoring where the output goes.
pub fn run_id(config: &ProblemConfig) -> String {
    let mut c = config.clone();
    c.output_dir = PathBuf::new();
    let bytes = serde_json::to_vec(&c).expect("config serializes");
    Sha256::digest(&bytes).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    fs::write(path, text)?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn history_csv(run_id: &str, history: &[LossBreakdown]) -> String {
    let mut s = format!("# run_id: {run_id}\nepoch,{}\n", LossBreakdown::COLUMNS.join(","));
    for (i, l) in history.iter().enumerate() {
        let cols: Vec<String> = l.as_array().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "{},{}", i + 1, cols.join(","));
    }
    s
}

fn parse_history(text: &str) -> Result<Vec<LossBreakdown>> {
    let mut out = Vec::new();
    for line in text.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let v: Vec<f64> = line
            .split(',')
            .skip(1)
            .map(|s| s.parse::<f64>().map_err(|e| Error::Shape(format!("loss history: {e}"))))
            .collect::<Result<_>>()?;
        if v.len() != 8 {
            return Err(Error::Shape("loss history rows need 8 loss columns".into()));
        }
        out.push(LossBreakdown::from_terms(v[0], v[1], v[2], v[3], v[4]));
    }
    Ok(out)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| format!("{x:.6}"))
}

fn csv_opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

impl RunBundle {
    /// The digest written to `summary.txt`.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(s, "run {}", self.run_id);
        let _ = writeln!(s, "problem {} (d={})", self.model.problem, self.model.variables.len());
        let _ = writeln!(
            s,
            "main order p={} ({} terms), auxiliary order p_tilde={} ({} terms)",
            c.p,
            self.model.main.basis.len(),
            c.p_tilde,
            self.model.aux_basis.len()
        );
        let _ = writeln!(s, "labeled {}, unlabeled {}, epochs {}", c.n_gd, c.n_ce, self.metrics.epochs);
        if let Some(l) = &self.metrics.final_loss {
            let _ = writeln!(
                s,
                "final loss total {:.6e} (main {:.6e}, aux {:.6e})",
                l.total, l.main_total, l.aux_total
            );
        }
        let t = &self.metrics.test;
        let _ = writeln!(s, "\ntest set (n={})", t.n_test);
        let _ = writeln!(s, "  rmse {:.6}", t.rmse);
        let _ = writeln!(s, "  mae  {:.6}", t.mae);
        let _ = writeln!(s, "  mre  {} ({} excluded)", fmt_opt(t.mre), t.mre_excluded);
        let _ = writeln!(s, "  r2   {}", t.r2.map_or_else(|| "undefined".into(), |v| format!("{v:.8}")));
        let _ = writeln!(s, "  note: {}", t.note);
        let _ = writeln!(s, "  auxiliary model rmse {:.6}", self.metrics.aux_test.rmse);

        let row = |s: &mut String, label: &str, m: &MomentSummary| {
            let _ = writeln!(
                s,
                "  {label:<10} mean {:.4}  sd {:.4}  skewness {}  kurtosis {}",
                m.mean,
                m.sd,
                fmt_opt(m.skewness),
                fmt_opt(m.kurtosis)
            );
        };
        let _ = writeln!(s, "\nmoments (n={})", self.moments.surrogate.n);
        row(&mut s, "surrogate", &self.moments.surrogate);
        if let Some(r) = &self.moments.reference {
            row(&mut s, "reference", r);
        }

        let r = &self.reliability;
        let _ = writeln!(s, "\nfailure probability (n={}, seed {})", r.surrogate.n_mcs, r.surrogate.seed);
        let _ = writeln!(
            s,
            "  surrogate  pf {:.6e}  std error {:.3e}  failures {}",
            r.surrogate.pf, r.surrogate.std_error, r.surrogate.failures
        );
        if let Some(f) = &r.reference {
            let _ = writeln!(s, "  reference  pf {:.6e}  std error {:.3e}  failures {}", f.pf, f.std_error, f.failures);
        }
        if let Some(e) = r.relative_error {
            let _ = writeln!(s, "  relative error {:.4}%", 100.0 * e);
        }
        s
    }

    /// One header row and one value row.
    pub fn report_csv(&self) -> String {
        let t = &self.metrics.test;
        let m = &self.moments.surrogate;
        let r = &self.reliability;
        let header = "run_id,problem,p,p_tilde,n_gd,n_ce,epochs,rmse,mae,mre,r2,mean,sd,skewness,kurtosis,pf,pf_std_error,failures,n_mcs,pf_reference,pf_relative_error";
        let values = [
            self.run_id.clone(),
            self.model.problem.clone(),
            self.config.p.to_string(),
            self.config.p_tilde.to_string(),
            self.config.n_gd.to_string(),
            self.config.n_ce.to_string(),
            self.metrics.epochs.to_string(),
            t.rmse.to_string(),
            t.mae.to_string(),
            csv_opt(t.mre),
            csv_opt(t.r2),
            m.mean.to_string(),
            m.sd.to_string(),
            csv_opt(m.skewness),
            csv_opt(m.kurtosis),
            r.surrogate.pf.to_string(),
            r.surrogate.std_error.to_string(),
            r.surrogate.failures.to_string(),
            r.surrogate.n_mcs.to_string(),
            csv_opt(r.reference.as_ref().map(|f| f.pf)),
            csv_opt(r.relative_error),
        ];
        format!("{header}\n{}\n", values.join(","))
    }

    /// Read a bundle back from its directory.
    pub fn load(dir: &Path) -> Result<Self> {
        let config: ProblemConfig = read_json(&dir.join("config.resolved.json"))?;
        let model = ModelFile::load(&dir.join("model.json"))?;
        let metrics: MetricsFile = read_json(&dir.join("metrics.json"))?;
        let moments: MomentsFile = read_json(&dir.join("moments.json"))?;
        let reliability: ReliabilityFile = read_json(&dir.join("reliability.json"))?;
        let history = parse_history(&fs::read_to_string(dir.join("loss_history.csv"))?)?;
        let run_id = model.run_id.clone();
        for other in [&metrics.run_id, &moments.run_id, &reliability.run_id] {
            if *other != run_id {
                return Err(Error::Shape(format!("bundle mixes runs {run_id} and {other}")));
            }
        }
        Ok(Self { dir: dir.to_path_buf(), run_id, config, model, history, metrics, moments, reliability })
    }
}

/// Progress messages and per-epoch hooks for a pipeline run.
pub trait Monitor {
    fn stage(&mut self, _name: &str) {}
    fn epoch(&mut self, _view: &EpochView) {}
}

pub struct Silent;
impl Monitor for Silent {}

fn build_bases(config: &ProblemConfig, specs: &[RandomVariableSpec], pool: ArrayView2<f64>) -> Result<(OrthonormalBasis, OrthonormalBasis)> {
    match config.moments {
        MomentChoice::Empirical => {
            Ok((OrthonormalBasis::from_samples(pool, config.p)?, OrthonormalBasis::from_samples(pool, config.p_tilde)?))
        }
        MomentChoice::Analytic => {
            let families: Vec<_> = specs.iter().map(|s| s.family).collect();
            Ok((OrthonormalBasis::analytic(&families, config.p)?, OrthonormalBasis::analytic(&families, config.p_tilde)?))
        }
    }
}

/// Run every stage and write the bundle to `config.output_dir`.
pub fn run_pipeline(config: &ProblemConfig, monitor: &mut dyn Monitor) -> std::result::Result<RunBundle, StageError> {
    let id = run_id(config);
    let fail = |stage: &'static str| {
        let id = id.clone();
        move |source: Error| StageError { stage, run_id: id.clone(), source }
    };
    let dir = config.output_dir.clone();

    monitor.stage("setup");
    fs::create_dir_all(&dir).map_err(|e| fail("setup")(e.into()))?;
    write_json(&dir.join("config.resolved.json"), config).map_err(fail("setup"))?;
    let g: PerformanceFunction = config.problem.performance().map_err(fail("setup"))?;
    let specs = g.input_specs.clone();

    monitor.stage("sample");
    let pool = sample(&specs, config.n_ce, SampleKind::Mc, config.seeds.pool).map_err(fail("sample"))?.data;

    monitor.stage("basis");
    let (main_basis, aux_basis) = build_bases(config, &specs, pool.view()).map_err(fail("basis"))?;

    monitor.stage("labels");
    let labeled = generate_labels(&g, config.n_gd, config.labeled_sampling, config.seeds.labels).map_err(fail("labels"))?;
    let test = generate_labels(&g, config.n_test, SampleKind::Mc, config.seeds.test).map_err(fail("labels"))?;

    monitor.stage("train");
    let tc = config.train_config();
    let data = TrainingSet::new(main_basis, aux_basis.clone(), labeled.xi.view(), &labeled.y, pool.view(), tc.chunk_size, tc.cache_features)
        .map_err(fail("train"))?;
    drop(pool);
    let trainer = Trainer::new(tc, data).map_err(fail("train"))?;
    let checkpoints = dir.join("checkpoints");
    let every = config.checkpoint_every;
    let make_model = |main: &MainModel, aux: &AuxNet| ModelFile {
        format: MODEL_FORMAT.into(),
        version: MODEL_VERSION,
        run_id: id.clone(),
        problem: g.name.clone(),
        variables: specs.clone(),
        main: main.clone(),
        aux_basis: aux_basis.clone(),
        aux: aux.clone(),
    };
    let outcome = trainer
        .run(&mut |view| {
            monitor.epoch(view);
            if every > 0 && view.epoch % every == 0 {
                fs::create_dir_all(&checkpoints)?;
                make_model(view.main, view.aux).save(&checkpoints.join(format!("epoch-{:06}.json", view.epoch)))?;
            }
            Ok(())
        })
        .map_err(fail("train"))?;
    let model = make_model(&outcome.main, &outcome.aux);
    model.save(&dir.join("model.json")).map_err(fail("train"))?;
    fs::write(dir.join("loss_history.csv"), history_csv(&id, &outcome.history)).map_err(|e| fail("train")(e.into()))?;

    monitor.stage("evaluate");
    let pred = outcome.main.eval_batch(test.xi.view()).map_err(fail("evaluate"))?;
    let report = error_metrics(&test.y, pred.as_slice().unwrap()).map_err(fail("evaluate"))?;
    let (_, aux_pred) = aux_predictions(&outcome.aux, &aux_basis, test.xi.view()).map_err(fail("evaluate"))?;
    let aux_report = error_metrics(&test.y, aux_pred.as_slice().unwrap()).map_err(fail("evaluate"))?;
    let metrics = MetricsFile {
        run_id: id.clone(),
        n_gd: config.n_gd,
        epochs: outcome.history.len(),
        final_loss: outcome.history.last().copied(),
        test: report,
        aux_test: aux_report,
    };
    write_json(&dir.join("metrics.json"), &metrics).map_err(fail("evaluate"))?;

    monitor.stage("reliability");
    let values = mcs_values(|xi| outcome.main.eval_batch(xi), &specs, config.n_mcs, config.seeds.mcs).map_err(fail("reliability"))?;
    let surrogate_moments = moment_summary(&values).map_err(fail("reliability"))?;
    let surrogate_pf = ReliabilityResult::from_values(&values, config.seeds.mcs);
    let reference_values = match config.reference_mcs {
        Some(n) => {
            monitor.stage("reference");
            Some(mcs_values(|xi| g.eval_standardized(xi), &specs, n, config.seeds.mcs).map_err(fail("reference"))?)
        }
        None => None,
    };
    let reference_moments = reference_values.as_deref().map(moment_summary).transpose().map_err(fail("reference"))?;
    let reference_pf = reference_values.as_deref().map(|v| ReliabilityResult::from_values(v, config.seeds.mcs));
    let relative_error = reference_pf.as_ref().filter(|r| r.pf > 0.0).map(|r| (surrogate_pf.pf - r.pf).abs() / r.pf);
    let moments = MomentsFile { run_id: id.clone(), surrogate: surrogate_moments, reference: reference_moments };
    let reliability = ReliabilityFile { run_id: id.clone(), surrogate: surrogate_pf, reference: reference_pf, relative_error };
    write_json(&dir.join("moments.json"), &moments).map_err(fail("reliability"))?;
    write_json(&dir.join("reliability.json"), &reliability).map_err(fail("reliability"))?;

    monitor.stage("kde");
    let grid = kde_grid(&values, config.kde_points).map_err(fail("kde"))?;
    let dens = kde_pdf(&values, &grid, Bandwidth::Silverman).map_err(fail("kde"))?;
    let ref_dens = reference_values.as_deref().map(|v| kde_pdf(v, &grid, Bandwidth::Silverman)).transpose().map_err(fail("kde"))?;
    let mut kde = format!("# run_id: {id}\n");
    kde.push_str(if ref_dens.is_some() { "x,surrogate,reference\n" } else { "x,surrogate\n" });
    for (i, x) in grid.iter().enumerate() {
        match &ref_dens {
            Some(r) => writeln!(kde, "{x},{},{}", dens[i], r[i]),
            None => writeln!(kde, "{x},{}", dens[i]),
        }
        .unwrap();
    }
    fs::write(dir.join("kde.csv"), kde).map_err(|e| fail("kde")(e.into()))?;

    let bundle = RunBundle {
        dir: dir.clone(),
        run_id: id.clone(),
        config: config.clone(),
        model,
        history: outcome.history,
        metrics,
        moments,
        reliability,
    };
    monitor.stage("report");
    fs::write(dir.join("summary.txt"), bundle.summary()).map_err(|e| fail("report")(e.into()))?;
    fs::write(dir.join("report.csv"), bundle.report_csv()).map_err(|e| fail("report")(e.into()))?;
    Ok(bundle)
}
