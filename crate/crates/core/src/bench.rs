//! Benchmark problems and labeled data generation.
//!
//! Units for the cantilever tube follow the input table: lengths in mm,
//! forces in kN, torque in N·m and strength in MPa. The performance function
//! converts forces to N and torque to N·mm so stresses come out in MPa.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};
use std::sync::Arc;

use ndarray::{Array1, Array2, ArrayView2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rv::{destandardize_rows, sample, standardize_rows, RandomVariableSpec, SampleKind};

pub type EvalFn = Arc<dyn Fn(&[f64]) -> Result<f64> + Send + Sync>;
pub type BatchFn = Arc<dyn Fn(ArrayView2<f64>) -> Result<Vec<f64>> + Send + Sync>;

/// Rows handed to a batch evaluator at once.
pub const EVAL_BATCH: usize = 65536;

/// A scalar limit state `g(x)` over original-unit inputs; `g < 0` is failure.
#[derive(Clone)]
pub struct PerformanceFunction {
    pub name: String,
    pub input_specs: Vec<RandomVariableSpec>,
    pub fixed_params: BTreeMap<String, f64>,
    eval: EvalFn,
    batch: Option<BatchFn>,
}

impl fmt::Debug for PerformanceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PerformanceFunction")
            .field("name", &self.name)
            .field("input_specs", &self.input_specs)
            .field("fixed_params", &self.fixed_params)
            .finish_non_exhaustive()
    }
}

impl PerformanceFunction {
    pub fn new(
        name: impl Into<String>,
        input_specs: Vec<RandomVariableSpec>,
        fixed_params: BTreeMap<String, f64>,
        eval: impl Fn(&[f64]) -> Result<f64> + Send + Sync + 'static,
    ) -> Result<Self> {
        for s in &input_specs {
            s.validate()?;
        }
        Ok(Self { name: name.into(), input_specs, fixed_params, eval: Arc::new(eval), batch: None })
    }

    /// A function evaluated a block of rows at a time, for evaluators with a
    /// high fixed cost per call such as external programs.
    pub fn batched(
        name: impl Into<String>,
        input_specs: Vec<RandomVariableSpec>,
        fixed_params: BTreeMap<String, f64>,
        batch: impl Fn(ArrayView2<f64>) -> Result<Vec<f64>> + Send + Sync + 'static,
    ) -> Result<Self> {
        let batch: BatchFn = Arc::new(batch);
        let single = Arc::clone(&batch);
        let mut f = Self::new(name, input_specs, fixed_params, move |x| {
            let row = ArrayView2::from_shape((1, x.len()), x).expect("one row");
            single(row)?.first().copied().ok_or_else(|| Error::Command("no value returned".into()))
        })?;
        f.batch = Some(batch);
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.input_specs.len()
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::Shape(format!("{} expects {} inputs, got {}", self.name, self.dim(), x.len())));
        }
        let g = (self.eval)(x)?;
        if !g.is_finite() {
            return Err(Error::NonFinite(format!("{} returned {g}", self.name)));
        }
        Ok(g)
    }

    /// Evaluate each row of original-unit inputs, in row order.
    pub fn eval_rows(&self, x: ArrayView2<f64>) -> Result<Array1<f64>> {
        if x.ncols() != self.dim() {
            return Err(Error::Shape(format!("{} expects {} inputs, got {}", self.name, self.dim(), x.ncols())));
        }
        if let Some(batch) = &self.batch {
            let mut out = Vec::with_capacity(x.nrows());
            for start in (0..x.nrows()).step_by(EVAL_BATCH) {
                let block = x.slice(ndarray::s![start..(start + EVAL_BATCH).min(x.nrows()), ..]);
                let values = batch(block)?;
                if values.len() != block.nrows() {
                    return Err(Error::Command(format!("{} returned {} values for {} rows", self.name, values.len(), block.nrows())));
                }
                if let Some(i) = values.iter().position(|v| !v.is_finite()) {
                    let source = Error::NonFinite(format!("{} returned {}", self.name, values[i]));
                    return Err(Error::Sample { index: start + i, source: Box::new(source) });
                }
                out.extend(values);
            }
            return Ok(Array1::from(out));
        }
        let out: Vec<Result<f64>> = (0..x.nrows())
            .into_par_iter()
            .map(|i| {
                let row = x.row(i).to_vec();
                self.eval(&row).map_err(|e| Error::Sample { index: i, source: Box::new(e) })
            })
            .collect();
        out.into_iter().collect::<Result<Vec<_>>>().map(Array1::from)
    }

    /// Evaluate standardized rows by mapping them back to original units.
    pub fn eval_standardized(&self, xi: ArrayView2<f64>) -> Result<Array1<f64>> {
        let x = destandardize_rows(&self.input_specs, &xi.to_owned())?;
        self.eval_rows(x.view())
    }

    /// Hex SHA-256 of the canonical JSON of the input specs.
    pub fn specs_hash(&self) -> String {
        specs_hash(&self.input_specs)
    }
}

pub fn specs_hash(specs: &[RandomVariableSpec]) -> String {
    let json = serde_json::to_vec(specs).expect("specs serialize");
    Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
}

pub const CANTILEVER_THETA1_DEG: f64 = 5.0;
pub const CANTILEVER_THETA2_DEG: f64 = 10.0;

/// Inputs in order t, d, L1, L2, F1, F2, P, T, Sy.
pub fn cantilever_specs() -> Vec<RandomVariableSpec> {
    vec![
        RandomVariableSpec::normal("t", 5.0, 0.1),
        RandomVariableSpec::normal("d", 42.0, 0.5),
        RandomVariableSpec::uniform("L1", 119.75, 120.25),
        RandomVariableSpec::uniform("L2", 59.75, 60.25),
        RandomVariableSpec::normal("F1", 3.0, 0.3),
        RandomVariableSpec::normal("F2", 3.0, 0.3),
        RandomVariableSpec::gumbel("P", 12.0, 1.2),
        RandomVariableSpec::normal("T", 90.0, 9.0),
        RandomVariableSpec::normal("Sy", 220.0, 22.0),
    ]
}

/// Cantilever tube limit state; angles in radians, result in MPa.
pub fn cantilever_g(x: &[f64], theta1: f64, theta2: f64) -> Result<f64> {
    let [t, d, l1, l2, f1, f2, p, torque, sy] = <[f64; 9]>::try_from(x)
        .map_err(|_| Error::Shape(format!("cantilever tube takes 9 inputs, got {}", x.len())))?;
    if !(t > 0.0 && d > 2.0 * t) {
        return Err(Error::Geometry(format!("outer diameter {d} must exceed twice the thickness {t}")));
    }
    let (f1, f2, p) = (f1 * 1e3, f2 * 1e3, p * 1e3);
    let torque = torque * 1e3;
    let inner = d - 2.0 * t;
    let area = std::f64::consts::PI / 4.0 * (d * d - inner * inner);
    let inertia = std::f64::consts::PI / 64.0 * (d.powi(4) - inner.powi(4));
    let moment = f1 * l1 * theta1.cos() + f2 * l2 * theta2.cos();
    let sigma = (p + f1 * theta1.sin() + f2 * theta2.sin()) / area + moment * d / (2.0 * inertia);
    let tau = torque * d / (4.0 * inertia);
    let g = sy - (sigma * sigma + 3.0 * tau * tau).sqrt();
    if !g.is_finite() {
        return Err(Error::NonFinite(format!("cantilever tube at {x:?}")));
    }
    Ok(g)
}

/// The cantilever tube with load angles given in degrees.
pub fn cantilever_problem(theta1_deg: f64, theta2_deg: f64) -> PerformanceFunction {
    let fixed = BTreeMap::from([("theta1_deg".to_string(), theta1_deg), ("theta2_deg".to_string(), theta2_deg)]);
    let (t1, t2) = (theta1_deg.to_radians(), theta2_deg.to_radians());
    PerformanceFunction::new("cantilever", cantilever_specs(), fixed, move |x| cantilever_g(x, t1, t2))
        .expect("built-in specs are valid")
}

pub const MICROSAT_MASS_LIMIT_KG: f64 = 183.0;

/// Inputs in order h_o (km), f_c, b_sat, l_sat, t_sat (mm), c_DH, c_TTC.
pub fn microsat_specs() -> Vec<RandomVariableSpec> {
    vec![
        RandomVariableSpec::normal("h_o", 600.0, 6.0),
        RandomVariableSpec::normal("f_c", 280.0, 1.0),
        RandomVariableSpec::normal("b_sat", 800.0, 10.0),
        RandomVariableSpec::normal("l_sat", 700.0, 10.0),
        RandomVariableSpec::normal("t_sat", 5.0, 0.1),
        RandomVariableSpec::uniform("c_DH", 0.04, 0.05),
        RandomVariableSpec::uniform("c_TTC", 0.05, 0.06),
    ]
}

/// Microsatellite variables with an optional user-supplied mass model.
#[derive(Debug, Clone)]
pub struct MicrosatProblem {
    pub specs: Vec<RandomVariableSpec>,
    pub mass_limit: f64,
    performance: Option<PerformanceFunction>,
}

impl MicrosatProblem {
    pub fn performance(&self) -> Result<&PerformanceFunction> {
        self.performance.as_ref().ok_or_else(|| {
            Error::MissingFunction("microsat".into())
        })
    }

    pub fn generate_labels(&self, n: usize, kind: SampleKind, seed: u64) -> Result<LabeledSet> {
        generate_labels(self.performance()?, n, kind, seed)
    }
}

/// `g = 183 - mass(x)` when `mass` is given; otherwise only the variables.
pub fn microsat_problem(mass: Option<EvalFn>) -> MicrosatProblem {
    let specs = microsat_specs();
    let performance = mass.map(|m| {
        let fixed = BTreeMap::from([("mass_limit_kg".to_string(), MICROSAT_MASS_LIMIT_KG)]);
        PerformanceFunction::new("microsat", specs.clone(), fixed, move |x| Ok(MICROSAT_MASS_LIMIT_KG - m(x)?))
            .expect("built-in specs are valid")
    });
    MicrosatProblem { specs, mass_limit: MICROSAT_MASS_LIMIT_KG, performance }
}

/// A performance function computed by an external program. Each row of
/// inputs goes to the program's stdin as one comma-separated line; the
/// program answers with one value per line on stdout. The program is started
/// once per block of up to [`EVAL_BATCH`] rows.
pub fn command_function(
    name: impl Into<String>,
    specs: Vec<RandomVariableSpec>,
    argv: Vec<String>,
) -> Result<PerformanceFunction> {
    if argv.is_empty() {
        return Err(Error::Config("command must name a program".into()));
    }
    PerformanceFunction::batched(name, specs, BTreeMap::new(), move |x| run_command(&argv, x))
}

/// The microsatellite problem with its mass computed by an external program
/// that follows the same protocol as [`command_function`].
pub fn microsat_command(argv: Vec<String>) -> Result<PerformanceFunction> {
    if argv.is_empty() {
        return Err(Error::MissingFunction("microsat".into()));
    }
    let fixed = BTreeMap::from([("mass_limit_kg".to_string(), MICROSAT_MASS_LIMIT_KG)]);
    PerformanceFunction::batched("microsat", microsat_specs(), fixed, move |x| {
        Ok(run_command(&argv, x)?.into_iter().map(|m| MICROSAT_MASS_LIMIT_KG - m).collect())
    })
}

/// Run an external program on a batch of rows; one output line per row.
pub fn run_command(argv: &[String], x: ArrayView2<f64>) -> Result<Vec<f64>> {
    let mut child = Command::new(&argv[0])
        .args(&argv[1..])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::inherit())
        .spawn()
        .map_err(|e| Error::Command(format!("cannot start {}: {e}", argv[0])))?;
    let mut input = String::new();
    for row in x.rows() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        input.push_str(&line.join(","));
        input.push('\n');
    }
    {
        let mut stdin = child.stdin.take().expect("piped");
        stdin.write_all(input.as_bytes()).map_err(|e| Error::Command(format!("writing to {}: {e}", argv[0])))?;
    }
    let out = child.wait_with_output().map_err(|e| Error::Command(e.to_string()))?;
    if !out.status.success() {
        return Err(Error::Command(format!("{} exited with {}", argv[0], out.status)));
    }
    let text = String::from_utf8(out.stdout).map_err(|e| Error::Command(e.to_string()))?;
    let values: Vec<f64> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.trim().parse::<f64>().map_err(|e| Error::Command(format!("bad output line {l:?}: {e}"))))
        .collect::<Result<_>>()?;
    if values.len() != x.nrows() {
        return Err(Error::Command(format!("{} returned {} values for {} rows", argv[0], values.len(), x.nrows())));
    }
    Ok(values)
}

/// Standardized inputs, their original-unit values and the labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSet {
    pub xi: Array2<f64>,
    pub x: Array2<f64>,
    pub y: Vec<f64>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub problem: String,
    pub seed: u64,
    pub kind: SampleKind,
    pub n: usize,
    pub variables: Vec<String>,
    pub specs_sha256: String,
}

pub fn generate_labels(g: &PerformanceFunction, n: usize, kind: SampleKind, seed: u64) -> Result<LabeledSet> {
    let xi = sample(&g.input_specs, n, kind, seed)?.data;
    let x = destandardize_rows(&g.input_specs, &xi)?;
    let y = g.eval_rows(x.view())?.to_vec();
    Ok(LabeledSet {
        xi,
        x,
        y,
        provenance: Provenance {
            problem: g.name.clone(),
            seed,
            kind,
            n,
            variables: g.input_specs.iter().map(|s| s.name.clone()).collect(),
            specs_sha256: g.specs_hash(),
        },
    })
}

fn sidecar_path(csv: &Path) -> std::path::PathBuf {
    let mut p = csv.as_os_str().to_owned();
    p.push(".json");
    p.into()
}

impl LabeledSet {
    /// Write original-unit inputs plus a `y` column, and a `<file>.json` sidecar.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut header = self.provenance.variables.clone();
        header.push("y".into());
        write_table(path, &header, self.x.view(), &self.y)?;
        let side = serde_json::to_string_pretty(&self.provenance)?;
        fs::write(sidecar_path(path), side + "\n")?;
        Ok(())
    }

    /// Read a set written by [`LabeledSet::write_csv`]; inputs are standardized
    /// with `specs`, whose hash must match the sidecar when one exists.
    pub fn read_csv(path: &Path, specs: &[RandomVariableSpec]) -> Result<Self> {
        let (header, x, y) = read_table(path, specs.len())?;
        let names: Vec<String> = specs.iter().map(|s| s.name.clone()).collect();
        if header[..specs.len()] != names[..] {
            return Err(Error::Shape(format!("columns {header:?} do not match variables {names:?}")));
        }
        let side = sidecar_path(path);
        let provenance = if side.exists() {
            let p: Provenance = serde_json::from_str(&fs::read_to_string(side)?)?;
            if p.specs_sha256 != specs_hash(specs) {
                return Err(Error::Shape("data file was generated for different input variables".into()));
            }
            p
        } else {
            Provenance {
                problem: "external".into(),
                seed: 0,
                kind: SampleKind::Mc,
                n: y.len(),
                variables: names,
                specs_sha256: specs_hash(specs),
            }
        };
        let xi = standardize_rows(specs, &x)?;
        Ok(Self { xi, x, y, provenance })
    }
}

/// Write a numeric table with a header row.
pub fn write_table(path: &Path, header: &[String], x: ArrayView2<f64>, y: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(header).map_err(csv_err)?;
    for (row, yv) in x.rows().into_iter().zip(y) {
        let mut rec: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        rec.push(yv.to_string());
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Read a table of `d` input columns followed by one output column.
pub fn read_table(path: &Path, d: usize) -> Result<(Vec<String>, Array2<f64>, Vec<f64>)> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    let header: Vec<String> = r.headers().map_err(csv_err)?.iter().map(str::to_string).collect();
    if header.len() != d + 1 {
        return Err(Error::Shape(format!("expected {} columns, found {}", d + 1, header.len())));
    }
    let mut flat = Vec::new();
    let mut y = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        let vals: Vec<f64> = rec
            .iter()
            .map(|s| s.trim().parse::<f64>().map_err(|e| Error::Shape(format!("row {}: {s:?}: {e}", i + 1))))
            .collect::<Result<_>>()?;
        flat.extend_from_slice(&vals[..d]);
        y.push(vals[d]);
    }
    let x = Array2::from_shape_vec((y.len(), d), flat).expect("rows have d inputs");
    Ok((header, x, y))
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Shape(format!("{other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rv::Family;

    const MEANS: [f64; 9] = [5.0, 42.0, 120.0, 60.0, 3.0, 3.0, 12.0, 90.0, 220.0];
    // straight-line script evaluation at the input means
    const G_AT_MEANS: f64 = 85.90583382451308;
    const SIGMA_AT_MEANS: f64 = 133.11660908765109;

    fn angles() -> (f64, f64) {
        (5f64.to_radians(), 10f64.to_radians())
    }

    #[test]
    fn value_at_means() {
        let (a, b) = angles();
        let g = cantilever_g(&MEANS, a, b).unwrap();
        assert!((g - G_AT_MEANS).abs() <= 1e-9 * G_AT_MEANS);
    }

    #[test]
    fn zero_torque_reduces_to_axial_stress() {
        let (a, b) = angles();
        let mut x = MEANS;
        x[7] = 0.0;
        let g = cantilever_g(&x, a, b).unwrap();
        assert!((g - (220.0 - SIGMA_AT_MEANS)).abs() < 1e-9);
    }

    #[test]
    fn unloaded_tube_keeps_full_strength() {
        let (a, b) = angles();
        let mut x = MEANS;
        x[4] = 0.0;
        x[5] = 0.0;
        x[6] = 0.0;
        x[7] = 0.0;
        assert_eq!(cantilever_g(&x, a, b).unwrap(), 220.0);
    }

    #[test]
    fn invalid_geometry() {
        let (a, b) = angles();
        let mut x = MEANS;
        x[1] = 10.0;
        assert!(matches!(cantilever_g(&x, a, b), Err(Error::Geometry(_))));
        assert!(matches!(cantilever_g(&x[..8], a, b), Err(Error::Shape(_))));
    }

    #[test]
    fn monotone_in_strength_and_torque() {
        let (a, b) = angles();
        let at = |k: usize, v: f64| {
            let mut x = MEANS;
            x[k] = v;
            cantilever_g(&x, a, b).unwrap()
        };
        for i in 0..20 {
            let s = 150.0 + 7.0 * i as f64;
            assert!(at(8, s + 7.0) > at(8, s));
            let t = 40.0 + 5.0 * i as f64;
            assert!(at(7, t + 5.0) < at(7, t));
        }
    }

    #[test]
    fn smooth_at_means() {
        let (a, b) = angles();
        for k in 0..9 {
            let h = 1e-5 * MEANS[k];
            let mut p = MEANS;
            let mut m = MEANS;
            p[k] += h;
            m[k] -= h;
            let fd = (cantilever_g(&p, a, b).unwrap() - cantilever_g(&m, a, b).unwrap()) / (2.0 * h);
            assert!(fd.is_finite());
        }
    }

    #[test]
    fn labels_are_reproducible_and_exact() {
        let g = cantilever_problem(5.0, 10.0);
        let a = generate_labels(&g, 90, SampleKind::Lhs, 17).unwrap();
        let b = generate_labels(&g, 90, SampleKind::Lhs, 17).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.y.len(), 90);
        for (row, y) in a.x.rows().into_iter().zip(&a.y) {
            assert_eq!(*y, g.eval(row.as_slice().unwrap()).unwrap());
        }
    }

    #[test]
    fn labels_at_standardized_origin_hit_the_means() {
        let g = cantilever_problem(5.0, 10.0);
        let xi = Array2::<f64>::zeros((1, 9));
        let v = g.eval_standardized(xi.view()).unwrap();
        assert!((v[0] - G_AT_MEANS).abs() <= 1e-9 * G_AT_MEANS);
    }

    #[test]
    fn constant_function_labels() {
        let g = PerformanceFunction::new("seven", cantilever_specs(), BTreeMap::new(), |_| Ok(7.0)).unwrap();
        let set = generate_labels(&g, 25, SampleKind::Mc, 1).unwrap();
        assert!(set.y.iter().all(|v| *v == 7.0));
    }

    #[test]
    fn errors_carry_sample_index() {
        let g = PerformanceFunction::new("bad", cantilever_specs(), BTreeMap::new(), |x| {
            if x[0] > 5.0 {
                Err(Error::Geometry("thick".into()))
            } else {
                Ok(1.0)
            }
        })
        .unwrap();
        assert!(matches!(generate_labels(&g, 50, SampleKind::Mc, 3), Err(Error::Sample { .. })));
    }

    #[test]
    fn microsat_variables() {
        let m = microsat_problem(None);
        assert_eq!(m.specs.len(), 7);
        assert_eq!(m.specs.iter().filter(|s| s.family == Family::Normal).count(), 5);
        assert_eq!(m.specs.iter().filter(|s| s.family == Family::Uniform).count(), 2);
        assert_eq!(m.specs[0], RandomVariableSpec::normal("h_o", 600.0, 6.0));
        assert!(matches!(m.generate_labels(10, SampleKind::Lhs, 1), Err(Error::MissingFunction(_))));
    }

    #[test]
    fn microsat_with_mass_model() {
        let mass: EvalFn = Arc::new(|x: &[f64]| Ok(150.0 + 0.01 * x[0]));
        let m = microsat_problem(Some(mass));
        let set = m.generate_labels(10, SampleKind::Lhs, 1).unwrap();
        for (row, y) in set.x.rows().into_iter().zip(&set.y) {
            assert!((y - (183.0 - 150.0 - 0.01 * row[0])).abs() < 1e-12);
        }
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("labels.csv");
        let g = cantilever_problem(5.0, 10.0);
        let set = generate_labels(&g, 12, SampleKind::Lhs, 5).unwrap();
        set.write_csv(&path).unwrap();
        let back = LabeledSet::read_csv(&path, &g.input_specs).unwrap();
        assert_eq!(back.x, set.x);
        assert_eq!(back.y, set.y);
        assert_eq!(back.provenance, set.provenance);
        for (a, b) in back.xi.iter().zip(set.xi.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
        let other = microsat_specs();
        assert!(LabeledSet::read_csv(&path, &other).is_err());
    }

    #[cfg(unix)]
    #[test]
    fn external_command() {
        let argv = vec!["sh".into(), "-c".into(), "while IFS=, read a b; do echo \"$a\"; done".into()];
        let specs = vec![RandomVariableSpec::normal("a", 0.0, 1.0), RandomVariableSpec::normal("b", 0.0, 1.0)];
        let f = command_function("echo", specs, argv).unwrap();
        assert_eq!(f.eval(&[2.5, 1.0]).unwrap(), 2.5);
    }
}
