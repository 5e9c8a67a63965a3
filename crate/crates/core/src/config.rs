//! Run configuration: JSON schema, defaults and validation.
//!
//! Validation reports every problem it finds, each tagged with a JSON
//! pointer to the offending value.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::auxnet::{AdamConfig, DEFAULT_HIDDEN};
use crate::bench::{self, PerformanceFunction, CANTILEVER_THETA1_DEG, CANTILEVER_THETA2_DEG};
use crate::error::{Error, Result};
use crate::rv::{Family, RandomVariableSpec, SampleKind};
use crate::train::{LossWeights, LrDecay, TrainConfig};

/// One input variable as written in a config file. Normal and Gumbel
/// variables take `mean` and `sd`; uniform ones take `lower` and `upper`.
/// The positional `a` and `b` may stand in for either pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableConfig {
    pub name: String,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sd: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
}

impl VariableConfig {
    pub fn from_spec(s: &RandomVariableSpec) -> Self {
        let (mean, sd, lower, upper) = match s.family {
            Family::Uniform => (None, None, Some(s.a), Some(s.b)),
            _ => (Some(s.a), Some(s.b), None, None),
        };
        let family = serde_json::to_value(s.family).unwrap().as_str().unwrap().to_string();
        Self { name: s.name.clone(), family, mean, sd, lower, upper, a: None, b: None }
    }

    fn to_spec(&self, at: &str, errors: &mut Vec<ConfigIssue>) -> Option<RandomVariableSpec> {
        let Some(family) = Family::parse(&self.family) else {
            errors.push(ConfigIssue::new(
                format!("{at}/family"),
                format!("unknown family {:?}; supported: {}", self.family, Family::SUPPORTED.join(", ")),
            ));
            return None;
        };
        let (first, second) = match family {
            Family::Uniform => (("lower", self.lower), ("upper", self.upper)),
            _ => (("mean", self.mean), ("sd", self.sd)),
        };
        let mut positional = |named: (&'static str, Option<f64>), key: &'static str, value: Option<f64>| match (named.1, value) {
            (Some(_), Some(_)) => {
                errors.push(ConfigIssue::new(format!("{at}/{key}"), format!("duplicates `{}`", named.0)));
                named
            }
            (None, Some(v)) => (key, Some(v)),
            _ => named,
        };
        let first = positional(first, "a", self.a);
        let second = positional(second, "b", self.b);
        let mut missing = false;
        for (key, v) in [first, second] {
            if v.is_none() {
                errors.push(ConfigIssue::new(format!("{at}/{key}"), format!("required for a {} variable", self.family)));
                missing = true;
            }
        }
        let stray: Vec<&str> = match family {
            Family::Uniform => [("mean", self.mean), ("sd", self.sd)].iter().filter(|(_, v)| v.is_some()).map(|(k, _)| *k).collect(),
            _ => [("lower", self.lower), ("upper", self.upper)].iter().filter(|(_, v)| v.is_some()).map(|(k, _)| *k).collect(),
        };
        for key in stray {
            errors.push(ConfigIssue::new(format!("{at}/{key}"), format!("not a parameter of a {} variable", self.family)));
        }
        if missing {
            return None;
        }
        let spec = RandomVariableSpec { name: self.name.clone(), family, a: first.1.unwrap(), b: second.1.unwrap() };
        if let Err(e) = spec.validate() {
            let key = match &e {
                Error::InvalidSpec { field: "a", .. } => first.0,
                _ => second.0,
            };
            errors.push(ConfigIssue::new(format!("{at}/{key}"), e.to_string()));
            return None;
        }
        Some(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ProblemSpec {
    /// Built-in cantilever tube; load angles in degrees.
    Cantilever {
        #[serde(default = "default_theta1")]
        theta1_deg: f64,
        #[serde(default = "default_theta2")]
        theta2_deg: f64,
    },
    /// Built-in microsatellite variables; the mass comes from an external
    /// program and failure means mass above the limit.
    Microsat {
        #[serde(default)]
        mass_command: Vec<String>,
    },
    /// User variables and an external program computing `g` directly.
    Command {
        name: String,
        variables: Vec<VariableConfig>,
        command: Vec<String>,
    },
}

fn default_theta1() -> f64 {
    CANTILEVER_THETA1_DEG
}

fn default_theta2() -> f64 {
    CANTILEVER_THETA2_DEG
}

impl ProblemSpec {
    pub fn name(&self) -> &str {
        match self {
            ProblemSpec::Cantilever { .. } => "cantilever",
            ProblemSpec::Microsat { .. } => "microsat",
            ProblemSpec::Command { name, .. } => name,
        }
    }

    pub fn specs(&self) -> Result<Vec<RandomVariableSpec>> {
        match self {
            ProblemSpec::Cantilever { .. } => Ok(bench::cantilever_specs()),
            ProblemSpec::Microsat { .. } => Ok(bench::microsat_specs()),
            ProblemSpec::Command { variables, .. } => {
                let mut errors = Vec::new();
                let specs: Vec<_> = variables
                    .iter()
                    .enumerate()
                    .filter_map(|(i, v)| v.to_spec(&format!("/problem/variables/{i}"), &mut errors))
                    .collect();
                if errors.is_empty() {
                    Ok(specs)
                } else {
                    Err(Error::Config(ConfigErrors(errors).to_string()))
                }
            }
        }
    }

    /// The performance function this problem evaluates.
    pub fn performance(&self) -> Result<PerformanceFunction> {
        match self {
            ProblemSpec::Cantilever { theta1_deg, theta2_deg } => Ok(bench::cantilever_problem(*theta1_deg, *theta2_deg)),
            ProblemSpec::Microsat { mass_command } => bench::microsat_command(mass_command.clone()),
            ProblemSpec::Command { name, command, .. } => bench::command_function(name.clone(), self.specs()?, command.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Seeds {
    pub labels: u64,
    pub pool: u64,
    pub test: u64,
    pub init: u64,
    pub network: u64,
    pub mcs: u64,
}

impl Default for Seeds {
    fn default() -> Self {
        Self { labels: 1, pool: 2, test: 3, init: 4, network: 5, mcs: 7 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentChoice {
    /// Raw moments of the standardized unlabeled pool.
    Empirical,
    /// Closed-form moments; not available for every family.
    Analytic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerConfig {
    pub main: AdamConfig,
    pub aux: AdamConfig,
    pub decay: Option<LrDecay>,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self { main: AdamConfig::default(), aux: AdamConfig::default(), decay: None }
    }
}

/// Full-scale sizes for a configuration; informational only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceScale {
    pub n_ce: usize,
    pub epochs: usize,
    #[serde(default)]
    pub note: String,
}

/// A fully resolved run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    #[serde(default)]
    pub description: String,
    pub problem: ProblemSpec,
    pub p: usize,
    pub p_tilde: usize,
    pub hidden: Vec<usize>,
    pub n_gd: usize,
    pub n_ce: usize,
    pub n_test: usize,
    pub n_mcs: usize,
    /// Also run Monte Carlo on the true performance function with this many
    /// draws and report the surrogate's errors against it.
    pub reference_mcs: Option<usize>,
    pub labeled_sampling: SampleKind,
    pub moments: MomentChoice,
    pub epochs: usize,
    pub optimizer: OptimizerConfig,
    pub warm_start_aux: bool,
    pub loss_weights: LossWeights,
    pub seeds: Seeds,
    pub chunk_size: usize,
    pub checkpoint_every: usize,
    pub kde_points: usize,
    pub output_dir: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_scale: Option<ReferenceScale>,
}

/// Defaults applied to every key the file leaves out.
pub fn defaults() -> Map<String, Value> {
    let d = serde_json::json!({
        "description": "",
        "p": 4,
        "p_tilde": 2,
        "hidden": DEFAULT_HIDDEN.to_vec(),
        "n_gd": 90,
        "n_ce": 20000,
        "n_test": 10000,
        "n_mcs": 1000000,
        "reference_mcs": null,
        "labeled_sampling": "lhs",
        "moments": "empirical",
        "epochs": 5000,
        "optimizer": OptimizerConfig::default(),
        "warm_start_aux": false,
        "loss_weights": LossWeights::default(),
        "seeds": Seeds::default(),
        "chunk_size": 0,
        "checkpoint_every": 0,
        "kde_points": 256,
        "output_dir": "run",
    });
    match d {
        Value::Object(m) => m,
        _ => unreachable!(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigIssue {
    pub pointer: String,
    pub message: String,
}

impl ConfigIssue {
    fn new(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Self { pointer: pointer.into(), message: message.into() }
    }
}

impl fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.pointer.is_empty() { "/" } else { &self.pointer };
        write!(f, "{at}: {}", self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigErrors(pub Vec<ConfigIssue>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        f.write_str(&lines.join("\n"))
    }
}

impl std::error::Error for ConfigErrors {}

impl From<ConfigErrors> for Error {
    fn from(e: ConfigErrors) -> Self {
        Error::Config(e.to_string())
    }
}

fn field<T: DeserializeOwned>(obj: &Map<String, Value>, key: &str, errors: &mut Vec<ConfigIssue>) -> Option<T> {
    let v = obj.get(key)?;
    match T::deserialize(v) {
        Ok(t) => Some(t),
        Err(e) => {
            errors.push(ConfigIssue::new(format!("/{key}"), e.to_string()));
            None
        }
    }
}

/// Check a parsed config document, fill defaults and return the resolved
/// config, or every problem found.
pub fn resolve(doc: Value) -> std::result::Result<ProblemConfig, ConfigErrors> {
    let mut errors = Vec::new();
    let Value::Object(mut obj) = doc else {
        return Err(ConfigErrors(vec![ConfigIssue::new("", "config must be a JSON object")]));
    };
    for (k, v) in defaults() {
        obj.entry(k).or_insert(v);
    }
    let known: Vec<&str> = [
        "description",
        "problem",
        "p",
        "p_tilde",
        "hidden",
        "n_gd",
        "n_ce",
        "n_test",
        "n_mcs",
        "reference_mcs",
        "labeled_sampling",
        "moments",
        "epochs",
        "optimizer",
        "warm_start_aux",
        "loss_weights",
        "seeds",
        "chunk_size",
        "checkpoint_every",
        "kde_points",
        "output_dir",
        "reference_scale",
    ]
    .to_vec();
    for k in obj.keys() {
        if !known.contains(&k.as_str()) {
            errors.push(ConfigIssue::new(format!("/{k}"), "unknown key"));
        }
    }
    if !obj.contains_key("problem") {
        errors.push(ConfigIssue::new("/problem", "required"));
    }

    // type-check every field on its own so one bad value does not hide another
    let problem: Option<ProblemSpec> = field(&obj, "problem", &mut errors);
    let p: Option<usize> = field(&obj, "p", &mut errors);
    let p_tilde: Option<usize> = field(&obj, "p_tilde", &mut errors);
    let hidden: Option<Vec<usize>> = field(&obj, "hidden", &mut errors);
    let counts: Vec<(&str, Option<usize>)> = ["n_gd", "n_ce", "n_test", "n_mcs", "epochs", "kde_points"]
        .iter()
        .map(|k| (*k, field(&obj, k, &mut errors)))
        .collect();
    let reference_mcs: Option<Option<usize>> = field(&obj, "reference_mcs", &mut errors);
    let _: Option<SampleKind> = field(&obj, "labeled_sampling", &mut errors);
    let moments: Option<MomentChoice> = field(&obj, "moments", &mut errors);
    let optimizer: Option<OptimizerConfig> = field(&obj, "optimizer", &mut errors);
    let _: Option<bool> = field(&obj, "warm_start_aux", &mut errors);
    let weights: Option<LossWeights> = field(&obj, "loss_weights", &mut errors);
    let _: Option<Seeds> = field(&obj, "seeds", &mut errors);
    let _: Option<usize> = field(&obj, "chunk_size", &mut errors);
    let _: Option<usize> = field(&obj, "checkpoint_every", &mut errors);
    let _: Option<PathBuf> = field(&obj, "output_dir", &mut errors);
    let _: Option<String> = field(&obj, "description", &mut errors);
    let _: Option<Option<ReferenceScale>> = field(&obj, "reference_scale", &mut errors);

    if let (Some(p), Some(pt)) = (p, p_tilde) {
        if p <= pt {
            errors.push(ConfigIssue::new("/p", format!("main order {p} must exceed auxiliary order p_tilde={pt}")));
        }
    }
    if let Some(h) = &hidden {
        for (i, v) in h.iter().enumerate() {
            if *v == 0 {
                errors.push(ConfigIssue::new(format!("/hidden/{i}"), "layer size must be positive"));
            }
        }
    }
    for (k, v) in &counts {
        if *v == Some(0) {
            errors.push(ConfigIssue::new(format!("/{k}"), "must be positive"));
        }
    }
    let n = |k: &str| counts.iter().find(|(n, _)| *n == k).and_then(|(_, v)| *v);
    if n("n_ce") == Some(1) {
        errors.push(ConfigIssue::new("/n_ce", "at least 2 unlabeled samples are needed"));
    }
    if n("n_test") == Some(1) {
        errors.push(ConfigIssue::new("/n_test", "at least 2 test samples are needed"));
    }
    if reference_mcs == Some(Some(0)) {
        errors.push(ConfigIssue::new("/reference_mcs", "must be positive or null"));
    }
    if let Some(opt) = &optimizer {
        for (name, a) in [("main", &opt.main), ("aux", &opt.aux)] {
            let base = format!("/optimizer/{name}");
            if !(a.lr > 0.0 && a.lr.is_finite()) {
                errors.push(ConfigIssue::new(format!("{base}/lr"), "must be positive"));
            }
            if !(0.0..1.0).contains(&a.beta1) {
                errors.push(ConfigIssue::new(format!("{base}/beta1"), "must lie in [0, 1)"));
            }
            if !(0.0..1.0).contains(&a.beta2) {
                errors.push(ConfigIssue::new(format!("{base}/beta2"), "must lie in [0, 1)"));
            }
            if !(a.eps > 0.0) {
                errors.push(ConfigIssue::new(format!("{base}/eps"), "must be positive"));
            }
        }
        if let Some(d) = opt.decay {
            if d.every == 0 {
                errors.push(ConfigIssue::new("/optimizer/decay/every", "must be positive"));
            }
            if !(d.factor > 0.0 && d.factor <= 1.0) {
                errors.push(ConfigIssue::new("/optimizer/decay/factor", "must lie in (0, 1]"));
            }
        }
    }
    if let Some(w) = weights {
        for (k, v) in [
            ("supervised_main", w.supervised_main),
            ("consistency", w.consistency),
            ("supervised_aux", w.supervised_aux),
            ("property_mean", w.property_mean),
            ("property_var", w.property_var),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                errors.push(ConfigIssue::new(format!("/loss_weights/{k}"), "must be finite and non-negative"));
            }
        }
    }
    let mut specs = None;
    if let Some(problem) = &problem {
        match problem {
            ProblemSpec::Command { variables, command, .. } => {
                if variables.is_empty() {
                    errors.push(ConfigIssue::new("/problem/variables", "at least one variable is required"));
                }
                let collected: Vec<_> = variables
                    .iter()
                    .enumerate()
                    .filter_map(|(i, v)| v.to_spec(&format!("/problem/variables/{i}"), &mut errors))
                    .collect();
                specs = Some(collected);
                if command.is_empty() {
                    errors.push(ConfigIssue::new("/problem/command", "must name a program"));
                }
            }
            ProblemSpec::Cantilever { theta1_deg, theta2_deg } => {
                for (k, v) in [("theta1_deg", theta1_deg), ("theta2_deg", theta2_deg)] {
                    if !v.is_finite() {
                        errors.push(ConfigIssue::new(format!("/problem/{k}"), "must be finite"));
                    }
                }
                specs = problem.specs().ok();
            }
            ProblemSpec::Microsat { .. } => specs = problem.specs().ok(),
        }
    }
    if let (Some(MomentChoice::Analytic), Some(specs)) = (moments, &specs) {
        for (i, s) in specs.iter().enumerate() {
            if s.family == Family::Gumbel {
                errors.push(ConfigIssue::new(
                    "/moments",
                    format!("analytic moments are unavailable for gumbel variable {i} ({}); use \"empirical\"", s.name),
                ));
            }
        }
    }

    if !errors.is_empty() {
        return Err(ConfigErrors(errors));
    }
    serde_json::from_value(Value::Object(obj)).map_err(|e| ConfigErrors(vec![ConfigIssue::new("", e.to_string())]))
}

/// Read, check and resolve a config file.
pub fn validate_config(path: &Path) -> Result<ProblemConfig> {
    let text = std::fs::read_to_string(path)?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("/: not valid JSON ({e})")))?;
    Ok(resolve(doc)?)
}

impl ProblemConfig {
    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            p: self.p,
            p_tilde: self.p_tilde,
            hidden: self.hidden.clone(),
            epochs: self.epochs,
            main_optimizer: self.optimizer.main,
            aux_optimizer: self.optimizer.aux,
            lr_decay: self.optimizer.decay,
            init_seed: self.seeds.init,
            net_seed: self.seeds.network,
            chunk_size: self.chunk_size,
            cache_features: true,
            warm_start_aux: self.warm_start_aux,
            weights: self.loss_weights,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn minimal() -> Value {
        json!({"problem": {"kind": "cantilever"}})
    }

    #[test]
    fn defaults_fill_missing_keys() {
        let c = resolve(minimal()).unwrap();
        assert_eq!(c.p_tilde, 2);
        assert_eq!(c.p, 4);
        assert_eq!(c.hidden, DEFAULT_HIDDEN.to_vec());
        assert_eq!(c.problem, ProblemSpec::Cantilever { theta1_deg: 5.0, theta2_deg: 10.0 });
    }

    #[test]
    fn resolved_config_round_trips() {
        let c = resolve(minimal()).unwrap();
        let again = resolve(serde_json::from_str(&c.to_json()).unwrap()).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn negative_count_names_the_field() {
        let mut d = minimal();
        d["n_ce"] = json!(-5);
        let e = resolve(d).unwrap_err();
        assert_eq!(e.0.len(), 1);
        assert_eq!(e.0[0].pointer, "/n_ce");
    }

    #[test]
    fn unknown_family_lists_supported() {
        let d = json!({"problem": {"kind": "command", "name": "f", "command": ["f"],
            "variables": [{"name": "x", "family": "beta", "mean": 1.0, "sd": 1.0}]}});
        let e = resolve(d).unwrap_err();
        assert_eq!(e.0[0].pointer, "/problem/variables/0/family");
        for f in Family::SUPPORTED {
            assert!(e.0[0].message.contains(f));
        }
    }

    #[test]
    fn order_constraint_is_checked_first() {
        let mut d = minimal();
        d["p"] = json!(2);
        let e = resolve(d).unwrap_err();
        assert_eq!(e.0[0].pointer, "/p");
    }

    #[test]
    fn every_violation_is_reported() {
        let d = json!({"problem": {"kind": "cantilever"}, "n_gd": 0, "n_test": "ten", "bogus": 1,
            "optimizer": {"main": {"lr": -1.0, "beta1": 0.9, "beta2": 0.999, "eps": 1e-8},
                          "aux": {"lr": 1e-3, "beta1": 0.9, "beta2": 0.999, "eps": 1e-8}}});
        let e = resolve(d).unwrap_err();
        let ptrs: Vec<&str> = e.0.iter().map(|i| i.pointer.as_str()).collect();
        for want in ["/n_gd", "/n_test", "/bogus", "/optimizer/main/lr"] {
            assert!(ptrs.contains(&want), "{ptrs:?}");
        }
    }

    #[test]
    fn variable_parameters_follow_family() {
        let d = json!({"problem": {"kind": "command", "name": "f", "command": ["f"],
            "variables": [{"name": "u", "family": "uniform", "mean": 1.0, "upper": 2.0},
                          {"name": "n", "family": "normal", "mean": 1.0, "sd": -2.0}]}});
        let e = resolve(d).unwrap_err();
        let ptrs: Vec<&str> = e.0.iter().map(|i| i.pointer.as_str()).collect();
        assert!(ptrs.contains(&"/problem/variables/0/lower"));
        assert!(ptrs.contains(&"/problem/variables/0/mean"));
        assert!(ptrs.contains(&"/problem/variables/1/sd"));
    }

    #[test]
    fn positional_parameters_stand_in_for_named_ones() {
        let d = json!({"problem": {"kind": "command", "name": "f", "command": ["f"],
            "variables": [{"name": "u", "family": "uniform", "a": -1.0, "b": 3.0},
                          {"name": "p", "family": "gumbel", "a": 12.0, "sd": 1.2}]}});
        let specs = resolve(d).unwrap().problem.specs().unwrap();
        assert_eq!(specs[0], RandomVariableSpec::uniform("u", -1.0, 3.0));
        assert_eq!(specs[1], RandomVariableSpec::gumbel("p", 12.0, 1.2));

        let d = json!({"problem": {"kind": "command", "name": "f", "command": ["f"],
            "variables": [{"name": "n", "family": "normal", "a": 1.0, "mean": 1.0, "b": 0.0}]}});
        let e = resolve(d).unwrap_err();
        let ptrs: Vec<&str> = e.0.iter().map(|i| i.pointer.as_str()).collect();
        assert_eq!(ptrs, ["/problem/variables/0/a", "/problem/variables/0/b"]);
    }

    #[test]
    fn analytic_moments_reject_gumbel() {
        let mut d = minimal();
        d["moments"] = json!("analytic");
        let e = resolve(d).unwrap_err();
        assert_eq!(e.0[0].pointer, "/moments");
    }

    #[test]
    fn microsat_without_mass_has_no_function() {
        let c = resolve(json!({"problem": {"kind": "microsat"}})).unwrap();
        assert!(matches!(c.problem.performance(), Err(Error::MissingFunction(_))));
        assert_eq!(c.problem.specs().unwrap().len(), 7);
    }

    #[test]
    fn variable_config_round_trip() {
        for s in bench::cantilever_specs() {
            let v = VariableConfig::from_spec(&s);
            let mut errs = Vec::new();
            assert_eq!(v.to_spec("", &mut errs), Some(s));
        }
    }
}
