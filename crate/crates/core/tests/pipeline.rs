use std::fs;
use std::path::Path;

use dpcnn::config::{resolve, validate_config, ProblemConfig, ProblemSpec};
use dpcnn::pipeline::{run_id, run_pipeline, ModelFile, RunBundle, Silent};
use dpcnn::Error;
use serde_json::json;

fn small(out: &Path) -> ProblemConfig {
    resolve(json!({
        "problem": { "kind": "cantilever" },
        "p": 3,
        "p_tilde": 1,
        "hidden": [8, 8],
        "n_gd": 40,
        "n_ce": 400,
        "n_test": 200,
        "n_mcs": 5000,
        "reference_mcs": 5000,
        "epochs": 15,
        "optimizer": { "main": { "lr": 0.5 }, "aux": { "lr": 0.001 } },
        "warm_start_aux": true,
        "checkpoint_every": 5,
        "kde_points": 32,
        "output_dir": out.to_str().unwrap(),
    }))
    .unwrap()
}

#[test]
fn bundle_has_every_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small(&dir.path().join("run"));
    let bundle = run_pipeline(&cfg, &mut Silent).unwrap();
    for f in [
        "config.resolved.json",
        "model.json",
        "loss_history.csv",
        "metrics.json",
        "moments.json",
        "reliability.json",
        "kde.csv",
        "summary.txt",
        "report.csv",
        "checkpoints/epoch-000005.json",
        "checkpoints/epoch-000015.json",
    ] {
        assert!(bundle.dir.join(f).is_file(), "missing {f}");
    }
    assert_eq!(bundle.history.len(), 15);
    assert_eq!(bundle.metrics.test.n_test, 200);
    assert_eq!(bundle.reliability.surrogate.n_mcs, 5000);
    assert!(bundle.reliability.reference.is_some());
    assert!(bundle.moments.reference.is_some());

    let history = fs::read_to_string(bundle.dir.join("loss_history.csv")).unwrap();
    assert_eq!(history.lines().next().unwrap(), format!("# run_id: {}", bundle.run_id));
    assert_eq!(history.lines().count(), 2 + 15);
    let kde = fs::read_to_string(bundle.dir.join("kde.csv")).unwrap();
    assert_eq!(kde.lines().count(), 2 + 32);
    for line in kde.lines().skip(2) {
        for v in line.split(',').skip(1) {
            assert!(!v.starts_with('-'), "negative density in {line}");
        }
    }
}

#[test]
fn saved_bundle_reloads_and_report_matches() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small(&dir.path().join("run"));
    let bundle = run_pipeline(&cfg, &mut Silent).unwrap();
    let loaded = RunBundle::load(&bundle.dir).unwrap();
    assert_eq!(loaded, bundle);
    assert_eq!(loaded.summary(), fs::read_to_string(bundle.dir.join("summary.txt")).unwrap());
    assert_eq!(loaded.report_csv(), fs::read_to_string(bundle.dir.join("report.csv")).unwrap());
}

#[test]
fn resolved_snapshot_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small(&dir.path().join("a"));
    let a = run_pipeline(&cfg, &mut Silent).unwrap();
    let mut again = validate_config(&a.dir.join("config.resolved.json")).unwrap();
    assert_eq!(again, cfg);
    again.output_dir = dir.path().join("b");
    let b = run_pipeline(&again, &mut Silent).unwrap();
    assert_eq!(a.run_id, b.run_id);
    for f in ["model.json", "metrics.json", "reliability.json", "moments.json", "kde.csv", "report.csv", "loss_history.csv"] {
        assert_eq!(fs::read(a.dir.join(f)).unwrap(), fs::read(b.dir.join(f)).unwrap(), "{f} differs");
    }
}

#[test]
fn run_id_ignores_output_dir_only() {
    let a = small(Path::new("x"));
    let b = small(Path::new("y"));
    assert_eq!(run_id(&a), run_id(&b));
    assert_eq!(run_id(&a).len(), 16);
    let mut c = a.clone();
    c.seeds.network += 1;
    assert_ne!(run_id(&a), run_id(&c));
}

#[test]
fn model_file_round_trips_and_predicts_identically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small(&dir.path().join("run"));
    let bundle = run_pipeline(&cfg, &mut Silent).unwrap();
    let m = ModelFile::load(&bundle.dir.join("model.json")).unwrap();
    assert_eq!(m, bundle.model);
    assert_eq!(m.main.coeffs.len(), 220);
    let xi = ndarray::Array2::from_shape_fn((7, 9), |(i, j)| 0.3 * i as f64 - 0.2 * j as f64);
    assert_eq!(m.main.eval_batch(xi.view()).unwrap(), bundle.model.main.eval_batch(xi.view()).unwrap());
}

#[test]
fn model_file_rejects_foreign_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    fs::write(&path, r#"{"format": "something-else", "version": 1}"#).unwrap();
    assert!(ModelFile::load(&path).is_err());
    assert!(matches!(ModelFile::load(&dir.path().join("absent.json")), Err(Error::Io(_))));
}

#[test]
fn microsat_without_mass_program_fails_at_setup() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small(&dir.path().join("run"));
    cfg.problem = ProblemSpec::Microsat { mass_command: vec![] };
    let err = run_pipeline(&cfg, &mut Silent).unwrap_err();
    assert_eq!(err.stage, "setup");
    assert!(matches!(err.source, Error::MissingFunction(_)));
}

#[test]
fn external_program_supplies_the_labels() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = resolve(json!({
        "problem": {
            "kind": "command",
            "name": "sum",
            "variables": [
                { "name": "a", "family": "normal", "mean": 1.0, "sd": 0.5 },
                { "name": "b", "family": "uniform", "lower": -1.0, "upper": 1.0 }
            ],
            "command": ["awk", "-F,", "{ print 3 + $1 + $2 * $2 }"]
        },
        "p": 3,
        "p_tilde": 2,
        "hidden": [8],
        "n_gd": 30,
        "n_ce": 300,
        "n_test": 100,
        "n_mcs": 2000,
        "epochs": 5,
        "kde_points": 16,
        "output_dir": dir.path().join("run").to_str().unwrap(),
    }))
    .unwrap();
    let bundle = run_pipeline(&cfg, &mut Silent).unwrap();
    assert_eq!(bundle.model.problem, "sum");
    assert_eq!(bundle.model.variables.len(), 2);
    assert!(bundle.reliability.reference.is_none());
}
