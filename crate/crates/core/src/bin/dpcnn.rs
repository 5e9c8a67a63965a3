use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};

use dpcnn::analyze::{model_error_metrics, model_failure_probability};
use dpcnn::bench::{generate_labels, LabeledSet};
use dpcnn::config::validate_config;
use dpcnn::pipeline::{run_pipeline, ModelFile, Monitor, RunBundle, StageError};
use dpcnn::rv::SampleKind;
use dpcnn::train::EpochView;
use dpcnn::Error;

#[derive(Parser)]
#[command(name = "dpcnn", version, about = "Deep polynomial chaos surrogates for reliability analysis")]
struct Cli {
    /// Worker threads; results do not depend on this value.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Suppress progress output on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Train a surrogate from a config file and write the run bundle.
    Fit {
        config: PathBuf,
        /// Output directory, overriding the config's `output_dir`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Accuracy of a saved model on a CSV of inputs and true outputs.
    Eval { model: PathBuf, test: PathBuf },
    /// Monte Carlo failure probability of a saved model.
    Reliability {
        model: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        n_mcs: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print the summary of a run directory from its saved files.
    Report {
        run_dir: PathBuf,
        /// Also rewrite `summary.txt` and `report.csv`.
        #[arg(long)]
        write: bool,
    },
    /// Check a config file and print it with all defaults applied.
    Validate { config: PathBuf },
    /// Sample inputs for a configured problem and write labeled CSV.
    Sample {
        config: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Kind::Mc)]
        kind: Kind,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Kind {
    Mc,
    Lhs,
}

struct Progress {
    quiet: bool,
    start: Instant,
    epochs: usize,
}

impl Monitor for Progress {
    fn stage(&mut self, name: &str) {
        if !self.quiet {
            eprintln!("[{:>7.1}s] {name}", self.start.elapsed().as_secs_f64());
        }
    }

    fn epoch(&mut self, v: &EpochView) {
        let step = (self.epochs / 20).max(1);
        if !self.quiet && (v.epoch % step == 0 || v.epoch == self.epochs) {
            eprintln!(
                "[{:>7.1}s] epoch {}/{} total {:.4e} main {:.4e} aux {:.4e}",
                self.start.elapsed().as_secs_f64(),
                v.epoch,
                self.epochs,
                v.loss.total,
                v.loss.main_total,
                v.loss.aux_total
            );
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    let core = e
        .downcast_ref::<StageError>()
        .map(|s| &s.source)
        .or_else(|| e.downcast_ref::<Error>());
    match core {
        Some(Error::Io(_)) => 4,
        Some(err) if err.is_numeric() => 3,
        Some(_) => 2,
        None if e.downcast_ref::<std::io::Error>().is_some() => 4,
        None => 2,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Cmd::Fit { config, out } => {
            let mut cfg = validate_config(&config)?;
            if let Some(out) = out {
                cfg.output_dir = out;
            }
            let mut progress = Progress { quiet: cli.quiet, start: Instant::now(), epochs: cfg.epochs };
            let bundle = run_pipeline(&cfg, &mut progress)?;
            print!("{}", bundle.summary());
            if !cli.quiet {
                eprintln!("wrote {}", bundle.dir.display());
            }
        }
        Cmd::Eval { model, test } => {
            let m = ModelFile::load(&model).with_context(|| format!("loading {}", model.display()))?;
            let set = LabeledSet::read_csv(&test, &m.variables).with_context(|| format!("reading {}", test.display()))?;
            let r = model_error_metrics(&m.main, set.xi.view(), &set.y)?;
            let opt = |v: Option<f64>| v.map_or_else(|| "undefined".to_string(), |x| x.to_string());
            println!("n_test {}", r.n_test);
            println!("rmse {}", r.rmse);
            println!("mae {}", r.mae);
            println!("mre {} ({} excluded)", opt(r.mre), r.mre_excluded);
            println!("r2 {}", opt(r.r2));
            println!("note: {}", r.note);
        }
        Cmd::Reliability { model, n_mcs, seed, json } => {
            let m = ModelFile::load(&model).with_context(|| format!("loading {}", model.display()))?;
            let r = model_failure_probability(&m.main, &m.variables, n_mcs, seed)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r)?);
            } else {
                println!("pf {:e}", r.pf);
                println!("std_error {:e}", r.std_error);
                println!("failures {}", r.failures);
                println!("n_mcs {}", r.n_mcs);
                println!("seed {}", r.seed);
            }
        }
        Cmd::Report { run_dir, write } => {
            let b = RunBundle::load(&run_dir).with_context(|| format!("loading run {}", run_dir.display()))?;
            let text = b.summary();
            if write {
                std::fs::write(run_dir.join("summary.txt"), &text)?;
                std::fs::write(run_dir.join("report.csv"), b.report_csv())?;
            }
            print!("{text}");
        }
        Cmd::Validate { config } => {
            print!("{}", validate_config(&config)?.to_json());
        }
        Cmd::Sample { config, n, seed, kind, out } => {
            let cfg = validate_config(&config)?;
            let g = cfg.problem.performance()?;
            let kind = match kind {
                Kind::Mc => SampleKind::Mc,
                Kind::Lhs => SampleKind::Lhs,
            };
            generate_labels(&g, n, kind, seed)?.write_csv(&out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
