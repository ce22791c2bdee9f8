//! Command-line front end: argument parsing, spec loading and the
//! subcommands. Data goes to files or standard output, progress to standard
//! error.
//!
//! Exit codes: 0 success, 1 usage or input/output error, 2 numerical
//! non-convergence.

pub mod files;
pub mod spec;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::analysis::{bootstrap_bca, fit_power_law, q_factor, rescale_estimates, PowerLawPoint, RescaleCoefficients};
use crate::error::{Error, Result};
use crate::glm::{fit_mjpl, fit_ml, GlmControl};
use crate::phase::{mle_exists_asymptotically, ExistenceMethod, PhasePoint, DEFAULT_PANELS};
use crate::separation::detect_separation;
use crate::sim::{
    generate_dataset, r2_by_group, run_amse_experiment, run_test_experiment, run_training_experiment, training_design,
    num, write_records_csv, write_summaries_csv, AmseSettings, MjplEstimator, RunOptions, TrainingSettings,
};
use files::Coefficients;

const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "mjpl", version, about = "Penalized logistic regression in high dimensions")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Debug, Args, Clone, Default)]
pub struct Common {
    /// JSON experiment spec
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file, or output directory for experiment commands
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Maximum number of worker threads
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b0: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b1: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b2: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b3: Option<f64>,
    /// `ml` or `mjpl` for fits; `analytic` or `monte-carlo` for phase
    #[arg(long, global = true)]
    pub method: Option<String>,
    /// Record wall-clock seconds per fit (otherwise the column is NA)
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a logistic regression to a dataset file
    Fit {
        data: PathBuf,
        #[arg(long)]
        no_intercept: bool,
    },
    /// Draw one dataset from the simulation design
    Simulate,
    /// Replicated fits over a design of (kappa, gamma, rho2) points
    Train,
    /// One fit per cell of a test grid, with rescaled summaries and R2
    Test,
    /// Aggregate MSE of the rescaled estimator without intercept
    Amse,
    /// Asymptotic existence threshold and verdict
    Phase(PhaseArgs),
    /// Check a dataset for complete or quasi-complete separation
    Separation {
        data: PathBuf,
        #[arg(long)]
        no_intercept: bool,
    },
    /// Divide fitted slopes by the shrinkage factor q
    Rescale(RescaleArgs),
    /// Fit the power law and bootstrap intervals from a training summary
    FitB {
        summary: PathBuf,
        #[arg(long, default_value_t = 9999)]
        resamples: usize,
        #[arg(long, default_value_t = 0.95)]
        level: f64,
    },
}

#[derive(Debug, Args, Clone)]
pub struct SignalArgs {
    #[arg(long)]
    pub kappa: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta0: Option<f64>,
    #[arg(long)]
    pub gamma0: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub rho2: Option<f64>,
}

impl SignalArgs {
    /// Either `(beta0, gamma0)` or `(gamma, rho2)`; a missing `beta0` or
    /// `rho2` means zero.
    fn point(&self) -> Result<PhasePoint> {
        match (self.gamma0, self.gamma) {
            (Some(g0), None) if self.rho2.is_none() => PhasePoint::new(self.kappa, self.beta0.unwrap_or(0.0), g0),
            (None, Some(g)) if self.beta0.is_none() => PhasePoint::from_signal(self.kappa, g, self.rho2.unwrap_or(0.0)),
            _ => Err(Error::InvalidInput(
                "give either --gamma0 (with optional --beta0) or --gamma (with optional --rho2)".into(),
            )),
        }
    }
}

#[derive(Debug, Args, Clone)]
pub struct PhaseArgs {
    #[command(flatten)]
    pub signal: SignalArgs,
    /// Integration panels for the analytic threshold
    #[arg(long, default_value_t = DEFAULT_PANELS)]
    pub panels: usize,
    /// Sample size for the Monte-Carlo boundary
    #[arg(long, default_value_t = 2000)]
    pub mc_n: usize,
    #[arg(long, default_value_t = 20)]
    pub mc_reps: usize,
}

#[derive(Debug, Args, Clone)]
pub struct RescaleArgs {
    /// Coefficient file as written by `fit`
    pub coefficients: PathBuf,
    #[command(flatten)]
    pub signal: SignalArgs,
    /// Override the existence verdict instead of computing it
    #[arg(long, action = clap::ArgAction::Set)]
    pub exists: Option<bool>,
}

/// Outcome of a successful command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Done,
    NotConverged,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::QuadratureUnstable(_)
        | Error::SingularInformation
        | Error::NonFiniteObjective(_)
        | Error::NotPositiveDefinite { .. } => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::NotConverged) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    match &cli.command {
        Command::Fit { data, no_intercept } => cmd_fit(c, data, !no_intercept),
        Command::Simulate => cmd_simulate(c),
        Command::Train => cmd_train(c),
        Command::Test => cmd_test(c),
        Command::Amse => cmd_amse(c),
        Command::Phase(args) => cmd_phase(c, args),
        Command::Separation { data, no_intercept } => cmd_separation(c, data, !no_intercept),
        Command::Rescale(args) => cmd_rescale(c, args),
        Command::FitB { summary, resamples, level } => cmd_fit_b(c, summary, *resamples, *level),
    }
}

fn control(c: &Common, base: GlmControl) -> Result<GlmControl> {
    let mut ctl = base;
    if let Some(t) = c.tol {
        ctl.tol = t;
    }
    if let Some(m) = c.max_iter {
        ctl.max_iter = m;
    }
    ctl.validate()?;
    Ok(ctl)
}

fn coefficients(c: &Common, base: Option<RescaleCoefficients>) -> RescaleCoefficients {
    let mut b = base.unwrap_or_default();
    for (slot, flag) in [(&mut b.b0, c.b0), (&mut b.b1, c.b1), (&mut b.b2, c.b2), (&mut b.b3, c.b3)] {
        if let Some(v) = flag {
            *slot = v;
        }
    }
    b
}

fn seed(c: &Common, from_spec: Option<u64>) -> u64 {
    c.seed.or(from_spec).unwrap_or(DEFAULT_SEED)
}

fn require_spec(c: &Common, command: &str) -> Result<PathBuf> {
    c.spec
        .clone()
        .ok_or_else(|| Error::InvalidInput(format!("`{command}` needs --spec <json>")))
}

fn require_out_dir(c: &Common, command: &str) -> Result<PathBuf> {
    let dir = c
        .out
        .clone()
        .ok_or_else(|| Error::InvalidInput(format!("`{command}` needs --out <directory>")))?;
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}

/// Comment block embedded in every output file.
fn header_comments(command: &str, seed: Option<u64>, b: &RescaleCoefficients, ctl: Option<&GlmControl>) -> Vec<String> {
    let mut out = vec![format!("mjpl {} {command}", env!("CARGO_PKG_VERSION"))];
    if let Some(s) = seed {
        out.push(format!("seed {s}"));
    }
    out.push(format!("b0 {} b1 {} b2 {} b3 {} phi {}", num(b.b0), num(b.b1), num(b.b2), num(b.b3), num(b.phi)));
    if let Some(ctl) = ctl {
        out.push(format!(
            "tol {} max_iter {} clamp_eps {} max_step_halvings {} divergence_guard {}",
            num(ctl.tol),
            ctl.max_iter,
            num(ctl.clamp_eps),
            ctl.max_step_halvings,
            num(ctl.divergence_guard)
        ));
    }
    out
}

fn manifest(command: &str, seed: Option<u64>, b: &RescaleCoefficients, ctl: Option<&GlmControl>, extra: serde_json::Value) -> serde_json::Value {
    json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "coefficients": { "b0": b.b0, "b1": b.b1, "b2": b.b2, "b3": b.b3, "phi": b.phi },
        "control": ctl,
        "details": extra,
    })
}

fn finish_single(c: &Common, manifest: serde_json::Value) -> Result<()> {
    if let Some(out) = &c.out {
        files::write_manifest(&files::manifest_path_for(out), &manifest)?;
    }
    Ok(())
}

fn cmd_fit(c: &Common, path: &Path, has_intercept: bool) -> Result<Outcome> {
    let method = c.method.as_deref().unwrap_or("mjpl");
    let data = files::read_dataset(path, has_intercept)?;
    let ctl = control(c, GlmControl::default())?;
    let fit = match method {
        "mjpl" => fit_mjpl(&data, &ctl)?,
        "ml" => fit_ml(&data, &ctl)?,
        other => return Err(Error::InvalidInput(format!("unknown fit method `{other}`; use ml or mjpl"))),
    };
    let b = coefficients(c, None);
    let mut comments = header_comments("fit", None, &b, Some(&ctl));
    comments.push(format!(
        "method {method} status {} iterations {} score_norm {:e}",
        fit.status, fit.iterations, fit.score_norm
    ));
    let coefs = Coefficients::from_theta(&fit.theta, has_intercept);
    files::write_coefficients(files::sink(c.out.as_deref())?, &comments, &coefs)?;
    eprintln!(
        "{method}: {} after {} iterations, objective {:e}, score norm {:e}",
        fit.status, fit.iterations, fit.objective, fit.score_norm
    );
    finish_single(
        c,
        manifest(
            "fit",
            None,
            &b,
            Some(&ctl),
            json!({ "data": path, "method": method, "intercept": has_intercept, "status": fit.status, "iterations": fit.iterations }),
        ),
    )?;
    Ok(if fit.converged { Outcome::Done } else { Outcome::NotConverged })
}

fn cmd_simulate(c: &Common) -> Result<Outcome> {
    let spec: spec::SimulateSpec = spec::load(&require_spec(c, "simulate")?)?;
    spec.validate()?;
    let seed = seed(c, spec.seed);
    let cfg = spec.config(seed);
    let sample = generate_dataset(&cfg)?;
    let b = coefficients(c, None);
    let mut comments = header_comments("simulate", Some(seed), &b, None);
    comments.push(format!(
        "n {} p {} kappa {} gamma {} rho2 {} psi {} config {} family {} point_id {} replicate {}",
        cfg.n, cfg.p(), cfg.kappa, cfg.gamma, cfg.rho2, cfg.psi, cfg.beta_star, cfg.family, cfg.point_id, cfg.replicate
    ));
    files::write_dataset(files::sink(c.out.as_deref())?, &comments, &sample.data)?;
    finish_single(
        c,
        manifest(
            "simulate",
            Some(seed),
            &b,
            None,
            json!({ "config": cfg, "intercept": sample.beta0_true, "beta": sample.beta_true }),
        ),
    )?;
    Ok(Outcome::Done)
}

fn run_options(c: &Common, rescale: Option<RescaleCoefficients>) -> RunOptions {
    RunOptions {
        workers: c.workers,
        record_timing: c.timing,
        detect_separation: true,
        rescale,
    }
}

fn cmd_train(c: &Common) -> Result<Outcome> {
    let spec: spec::TrainSpec = spec::load(&require_spec(c, "train")?)?;
    spec.validate()?;
    let dir = require_out_dir(c, "train")?;
    let seed = seed(c, spec.seed);
    let ctl = control(c, spec.control)?;
    let b = coefficients(c, None);
    let panels = match spec.existence {
        ExistenceMethod::Analytic { panels } => panels,
        ExistenceMethod::MonteCarlo { .. } => DEFAULT_PANELS,
    };
    let design = match &spec.design {
        Some(d) => training_design(d.count, d.seed.unwrap_or(seed), d.rho2_max, d.non_existence_only, panels)?,
        None => spec.points.clone(),
    };
    eprintln!("train: {} design points x {} replicates at n = {}", design.len(), spec.reps, spec.n);
    let settings = TrainingSettings {
        n: spec.n,
        reps: spec.reps,
        psi: spec.psi,
        beta_star: spec.beta_star,
        family: spec.family,
        seed,
        existence: spec.existence,
    };
    let estimator = MjplEstimator { control: ctl };
    let (records, summaries) = run_training_experiment(&design, &settings, &estimator, &run_options(c, None))?;
    let comments = header_comments("train", Some(seed), &b, Some(&ctl));
    write_records_csv(files::create(&dir.join("records.csv"))?, &comments, &records)?;
    write_summaries_csv(files::create(&dir.join("summary.csv"))?, &comments, &summaries)?;
    files::write_manifest(
        &dir.join("manifest.json"),
        &manifest("train", Some(seed), &b, Some(&ctl), json!({ "spec": spec, "design": design })),
    )?;
    Ok(Outcome::Done)
}

fn cmd_test(c: &Common) -> Result<Outcome> {
    let spec: spec::TestSpec = spec::load(&require_spec(c, "test")?)?;
    spec.validate()?;
    let dir = require_out_dir(c, "test")?;
    let seed = seed(c, spec.seed);
    let ctl = control(c, spec.control)?;
    let b = coefficients(c, spec.coefficients);
    eprintln!("test: {} cells", spec.grid.cells().len());
    let estimator = MjplEstimator { control: ctl };
    let records = run_test_experiment(&spec.grid, seed, spec.existence, &estimator, &run_options(c, Some(b)))?;
    let comments = header_comments("test", Some(seed), &b, Some(&ctl));
    write_records_csv(files::create(&dir.join("records.csv"))?, &comments, &records)?;
    let r2 = r2_by_group(&records, &b);
    files::write_rows(files::create(&dir.join("r2.csv"))?, &comments, &r2)?;
    files::write_manifest(
        &dir.join("manifest.json"),
        &manifest("test", Some(seed), &b, Some(&ctl), json!({ "spec": spec })),
    )?;
    Ok(Outcome::Done)
}

fn cmd_amse(c: &Common) -> Result<Outcome> {
    let spec: spec::AmseSpec = spec::load(&require_spec(c, "amse")?)?;
    spec.validate()?;
    let seed = seed(c, spec.seed);
    let ctl = control(c, spec.control)?;
    let b = coefficients(c, spec.coefficients);
    let settings = AmseSettings {
        kappas: spec.kappas.clone(),
        gammas: spec.gammas.clone(),
        n: spec.n,
        reps: spec.reps,
        seed,
        coefficients: b,
        panels: spec.panels,
    };
    eprintln!("amse: {} cells x {} replicates", settings.kappas.len() * settings.gammas.len(), settings.reps);
    let cells = run_amse_experiment(&settings, &MjplEstimator { control: ctl }, &run_options(c, None))?;
    let comments = header_comments("amse", Some(seed), &b, Some(&ctl));
    let out = match &c.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            Some(dir.join("amse.csv"))
        }
        None => None,
    };
    files::write_rows(files::sink(out.as_deref())?, &comments, &cells)?;
    if let Some(dir) = &c.out {
        files::write_manifest(
            &dir.join("manifest.json"),
            &manifest("amse", Some(seed), &b, Some(&ctl), json!({ "spec": spec })),
        )?;
    }
    Ok(Outcome::Done)
}

fn cmd_phase(c: &Common, args: &PhaseArgs) -> Result<Outcome> {
    let point = args.signal.point()?;
    let seed = seed(c, None);
    let method = match c.method.as_deref().unwrap_or("analytic") {
        "analytic" => ExistenceMethod::Analytic { panels: args.panels },
        "monte-carlo" => ExistenceMethod::MonteCarlo {
            n: args.mc_n,
            reps: args.mc_reps,
            seed,
        },
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown phase method `{other}`; use analytic or monte-carlo"
            )))
        }
    };
    let v = mle_exists_asymptotically(&point, method)?;
    let verdict = if v.exists_asymptotically { "exists" } else { "not exists" };
    let mut out = files::sink(c.out.as_deref())?;
    writeln!(
        out,
        "kappa {} beta0 {} gamma0 {} h {} method {} verdict {verdict}",
        point.kappa, point.beta0, point.gamma0, v.h_value, v.method
    )?;
    out.flush()?;
    Ok(Outcome::Done)
}

fn cmd_separation(c: &Common, path: &Path, has_intercept: bool) -> Result<Outcome> {
    let data = files::read_dataset(path, has_intercept)?;
    let v = detect_separation(&data);
    let mut out = files::sink(c.out.as_deref())?;
    writeln!(out, "{}", if v.separated { "separated" } else { "not separated" })?;
    if let Some(cert) = &v.certificate {
        let terms = Coefficients::from_theta(cert, has_intercept);
        let line: Vec<String> = terms.terms.iter().zip(cert).map(|(t, b)| format!("{t}={b}")).collect();
        writeln!(out, "certificate {}", line.join(" "))?;
    }
    out.flush()?;
    Ok(Outcome::Done)
}

fn cmd_rescale(c: &Common, args: &RescaleArgs) -> Result<Outcome> {
    let point = args.signal.point()?;
    let b = coefficients(c, None);
    let exists = match args.exists {
        Some(e) => e,
        None => mle_exists_asymptotically(&point, ExistenceMethod::default())?.exists_asymptotically,
    };
    let q = q_factor(point.kappa, point.gamma(), point.gamma0, &b, exists)?;
    let input = files::read_coefficients(&args.coefficients)?;
    let skip = usize::from(input.has_intercept());
    let scaled = rescale_estimates(&input.values[skip..], q)?;
    let mut values = input.values[..skip].to_vec();
    values.extend(scaled);
    let output = Coefficients {
        terms: input.terms.clone(),
        values,
    };
    let mut comments = header_comments("rescale", None, &b, None);
    comments.push(format!(
        "kappa {} gamma {} gamma0 {} exists {exists} q {q}",
        point.kappa,
        point.gamma(),
        point.gamma0
    ));
    files::write_coefficients(files::sink(c.out.as_deref())?, &comments, &output)?;
    finish_single(
        c,
        manifest(
            "rescale",
            None,
            &b,
            None,
            json!({ "input": args.coefficients, "kappa": point.kappa, "beta0": point.beta0, "gamma0": point.gamma0, "exists": exists, "q": q }),
        ),
    )?;
    Ok(Outcome::Done)
}

/// Row of the `fit-b` output.
#[derive(serde::Serialize)]
struct TermRow {
    term: &'static str,
    estimate: f64,
    lower: f64,
    upper: f64,
    level: f64,
    log_linear: f64,
}

fn cmd_fit_b(c: &Common, path: &Path, resamples: usize, level: f64) -> Result<Outcome> {
    let rows = files::read_training_summary(path)?;
    let points: Vec<PowerLawPoint> = rows
        .iter()
        .filter(|r| !r.exists)
        .filter_map(|r| {
            let delta1 = r.mean_delta1.filter(|d| *d > 0.0)?;
            Some(PowerLawPoint {
                kappa: r.kappa,
                gamma: r.gamma,
                gamma0: r.gamma0,
                delta1,
            })
        })
        .collect();
    eprintln!("fit-b: {} usable training points of {}", points.len(), rows.len());
    let ctl = control(c, GlmControl { tol: 1e-10, ..GlmControl::default() })?;
    let seed = seed(c, None);
    let fit = fit_power_law(&points, &ctl)?;
    let statistic = |sample: &[PowerLawPoint]| {
        let f = fit_power_law(sample, &ctl)?;
        let k = f.coefficients;
        Ok(vec![k.b0, k.b1, k.b2, k.b3])
    };
    let run = || bootstrap_bca(&points, statistic, resamples, level, seed);
    let intervals = match c.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::InvalidInput(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let k = fit.coefficients;
    let rows: Vec<TermRow> = ["b0", "b1", "b2", "b3"]
        .into_iter()
        .zip(intervals.iter())
        .zip(fit.log_linear)
        .map(|((term, iv), ll)| TermRow {
            term,
            estimate: iv.estimate,
            lower: iv.lower,
            upper: iv.upper,
            level,
            log_linear: ll,
        })
        .collect();
    let mut comments = header_comments("fit-b", Some(seed), &k, Some(&ctl));
    comments.push(format!(
        "points {} resamples {resamples} deviance_explained {}",
        points.len(),
        fit.deviance_explained
    ));
    let out = match &c.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            Some(dir.join("power_law.csv"))
        }
        None => None,
    };
    files::write_rows(files::sink(out.as_deref())?, &comments, &rows)?;
    if let Some(dir) = &c.out {
        files::write_manifest(
            &dir.join("manifest.json"),
            &manifest(
                "fit-b",
                Some(seed),
                &k,
                Some(&ctl),
                json!({ "summary": path, "points": points.len(), "resamples": resamples, "level": level, "deviance_explained": fit.deviance_explained }),
            ),
        )?;
    }
    Ok(Outcome::Done)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("mjpl").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn global_flags_after_subcommand() {
        let cli = parse(&["fit", "d.csv", "--method", "ml", "--tol", "1e-8", "--b1", "-1.2"]);
        assert_eq!(cli.common.method.as_deref(), Some("ml"));
        assert_eq!(cli.common.tol, Some(1e-8));
        let b = coefficients(&cli.common, None);
        assert_eq!(b.b1, -1.2);
        assert_eq!(b.b2, RescaleCoefficients::default().b2);
    }

    #[test]
    fn signal_forms() {
        let cli = parse(&["phase", "--kappa", "0.2", "--gamma", "2", "--rho2", "0.36"]);
        let Command::Phase(a) = cli.command else { panic!() };
        let p = a.signal.point().unwrap();
        assert!((p.beta0 - 1.2).abs() < 1e-12 && (p.gamma0 - 1.6).abs() < 1e-12);
        let cli = parse(&["phase", "--kappa", "0.2", "--gamma0", "2", "--rho2", "0.3"]);
        let Command::Phase(a) = cli.command else { panic!() };
        assert!(a.signal.point().is_err());
    }

    #[test]
    fn control_overrides_are_validated() {
        let cli = parse(&["fit", "d.csv", "--tol", "0"]);
        assert!(control(&cli.common, GlmControl::default()).is_err());
    }

    #[test]
    fn comments_carry_constants() {
        let lines = header_comments("x", Some(9), &RescaleCoefficients::default(), Some(&GlmControl::default()));
        assert_eq!(lines[1], "seed 9");
        assert!(lines[2].starts_with("b0 -0.033 b1 -1.172 b2 -1.869 b3 0.817"));
        assert!(lines[3].starts_with("tol 0.001 max_iter 300"));
    }
}
