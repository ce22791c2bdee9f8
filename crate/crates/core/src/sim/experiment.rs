use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::output::na;
use super::{generate_dataset, generate_isotropic_sample, BetaStarConfig, CovariateFamily, DesignPoint, GeneratedSample, SimConfig, TEST_POINTS};
use crate::analysis::{aggregate_bias, aggregate_mse, q_factor, r2_test, rescale_estimates, RescaleCoefficients};
use crate::error::{Error, Result};
use crate::glm::{fit_mjpl, GlmControl};
use crate::numerics::simple_linreg;
use crate::phase::{mle_exists_asymptotically, ExistenceMethod, PhasePoint};
use crate::separation::detect_separation;

/// Coefficient estimates for one simulated sample.
#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub intercept: Option<f64>,
    pub slopes: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Anything that turns a simulated sample into estimates; the production
/// implementation is [`MjplEstimator`].
pub trait Estimator: Sync {
    fn estimate(&self, sample: &GeneratedSample) -> Result<Estimate>;
}

#[derive(Clone, Debug, Default)]
pub struct MjplEstimator {
    pub control: GlmControl,
}

impl Estimator for MjplEstimator {
    fn estimate(&self, sample: &GeneratedSample) -> Result<Estimate> {
        let fit = fit_mjpl(&sample.data, &self.control)?;
        let slopes = fit.slopes(&sample.data).to_vec();
        Ok(Estimate {
            intercept: sample.data.has_intercept().then(|| fit.theta[0]),
            slopes,
            iterations: fit.iterations,
            converged: fit.converged,
        })
    }
}

/// Per-point inputs to [`run_replication`] that do not depend on the replicate.
#[derive(Clone, Debug, PartialEq)]
pub struct ReplicationContext {
    /// Asymptotic existence for normal covariates; ignored for Bernoulli
    /// covariates, where the separation check of each sample decides.
    pub exists_asymptotically: bool,
    /// When set, estimates are divided by `q` before the aggregate summaries.
    pub rescale: Option<RescaleCoefficients>,
    pub detect_separation: bool,
    pub record_timing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReplicationRecord {
    pub point_id: u64,
    pub kappa: f64,
    pub gamma: f64,
    pub rho2: f64,
    pub psi: f64,
    pub n: usize,
    pub p: usize,
    pub config: BetaStarConfig,
    pub seed: u64,
    pub replicate: u64,
    pub exists: bool,
    pub separated: Option<bool>,
    pub delta0: Option<f64>,
    pub delta1: Option<f64>,
    pub agg_bias: Option<f64>,
    pub agg_mse: Option<f64>,
    pub iterations: Option<usize>,
    pub seconds: Option<f64>,
    #[serde(skip)]
    pub gamma0: f64,
    #[serde(skip)]
    pub q: f64,
    #[serde(skip)]
    pub converged: bool,
    #[serde(skip)]
    pub error: Option<String>,
}

/// Simulates one sample, estimates it and summarizes the estimates against
/// the truth. Failures are recorded, not returned.
pub fn run_replication(cfg: &SimConfig, estimator: &dyn Estimator, ctx: &ReplicationContext) -> ReplicationRecord {
    let mut record = ReplicationRecord {
        point_id: cfg.point_id,
        kappa: cfg.kappa,
        gamma: cfg.gamma,
        rho2: cfg.rho2,
        psi: cfg.psi,
        n: cfg.n,
        p: cfg.p(),
        config: cfg.beta_star,
        seed: cfg.seed,
        replicate: cfg.replicate,
        exists: ctx.exists_asymptotically,
        separated: None,
        delta0: None,
        delta1: None,
        agg_bias: None,
        agg_mse: None,
        iterations: None,
        seconds: None,
        gamma0: cfg.gamma0(),
        q: 1.0,
        converged: false,
        error: None,
    };
    let sample = match generate_dataset(cfg) {
        Ok(s) => s,
        Err(e) => {
            record.error = Some(e.to_string());
            return record;
        }
    };
    let bernoulli = matches!(cfg.family, CovariateFamily::Bernoulli { .. });
    if ctx.detect_separation || bernoulli {
        let separated = detect_separation(&sample.data).separated;
        record.separated = Some(separated);
        if bernoulli {
            record.exists = !separated;
        }
    }
    summarize_fit(&mut record, &sample, estimator, ctx.rescale.as_ref(), ctx.record_timing);
    record
}

fn summarize_fit(
    record: &mut ReplicationRecord,
    sample: &GeneratedSample,
    estimator: &dyn Estimator,
    rescale: Option<&RescaleCoefficients>,
    record_timing: bool,
) {
    if let Some(b) = rescale {
        match q_factor(record.kappa, record.gamma, record.gamma0, b, record.exists) {
            Ok(q) => record.q = q,
            Err(e) => {
                record.error = Some(e.to_string());
                return;
            }
        }
    }
    let started = Instant::now();
    let estimate = estimator.estimate(sample);
    if record_timing {
        record.seconds = Some(started.elapsed().as_secs_f64());
    }
    let estimate = match estimate {
        Ok(e) => e,
        Err(e) => {
            record.error = Some(e.to_string());
            return;
        }
    };
    record.iterations = Some(estimate.iterations);
    record.converged = estimate.converged;
    // a constant truth vector leaves the slope undefined; keep the aggregates
    if let Ok((d0, d1)) = simple_linreg(&sample.beta_true, &estimate.slopes) {
        record.delta0 = Some(d0);
        record.delta1 = Some(d1);
    }
    match rescale_estimates(&estimate.slopes, record.q) {
        Ok(scaled) => {
            record.agg_bias = aggregate_bias(&scaled, &sample.beta_true).ok();
            record.agg_mse = aggregate_mse(&scaled, &sample.beta_true).ok();
        }
        Err(e) => record.error = Some(e.to_string()),
    }
}

/// Execution options shared by the experiments.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunOptions {
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    pub record_timing: bool,
    pub detect_separation: bool,
    pub rescale: Option<RescaleCoefficients>,
}

fn in_pool<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(job()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::InvalidInput(e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrainingSettings {
    pub n: usize,
    pub reps: usize,
    pub psi: f64,
    pub beta_star: BetaStarConfig,
    pub family: CovariateFamily,
    pub seed: u64,
    pub existence: ExistenceMethod,
}

/// Replicate averages at one design point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrainingSummary {
    pub point_id: u64,
    pub kappa: f64,
    pub gamma: f64,
    pub gamma0: f64,
    pub rho2: f64,
    pub exists: bool,
    pub h_value: f64,
    pub mean_delta0: Option<f64>,
    pub mean_delta1: Option<f64>,
    pub sd_delta1: Option<f64>,
    /// Replicates with a converged fit and a defined slope.
    pub replicates: usize,
}

fn existence_for(points: &[DesignPoint], method: ExistenceMethod) -> Result<Vec<(bool, f64)>> {
    points
        .par_iter()
        .map(|d| {
            let point = PhasePoint::from_signal(d.kappa, d.gamma, d.rho2)?;
            let v = mle_exists_asymptotically(&point, method)?;
            Ok((v.exists_asymptotically, v.h_value))
        })
        .collect()
}

fn mean_sd(values: &[f64]) -> (Option<f64>, Option<f64>) {
    if values.is_empty() {
        return (None, None);
    }
    let m = values.iter().sum::<f64>() / values.len() as f64;
    if values.len() < 2 {
        return (Some(m), None);
    }
    let v = values.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (values.len() - 1) as f64;
    (Some(m), Some(v.sqrt()))
}

/// Runs `reps` replicates at each design point. Records come back ordered by
/// `(point_id, replicate)` whatever the scheduling.
pub fn run_training_experiment(
    design: &[DesignPoint],
    settings: &TrainingSettings,
    estimator: &dyn Estimator,
    options: &RunOptions,
) -> Result<(Vec<ReplicationRecord>, Vec<TrainingSummary>)> {
    if design.is_empty() {
        return Err(Error::InvalidInput("empty training design".into()));
    }
    if settings.reps == 0 {
        return Err(Error::InvalidInput("at least one replicate is required".into()));
    }
    in_pool(options.workers, || {
        let existence = existence_for(design, settings.existence)?;
        let tasks: Vec<(usize, u64)> = (0..design.len())
            .flat_map(|k| (0..settings.reps as u64).map(move |r| (k, r)))
            .collect();
        let records: Vec<ReplicationRecord> = tasks
            .par_iter()
            .map(|&(k, r)| {
                let d = design[k];
                let cfg = SimConfig {
                    n: settings.n,
                    kappa: d.kappa,
                    gamma: d.gamma,
                    rho2: d.rho2,
                    psi: settings.psi,
                    beta_star: settings.beta_star,
                    family: settings.family,
                    seed: settings.seed,
                    point_id: k as u64,
                    replicate: r,
                };
                let ctx = ReplicationContext {
                    exists_asymptotically: existence[k].0,
                    rescale: options.rescale,
                    detect_separation: options.detect_separation,
                    record_timing: options.record_timing,
                };
                run_replication(&cfg, estimator, &ctx)
            })
            .collect();
        let summaries = design
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let mine: Vec<&ReplicationRecord> = records.iter().filter(|r| r.point_id == k as u64).collect();
                let usable: Vec<&&ReplicationRecord> = mine.iter().filter(|r| r.converged && r.delta1.is_some()).collect();
                let d0: Vec<f64> = usable.iter().filter_map(|r| r.delta0).collect();
                let d1: Vec<f64> = usable.iter().filter_map(|r| r.delta1).collect();
                let (mean_delta1, sd_delta1) = mean_sd(&d1);
                TrainingSummary {
                    point_id: k as u64,
                    kappa: d.kappa,
                    gamma: d.gamma,
                    gamma0: d.gamma * (1.0 - d.rho2).sqrt(),
                    rho2: d.rho2,
                    exists: mine.first().map_or(existence[k].0, |r| r.exists),
                    h_value: existence[k].1,
                    mean_delta0: mean_sd(&d0).0,
                    mean_delta1,
                    sd_delta1,
                    replicates: usable.len(),
                }
            })
            .collect();
        Ok((records, summaries))
    })?
}

/// Factor grid of the test phase; one sample per cell and point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestGrid {
    pub ns: Vec<usize>,
    pub psis: Vec<f64>,
    pub rho2s: Vec<f64>,
    pub configs: Vec<BetaStarConfig>,
    /// `(kappa, gamma)` pairs; the 30 standard points when empty.
    #[serde(default)]
    pub points: Vec<(f64, f64)>,
    #[serde(default)]
    pub family: CovariateFamily,
}

impl TestGrid {
    fn points(&self) -> Vec<(f64, f64)> {
        if self.points.is_empty() {
            TEST_POINTS.to_vec()
        } else {
            self.points.clone()
        }
    }

    /// Cells in output order: n, then psi, rho2, config, point.
    pub fn cells(&self) -> Vec<(usize, f64, f64, BetaStarConfig, (f64, f64))> {
        let points = self.points();
        let mut out = Vec::new();
        for &n in &self.ns {
            for &psi in &self.psis {
                for &rho2 in &self.rho2s {
                    for &c in &self.configs {
                        for &pt in &points {
                            out.push((n, psi, rho2, c, pt));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Simulates one sample per grid cell; `point_id` is the cell index.
pub fn run_test_experiment(
    grid: &TestGrid,
    seed: u64,
    existence: ExistenceMethod,
    estimator: &dyn Estimator,
    options: &RunOptions,
) -> Result<Vec<ReplicationRecord>> {
    let cells = grid.cells();
    if cells.is_empty() {
        return Err(Error::InvalidInput("empty test grid".into()));
    }
    in_pool(options.workers, || {
        let design: Vec<DesignPoint> = cells
            .iter()
            .map(|&(_, _, rho2, _, (kappa, gamma))| DesignPoint { kappa, gamma, rho2 })
            .collect();
        let existence = existence_for(&design, existence)?;
        Ok(cells
            .par_iter()
            .enumerate()
            .map(|(k, &(n, psi, rho2, config, (kappa, gamma)))| {
                let cfg = SimConfig {
                    n,
                    kappa,
                    gamma,
                    rho2,
                    psi,
                    beta_star: config,
                    family: grid.family,
                    seed,
                    point_id: k as u64,
                    replicate: 0,
                };
                let ctx = ReplicationContext {
                    exists_asymptotically: existence[k].0,
                    rescale: options.rescale,
                    detect_separation: options.detect_separation,
                    record_timing: options.record_timing,
                };
                run_replication(&cfg, estimator, &ctx)
            })
            .collect())
    })?
}

/// Out-of-sample fit of `log q` to `log delta1` for one `(n, psi, rho2, config)` group.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct R2Row {
    pub n: usize,
    pub psi: f64,
    pub rho2: f64,
    pub config: BetaStarConfig,
    pub points: usize,
    #[serde(serialize_with = "na")]
    pub r2: Option<f64>,
}

/// R^2 of `log q` against `log delta1` over the records where the MLE does
/// not exist, grouped by `(n, psi, rho2, config)` in first-seen order.
pub fn r2_by_group(records: &[ReplicationRecord], coefficients: &RescaleCoefficients) -> Vec<R2Row> {
    let mut keys: Vec<(usize, f64, f64, BetaStarConfig)> = Vec::new();
    for r in records {
        let key = (r.n, r.psi, r.rho2, r.config);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(n, psi, rho2, config)| {
            let (obs, pred): (Vec<f64>, Vec<f64>) = records
                .iter()
                .filter(|r| r.n == n && r.psi == psi && r.rho2 == rho2 && r.config == config && !r.exists)
                .filter_map(|r| {
                    let d1 = r.delta1.filter(|d| *d > 0.0)?;
                    let q = q_factor(r.kappa, r.gamma, r.gamma0, coefficients, false).ok()?;
                    Some((d1.ln(), q.ln()))
                })
                .unzip();
            R2Row {
                n,
                psi,
                rho2,
                config,
                points: obs.len(),
                r2: r2_test(&obs, &pred).ok(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct AmseSettings {
    pub kappas: Vec<f64>,
    pub gammas: Vec<f64>,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub coefficients: RescaleCoefficients,
    pub panels: usize,
}

/// Mean aggregate MSE of the rescaled estimates at one `(kappa, gamma)` cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmseCell {
    pub kappa: f64,
    pub gamma: f64,
    pub p: usize,
    pub exists: bool,
    pub q: f64,
    #[serde(serialize_with = "na")]
    pub mean_amse: Option<f64>,
    #[serde(serialize_with = "na")]
    pub se_amse: Option<f64>,
    #[serde(serialize_with = "na")]
    pub mean_bias: Option<f64>,
    pub replicates: usize,
}

/// No-intercept experiment with `N(0, 1/p)` covariates and a rescaled s1
/// coefficient vector with `||beta||^2 / p = gamma^2`.
pub fn run_amse_experiment(settings: &AmseSettings, estimator: &dyn Estimator, options: &RunOptions) -> Result<Vec<AmseCell>> {
    if settings.kappas.is_empty() || settings.gammas.is_empty() || settings.reps == 0 {
        return Err(Error::InvalidInput("empty aMSE grid".into()));
    }
    let cells: Vec<(f64, f64)> = settings
        .kappas
        .iter()
        .flat_map(|&k| settings.gammas.iter().map(move |&g| (k, g)))
        .collect();
    in_pool(options.workers, || {
        cells
            .iter()
            .enumerate()
            .map(|(k, &(kappa, gamma))| {
                let probe = SimConfig {
                    n: settings.n,
                    kappa,
                    gamma,
                    rho2: 0.0,
                    psi: 0.0,
                    beta_star: BetaStarConfig::S1,
                    family: CovariateFamily::NormalAr1,
                    seed: settings.seed,
                    point_id: k as u64,
                    replicate: 0,
                };
                probe.validate()?;
                let p = probe.p();
                let point = PhasePoint::new(kappa, 0.0, gamma)?;
                let exists = mle_exists_asymptotically(&point, ExistenceMethod::Analytic { panels: settings.panels })?
                    .exists_asymptotically;
                let q = q_factor(kappa, gamma, gamma, &settings.coefficients, exists)?;
                let results: Vec<Option<(f64, f64)>> = (0..settings.reps as u64)
                    .into_par_iter()
                    .map(|r| {
                        let sample = generate_isotropic_sample(settings.n, p, gamma, settings.seed, k as u64, r).ok()?;
                        let est = estimator.estimate(&sample).ok().filter(|e| e.converged)?;
                        let scaled = rescale_estimates(&est.slopes, q).ok()?;
                        Some((
                            aggregate_mse(&scaled, &sample.beta_true).ok()?,
                            aggregate_bias(&scaled, &sample.beta_true).ok()?,
                        ))
                    })
                    .collect();
                let ok: Vec<(f64, f64)> = results.into_iter().flatten().collect();
                let amse: Vec<f64> = ok.iter().map(|v| v.0).collect();
                let bias: Vec<f64> = ok.iter().map(|v| v.1).collect();
                let (mean_amse, sd) = mean_sd(&amse);
                Ok(AmseCell {
                    kappa,
                    gamma,
                    p,
                    exists,
                    q,
                    mean_amse,
                    se_amse: sd.map(|s| s / (amse.len() as f64).sqrt()),
                    mean_bias: mean_sd(&bias).0,
                    replicates: ok.len(),
                })
            })
            .collect()
    })?
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Returns the truth, optionally perturbed per replicate.
    struct Oracle {
        offset: fn(&GeneratedSample) -> f64,
    }

    impl Estimator for Oracle {
        fn estimate(&self, sample: &GeneratedSample) -> Result<Estimate> {
            let shift = (self.offset)(sample);
            Ok(Estimate {
                intercept: Some(sample.beta0_true),
                slopes: sample.beta_true.iter().map(|b| b * (1.0 + shift)).collect(),
                iterations: 1,
                converged: true,
            })
        }
    }

    fn cfg() -> SimConfig {
        SimConfig {
            n: 60,
            kappa: 0.1,
            gamma: 2.0,
            rho2: 0.0,
            psi: 0.0,
            beta_star: BetaStarConfig::TrainGrid,
            family: CovariateFamily::NormalAr1,
            seed: 5,
            point_id: 0,
            replicate: 0,
        }
    }

    fn ctx() -> ReplicationContext {
        ReplicationContext {
            exists_asymptotically: true,
            rescale: None,
            detect_separation: false,
            record_timing: false,
        }
    }

    fn settings() -> TrainingSettings {
        TrainingSettings {
            n: 60,
            reps: 2,
            psi: 0.0,
            beta_star: BetaStarConfig::TrainGrid,
            family: CovariateFamily::NormalAr1,
            seed: 9,
            existence: ExistenceMethod::default(),
        }
    }

    fn design() -> Vec<DesignPoint> {
        vec![
            DesignPoint { kappa: 0.1, gamma: 2.0, rho2: 0.0 },
            DesignPoint { kappa: 0.3, gamma: 8.0, rho2: 0.5 },
        ]
    }

    #[test]
    fn perfect_recovery() {
        let r = run_replication(&cfg(), &Oracle { offset: |_| 0.0 }, &ctx());
        assert!(r.delta0.unwrap().abs() < 1e-12);
        assert!((r.delta1.unwrap() - 1.0).abs() < 1e-12);
        assert!(r.agg_bias.unwrap().abs() < 1e-12);
        assert_eq!(r.seconds, None);
    }

    #[test]
    fn constant_truth_keeps_aggregates_only() {
        // s2 with p = 2 gives (-10, 10) scaled; p = 1 gives a single coefficient
        let mut c = cfg();
        c.n = 10;
        c.beta_star = BetaStarConfig::S2;
        c.kappa = 0.1;
        let r = run_replication(&c, &Oracle { offset: |_| 0.5 }, &ctx());
        assert_eq!(r.p, 1);
        assert_eq!(r.delta1, None);
        assert!(r.agg_bias.is_some());
    }

    #[test]
    fn identical_replicates_average_to_single_value() {
        let (_, s) = run_training_experiment(&design(), &settings(), &Oracle { offset: |_| 0.25 }, &RunOptions::default()).unwrap();
        for summary in s {
            assert!((summary.mean_delta1.unwrap() - 1.25).abs() < 1e-12);
            assert!(summary.sd_delta1.unwrap() < 1e-12);
            assert_eq!(summary.replicates, 2);
        }
    }

    #[test]
    fn two_replicates_average() {
        struct ByReplicate;
        impl Estimator for ByReplicate {
            fn estimate(&self, sample: &GeneratedSample) -> Result<Estimate> {
                // the response vector differs between replicates; use its sum as a tag
                let tag = sample.data.y().iter().sum::<f64>();
                Ok(Estimate { intercept: None, slopes: sample.beta_true.iter().map(|b| b * tag).collect(), iterations: 1, converged: true })
            }
        }
        let (records, s) = run_training_experiment(&design(), &settings(), &ByReplicate, &RunOptions::default()).unwrap();
        let a = records[0].delta1.unwrap();
        let b = records[1].delta1.unwrap();
        assert!((s[0].mean_delta1.unwrap() - (a + b) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn records_ordered_and_independent_of_workers() {
        let est = MjplEstimator::default();
        let serial = RunOptions { workers: Some(1), ..Default::default() };
        let parallel = RunOptions { workers: Some(3), ..Default::default() };
        let (a, sa) = run_training_experiment(&design(), &settings(), &est, &serial).unwrap();
        let (b, sb) = run_training_experiment(&design(), &settings(), &est, &parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(sa, sb);
        let order: Vec<(u64, u64)> = a.iter().map(|r| (r.point_id, r.replicate)).collect();
        assert_eq!(order, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn test_grid_record_count_and_seeds() {
        let grid = TestGrid {
            ns: vec![40],
            psis: vec![0.0, 0.3],
            rho2s: vec![0.0],
            configs: vec![BetaStarConfig::S1],
            points: vec![],
            family: CovariateFamily::NormalAr1,
        };
        let records = run_test_experiment(&grid, 3, ExistenceMethod::default(), &Oracle { offset: |_| 0.0 }, &RunOptions::default()).unwrap();
        assert_eq!(records.len(), 60);
        let ids: std::collections::HashSet<u64> = records.iter().map(|r| r.point_id).collect();
        assert_eq!(ids.len(), 60);
    }

    #[test]
    fn rescaling_uses_existence() {
        let mut c = ctx();
        c.rescale = Some(RescaleCoefficients::default());
        c.exists_asymptotically = false;
        let r = run_replication(&cfg(), &Oracle { offset: |_| 0.0 }, &c);
        let q = q_factor(0.1, 2.0, 2.0, &RescaleCoefficients::default(), false).unwrap();
        assert!((r.q - q).abs() < 1e-15);
        // truth divided by q against truth
        assert!(r.agg_bias.unwrap().abs() > 0.0);
    }

    #[test]
    fn amse_cell_layout() {
        let s = AmseSettings {
            kappas: vec![0.1],
            gammas: vec![1.0, 2.0],
            n: 100,
            reps: 2,
            seed: 1,
            coefficients: RescaleCoefficients::default(),
            panels: 60,
        };
        let cells = run_amse_experiment(&s, &Oracle { offset: |_| 0.0 }, &RunOptions::default()).unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0].p, 10);
        assert!(cells.iter().all(|c| c.exists && c.q == 1.0 && c.mean_amse == Some(0.0)));
    }
}
