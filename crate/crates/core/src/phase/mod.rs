//! Asymptotic existence of the logistic MLE as a function of the problem
//! dimensions and signal.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::numerics::{gauss_legendre, nelder_mead};
use crate::separation::detect_separation;
use crate::sim::{generate_dataset, BetaStarConfig, CovariateFamily, SimConfig};

/// Default number of equal-width integration panels for the threshold curve.
pub const DEFAULT_PANELS: usize = 60;

/// Half-width of the integration range for a standard normal variable.
const RANGE: f64 = 10.0;
/// Gauss-Legendre points per panel.
const PANEL_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub kappa: f64,
    pub beta0: f64,
    pub gamma0: f64,
}

impl PhasePoint {
    pub fn new(kappa: f64, beta0: f64, gamma0: f64) -> Result<Self> {
        let mut problems = Vec::new();
        if !(kappa > 0.0 && kappa < 1.0) {
            problems.push(format!("kappa = {kappa} must lie in (0, 1)"));
        }
        if !beta0.is_finite() {
            problems.push(format!("beta0 = {beta0} must be finite"));
        }
        if !(gamma0 >= 0.0 && gamma0.is_finite()) {
            problems.push(format!("gamma0 = {gamma0} must be non-negative"));
        }
        if !problems.is_empty() {
            return Err(Error::InvalidSpec(problems));
        }
        Ok(Self { kappa, beta0, gamma0 })
    }

    /// From total signal `gamma` and the intercept share `rho2`.
    pub fn from_signal(kappa: f64, gamma: f64, rho2: f64) -> Result<Self> {
        if !(rho2 >= 0.0 && rho2 < 1.0) {
            return Err(Error::InvalidSpec(vec![format!("rho2 = {rho2} must lie in [0, 1)")]));
        }
        Self::new(kappa, gamma * rho2.sqrt(), gamma * (1.0 - rho2).sqrt())
    }

    pub fn gamma(&self) -> f64 {
        self.beta0.hypot(self.gamma0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExistenceMethod {
    Analytic { panels: usize },
    MonteCarlo { n: usize, reps: usize, seed: u64 },
}

impl Default for ExistenceMethod {
    fn default() -> Self {
        Self::Analytic { panels: DEFAULT_PANELS }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodKind {
    Analytic,
    MonteCarlo,
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Analytic => "analytic",
            Self::MonteCarlo => "monte-carlo",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExistenceVerdict {
    pub exists_asymptotically: bool,
    pub h_value: f64,
    pub method: MethodKind,
}

/// `E[(Z - a)_+^2]` for standard normal `Z`.
fn positive_part_second_moment(a: f64) -> f64 {
    let upper_tail = 0.5 * erfc(a / std::f64::consts::SQRT_2);
    let density = (-0.5 * a * a).exp() / (2.0 * std::f64::consts::PI).sqrt();
    ((1.0 + a * a) * upper_tail - a * density).max(0.0)
}

fn expit(eta: f64) -> f64 {
    if eta >= 0.0 {
        1.0 / (1.0 + (-eta).exp())
    } else {
        let e = eta.exp();
        e / (1.0 + e)
    }
}

/// Quadrature points `(v, weight * density)` for expectations over a standard
/// normal `V` of functions involving `expit(beta0 + gamma0 V)`.
///
/// Composite Gauss-Legendre on `[-10, 10]` with `panels` equal panels, plus
/// extra breakpoints every `0.5 / gamma0` within 8 logistic scale units of
/// the transition at `V = -beta0 / gamma0`, where the integrand is steep.
fn normal_rule(beta0: f64, gamma0: f64, panels: usize) -> Vec<(f64, f64)> {
    let mut edges: Vec<f64> = (0..=panels)
        .map(|i| -RANGE + 2.0 * RANGE * i as f64 / panels as f64)
        .collect();
    if gamma0 > 0.0 {
        let centre = -beta0 / gamma0;
        let step = 0.5 / gamma0;
        for k in -16..=16 {
            let e = centre + k as f64 * step;
            if e > -RANGE && e < RANGE {
                edges.push(e);
            }
        }
    }
    edges.sort_by(f64::total_cmp);
    edges.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let (x, w) = gauss_legendre(PANEL_ORDER);
    let density = |v: f64| (-0.5 * v * v).exp() / (2.0 * std::f64::consts::PI).sqrt();
    edges
        .windows(2)
        .flat_map(|pair| {
            let (a, b) = (pair[0], pair[1]);
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            x.iter()
                .zip(&w)
                .map(move |(&xi, &wi)| {
                    let v = mid + half * xi;
                    (v, wi * half * density(v))
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Threshold on `kappa` below which the MLE exists with probability tending
/// to one:
///
/// ```text
/// h(beta0, gamma0) = min over (t0, t1) of E[(Z - t0 Y - t1 Y V)_+^2]
/// ```
///
/// with `V, Z` independent standard normals, `Y` in {-1, 1} and
/// `P(Y = 1 | V) = expit(beta0 + gamma0 V)`. The expectation over `Z` is
/// closed form and the one over `V` uses the composite rule of
/// `normal_rule` with `panels` base panels. The objective is convex; it is
/// minimized by Nelder-Mead from five starting points.
pub fn h_mle(beta0: f64, gamma0: f64, panels: usize) -> Result<f64> {
    if panels < 40 {
        return Err(Error::InvalidInput(format!("need at least 40 integration panels, got {panels}")));
    }
    if !(gamma0 >= 0.0 && gamma0.is_finite() && beta0.is_finite()) {
        return Err(Error::InvalidInput(format!("invalid signal ({beta0}, {gamma0})")));
    }
    let points: Vec<(f64, f64, f64)> = normal_rule(beta0, gamma0, panels)
        .into_iter()
        .map(|(v, w)| (v, w, expit(beta0 + gamma0 * v)))
        .collect();
    let objective = |t: &[f64]| {
        points
            .iter()
            .map(|&(v, w, p)| {
                let a = t[0] + t[1] * v;
                w * (p * positive_part_second_moment(a) + (1.0 - p) * positive_part_second_moment(-a))
            })
            .sum::<f64>()
    };
    let starts = [[0.0, 0.0], [1.0, 1.0], [-1.0, 1.0], [0.5, 3.0], [-0.5, 3.0]];
    let mut values = Vec::with_capacity(starts.len());
    for s in &starts {
        values.push(nelder_mead(objective, s, 1e-10, 20_000)?.value);
    }
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    let worst = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if worst - best > 1e-3 {
        return Err(Error::QuadratureUnstable(worst - best));
    }
    Ok(best)
}

/// Compares `kappa` with the threshold; a tie counts as "does not exist".
pub fn mle_exists_asymptotically(point: &PhasePoint, method: ExistenceMethod) -> Result<ExistenceVerdict> {
    let (h_value, kind) = match method {
        ExistenceMethod::Analytic { panels } => (h_mle(point.beta0, point.gamma0, panels)?, MethodKind::Analytic),
        ExistenceMethod::MonteCarlo { n, reps, seed } => (
            mc_phase_boundary(point.beta0, point.gamma0, n, reps, seed)?,
            MethodKind::MonteCarlo,
        ),
    };
    Ok(ExistenceVerdict {
        exists_asymptotically: point.kappa < h_value,
        h_value,
        method: kind,
    })
}

/// Fraction of `reps` simulated datasets at `kappa` that are separated.
///
/// Covariates are independent standard normals. A negative intercept is
/// replaced by its absolute value, which leaves the separation probability
/// unchanged because flipping all labels preserves separation.
pub fn separated_fraction(beta0: f64, gamma0: f64, kappa: f64, n: usize, reps: usize, seed: u64, stream: u64) -> Result<f64> {
    let gamma = beta0.hypot(gamma0);
    let rho2 = if gamma > 0.0 { (beta0 / gamma).powi(2) } else { 0.0 };
    let rho2 = rho2.min(1.0 - 1e-15);
    let base = SimConfig {
        n,
        kappa,
        gamma,
        rho2,
        psi: 0.0,
        beta_star: BetaStarConfig::TrainGrid,
        family: CovariateFamily::NormalAr1,
        seed,
        point_id: stream,
        replicate: 0,
    };
    base.validate()?;
    let flags: Vec<bool> = (0..reps as u64)
        .into_par_iter()
        .map(|r| {
            let cfg = SimConfig { replicate: r, ..base.clone() };
            generate_dataset(&cfg).map(|s| detect_separation(&s.data).separated)
        })
        .collect::<Result<_>>()?;
    Ok(flags.iter().filter(|&&f| f).count() as f64 / reps as f64)
}

/// Monte-Carlo estimate of the threshold: bisection on `kappa` in `(0, 0.6)`
/// for the point where half of `reps` simulated datasets of size `n` are
/// separated. Each bisection step uses its own random streams.
pub fn mc_phase_boundary(beta0: f64, gamma0: f64, n: usize, reps: usize, seed: u64) -> Result<f64> {
    if n < 500 || reps < 20 {
        return Err(Error::InvalidInput(format!(
            "Monte-Carlo boundary needs n >= 500 and reps >= 20, got n = {n}, reps = {reps}"
        )));
    }
    let (mut lo, mut hi) = (0.0, 0.6);
    for step in 0..9u64 {
        let mid = 0.5 * (lo + hi);
        if separated_fraction(beta0, gamma0, mid, n, reps, seed, step)? >= 0.5 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
