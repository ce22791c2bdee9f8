//! Data-generating process and experiment orchestration.

mod design;
mod experiment;
mod generate;
mod output;
mod stream;

pub use design::{space_filling_design, training_design, DesignPoint, TEST_POINTS};
pub use experiment::{
    run_amse_experiment, run_replication, run_test_experiment, run_training_experiment, AmseCell,
    AmseSettings, Estimate, Estimator, MjplEstimator, R2Row, ReplicationContext, ReplicationRecord,
    RunOptions, TestGrid, TrainingSettings, TrainingSummary, r2_by_group,
};
pub use generate::{ar1_factor_transpose_mul, generate_dataset, generate_isotropic_sample, GeneratedSample};
pub use output::{num, write_comments, write_records_csv, write_summaries_csv, RECORD_HEADER};
pub use stream::{replicate_rng, replicate_seed};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shape of the unscaled coefficient vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BetaStarConfig {
    /// Equi-spaced between 1 and 10.
    #[serde(rename = "train-grid")]
    TrainGrid,
    /// Equi-spaced between -10 and 10.
    #[serde(rename = "s1")]
    S1,
    /// First fifth -10, second fifth 10, rest zero.
    #[serde(rename = "s2")]
    S2,
    /// First fifth -3, second fifth -1, last fifth 1, rest zero.
    #[serde(rename = "u1")]
    U1,
    /// Equi-spaced between 1 and 10.
    #[serde(rename = "u2")]
    U2,
}

impl BetaStarConfig {
    pub const ALL: [BetaStarConfig; 5] = [Self::TrainGrid, Self::S1, Self::S2, Self::U1, Self::U2];

    pub fn name(self) -> &'static str {
        match self {
            Self::TrainGrid => "train-grid",
            Self::S1 => "s1",
            Self::S2 => "s2",
            Self::U1 => "u1",
            Self::U2 => "u2",
        }
    }
}

impl fmt::Display for BetaStarConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BetaStarConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownConfig(s.to_string()))
    }
}

fn linspace(from: f64, to: f64, p: usize) -> Vec<f64> {
    if p == 1 {
        return vec![from];
    }
    let step = (to - from) / (p - 1) as f64;
    (0..p)
        .map(|i| if i == p - 1 { to } else { from + step * i as f64 })
        .collect()
}

pub fn make_beta_star(config: BetaStarConfig, p: usize) -> Result<Vec<f64>> {
    if p == 0 {
        return Err(Error::InvalidInput("beta* needs at least one coefficient".into()));
    }
    let k = p.div_ceil(5);
    Ok(match config {
        BetaStarConfig::TrainGrid | BetaStarConfig::U2 => linspace(1.0, 10.0, p),
        BetaStarConfig::S1 => linspace(-10.0, 10.0, p),
        BetaStarConfig::S2 => (0..p)
            .map(|j| if j < k { -10.0 } else if j < 2 * k { 10.0 } else { 0.0 })
            .collect(),
        BetaStarConfig::U1 => {
            let mut b = vec![0.0; p];
            for (j, v) in b.iter_mut().enumerate() {
                if j < k {
                    *v = -3.0;
                } else if j < 2 * k {
                    *v = -1.0;
                }
            }
            // the last block wins when blocks overlap for small p
            for v in b.iter_mut().skip(p.saturating_sub(k)) {
                *v = 1.0;
            }
            b
        }
    })
}

/// Covariate distribution of the design rows.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CovariateFamily {
    /// Zero-mean normal with `corr(x_j, x_k) = psi^|j - k|`.
    NormalAr1,
    /// Independent Bernoulli(lambda), not centred.
    Bernoulli { lambda: f64 },
}

impl Default for CovariateFamily {
    fn default() -> Self {
        Self::NormalAr1
    }
}

impl fmt::Display for CovariateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NormalAr1 => f.write_str("normal-ar1"),
            Self::Bernoulli { lambda } => write!(f, "bernoulli({lambda})"),
        }
    }
}

/// One cell of an experiment grid plus the replicate to draw.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub n: usize,
    pub kappa: f64,
    pub gamma: f64,
    pub rho2: f64,
    #[serde(default)]
    pub psi: f64,
    pub beta_star: BetaStarConfig,
    #[serde(default)]
    pub family: CovariateFamily,
    pub seed: u64,
    #[serde(default)]
    pub point_id: u64,
    #[serde(default)]
    pub replicate: u64,
}

impl SimConfig {
    /// `ceil(n kappa)`, ignoring floating-point noise in the product.
    pub fn p(&self) -> usize {
        let raw = self.n as f64 * self.kappa;
        ((raw - 1e-9 * raw.max(1.0)).ceil() as usize).max(1)
    }

    pub fn rho(&self) -> f64 {
        self.rho2.sqrt()
    }

    pub fn beta0(&self) -> f64 {
        self.gamma * self.rho()
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma * (1.0 - self.rho2).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.n < 2 {
            problems.push(format!("n = {} must be at least 2", self.n));
        }
        if !(self.kappa > 0.0 && self.kappa < 1.0) {
            problems.push(format!("kappa = {} must lie in (0, 1)", self.kappa));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            problems.push(format!("gamma = {} must be non-negative", self.gamma));
        }
        if !(self.rho2 >= 0.0 && self.rho2 < 1.0) {
            problems.push(format!("rho2 = {} must lie in [0, 1)", self.rho2));
        }
        if !(self.psi > -1.0 && self.psi < 1.0) {
            problems.push(format!("psi = {} must lie in (-1, 1)", self.psi));
        }
        if let CovariateFamily::Bernoulli { lambda } = self.family {
            if !(lambda > 0.0 && lambda < 1.0) {
                problems.push(format!("lambda = {lambda} must lie in (0, 1)"));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSpec(problems))
        }
    }
}
