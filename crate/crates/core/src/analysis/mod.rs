//! Rescaling of mJPL estimates and the power-law model for their shrinkage.

mod bootstrap;
mod power_law;

pub use bootstrap::{bootstrap_bca, percentile, BcaInterval};
pub use power_law::{fit_power_law, PowerLawFit, PowerLawPoint};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of the power law `q = kappa^b1 gamma^b2 gamma0^b3` plus
/// the Gamma dispersion of the fit that produced them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RescaleCoefficients {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub phi: f64,
}

impl Default for RescaleCoefficients {
    /// Published Gamma-GLM estimates.
    fn default() -> Self {
        Self {
            b0: -0.033,
            b1: -1.172,
            b2: -1.869,
            b3: 0.817,
            phi: 0.004,
        }
    }
}

impl RescaleCoefficients {
    /// Published estimates from least squares on the log scale.
    pub fn log_linear_reference() -> Self {
        Self {
            b0: -0.037,
            b1: -1.171,
            b2: -1.871,
            b3: 0.822,
            phi: f64::NAN,
        }
    }

    pub fn exponents(&self) -> [f64; 3] {
        [self.b1, self.b2, self.b3]
    }
}

/// Shrinkage factor of the mJPL estimator: 1 when the MLE exists, otherwise
/// `kappa^b1 gamma^b2 gamma0^b3`. The intercept `b0` is not used.
pub fn q_factor(kappa: f64, gamma: f64, gamma0: f64, b: &RescaleCoefficients, exists: bool) -> Result<f64> {
    for (name, v) in [("kappa", kappa), ("gamma", gamma), ("gamma0", gamma0)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::NonPositiveInput(format!("{name} = {v}")));
        }
    }
    if exists {
        return Ok(1.0);
    }
    Ok(kappa.powf(b.b1) * gamma.powf(b.b2) * gamma0.powf(b.b3))
}

pub fn rescale_estimates(beta_tilde: &[f64], q: f64) -> Result<Vec<f64>> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::NonPositiveScale(q));
    }
    Ok(beta_tilde.iter().map(|b| b / q).collect())
}

fn check_pair(estimates: &[f64], truth: &[f64]) -> Result<()> {
    if estimates.len() != truth.len() {
        return Err(Error::LengthMismatch {
            left: estimates.len(),
            right: truth.len(),
        });
    }
    if truth.is_empty() {
        return Err(Error::InvalidInput("empty coefficient vectors".into()));
    }
    Ok(())
}

/// Mean of `estimate_j - truth_j`.
pub fn aggregate_bias(estimates: &[f64], truth: &[f64]) -> Result<f64> {
    check_pair(estimates, truth)?;
    let s: f64 = estimates.iter().zip(truth).map(|(e, t)| e - t).sum();
    Ok(s / truth.len() as f64)
}

/// Mean of `(estimate_j - truth_j)^2`.
pub fn aggregate_mse(estimates: &[f64], truth: &[f64]) -> Result<f64> {
    check_pair(estimates, truth)?;
    let s: f64 = estimates.iter().zip(truth).map(|(e, t)| (e - t) * (e - t)).sum();
    Ok(s / truth.len() as f64)
}

/// Out-of-sample coefficient of determination `1 - SS_res / SS_tot`.
pub fn r2_test(observed: &[f64], predicted: &[f64]) -> Result<f64> {
    if observed.len() != predicted.len() {
        return Err(Error::LengthMismatch {
            left: observed.len(),
            right: predicted.len(),
        });
    }
    if observed.len() < 2 {
        return Err(Error::DegenerateObservations);
    }
    let mean = observed.iter().sum::<f64>() / observed.len() as f64;
    let ss_tot: f64 = observed.iter().map(|o| (o - mean).powi(2)).sum();
    if !(ss_tot > 0.0) {
        return Err(Error::DegenerateObservations);
    }
    let ss_res: f64 = observed.iter().zip(predicted).map(|(o, p)| (o - p).powi(2)).sum();
    Ok(1.0 - ss_res / ss_tot)
}
